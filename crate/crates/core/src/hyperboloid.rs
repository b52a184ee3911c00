//! Tetrahedra realized in the hyperboloid model `⟨x,x⟩ = x₀²+x₁²+x₂²−x₃²`.
//!
//! A tetrahedron is `{x : ⟨x, nᵢ⟩ ≤ 0}` for unit spacelike outward normals `nᵢ`
//! whose Gram matrix is the shape's Gram matrix.

use serde::{Deserialize, Serialize};

use crate::linalg::{
    add, column, from_columns, inverse, lorentz, lorentz_reflection, mat_vec, max_abs_diff, scale, sub, sym_eigen,
    Mat4, Vec4,
};
use crate::real::Real;
use crate::shape::{ShapeError, TetShape, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex<T = f64> {
    /// Unit timelike for finite vertices; null with last coordinate 1 for ideal ones.
    pub point: Vec4<T>,
    pub ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realization<T = f64> {
    pub normals: [Vec4<T>; 4],
    /// `vertices[v]` is opposite face `v`.
    pub vertices: [Vertex<T>; 4],
}

/// Scales a future-directed causal vector to its canonical representative.
pub fn normalize_point<T: Real>(x: &Vec4<T>, ideal: bool) -> Vec4<T> {
    if ideal {
        scale(x, T::one() / x[3])
    } else {
        let q = -lorentz(x, x);
        scale(x, T::one() / q.sqrt())
    }
}

/// Face normals from the Gram matrix, vertices from the dual basis.
pub fn realize<T: Real>(shape: &TetShape) -> Result<Realization<T>, ShapeError> {
    let kinds = shape.hyperbolic_check::<T>(T::zero_tol())?;
    let g = shape.gram::<T>();
    // eigenvalues descending: the negative one is last, matching the time coordinate
    let (w, v) = sym_eigen(&g);
    // E = diag(√|λ|) Vᵀ, columns are the normals
    let mut e = [[T::zero(); 4]; 4];
    for r in 0..4 {
        let s = w[r].abs().sqrt();
        for c in 0..4 {
            e[r][c] = s * v[c][r];
        }
    }
    // rows of A are (J eⱼ)ᵀ; vertices solve A·V = −I
    let mut a = [[T::zero(); 4]; 4];
    for j in 0..4 {
        for i in 0..4 {
            a[j][i] = if i == 3 { -e[i][j] } else { e[i][j] };
        }
    }
    let ainv = inverse(&a, T::epsilon()).ok_or(ShapeError::NotLorentzian((0, 0, 4)))?;
    let mut vt = ainv.map(|r| r.map(|x| -x));
    if vt[3][0] < T::zero() {
        e = e.map(|r| r.map(|x| -x));
        vt = vt.map(|r| r.map(|x| -x));
    }
    let normals = std::array::from_fn(|i| column(&e, i));
    let vertices = std::array::from_fn(|i| {
        let ideal = kinds[i] == VertexKind::Ideal;
        Vertex { point: normalize_point(&column(&vt, i), ideal), ideal }
    });
    Ok(Realization { normals, vertices })
}

pub fn reflection<T: Real>(n: &Vec4<T>) -> Mat4<T> {
    lorentz_reflection(n)
}

/// Unit component of `m` orthogonal to the unit normal `n`.
pub fn project_out<T: Real>(m: &Vec4<T>, n: &Vec4<T>) -> Vec4<T> {
    let r = sub(m, &scale(n, lorentz(m, n)));
    let q = lorentz(&r, &r);
    scale(&r, T::one() / q.abs().sqrt())
}

/// Builds the isometry sending `src` columns to `dst` columns.
pub fn frame_map<T: Real>(dst: &[Vec4<T>; 4], src: &[Vec4<T>; 4]) -> Option<Mat4<T>> {
    let m1 = from_columns(dst);
    let m2 = from_columns(src);
    Some(crate::linalg::mat_mul(&m1, &inverse(&m2, T::lit(1e-12))?))
}

/// Outward normals of the tile `g·F`.
pub fn tile_normals<T: Real>(real: &Realization<T>, g: &Mat4<T>) -> [Vec4<T>; 4] {
    std::array::from_fn(|l| mat_vec(g, &real.normals[l]))
}

pub fn tile_vertices<T: Real>(real: &Realization<T>, g: &Mat4<T>) -> [Vertex<T>; 4] {
    std::array::from_fn(|l| {
        let v = real.vertices[l];
        Vertex { point: normalize_point(&mat_vec(g, &v.point), v.ideal), ideal: v.ideal }
    })
}

/// True if `x` satisfies every `⟨x, n⟩ ≤ tol`.
pub fn inside<T: Real>(x: &Vec4<T>, normals: &[Vec4<T>], tol: T) -> bool {
    normals.iter().all(|n| lorentz(x, n) <= tol)
}

/// True if `x` is strictly inside by margin `tol`.
pub fn strictly_inside<T: Real>(x: &Vec4<T>, normals: &[Vec4<T>], tol: T) -> bool {
    normals.iter().all(|n| lorentz(x, n) < -tol)
}

/// Two normal sets describe the same tetrahedron.
pub fn same_normal_set<T: Real>(a: &[Vec4<T>; 4], b: &[Vec4<T>; 4], tol: T) -> bool {
    let mut used = [false; 4];
    a.iter().all(|x| {
        if let Some(k) = (0..4).find(|&k| !used[k] && max_abs_diff(x, &b[k]) < tol) {
            used[k] = true;
            true
        } else {
            false
        }
    })
}

/// Convex combination of vertex representatives, normalized onto the hyperboloid.
pub fn interior_point<T: Real>(verts: &[Vertex<T>], weights: &[T]) -> Vec4<T> {
    let mut p = [T::zero(); 4];
    for (v, &w) in verts.iter().zip(weights) {
        p = add(&p, &scale(&v.point, w));
    }
    normalize_point(&p, false)
}
