//! Homogeneous models of the three plane geometries.
//!
//! Points are 3-vectors: unit vectors (spherical), `(x, y, 1)` (Euclidean) or unit
//! future timelike vectors of `x₀²+x₁²−x₂²` (hyperbolic). A line is a covector `cov`
//! with the half-plane `cov·x ≤ 0`, plus a pole used for reflections and angles.

use super::Geometry;
use crate::angle::AngleFrac;
use crate::linalg::{cross3, dot, identity, mat_mul, mat_vec, max_abs_diff, sym_eigen, Mat3, Vec3};
use crate::real::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line<T> {
    pub pole: Vec3<T>,
    pub cov: Vec3<T>,
}

pub fn metric<T: Real>(geom: Geometry, a: &Vec3<T>, b: &Vec3<T>) -> T {
    match geom {
        Geometry::Spherical => dot(a, b),
        Geometry::Euclidean => a[0] * b[0] + a[1] * b[1],
        Geometry::Hyperbolic => a[0] * b[0] + a[1] * b[1] - a[2] * b[2],
    }
}

fn lower<T: Real>(geom: Geometry, v: &Vec3<T>) -> Vec3<T> {
    match geom {
        Geometry::Hyperbolic => [v[0], v[1], -v[2]],
        _ => *v,
    }
}

impl<T: Real> Line<T> {
    /// Reflection matrix `I − 2·pole·covᵀ`.
    pub fn reflection(&self) -> Mat3<T> {
        let two = T::lit(2.0);
        let mut r = identity::<T, 3>();
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = r[i][j] - two * self.pole[i] * self.cov[j];
            }
        }
        r
    }

    pub fn value(&self, x: &Vec3<T>) -> T {
        dot(&self.cov, x)
    }

    /// Image under `g`, given `g⁻¹`.
    pub fn moved(&self, g: &Mat3<T>, ginv: &Mat3<T>) -> Self {
        let cov = std::array::from_fn(|j| (0..3).fold(T::zero(), |s, i| s + self.cov[i] * ginv[i][j]));
        Line { pole: mat_vec(g, &self.pole), cov }
    }

    pub fn flipped(&self) -> Self {
        Line { pole: self.pole.map(|x| -x), cov: self.cov.map(|x| -x) }
    }

    /// Same line regardless of orientation.
    pub fn same_line(&self, other: &Self, tol: T) -> bool {
        max_abs_diff(&self.cov, &other.cov) < tol || max_abs_diff(&self.cov, &other.flipped().cov) < tol
    }
}

pub fn normalize_point<T: Real>(geom: Geometry, x: &Vec3<T>) -> Vec3<T> {
    match geom {
        Geometry::Spherical => {
            let n = dot(x, x).sqrt();
            x.map(|c| c / n)
        }
        Geometry::Euclidean => x.map(|c| c / x[2]),
        Geometry::Hyperbolic => {
            let q = (x[2] * x[2] - x[0] * x[0] - x[1] * x[1]).sqrt();
            let s = if x[2] < T::zero() { -q } else { q };
            x.map(|c| c / s)
        }
    }
}

/// A triangle with its sides (side `i` opposite vertex `i`) oriented outward.
#[derive(Clone, Debug)]
pub struct Triangle<T> {
    pub geom: Geometry,
    pub lines: [Line<T>; 3],
    pub vertices: [Vec3<T>; 3],
}

/// Meet of two lines as a normalized point; `None` if they do not meet in the plane.
pub fn meet<T: Real>(geom: Geometry, a: &Line<T>, b: &Line<T>, third: &Line<T>) -> Option<Vec3<T>> {
    let x = cross3(&a.cov, &b.cov);
    let tol = T::lit(1e-12);
    let x = match geom {
        Geometry::Spherical => {
            if dot(&x, &x) < tol {
                return None;
            }
            if third.value(&x) > T::zero() {
                x.map(|c| -c)
            } else {
                x
            }
        }
        Geometry::Euclidean => {
            if x[2].abs() < tol {
                return None;
            }
            x
        }
        Geometry::Hyperbolic => {
            if x[2] * x[2] - x[0] * x[0] - x[1] * x[1] <= tol {
                return None;
            }
            x
        }
    };
    Some(normalize_point(geom, &x))
}

impl<T: Real> Triangle<T> {
    /// Triangle with angle `angles[v]` at vertex `v`.
    pub fn realize(angles: &[AngleFrac; 3]) -> Self {
        let geom = super::triangle_geometry(angles);
        let lines = match geom {
            Geometry::Euclidean => {
                let (a0, a1) = (angles[0].radians::<T>(), angles[1].radians::<T>());
                let v = [
                    [T::zero(), T::zero()],
                    [angles[2].sin::<T>(), T::zero()],
                    [a1.sin() * a0.cos(), a1.sin() * a0.sin()],
                ];
                std::array::from_fn(|i| {
                    let (p, q) = (v[(i + 1) % 3], v[(i + 2) % 3]);
                    let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                    let len = (dx * dx + dy * dy).sqrt();
                    let (mut a, mut b) = (dy / len, -dx / len);
                    let mut c = a * p[0] + b * p[1];
                    if a * v[i][0] + b * v[i][1] - c > T::zero() {
                        a = -a;
                        b = -b;
                        c = -c;
                    }
                    Line { pole: [a, b, T::zero()], cov: [a, b, -c] }
                })
            }
            _ => {
                // Gram matrix of the sides: −cos of the angle at the opposite vertex
                let mut g = identity::<T, 3>();
                for a in 0..3 {
                    for b in 0..3 {
                        if a != b {
                            g[a][b] = -angles[3 - a - b].cos::<T>();
                        }
                    }
                }
                let (w, v) = sym_eigen(&g);
                let poles: [Vec3<T>; 3] =
                    std::array::from_fn(|i| std::array::from_fn(|r| w[r].abs().sqrt() * v[i][r]));
                std::array::from_fn(|i| Line { pole: poles[i], cov: lower(geom, &poles[i]) })
            }
        };
        let mut t = Triangle { geom, lines, vertices: [[T::zero(); 3]; 3] };
        t.fix_vertices();
        t
    }

    fn fix_vertices(&mut self) {
        let geom = self.geom;
        let compute = |lines: &[Line<T>; 3]| -> [Vec3<T>; 3] {
            std::array::from_fn(|v| {
                let mut x = cross3(&lines[(v + 1) % 3].cov, &lines[(v + 2) % 3].cov);
                if lines[v].value(&x) > T::zero() {
                    x = x.map(|c| -c);
                }
                x
            })
        };
        let mut raw = compute(&self.lines);
        if geom == Geometry::Hyperbolic && raw[0][2] < T::zero() {
            // triangle sits on the past sheet: flip every line
            self.lines = self.lines.map(|l| l.flipped());
            raw = compute(&self.lines);
        }
        self.vertices = raw.map(|x| normalize_point(geom, &x));
    }

    pub fn reflections(&self) -> [Mat3<T>; 3] {
        self.lines.map(|l| l.reflection())
    }
}

/// Area of a triangle by angle excess (spherical) or defect (hyperbolic).
pub fn area(geom: Geometry, angles: &[AngleFrac; 3]) -> f64 {
    let s: f64 = angles.iter().map(|a| a.radians::<f64>()).sum();
    match geom {
        Geometry::Spherical => s - std::f64::consts::PI,
        Geometry::Hyperbolic => std::f64::consts::PI - s,
        Geometry::Euclidean => f64::NAN,
    }
}

/// A tile `g·f` with its inverse kept alongside.
#[derive(Clone, Debug)]
pub struct Tile<T> {
    pub g: Mat3<T>,
    pub ginv: Mat3<T>,
    pub vertices: [Vec3<T>; 3],
}

impl<T: Real> Tile<T> {
    pub fn identity(f: &Triangle<T>) -> Self {
        Tile { g: identity(), ginv: identity(), vertices: f.vertices }
    }

    /// Neighbour across side `l`.
    pub fn across(&self, f: &Triangle<T>, refl: &[Mat3<T>; 3], l: usize) -> Self {
        let g = mat_mul(&self.g, &refl[l]);
        let ginv = mat_mul(&refl[l], &self.ginv);
        let vertices = f.vertices.map(|v| normalize_point(f.geom, &mat_vec(&g, &v)));
        Tile { g, ginv, vertices }
    }

    pub fn line(&self, f: &Triangle<T>, l: usize) -> Line<T> {
        f.lines[l].moved(&self.g, &self.ginv)
    }

    pub fn same_as(&self, other: &Self, tol: T) -> bool {
        let mut used = [false; 3];
        self.vertices.iter().all(|x| {
            let hit = (0..3).find(|&k| !used[k] && max_abs_diff(x, &other.vertices[k]) < tol);
            hit.map(|k| used[k] = true).is_some()
        })
    }

    pub fn centroid(&self, geom: Geometry) -> Vec3<T> {
        let s = (0..3).fold([T::zero(); 3], |acc, k| std::array::from_fn(|i| acc[i] + self.vertices[k][i]));
        normalize_point(geom, &s)
    }
}
