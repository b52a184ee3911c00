//! Gluing two decompositions along congruent faces.

use serde::{Deserialize, Serialize};

use super::{DecomposedTet, FaceTrace, Fundamental, Provenance};
use crate::angle::{AngleSum, EdgeMark};
use crate::hyperboloid::{frame_map, project_out, reflection, same_normal_set, tile_normals};
use crate::linalg::{is_lorentz, mat_mul, mat_vec, max_abs_diff, Mat4};
use crate::real::Real;
use crate::shape::{complement1, pair_index, permutations4, TetShape};
use crate::volume::murakami_yano;

/// Why a glue attempt failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rejection {
    DifferentFundamental,
    /// Face triangles or their traces differ.
    C1,
    /// Not exactly two matched edges sum to π.
    C2,
    /// The apex edges do not fuse.
    C3,
    /// The remaining edge sum is not below π.
    C4,
    /// Result is not a hyperbolic tetrahedron.
    C5,
    /// The tessellations of the two sides disagree across the glued face.
    Mirror,
    /// Volume additivity failed numerically.
    Volume,
}

/// All six vertex matchings of face `p` onto face `q`.
pub fn matchings(q: usize) -> Vec<[usize; 3]> {
    let c = complement1(q);
    permutations4()
        .iter()
        .filter(|p| p[3] == 3)
        .map(|p| [c[p[0]], c[p[1]], c[p[2]]])
        .collect()
}

fn merge<T: Real>(a: &FaceTrace<T>, b: &FaceTrace<T>, shape: &TetShape, face: usize) -> FaceTrace<T> {
    let mut types = a.piece_faces.clone();
    types.extend_from_slice(&b.piece_faces);
    FaceTrace::new(shape, face, a.pieces + b.pieces, types)
}

/// Glues face `p` of `d1` to face `q` of `d2`, vertex `complement1(p)[t]` going to `matching[t]`.
///
/// On success the result is canonically labelled, with provenance `(0,0,p,q)`;
/// the caller fills in the entry numbers.
pub fn glue<T: Real>(
    fund: &Fundamental<T>,
    d1: &DecomposedTet<T>,
    p: usize,
    d2: &DecomposedTet<T>,
    q: usize,
    matching: [usize; 3],
) -> Result<DecomposedTet<T>, Rejection> {
    if d1.fundamental != d2.fundamental {
        return Err(Rejection::DifferentFundamental);
    }
    let verts = complement1(p);
    let sigma = |x: usize| matching[verts.iter().position(|&v| v == x).expect("vertex of face p")];
    let tol = T::zero_tol();

    // C1: congruent faces with matching traces
    for &a in &verts {
        let x: T = d1.shape.face_angle(p, a).map_err(|_| Rejection::C1)?;
        let y: T = d2.shape.face_angle(q, sigma(a)).map_err(|_| Rejection::C1)?;
        if (x - y).abs() > tol {
            return Err(Rejection::C1);
        }
        if d1.segment(p, a) != d2.segment(q, sigma(a)) {
            return Err(Rejection::C1);
        }
    }
    if !d1.faces[p].same_pattern(&d2.faces[q]) {
        return Err(Rejection::C1);
    }

    // C2: exactly two flat sums
    let sums: Vec<AngleSum> = verts.iter().map(|&a| d1.shape.angle(p, a).add(d2.shape.angle(q, sigma(a)))).collect();
    let flat: Vec<usize> = (0..3).filter(|&t| sums[t] == AngleSum::Flat).map(|t| verts[t]).collect();
    if flat.len() != 2 {
        return Err(Rejection::C2);
    }
    let (i, j) = (flat[0], flat[1]);
    let tk = (0..3).find(|&t| sums[t] != AngleSum::Flat).unwrap();
    let k = verts[tk];

    // C3: the edges {i,j} continue each other
    if d1.shape.angle(i, j) != d2.shape.angle(sigma(i), sigma(j)) {
        return Err(Rejection::C3);
    }
    // C4
    if !matches!(sums[tk], AngleSum::Angle(_)) {
        return Err(Rejection::C4);
    }

    let mk1 = d1.mark(p, k);
    let mk2 = d2.mark(q, sigma(k));
    let mij1 = d1.mark(i, j);
    if mk1.label != mk2.label || mij1 != d2.mark(sigma(i), sigma(j)) {
        return Err(Rejection::Mirror);
    }

    // isometry carrying d2's face q onto d1's face p from the other side
    let n1 = &d1.normals;
    let n2 = &d2.normals;
    let dst = [
        n1[p].map(|x| -x),
        project_out(&n1[i], &n1[p]),
        project_out(&n1[j], &n1[p]),
        project_out(&n1[k], &n1[p]),
    ];
    let src = [
        n2[q],
        project_out(&n2[sigma(i)], &n2[q]),
        project_out(&n2[sigma(j)], &n2[q]),
        project_out(&n2[sigma(k)], &n2[q]),
    ];
    let h = frame_map(&dst, &src).ok_or(Rejection::C1)?;
    if !is_lorentz(&h, T::geom_tol()) {
        return Err(Rejection::C1);
    }
    let gt = T::geom_tol();
    for (a, b) in [(i, sigma(i)), (j, sigma(j))] {
        if max_abs_diff(&mat_vec(&h, &n2[b]), &n1[a]) > gt {
            return Err(Rejection::C3);
        }
    }

    // the tile of d1 on face p, reflected across it, must be a tile of h·d2
    let x = d1
        .tile_maps
        .iter()
        .find(|g| tile_normals(&fund.real, g).iter().any(|m| max_abs_diff(m, &n1[p]) < gt))
        .ok_or(Rejection::Mirror)?;
    let target = tile_normals(&fund.real, &mat_mul(&reflection(&n1[p]), x));
    let moved: Vec<Mat4<T>> = d2.tile_maps.iter().map(|g| mat_mul(&h, g)).collect();
    if !moved.iter().any(|g| same_normal_set(&tile_normals(&fund.real, g), &target, gt)) {
        return Err(Rejection::Mirror);
    }

    // raw result with faces [k, σk, i, j]
    let (si, sj, sk) = (sigma(i), sigma(j), sigma(k));
    let mut marks = [EdgeMark::fundamental(2); 6];
    marks[pair_index(0, 1)] = EdgeMark { parts: mk1.parts + mk2.parts, label: mk1.label };
    marks[pair_index(0, 2)] = d1.mark(k, i);
    marks[pair_index(0, 3)] = d1.mark(k, j);
    marks[pair_index(1, 2)] = d2.mark(sk, si);
    marks[pair_index(1, 3)] = d2.mark(sk, sj);
    marks[pair_index(2, 3)] = mij1;
    let shape = TetShape::new(marks.map(|m| m.angle())).map_err(|_| Rejection::C4)?;
    if !shape.is_hyperbolic::<T>(tol) {
        return Err(Rejection::C5);
    }
    let mut segments = [0u32; 6];
    segments[pair_index(0, 1)] = d1.segment(p, k);
    segments[pair_index(0, 2)] = d1.segment(k, i);
    segments[pair_index(0, 3)] = d1.segment(k, j);
    segments[pair_index(1, 2)] = d2.segment(sk, si);
    segments[pair_index(1, 3)] = d2.segment(sk, sj);
    segments[pair_index(2, 3)] = d1.segment(i, j) + d2.segment(si, sj);
    let faces = [
        FaceTrace::new(&shape, 0, d1.faces[k].pieces, d1.faces[k].piece_faces.clone()),
        FaceTrace::new(&shape, 1, d2.faces[sk].pieces, d2.faces[sk].piece_faces.clone()),
        merge(&d1.faces[i], &d2.faces[si], &shape, 2),
        merge(&d1.faces[j], &d2.faces[sj], &shape, 3),
    ];
    let mut tile_maps = d1.tile_maps.clone();
    tile_maps.extend(moved);
    let tiles = d1.tiles + d2.tiles;
    let vol = murakami_yano::<T>(&shape);
    if (vol - fund.volume * T::lit(tiles as f64)).abs() > T::lit(1e-8) {
        return Err(Rejection::Volume);
    }
    let raw = DecomposedTet {
        fundamental: d1.fundamental.clone(),
        shape,
        marks,
        tiles,
        depth: 1 + d1.depth.max(d2.depth),
        provenance: Provenance::Glue { m: 0, n: 0, p, q, matching },
        faces,
        segments,
        key: String::new(),
        normals: [n1[k], mat_vec(&h, &n2[sk]), n1[i], n1[j]],
        tile_maps,
    };
    Ok(raw.canonicalize(fund))
}
