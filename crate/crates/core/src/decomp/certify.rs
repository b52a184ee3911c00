//! Independent geometric checks on a realized decomposition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DecompError, DecomposedTet, Family, FaceTrace, Fundamental};
use crate::hyperboloid::{
    inside, interior_point, normalize_point, reflection, same_normal_set, strictly_inside, tile_normals,
    tile_vertices, Vertex,
};
use crate::linalg::{column, inverse, lorentz, mat_mul, max_abs_diff, Vec4};
use crate::real::Real;
use crate::shape::{complement2, pair_index, VertexKind, PAIRS};
use crate::volume::tet_volume;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub tiles: usize,
    pub volume_residual: f64,
    pub samples_per_tile: usize,
    pub seed: u64,
    /// Sample points of one tile found strictly inside another.
    pub overlap_violations: usize,
    /// Tile vertices or samples outside the container.
    pub outside_violations: usize,
    /// Interior facets whose mirror image is not a tile.
    pub mirror_violations: usize,
    pub max_mirror_residual: f64,
    pub failures: Vec<String>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Container vertices in the decomposition's frame, `[v]` opposite face `v`.
pub fn container_vertices<T: Real>(d: &DecomposedTet<T>) -> Option<[Vertex<T>; 4]> {
    let kinds = d.shape.vertex_types::<T>(T::zero_tol());
    let mut a = [[T::zero(); 4]; 4];
    for j in 0..4 {
        for i in 0..4 {
            a[j][i] = if i == 3 { -d.normals[j][i] } else { d.normals[j][i] };
        }
    }
    let inv = inverse(&a, T::epsilon())?;
    Some(std::array::from_fn(|v| {
        let mut x = column(&inv, v).map(|t| -t);
        if x[3] < T::zero() {
            x = x.map(|t| -t);
        }
        let ideal = kinds[v] == VertexKind::Ideal;
        Vertex { point: normalize_point(&x, ideal), ideal }
    }))
}

/// Number of tiles around each container edge, measured at a generic interior point.
pub fn edge_wedge_counts<T: Real>(d: &DecomposedTet<T>, fund: &Fundamental<T>) -> Option<[u32; 6]> {
    let cv = container_vertices(d)?;
    let tol = T::lit(1e-7);
    let normals: Vec<[Vec4<T>; 4]> = d.tile_maps.iter().map(|g| tile_normals(&fund.real, g)).collect();
    Some(std::array::from_fn(|k| {
        let (a, b) = PAIRS[k];
        let [c, e] = complement2(a, b);
        let x = interior_point(&[cv[c], cv[e]], &[T::lit(0.3819), T::lit(0.6181)]);
        normals.iter().filter(|ns| inside(&x, &ns[..], tol)).count() as u32
    }))
}

/// Face traces and edge subdivisions read off the tile positions.
pub fn derived_face_traces<T: Real>(d: &DecomposedTet<T>, fund: &Fundamental<T>) -> ([FaceTrace<T>; 4], [u32; 6]) {
    let gt = T::geom_tol();
    let mut pieces: [Vec<u8>; 4] = Default::default();
    for g in &d.tile_maps {
        for (l, m) in tile_normals(&fund.real, g).iter().enumerate() {
            if let Some(f) = (0..4).find(|&f| max_abs_diff(m, &d.normals[f]) < gt) {
                pieces[f].push(fund.orbit[l]);
            }
        }
    }
    let faces = std::array::from_fn(|f| FaceTrace::new(&d.shape, f, pieces[f].len() as u32, pieces[f].clone()));
    let mut pts: Vec<Vec4<T>> = Vec::new();
    for g in &d.tile_maps {
        for v in tile_vertices(&fund.real, g) {
            if !pts.iter().any(|p| max_abs_diff(p, &v.point) < gt) {
                pts.push(v.point);
            }
        }
    }
    let segments = std::array::from_fn(|k| {
        let (a, b) = PAIRS[k];
        let on = pts
            .iter()
            .filter(|x| lorentz(x, &d.normals[a]).abs() < gt && lorentz(x, &d.normals[b]).abs() < gt)
            .count();
        on.saturating_sub(1) as u32
    });
    (faces, segments)
}

/// Number of tiles having container vertex `v` as a vertex.
pub fn tiles_at_vertex<T: Real>(d: &DecomposedTet<T>, fund: &Fundamental<T>, v: usize) -> Option<Vec<(usize, usize)>> {
    let cv = container_vertices(d)?;
    let gt = T::geom_tol();
    let mut out = Vec::new();
    for (t, g) in d.tile_maps.iter().enumerate() {
        for (l, x) in tile_vertices(&fund.real, g).iter().enumerate() {
            if x.ideal == cv[v].ideal && max_abs_diff(&x.point, &cv[v].point) < gt {
                out.push((t, l));
            }
        }
    }
    Some(out)
}

fn set_distance<T: Real>(a: &[Vec4<T>; 4], b: &[Vec4<T>; 4]) -> T {
    a.iter()
        .map(|x| b.iter().map(|y| max_abs_diff(x, y)).fold(T::infinity(), T::min))
        .fold(T::zero(), T::max)
}

/// Checks the decomposition against the definition: volumes add up, tiles do not
/// overlap, tiles stay in the container, and every interior facet is a mirror
/// between two tiles. Bookkept traces and marks are compared with the geometry.
pub fn realize_and_certify<T: Real>(
    d: &DecomposedTet<T>,
    fund: &Fundamental<T>,
    seed: u64,
    samples_per_tile: usize,
) -> Result<CertReport, DecompError> {
    let mut rep = CertReport { tiles: d.tiles, samples_per_tile, seed, ..Default::default() };
    let gt = T::geom_tol();
    if d.tile_maps.len() != d.tiles {
        rep.failures.push(format!("{} tile maps for {} tiles", d.tile_maps.len(), d.tiles));
    }

    let vol = tet_volume::<T>(&d.shape)?;
    let resid = (vol.value - fund.volume * T::lit(d.tiles as f64)).abs().to_f64().unwrap();
    rep.volume_residual = resid;
    if resid > 1e-6 * d.tiles as f64 {
        rep.failures.push(format!("volume residual {resid:e}"));
    }

    let normals: Vec<[Vec4<T>; 4]> = d.tile_maps.iter().map(|g| tile_normals(&fund.real, g)).collect();
    let verts: Vec<[Vertex<T>; 4]> = d.tile_maps.iter().map(|g| tile_vertices(&fund.real, g)).collect();

    for (t, vs) in verts.iter().enumerate() {
        for (l, v) in vs.iter().enumerate() {
            if !inside(&v.point, &d.normals, gt) {
                rep.outside_violations += 1;
                rep.failures.push(format!("vertex {l} of tile {t} lies outside the container"));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let margin = T::lit(1e-9);
    for (t, vs) in verts.iter().enumerate() {
        for _ in 0..samples_per_tile {
            let w: [T; 4] = std::array::from_fn(|_| T::lit(rng.gen_range(0.05..1.0)));
            let x = interior_point(&vs[..], &w);
            if !inside(&x, &d.normals, margin) {
                rep.outside_violations += 1;
            }
            for (u, ns) in normals.iter().enumerate() {
                if u != t && strictly_inside(&x, &ns[..], margin) {
                    rep.overlap_violations += 1;
                    if rep.overlap_violations == 1 {
                        rep.failures.push(format!("sample of tile {t} lies inside tile {u}"));
                    }
                }
            }
        }
    }

    for (t, g) in d.tile_maps.iter().enumerate() {
        for (l, m) in normals[t].iter().enumerate() {
            if d.normals.iter().any(|n| max_abs_diff(m, n) < gt) {
                continue;
            }
            let target = tile_normals(&fund.real, &mat_mul(&reflection(m), g));
            let best = normals.iter().map(|ns| set_distance(&target, ns)).fold(T::infinity(), T::min);
            let best = best.to_f64().unwrap();
            rep.max_mirror_residual = rep.max_mirror_residual.max(best);
            if !normals.iter().any(|ns| same_normal_set(&target, ns, T::lit(1e-8))) {
                rep.mirror_violations += 1;
                rep.failures.push(format!("facet {l} of tile {t}: mirror image missing, residual {best:e}"));
            }
        }
    }

    let (faces, segments) = derived_face_traces(d, fund);
    for f in 0..4 {
        if !faces[f].same_pattern(&d.faces[f]) {
            rep.failures.push(format!("face {f}: trace {:?} but geometry gives {:?}", d.faces[f].piece_faces, faces[f].piece_faces));
        }
    }
    if segments != d.segments {
        rep.failures.push(format!("edge subdivisions {:?} but geometry gives {:?}", d.segments, segments));
    }
    match edge_wedge_counts(d, fund) {
        Some(w) => {
            for (k, &(a, b)) in PAIRS.iter().enumerate() {
                if w[k] != d.marks[pair_index(a, b)].parts {
                    rep.failures.push(format!("edge {a}{b}: mark {} but {} tiles meet there", d.marks[k], w[k]));
                }
            }
        }
        None => rep.failures.push("container vertices not computable".into()),
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompType {
    First,
    Second,
}

/// First if produced by gluing, Second if every container angle is fundamental.
pub fn classify_type<T: Real>(
    d: &DecomposedTet<T>,
    first_type: &Family<T>,
    fund: &Fundamental<T>,
) -> Result<DecompType, DecompError> {
    if first_type.fundamental == d.fundamental && first_type.contains(d, fund) {
        Ok(DecompType::First)
    } else if d.all_fundamental() {
        Ok(DecompType::Second)
    } else {
        Err(DecompError::ThirdType(format!("{} tiles of {} in {:?}", d.tiles, d.fundamental, d.shape)))
    }
}
