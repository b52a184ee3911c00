//! Coxeter decompositions of spherical, Euclidean and hyperbolic triangles.

mod glue;
pub mod model;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::AngleFrac;

pub use glue::glue_closure;
pub use search::TriangleSearch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

/// Geometry of the triangle with these angles, decided exactly from the angle sum.
pub fn triangle_geometry(angles: &[AngleFrac; 3]) -> Geometry {
    // compare Σ num/den with 1 over a common denominator
    let den: u64 = angles.iter().map(|a| a.den() as u64).product();
    let num: u64 = angles.iter().map(|a| a.num() as u64 * den / a.den() as u64).sum();
    match num.cmp(&den) {
        std::cmp::Ordering::Greater => Geometry::Spherical,
        std::cmp::Ordering::Equal => Geometry::Euclidean,
        std::cmp::Ordering::Less => Geometry::Hyperbolic,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriangleError {
    #[error("{0:?} and {1:?} triangles cannot tile each other")]
    Domain(Geometry, Geometry),
}

/// A triangle cut into congruent copies of a Coxeter triangle.
///
/// Corners are labelled so that `outer` ascends; side `i` is opposite corner `i` and
/// its pattern lists the tile edges met walking from corner `i+1` to corner `i+2`,
/// each edge as the labels `k` of the tile angles `π/k` at its near and far end.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleDecomp {
    pub geometry: Geometry,
    pub outer: [AngleFrac; 3],
    /// Angles of the tile, ascending.
    pub fundamental: [AngleFrac; 3],
    pub tiles: usize,
    pub corner_parts: [u32; 3],
    pub side_patterns: [Vec<[u32; 2]>; 3],
    /// Rounded tile coordinates relative to the outer sides; identifies the decomposition.
    #[serde(skip)]
    pub descriptor: Vec<Vec<i64>>,
    pub seating: String,
}

impl TriangleDecomp {
    /// Non-trivial and every corner covered by a single tile.
    pub fn is_second_type(&self) -> bool {
        self.tiles > 1 && self.corner_parts.iter().all(|&p| p == 1)
    }

    fn sort_key(&self) -> (Geometry, [AngleFrac; 3], [AngleFrac; 3], usize, Vec<Vec<i64>>) {
        (self.geometry, self.outer, self.fundamental, self.tiles, self.descriptor.clone())
    }
}

/// A side walked the other way.
pub(crate) fn reversed(p: &[[u32; 2]]) -> Vec<[u32; 2]> {
    p.iter().rev().map(|e| [e[1], e[0]]).collect()
}

/// Side patterns after relabelling corners: new corner `i` is old corner `perm[i]`.
pub(crate) fn relabel_patterns(patterns: &[Vec<[u32; 2]>; 3], perm: &[usize; 3]) -> [Vec<[u32; 2]>; 3] {
    std::array::from_fn(|i| {
        let src = perm[i];
        if perm[(i + 1) % 3] == (src + 1) % 3 {
            patterns[src].clone()
        } else {
            reversed(&patterns[src])
        }
    })
}

pub(crate) const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl TriangleDecomp {
    /// Corner parts and side patterns under every relabelling that keeps `outer` sorted.
    pub fn labellings(&self) -> Vec<([u32; 3], [Vec<[u32; 2]>; 3])> {
        PERMS3
            .iter()
            .filter(|p| p.map(|k| self.outer[k]) == self.outer)
            .map(|p| (p.map(|k| self.corner_parts[k]), relabel_patterns(&self.side_patterns, p)))
            .collect()
    }
}

fn coxeter(labels: [u32; 3]) -> [AngleFrac; 3] {
    labels.map(AngleFrac::pi_over)
}

/// Spherical Coxeter triangles with labels up to `max_label`.
pub fn spherical_fundamentals(max_label: u32) -> Vec<[AngleFrac; 3]> {
    let mut out: Vec<_> = (2..=max_label).map(|n| coxeter([2, 2, n])).collect();
    out.extend([[2, 3, 3], [2, 3, 4], [2, 3, 5]].into_iter().filter(|t| t[2] <= max_label).map(coxeter));
    out
}

pub fn euclidean_fundamentals() -> Vec<[AngleFrac; 3]> {
    vec![coxeter([3, 3, 3]), coxeter([2, 4, 4]), coxeter([2, 3, 6])]
}

/// Decompositions into copies of `fundamental`, as described by `opts`.
pub fn search_triangle_decompositions(fundamental: &[AngleFrac; 3], opts: &TriangleSearch) -> Vec<TriangleDecomp> {
    search::search(fundamental, opts)
}

/// Second type decompositions with at most `max_tiles` tiles over every fundamental
/// triangle of `geometry` (spherical labels bounded by `max_label`).
pub fn second_type_list(geometry: Geometry, max_tiles: usize, max_label: u32) -> Vec<TriangleDecomp> {
    let funds = match geometry {
        Geometry::Spherical => spherical_fundamentals(max_label),
        Geometry::Euclidean => euclidean_fundamentals(),
        Geometry::Hyperbolic => Vec::new(),
    };
    let opts = TriangleSearch { max_tiles, second_type_only: true, outer: None };
    let mut out: Vec<_> = funds.iter().flat_map(|f| search::search(f, &opts)).collect();
    out.sort_by_key(|a| a.sort_key());
    out
}

/// Whether `outer` is a union of copies of `fundamental` meeting along whole sides.
///
/// Euclidean searches stop at `euclid_cap` tiles since the tile size is fixed but the
/// outer triangle is only known up to similarity.
pub fn triangle_decomposition_exists(
    fundamental: &[AngleFrac; 3],
    outer: &[AngleFrac; 3],
    euclid_cap: usize,
) -> Result<bool, TriangleError> {
    let (gf, go) = (triangle_geometry(fundamental), triangle_geometry(outer));
    if gf != go {
        return Err(TriangleError::Domain(gf, go));
    }
    let (mut a, mut b) = (*fundamental, *outer);
    a.sort();
    b.sort();
    if a == b {
        return Ok(true);
    }
    let max_tiles = match gf {
        Geometry::Euclidean => euclid_cap,
        _ => {
            let r = model::area(gf, outer) / model::area(gf, fundamental);
            if (r - r.round()).abs() > 1e-9 || r.round() < 2.0 {
                return Ok(false);
            }
            r.round() as usize
        }
    };
    let opts = TriangleSearch { max_tiles, second_type_only: false, outer: Some(*outer) };
    Ok(!search::search(fundamental, &opts).is_empty())
}

/// The triangle decomposition cut on a small sphere or horosphere around container
/// vertex `v`. `None` if the tiles there are not all congruent at that corner.
pub fn link_decomposition<T: crate::real::Real>(
    d: &crate::decomp::DecomposedTet<T>,
    fund: &crate::decomp::Fundamental<T>,
    v: usize,
) -> Option<TriangleDecomp> {
    let at = crate::decomp::tiles_at_vertex(d, fund, v)?;
    let mut links = at.iter().map(|&(_, l)| {
        let mut a = fund.shape.link_angles(l);
        a.sort();
        a
    });
    let fundamental = links.next()?;
    if links.any(|a| a != fundamental) {
        return None;
    }
    let [a, b, c] = crate::shape::complement1(v);
    let mut corners = [
        (d.shape.angle(b, c), d.mark(b, c).parts),
        (d.shape.angle(a, c), d.mark(a, c).parts),
        (d.shape.angle(a, b), d.mark(a, b).parts),
    ];
    corners.sort();
    Some(TriangleDecomp {
        geometry: triangle_geometry(&corners.map(|c| c.0)),
        outer: corners.map(|c| c.0),
        fundamental,
        tiles: at.len(),
        corner_parts: corners.map(|c| c.1),
        side_patterns: Default::default(),
        descriptor: Vec::new(),
        seating: format!("link of vertex {v}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: u32, b: u32, c: u32) -> [AngleFrac; 3] {
        [AngleFrac::pi_over(a), AngleFrac::pi_over(b), AngleFrac::pi_over(c)]
    }

    #[test]
    fn geometry_by_angle_sum() {
        assert_eq!(triangle_geometry(&tri(2, 3, 5)), Geometry::Spherical);
        assert_eq!(triangle_geometry(&tri(3, 3, 3)), Geometry::Euclidean);
        assert_eq!(triangle_geometry(&tri(2, 4, 4)), Geometry::Euclidean);
        assert_eq!(triangle_geometry(&tri(2, 3, 7)), Geometry::Hyperbolic);
    }

    #[test]
    fn spherical_second_type_is_unique() {
        let list = second_type_list(Geometry::Spherical, 120, 6);
        assert_eq!(list.len(), 1, "{list:#?}");
        assert_eq!(list[0].outer, tri(2, 2, 2));
        assert_eq!(list[0].fundamental, tri(5, 3, 2));
        assert_eq!(list[0].tiles, 15);
    }

    #[test]
    fn euclidean_second_type_up_to_24() {
        let list = second_type_list(Geometry::Euclidean, 24, 6);
        let got: Vec<_> = list.iter().map(|d| (d.outer, d.fundamental, d.tiles)).collect();
        let want = vec![
            (tri(3, 3, 3), tri(3, 3, 3), 4),
            (tri(3, 3, 3), tri(3, 3, 3), 9),
            (tri(3, 3, 3), tri(3, 3, 3), 16),
            (tri(3, 3, 3), tri(6, 3, 2), 18),
            (tri(4, 4, 2), tri(4, 4, 2), 9),
        ];
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut want_sorted = want;
        want_sorted.sort();
        assert_eq!(got_sorted, want_sorted, "{got:?}");
    }

    #[test]
    fn spherical_tile_counts_match_area() {
        for f in spherical_fundamentals(5) {
            let opts = TriangleSearch { max_tiles: 60, ..Default::default() };
            for d in search_triangle_decompositions(&f, &opts) {
                let r = model::area(Geometry::Spherical, &d.outer) / model::area(Geometry::Spherical, &f);
                assert!((r - d.tiles as f64).abs() < 1e-9, "{d:?}");
            }
        }
    }

    #[test]
    fn existence_queries() {
        assert_eq!(triangle_decomposition_exists(&tri(4, 4, 2), &tri(4, 4, 2), 64), Ok(true));
        assert_eq!(triangle_decomposition_exists(&tri(6, 3, 2), &tri(3, 3, 3), 64), Ok(true));
        assert_eq!(triangle_decomposition_exists(&tri(3, 3, 3), &tri(6, 3, 2), 64), Ok(false));
        assert!(triangle_decomposition_exists(&tri(2, 3, 5), &tri(3, 3, 3), 64).is_err());
        assert_eq!(triangle_decomposition_exists(&tri(2, 3, 7), &tri(3, 3, 7), 64), Ok(false));
        assert_eq!(triangle_decomposition_exists(&tri(2, 3, 8), &tri(4, 8, 8), 64), Ok(true));
    }

    #[test]
    fn glued_decompositions_are_found_by_placement() {
        let mut funds = spherical_fundamentals(5);
        funds.extend(euclidean_fundamentals());
        funds.push(tri(2, 3, 7));
        funds.push(tri(2, 4, 5));
        for f in funds {
            let geom = triangle_geometry(&f);
            let cap = if geom == Geometry::Spherical { 60 } else { 16 };
            let glued = glue_closure(&f, cap);
            let placed = search_triangle_decompositions(&f, &TriangleSearch { max_tiles: cap, ..Default::default() });
            // equilateral tiles never glue: both end sums are 2π/3
            if geom != Geometry::Spherical && f != tri(3, 3, 3) {
                assert!(glued.len() > 1, "{f:?}");
            }
            for g in &glued {
                assert!(!g.is_second_type() || g.tiles == 1);
                if geom != Geometry::Euclidean {
                    let r = model::area(geom, &g.outer) / model::area(geom, &f);
                    assert!((r - g.tiles as f64).abs() < 1e-9, "{g:?}");
                }
                let hit = placed.iter().any(|p| {
                    p.outer == g.outer && p.tiles == g.tiles && p.labellings().iter().any(|l| l.0 == g.corner_parts && l.1 == g.side_patterns)
                });
                assert!(hit || g.tiles == 1, "{f:?}: glued {g:?} not placed");
            }
        }
    }

    #[test]
    fn spherical_list_stable_up_to_60_tiles() {
        for cap in [15, 30, 60] {
            let list = second_type_list(Geometry::Spherical, cap, 6);
            assert_eq!(list.len(), 1);
            assert_eq!(list[0].tiles, 15);
        }
    }
}
