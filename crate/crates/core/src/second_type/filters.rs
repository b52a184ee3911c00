//! Necessary conditions for a second type decomposition of `P` by `F`.

use serde::{Deserialize, Serialize};

use super::placement::{cone_tiles, convexity_closure, corner_seatings, far_neighbours};
use crate::angle::AngleFrac;
use crate::catalog::{triangle_plus_tail, CatalogEntry};
use crate::decomp::Fundamental;
use crate::shape::{complement1, TetShape, VertexKind};
use crate::triangle2d::TriangleDecomp;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub name: String,
    pub passed: bool,
    pub reason: String,
}

impl FilterVerdict {
    fn new(name: &str, passed: bool, reason: impl Into<String>) -> Self {
        FilterVerdict { name: name.into(), passed, reason: reason.into() }
    }
}

/// Tile counts allowed at each container vertex.
pub type VertexOptions = [Vec<u32>; 4];

fn sorted(mut a: [AngleFrac; 3]) -> [AngleFrac; 3] {
    a.sort();
    a
}

/// Options per container vertex: 1 when its link is a fundamental link, plus the tile
/// counts of second type decompositions of the link by a fundamental link.
pub fn vertex_options(f: &CatalogEntry, p: &CatalogEntry, lists: &[TriangleDecomp]) -> VertexOptions {
    std::array::from_fn(|v| {
        let link = sorted(p.shape.link_angles(v));
        let mut out = Vec::new();
        for w in (0..4).filter(|&w| f.vertices[w] == p.vertices[v]) {
            let fl = sorted(f.shape.link_angles(w));
            if fl == link {
                out.push(1);
            }
            out.extend(lists.iter().filter(|d| d.outer == link && d.fundamental == fl).map(|d| d.tiles as u32));
        }
        out.sort();
        out.dedup();
        out
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    VertexCount,
    IdealCount,
    EdgeMultiplication,
}

struct Counting<'a> {
    ideal: [bool; 4],
    n: u32,
    ideal_in_f: u32,
    /// Tail label `k` of the fundamental when the edge bound applies.
    tail: Option<u32>,
    options: &'a VertexOptions,
}

impl Counting<'_> {
    fn admits(&self, choice: &[u32; 4], stage: Stage) -> bool {
        let n = self.n;
        if choice.iter().any(|&c| c > n) || (choice.iter().all(|&c| c == 1) && n < 8) {
            return false;
        }
        if stage >= Stage::IdealCount && self.ideal.iter().any(|&i| i) {
            let s: u32 = (0..4).filter(|&v| self.ideal[v]).map(|v| choice[v]).sum();
            if s > self.ideal_in_f * n || n > s {
                return false;
            }
        }
        if stage >= Stage::EdgeMultiplication {
            if let Some(k) = self.tail {
                if (0..4).any(|v| self.ideal[v] && choice[v] * k > n) {
                    return false;
                }
            }
        }
        true
    }

    fn feasible(&self, stage: Stage) -> bool {
        let o = self.options;
        o[0].iter().any(|&a| {
            o[1].iter().any(|&b| o[2].iter().any(|&c| o[3].iter().any(|&d| self.admits(&[a, b, c, d], stage))))
        })
    }
}

/// Outcome of the convexity count at one container vertex and seating.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeCount {
    pub vertex: usize,
    pub seating: String,
    pub link_tiles: u32,
    /// Tiles forced by convexity around edges.
    pub closure: Option<usize>,
    /// Corner tiles plus the tiles behind far faces off the best single plane.
    pub behind_any: Option<usize>,
    /// As `behind_any`, but only a plane meeting the corner faces at the container's
    /// angles may carry the opposite face.
    pub behind: Option<usize>,
    /// Lower bound on the tile count, `None` when the seating is impossible.
    pub forced: Option<usize>,
}

/// Container relabelled so vertex `v` is opposite face 3.
pub(crate) fn at_vertex(p: &TetShape, v: usize) -> TetShape {
    let o = complement1(v);
    p.permuted(&[o[0], o[1], o[2], v])
}

/// Seats the corner at every container vertex with single-tile corner edges and counts
/// the tiles convexity forces into the container.
pub fn cone_counts(fund: &Fundamental<f64>, p: &TetShape, n: u32) -> Vec<ConeCount> {
    let mut out = Vec::new();
    for v in 0..4 {
        let q = at_vertex(p, v);
        let ideal = q.vertex_type::<f64>(3, 1e-9) == VertexKind::Ideal;
        let depth = if ideal { n as usize + 2 } else { 64 };
        for c in corner_seatings(fund, &q, depth, true) {
            let Some(tiles) = cone_tiles(fund, &c, n as usize) else { continue };
            let closure = convexity_closure(fund, &tiles, &c.normals, n as usize);
            let opposite = [0, 1, 2].map(|i| -q.angle(i, 3).cos::<f64>());
            let behind_any = far_neighbours(fund, &tiles, c.w, &c.normals, None).map(|k| k + tiles.len());
            let behind = far_neighbours(fund, &tiles, c.w, &c.normals, Some(opposite)).map(|k| k + tiles.len());
            let forced = closure.zip(behind).map(|(a, b)| a.max(b));
            let link_tiles = tiles.len() as u32;
            out.push(ConeCount { vertex: v, seating: c.label(), link_tiles, closure, behind_any, behind, forced });
        }
    }
    out
}

/// Runs the filters in order and stops at the first failure. `ratio` has already passed
/// the volume test.
pub fn run_filters(
    fund: &Fundamental<f64>,
    f: &CatalogEntry,
    p: &CatalogEntry,
    ratio: u32,
    lists: &[TriangleDecomp],
) -> (VertexOptions, Vec<FilterVerdict>) {
    let mut verdicts = vec![FilterVerdict::new("volume", true, format!("Vol(P)/Vol(F) = {ratio}"))];
    let options = vertex_options(f, p, lists);
    if ratio == 2 {
        verdicts.push(FilterVerdict::new(
            "two-tiles",
            false,
            "two tiles share a whole facet, so the angle at one of its edges is a sum of two tile angles",
        ));
        return (options, verdicts);
    }
    verdicts.push(FilterVerdict::new("two-tiles", true, format!("{ratio} tiles")));

    if let Some(v) = (0..4).find(|&v| options[v].is_empty()) {
        let link = p.shape.link_angles(v);
        verdicts.push(FilterVerdict::new(
            "subdiagram",
            false,
            format!("link of vertex {v} ({}, {}, {}) has no second type decomposition by a link of {}", link[0], link[1], link[2], f.id),
        ));
        return (options, verdicts);
    }
    verdicts.push(FilterVerdict::new("subdiagram", true, format!("tile counts at vertices {options:?}")));

    let ideal = p.vertices.map(|k| k == VertexKind::Ideal);
    let tail = triangle_plus_tail(&f.shape)
        .filter(|&k| k > 3 && !p.shape.angles().contains(&AngleFrac::pi_over(k)));
    let mut counting = Counting { ideal, n: ratio, ideal_in_f: f.ideal_count() as u32, tail, options: &options };
    let stages = [
        (Stage::VertexCount, "vertex-count", "no choice of vertex tile counts is compatible with N (at most N at a vertex, N >= 8 if every vertex is a single tile)"),
        (Stage::IdealCount, "ideal-count", "ideal vertex tile counts sum outside [N, i_F N]"),
        (Stage::EdgeMultiplication, "edge-multiplication", "each tile at an ideal vertex brings k tiles around its pi/k edge, exceeding N"),
    ];
    for (stage, name, why) in stages {
        if stage == Stage::EdgeMultiplication && tail.is_none() {
            verdicts.push(FilterVerdict::new(name, true, "not applicable"));
            continue;
        }
        if !counting.feasible(stage) {
            verdicts.push(FilterVerdict::new(name, false, format!("{why}; options {options:?}, N = {ratio}")));
            return (options, verdicts);
        }
        verdicts.push(FilterVerdict::new(name, true, "feasible"));
    }

    // three-planes: drop vertex counts whose seatings all force more than N tiles
    let counts = cone_counts(fund, &p.shape, ratio);
    let mut refined = options.clone();
    let mut dropped = Vec::new();
    for v in 0..4 {
        refined[v].retain(|&n| {
            let keep = counts.iter().any(|c| c.vertex == v && c.link_tiles == n && c.forced.is_some_and(|k| k <= ratio as usize));
            if !keep {
                let seated: Vec<&ConeCount> = counts.iter().filter(|c| c.vertex == v && c.link_tiles == n).collect();
                let least = |f: fn(&ConeCount) -> Option<usize>| seated.iter().filter_map(|c| f(c)).min();
                dropped.push(match (least(|c| c.behind_any), least(|c| c.forced)) {
                    (Some(a), Some(k)) => format!(
                        "{n} tiles at vertex {v}: their far faces need {} more tiles ({n}+{} = {a}), at least {k} counting angles, > {ratio}",
                        a - n as usize,
                        a - n as usize
                    ),
                    (_, Some(k)) => format!("{n} tiles at vertex {v} force at least {k} > {ratio}"),
                    _ => format!("{n} tiles at vertex {v} cannot be seated inside the container"),
                });
            }
            keep
        });
    }
    counting.options = &refined;
    let ok = refined.iter().all(|o| !o.is_empty()) && counting.feasible(Stage::EdgeMultiplication);
    let reason = if dropped.is_empty() { "no vertex count removed".to_string() } else { dropped.join("; ") };
    verdicts.push(FilterVerdict::new("three-planes", ok, reason));
    (refined, verdicts)
}
