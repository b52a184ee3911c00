//! Decompositions of a triangle into copies of a Coxeter triangle, found by seating
//! the outer triangle on walls of the reflection tessellation.

use std::collections::{HashMap, HashSet, VecDeque};

use super::model::{meet, metric, Line, Tile, Triangle};
use super::{Geometry, TriangleDecomp};
use crate::angle::AngleFrac;

const TOL: f64 = 1e-8;
/// Tiles kept when listing walls of an infinite tessellation.
const WALL_TILE_CAP: usize = 40_000;

#[derive(Clone, Debug)]
pub struct TriangleSearch {
    pub max_tiles: usize,
    pub second_type_only: bool,
    /// Only keep decompositions of a triangle with these angles (any order).
    pub outer: Option<[AngleFrac; 3]>,
}

impl Default for TriangleSearch {
    fn default() -> Self {
        TriangleSearch { max_tiles: 24, second_type_only: false, outer: None }
    }
}

fn round_key(x: &[f64]) -> Vec<i64> {
    x.iter().map(|c| (c * 1e6).round() as i64).collect()
}

fn line_key(l: &Line<f64>) -> Vec<i64> {
    let sign = l.cov.iter().find(|c| c.abs() > 1e-6).map_or(1.0, |c| c.signum());
    round_key(&l.cov.map(|c| c * sign))
}

/// Walls of the tessellation met by tiles within `depth` reflections of `f`.
fn walls(f: &Triangle<f64>, depth: usize) -> Vec<Line<f64>> {
    let refl = f.reflections();
    let start = Tile::identity(f);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(round_key(&start.centroid(f.geom)));
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut lines: HashMap<Vec<i64>, Line<f64>> = HashMap::new();
    let mut count = 1;
    while let Some((t, d)) = queue.pop_front() {
        for l in 0..3 {
            let line = t.line(f, l);
            lines.entry(line_key(&line)).or_insert(line);
            if d < depth && count < WALL_TILE_CAP {
                let n = t.across(f, &refl, l);
                if seen.insert(round_key(&n.centroid(f.geom))) {
                    count += 1;
                    queue.push_back((n, d + 1));
                }
            }
        }
    }
    let mut out: Vec<_> = lines.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, l)| l).collect()
}

fn orient(l: &Line<f64>, inside: &[f64; 3]) -> Line<f64> {
    if l.value(inside) > 0.0 {
        l.flipped()
    } else {
        *l
    }
}

fn corner_angle(geom: Geometry, a: &Line<f64>, b: &Line<f64>) -> Option<AngleFrac> {
    let c = -metric(geom, &a.pole, &b.pole) / (metric(geom, &a.pole, &a.pole) * metric(geom, &b.pole, &b.pole)).sqrt();
    let x = c.clamp(-1.0, 1.0).acos();
    if !(1e-9..=std::f64::consts::PI - 1e-9).contains(&x) {
        return None;
    }
    AngleFrac::from_radians(x, 240, 1e-7)
}

/// Tiles filling the region bounded by `outer`, or `None` if it is not a union of tiles.
fn fill(f: &Triangle<f64>, outer: &[Line<f64>; 3], cap: usize) -> Option<Vec<Tile<f64>>> {
    let refl = f.reflections();
    let mut tiles = vec![Tile::identity(f)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for l in 0..3 {
            let line = tiles[i].line(f, l);
            if outer.iter().any(|o| o.same_line(&line, 1e-7)) {
                continue;
            }
            let n = tiles[i].across(f, &refl, l);
            if tiles.iter().any(|t| t.same_as(&n, 1e-7)) {
                continue;
            }
            if n.vertices.iter().any(|x| outer.iter().any(|o| o.value(x) > TOL)) {
                return None;
            }
            tiles.push(n);
            if tiles.len() > cap {
                return None;
            }
            queue.push_back(tiles.len() - 1);
        }
    }
    Some(tiles)
}

/// Increasing function of the distance between two points.
fn distance_key(geom: Geometry, a: &[f64; 3], b: &[f64; 3]) -> f64 {
    match geom {
        Geometry::Spherical => -(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]),
        Geometry::Euclidean => (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2),
        Geometry::Hyperbolic => -metric(geom, a, b),
    }
}

struct Raw {
    lines: [Line<f64>; 3],
    corners: [[f64; 3]; 3],
    angles: [AngleFrac; 3],
    tiles: Vec<Tile<f64>>,
}

fn describe(f: &Triangle<f64>, f_angles: &[AngleFrac; 3], raw: &Raw, seating: String) -> TriangleDecomp {
    let geom = f.geom;
    let on = |line: &Line<f64>, x: &[f64; 3]| line.value(x).abs() < 1e-7;
    let close = |a: &[f64; 3], b: &[f64; 3]| (0..3).all(|i| (a[i] - b[i]).abs() < 1e-7);
    let parts: [u32; 3] =
        std::array::from_fn(|c| raw.tiles.iter().filter(|t| t.vertices.iter().any(|v| close(v, &raw.corners[c]))).count() as u32);
    let patterns: [Vec<[u32; 2]>; 3] = std::array::from_fn(|i| {
        // side i runs from corner (i+1)%3 to (i+2)%3
        let from = |x: &[f64; 3]| distance_key(geom, &raw.corners[(i + 1) % 3], x);
        let mut edges: Vec<(f64, [u32; 2])> = Vec::new();
        for t in &raw.tiles {
            for l in 0..3 {
                let (a, b) = ((l + 1) % 3, (l + 2) % 3);
                let (p, q) = (&t.vertices[a], &t.vertices[b]);
                if on(&raw.lines[i], p) && on(&raw.lines[i], q) {
                    let (near, far) = if from(p) < from(q) { (a, b) } else { (b, a) };
                    edges.push((from(p) + from(q), [f_angles[near].den(), f_angles[far].den()]));
                }
            }
        }
        edges.sort_by(|a, b| a.0.total_cmp(&b.0));
        edges.into_iter().map(|e| e.1).collect()
    });
    let descriptor = |perm: &[usize; 3]| -> Vec<Vec<i64>> {
        let mut d: Vec<Vec<i64>> = raw
            .tiles
            .iter()
            .map(|t| {
                let mut vs: Vec<Vec<i64>> =
                    t.vertices.iter().map(|x| round_key(&perm.map(|k| raw.lines[k].value(x)))).collect();
                vs.sort();
                vs.concat()
            })
            .collect();
        d.sort();
        d
    };
    // relabel corners so the outer angles ascend; ties broken by the smallest descriptor
    let perms = super::PERMS3;
    let best = perms
        .iter()
        .map(|p| (p.map(|k| raw.angles[k]), descriptor(p), *p))
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .unwrap();
    let perm = best.2;
    let patterns = super::relabel_patterns(&patterns, &perm);
    let mut fundamental = *f_angles;
    fundamental.sort();
    TriangleDecomp {
        geometry: geom,
        outer: best.0,
        fundamental,
        tiles: raw.tiles.len(),
        corner_parts: perm.map(|k| parts[k]),
        side_patterns: patterns,
        descriptor: best.1,
        seating,
    }
}

/// All decompositions of triangles into at most `opts.max_tiles` copies of `f_angles`.
pub fn search(f_angles: &[AngleFrac; 3], opts: &TriangleSearch) -> Vec<TriangleDecomp> {
    let f = Triangle::<f64>::realize(f_angles);
    let geom = f.geom;
    let depth = match geom {
        Geometry::Spherical => 200,
        _ => opts.max_tiles,
    };
    let walls = walls(&f, depth);
    let centre = Tile::identity(&f).centroid(geom);
    let mut target = opts.outer;
    if let Some(t) = target.as_mut() {
        t.sort();
    }
    let mut found: Vec<TriangleDecomp> = Vec::new();
    for w in 0..3 {
        let wpt = f.vertices[w];
        for s in [(w + 1) % 3, (w + 2) % 3] {
            let side1 = f.lines[s];
            for side2 in walls.iter().filter(|l| l.value(&wpt).abs() < 1e-7 && !l.same_line(&side1, 1e-7)) {
                let side2 = orient(side2, &centre);
                let Some(at_w) = corner_angle(geom, &side1, &side2) else { continue };
                if opts.second_type_only && at_w != f_angles[w] {
                    continue;
                }
                if let Some(t) = &target {
                    if !t.contains(&at_w) {
                        continue;
                    }
                }
                for side3 in walls.iter().filter(|l| l.value(&wpt).abs() > 1e-7) {
                    let side3 = orient(side3, &centre);
                    let lines = [side3, side1, side2];
                    let Some(b) = meet(geom, &side1, &side3, &side2) else { continue };
                    let Some(c) = meet(geom, &side2, &side3, &side1) else { continue };
                    if side2.value(&b) > -TOL || side1.value(&c) > -TOL {
                        continue;
                    }
                    // corner 0 = w (sides 1,2), corner 1 = c (sides 2,3), corner 2 = b (sides 1,3)
                    let corners = [wpt, c, b];
                    let (Some(a1), Some(a2)) = (corner_angle(geom, &side2, &side3), corner_angle(geom, &side1, &side3))
                    else {
                        continue;
                    };
                    let angles = [at_w, a1, a2];
                    if super::triangle_geometry(&angles) != geom {
                        continue;
                    }
                    if let Some(t) = &target {
                        let mut a = angles;
                        a.sort();
                        if a != *t {
                            continue;
                        }
                    }
                    if opts.second_type_only && !angles.iter().all(|a| f_angles.contains(a)) {
                        continue;
                    }
                    // lines[i] must be the side opposite corner i
                    let Some(tiles) = fill(&f, &lines, opts.max_tiles) else { continue };
                    let raw = Raw { lines, corners, angles, tiles };
                    let d = describe(&f, f_angles, &raw, format!("w={w},side={s}"));
                    if opts.second_type_only && !d.is_second_type() {
                        continue;
                    }
                    if !found.iter().any(|e| e.outer == d.outer && e.descriptor == d.descriptor) {
                        found.push(d);
                    }
                }
            }
        }
    }
    found.sort_by_key(|a| a.sort_key());
    found
}
