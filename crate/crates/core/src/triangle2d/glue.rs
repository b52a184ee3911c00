//! Closure of a Coxeter triangle under gluing along congruent sides.
//!
//! Two decompositions glue along a side when the sides have equal length, the tiles
//! meeting the side are mirror images across it, and at one end of the side the two
//! angles add up to π so that the union is again a triangle.

use super::{relabel_patterns, reversed, triangle_geometry, Geometry, TriangleDecomp, PERMS3};
use crate::angle::{AngleFrac, AngleSum};

fn side_length(geom: Geometry, angles: &[AngleFrac; 3], tiles: usize, f: &[AngleFrac; 3], i: usize) -> f64 {
    let (a, b, c) = (angles[i].radians::<f64>(), angles[(i + 1) % 3].radians::<f64>(), angles[(i + 2) % 3].radians::<f64>());
    let x = (a.cos() + b.cos() * c.cos()) / (b.sin() * c.sin());
    match geom {
        Geometry::Spherical => x.clamp(-1.0, 1.0).acos(),
        Geometry::Hyperbolic => x.max(1.0).acosh(),
        Geometry::Euclidean => {
            // the fundamental has circumdiameter 1; scale from the area
            let unit = |t: &[AngleFrac; 3]| t.iter().map(|x| x.sin::<f64>()).product::<f64>() / 2.0;
            let s = (tiles as f64 * unit(f) / unit(angles)).sqrt();
            s * a.sin()
        }
    }
}

/// Pattern of side `k` walked starting from corner `from`.
fn walked(d: &TriangleDecomp, k: usize, from: usize) -> Vec<[u32; 2]> {
    if from == (k + 1) % 3 {
        d.side_patterns[k].clone()
    } else {
        reversed(&d.side_patterns[k])
    }
}

fn canonical(angles: [AngleFrac; 3], parts: [u32; 3], patterns: [Vec<[u32; 2]>; 3], proto: &TriangleDecomp, tiles: usize) -> TriangleDecomp {
    let best = PERMS3
        .iter()
        .map(|p| (p.map(|k| angles[k]), p.map(|k| parts[k]), relabel_patterns(&patterns, p)))
        .min()
        .unwrap();
    TriangleDecomp {
        geometry: proto.geometry,
        outer: best.0,
        fundamental: proto.fundamental,
        tiles,
        corner_parts: best.1,
        side_patterns: best.2,
        descriptor: Vec::new(),
        seating: String::new(),
    }
}

/// Glues side `i` of `d1` to side `j` of `d2`; `flip` chooses which ends meet.
fn glue(d1: &TriangleDecomp, i: usize, d2: &TriangleDecomp, j: usize, flip: bool, f: &[AngleFrac; 3]) -> Option<TriangleDecomp> {
    let g = d1.geometry;
    let (l1, l2) = (side_length(g, &d1.outer, d1.tiles, f, i), side_length(g, &d2.outer, d2.tiles, f, j));
    if (l1 - l2).abs() > 1e-9 * l1.max(1.0) {
        return None;
    }
    let (p, q) = ((i + 1) % 3, (i + 2) % 3);
    // partners of p and q in d2
    let (pp, qq) = if flip { ((j + 1) % 3, (j + 2) % 3) } else { ((j + 2) % 3, (j + 1) % 3) };
    if walked(d1, i, p) != walked(d2, j, pp) {
        return None;
    }
    let (sp, sq) = (d1.outer[p].add(d2.outer[pp]), d1.outer[q].add(d2.outer[qq]));
    // `flat` is the straightened end, `keep` the corner that survives
    let (flat, flat2, keep, keep2, sum) = match (sp, sq) {
        (AngleSum::Flat, AngleSum::Angle(a)) => (p, pp, q, qq, a),
        (AngleSum::Angle(a), AngleSum::Flat) => (q, qq, p, pp, a),
        _ => return None,
    };
    let (a1, a2) = (i, j);
    // corners: 0 = apex of d1, 1 = apex of d2, 2 = merged corner
    let angles = [d1.outer[a1], d2.outer[a2], sum];
    let parts = [d1.corner_parts[a1], d2.corner_parts[a2], d1.corner_parts[keep] + d2.corner_parts[keep2]];
    let mut straight = walked(d1, keep, a1);
    straight.extend(walked(d2, keep2, flat2));
    let patterns = [walked(d2, flat2, a2), walked(d1, flat, keep), straight];
    let tiles = d1.tiles + d2.tiles;
    let out = canonical(angles, parts, patterns, d1, tiles);
    debug_assert_eq!(triangle_geometry(&out.outer), g);
    Some(out)
}

/// Every decomposition into at most `max_tiles` copies of `f` reachable by gluing,
/// starting from `f` itself.
pub fn glue_closure(f: &[AngleFrac; 3], max_tiles: usize) -> Vec<TriangleDecomp> {
    let geometry = triangle_geometry(f);
    let seed = canonical(
        *f,
        [1; 3],
        std::array::from_fn(|k| vec![[f[(k + 1) % 3].den(), f[(k + 2) % 3].den()]]),
        &TriangleDecomp {
            geometry,
            outer: *f,
            fundamental: { let mut s = *f; s.sort(); s },
            tiles: 1,
            corner_parts: [1; 3],
            side_patterns: Default::default(),
            descriptor: Vec::new(),
            seating: String::new(),
        },
        1,
    );
    let mut all = vec![seed];
    let mut done = 0;
    while done < all.len() {
        let n = all.len();
        for a in 0..n {
            for b in done.max(a)..n {
                if all[a].tiles + all[b].tiles > max_tiles {
                    continue;
                }
                for (x, y) in [(a, b), (b, a)] {
                    for i in 0..3 {
                        for j in 0..3 {
                            for flip in [false, true] {
                                if let Some(d) = glue(&all[x], i, &all[y], j, flip, f) {
                                    let dup = all.iter().any(|e| {
                                        e.outer == d.outer && e.tiles == d.tiles && e.labellings().iter().any(|l| l.0 == d.corner_parts && l.1 == d.side_patterns)
                                    });
                                    if !dup {
                                        all.push(d);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        done = n;
    }
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()).then_with(|| a.side_patterns.cmp(&b.side_patterns)));
    all
}
