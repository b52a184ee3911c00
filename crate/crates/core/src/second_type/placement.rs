//! Seating a container on walls of the tessellation generated by a fundamental tetrahedron.
//!
//! Fix the container vertex `A` opposite face 3. Some tile `X` at `A` has a facet on
//! face 0 and an edge along edge `{0,1}`; moving `X` onto the fundamental, face 0 is a
//! facet plane of the fundamental, face 1 is that plane turned about the edge by the
//! container angle, face 2 is a wall through the tile vertex at `A`, and face 3 is
//! forced by the angles. Every decomposition arises from one of these seatings.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::angle::{AngleFrac, EdgeMark};
use crate::decomp::{derived_face_traces, edge_wedge_counts, DecomposedTet, Fundamental, Provenance};
use crate::hyperboloid::{reflection, tile_normals, tile_vertices};
use crate::linalg::{add, identity, inverse, lorentz, mat_mul, max_abs_diff, scale, Mat4, Vec4};
use crate::real::Real;
use crate::shape::{TetShape, VertexKind, PAIRS};

fn rounded<T: Real>(x: &Vec4<T>) -> [i64; 4] {
    x.map(|c| (c * T::lit(1e6)).round().to_i64().unwrap_or(i64::MAX))
}

/// Hashable identity of the tile `g·F`.
pub(crate) fn tile_key<T: Real>(fund: &Fundamental<T>, g: &Mat4<T>) -> Vec<[i64; 4]> {
    let mut k: Vec<_> = tile_normals(&fund.real, g).iter().map(rounded).collect();
    k.sort();
    k
}

fn canonical_sign<T: Real>(n: &Vec4<T>) -> Vec4<T> {
    let big = n.iter().copied().fold(T::zero(), |m, c| if c.abs() > m.abs() { c } else { m });
    if big < T::zero() {
        n.map(|c| -c)
    } else {
        *n
    }
}

/// Mirrors of the tessellation through fundamental vertex `w`, found from the group
/// elements within `depth` reflections (the whole stabilizer when it is finite).
pub(crate) fn walls_through<T: Real>(fund: &Fundamental<T>, w: usize, depth: usize) -> Vec<Vec4<T>> {
    let faces: Vec<usize> = (0..4).filter(|&i| i != w).collect();
    let refl: Vec<Mat4<T>> = faces.iter().map(|&i| reflection(&fund.real.normals[i])).collect();
    let mut seen = HashSet::from([tile_key(fund, &identity())]);
    let mut elems = vec![identity::<T, 4>()];
    let mut frontier = elems.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for g in &frontier {
            for r in &refl {
                let h = mat_mul(g, r);
                if seen.insert(tile_key(fund, &h)) {
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        elems.extend(next.iter().copied());
        frontier = next;
    }
    let mut walls: HashMap<[i64; 4], Vec4<T>> = HashMap::new();
    for g in &elems {
        for n in tile_normals(&fund.real, g).iter().enumerate().filter(|(i, _)| *i != w).map(|(_, n)| canonical_sign(n)) {
            walls.entry(rounded(&n)).or_insert(n);
        }
    }
    let mut out: Vec<_> = walls.into_iter().collect();
    out.sort_by_key(|a| a.0);
    out.into_iter().map(|(_, n)| n).collect()
}

/// Plane through the edge `nf ∩ ng` (dihedral angle `phi`) making angle `theta` with `nf`.
pub(crate) fn rotate_about<T: Real>(nf: &Vec4<T>, ng: &Vec4<T>, phi: T, theta: T) -> Vec4<T> {
    let w = scale(&add(ng, &scale(nf, phi.cos())), T::one() / phi.sin());
    add(&scale(nf, -theta.cos()), &scale(&w, theta.sin()))
}

/// Unit normals `x` with `⟨x, nᵢ⟩ = cᵢ` for the three given normals.
pub(crate) fn complete_normal<T: Real>(ns: &[Vec4<T>; 3], c: [T; 3]) -> Vec<Vec4<T>> {
    // rows of M are J·nᵢ so that M·x = c
    let m: [Vec4<T>; 3] = ns.map(|n| [n[0], n[1], n[2], -n[3]]);
    let mut mmt = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            mmt[i][j] = (0..4).fold(T::zero(), |s, k| s + m[i][k] * m[j][k]);
        }
    }
    let Some(inv) = inverse(&mmt, T::lit(1e-14)) else { return Vec::new() };
    let y: [T; 3] = std::array::from_fn(|i| (0..3).fold(T::zero(), |s, j| s + inv[i][j] * c[j]));
    let x0: Vec4<T> = std::array::from_fn(|k| (0..3).fold(T::zero(), |s, i| s + m[i][k] * y[i]));
    // kernel of M by cofactors
    let k: Vec4<T> = std::array::from_fn(|col| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != col).collect();
        let sub: [[T; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| m[r][cols[c]]));
        let d = crate::linalg::det(&sub);
        if col % 2 == 0 {
            d
        } else {
            -d
        }
    });
    let a = lorentz(&k, &k);
    let b = T::lit(2.0) * lorentz(&x0, &k);
    let cc = lorentz(&x0, &x0) - T::one();
    let ts: Vec<T> = if a.abs() < T::lit(1e-12) {
        if b.abs() < T::lit(1e-12) {
            Vec::new()
        } else {
            vec![-cc / b]
        }
    } else {
        let disc = b * b - T::lit(4.0) * a * cc;
        if disc < -T::lit(1e-12) {
            Vec::new()
        } else {
            let s = disc.max(T::zero()).sqrt();
            vec![(-b + s) / (T::lit(2.0) * a), (-b - s) / (T::lit(2.0) * a)]
        }
    };
    ts.into_iter().map(|t| add(&x0, &scale(&k, t))).collect()
}

pub(crate) enum Fill<T> {
    Tiles(Vec<Mat4<T>>),
    /// A tile crossed the boundary after this many tiles had been placed.
    Escaped(usize),
    Overflow,
}

fn vertices_inside<T: Real>(fund: &Fundamental<T>, g: &Mat4<T>, walls: &[Vec4<T>], tol: T) -> bool {
    tile_vertices(&fund.real, g).iter().all(|v| walls.iter().all(|n| lorentz(&v.point, n) <= tol))
}

/// Grows tiles from the fundamental by reflecting across facets that are not on `walls`.
/// With `pivot = Some(w)` only facets through fundamental vertex `w` are crossed.
pub(crate) fn fill<T: Real>(fund: &Fundamental<T>, walls: &[Vec4<T>], pivot: Option<usize>, cap: usize) -> Fill<T> {
    let tol = T::lit(1e-7);
    let start = identity::<T, 4>();
    if !vertices_inside(fund, &start, walls, tol) {
        return Fill::Escaped(0);
    }
    let mut seen = HashSet::from([tile_key(fund, &start)]);
    let mut tiles = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for (l, m) in tile_normals(&fund.real, &g).iter().enumerate() {
            if Some(l) == pivot || walls.iter().any(|n| max_abs_diff(m, n) < tol) {
                continue;
            }
            let h = mat_mul(&reflection(m), &g);
            if !seen.insert(tile_key(fund, &h)) {
                continue;
            }
            if !vertices_inside(fund, &h, walls, tol) {
                return Fill::Escaped(tiles.len());
            }
            tiles.push(h);
            if tiles.len() > cap {
                return Fill::Overflow;
            }
            queue.push_back(h);
        }
    }
    Fill::Tiles(tiles)
}

/// The three faces at container vertex `A` (opposite face 3) seated on the tessellation.
#[derive(Clone, Debug)]
pub(crate) struct Corner<T> {
    /// Fundamental vertex at `A`.
    pub w: usize,
    /// Fundamental faces carrying face 0 and turned into face 1.
    pub faces: (usize, usize),
    pub wall: usize,
    pub normals: [Vec4<T>; 3],
}

impl<T> Corner<T> {
    pub fn label(&self) -> String {
        format!("w={} f={} g={} wall={}", self.w, self.faces.0, self.faces.1, self.wall)
    }
}

/// Every seating of the corner of `p` at the vertex opposite face 3. With `single` the
/// corner edges must be single tile edges.
pub(crate) fn corner_seatings<T: Real>(fund: &Fundamental<T>, p: &TetShape, depth: usize, single: bool) -> Vec<Corner<T>> {
    let kind = p.vertex_type::<T>(3, T::zero_tol());
    let th = |i: usize, j: usize| p.angle(i, j);
    let fv = fund.real.vertices;
    let mut out = Vec::new();
    for w in 0..4 {
        if fv[w].ideal != (kind == VertexKind::Ideal) {
            continue;
        }
        let walls = walls_through(fund, w, depth);
        for fp in (0..4).filter(|&i| i != w) {
            for gp in (0..4).filter(|&i| i != w && i != fp) {
                let phi = fund.shape.angle(fp, gp);
                let j = th(0, 1).num() * phi.den();
                if !j.is_multiple_of(th(0, 1).den()) || (single && j != th(0, 1).den()) {
                    continue;
                }
                let nf = fund.real.normals[fp];
                let ng = rotate_about(&nf, &fund.real.normals[gp], phi.radians(), th(0, 1).radians());
                for (wi, wall) in walls.iter().enumerate() {
                    for s in [T::one(), -T::one()] {
                        let nh = scale(wall, s);
                        let ok = (lorentz(&nh, &nf) + th(0, 2).cos::<T>()).abs() < T::lit(1e-8)
                            && (lorentz(&nh, &ng) + th(1, 2).cos::<T>()).abs() < T::lit(1e-8)
                            && fv.iter().all(|v| lorentz(&v.point, &nh) <= T::lit(1e-7));
                        if ok {
                            out.push(Corner { w, faces: (fp, gp), wall: wi, normals: [nf, ng, nh] });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Container normals completing a seated corner.
pub(crate) fn complete_container<T: Real>(p: &TetShape, c: &Corner<T>) -> Vec<[Vec4<T>; 4]> {
    let cs = [0, 1, 2].map(|i| -p.angle(i, 3).cos::<T>());
    complete_normal(&c.normals, cs)
        .into_iter()
        .map(|na| [c.normals[0], c.normals[1], c.normals[2], na])
        .filter(|ns| {
            let g = p.gram::<T>();
            (0..4).all(|i| (0..4).all(|j| (lorentz(&ns[i], &ns[j]) - g[i][j]).abs() < T::lit(1e-7)))
        })
        .collect()
}

/// Packages a filled container as a canonically labelled decomposition.
pub(crate) fn assemble<T: Real>(
    fund: &Fundamental<T>,
    shape: &TetShape,
    normals: [Vec4<T>; 4],
    tiles: Vec<Mat4<T>>,
    seating: String,
) -> Option<DecomposedTet<T>> {
    let mut d = fund.seed();
    d.shape = *shape;
    d.normals = normals;
    d.tiles = tiles.len();
    d.tile_maps = tiles;
    d.depth = 0;
    d.provenance = Provenance::Tiling { seating };
    let wedges = edge_wedge_counts(&d, fund)?;
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        let ang: AngleFrac = shape.angle(a, b);
        let top = wedges[k] * ang.den();
        if wedges[k] == 0 || !top.is_multiple_of(ang.num()) {
            return None;
        }
        d.marks[k] = EdgeMark { parts: wedges[k], label: top / ang.num() };
    }
    let (faces, segments) = derived_face_traces(&d, fund);
    d.faces = faces;
    d.segments = segments;
    Some(d.canonicalize(fund))
}

/// Result of trying every seating of a container.
#[derive(Clone, Debug)]
pub struct TilingSearch<T: Real = f64> {
    pub found: Vec<DecomposedTet<T>>,
    pub seatings: usize,
    /// Most tiles placed inside the container by a seating that failed.
    pub best_partial: usize,
}

/// Every decomposition of `container` into exactly `tiles` copies of the fundamental.
pub fn tilings_of<T: Real>(fund: &Fundamental<T>, container: &TetShape, tiles: usize) -> TilingSearch<T> {
    let depth = if container.vertex_type::<T>(3, T::zero_tol()) == VertexKind::Ideal { tiles + 2 } else { 64 };
    let mut res = TilingSearch { found: Vec::new(), seatings: 0, best_partial: 0 };
    for c in corner_seatings(fund, container, depth, false) {
        for (r, normals) in complete_container(container, &c).into_iter().enumerate() {
            res.seatings += 1;
            match fill(fund, &normals, None, tiles) {
                Fill::Tiles(ts) if ts.len() == tiles => {
                    let label = format!("{} root={r}", c.label());
                    if let Some(d) = assemble(fund, container, normals, ts, label) {
                        if !res.found.iter().any(|e| e.same_as(&d, fund, T::lit(1e-6))) {
                            res.found.push(d);
                        }
                    }
                }
                Fill::Tiles(ts) => res.best_partial = res.best_partial.max(ts.len()),
                Fill::Escaped(k) => res.best_partial = res.best_partial.max(k),
                Fill::Overflow => {}
            }
        }
    }
    res.found.sort_by(|a, b| a.key.cmp(&b.key));
    res
}

/// Tiles at the corner of a seated cone; `None` if the cone is not a union of tiles there.
pub(crate) fn cone_tiles<T: Real>(fund: &Fundamental<T>, c: &Corner<T>, cap: usize) -> Option<Vec<Mat4<T>>> {
    match fill(fund, &c.normals, Some(c.w), cap) {
        Fill::Tiles(ts) => Some(ts),
        _ => None,
    }
}

/// Tiles forced by convexity: whenever the tiles already placed around an edge are not
/// contained in a half-space through it, every tile around that edge must be present.
/// Returns the size of the closure, or `None` if a forced tile leaves the cone.
/// Stops once the closure exceeds `limit`.
pub(crate) fn convexity_closure<T: Real>(
    fund: &Fundamental<T>,
    start: &[Mat4<T>],
    cone: &[Vec4<T>; 3],
    limit: usize,
) -> Option<usize> {
    let refl: [Mat4<T>; 4] = std::array::from_fn(|l| reflection(&fund.real.normals[l]));
    let mut keys: HashSet<Vec<[i64; 4]>> = start.iter().map(|g| tile_key(fund, g)).collect();
    let mut tiles: Vec<Mat4<T>> = start.to_vec();
    let mut changed = true;
    while changed && tiles.len() <= limit {
        changed = false;
        let snapshot = tiles.clone();
        for g in &snapshot {
            for &(l1, l2) in PAIRS.iter() {
                let q = fund.shape.angle(l1, l2).den() as usize;
                let mut star = vec![*g];
                for i in 1..2 * q {
                    let r = if i % 2 == 1 { &refl[l1] } else { &refl[l2] };
                    star.push(mat_mul(&star[i - 1], r));
                }
                let occ: Vec<bool> = star.iter().map(|h| keys.contains(&tile_key(fund, h))).collect();
                if longest_cyclic_gap(&occ) >= q {
                    continue;
                }
                for h in star {
                    if keys.insert(tile_key(fund, &h)) {
                        if !vertices_inside(fund, &h, cone, T::lit(1e-7)) {
                            return None;
                        }
                        tiles.push(h);
                        changed = true;
                    }
                }
            }
        }
    }
    Some(tiles.len())
}

fn longest_cyclic_gap(occ: &[bool]) -> usize {
    let n = occ.len();
    if occ.iter().all(|&o| !o) {
        return n;
    }
    let (mut best, mut run) = (0, 0);
    for i in 0..2 * n {
        if occ[i % n] {
            run = 0;
        } else {
            run += 1;
            best = best.max(run.min(n));
        }
    }
    best
}

/// Inner products `⟨nᵢ, nⱼ⟩` between distinct planes, one per pair.
pub(crate) fn plane_products<T: Real>(planes: &[Vec4<T>]) -> Vec<T> {
    let mut out = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            out.push(lorentz(&planes[i], &planes[j]));
        }
    }
    out
}

/// Distinct planes (up to orientation) among the normals.
pub(crate) fn distinct_planes<T: Real>(normals: &[Vec4<T>]) -> Vec<Vec4<T>> {
    let tol = T::lit(1e-7);
    let mut out: Vec<Vec4<T>> = Vec::new();
    for n in normals {
        let m = n.map(|c| -c);
        if !out.iter().any(|p| max_abs_diff(p, n) < tol || max_abs_diff(p, &m) < tol) {
            out.push(*n);
        }
    }
    out
}

/// Tiles beyond the faces opposite the corner. At most one plane of those faces can be
/// the container face opposite the corner (it must meet the corner faces at the products
/// `opposite` when given); every other such face is interior and has a tile behind it. Returns the
/// fewest such tiles over the admissible choices, `None` if no choice stays in the cone.
pub(crate) fn far_neighbours<T: Real>(
    fund: &Fundamental<T>,
    tiles: &[Mat4<T>],
    w: usize,
    cone: &[Vec4<T>; 3],
    opposite: Option<[T; 3]>,
) -> Option<usize> {
    let tol = T::lit(1e-7);
    let far: Vec<Vec4<T>> = tiles.iter().map(|g| tile_normals(&fund.real, g)[w]).collect();
    let mut planes: Vec<Vec4<T>> = Vec::new();
    for m in &far {
        if !planes.iter().any(|p| max_abs_diff(p, m) < tol) {
            planes.push(*m);
        }
    }
    let mut choices: Vec<Option<Vec4<T>>> = planes
        .iter()
        .filter(|p| opposite.is_none_or(|o| (0..3).all(|i| (lorentz(p, &cone[i]) - o[i]).abs() < tol)))
        .map(|p| Some(*p))
        .collect();
    choices.push(None);
    let inner: HashSet<Vec<[i64; 4]>> = tiles.iter().map(|g| tile_key(fund, g)).collect();
    choices
        .into_iter()
        .filter_map(|choice| {
            let mut behind: HashSet<Vec<[i64; 4]>> = HashSet::new();
            for (g, m) in tiles.iter().zip(&far) {
                if choice.is_some_and(|c| max_abs_diff(&c, m) < tol) {
                    continue;
                }
                let h = mat_mul(&reflection(m), g);
                if !vertices_inside(fund, &h, cone, tol) {
                    return None;
                }
                let k = tile_key(fund, &h);
                if !inner.contains(&k) {
                    behind.insert(k);
                }
            }
            Some(behind.len())
        })
        .min()
}

/// For each pair of far planes, whether faces on them belong to tiles sharing a facet.
pub(crate) fn far_plane_adjacency<T: Real>(fund: &Fundamental<T>, tiles: &[Mat4<T>], w: usize, planes: &[Vec4<T>]) -> Vec<bool> {
    let tol = T::lit(1e-7);
    let plane_of = |g: &Mat4<T>| {
        let m = tile_normals(&fund.real, g)[w];
        planes.iter().position(|p| max_abs_diff(p, &m) < tol)
    };
    let keys: Vec<_> = tiles.iter().map(|g| tile_key(fund, g)).collect();
    let mut adj = vec![false; planes.len() * planes.len()];
    for g in tiles {
        for l in (0..4).filter(|&l| l != w) {
            let h = mat_mul(g, &reflection(&fund.real.normals[l]));
            if keys.contains(&tile_key(fund, &h)) {
                if let (Some(a), Some(b)) = (plane_of(g), plane_of(&h)) {
                    adj[a * planes.len() + b] = true;
                }
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            out.push(adj[i * planes.len() + j] || adj[j * planes.len() + i]);
        }
    }
    out
}
