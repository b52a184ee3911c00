//! Decomposed tetrahedra: a container tiled by copies of a fundamental tetrahedron.

mod certify;
mod glue;
mod search;

pub use certify::{
    classify_type, container_vertices, derived_face_traces, edge_wedge_counts, realize_and_certify, tiles_at_vertex,
    CertReport, DecompType,
};
pub use glue::{glue, matchings, Rejection};
pub use search::{search_first_type, Family, SearchOptions, SearchStats};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::angle::EdgeMark;
use crate::catalog::CatalogEntry;
use crate::hyperboloid::{realize, tile_normals, Realization};
use crate::linalg::{identity, lorentz, Mat4, Vec4};
use crate::real::Real;
use crate::shape::{pair_index, permutations4, ShapeError, TetShape, PAIRS};
use crate::volume::{tet_volume, VolumeError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
    #[error("third type detected for {0}: neither produced by gluing nor all angles fundamental")]
    ThirdType(String),
}

/// The tile every decomposition is built from, realized once.
#[derive(Clone, Debug)]
pub struct Fundamental<T: Real = f64> {
    pub id: String,
    pub shape: TetShape,
    pub real: Realization<T>,
    pub volume: T,
    /// Smallest face label in each face's orbit under the diagram automorphisms.
    pub orbit: [u8; 4],
}

impl<T: Real> Fundamental<T> {
    pub fn new(id: impl Into<String>, shape: &TetShape) -> Result<Self, DecompError> {
        let shape = shape.canonical();
        let real = realize::<T>(&shape)?;
        let volume = tet_volume::<T>(&shape)?.value;
        let mut orbit = [0u8, 1, 2, 3];
        for p in shape.canonical_perms() {
            for l in 0..4 {
                orbit[l] = orbit[l].min(p[l] as u8);
            }
        }
        Ok(Fundamental { id: id.into(), shape, real, volume, orbit })
    }

    pub fn from_entry(e: &CatalogEntry) -> Result<Self, DecompError> {
        Self::new(e.id.clone(), &e.shape)
    }

    /// The trivial decomposition by a single tile.
    pub fn seed(&self) -> DecomposedTet<T> {
        let marks = self.shape.angles().map(|a| EdgeMark::fundamental(a.den()));
        let faces = std::array::from_fn(|f| FaceTrace::new(&self.shape, f, 1, vec![self.orbit[f]]));
        let mut d = DecomposedTet {
            fundamental: self.id.clone(),
            shape: self.shape,
            marks,
            tiles: 1,
            depth: 2,
            provenance: Provenance::Seed,
            faces,
            segments: [1; 6],
            key: String::new(),
            normals: self.real.normals,
            tile_maps: vec![identity()],
        };
        d.key = d.compute_key(self);
        d
    }
}

/// How a decomposition was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    Seed,
    /// Face `p` of entry `m` glued to face `q` of entry `n`; `matching[t]` is the vertex of `n`
    /// matched with the `t`-th vertex (ascending) of face `p`.
    Glue { m: usize, n: usize, p: usize, q: usize, matching: [usize; 3] },
    /// Grown by reflections inside a prescribed container.
    Tiling { seating: String },
}

/// The decomposition induced on one face of the container.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceTrace<T = f64> {
    /// Planar angles at the face's vertices, listed by vertex label ascending.
    pub triangle: [T; 3],
    /// Number of tile facets in the face.
    pub pieces: u32,
    /// Sorted orbit labels of the fundamental faces those facets come from.
    pub piece_faces: Vec<u8>,
}

impl<T: Real> FaceTrace<T> {
    pub fn new(shape: &TetShape, face: usize, pieces: u32, mut piece_faces: Vec<u8>) -> Self {
        piece_faces.sort();
        let triangle = shape.face_angles::<T>(face).unwrap_or([T::nan(); 3]);
        FaceTrace { triangle, pieces, piece_faces }
    }

    /// Same tiling pattern, ignoring the triangle's metric data.
    pub fn same_pattern(&self, other: &Self) -> bool {
        self.pieces == other.pieces && self.piece_faces == other.piece_faces
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real + Serialize + serde::de::DeserializeOwned")]
pub struct DecomposedTet<T: Real = f64> {
    pub fundamental: String,
    pub shape: TetShape,
    /// Per edge in pair order: wedge count and tile label.
    pub marks: [EdgeMark; 6],
    pub tiles: usize,
    pub depth: u32,
    pub provenance: Provenance,
    pub faces: [FaceTrace<T>; 4],
    /// Number of tile edges along each container edge, in pair order.
    pub segments: [u32; 6],
    pub key: String,
    /// Outward container normals in the fundamental's frame.
    pub normals: [Vec4<T>; 4],
    /// Tile `t` is the image of the fundamental under `tile_maps[t]`.
    pub tile_maps: Vec<Mat4<T>>,
}

pub type MarksCode = [(u32, u32); 6];

fn marks_code(marks: &[EdgeMark; 6], perm: &[usize; 4]) -> MarksCode {
    std::array::from_fn(|k| {
        let (a, b) = PAIRS[k];
        let m = marks[pair_index(perm[a], perm[b])];
        (m.parts, m.label)
    })
}

impl<T: Real> DecomposedTet<T> {
    pub fn mark(&self, i: usize, j: usize) -> EdgeMark {
        self.marks[pair_index(i, j)]
    }

    pub fn segment(&self, i: usize, j: usize) -> u32 {
        self.segments[pair_index(i, j)]
    }

    /// Second type: every container angle is a single tile angle.
    pub fn all_fundamental(&self) -> bool {
        self.marks.iter().all(|m| m.is_fundamental())
    }

    /// Relabels faces: new face `a` is old face `perm[a]`.
    pub fn permuted(&self, perm: &[usize; 4]) -> Self {
        let pick6 = |k: usize| {
            let (a, b) = PAIRS[k];
            pair_index(perm[a], perm[b])
        };
        let marks: [EdgeMark; 6] = std::array::from_fn(|k| self.marks[pick6(k)]);
        let shape = TetShape::new(marks.map(|m| m.angle())).expect("marks give a valid shape");
        let faces = std::array::from_fn(|a| {
            let f = &self.faces[perm[a]];
            FaceTrace::new(&shape, a, f.pieces, f.piece_faces.clone())
        });
        DecomposedTet {
            fundamental: self.fundamental.clone(),
            shape,
            marks,
            tiles: self.tiles,
            depth: self.depth,
            provenance: self.provenance.clone(),
            faces,
            segments: std::array::from_fn(|k| self.segments[pick6(k)]),
            key: self.key.clone(),
            normals: std::array::from_fn(|a| self.normals[perm[a]]),
            tile_maps: self.tile_maps.clone(),
        }
    }

    /// Relabelings minimizing the marks code.
    pub fn canonical_perms(&self) -> Vec<[usize; 4]> {
        let best = permutations4().iter().map(|p| marks_code(&self.marks, p)).min().unwrap();
        permutations4().iter().copied().filter(|p| marks_code(&self.marks, p) == best).collect()
    }

    /// Tile descriptors: each tile's normals expressed by inner products with the
    /// container normals taken in the order `perm`.
    fn descriptors(&self, fund: &Fundamental<T>, perm: &[usize; 4]) -> Vec<[[T; 4]; 4]> {
        self.tile_maps
            .iter()
            .map(|g| {
                tile_normals(&fund.real, g).map(|m| std::array::from_fn(|a| lorentz(&m, &self.normals[perm[a]])))
            })
            .collect()
    }

    fn rounded_descriptor(&self, fund: &Fundamental<T>, perm: &[usize; 4]) -> Vec<[[i64; 4]; 4]> {
        let q = |x: T| (x * T::lit(1e6)).round().to_i64().unwrap_or(i64::MAX);
        let mut tiles: Vec<[[i64; 4]; 4]> = self
            .descriptors(fund, perm)
            .into_iter()
            .map(|t| {
                let mut r = t.map(|n| n.map(q));
                r.sort();
                r
            })
            .collect();
        tiles.sort();
        tiles
    }

    /// Puts faces into canonical order: least marks code, ties broken by the tile layout.
    pub fn canonicalize(&self, fund: &Fundamental<T>) -> Self {
        let perms = self.canonical_perms();
        let best = perms
            .iter()
            .min_by_key(|p| self.rounded_descriptor(fund, p))
            .copied()
            .unwrap();
        let mut d = self.permuted(&best);
        d.key = d.compute_key(fund);
        d
    }

    /// Hash of fundamental, marks and tile layout. Stable for canonically labelled input.
    pub fn compute_key(&self, fund: &Fundamental<T>) -> String {
        let code = marks_code(&self.marks, &[0, 1, 2, 3]);
        let desc = self
            .canonical_perms()
            .iter()
            .map(|p| self.rounded_descriptor(fund, p))
            .min()
            .unwrap();
        let mut h = Sha256::new();
        h.update(fund.shape.canonical_key().as_bytes());
        h.update(format!("{code:?}").as_bytes());
        h.update(format!("{desc:?}").as_bytes());
        let digest = h.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Congruent decompositions: same fundamental and marks, and a relabeling
    /// under which the tiles coincide. Both sides must be canonically labelled.
    pub fn same_as(&self, other: &Self, fund: &Fundamental<T>, tol: T) -> bool {
        if self.fundamental != other.fundamental || self.tiles != other.tiles || self.marks != other.marks {
            return false;
        }
        let mine = self.descriptors(fund, &[0, 1, 2, 3]);
        self.canonical_perms().iter().any(|p| tile_sets_match(&mine, &other.descriptors(fund, p), tol))
    }
}

fn tiles_match<T: Real>(a: &[[T; 4]; 4], b: &[[T; 4]; 4], tol: T) -> bool {
    let mut used = [false; 4];
    a.iter().all(|x| {
        let hit = (0..4).find(|&k| !used[k] && (0..4).all(|c| (x[c] - b[k][c]).abs() < tol));
        hit.map(|k| used[k] = true).is_some()
    })
}

fn tile_sets_match<T: Real>(a: &[[[T; 4]; 4]], b: &[[[T; 4]; 4]], tol: T) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = (0..b.len()).find(|&k| !used[k] && tiles_match(x, &b[k], tol));
        hit.map(|k| used[k] = true).is_some()
    })
}

/// The table tuple `(k,l ; m,n,p,q)`; seeds print without provenance.
pub fn tuple_string<T: Real>(d: &DecomposedTet<T>) -> String {
    match &d.provenance {
        Provenance::Glue { m, n, p, q, .. } => format!("({},{} ; {},{},{},{})", d.tiles, d.depth, m, n, p, q),
        _ => format!("({},{})", d.tiles, d.depth),
    }
}
