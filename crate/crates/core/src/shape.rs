//! Generalized tetrahedra given by their six dihedral angles.
//!
//! Faces are labelled 0..4. Edge `{i,j}` is the meet of faces `i` and `j`;
//! vertex `v` is the point opposite face `v`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::AngleFrac;
use crate::linalg::{det, sym_eigen, Mat3, Mat4};
use crate::real::Real;

/// Unordered face pairs in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the pair `{i,j}` in [`PAIRS`].
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("invalid face pair ({i},{j})"),
    }
}

/// The 24 permutations of four labels in lexicographic one-line order.
pub fn permutations4() -> &'static [[usize; 4]; 24] {
    static PERMS: std::sync::OnceLock<[[usize; 4]; 24]> = std::sync::OnceLock::new();
    PERMS.get_or_init(|| {
        let mut out = [[0; 4]; 24];
        let mut n = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        p.iter().for_each(|&x| seen[x] = true);
                        if seen.iter().all(|&s| s) {
                            out[n] = p;
                            n += 1;
                        }
                    }
                }
            }
        }
        out
    })
}

/// The other two labels of `{0,1,2,3} \ {a,b}`, ascending.
pub fn complement2(a: usize, b: usize) -> [usize; 2] {
    let mut out = [0; 2];
    let mut k = 0;
    for x in 0..4 {
        if x != a && x != b {
            out[k] = x;
            k += 1;
        }
    }
    out
}

/// Labels other than `a`, ascending.
pub fn complement1(a: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for x in 0..4 {
        if x != a {
            out[k] = x;
            k += 1;
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapeError {
    #[error("angle for face pair {0}{1} is missing")]
    MissingAngle(usize, usize),
    #[error("flat angle at face pair {0}{1}")]
    FlatAngle(usize, usize),
    #[error("degenerate vertex link at face {face}, vertex {vertex}")]
    DegenerateLink { face: usize, vertex: usize },
    #[error("Gram signature is {0:?}, expected (3,1,0)")]
    NotLorentzian((usize, usize, usize)),
    #[error("vertex {0} is ultra-ideal")]
    InvalidVertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Finite,
    Ideal,
    Invalid,
}

/// Six dihedral angles indexed by [`PAIRS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TetShape {
    angles: [AngleFrac; 6],
}

/// Lexicographic encoding of a shape: `(num, den)` per pair in [`PAIRS`] order.
pub type ShapeCode = [(u32, u32); 6];

impl TetShape {
    pub fn new(angles: [AngleFrac; 6]) -> Result<Self, ShapeError> {
        for (k, a) in angles.iter().enumerate() {
            if a.is_flat() {
                let (i, j) = PAIRS[k];
                return Err(ShapeError::FlatAngle(i, j));
            }
        }
        Ok(TetShape { angles })
    }

    /// Coxeter shape from labels `k` (angle π/k) in [`PAIRS`] order.
    pub fn coxeter(labels: [u32; 6]) -> Self {
        TetShape { angles: labels.map(AngleFrac::pi_over) }
    }

    /// Orthoscheme with linear diagram `[a,b,c]`: angles π/a, π/b, π/c at 01, 12, 23.
    pub fn linear(a: u32, b: u32, c: u32) -> Self {
        Self::coxeter([a, 2, 2, b, 2, c])
    }

    /// Builds a shape from a partial map of pairs; missing pairs are an error.
    pub fn from_pairs(pairs: &[((usize, usize), AngleFrac)]) -> Result<Self, ShapeError> {
        let mut slots: [Option<AngleFrac>; 6] = [None; 6];
        for &((i, j), a) in pairs {
            slots[pair_index(i, j)] = Some(a);
        }
        let mut angles = [AngleFrac::pi_over(2); 6];
        for (k, s) in slots.iter().enumerate() {
            let (i, j) = PAIRS[k];
            angles[k] = s.ok_or(ShapeError::MissingAngle(i, j))?;
        }
        Self::new(angles)
    }

    pub fn angles(&self) -> &[AngleFrac; 6] {
        &self.angles
    }

    pub fn angle(&self, i: usize, j: usize) -> AngleFrac {
        self.angles[pair_index(i, j)]
    }

    pub fn is_coxeter(&self) -> bool {
        self.angles.iter().all(|a| a.is_coxeter())
    }

    /// Relabels faces: new face `a` is old face `perm[a]`.
    pub fn permuted(&self, perm: &[usize; 4]) -> Self {
        let angles = std::array::from_fn(|k| {
            let (a, b) = PAIRS[k];
            self.angle(perm[a], perm[b])
        });
        TetShape { angles }
    }

    pub fn code(&self) -> ShapeCode {
        self.angles.map(|a| (a.num(), a.den()))
    }

    pub fn gram<T: Real>(&self) -> Mat4<T> {
        gram_matrix(self)
    }

    /// Principal 3×3 minor of the Gram matrix omitting row/column `v`.
    pub fn link_gram<T: Real>(&self, v: usize) -> Mat3<T> {
        let g = self.gram::<T>();
        let idx = complement1(v);
        std::array::from_fn(|r| std::array::from_fn(|c| g[idx[r]][idx[c]]))
    }

    /// Dihedral angles at the three edges through vertex `v`, i.e. the link triangle.
    pub fn link_angles(&self, v: usize) -> [AngleFrac; 3] {
        let [a, b, c] = complement1(v);
        [self.angle(b, c), self.angle(a, c), self.angle(a, b)]
    }

    pub fn vertex_type<T: Real>(&self, v: usize, tol: T) -> VertexKind {
        let (w, _) = sym_eigen(&self.link_gram::<T>(v));
        let pos = w.iter().filter(|&&x| x > tol).count();
        let zero = w.iter().filter(|&&x| x.abs() <= tol).count();
        match (pos, zero) {
            (3, 0) => VertexKind::Finite,
            (2, 1) => VertexKind::Ideal,
            _ => VertexKind::Invalid,
        }
    }

    pub fn vertex_types<T: Real>(&self, tol: T) -> [VertexKind; 4] {
        std::array::from_fn(|v| self.vertex_type(v, tol))
    }

    /// Checks signature (3,1) and that every vertex is finite or ideal.
    pub fn hyperbolic_check<T: Real>(&self, tol: T) -> Result<[VertexKind; 4], ShapeError> {
        let sig = signature(&self.gram::<T>(), tol);
        if sig != (3, 1, 0) {
            return Err(ShapeError::NotLorentzian(sig));
        }
        let kinds = self.vertex_types(tol);
        if let Some(v) = kinds.iter().position(|&k| k == VertexKind::Invalid) {
            return Err(ShapeError::InvalidVertex(v));
        }
        Ok(kinds)
    }

    pub fn is_hyperbolic<T: Real>(&self, tol: T) -> bool {
        self.hyperbolic_check(tol).is_ok()
    }

    /// Planar angle at vertex `v` of the triangular face `f`.
    pub fn face_angle<T: Real>(&self, f: usize, v: usize) -> Result<T, ShapeError> {
        assert!(f != v, "vertex {v} is not on face {f}");
        let [a, b] = complement2(f, v);
        face_angle_from(self.angle(f, a), self.angle(f, b), self.angle(a, b))
            .ok_or(ShapeError::DegenerateLink { face: f, vertex: v })
    }

    /// The three planar angles of face `f`, listed by vertex label ascending.
    pub fn face_angles<T: Real>(&self, f: usize) -> Result<[T; 3], ShapeError> {
        let vs = complement1(f);
        Ok([self.face_angle(f, vs[0])?, self.face_angle(f, vs[1])?, self.face_angle(f, vs[2])?])
    }

    /// Lexicographically least code over all relabelings, with the first permutation attaining it.
    pub fn canonical_form(&self) -> (ShapeCode, [usize; 4]) {
        let mut best: Option<(ShapeCode, [usize; 4])> = None;
        for p in permutations4() {
            let c = self.permuted(p).code();
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, *p));
            }
        }
        best.unwrap()
    }

    /// All relabelings attaining the canonical code, i.e. the automorphisms after canonicalizing.
    pub fn canonical_perms(&self) -> Vec<[usize; 4]> {
        let (code, _) = self.canonical_form();
        permutations4().iter().copied().filter(|p| self.permuted(p).code() == code).collect()
    }

    pub fn canonical(&self) -> TetShape {
        let (_, p) = self.canonical_form();
        self.permuted(&p)
    }

    pub fn canonical_key(&self) -> String {
        code_key(&self.canonical_form().0)
    }

    /// True when the Coxeter diagram (edges with label > 2) is a path on all four nodes.
    pub fn is_linear(&self) -> bool {
        self.linear_order().is_some()
    }

    /// Node order `[a,b,c,d]` along the path of a linear diagram.
    pub fn linear_order(&self) -> Option<[usize; 4]> {
        let right = AngleFrac::pi_over(2);
        permutations4()
            .iter()
            .find(|p| {
                p[0] < p[3]
                    && self.angle(p[0], p[1]) != right
                    && self.angle(p[1], p[2]) != right
                    && self.angle(p[2], p[3]) != right
                    && self.angle(p[0], p[2]) == right
                    && self.angle(p[0], p[3]) == right
                    && self.angle(p[1], p[3]) == right
            })
            .copied()
    }
}

pub fn code_key(code: &ShapeCode) -> String {
    code.iter().map(|(n, d)| format!("{n}/{d}")).collect::<Vec<_>>().join(",")
}

impl fmt::Debug for TetShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TetShape(")?;
        for (k, (i, j)) in PAIRS.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}{j}:{}", self.angles[k])?;
        }
        write!(f, ")")
    }
}

pub fn gram_matrix<T: Real>(t: &TetShape) -> Mat4<T> {
    let mut g = [[T::zero(); 4]; 4];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let c = -t.angles[k].cos::<T>();
        g[i][j] = c;
        g[j][i] = c;
    }
    g
}

/// `(positive, negative, zero)` eigenvalue counts, `|λ| < tol` counted as zero.
pub fn signature<T: Real, const N: usize>(g: &[[T; N]; N], tol: T) -> (usize, usize, usize) {
    let (w, _) = sym_eigen(g);
    let pos = w.iter().filter(|&&x| x >= tol).count();
    let neg = w.iter().filter(|&&x| x <= -tol).count();
    (pos, neg, N - pos - neg)
}

/// Link determinant; zero exactly at ideal vertices.
pub fn link_det<T: Real>(t: &TetShape, v: usize) -> T {
    det(&t.link_gram::<T>(v))
}

/// Planar angle of a face at a vertex from the three dihedral angles at that vertex.
///
/// `ta`, `tb` are the dihedral angles along the two face edges through the vertex,
/// `tc` the one along the third edge.
pub fn face_angle_from<T: Real>(ta: AngleFrac, tb: AngleFrac, tc: AngleFrac) -> Option<T> {
    let (sa, sb) = (ta.sin::<T>(), tb.sin::<T>());
    if sa.abs() < T::zero_tol() || sb.abs() < T::zero_tol() {
        return None;
    }
    let c = (tc.cos::<T>() + ta.cos::<T>() * tb.cos::<T>()) / (sa * sb);
    Some(c.max(-T::one()).min(T::one()).acos())
}
