//! Second type decompositions: every container angle is a single tile angle.
//!
//! Candidate pairs `(F, P)` go through a chain of necessary conditions; survivors are
//! settled by seating `P` on the tessellation generated by `F`.

mod filters;
mod placement;

pub use filters::{cone_counts, run_filters, vertex_options, ConeCount, FilterVerdict, VertexOptions};
pub use placement::{tilings_of, TilingSearch};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::AngleFrac;
use crate::catalog::{Catalog, CatalogEntry};
use crate::decomp::{DecompError, DecomposedTet, Fundamental};
use crate::linalg::Vec4;
use crate::triangle2d::{second_type_list, Geometry, TriangleDecomp};
use crate::volume::ratio_integrality;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidatePair {
    pub f: String,
    pub p: String,
    pub ratio: u32,
    pub vertex_options: VertexOptions,
    pub verdicts: Vec<FilterVerdict>,
}

impl CandidatePair {
    pub fn survived(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn eliminated_by(&self) -> Option<&FilterVerdict> {
        self.verdicts.iter().find(|v| !v.passed)
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub volume_tol: f64,
    /// Largest Euclidean triangle decomposition considered at ideal vertices.
    pub euclid_max_tiles: usize,
    pub max_label: u32,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { volume_tol: 1e-6, euclid_max_tiles: 24, max_label: 6 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineReport {
    /// Ordered pairs `F ≠ P` of equal compactness.
    pub pairs_considered: usize,
    pub volume_rejected: usize,
    pub candidates: Vec<CandidatePair>,
}

/// Second type triangle decompositions used for vertex links.
pub fn link_lists(opts: &PipelineOptions) -> Vec<TriangleDecomp> {
    let mut l = second_type_list(Geometry::Spherical, 120, opts.max_label);
    l.extend(second_type_list(Geometry::Euclidean, opts.euclid_max_tiles, opts.max_label));
    l
}

/// Pairs with an integral volume ratio of at least 2, in catalog order.
pub fn volume_pairs(cat: &Catalog, tol: f64) -> Result<(usize, Vec<(&CatalogEntry, &CatalogEntry, u32)>), DecompError> {
    let mut considered = 0;
    let mut out = Vec::new();
    for f in &cat.entries {
        for p in &cat.entries {
            if f.id == p.id || f.compact != p.compact {
                continue;
            }
            considered += 1;
            if let Some(n) = ratio_integrality(&f.volume, &p.volume, tol)? {
                if n >= 2 {
                    out.push((f, p, n));
                }
            }
        }
    }
    Ok((considered, out))
}

pub fn filter_pipeline(cat: &Catalog, opts: &PipelineOptions) -> Result<PipelineReport, DecompError> {
    let lists = link_lists(opts);
    let (considered, pairs) = volume_pairs(cat, opts.volume_tol)?;
    let candidates = pairs
        .par_iter()
        .map(|(f, p, n)| {
            let fund = Fundamental::<f64>::from_entry(f)?;
            let (vertex_options, verdicts) = run_filters(&fund, f, p, *n, &lists);
            Ok(CandidatePair { f: f.id.clone(), p: p.id.clone(), ratio: *n, vertex_options, verdicts })
        })
        .collect::<Result<Vec<_>, DecompError>>()?;
    Ok(PipelineReport { pairs_considered: considered, volume_rejected: considered - candidates.len(), candidates })
}

/// Why no second type decomposition was found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TessellationFailure {
    pub f: String,
    pub p: String,
    pub ratio: Option<u32>,
    pub seatings: usize,
    pub best_partial: usize,
    /// Keys of decompositions found that have some non-fundamental angle.
    pub other_decompositions: Vec<String>,
    pub reason: String,
}

/// Every decomposition of `p` into copies of `f`, of any type.
pub fn enumerate_tessellations(f: &CatalogEntry, p: &CatalogEntry, tol: f64) -> Result<Vec<DecomposedTet>, DecompError> {
    let Some(n) = ratio_integrality(&f.volume, &p.volume, tol)? else { return Ok(Vec::new()) };
    let fund = Fundamental::<f64>::from_entry(f)?;
    Ok(tilings_of(&fund, &p.shape, n as usize).found)
}

/// Finds the second type decomposition of `p` by `f`, or explains why there is none.
pub fn verify_tessellation(f: &CatalogEntry, p: &CatalogEntry, tol: f64) -> Result<DecomposedTet, TessellationFailure> {
    let fail = |ratio, seatings, best_partial, other_decompositions, reason: String| TessellationFailure {
        f: f.id.clone(),
        p: p.id.clone(),
        ratio,
        seatings,
        best_partial,
        other_decompositions,
        reason,
    };
    let ratio = match ratio_integrality(&f.volume, &p.volume, tol) {
        Ok(Some(n)) if n >= 2 => n,
        Ok(_) => return Err(fail(None, 0, 0, Vec::new(), "volume ratio is not an integer >= 2".into())),
        Err(e) => return Err(fail(None, 0, 0, Vec::new(), e.to_string())),
    };
    let fund = match Fundamental::<f64>::from_entry(f) {
        Ok(x) => x,
        Err(e) => return Err(fail(Some(ratio), 0, 0, Vec::new(), e.to_string())),
    };
    let search = tilings_of(&fund, &p.shape, ratio as usize);
    let (second, other): (Vec<_>, Vec<_>) = search.found.into_iter().partition(|d| d.all_fundamental());
    match second.into_iter().next() {
        Some(d) => Ok(d),
        None => {
            let keys: Vec<String> = other.iter().map(|d| d.key.clone()).collect();
            let reason = if keys.is_empty() {
                format!("no seating of {} fills {} with {ratio} tiles", f.id, p.id)
            } else {
                format!("{} decomposition(s) found, each with a non-fundamental angle", keys.len())
            };
            Err(fail(Some(ratio), search.seatings, search.best_partial, keys, reason))
        }
    }
}

/// The filter pipeline followed by verification of the survivors.
#[derive(Clone, Debug)]
pub struct SecondTypeResult {
    pub report: PipelineReport,
    pub found: Vec<DecomposedTet>,
    pub failures: Vec<TessellationFailure>,
}

pub fn second_type_classification(cat: &Catalog, opts: &PipelineOptions) -> Result<SecondTypeResult, DecompError> {
    let report = filter_pipeline(cat, opts)?;
    let survivors: Vec<&CandidatePair> = report.candidates.iter().filter(|c| c.survived()).collect();
    let outcomes: Vec<_> = survivors
        .par_iter()
        .map(|c| verify_tessellation(cat.get(&c.f).unwrap(), cat.get(&c.p).unwrap(), opts.volume_tol))
        .collect();
    let mut found = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(d) => found.push(d),
            Err(e) => failures.push(e),
        }
    }
    Ok(SecondTypeResult { report, found, failures })
}

/// The faces opposite the corner in a seated cone, and the angles between their planes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeDiagnostic {
    pub vertex: usize,
    pub seating: String,
    pub link_tiles: usize,
    /// Corner tiles plus tiles behind far faces off the container face.
    pub behind: Option<usize>,
    pub far_planes: Vec<Vec4<f64>>,
    /// `⟨nᵢ, nⱼ⟩` for each pair of far planes.
    pub products: Vec<f64>,
    /// Dihedral angles between the far planes, on the side of the tiles.
    pub dihedrals: Vec<Option<AngleFrac>>,
    /// Whether the far faces of the pair meet along an edge of two corner tiles.
    pub adjacent: Vec<bool>,
}

/// Seatings at container vertex `v` with `link_tiles` tiles at the corner.
pub fn cone_diagnostic(f: &CatalogEntry, p: &CatalogEntry, v: usize, link_tiles: usize, ratio: u32) -> Result<Vec<ConeDiagnostic>, DecompError> {
    let fund = Fundamental::<f64>::from_entry(f)?;
    let q = filters::at_vertex(&p.shape, v);
    let mut out = Vec::new();
    for c in placement::corner_seatings(&fund, &q, ratio as usize + 2, true) {
        let Some(tiles) = placement::cone_tiles(&fund, &c, ratio as usize) else { continue };
        if tiles.len() != link_tiles {
            continue;
        }
        let opposite = [0, 1, 2].map(|i| -q.angle(i, 3).cos::<f64>());
        let behind = placement::far_neighbours(&fund, &tiles, c.w, &c.normals, Some(opposite)).map(|k| k + tiles.len());
        let far: Vec<Vec4<f64>> =
            tiles.iter().map(|g| crate::hyperboloid::tile_normals(&fund.real, g)[c.w]).collect();
        // far facets of the same plane share the orientation, pointing away from the corner
        let planes = placement::distinct_planes(&far);
        let products = placement::plane_products(&planes);
        let adjacent = placement::far_plane_adjacency(&fund, &tiles, c.w, &planes);
        let dihedrals = products.iter().map(|x: &f64| AngleFrac::from_radians((-x).clamp(-1.0, 1.0).acos(), 60, 1e-7)).collect();
        out.push(ConeDiagnostic { vertex: v, seating: c.label(), link_tiles, behind, far_planes: planes, products, dihedrals, adjacent });
    }
    Ok(out)
}
