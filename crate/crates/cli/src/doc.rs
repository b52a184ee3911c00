//! Serializable documents behind every command's output.

use serde::{Deserialize, Serialize};

use coxtet::catalog::{Catalog, CatalogEntry};
use coxtet::decomp::{CertReport, DecomposedTet, Family, Provenance, tuple_string};
use coxtet::diagram::format_labels;
use coxtet::second_type::{SecondTypeResult, TessellationFailure};
use coxtet::triangle2d::TriangleDecomp;

pub const SCHEMA_VERSION: u32 = 1;

/// Settings that determine the content of a document. Thread count and frontier
/// shuffling are left out on purpose: they must not change the output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub max_label: u32,
    pub max_tiles: usize,
    pub tol_signature: f64,
    pub tol_volume: f64,
    pub seed: u64,
    pub samples_per_tile: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub id: String,
    pub diagram: String,
    pub compact: bool,
    pub vertices: String,
    pub volume: f64,
    pub volume_err: f64,
    pub key: String,
}

impl CatalogRow {
    pub fn new(e: &CatalogEntry) -> Self {
        CatalogRow {
            id: e.id.clone(),
            diagram: format_labels(&e.shape),
            compact: e.compact,
            vertices: e.vertex_pattern(),
            volume: e.volume.value,
            volume_err: e.volume.err,
            key: e.canonical_key.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub schema_version: u32,
    pub max_label: u32,
    pub compact: usize,
    pub noncompact: usize,
    pub entries: Vec<CatalogRow>,
}

impl CatalogDoc {
    pub fn new(cat: &Catalog, max_label: u32) -> Self {
        CatalogDoc {
            schema_version: SCHEMA_VERSION,
            max_label,
            compact: cat.compact().count(),
            noncompact: cat.noncompact().count(),
            entries: cat.entries.iter().map(CatalogRow::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub f: String,
    pub p: String,
    pub ratio: u32,
    pub compact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumesDoc {
    pub schema_version: u32,
    /// `3Λ(π/3)`, the largest volume of a hyperbolic tetrahedron.
    pub regular_ideal: f64,
    pub entries: Vec<CatalogRow>,
    pub pairs_considered: usize,
    pub integer_ratios: Vec<RatioRow>,
    pub max_compact_ratio: Option<u32>,
    pub max_noncompact_ratio: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlueRow {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub matching: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryRow {
    pub index: usize,
    pub tiles: usize,
    pub depth: u32,
    pub tuple: String,
    pub glue: Option<GlueRow>,
    /// Edge marks `parts/label` in pair order 01,02,03,12,13,23.
    pub marks: [String; 6],
    /// Catalog id of the container when it is itself a Coxeter tetrahedron.
    pub container: Option<String>,
    pub key: String,
}

impl EntryRow {
    pub fn new(index: usize, d: &DecomposedTet, cat: &Catalog) -> Self {
        let glue = match &d.provenance {
            Provenance::Glue { m, n, p, q, matching } => Some(GlueRow { m: *m, n: *n, p: *p, q: *q, matching: *matching }),
            _ => None,
        };
        let container = if d.shape.is_coxeter() { cat.by_shape(&d.shape).map(|e| e.id.clone()) } else { None };
        EntryRow {
            index,
            tiles: d.tiles,
            depth: d.depth,
            tuple: tuple_string(d),
            glue,
            marks: d.marks.map(|m| m.to_string()),
            container,
            key: d.key.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub schema_version: u32,
    pub fundamental: String,
    pub diagram: String,
    pub compact: bool,
    /// Position among the families of the same compactness that have non-trivial entries.
    pub number: Option<usize>,
    pub seed_key: String,
    pub max_tiles: usize,
    pub entries: Vec<EntryRow>,
}

impl FamilyDoc {
    pub fn new(id: &str, compact: bool, number: Option<usize>, fam: &Family, cat: &Catalog, max_tiles: usize) -> Self {
        FamilyDoc {
            schema_version: SCHEMA_VERSION,
            fundamental: id.to_string(),
            diagram: format_labels(&fam.entries[0].shape),
            compact,
            number,
            seed_key: fam.entries[0].key.clone(),
            max_tiles,
            entries: fam.entries.iter().enumerate().map(|(i, d)| EntryRow::new(i, d, cat)).collect(),
        }
    }

    pub fn nontrivial(&self) -> usize {
        self.entries.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRow {
    pub f: String,
    pub p: String,
    pub ratio: u32,
    pub vertex_options: [Vec<u32>; 4],
    pub eliminated_by: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoundRow {
    pub fundamental: String,
    pub container: String,
    pub tiles: usize,
    pub marks: [String; 6],
    pub key: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NegativeRow {
    pub f: String,
    pub p: String,
    pub ratio: Option<u32>,
    pub seatings: usize,
    pub best_partial: usize,
    pub other_decompositions: Vec<String>,
    pub reason: String,
}

impl NegativeRow {
    fn new(t: &TessellationFailure) -> Self {
        NegativeRow {
            f: t.f.clone(),
            p: t.p.clone(),
            ratio: t.ratio,
            seatings: t.seatings,
            best_partial: t.best_partial,
            other_decompositions: t.other_decompositions.clone(),
            reason: t.reason.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleRow {
    pub outer: [String; 3],
    pub fundamental: [String; 3],
    pub tiles: usize,
}

impl TriangleRow {
    pub fn new(t: &TriangleDecomp) -> Self {
        TriangleRow {
            outer: t.outer.map(|a| a.to_string()),
            fundamental: t.fundamental.map(|a| a.to_string()),
            tiles: t.tiles,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondTypeDoc {
    pub schema_version: u32,
    pub pairs_considered: usize,
    pub volume_rejected: usize,
    pub candidates: Vec<CandidateRow>,
    pub found: Vec<FoundRow>,
    pub negatives: Vec<NegativeRow>,
    pub spherical_triangles: Vec<TriangleRow>,
    pub euclidean_triangles: Vec<TriangleRow>,
    /// Found pairs agree with the reference classification.
    pub matches_reference: bool,
}

impl SecondTypeDoc {
    pub fn new(r: &SecondTypeResult, cat: &Catalog, triangles: &[TriangleDecomp], matches_reference: bool) -> Self {
        let candidates = r
            .report
            .candidates
            .iter()
            .map(|c| {
                let e = c.eliminated_by();
                CandidateRow {
                    f: c.f.clone(),
                    p: c.p.clone(),
                    ratio: c.ratio,
                    vertex_options: c.vertex_options.clone(),
                    eliminated_by: e.map(|v| v.name.clone()),
                    reason: e.map_or_else(String::new, |v| v.reason.clone()),
                }
            })
            .collect();
        let found = r
            .found
            .iter()
            .map(|d| FoundRow {
                fundamental: d.fundamental.clone(),
                container: cat.by_shape(&d.shape).map_or_else(|| format_labels(&d.shape), |e| e.id.clone()),
                tiles: d.tiles,
                marks: d.marks.map(|m| m.to_string()),
                key: d.key.clone(),
            })
            .collect();
        let pick = |g| triangles.iter().filter(|t| t.geometry == g).map(TriangleRow::new).collect();
        SecondTypeDoc {
            schema_version: SCHEMA_VERSION,
            pairs_considered: r.report.pairs_considered,
            volume_rejected: r.report.volume_rejected,
            candidates,
            found,
            negatives: r.failures.iter().map(NegativeRow::new).collect(),
            spherical_triangles: pick(coxtet::triangle2d::Geometry::Spherical),
            euclidean_triangles: pick(coxtet::triangle2d::Geometry::Euclidean),
            matches_reference,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
    Third,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertRow {
    pub fundamental: String,
    pub key: String,
    pub tiles: usize,
    pub kind: Kind,
    pub volume_residual: f64,
    pub max_mirror_residual: f64,
    pub mirror_violations: usize,
    pub overlap_violations: usize,
    pub outside_violations: usize,
    pub failures: Vec<String>,
}

impl CertRow {
    pub fn new(d: &DecomposedTet, kind: Kind, rep: &CertReport) -> Self {
        CertRow {
            fundamental: d.fundamental.clone(),
            key: d.key.clone(),
            tiles: d.tiles,
            kind,
            volume_residual: rep.volume_residual,
            max_mirror_residual: rep.max_mirror_residual,
            mirror_violations: rep.mirror_violations,
            overlap_violations: rep.overlap_violations,
            outside_violations: rep.outside_violations,
            failures: rep.failures.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyDoc {
    pub schema_version: u32,
    pub seed: u64,
    pub samples_per_tile: usize,
    pub rows: Vec<CertRow>,
    pub failed: usize,
    pub third_type: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub settings: Settings,
    pub catalog: CatalogDoc,
    pub volumes: VolumesDoc,
    pub first_type: Vec<FamilyDoc>,
    pub second_type: SecondTypeDoc,
    pub appendix: CertifyDoc,
}
