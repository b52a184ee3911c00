//! Markdown and Graphviz output. Markdown is deterministic: fixed float precision,
//! catalog order, and nothing that depends on timing or thread count.

use std::fmt::Write;

use coxtet::catalog::Catalog;
use coxtet::decomp::Family;
use coxtet::diagram::to_dot;

use crate::doc::*;

pub const NUMBERING_NOTE: &str = "\
Faces of a container are numbered 0..3 in canonical order (least edge-mark code); \
face i is node i when the diagram is drawn with its nodes left to right in that order. \
Entries are numbered from 0 (the single tile) by (tiles, depth, key). \
A line (k,l ; m,n,p,q) has k tiles and depth l, and is obtained by gluing face p of entry m \
to face q of entry n. Edge marks are written parts/label: the container angle is parts·π/label.";

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn catalog_md(d: &CatalogDoc) -> String {
    let mut out = String::new();
    writeln!(out, "## Hyperbolic Coxeter tetrahedra\n").unwrap();
    writeln!(out, "{} entries with labels up to {}: {} compact, {} non-compact.\n", d.entries.len(), d.max_label, d.compact, d.noncompact).unwrap();
    writeln!(out, "| id | diagram | vertices | volume | key |").unwrap();
    writeln!(out, "|---|---|---|---|---|").unwrap();
    for e in &d.entries {
        writeln!(out, "| {} | `{}` | {} | {:.10} | `{}` |", e.id, e.diagram, e.vertices, e.volume, e.key).unwrap();
    }
    out
}

pub fn volumes_md(d: &VolumesDoc) -> String {
    let mut out = String::new();
    writeln!(out, "## Volumes\n").unwrap();
    writeln!(out, "Regular ideal tetrahedron 3Λ(π/3) = {:.12}.\n", d.regular_ideal).unwrap();
    writeln!(out, "| id | compact | volume | error bound |").unwrap();
    writeln!(out, "|---|---|---|---|").unwrap();
    for e in &d.entries {
        writeln!(out, "| {} | {} | {:.12} | {:.1e} |", e.id, e.compact, e.volume, e.volume_err).unwrap();
    }
    writeln!(out, "\n### Integral volume ratios\n").unwrap();
    writeln!(out, "{} ordered pairs of equal compactness considered.\n", d.pairs_considered).unwrap();
    writeln!(out, "| F | P | Vol(P)/Vol(F) | compact |").unwrap();
    writeln!(out, "|---|---|---|---|").unwrap();
    for r in &d.integer_ratios {
        writeln!(out, "| {} | {} | {} | {} |", r.f, r.p, r.ratio, r.compact).unwrap();
    }
    let show = |x: Option<u32>| x.map_or("none".to_string(), |v| v.to_string());
    writeln!(out, "\nLargest compact ratio: {}. Largest non-compact ratio: {}.", show(d.max_compact_ratio), show(d.max_noncompact_ratio)).unwrap();
    out
}

pub fn family_md(d: &FamilyDoc) -> String {
    let mut out = String::new();
    let class = if d.compact { "bounded" } else { "unbounded" };
    let title = match d.number {
        Some(n) => format!("{} ({class} family {n})", d.fundamental),
        None => d.fundamental.clone(),
    };
    writeln!(out, "### {title}\n").unwrap();
    writeln!(out, "Fundamental `{}`, seed key `{}`, {} non-trivial decompositions with at most {} tiles.\n", d.diagram, d.seed_key, d.nontrivial(), d.max_tiles).unwrap();
    writeln!(out, "| # | tuple | marks 01,02,03,12,13,23 | container | key |").unwrap();
    writeln!(out, "|---|---|---|---|---|").unwrap();
    for e in &d.entries {
        let container = e.container.as_deref().unwrap_or("");
        writeln!(out, "| {} | {} | {} | {} | `{}` |", e.index, e.tuple, e.marks.join(" "), container, e.key).unwrap();
    }
    out
}

pub fn search_md(d: &FamilyDoc) -> String {
    format!("# First type decompositions\n\n{NUMBERING_NOTE}\n\n{}", family_md(d))
}

pub fn second_type_md(d: &SecondTypeDoc) -> String {
    let mut out = String::new();
    writeln!(out, "## Second type decompositions\n").unwrap();
    writeln!(out, "{} ordered pairs of equal compactness, {} rejected by volume, {} candidates.\n", d.pairs_considered, d.volume_rejected, d.candidates.len()).unwrap();
    writeln!(out, "| F | P | N | tile counts at vertices | eliminated by | reason |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|").unwrap();
    for c in &d.candidates {
        let opts: Vec<String> = c.vertex_options.iter().map(|o| format!("{o:?}")).collect();
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            c.f,
            c.p,
            c.ratio,
            opts.join(" "),
            c.eliminated_by.as_deref().unwrap_or("survived"),
            md_escape(&c.reason)
        )
        .unwrap();
    }
    writeln!(out, "\nFound:\n").unwrap();
    for f in &d.found {
        writeln!(out, "- {} in {}: {} tiles, marks {}, key `{}`", f.fundamental, f.container, f.tiles, f.marks.join(" "), f.key).unwrap();
    }
    if !d.negatives.is_empty() {
        writeln!(out, "\nSurvivors without a second type decomposition:\n").unwrap();
        for n in &d.negatives {
            let others = if n.other_decompositions.is_empty() { String::new() } else { format!(" (other decompositions: {})", n.other_decompositions.join(", ")) };
            writeln!(out, "- {} in {}: {}; {} seatings, best partial fill {}{}", n.f, n.p, n.reason, n.seatings, n.best_partial, others).unwrap();
        }
    }
    writeln!(out, "\nSecond type triangle decompositions used at vertex links:\n").unwrap();
    writeln!(out, "| geometry | outer angles | tile angles | tiles |").unwrap();
    writeln!(out, "|---|---|---|---|").unwrap();
    for (g, rows) in [("spherical", &d.spherical_triangles), ("euclidean", &d.euclidean_triangles)] {
        for t in rows {
            writeln!(out, "| {g} | {} | {} | {} |", t.outer.join(", "), t.fundamental.join(", "), t.tiles).unwrap();
        }
    }
    writeln!(out, "\nMatches the reference classification: {}.", if d.matches_reference { "yes" } else { "NO" }).unwrap();
    out
}

pub fn certify_md(d: &CertifyDoc) -> String {
    let mut out = String::new();
    writeln!(out, "## Verification appendix\n").unwrap();
    writeln!(
        out,
        "{} decompositions certified with seed {} and {} samples per tile: {} failed, {} of third type.\n",
        d.rows.len(),
        d.seed,
        d.samples_per_tile,
        d.failed,
        d.third_type
    )
    .unwrap();
    writeln!(out, "| fundamental | key | tiles | type | volume residual | mirror residual | violations | failures |").unwrap();
    writeln!(out, "|---|---|---|---|---|---|---|---|").unwrap();
    for r in &d.rows {
        let kind = match r.kind {
            Kind::First => "first",
            Kind::Second => "second",
            Kind::Third => "THIRD",
        };
        let violations = r.mirror_violations + r.overlap_violations + r.outside_violations;
        writeln!(
            out,
            "| {} | `{}` | {} | {} | {:.1e} | {:.1e} | {} | {} |",
            r.fundamental,
            r.key,
            r.tiles,
            kind,
            r.volume_residual,
            r.max_mirror_residual,
            violations,
            md_escape(&r.failures.join("; "))
        )
        .unwrap();
    }
    out
}

pub fn report_md(r: &ReportDocument) -> String {
    let s = &r.settings;
    let mut out = String::new();
    writeln!(out, "# Coxeter decompositions of hyperbolic tetrahedra\n").unwrap();
    writeln!(out, "coxtet {} report, schema version {}.\n", r.tool_version, r.schema_version).unwrap();
    writeln!(
        out,
        "Settings: max label {}, max tiles {}, signature tolerance {:e}, volume tolerance {:e}, certification seed {}, {} samples per tile.\n",
        s.max_label, s.max_tiles, s.tol_signature, s.tol_volume, s.seed, s.samples_per_tile
    )
    .unwrap();
    writeln!(out, "{NUMBERING_NOTE}\n").unwrap();
    out.push_str(&catalog_md(&r.catalog));
    out.push('\n');
    out.push_str(&volumes_md(&r.volumes));
    out.push('\n');
    writeln!(out, "## First type decompositions\n").unwrap();
    for f in &r.first_type {
        out.push_str(&family_md(f));
        out.push('\n');
    }
    out.push_str(&second_type_md(&r.second_type));
    out.push('\n');
    out.push_str(&certify_md(&r.appendix));
    out
}

pub fn catalog_dot(cat: &Catalog) -> String {
    cat.entries.iter().map(|e| to_dot(&e.id, &e.shape)).collect()
}

pub fn family_dot(id: &str, fam: &Family) -> String {
    fam.entries
        .iter()
        .enumerate()
        .map(|(i, d)| to_dot(&format!("{id} #{i} {}", d.key), &d.shape))
        .collect()
}
