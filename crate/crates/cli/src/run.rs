use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::Parser;
use rayon::prelude::*;
use thiserror::Error;

use coxtet::catalog::{enumerate_coxeter_tetrahedra, Catalog, CatalogEntry};
use coxtet::decomp::{
    classify_type, realize_and_certify, search_first_type, DecompError, DecomposedTet, Family, Fundamental, SearchOptions,
};
use coxtet::diagram::parse_diagram;
use coxtet::second_type::{link_lists, second_type_classification, volume_pairs, PipelineOptions, SecondTypeResult};
use coxtet::shape::TetShape;
use coxtet::volume::{max_tet_volume, VolumeError};

use crate::args::{Cli, Command, Format};
use crate::cache::{self, CacheState, Loaded, CACHE_ENV};
use crate::doc::*;
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CLASSIFICATION: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// The second type classification the pipeline is expected to reproduce:
/// fundamental and container diagrams.
pub const REFERENCE_SECOND_TYPE: [(&str, &str); 2] = [
    ("03:3,12:3,13:3,23:3", "02:3,03:3,12:3,13:3,23:3"),
    ("03:3,12:3,13:3,23:3", "01:3,02:3,03:3,12:3,13:3,23:3"),
];

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("classification: {0}")]
    Classification(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => EXIT_USAGE,
            AppError::Precision(_) => EXIT_PRECISION,
            AppError::Classification(_) => EXIT_CLASSIFICATION,
            AppError::Io(_) => EXIT_IO,
        }
    }
}

impl From<DecompError> for AppError {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::ThirdType(_) => AppError::Classification(e.to_string()),
            _ => AppError::Precision(e.to_string()),
        }
    }
}

impl From<VolumeError> for AppError {
    fn from(e: VolumeError) -> Self {
        AppError::Precision(e.to_string())
    }
}

/// One run of the tool: settings, cache and accumulated warnings.
pub struct Session {
    pub settings: Settings,
    pub shuffle_seed: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub warnings: Vec<String>,
    state: Option<CacheState>,
    dirty: bool,
}

/// A first type family together with its catalog entry.
pub struct FamilyRun {
    pub entry: CatalogEntry,
    pub fund: Fundamental,
    pub family: Family,
}

impl Session {
    pub fn new(settings: Settings, shuffle_seed: Option<u64>, cache_dir: Option<PathBuf>) -> Self {
        Session { settings, shuffle_seed, cache_dir, warnings: Vec::new(), state: None, dirty: false }
    }

    fn warn(&mut self, msg: String) {
        eprintln!("warning: {msg}");
        self.warnings.push(msg);
    }

    fn settings_key(&self) -> String {
        let s = &self.settings;
        cache::settings_key(s.max_label, s.tol_signature, s.max_tiles, s.tol_volume)
    }

    /// The cache state, loaded on first use. `None` when caching is off.
    fn state(&mut self) -> Option<&mut CacheState> {
        let dir = self.cache_dir.clone()?;
        if self.state.is_none() {
            let key = self.settings_key();
            let loaded = match cache::load(&dir, &key) {
                Loaded::Hit(s) => s,
                Loaded::Missing | Loaded::Mismatch => CacheState::empty(&key),
                Loaded::Stale(v) => {
                    self.warn(format!("cache version {v} is stale (current {}), recomputing", cache::CACHE_VERSION));
                    CacheState::empty(&key)
                }
                Loaded::Corrupt(why) => {
                    self.warn(format!("cache file is unreadable ({why}), recomputing"));
                    CacheState::empty(&key)
                }
            };
            self.state = Some(loaded);
        }
        self.state.as_mut()
    }

    pub fn flush(&mut self) {
        if !self.dirty {
            return;
        }
        if let (Some(dir), Some(state)) = (self.cache_dir.clone(), self.state.as_ref()) {
            if let Err(e) = cache::save(&dir, state) {
                let msg = format!("cannot write cache: {e}");
                self.warn(msg);
            }
        }
        self.dirty = false;
    }

    pub fn catalog(&mut self) -> Result<Catalog, AppError> {
        if let Some(cat) = self.state().and_then(|s| s.catalog.clone()) {
            return Ok(cat);
        }
        let cat = enumerate_coxeter_tetrahedra(self.settings.max_label, self.settings.tol_signature)?;
        if let Some(s) = self.state() {
            s.catalog = Some(cat.clone());
            self.dirty = true;
        }
        Ok(cat)
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions { max_tiles: self.settings.max_tiles, volume_tol: self.settings.tol_volume, shuffle_seed: self.shuffle_seed }
    }

    /// First type family of `fund`, from the cache unless the frontier is shuffled.
    pub fn family(&mut self, fund: &Fundamental) -> Family {
        let key = fund.shape.canonical_key();
        let use_cache = self.shuffle_seed.is_none();
        if use_cache {
            if let Some(f) = self.state().and_then(|s| s.families.get(&key).cloned()) {
                if f.fundamental == fund.id {
                    return f;
                }
            }
        }
        let fam = search_first_type(fund, &self.search_options());
        if use_cache {
            if let Some(s) = self.state() {
                s.families.insert(key, fam.clone());
                self.dirty = true;
            }
        }
        fam
    }

    pub fn families(&mut self, cat: &Catalog) -> Result<Vec<FamilyRun>, AppError> {
        let mut out = Vec::new();
        for e in &cat.entries {
            let fund = Fundamental::from_entry(e)?;
            let family = self.family(&fund);
            out.push(FamilyRun { entry: e.clone(), fund, family });
        }
        Ok(out)
    }

    fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions { volume_tol: self.settings.tol_volume, max_label: self.settings.max_label, ..Default::default() }
    }

    pub fn catalog_doc(&mut self) -> Result<CatalogDoc, AppError> {
        let cat = self.catalog()?;
        Ok(CatalogDoc::new(&cat, self.settings.max_label))
    }

    pub fn volumes_doc(&mut self, cat: &Catalog) -> Result<VolumesDoc, AppError> {
        let (considered, pairs) = volume_pairs(cat, self.settings.tol_volume)?;
        let integer_ratios: Vec<RatioRow> =
            pairs.iter().map(|(f, p, n)| RatioRow { f: f.id.clone(), p: p.id.clone(), ratio: *n, compact: f.compact }).collect();
        let max_of = |compact: bool| integer_ratios.iter().filter(|r| r.compact == compact).map(|r| r.ratio).max();
        Ok(VolumesDoc {
            schema_version: SCHEMA_VERSION,
            regular_ideal: max_tet_volume::<f64>(),
            entries: cat.entries.iter().map(CatalogRow::new).collect(),
            pairs_considered: considered,
            max_compact_ratio: max_of(true),
            max_noncompact_ratio: max_of(false),
            integer_ratios,
        })
    }

    pub fn family_docs(&self, cat: &Catalog, runs: &[FamilyRun]) -> Vec<FamilyDoc> {
        let mut counters = [0usize; 2];
        runs.iter()
            .filter(|r| r.family.entries.len() > 1)
            .map(|r| {
                let c = &mut counters[r.entry.compact as usize];
                *c += 1;
                FamilyDoc::new(&r.entry.id, r.entry.compact, Some(*c), &r.family, cat, self.settings.max_tiles)
            })
            .collect()
    }

    pub fn second_type(&mut self, cat: &Catalog) -> Result<(SecondTypeResult, SecondTypeDoc), AppError> {
        let opts = self.pipeline_options();
        let result = second_type_classification(cat, &opts)?;
        let triangles = link_lists(&opts);
        let matches = matches_reference(cat, &result.found);
        let doc = SecondTypeDoc::new(&result, cat, &triangles, matches);
        Ok((result, doc))
    }

    /// Certifies and classifies every decomposition in `runs` and `second`.
    pub fn certify(&self, runs: &[FamilyRun], second: &[DecomposedTet]) -> Result<CertifyDoc, AppError> {
        let (seed, samples) = (self.settings.seed, self.settings.samples_per_tile);
        let mut jobs: Vec<(&DecomposedTet, &FamilyRun)> = Vec::new();
        for r in runs {
            jobs.extend(r.family.entries.iter().map(|d| (d, r)));
        }
        for d in second {
            let r = runs
                .iter()
                .find(|r| r.fund.id == d.fundamental)
                .ok_or_else(|| AppError::Classification(format!("no family for fundamental {}", d.fundamental)))?;
            jobs.push((d, r));
        }
        let rows = jobs
            .par_iter()
            .map(|(d, r)| {
                let rep = realize_and_certify(d, &r.fund, seed, samples)?;
                let kind = match classify_type(d, &r.family, &r.fund) {
                    Ok(coxtet::decomp::DecompType::First) => Kind::First,
                    Ok(coxtet::decomp::DecompType::Second) => Kind::Second,
                    Err(DecompError::ThirdType(_)) => Kind::Third,
                    Err(e) => return Err(AppError::from(e)),
                };
                Ok(CertRow::new(d, kind, &rep))
            })
            .collect::<Result<Vec<_>, AppError>>()?;
        Ok(CertifyDoc {
            schema_version: SCHEMA_VERSION,
            seed,
            samples_per_tile: samples,
            failed: rows.iter().filter(|r| !r.failures.is_empty()).count(),
            third_type: rows.iter().filter(|r| r.kind == Kind::Third).count(),
            rows,
        })
    }

    pub fn report(&mut self) -> Result<ReportDocument, AppError> {
        let cat = self.catalog()?;
        let runs = self.families(&cat)?;
        let (result, second) = self.second_type(&cat)?;
        let appendix = self.certify(&runs, &result.found)?;
        Ok(ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            settings: self.settings.clone(),
            catalog: CatalogDoc::new(&cat, self.settings.max_label),
            volumes: self.volumes_doc(&cat)?,
            first_type: self.family_docs(&cat, &runs),
            second_type: second,
            appendix,
        })
    }
}

fn matches_reference(cat: &Catalog, found: &[DecomposedTet]) -> bool {
    let key = |s: &str| parse_diagram(s).map(|t| t.canonical_key()).unwrap_or_default();
    let mut want: Vec<(String, String)> = REFERENCE_SECOND_TYPE.iter().map(|(f, p)| (key(f), key(p))).collect();
    let mut got: Vec<(String, String)> = found
        .iter()
        .map(|d| {
            let f = cat.get(&d.fundamental).map(|e| e.canonical_key.clone()).unwrap_or_default();
            (f, d.shape.canonical_key())
        })
        .collect();
    want.sort();
    got.sort();
    want == got
}

/// Resolves `--fundamental`: catalog id, catalog key, seed key or diagram.
pub fn resolve_fundamental(cat: &Catalog, spec: &str, tol: f64) -> Result<Fundamental, AppError> {
    let spec = spec.trim();
    if let Some(e) = cat.get(spec).or_else(|| cat.entries.iter().find(|e| e.canonical_key == spec)) {
        return Ok(Fundamental::from_entry(e)?);
    }
    for e in &cat.entries {
        let f = Fundamental::from_entry(e)?;
        if f.seed().key == spec {
            return Ok(f);
        }
    }
    let shape: TetShape = parse_diagram(spec).map_err(|_| AppError::Usage(format!("unknown fundamental `{spec}`")))?;
    if let Some(e) = cat.by_shape(&shape) {
        return Ok(Fundamental::from_entry(e)?);
    }
    if !shape.is_coxeter() || !shape.is_hyperbolic(tol) {
        return Err(AppError::Usage(format!("`{spec}` is not a hyperbolic Coxeter tetrahedron")));
    }
    Ok(Fundamental::new(coxtet::diagram::format_labels(&shape), &shape)?)
}

fn to_json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &Command, f: Format) -> AppError {
    AppError::Usage(format!("format {} is not available for {}", f.extension(), cmd.name()))
}

/// Output text and the exit code implied by the content.
pub fn execute(cli: &Cli, session: &mut Session, format: Format) -> Result<(String, i32), AppError> {
    let cmd = &cli.command;
    match cmd {
        Command::Enumerate => {
            let cat = session.catalog()?;
            let doc = CatalogDoc::new(&cat, session.settings.max_label);
            let text = match format {
                Format::Json => to_json(&doc),
                Format::Md => render::catalog_md(&doc),
                Format::Dot => render::catalog_dot(&cat),
            };
            Ok((text, EXIT_OK))
        }
        Command::Volumes => {
            let cat = session.catalog()?;
            let doc = session.volumes_doc(&cat)?;
            let text = match format {
                Format::Json => to_json(&doc),
                Format::Md => render::volumes_md(&doc),
                Format::Dot => return Err(unsupported(cmd, format)),
            };
            Ok((text, EXIT_OK))
        }
        Command::Search { fundamental } => {
            let cat = session.catalog()?;
            let fund = resolve_fundamental(&cat, fundamental, session.settings.tol_signature)?;
            let fam = session.family(&fund);
            let entry = cat.by_shape(&fund.shape);
            let compact = entry.map_or_else(|| fund.shape.vertex_types::<f64>(1e-9).iter().all(|v| *v == coxtet::shape::VertexKind::Finite), |e| e.compact);
            let doc = FamilyDoc::new(&fund.id, compact, None, &fam, &cat, session.settings.max_tiles);
            let text = match format {
                Format::Json => to_json(&doc),
                Format::Md => render::search_md(&doc),
                Format::Dot => render::family_dot(&fund.id, &fam),
            };
            Ok((text, EXIT_OK))
        }
        Command::SecondType => {
            let cat = session.catalog()?;
            let (_, doc) = session.second_type(&cat)?;
            let code = if doc.matches_reference { EXIT_OK } else { EXIT_CLASSIFICATION };
            let text = match format {
                Format::Json => to_json(&doc),
                Format::Md => render::second_type_md(&doc),
                Format::Dot => return Err(unsupported(cmd, format)),
            };
            Ok((text, code))
        }
        Command::Certify { fundamental } => {
            let cat = session.catalog()?;
            let (runs, second) = match fundamental {
                Some(spec) => {
                    let fund = resolve_fundamental(&cat, spec, session.settings.tol_signature)?;
                    let family = session.family(&fund);
                    let entry = cat.by_shape(&fund.shape).cloned().unwrap_or_else(|| CatalogEntry {
                        id: fund.id.clone(),
                        shape: fund.shape,
                        compact: false,
                        vertices: fund.shape.vertex_types::<f64>(1e-9),
                        volume: coxtet::volume::VolumeValue { value: fund.volume, err: 0.0 },
                        canonical_key: fund.shape.canonical_key(),
                    });
                    (vec![FamilyRun { entry, fund, family }], Vec::new())
                }
                None => {
                    let runs = session.families(&cat)?;
                    let (result, _) = session.second_type(&cat)?;
                    (runs, result.found)
                }
            };
            let doc = session.certify(&runs, &second)?;
            let code = outcome(&doc, true);
            let text = match format {
                Format::Json => to_json(&doc),
                Format::Md => render::certify_md(&doc),
                Format::Dot => return Err(unsupported(cmd, format)),
            };
            Ok((text, code))
        }
        Command::Report => {
            let doc = session.report()?;
            let mut code = outcome(&doc.appendix, doc.second_type.matches_reference);
            if code == EXIT_OK && doc.catalog.entries.is_empty() {
                code = EXIT_CLASSIFICATION;
            }
            let text = match format {
                Format::Json => to_json(&doc),
                Format::Md => render::report_md(&doc),
                Format::Dot => return Err(unsupported(cmd, format)),
            };
            Ok((text, code))
        }
    }
}

fn outcome(cert: &CertifyDoc, reference: bool) -> i32 {
    if cert.third_type > 0 || !reference {
        EXIT_CLASSIFICATION
    } else if cert.failed > 0 {
        EXIT_PRECISION
    } else {
        EXIT_OK
    }
}

fn output_target(cli: &Cli, format: Format) -> Option<PathBuf> {
    let out = cli.out.clone()?;
    if out.is_dir() {
        Some(out.join(format!("{}.{}", cli.command.name(), format.extension())))
    } else {
        Some(out)
    }
}

fn pick_format(cli: &Cli) -> Format {
    cli.format
        .or_else(|| {
            let out = cli.out.as_ref()?;
            if out.is_dir() {
                return None;
            }
            Format::from_extension(out.extension()?.to_str()?)
        })
        .unwrap_or(Format::Md)
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let settings = Settings {
        max_label: cli.max_label,
        max_tiles: cli.max_tiles,
        tol_signature: cli.tol_signature,
        tol_volume: cli.tol_volume,
        seed: cli.seed,
        samples_per_tile: cli.samples,
    };
    let cache_dir = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let mut session = Session::new(settings, cli.shuffle_seed, cache_dir);
    let format = pick_format(cli);

    let work = |session: &mut Session| -> Result<i32, AppError> {
        if cli.max_label < 2 {
            return Err(AppError::Usage("--max-label must be at least 2".into()));
        }
        if cli.jobs == Some(0) {
            return Err(AppError::Usage("--jobs must be positive".into()));
        }
        let (text, code) = execute(cli, session, format)?;
        match output_target(cli, format) {
            Some(path) => {
                if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                    fs::create_dir_all(parent)?;
                }
                fs::write(&path, text)?;
            }
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(code)
    };

    let result = match cli.jobs.filter(|&n| n > 0) {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| work(&mut session)),
            Err(e) => Err(AppError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => work(&mut session),
    };
    session.flush();
    if !session.warnings.is_empty() {
        eprintln!("{} warning(s)", session.warnings.len());
    }
    match result {
        Ok(code) => {
            if code == EXIT_CLASSIFICATION {
                eprintln!("error: classification deviates from the reference");
            } else if code == EXIT_PRECISION {
                eprintln!("error: certification failed");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (program name first) and runs. Help and version exit 0, bad usage 64.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
