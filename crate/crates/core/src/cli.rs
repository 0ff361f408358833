//! Command-line front end. All verdicts come straight from the library; this
//! module parses requests, loads files and assembles reports.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::json;

use crate::complex::FlagComplex;
use crate::config::Limits;
use crate::curvature;
use crate::error::Error;
use crate::generators::{generate, CorpusSpec};
use crate::hyperbolicity;
use crate::io::{CheckEntry, ComplexFile, InputDigest, MapFile, Outcome, Report, ReportConfig};
use crate::isometry::{self, Isometry};
use crate::verdict::{Verdict, Witness};

/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "flagcurv", version, about = "Curvature checks and isometry analysis for flag simplicial complexes")]
pub struct Cli {
    /// Largest filling diagram, in triangles.
    #[arg(long, global = true, env = "FLAGCURV_BUDGET", default_value_t = Limits::default().area_budget)]
    pub budget: usize,
    /// Longest full cycle to enumerate.
    #[arg(long, global = true, env = "FLAGCURV_CYCLE_CAP", default_value_t = Limits::default().cycle_cap)]
    pub cycle_cap: usize,
    /// Largest clique (in vertices) to enumerate.
    #[arg(long, global = true, env = "FLAGCURV_CLIQUE_CAP", default_value_t = Limits::default().clique_cap)]
    pub clique_cap: usize,
    /// Largest vertex count for the four-point and bottleneck kernels.
    #[arg(long, global = true, env = "FLAGCURV_DELTA_CAP", default_value_t = Limits::default().delta_cap)]
    pub delta_cap: usize,
    /// Search states per filling attempt.
    #[arg(long, global = true, env = "FLAGCURV_NODE_LIMIT", default_value_t = Limits::default().node_limit)]
    pub node_limit: usize,
    /// Geodesics enumerated per seed when searching for axes.
    #[arg(long, global = true, env = "FLAGCURV_GEODESIC_CAP", default_value_t = Limits::default().geodesic_cap)]
    pub geodesic_cap: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "FLAGCURV_JOBS")]
    pub jobs: Option<usize>,
    /// Seed for generated random complexes that do not name one.
    #[arg(long, global = true, env = "FLAGCURV_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock time per check (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Subcommand)]
pub enum Command {
    /// Run curvature checks: flag, klarge K, locallyklarge K, mlocated M,
    /// sd N [ORIGIN], simplyconnected, lemmas N ORIGIN.
    Check {
        /// Complex file.
        input: PathBuf,
        #[arg(required = true, num_args = 1..)]
        checks: Vec<String>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Analyze an isometry: profile, minset, embed, idempotence, axes N,
    /// union N, axesgraph N.
    Isom {
        /// Complex file.
        input: PathBuf,
        /// Map file holding the automorphism.
        map: PathBuf,
        #[arg(required = true, num_args = 1..)]
        ops: Vec<String>,
        /// Local-geodesy scale for axes (default: the translation length).
        #[arg(long)]
        scale: Option<usize>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a corpus complex, e.g. `gen disk d=7 r=3 -o disk.json`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        /// Complex file to write; a map file is written alongside when the
        /// family has a canonical automorphism.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Exact four-point δ.
    Delta {
        /// Complex file.
        input: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

impl Cli {
    pub fn limits(&self) -> Limits {
        Limits {
            clique_cap: self.clique_cap,
            cycle_cap: self.cycle_cap,
            area_budget: self.budget,
            node_limit: self.node_limit,
            delta_cap: self.delta_cap,
            geodesic_cap: self.geodesic_cap,
        }
    }
}

/// A parsed `check` request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckRequest {
    Flag,
    KLarge(usize),
    LocallyKLarge(usize),
    MLocated(usize),
    Sd { depth: usize, origin: Option<usize> },
    SimplyConnected,
    Lemmas { depth: usize, origin: usize },
}

/// A parsed `isom` request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsomRequest {
    Profile,
    MinSet,
    Embed,
    Idempotence,
    Axes(usize),
    Union(usize),
    AxesGraph(usize),
}

fn number(tokens: &[String], i: usize, what: &str) -> Result<usize, String> {
    let t = tokens.get(i).ok_or_else(|| format!("{what} needs a number"))?;
    t.parse().map_err(|_| format!("{what}: expected a number, got {t:?}"))
}

fn is_number(tokens: &[String], i: usize) -> bool {
    tokens.get(i).is_some_and(|t| t.parse::<usize>().is_ok())
}

pub fn parse_checks(tokens: &[String]) -> Result<Vec<CheckRequest>, String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let t = tokens[i].as_str();
        let (req, used) = match t {
            "flag" => (CheckRequest::Flag, 1),
            "klarge" => (CheckRequest::KLarge(number(tokens, i + 1, t)?), 2),
            "locallyklarge" => (CheckRequest::LocallyKLarge(number(tokens, i + 1, t)?), 2),
            "mlocated" => (CheckRequest::MLocated(number(tokens, i + 1, t)?), 2),
            "sd" => {
                let depth = number(tokens, i + 1, t)?;
                if is_number(tokens, i + 2) {
                    (CheckRequest::Sd { depth, origin: Some(number(tokens, i + 2, t)?) }, 3)
                } else {
                    (CheckRequest::Sd { depth, origin: None }, 2)
                }
            }
            "simplyconnected" => (CheckRequest::SimplyConnected, 1),
            "lemmas" => (CheckRequest::Lemmas { depth: number(tokens, i + 1, t)?, origin: number(tokens, i + 2, t)? }, 3),
            other => return Err(format!("unknown check {other:?}")),
        };
        out.push(req);
        i += used;
    }
    Ok(out)
}

pub fn parse_isom_ops(tokens: &[String]) -> Result<Vec<IsomRequest>, String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let t = tokens[i].as_str();
        let (req, used) = match t {
            "profile" => (IsomRequest::Profile, 1),
            "minset" => (IsomRequest::MinSet, 1),
            "embed" => (IsomRequest::Embed, 1),
            "idempotence" => (IsomRequest::Idempotence, 1),
            "axes" => (IsomRequest::Axes(number(tokens, i + 1, t)?), 2),
            "union" => (IsomRequest::Union(number(tokens, i + 1, t)?), 2),
            "axesgraph" => (IsomRequest::AxesGraph(number(tokens, i + 1, t)?), 2),
            other => return Err(format!("unknown isometry operation {other:?}")),
        };
        out.push(req);
        i += used;
    }
    Ok(out)
}

impl std::fmt::Display for CheckRequest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckRequest::Flag => f.write_str("flag"),
            CheckRequest::KLarge(k) => write!(f, "klarge {k}"),
            CheckRequest::LocallyKLarge(k) => write!(f, "locallyklarge {k}"),
            CheckRequest::MLocated(m) => write!(f, "mlocated {m}"),
            CheckRequest::Sd { depth, origin: Some(o) } => write!(f, "sd {depth} {o}"),
            CheckRequest::Sd { depth, origin: None } => write!(f, "sd {depth}"),
            CheckRequest::SimplyConnected => f.write_str("simplyconnected"),
            CheckRequest::Lemmas { depth, origin } => write!(f, "lemmas {depth} {origin}"),
        }
    }
}

impl std::fmt::Display for IsomRequest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsomRequest::Profile => f.write_str("profile"),
            IsomRequest::MinSet => f.write_str("minset"),
            IsomRequest::Embed => f.write_str("embed"),
            IsomRequest::Idempotence => f.write_str("idempotence"),
            IsomRequest::Axes(n) => write!(f, "axes {n}"),
            IsomRequest::Union(n) => write!(f, "union {n}"),
            IsomRequest::AxesGraph(n) => write!(f, "axesgraph {n}"),
        }
    }
}

/// A loaded input file with its digest.
struct Loaded<T> {
    value: T,
    digest: InputDigest,
}

fn read(path: &Path, role: &str) -> Result<(String, InputDigest), String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let digest = InputDigest { role: role.to_string(), sha256: crate::io::sha256_hex(&bytes) };
    let text = String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    Ok((text, digest))
}

fn load_complex(path: &Path) -> Result<Loaded<(ComplexFile, FlagComplex)>, String> {
    let (text, digest) = read(path, "complex")?;
    let file = ComplexFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let complex = file.to_complex().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Loaded { value: (file, complex), digest })
}

fn load_map(path: &Path, c: &FlagComplex) -> Result<Loaded<Isometry>, String> {
    let (text, digest) = read(path, "map")?;
    let file = MapFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let h = file.to_isometry(c).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Loaded { value: h, digest })
}

fn details<T: Serialize>(value: &T) -> Option<serde_json::Value> {
    Some(serde_json::to_value(value).expect("serializable"))
}

fn error_outcome(e: Error) -> Outcome {
    match e {
        Error::Elliptic(simplex) => Outcome::Fail { witness: Witness::Elliptic { simplex } },
        e => Outcome::Error { message: e.to_string() },
    }
}

fn from_result(r: crate::error::Result<Verdict>) -> (Outcome, Option<serde_json::Value>) {
    match r {
        Ok(v) => (v.into(), None),
        Err(e) => (error_outcome(e), None),
    }
}

fn run_check(file: &ComplexFile, c: &FlagComplex, req: &CheckRequest, limits: &Limits) -> (Outcome, Option<serde_json::Value>) {
    match *req {
        CheckRequest::Flag => from_result(file.flag_verdict()),
        CheckRequest::KLarge(k) => from_result(curvature::is_k_large(c, k, limits.cycle_cap)),
        CheckRequest::LocallyKLarge(k) => from_result(curvature::is_locally_k_large(c, k, limits)),
        CheckRequest::MLocated(m) => from_result(curvature::is_m_located(c, m, limits)),
        CheckRequest::Sd { depth, origin: Some(o) } => match curvature::check_sd_n(c, o, depth) {
            Ok(report) => (report.verdict().into(), details(&report)),
            Err(e) => (error_outcome(e), None),
        },
        CheckRequest::Sd { depth, origin: None } => match curvature::check_sd_all(c, depth) {
            Ok(reports) => {
                let failing: Vec<usize> = reports.values().filter(|r| !r.passes()).map(|r| r.origin).collect();
                let verdict = reports.values().find(|r| !r.passes()).map_or(Verdict::Pass, |r| r.verdict());
                (verdict.into(), Some(json!({ "origins_checked": reports.len(), "failing_origins": failing })))
            }
            Err(e) => (error_outcome(e), None),
        },
        CheckRequest::SimplyConnected => from_result(curvature::check_simple_connectivity(c, limits)),
        CheckRequest::Lemmas { depth, origin } => match curvature::check_local_lemmas(c, origin, depth) {
            Ok(report) => (report.verdict.clone().into(), details(&report)),
            Err(e) => (error_outcome(e), None),
        },
    }
}

fn run_isom(
    c: &FlagComplex,
    h: &Isometry,
    req: &IsomRequest,
    limits: &Limits,
    scale: Option<usize>,
) -> (Outcome, Option<serde_json::Value>) {
    let result = (|| -> crate::error::Result<(Outcome, Option<serde_json::Value>)> {
        Ok(match *req {
            IsomRequest::Profile => {
                let r = isometry::displacement_profile(c, h, limits.clique_cap)?;
                (Outcome::Pass, details(&r))
            }
            IsomRequest::MinSet => {
                let r = isometry::displacement_profile(c, h, limits.clique_cap)?;
                let m = isometry::min_set(c, h, &r)?;
                let info = json!({
                    "translation_length": r.translation_length,
                    "vertices": m.view.vertices(),
                    "edges": m.view.edges(),
                    "h_invariant": m.h_invariant,
                });
                if m.h_invariant {
                    (Outcome::Pass, Some(info))
                } else {
                    (Outcome::Error { message: "minimal set is not invariant".into() }, Some(info))
                }
            }
            IsomRequest::Embed => {
                let r = isometry::displacement_profile(c, h, limits.clique_cap)?;
                let m = isometry::min_set(c, h, &r)?;
                (isometry::check_isometric_embedding(c, &m.view)?.into(), None)
            }
            IsomRequest::Idempotence => (isometry::min_idempotence(c, h, limits.clique_cap)?.into(), None),
            IsomRequest::Axes(n) => {
                let s = isometry::invariant_geodesics(c, h, n, scale, limits)?;
                let outcome = if s.axes.is_empty() { Outcome::Unknown { undecided: Vec::new() } } else { Outcome::Pass };
                (outcome, details(&s))
            }
            IsomRequest::Union(n) => {
                let s = isometry::invariant_geodesics(c, h, n, scale, limits)?;
                (isometry::union_of_axes_check(c, h, &s, limits)?.into(), None)
            }
            IsomRequest::AxesGraph(n) => {
                let s = isometry::invariant_geodesics(c, h, n, scale, limits)?;
                let graph = isometry::graph_of_axes(c, &s);
                if graph.axes.is_empty() {
                    return Ok((Outcome::Unknown { undecided: Vec::new() }, details(&graph)));
                }
                let y = graph.to_complex();
                let delta = hyperbolicity::delta_four_point(&y, limits.delta_cap)?;
                let radius = delta.doubled.div_ceil(2) as usize;
                let verdict = hyperbolicity::bottleneck_check(&y, radius, limits.delta_cap)?;
                let info = json!({
                    "power": s.power,
                    "graph": graph,
                    "delta": delta.to_string(),
                    "delta_doubled": delta.doubled,
                    "delta_witness": delta.witness,
                    "bottleneck_radius": radius,
                });
                (verdict.into(), Some(info))
            }
        })
    })();
    result.unwrap_or_else(|e| (error_outcome(e), None))
}

fn timed<T>(timings: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let value = f();
    (value, timings.then(|| start.elapsed().as_millis() as u64))
}

fn emit(report: &Report, path: Option<&Path>, out: &mut dyn Write) -> Result<(), String> {
    let text = report.to_json();
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

/// Companion map path: `x.json` becomes `x.map.json`.
pub fn map_path_for(output: &Path) -> PathBuf {
    let stem = match output.extension() {
        Some(ext) if ext == "json" => output.with_extension(""),
        _ => output.to_path_buf(),
    };
    let mut name = stem.into_os_string();
    name.push(".map.json");
    PathBuf::from(name)
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let limits = cli.limits();
    let config = ReportConfig { limits, seed: cli.seed };
    match &cli.command {
        Command::Check { input, checks, report } => {
            let requests = parse_checks(checks)?;
            let loaded = load_complex(input)?;
            let (file, c) = &loaded.value;
            let mut r = Report::new("check", vec![loaded.digest.clone()], config);
            for req in &requests {
                let ((outcome, info), elapsed) = timed(cli.timings, || run_check(file, c, req, &limits));
                r.checks.push(CheckEntry { check: req.to_string(), outcome, details: info, elapsed_ms: elapsed });
            }
            emit(&r, report.as_deref(), out)?;
            Ok(r.exit_code())
        }
        Command::Isom { input, map, ops, scale, report } => {
            let requests = parse_isom_ops(ops)?;
            let loaded = load_complex(input)?;
            let (_, c) = &loaded.value;
            let h = load_map(map, c)?;
            let mut r = Report::new("isom", vec![loaded.digest.clone(), h.digest.clone()], config);
            for req in &requests {
                let ((outcome, info), elapsed) = timed(cli.timings, || run_isom(c, &h.value, req, &limits, *scale));
                r.checks.push(CheckEntry { check: req.to_string(), outcome, details: info, elapsed_ms: elapsed });
            }
            emit(&r, report.as_deref(), out)?;
            Ok(r.exit_code())
        }
        Command::Gen { spec, output } => {
            let mut text = spec.join(" ");
            if text.split_whitespace().next() == Some("random") && !text.contains("seed=") {
                text.push_str(&format!(" seed={}", cli.seed));
            }
            let spec: CorpusSpec = text.parse().map_err(|e: Error| e.to_string())?;
            let generated = generate(&spec).map_err(|e| e.to_string())?;
            let file = ComplexFile::from_complex(&generated.complex);
            std::fs::write(output, file.to_json()).map_err(|e| format!("{}: {e}", output.display()))?;
            writeln!(err, "wrote {} ({spec}, {} vertices)", output.display(), generated.complex.vertex_count())
                .map_err(|e| e.to_string())?;
            if let Some(h) = &generated.automorphism {
                let path = map_path_for(output);
                std::fs::write(&path, MapFile::from_isometry(h).to_json())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                writeln!(err, "wrote {}", path.display()).map_err(|e| e.to_string())?;
            }
            Ok(0)
        }
        Command::Delta { input, report } => {
            let loaded = load_complex(input)?;
            let (_, c) = &loaded.value;
            let mut r = Report::new("delta", vec![loaded.digest.clone()], config);
            let (result, elapsed) = timed(cli.timings, || hyperbolicity::delta_four_point(c, limits.delta_cap));
            let (outcome, info) = match result {
                Ok(d) => (
                    Outcome::Pass,
                    Some(json!({ "delta": d.to_string(), "delta_doubled": d.doubled, "witness": d.witness })),
                ),
                Err(e) => (error_outcome(e), None),
            };
            r.checks.push(CheckEntry { check: "delta".into(), outcome, details: info, elapsed_ms: elapsed });
            emit(&r, report.as_deref(), out)?;
            Ok(r.exit_code())
        }
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (result, stdout, stderr) = with_jobs(cli.jobs, || {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let r = execute(&cli, &mut o, &mut e);
        (r, o, e)
    });
    let _ = out.write_all(&stdout);
    let _ = err.write_all(&stderr);
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R>(_jobs: Option<usize>, f: impl FnOnce() -> R) -> R {
    f()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::Classification;

    fn tokens(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn check_tokens() {
        assert_eq!(
            parse_checks(&tokens("flag klarge 5 sd 2 sd 3 7 lemmas 2 0 simplyconnected")).unwrap(),
            vec![
                CheckRequest::Flag,
                CheckRequest::KLarge(5),
                CheckRequest::Sd { depth: 2, origin: None },
                CheckRequest::Sd { depth: 3, origin: Some(7) },
                CheckRequest::Lemmas { depth: 2, origin: 0 },
                CheckRequest::SimplyConnected,
            ]
        );
        assert!(parse_checks(&tokens("klarge")).is_err());
        assert!(parse_checks(&tokens("klarge x")).is_err());
        assert!(parse_checks(&tokens("wobbly")).is_err());
    }

    #[test]
    fn isom_tokens() {
        assert_eq!(
            parse_isom_ops(&tokens("profile axes 2 axesgraph 1")).unwrap(),
            vec![IsomRequest::Profile, IsomRequest::Axes(2), IsomRequest::AxesGraph(1)]
        );
        assert!(parse_isom_ops(&tokens("axes")).is_err());
    }

    #[test]
    fn companion_map_path() {
        assert_eq!(map_path_for(Path::new("out/strip.json")), PathBuf::from("out/strip.map.json"));
        assert_eq!(map_path_for(Path::new("strip")), PathBuf::from("strip.map.json"));
    }

    #[test]
    fn classification_is_reported() {
        let g = generate(&CorpusSpec::Cycle(6)).unwrap();
        let h = g.automorphism.unwrap();
        let (outcome, info) = run_isom(&g.complex, &h, &IsomRequest::Profile, &Limits::default(), None);
        assert_eq!(outcome, Outcome::Pass);
        let info = info.unwrap();
        assert_eq!(info["translation_length"], 1);
        assert_eq!(
            serde_json::from_value::<Classification>(info["classification"].clone()).unwrap(),
            Classification::Hyperbolic
        );
    }
}
