mod input;
mod suite;

use clap::{Args, Parser, Subcommand, ValueEnum};
use input::AnyCurve;
use lab_core::avenue::{apply_lasso, base_curve, is_full, DescriptorModel};
use lab_core::flute::diagram::{canonicalize, diagram_of};
use lab_core::flute::{enumerate_neighbors, lasso, Carrier, Curve};
use lab_core::flux::{flux_auto, flux_side, hamming, FluteModel};
use lab_core::oracle::{
    all_geodesics, bfs_distance, build_universe, components_outside_ball, criterion_check, FiniteGraphSlice,
    OracleError, Universe, UniverseSpec,
};
use lab_core::path::flute::{detour_flute, FlutePath};
use lab_core::path::general::{detour_general, GeneralPath};
use lab_core::path::{verify_path, PathError};
use lab_core::surface::{piece_catalogue, validate_spec};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown suite {0:?}; known: {}", suite::SUITES.join(", "))]
    UnknownSuite(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::Uncertified(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

type Res = Result<bool, CliError>;

#[derive(Parser)]
#[command(name = "lab", version, about = "Curve graphs of translatable surfaces: lassos, flux, certified detours")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Surface specs.
    Spec {
        #[command(subcommand)]
        cmd: SpecCmd,
    },
    /// Curves on the bi-infinite flute.
    Flute {
        #[command(subcommand)]
        cmd: FluteCmd,
    },
    /// Curve descriptors on general surfaces.
    General {
        #[command(subcommand)]
        cmd: GeneralCmd,
    },
    /// Flux and Hamming between two curves of the same model.
    Metric {
        #[arg(value_enum)]
        kind: MetricKind,
        a: String,
        b: String,
    },
    /// Certified path from a to b avoiding the R-ball about o.
    Detour {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        o: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(short = 'R')]
        r: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a path file: edge witnesses and distance bounds above R.
    Verify {
        path: String,
        #[arg(long)]
        o: String,
        #[arg(short = 'R')]
        r: u64,
    },
    /// Brute-force distances on a finite flute slice.
    Oracle {
        #[command(flatten)]
        slice: SliceArgs,
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Run named suites; several names run as parallel processes.
    Suite {
        #[arg(required = true)]
        names: Vec<String>,
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Directory for `<suite>.jsonl`; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Neighborhood of a curve in a flute slice.
    Export {
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long)]
        center: String,
        #[arg(long, default_value_t = 1)]
        radius: u64,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SpecCmd {
    Validate { file: String },
}

#[derive(Subcommand)]
enum FluteCmd {
    /// Canonical diagram and word.
    Canon { curve: String },
    /// Lasso along an arc given as JSON.
    Lasso {
        curve: String,
        #[arg(long)]
        arc: String,
    },
    Forget {
        curve: String,
        #[arg(long)]
        puncture: i64,
    },
    Partition { curve: String },
    /// All lassos within the carrier, sorted by canonical key.
    Neighbors {
        curve: String,
        #[arg(long, value_parser = input::carrier)]
        carrier: Carrier,
        #[arg(long, default_value_t = 0)]
        winding: usize,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum GeneralCmd {
    /// The standard curve of copy `k`.
    Base {
        #[arg(long)]
        surface: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        copy: i64,
    },
    Lasso {
        curve: String,
        #[arg(long)]
        lasso: String,
    },
    /// Whether the region between disjoint curves a and b is full.
    Full { a: String, b: String },
    Flux { a: String, b: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricKind {
    Flux,
    Hamming,
    Side,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Args, Clone)]
struct SliceArgs {
    /// Punctures `lo:hi` admitted in the slice.
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
    window: String,
    #[arg(long, default_value_t = 0)]
    winding: usize,
    #[arg(long, default_value_t = 5)]
    max_len: usize,
    #[arg(long, default_value_t = 50_000)]
    max_vertices: usize,
}

impl SliceArgs {
    fn build(&self) -> Result<Universe, CliError> {
        let k = input::carrier(&self.window).map_err(|e| CliError::Usage(format!("--window: {e}")))?;
        let mut s = UniverseSpec::window(k.a, k.b, self.winding);
        s.max_len = self.max_len;
        s.max_vertices = self.max_vertices;
        Ok(build_universe(&s)?)
    }
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Slice statistics, or the whole adjacency with --out.
    Build {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Dist { a: String, b: String },
    Geodesics {
        a: String,
        b: String,
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
    /// Components of the slice minus the closed R-ball.
    Components {
        #[arg(long)]
        center: String,
        #[arg(short = 'R')]
        r: u64,
    },
    /// Pairs on the f-sphere joined outside the R-ball.
    Criterion {
        #[arg(long)]
        center: String,
        #[arg(short = 'R')]
        r: u64,
        #[arg(short = 'f')]
        f: u64,
    },
}

fn emit(v: Value) {
    println!("{v}");
}

fn write_or_print(out: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            if !body.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn curve_json(c: &Curve) -> Value {
    json!({ "word": c.to_string(), "diagram": serde_json::to_value(diagram_of(c)).unwrap() })
}

fn spec_cmd(cmd: SpecCmd) -> Res {
    let SpecCmd::Validate { file } = cmd;
    match validate_spec(input::spec(&file)?) {
        Ok(v) => {
            emit(json!({ "valid": true, "spec": v.spec(), "pieces": piece_catalogue(&v) }));
            Ok(true)
        }
        Err(e) => {
            emit(json!({ "valid": false, "error": e.to_string() }));
            Ok(false)
        }
    }
}

fn flute_cmd(cmd: FluteCmd) -> Res {
    match cmd {
        FluteCmd::Canon { curve } => {
            let c = input::flute_curve(&curve)?;
            let d = canonicalize(&diagram_of(&c)).map_err(usage)?;
            emit(json!({ "word": c.to_string(), "diagram": d, "separating": c.is_separating() }));
        }
        FluteCmd::Lasso { curve, arc } => {
            let c = input::flute_curve(&curve)?;
            let n = lasso(&c, &input::arc(&arc)?).map_err(usage)?;
            emit(curve_json(&n));
        }
        FluteCmd::Forget { curve, puncture } => {
            let c = input::flute_curve(&curve)?;
            match c.forget(puncture) {
                Some(f) => emit(curve_json(&f)),
                None => emit(json!({ "word": null, "note": "image is inessential" })),
            }
        }
        FluteCmd::Partition { curve } => {
            let c = input::flute_curve(&curve)?;
            let p = c.partition().ok_or_else(|| usage(format!("{c} is not separating")))?;
            emit(json!({ "threshold": p.threshold, "extra": p.extra }));
        }
        FluteCmd::Neighbors { curve, carrier, winding, dot } => {
            let c = input::flute_curve(&curve)?;
            let ns = enumerate_neighbors(&c, carrier, winding).map_err(usage)?;
            if dot {
                let labels = std::iter::once(&c).chain(&ns).map(|x| x.to_string()).collect();
                let edges = (1..=ns.len()).map(|i| (0, i));
                let g = FiniteGraphSlice::new(labels, edges, vec![false; ns.len() + 1]);
                print!("{}", g.to_dot());
            } else {
                emit(json!({ "curve": c.to_string(), "neighbors": ns.iter().map(|n| n.to_string()).collect::<Vec<_>>() }));
            }
        }
    }
    Ok(true)
}

fn general_cmd(cmd: GeneralCmd) -> Res {
    match cmd {
        GeneralCmd::Base { surface, copy } => {
            let s = input::valid_spec(&surface)?;
            println!("{}", base_curve(&s, copy).to_json());
        }
        GeneralCmd::Lasso { curve, lasso } => {
            let d = input::descriptor(&curve)?;
            let (n, w) = apply_lasso(&d, &input::general_lasso(&lasso)?).map_err(usage)?;
            emit(json!({ "curve": serde_json::to_value(&n).unwrap(), "witness": w }));
        }
        GeneralCmd::Full { a, b } => {
            let full = is_full(&input::descriptor(&a)?, &input::descriptor(&b)?).map_err(usage)?;
            emit(json!({ "full": full }));
        }
        GeneralCmd::Flux { a, b } => {
            let f = flux_auto(&DescriptorModel, &input::descriptor(&a)?, &input::descriptor(&b)?).map_err(usage)?;
            emit(json!(f));
        }
    }
    Ok(true)
}

fn metric_cmd(kind: MetricKind, a: &str, b: &str) -> Res {
    let v = match (input::any_curve(a)?, input::any_curve(b)?) {
        (AnyCurve::Flute(x), AnyCurve::Flute(y)) => match kind {
            MetricKind::Flux => json!(flux_auto(&FluteModel, &x, &y).map_err(usage)?),
            MetricKind::Hamming => json!({ "hamming": hamming(&FluteModel, &x, &y).map_err(usage)? }),
            MetricKind::Side => json!({ "side": flux_side(&FluteModel, &x, &y).map_err(usage)? }),
        },
        (AnyCurve::General(x), AnyCurve::General(y)) => match kind {
            MetricKind::Flux => json!(flux_auto(&DescriptorModel, &x, &y).map_err(usage)?),
            MetricKind::Hamming => json!({ "hamming": hamming(&DescriptorModel, &x, &y).map_err(usage)? }),
            MetricKind::Side => json!({ "side": flux_side(&DescriptorModel, &x, &y).map_err(usage)? }),
        },
        _ => return Err(usage("both curves must come from the same model")),
    };
    emit(v);
    Ok(true)
}

fn detour_cmd(surface: &str, o: &str, a: &str, b: &str, r: u64, out: Option<&PathBuf>) -> Res {
    let spec = input::valid_spec(surface)?;
    let (body, ok) = if spec.is_flute() {
        let (o, a, b) = (input::flute_curve(o)?, input::flute_curve(a)?, input::flute_curve(b)?);
        let p = detour_flute(&o, &a, &b, r)?;
        let rep = verify_path(&FluteModel, &p, &o, r);
        (json!({ "model": "flute", "path": p }), rep.ok)
    } else {
        let (o, a, b) = (input::descriptor(o)?, input::descriptor(a)?, input::descriptor(b)?);
        let p = detour_general(&o, &a, &b, r)?;
        let rep = verify_path(&DescriptorModel, &p, &o, r);
        (json!({ "model": "general", "path": p }), rep.ok)
    };
    write_or_print(out, &serde_json::to_string_pretty(&body).unwrap())?;
    if out.is_some() {
        let len = body["path"]["edges"].as_array().map_or(0, |e| e.len());
        emit(json!({ "verified": ok, "length": len }));
    }
    Ok(ok)
}

fn verify_cmd(path: &str, o: &str, r: u64) -> Res {
    let v = input::path_file(path)?;
    let body = v.get("path").cloned().unwrap_or(v.clone());
    let rep = match v.get("model").and_then(Value::as_str) {
        Some("general") => {
            let p: GeneralPath = serde_json::from_value(body).map_err(usage)?;
            verify_path(&DescriptorModel, &p, &input::descriptor(o)?, r)
        }
        _ => {
            let p: FlutePath = serde_json::from_value(body).map_err(usage)?;
            verify_path(&FluteModel, &p, &input::flute_curve(o)?, r)
        }
    };
    emit(json!({ "ok": rep.ok, "failures": rep.failures }));
    Ok(rep.ok)
}

fn vertex(u: &Universe, arg: &str) -> Result<usize, CliError> {
    Ok(u.vertex(&input::flute_curve(arg)?)?)
}

fn oracle_cmd(slice: &SliceArgs, cmd: OracleCmd) -> Res {
    let u = slice.build()?;
    let g = &u.graph;
    match cmd {
        OracleCmd::Build { out } => {
            if let Some(p) = out {
                write_or_print(Some(&p), &g.to_json())?;
            }
            let boundary = g.boundary.iter().filter(|&&b| b).count();
            emit(json!({ "vertices": g.len(), "edges": g.edge_count(), "boundary": boundary, "spec": u.spec }));
        }
        OracleCmd::Dist { a, b } => {
            let d = bfs_distance(g, vertex(&u, &a)?, vertex(&u, &b)?)?;
            emit(json!({ "distance": d, "scope": "within slice" }));
        }
        OracleCmd::Geodesics { a, b, cap } => {
            let (paths, capped) = match all_geodesics(g, vertex(&u, &a)?, vertex(&u, &b)?, cap) {
                Ok(p) => (p, false),
                Err(OracleError::CapExceeded { partial }) => (partial, true),
                Err(e) => return Err(e.into()),
            };
            let named: Vec<Vec<&str>> = paths.iter().map(|p| p.iter().map(|&v| g.labels[v].as_str()).collect()).collect();
            emit(json!({ "geodesics": named, "capped": capped, "scope": "within slice" }));
        }
        OracleCmd::Components { center, r } => {
            let cs = components_outside_ball(g, vertex(&u, &center)?, r)?;
            let sizes: Vec<Value> =
                cs.iter().map(|c| json!({ "size": c.vertices.len(), "pseudo_unbounded": c.pseudo_unbounded })).collect();
            let unbounded = cs.iter().filter(|c| c.pseudo_unbounded).count();
            emit(json!({ "components": sizes, "pseudo_unbounded": unbounded }));
        }
        OracleCmd::Criterion { center, r, f } => {
            let c = criterion_check(g, vertex(&u, &center)?, r, f)?;
            emit(json!({
                "passed": c.passed(), "r": c.r, "f": c.f, "sphere": c.sphere,
                "pairs_checked": c.pairs_checked, "failures": c.failures.len(),
            }));
            return Ok(c.passed());
        }
    }
    Ok(true)
}

fn suite_cmd(names: &[String], config: Option<&str>, seed: Option<u64>, samples: Option<usize>, out: Option<PathBuf>) -> Res {
    let mut cfg = suite::RunConfig::load(config)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = samples {
        cfg.samples = n;
    }
    let out = out.or(cfg.out.clone());
    if let Some(bad) = names.iter().find(|n| !suite::SUITES.contains(&n.as_str())) {
        return Err(CliError::UnknownSuite(bad.clone()));
    }
    if let Some(dir) = &out {
        std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    }
    if names.len() == 1 {
        let (lines, ok) = suite::run_suite(&cfg, &names[0])?;
        let body = lines.join("\n") + "\n";
        match &out {
            Some(dir) => write_or_print(Some(&dir.join(format!("{}.jsonl", names[0]))), &body)?,
            None => print!("{body}"),
        }
        return Ok(ok);
    }
    // one process per suite; output is gathered in the order given
    let exe = std::env::current_exe().map_err(usage)?;
    let mut kids = Vec::new();
    for n in names {
        let mut c = std::process::Command::new(&exe);
        c.args(["suite", n, "--seed", &cfg.seed.to_string(), "--samples", &cfg.samples.to_string()]);
        if let Some(p) = config {
            c.args(["--config", p]);
        }
        if let Some(dir) = &out {
            c.arg("--out").arg(dir);
        }
        c.stdout(std::process::Stdio::piped());
        kids.push(c.spawn().map_err(usage)?);
    }
    let mut ok = true;
    for k in kids {
        let o = k.wait_with_output().map_err(usage)?;
        print!("{}", String::from_utf8_lossy(&o.stdout));
        match o.status.code() {
            Some(0) => {}
            Some(1) => ok = false,
            _ => return Err(CliError::Usage("a suite process failed to run".into())),
        }
    }
    Ok(ok)
}

fn export_cmd(slice: &SliceArgs, center: &str, radius: u64, format: Format, out: Option<&PathBuf>) -> Res {
    let u = slice.build()?;
    let nb = u.graph.neighborhood(vertex(&u, center)?, radius)?;
    let body = match format {
        Format::Dot => nb.to_dot(),
        Format::Json => nb.to_json(),
    };
    write_or_print(out, &body)?;
    Ok(true)
}

fn run(cli: Cli) -> Res {
    match cli.cmd {
        Cmd::Spec { cmd } => spec_cmd(cmd),
        Cmd::Flute { cmd } => flute_cmd(cmd),
        Cmd::General { cmd } => general_cmd(cmd),
        Cmd::Metric { kind, a, b } => metric_cmd(kind, &a, &b),
        Cmd::Detour { surface, o, a, b, r, out } => detour_cmd(&surface, &o, &a, &b, r, out.as_ref()),
        Cmd::Verify { path, o, r } => verify_cmd(&path, &o, r),
        Cmd::Oracle { slice, cmd } => oracle_cmd(&slice, cmd),
        Cmd::Suite { names, config, seed, samples, out } => suite_cmd(&names, config.as_deref(), seed, samples, out),
        Cmd::Export { slice, center, radius, format, out } => export_cmd(&slice, &center, radius, format, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lab: {e}");
            ExitCode::from(e.code())
        }
    }
}
