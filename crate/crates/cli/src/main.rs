//! Command-line front end for the Rabi-model spectrum library.
//!
//! Subcommands: `spectrum` (locate all spectrum elements at one coupling),
//! `trace` (zero set of a spectral condition over a coupling window),
//! `figure` (canned data + gnuplot bundles), `verify` (acceptance suite).
//! Exit codes: 0 success, 2 numeric failure, 64 usage error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rabi_spectrum::acceptance;
use rabi_spectrum::conditions::SpectralClass;
use rabi_spectrum::solver::{
    attach_oracle, energy_curves, min_gap, scan_spectrum, trace_level_set, CurveRole, CurveSet,
    GapReport, LevelSetCondition, Refiner, ScanConfig, ScanOutcome, SolverError, Window,
};

const EXIT_NUMERIC: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "rabi-spectrum",
    version,
    about = "Energy spectrum of the quantum Rabi model from confluent-Heun spectral conditions"
)]
struct Cli {
    /// key=value file overriding scan defaults (flags override the file)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate every spectrum element at one coupling over a range of the
    /// spectral parameter x = E + lambda^2
    Spectrum(SpectrumArgs),
    /// Trace the zero set of one spectral condition over a (lambda, mu)
    /// window
    Trace(TraceArgs),
    /// Emit the data + plot-script bundle for a canned figure
    Figure(FigureArgs),
    /// Run the acceptance suite
    Verify(VerifyArgs),
}

/// Optional overrides of the scan configuration, applied after the config
/// file.
#[derive(Args, Default, Clone)]
struct Overrides {
    /// Grid step in x for sign scans
    #[arg(long, global = true)]
    grid_step: Option<f64>,
    /// Normalized-residual tolerance at located roots
    #[arg(long, global = true)]
    root_tol: Option<f64>,
    /// Half-width of the integer-x guard interval
    #[arg(long, global = true)]
    eps_int: Option<f64>,
    /// Cap on roots per scan
    #[arg(long, global = true)]
    max_roots: Option<usize>,
    /// Lambda step of curve sweeps
    #[arg(long, global = true)]
    curve_step: Option<f64>,
    /// Cells along the longer window axis for level-set tracing
    #[arg(long, global = true)]
    trace_cells: Option<usize>,
    /// Lambda step for minimum-gap searches
    #[arg(long, global = true)]
    gap_scan_step: Option<f64>,
    /// Bracket refinement algorithm
    #[arg(long, global = true, value_enum)]
    refiner: Option<RefinerArg>,
}

#[derive(ValueEnum, Clone, Copy)]
enum RefinerArg {
    Bisection,
    Brent,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Coupling strength lambda
    #[arg(long)]
    lambda: f64,
    /// Level splitting mu
    #[arg(long)]
    mu: f64,
    /// Range of the spectral parameter, lo:hi
    #[arg(long, value_parser = parse_range, value_name = "LO:HI")]
    x: (f64, f64),
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Skip the diagonalization cross-check column
    #[arg(long)]
    no_oracle: bool,
    /// Output file (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TraceCondition {
    /// Trace the degeneracy-2 truncation locus of this degree
    #[arg(long, value_name = "N")]
    judd: Option<u32>,
    /// Trace the non-degenerate integer-x condition of this degree
    #[arg(long, value_name = "N")]
    f: Option<u32>,
    /// Trace the Wronskian zero set at this non-integer x
    #[arg(long, value_name = "X")]
    wronskian: Option<f64>,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    condition: TraceCondition,
    /// Window lambda_lo:lambda_hi x mu_lo:mu_hi
    #[arg(long, value_parser = parse_window, value_name = "A:BxC:D")]
    window: (f64, f64, f64, f64),
    /// Output directory for data files and the plot script
    #[arg(long, default_value = "trace-out", value_name = "DIR")]
    out_dir: PathBuf,
    /// Skip the gnuplot script
    #[arg(long)]
    no_plot: bool,
}

#[derive(Args)]
struct FigureArgs {
    /// Which canned figure to build
    #[arg(value_enum)]
    name: FigureName,
    /// Output directory (default: `figures/<name>`)
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Skip the gnuplot script
    #[arg(long)]
    no_plot: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum FigureName {
    /// Wronskian zero set at x = 2 + pi over the coupling plane
    Fig1a,
    /// Degree-5 integer-x conditions over the coupling plane
    Fig1b,
    /// Spectrum at mu = 1 with baselines and integer-x markers
    Fig1c,
    /// Spectrum at mu = 3.75 with half-integer baselines and the
    /// avoided-crossing inset report
    Fig2,
}

impl FigureName {
    fn as_str(self) -> &'static str {
        match self {
            FigureName::Fig1a => "fig1a",
            FigureName::Fig1b => "fig1b",
            FigureName::Fig1c => "fig1c",
            FigureName::Fig2 => "fig2",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// quick: acceptance criteria; full: adds figure reproductions
    #[arg(value_enum)]
    suite: Suite,
    /// Where figure reproductions are written during `full`
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Suite {
    Quick,
    Full,
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }

    fn numeric(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_NUMERIC,
            msg: msg.into(),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::InvalidRange { .. } | SolverError::InvalidConfig(_) => {
                CliError::usage(e.to_string())
            }
            other => CliError::numeric(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::numeric(format!("i/o: {e}"))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad number `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad number `{hi}`"))?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn parse_window(s: &str) -> Result<(f64, f64, f64, f64), String> {
    let (a, b) = s
        .split_once('x')
        .ok_or_else(|| format!("expected A:BxC:D, got `{s}`"))?;
    let (x_lo, x_hi) = parse_range(a)?;
    let (y_lo, y_hi) = parse_range(b)?;
    Ok((x_lo, x_hi, y_lo, y_hi))
}

/// 17 significant digits; enough to round-trip any f64, and fixed so output
/// is byte-identical between runs.
fn g17(v: f64) -> String {
    format!("{v:.16e}")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    let cfg = build_config(cli.config.as_deref(), &cli.overrides)?;
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args, &cfg),
        Command::Trace(args) => cmd_trace(args, &cfg),
        Command::Figure(args) => {
            let dir = args
                .out_dir
                .clone()
                .unwrap_or_else(|| PathBuf::from("figures").join(args.name.as_str()));
            let outcome = build_figure(args.name, &dir, &cfg, !args.no_plot)?;
            print!("{}", outcome.summary());
            Ok(())
        }
        Command::Verify(args) => cmd_verify(args, &cfg),
    }
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("RABI_SPECTRA_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::usage(format!("RABI_SPECTRA_THREADS=`{v}` is not a count")))?;
        if n == 0 {
            return Err(CliError::usage("RABI_SPECTRA_THREADS must be nonzero"));
        }
        // Ignore the error if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn build_config(path: Option<&Path>, ov: &Overrides) -> Result<ScanConfig, CliError> {
    let mut cfg = ScanConfig::default();
    if let Some(path) = path {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                CliError::usage(format!("config line {}: bad {what} `{value}`", lineno + 1))
            };
            match key {
                "grid_step" => cfg.grid_step = value.parse().map_err(|_| bad("number"))?,
                "root_tol" => cfg.root_tol = value.parse().map_err(|_| bad("number"))?,
                "eps_int" => cfg.eps_int = value.parse().map_err(|_| bad("number"))?,
                "max_roots" => cfg.max_roots = value.parse().map_err(|_| bad("count"))?,
                "curve_step" => cfg.curve_step = value.parse().map_err(|_| bad("number"))?,
                "trace_cells" => cfg.trace_cells = value.parse().map_err(|_| bad("count"))?,
                "gap_scan_step" => cfg.gap_scan_step = value.parse().map_err(|_| bad("number"))?,
                "half_integer_baselines" => {
                    cfg.half_integer_baselines = value.parse().map_err(|_| bad("boolean"))?
                }
                "bracket_refiner" => {
                    cfg.bracket_refiner = match value {
                        "bisection" => Refiner::Bisection,
                        "brent" => Refiner::BrentLike,
                        _ => return Err(bad("refiner (bisection|brent)")),
                    }
                }
                _ => {
                    return Err(CliError::usage(format!(
                        "config line {}: unknown key `{key}`",
                        lineno + 1
                    )))
                }
            }
        }
    }
    if let Some(v) = ov.grid_step {
        cfg.grid_step = v;
    }
    if let Some(v) = ov.root_tol {
        cfg.root_tol = v;
    }
    if let Some(v) = ov.eps_int {
        cfg.eps_int = v;
    }
    if let Some(v) = ov.max_roots {
        cfg.max_roots = v;
    }
    if let Some(v) = ov.curve_step {
        cfg.curve_step = v;
    }
    if let Some(v) = ov.trace_cells {
        cfg.trace_cells = v;
    }
    if let Some(v) = ov.gap_scan_step {
        cfg.gap_scan_step = v;
    }
    if let Some(r) = ov.refiner {
        cfg.bracket_refiner = match r {
            RefinerArg::Bisection => Refiner::Bisection,
            RefinerArg::Brent => Refiner::BrentLike,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

// ---------------------------------------------------------------------------
// spectrum

#[derive(Serialize)]
struct Row {
    lambda: f64,
    mu: f64,
    x: f64,
    #[serde(rename = "E")]
    e: f64,
    kind: &'static str,
    degeneracy: u8,
    residual: f64,
    oracle_delta: Option<f64>,
}

fn rows_of(out: &ScanOutcome) -> Vec<Row> {
    out.points
        .iter()
        .map(|p| Row {
            lambda: out.lambda,
            mu: out.mu,
            x: p.pt.x,
            e: p.energy(),
            kind: p.kind.kind.as_str(),
            degeneracy: p.kind.degeneracy,
            residual: p.condition_residual,
            oracle_delta: p.oracle_delta,
        })
        .collect()
}

fn render_csv(rows: &[Row]) -> String {
    let mut s = String::from("lambda,mu,x,E,kind,degeneracy,residual,oracle_delta\n");
    for r in rows {
        let od = r.oracle_delta.map(g17).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            g17(r.lambda),
            g17(r.mu),
            g17(r.x),
            g17(r.e),
            r.kind,
            r.degeneracy,
            g17(r.residual),
            od
        );
    }
    s
}

fn cmd_spectrum(args: SpectrumArgs, cfg: &ScanConfig) -> Result<(), CliError> {
    let (x_lo, x_hi) = args.x;
    let mut out = scan_spectrum(args.lambda, args.mu, x_lo, x_hi, cfg)?;
    if !args.no_oracle {
        attach_oracle(&mut out)?;
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let rows = rows_of(&out);
    let text = match args.format {
        Format::Csv => render_csv(&rows),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows)
                .map_err(|e| CliError::numeric(format!("json: {e}")))?;
            s.push('\n');
            s
        }
    };
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// plot bundles

#[derive(Clone, Copy, PartialEq)]
enum PlotStyle {
    /// Solid line, dash type 1.
    Solid,
    /// Dashed line, dash type 2.
    Dashed,
    /// Dotted line, dash type 3.
    Dotted,
    /// Filled squares.
    Squares,
    /// Open circles.
    Circles,
}

struct PlotEntry {
    file: String,
    title: String,
    style: PlotStyle,
}

fn write_dat(dir: &Path, name: &str, points: &[[f64; 2]]) -> Result<(), CliError> {
    let mut s = String::new();
    for p in points {
        let _ = writeln!(s, "{} {}", g17(p[0]), g17(p[1]));
    }
    fs::write(dir.join(name), s)?;
    Ok(())
}

/// Writes every curve of the set as `<prefix>-NN.dat` (spectrum curves get
/// the line_style; baselines are dotted) plus marker point files, returning
/// the plot entries in a deterministic order.
fn write_set(
    dir: &Path,
    prefix: &str,
    set: &CurveSet,
    line_style: PlotStyle,
) -> Result<Vec<PlotEntry>, CliError> {
    let mut entries = Vec::new();
    let mut spectrum_idx = 0usize;
    let mut baseline_idx = 0usize;
    for c in &set.curves {
        let (name, style, title) = match c.role {
            CurveRole::Spectrum => {
                let n = format!("{prefix}-{spectrum_idx:02}.dat");
                spectrum_idx += 1;
                (n, line_style, set.label.clone())
            }
            CurveRole::Baseline | CurveRole::HalfBaseline => {
                let n = format!("{prefix}-baseline-{baseline_idx:02}.dat");
                baseline_idx += 1;
                (n, PlotStyle::Dotted, "integer baselines".to_string())
            }
        };
        write_dat(dir, &name, &c.points)?;
        entries.push(PlotEntry {
            file: name,
            title,
            style,
        });
    }
    let doublets: Vec<[f64; 2]> = set
        .markers
        .iter()
        .filter(|m| m.kind == SpectralClass::Judd)
        .map(|m| m.pos)
        .collect();
    if !doublets.is_empty() {
        let name = format!("{prefix}-doublets.dat");
        write_dat(dir, &name, &doublets)?;
        entries.push(PlotEntry {
            file: name,
            title: "degenerate integer-x states".into(),
            style: PlotStyle::Squares,
        });
    }
    let simple: Vec<[f64; 2]> = set
        .markers
        .iter()
        .filter(|m| m.kind == SpectralClass::NewInteger)
        .map(|m| m.pos)
        .collect();
    if !simple.is_empty() {
        let name = format!("{prefix}-simple.dat");
        write_dat(dir, &name, &simple)?;
        entries.push(PlotEntry {
            file: name,
            title: "non-degenerate integer-x states".into(),
            style: PlotStyle::Circles,
        });
    }
    Ok(entries)
}

fn write_script(
    dir: &Path,
    png: &str,
    xlabel: &str,
    ylabel: &str,
    entries: &[PlotEntry],
) -> Result<(), CliError> {
    let mut s = String::new();
    let _ = writeln!(s, "set terminal pngcairo size 900,700");
    let _ = writeln!(s, "set output '{png}'");
    let _ = writeln!(s, "set xlabel '{xlabel}'");
    let _ = writeln!(s, "set ylabel '{ylabel}'");
    let _ = writeln!(s, "set key outside");
    let mut seen_titles: Vec<&str> = Vec::new();
    let mut parts: Vec<String> = Vec::new();
    for e in entries {
        let title = if seen_titles.contains(&e.title.as_str()) {
            "notitle".to_string()
        } else {
            seen_titles.push(&e.title);
            format!("title '{}'", e.title)
        };
        let with = match e.style {
            PlotStyle::Solid => "with lines dt 1 lc rgb 'black'".to_string(),
            PlotStyle::Dashed => "with lines dt 2 lc rgb 'black'".to_string(),
            PlotStyle::Dotted => "with lines dt 3 lc rgb 'gray50'".to_string(),
            PlotStyle::Squares => "with points pt 5 ps 1.1 lc rgb 'gray40'".to_string(),
            PlotStyle::Circles => "with points pt 6 ps 1.1 lc rgb 'black'".to_string(),
        };
        parts.push(format!("'{}' {with} {title}", e.file));
    }
    let _ = writeln!(s, "plot \\\n  {}", parts.join(", \\\n  "));
    fs::write(dir.join("plot.gp"), s)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// trace

fn cmd_trace(args: TraceArgs, cfg: &ScanConfig) -> Result<(), CliError> {
    let cond = if let Some(n) = args.condition.judd {
        LevelSetCondition::Judd(n)
    } else if let Some(n) = args.condition.f {
        LevelSetCondition::F(n)
    } else {
        LevelSetCondition::WAtX(args.condition.wronskian.expect("clap group"))
    };
    let (a, b, c, d) = args.window;
    let window = Window::new(a, b, c, d)?;
    let set = trace_level_set(cond, &window, cfg)?;
    fs::create_dir_all(&args.out_dir)?;
    let style = match cond {
        LevelSetCondition::Judd(_) => PlotStyle::Dashed,
        _ => PlotStyle::Solid,
    };
    let entries = write_set(&args.out_dir, "curve", &set, style)?;
    if !args.no_plot {
        write_script(&args.out_dir, "trace.png", "lambda", "mu", &entries)?;
    }
    for w in &set.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "curves: {} ({} data files in {})",
        set.spectrum_curves().count(),
        entries.len(),
        args.out_dir.display()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// figures

struct FigureOutcome {
    name: &'static str,
    dir: PathBuf,
    /// (family label, curve count) in emission order.
    families: Vec<(String, usize)>,
    vertices: usize,
    markers: usize,
    /// Worst |E - (n - lambda^2)| over markers.
    marker_baseline_dev: f64,
    gap: Option<GapReport>,
}

impl FigureOutcome {
    fn summary(&self) -> String {
        let mut s = String::new();
        let fams: Vec<String> = self
            .families
            .iter()
            .map(|(l, n)| format!("{l}: {n}"))
            .collect();
        let _ = writeln!(
            s,
            "{}: {} ({} vertices, {} markers) -> {}",
            self.name,
            fams.join(", "),
            self.vertices,
            self.markers,
            self.dir.display()
        );
        if let Some(g) = &self.gap {
            let _ = writeln!(
                s,
                "inset gap: {} at lambda = {} between E = {} and {} ({} samples)",
                g.gap, g.lambda_star, g.energies[0], g.energies[1], g.samples
            );
        }
        s
    }
}

fn count_set(set: &CurveSet) -> (usize, usize) {
    let curves = set.spectrum_curves().count();
    let vertices = set.spectrum_curves().map(|c| c.points.len()).sum();
    (curves, vertices)
}

fn marker_stats(set: &CurveSet) -> (usize, f64) {
    let mut dev: f64 = 0.0;
    for m in &set.markers {
        let e = m.n as f64 - m.pos[0] * m.pos[0];
        dev = dev.max((m.pos[1] - e).abs());
    }
    (set.markers.len(), dev)
}

fn build_figure(
    name: FigureName,
    dir: &Path,
    cfg: &ScanConfig,
    plot: bool,
) -> Result<FigureOutcome, CliError> {
    fs::create_dir_all(dir)?;
    match name {
        FigureName::Fig1a => {
            let x = 2.0 + std::f64::consts::PI;
            let window = Window::new(1e-3, 1.0, 0.0, 4.0)?;
            let set = trace_level_set(LevelSetCondition::WAtX(x), &window, cfg)?;
            let entries = write_set(dir, "wronskian", &set, PlotStyle::Solid)?;
            if plot {
                write_script(dir, "fig1a.png", "lambda", "mu", &entries)?;
            }
            let (curves, vertices) = count_set(&set);
            Ok(FigureOutcome {
                name: "fig1a",
                dir: dir.to_path_buf(),
                families: vec![(format!("wronskian zero set at x = {x}"), curves)],
                vertices,
                markers: 0,
                marker_baseline_dev: 0.0,
                gap: None,
            })
        }
        FigureName::Fig1b => {
            let window = Window::new(1e-3, 1.2, 0.0, 8.0)?;
            let f_set = trace_level_set(LevelSetCondition::F(5), &window, cfg)?;
            let j_set = trace_level_set(LevelSetCondition::Judd(5), &window, cfg)?;
            let mut entries = write_set(dir, "matching", &f_set, PlotStyle::Solid)?;
            entries.extend(write_set(dir, "truncation", &j_set, PlotStyle::Dashed)?);
            if plot {
                write_script(dir, "fig1b.png", "lambda", "mu", &entries)?;
            }
            let (fc, fv) = count_set(&f_set);
            let (jc, jv) = count_set(&j_set);
            Ok(FigureOutcome {
                name: "fig1b",
                dir: dir.to_path_buf(),
                families: vec![
                    ("degree-5 matching curves".into(), fc),
                    ("degree-5 truncation ovals".into(), jc),
                ],
                vertices: fv + jv,
                markers: 0,
                marker_baseline_dev: 0.0,
                gap: None,
            })
        }
        FigureName::Fig1c => {
            let set = energy_curves(1.0, (0.0, 1.0), (-1.0, 4.0), cfg)?;
            let entries = write_set(dir, "level", &set, PlotStyle::Solid)?;
            if plot {
                write_script(dir, "fig1c.png", "lambda", "E", &entries)?;
            }
            let (curves, vertices) = count_set(&set);
            let (markers, dev) = marker_stats(&set);
            Ok(FigureOutcome {
                name: "fig1c",
                dir: dir.to_path_buf(),
                families: vec![("spectral curves at mu = 1".into(), curves)],
                vertices,
                markers,
                marker_baseline_dev: dev,
                gap: None,
            })
        }
        FigureName::Fig2 => {
            let cfg2 = ScanConfig {
                half_integer_baselines: true,
                ..*cfg
            };
            let set = energy_curves(3.75, (0.0, 1.0), (-2.0, 6.0), &cfg2)?;
            let entries = write_set(dir, "level", &set, PlotStyle::Solid)?;
            if plot {
                write_script(dir, "fig2.png", "lambda", "E", &entries)?;
            }
            let inset = Window::new(0.806, 0.817, 3.835, 3.850)?;
            let gap = min_gap(&set, &inset, &cfg2)?;
            let mut report = String::new();
            let _ = writeln!(report, "window: lambda in [0.806, 0.817], E in [3.835, 3.850]");
            let _ = writeln!(report, "lambda_star = {}", g17(gap.lambda_star));
            let _ = writeln!(report, "gap = {}", g17(gap.gap));
            let _ = writeln!(report, "E_lower = {}", g17(gap.energies[0]));
            let _ = writeln!(report, "E_upper = {}", g17(gap.energies[1]));
            let _ = writeln!(report, "scan_step = {}", g17(gap.scan_step));
            let _ = writeln!(report, "samples = {}", gap.samples);
            fs::write(dir.join("gap.txt"), report)?;
            let (curves, vertices) = count_set(&set);
            let (markers, dev) = marker_stats(&set);
            Ok(FigureOutcome {
                name: "fig2",
                dir: dir.to_path_buf(),
                families: vec![("spectral curves at mu = 3.75".into(), curves)],
                vertices,
                markers,
                marker_baseline_dev: dev,
                gap: Some(gap),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: VerifyArgs, cfg: &ScanConfig) -> Result<(), CliError> {
    let mut all_passed = true;
    for r in acceptance::run_all() {
        println!("{r}");
        all_passed &= r.passed;
    }
    if args.suite == Suite::Full {
        let base = args
            .out_dir
            .unwrap_or_else(|| std::env::temp_dir().join("rabi-spectrum-verify"));
        for name in [
            FigureName::Fig1a,
            FigureName::Fig1b,
            FigureName::Fig1c,
            FigureName::Fig2,
        ] {
            let started = std::time::Instant::now();
            let dir = base.join(name.as_str());
            match build_figure(name, &dir, cfg, true) {
                Ok(o) => {
                    let (passed, detail) = check_figure(&o);
                    println!(
                        "figure {:5} [{}] {:6.2}s  {}",
                        o.name,
                        if passed { "PASS" } else { "FAIL" },
                        started.elapsed().as_secs_f64(),
                        detail
                    );
                    all_passed &= passed;
                }
                Err(e) => {
                    println!(
                        "figure {:5} [FAIL] {:6.2}s  {}",
                        name.as_str(),
                        started.elapsed().as_secs_f64(),
                        e.msg
                    );
                    all_passed = false;
                }
            }
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::numeric("verification failed"))
    }
}

fn check_figure(o: &FigureOutcome) -> (bool, String) {
    match o.name {
        "fig1a" => {
            let ok = o.families[0].1 >= 1 && o.vertices >= 50;
            (ok, format!("{} curves, {} vertices", o.families[0].1, o.vertices))
        }
        "fig1b" => {
            let (fc, jc) = (o.families[0].1, o.families[1].1);
            let ok = fc >= 1 && jc == 5;
            (ok, format!("{fc} matching curves, {jc} truncation ovals"))
        }
        "fig1c" => {
            let ok = o.families[0].1 >= 4 && o.markers >= 4 && o.marker_baseline_dev <= 1e-9;
            (
                ok,
                format!(
                    "{} curves, {} integer-x markers on baselines (dev {:.1e})",
                    o.families[0].1, o.markers, o.marker_baseline_dev
                ),
            )
        }
        "fig2" => match &o.gap {
            Some(g) => (
                g.gap > 0.0,
                format!("inset gap {:.4e} at lambda = {:.6}", g.gap, g.lambda_star),
            ),
            None => (false, "no gap report".into()),
        },
        _ => (false, "unknown figure".into()),
    }
}
