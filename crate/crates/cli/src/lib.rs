//! Command-line front end: `solve`, `sweep`, `check` and `plot` over JSON
//! instance files.
//!
//! Every command writes its report to a caller-supplied writer and returns
//! an [`Exit`] code, so the binary is a thin wrapper and tests can drive the
//! commands in-process.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use dubins_circle::export::{export_sweep_csv, render_svg, AlphaPlot, Marker, PathScene, SvgScene};
use dubins_circle::{
    refine_min, shortest_for_type, shortest_to_circle, sweep, CscPath, ExtremumKind,
    ExtremumReport, PathType, SweepResult,
};
use serde::Serialize;

pub mod check;
pub mod instance;

use check::{kind_name, run_checks, CheckSettings, Solver};
use instance::{random_instances, Instance, InstanceDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error(transparent)]
    Core(#[from] dubins_circle::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("serializing result: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    InputError = 1,
    AssumptionWarning = 2,
    CheckFailed = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeSelection {
    All,
    One(PathType),
}

impl TypeSelection {
    pub fn types(self) -> Vec<PathType> {
        match self {
            TypeSelection::All => PathType::ALL.to_vec(),
            TypeSelection::One(t) => vec![t],
        }
    }
}

fn parse_type(s: &str) -> Result<TypeSelection, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(TypeSelection::All);
    }
    s.parse::<PathType>()
        .map(TypeSelection::One)
        .map_err(|_| "expected one of LSL, RSL, RSR, LSR, all".to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "dubins-circle",
    version,
    about = "Shortest CSC paths from a pose to a target circle"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shortest path, over all types or for one type.
    Solve(SolveArgs),
    /// Path length on a uniform grid of arrival angles.
    Sweep(SweepArgs),
    /// Cross-check the solver against the sweep oracle.
    Check(CheckArgs),
    /// Draw per-type shortest paths or length curves.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long = "type", default_value = "all", value_parser = parse_type)]
    pub path_type: TypeSelection,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
    #[arg(long)]
    pub svg_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub instance: PathBuf,
    #[arg(long = "type", default_value = "all", value_parser = parse_type)]
    pub path_type: TypeSelection,
    #[arg(long, default_value_t = dubins_circle::sweep::DEFAULT_SAMPLES)]
    pub n: usize,
    /// With `--type all` the type is appended to the file stem.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
    #[arg(long)]
    pub svg_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["instance", "random"])))]
pub struct CheckArgs {
    pub instance: Option<PathBuf>,
    /// Number of random instances instead of a file.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "random")]
    pub seed: u64,
    #[arg(long, default_value_t = check::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Oracle grid size.
    #[arg(long, default_value_t = dubins_circle::sweep::DEFAULT_SAMPLES)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotMode {
    Paths,
    Alpha,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = PlotMode::Paths)]
    pub mode: PlotMode,
    #[arg(long = "type", default_value = "all", value_parser = parse_type)]
    pub path_type: TypeSelection,
    #[arg(long, default_value_t = dubins_circle::sweep::DEFAULT_SAMPLES)]
    pub n: usize,
}

/// Result document written by `solve --json-out`.
#[derive(Debug, Clone, Serialize)]
pub struct SolveDocument {
    pub path_type: PathType,
    pub alpha: f64,
    pub alpha_degrees: f64,
    pub length: f64,
    pub phi1: f64,
    pub ls: f64,
    pub phi2: f64,
    pub kind: ExtremumKind,
    pub tie: bool,
    pub assumption_warning: bool,
    pub path: CscPath,
    pub reports: Vec<ExtremumReport>,
}

fn warn(out: &mut dyn Write, warning: bool) -> io::Result<Exit> {
    if warning {
        writeln!(
            out,
            "warning: start lies within 4r of the circle; a CCC path may be shorter"
        )?;
        Ok(Exit::AssumptionWarning)
    } else {
        Ok(Exit::Ok)
    }
}

fn solve_document(inst: &Instance, sel: TypeSelection) -> Result<SolveDocument, CliError> {
    let (s, c) = (&inst.start, &inst.circle);
    let (report, reports, tie) = match sel {
        TypeSelection::All => {
            let sol = shortest_to_circle(s, c)?;
            let i = PathType::ALL
                .iter()
                .position(|&t| t == sol.path_type)
                .unwrap();
            (sol.per_type[i].clone(), sol.per_type, sol.tie)
        }
        TypeSelection::One(t) => {
            let rep = shortest_for_type(s, c, t);
            (rep.clone(), vec![rep], false)
        }
    };
    let (Some(best), Some(path)) = (report.best, report.best_path) else {
        return Err(dubins_circle::Error::AllInfeasible.into());
    };
    Ok(SolveDocument {
        path_type: report.path_type,
        alpha: best.alpha,
        alpha_degrees: best.alpha.to_degrees(),
        length: best.length,
        phi1: path.phi1,
        ls: path.straight,
        phi2: path.phi2,
        kind: best.kind,
        tie,
        assumption_warning: report.assumption_warning,
        path,
        reports,
    })
}

fn write_json(doc: &impl Serialize, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn path_scene(inst: &Instance, paths: Vec<CscPath>) -> SvgScene {
    let markers = paths
        .iter()
        .map(|p| Marker {
            position: p.end().position(),
            label: Some(p.path_type.to_string()),
        })
        .collect();
    SvgScene::Paths(PathScene {
        paths,
        circles: vec![inst.circle],
        start: Some(inst.start),
        markers,
        show_turn_circles: true,
    })
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let inst = InstanceDocument::load(&args.instance)?;
    let doc = solve_document(&inst, args.path_type)?;
    writeln!(out, "{}, length {:.12}", doc.path_type, doc.length)?;
    writeln!(
        out,
        "alpha: {:.12} rad ({:.9} deg)",
        doc.alpha, doc.alpha_degrees
    )?;
    writeln!(out, "phi1: {:.12}", doc.phi1)?;
    writeln!(out, "ls: {:.12}", doc.ls)?;
    writeln!(out, "phi2: {:.12}", doc.phi2)?;
    writeln!(out, "kind: {}", kind_name(doc.kind))?;
    if doc.tie {
        let tied: Vec<String> = doc
            .reports
            .iter()
            .filter(|r| r.tie)
            .map(|r| r.path_type.to_string())
            .collect();
        writeln!(out, "tie: {}", tied.join(" "))?;
    }
    if let Some(p) = &args.json_out {
        write_json(&doc, p)?;
    }
    if let Some(p) = &args.svg_out {
        render_svg(&path_scene(&inst, vec![doc.path]), p)?;
    }
    Ok(warn(out, doc.assumption_warning)?)
}

/// `out.csv` becomes `out_LSL.csv`.
pub fn suffixed(path: &Path, t: PathType) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{t}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{t}"),
    };
    path.with_file_name(name)
}

fn sweeps(inst: &Instance, sel: TypeSelection, n: usize) -> Result<Vec<SweepResult>, CliError> {
    sel.types()
        .into_iter()
        .map(|t| Ok(sweep(&inst.start, &inst.circle, t, n)?))
        .collect()
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let inst = InstanceDocument::load(&args.instance)?;
    let results = sweeps(&inst, args.path_type, args.n)?;
    for res in &results {
        let t = res.path_type;
        match res.argmin() {
            Some(k) => {
                let grid = res.samples[k];
                let refined = refine_min(res, &inst.start, &inst.circle)?;
                writeln!(
                    out,
                    "{t} grid min alpha {:.12} length {:.12}",
                    grid.alpha,
                    grid.length().unwrap()
                )?;
                writeln!(
                    out,
                    "{t} refined min alpha {:.12} length {:.12}",
                    refined.alpha, refined.length
                )?;
            }
            None => writeln!(out, "{t} infeasible for every alpha")?,
        }
        if let Some(p) = &args.csv_out {
            let dest = match args.path_type {
                TypeSelection::All => suffixed(p, t),
                TypeSelection::One(_) => p.clone(),
            };
            export_sweep_csv(res, &dest)?;
        }
    }
    if let Some(p) = &args.svg_out {
        render_svg(&SvgScene::AlphaPlot(AlphaPlot { curves: results }), p)?;
    }
    let warning = !dubins_circle::assumption_check(&inst.start, &inst.circle);
    Ok(warn(out, warning)?)
}

/// `check` with an arbitrary solver in place of the real one.
pub fn cmd_check_with(
    args: &CheckArgs,
    out: &mut dyn Write,
    solver: Solver,
) -> Result<Exit, CliError> {
    if !(args.tolerance.is_finite() && args.tolerance > 0.0) {
        return Err(CliError::Instance(format!(
            "--tolerance must be positive, got {}",
            args.tolerance
        )));
    }
    let instances = match (&args.instance, args.random) {
        (Some(p), _) => vec![InstanceDocument::load(p)?],
        (None, Some(n)) => {
            writeln!(out, "random instances: {n}, seed {}", args.seed)?;
            random_instances(n, args.seed)
        }
        (None, None) => return Err(CliError::Instance("no instance given".into())),
    };
    let settings = CheckSettings {
        tolerance: args.tolerance,
        sweep_samples: args.n,
    };
    if settings.sweep_samples < dubins_circle::sweep::MIN_SAMPLES {
        return Err(dubins_circle::Error::InvalidArgument(format!(
            "--n must be at least {}",
            dubins_circle::sweep::MIN_SAMPLES
        ))
        .into());
    }
    let report = run_checks(&instances, &settings, solver);
    report.write_table(out)?;
    Ok(if report.passed() {
        Exit::Ok
    } else {
        Exit::CheckFailed
    })
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    cmd_check_with(args, out, &shortest_for_type)
}

pub fn cmd_plot(args: &PlotArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let inst = InstanceDocument::load(&args.instance)?;
    let scene = match args.mode {
        PlotMode::Paths => {
            let paths: Vec<CscPath> = args
                .path_type
                .types()
                .into_iter()
                .filter_map(|t| shortest_for_type(&inst.start, &inst.circle, t).best_path)
                .collect();
            if paths.is_empty() {
                return Err(dubins_circle::Error::AllInfeasible.into());
            }
            path_scene(&inst, paths)
        }
        PlotMode::Alpha => SvgScene::AlphaPlot(AlphaPlot {
            curves: sweeps(&inst, args.path_type, args.n)?,
        }),
    };
    render_svg(&scene, &args.out)?;
    writeln!(out, "wrote {}", args.out.display())?;
    let warning = !dubins_circle::assumption_check(&inst.start, &inst.circle);
    Ok(warn(out, warning)?)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Exit, CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Plot(a) => cmd_plot(a, out),
    }
}

/// Parses `args` and runs the command. Usage errors and failures are
/// reported on `err` with exit code 1.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    Exit::Ok.code()
                }
                _ => {
                    let _ = write!(err, "{text}");
                    Exit::InputError.code()
                }
            };
        }
    };
    match run(&cli, out) {
        Ok(exit) => exit.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Exit::InputError.code()
        }
    }
}
