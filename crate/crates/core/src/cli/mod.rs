//! Command-line front end: `split`, `sweep`, `table1` and `profile`.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, invalid
//! parameters, unreadable config, unwritable output), 2 for numerical failures.

mod output;

pub use output::{round12, Cell, Table};

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::Error;
use crate::exact::{exact_splitting_for, ExactOptions};
use crate::experiments::{
    extended_profiles, format_table1, potential_pair, quartic_profiles, run_sweep, shape_profiles,
    table1, wkb_crossings, GridSpec, MethodSet, SweepFamily, SweepRow, SweepSpec, QUARTIC_BARRIERS,
    SHAPE_SIGMA_RATIOS,
};
use crate::localization::splitting_localization;
use crate::models::{
    solve_parameters, ModelWarning, PotentialProfile, TwoGaussianModel, DEFAULT_MAX_SIGMA_RATIO,
};
use crate::wkb::{wkb_splitting_for, WkbOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

const UNITS: &str = "x in x0; energies in E_u = hbar^2/(2 m x0^2); U in k_B T";

#[derive(Debug, Parser)]
#[command(
    name = "tunnelsplit",
    version,
    about = "Tunneling splittings of symmetric double wells derived from equilibrium densities"
)]
pub struct Cli {
    /// Print the note on reduced units and exit
    #[arg(long)]
    pub unit_doc: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Splitting of one two-Gaussian model by the exact, localization and WKB methods
    Split(SplitArgs),
    /// Parameter sweep over a model family
    Sweep(SweepArgs),
    /// Parameter table of the extended model at dV/E_u = 30
    Table1(Table1Args),
    /// Tabulated potential profiles
    Profile(ProfileArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
    /// Plain text (table1 only)
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SimpleDu,
    FixedDv,
    QuarticDu,
}

impl From<Family> for SweepFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::SimpleDu => SweepFamily::SimpleDu,
            Family::FixedDv => SweepFamily::FixedDv,
            Family::QuarticDu => SweepFamily::QuarticDu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKindArg {
    /// Quartic-model dV/dU for several barriers
    Quartic,
    /// U and dV of one two-Gaussian model with their parabolic approximations
    Pair,
    /// alpha = 1 quantum potentials scaled by their barrier
    Shapes,
    /// Extended-model quantum potentials at dV/E_u = 30
    Extended,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (standard output when omitted)
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// TOML file with default option values; command-line flags take precedence
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverArgs {
    /// Relative convergence tolerance of the exact splitting
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest basis size of the exact solver
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Comma-separated methods: exact, localization, wkb
    #[arg(long)]
    pub methods: Option<String>,
    /// Accept sigma/x0 above 0.5
    #[arg(long)]
    pub allow_out_of_range: bool,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitArgs {
    /// Power of the Gaussian mixture (alpha >= 1)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Gaussian width, in the same length unit as --x0
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Half-distance between the Gaussian centers
    #[arg(long)]
    pub x0: Option<f64>,
    /// Mean-field barrier dU/k_BT of the alpha = 1 model
    #[arg(long)]
    pub du: Option<f64>,
    /// Quantum barrier dV/E_u
    #[arg(long)]
    pub dv: Option<f64>,
    /// Barrier width w/x0 (with --dv)
    #[arg(long)]
    pub width: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepArgs {
    /// Model family
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// dU range start:stop:n (simple-du and quartic-du)
    #[arg(long, allow_hyphen_values = true)]
    pub du: Option<String>,
    /// alpha range start:stop:n (fixed-dv)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Quantum barrier dV/E_u held fixed (fixed-dv)
    #[arg(long)]
    pub dv: Option<f64>,
    /// Number of points of the default range
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Table1Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProfileArgs {
    /// Profile family
    #[arg(long, value_enum)]
    pub kind: Option<ProfileKindArg>,
    /// Shorthand for --kind quartic
    #[arg(long)]
    pub quartic: bool,
    /// Barrier(s) dU: quartic list, or the alpha = 1 model for --kind pair
    #[arg(long, value_delimiter = ',')]
    pub du: Option<Vec<f64>>,
    /// alpha of the --kind pair model
    #[arg(long)]
    pub alpha: Option<f64>,
    /// sigma/x0 of the --kind pair model
    #[arg(long)]
    pub sigma: Option<f64>,
    /// sigma/x0 list for --kind shapes
    #[arg(long, value_delimiter = ',')]
    pub sigmas: Option<Vec<f64>>,
    /// Grid start:stop:n in x0 units
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Accept sigma/x0 above 0.5
    #[arg(long)]
    pub allow_out_of_range: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    split: Option<SplitArgs>,
    sweep: Option<SweepArgs>,
    table1: Option<Table1Args>,
    profile: Option<ProfileArgs>,
}

/// Failure classified by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Numerical(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(e) | Failure::Numerical(e) => format!("{e:#}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::WidthOutOfRange { .. } => Failure::Usage(e.into()),
            other => Failure::Numerical(other.into()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

fn io(e: anyhow::Error) -> Failure {
    Failure::Usage(e)
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code; diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}

pub fn execute(cli: Cli) -> CliResult<()> {
    if cli.unit_doc {
        return output::emit(&unit_doc(), None).map_err(io);
    }
    match cli.command {
        None => Err(usage("no subcommand given; see --help")),
        Some(Command::Split(a)) => {
            let cfg = load_config(a.out.config.as_deref())?.split.unwrap_or_default();
            cmd_split(merge_split(a, cfg))
        }
        Some(Command::Sweep(a)) => {
            let cfg = load_config(a.out.config.as_deref())?.sweep.unwrap_or_default();
            cmd_sweep(merge_sweep(a, cfg))
        }
        Some(Command::Table1(a)) => {
            let cfg = load_config(a.out.config.as_deref())?.table1.unwrap_or_default();
            cmd_table1(Table1Args { out: merge_out(a.out, cfg.out) })
        }
        Some(Command::Profile(a)) => {
            let cfg = load_config(a.out.config.as_deref())?.profile.unwrap_or_default();
            cmd_profile(merge_profile(a, cfg))
        }
    }
}

fn load_config(path: Option<&Path>) -> CliResult<ConfigFile> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))
        .map_err(io)?;
    toml::from_str(&text)
        .with_context(|| format!("parsing config {}", path.display()))
        .map_err(Failure::Usage)
}

fn merge_out(a: OutputArgs, c: OutputArgs) -> OutputArgs {
    OutputArgs {
        format: a.format.or(c.format),
        output: a.output.or(c.output),
        config: a.config,
    }
}

fn merge_solver(a: SolverArgs, c: SolverArgs) -> SolverArgs {
    SolverArgs {
        tol: a.tol.or(c.tol),
        n_max: a.n_max.or(c.n_max),
        methods: a.methods.or(c.methods),
        allow_out_of_range: a.allow_out_of_range || c.allow_out_of_range,
    }
}

fn merge_split(a: SplitArgs, c: SplitArgs) -> SplitArgs {
    SplitArgs {
        alpha: a.alpha.or(c.alpha),
        sigma: a.sigma.or(c.sigma),
        x0: a.x0.or(c.x0),
        du: a.du.or(c.du),
        dv: a.dv.or(c.dv),
        width: a.width.or(c.width),
        solver: merge_solver(a.solver, c.solver),
        out: merge_out(a.out, c.out),
    }
}

fn merge_sweep(a: SweepArgs, c: SweepArgs) -> SweepArgs {
    SweepArgs {
        family: a.family.or(c.family),
        du: a.du.or(c.du),
        alpha: a.alpha.or(c.alpha),
        dv: a.dv.or(c.dv),
        points: a.points.or(c.points),
        solver: merge_solver(a.solver, c.solver),
        out: merge_out(a.out, c.out),
    }
}

fn merge_profile(a: ProfileArgs, c: ProfileArgs) -> ProfileArgs {
    ProfileArgs {
        kind: a.kind.or(c.kind),
        quartic: a.quartic || c.quartic,
        du: a.du.or(c.du),
        alpha: a.alpha.or(c.alpha),
        sigma: a.sigma.or(c.sigma),
        sigmas: a.sigmas.or(c.sigmas),
        grid: a.grid.or(c.grid),
        allow_out_of_range: a.allow_out_of_range || c.allow_out_of_range,
        out: merge_out(a.out, c.out),
    }
}

fn exact_options(s: &SolverArgs) -> CliResult<ExactOptions> {
    let mut opts = ExactOptions::default();
    if let Some(t) = s.tol {
        if !(t > 0.0) {
            return Err(usage(format!("--tol must be positive, got {t}")));
        }
        opts.tol_rel = t;
    }
    if let Some(n) = s.n_max {
        if n < opts.n_start {
            return Err(usage(format!("--n-max must be at least {}, got {n}", opts.n_start)));
        }
        opts.n_max = n;
    }
    Ok(opts)
}

fn methods(s: &SolverArgs) -> CliResult<MethodSet> {
    match &s.methods {
        Some(m) => Ok(m.parse()?),
        None => Ok(MethodSet::ALL),
    }
}

fn render(table: &Table, format: Format) -> CliResult<String> {
    match format {
        Format::Csv => table.to_csv().map_err(Failure::Numerical),
        Format::Json => table.to_json().map_err(Failure::Numerical),
        Format::Text => Err(usage("text format is only available for table1")),
    }
}

fn warnings_text(w: &[ModelWarning]) -> String {
    w.iter()
        .map(|w| match w {
            ModelWarning::PoorSeparation { superposition } => format!("poor_separation(S={superposition:.3e})"),
            ModelWarning::ThirdMinimum { curvature_at_origin } => {
                format!("third_minimum(V''(0)={curvature_at_origin:.4e})")
            }
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn split_model(a: &SplitArgs) -> CliResult<TwoGaussianModel> {
    let allow = a.solver.allow_out_of_range;
    let model = match (a.dv, a.width, a.du, a.sigma) {
        (Some(dv), Some(w), None, None) => {
            if a.alpha.is_some() {
                return Err(usage("--alpha is determined by --dv and --width; drop one of them"));
            }
            solve_parameters(dv, w)?
        }
        (Some(dv), None, None, None) => TwoGaussianModel::for_quantum_barrier(dv, a.alpha.unwrap_or(1.0))?,
        (None, None, Some(du), None) => {
            if a.alpha.is_some_and(|al| al != 1.0) {
                return Err(usage("--du selects the alpha = 1 model"));
            }
            TwoGaussianModel::for_mean_field_barrier(du)?
        }
        (None, None, None, Some(sigma)) => {
            TwoGaussianModel::with_range_check(a.x0.unwrap_or(1.0), sigma, a.alpha.unwrap_or(1.0), !allow)?
        }
        (None, Some(_), _, _) => return Err(usage("--width needs --dv")),
        (None, None, None, None) => {
            return Err(usage("give --sigma [--alpha --x0], --du, --dv, or --dv with --width"))
        }
        _ => return Err(usage("conflicting model options: use one of --sigma, --du, --dv")),
    };
    if !allow && model.sigma_ratio() > DEFAULT_MAX_SIGMA_RATIO {
        return Err(usage(format!(
            "sigma/x0 = {:.4} outside the validated range (0, {DEFAULT_MAX_SIGMA_RATIO}]; pass --allow-out-of-range to proceed",
            model.sigma_ratio()
        )));
    }
    Ok(model)
}

pub fn cmd_split(a: SplitArgs) -> CliResult<()> {
    let model = split_model(&a)?;
    let opts = exact_options(&a.solver)?;
    let methods = methods(&a.solver)?;
    let exact = if methods.exact {
        Some(exact_splitting_for(&model, &opts)?)
    } else {
        None
    };
    let loc = if methods.localization {
        Some(splitting_localization(&model)?)
    } else {
        None
    };
    let wkb = if methods.wkb {
        Some(wkb_splitting_for(&model, &WkbOptions::default())?)
    } else {
        None
    };
    let heights = model.barrier_heights();
    let reference = exact.as_ref().map(|e| e.splitting);
    let rel = |v: Option<f64>| match (v, reference) {
        (Some(v), Some(r)) => Some((v - r) / r),
        _ => None,
    };
    let mut t = Table::new(&[
        "x0",
        "sigma",
        "alpha",
        "sigma_over_x0",
        "delta_u",
        "deltaV_over_Eu",
        "width_over_x0",
        "superposition",
        "curvature_origin",
        "curvature_minima",
        "exact",
        "exact_e2",
        "exact_n_basis",
        "exact_converged",
        "localization",
        "i_integral",
        "norm",
        "wkb",
        "wkb_action",
        "wkb_turning_point",
        "localization_rel_error",
        "wkb_rel_error",
        "warnings",
    ]);
    t.meta("command", "split").meta("units", UNITS);
    t.push(vec![
        model.x0().into(),
        model.sigma().into(),
        model.alpha().into(),
        model.sigma_ratio().into(),
        heights.mean_field.into(),
        heights.quantum.into(),
        model.barrier_width().ok().into(),
        model.superposition().into(),
        model.curvature_at_origin().into(),
        model.curvature_at_minima().into(),
        reference.into(),
        exact.as_ref().map(|e| e.e2).into(),
        Cell::Int(exact.as_ref().map(|e| e.n_basis_used as u64)),
        Cell::Bool(exact.as_ref().map(|e| e.converged)),
        loc.as_ref().map(|l| l.splitting).into(),
        loc.as_ref().map(|l| l.i_integral).into(),
        loc.as_ref().map(|l| l.norm).into(),
        wkb.as_ref().map(|w| w.splitting).into(),
        wkb.as_ref().map(|w| w.action).into(),
        wkb.as_ref().map(|w| w.turning_points.1).into(),
        rel(loc.as_ref().map(|l| l.splitting)).into(),
        rel(wkb.as_ref().map(|w| w.splitting)).into(),
        Cell::Text(warnings_text(model.warnings())),
    ]);
    let text = render(&t, a.out.format.unwrap_or(Format::Json))?;
    output::emit(&text, a.out.output.as_deref()).map_err(io)
}

fn sweep_spec(a: &SweepArgs) -> CliResult<SweepSpec> {
    let family: SweepFamily = a.family.ok_or_else(|| usage("--family is required"))?.into();
    let points = a.points.unwrap_or(40);
    let parse = |s: &str| s.parse::<GridSpec>().map_err(Failure::from);
    let explicit = match family {
        SweepFamily::FixedDv => {
            if a.du.is_some() {
                return Err(usage("fixed-dv sweeps over --alpha, not --du"));
            }
            a.alpha.as_deref().map(parse).transpose()?
        }
        _ => {
            if a.alpha.is_some() {
                return Err(usage(format!("{family} sweeps over --du, not --alpha")));
            }
            a.du.as_deref().map(parse).transpose()?
        }
    };
    let mut spec = match (family, explicit) {
        (SweepFamily::FixedDv, range) => {
            let dv = a.dv.ok_or_else(|| usage("fixed-dv sweep needs --dv"))?;
            match range {
                Some(r) => {
                    let mut s = SweepSpec::new(family, r);
                    s.delta_v = Some(dv);
                    s
                }
                None => SweepSpec::fixed_dv_default(dv, points)?,
            }
        }
        (SweepFamily::SimpleDu, None) => {
            let mut s = SweepSpec::simple_default();
            s.range = GridSpec::new(1.0, 12.0, points)?;
            s
        }
        (SweepFamily::QuarticDu, None) => SweepSpec::new(family, GridSpec::new(0.5, 5.0, points)?),
        (_, Some(r)) => SweepSpec::new(family, r),
    };
    if family != SweepFamily::FixedDv && a.dv.is_some() {
        return Err(usage(format!("--dv does not apply to {family}")));
    }
    spec.allow_out_of_range |= a.solver.allow_out_of_range;
    spec.methods = methods(&a.solver)?;
    spec.exact = exact_options(&a.solver)?;
    Ok(spec)
}

fn join_errors(r: &SweepRow) -> String {
    r.errors
        .iter()
        .map(|e| format!("{}: {}", e.method, e.error))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn sweep_table(spec: &SweepSpec, rows: &[SweepRow]) -> Table {
    let mut t = Table::new(&[
        "parameter",
        "x0",
        "sigma",
        "alpha",
        "delta_u",
        "delta_v",
        "width",
        "superposition",
        "exact",
        "exact_converged",
        "exact_n_basis",
        "localization",
        "wkb",
        "localization_rel_error",
        "wkb_rel_error",
        "warnings",
        "errors",
    ]);
    t.meta("command", "sweep")
        .meta("family", spec.family)
        .meta("parameter", spec.family.parameter())
        .meta("range", spec.range)
        .meta("units", UNITS);
    if let Some(dv) = spec.delta_v {
        t.meta("delta_v", dv);
    }
    if spec.methods.exact && spec.methods.wkb {
        let crossings: Vec<String> = wkb_crossings(rows).iter().map(|c| format!("{c:.4}")).collect();
        t.meta("wkb_error_zero_crossings_delta_u", crossings.join(";"));
    }
    for r in rows {
        t.push(vec![
            r.parameter.into(),
            r.x0.into(),
            r.sigma.into(),
            r.alpha.into(),
            r.delta_u.into(),
            r.delta_v.into(),
            r.width.into(),
            r.superposition.into(),
            r.exact.into(),
            Cell::Bool(r.exact_converged),
            Cell::Int(r.exact_n_basis.map(|n| n as u64)),
            r.localization.into(),
            r.wkb.into(),
            r.localization_rel_error.into(),
            r.wkb_rel_error.into(),
            Cell::Text(warnings_text(&r.warnings)),
            Cell::Text(join_errors(r)),
        ]);
    }
    t
}

pub fn cmd_sweep(a: SweepArgs) -> CliResult<()> {
    let spec = sweep_spec(&a)?;
    let rows = run_sweep(&spec)?;
    let text = render(&sweep_table(&spec, &rows), a.out.format.unwrap_or(Format::Csv))?;
    output::emit(&text, a.out.output.as_deref()).map_err(io)
}

pub fn cmd_table1(a: Table1Args) -> CliResult<()> {
    let rows = table1()?;
    let format = a.out.format.unwrap_or(Format::Text);
    let text = if format == Format::Text {
        format_table1(&rows)
    } else {
        let mut t = Table::new(&[
            "alpha",
            "sigma_over_x0",
            "delta_u",
            "curvature_origin",
            "curvature_minima",
            "width_over_x0",
        ]);
        t.meta("command", "table1").meta("deltaV_over_Eu", 30).meta("units", UNITS);
        for r in &rows {
            t.push(vec![
                r.alpha.into(),
                r.sigma_ratio.into(),
                r.delta_u.into(),
                r.curvature_origin.into(),
                r.curvature_minima.into(),
                r.width.into(),
            ]);
        }
        render(&t, format)?
    };
    output::emit(&text, a.out.output.as_deref()).map_err(io)
}

fn profile_table(kind: ProfileKindArg, grid: &GridSpec, profiles: &[PotentialProfile]) -> Table {
    let mut columns = vec!["x"];
    columns.extend(profiles.iter().map(|p| p.label.as_str()));
    let mut t = Table::new(&columns);
    t.meta("command", "profile")
        .meta("kind", format!("{kind:?}").to_lowercase())
        .meta("grid", grid)
        .meta("units", UNITS);
    for (i, x) in grid.points().into_iter().enumerate() {
        let mut row = vec![x.into()];
        row.extend(profiles.iter().map(|p| Cell::from(p.values[i])));
        t.push(row);
    }
    t
}

pub fn cmd_profile(a: ProfileArgs) -> CliResult<()> {
    let kind = match (a.kind, a.quartic) {
        (Some(k), false) => k,
        (None, true) | (Some(ProfileKindArg::Quartic), true) => ProfileKindArg::Quartic,
        (None, false) => return Err(usage("give --kind or --quartic")),
        (Some(_), true) => return Err(usage("--quartic conflicts with --kind")),
    };
    let grid: GridSpec = a.grid.as_deref().unwrap_or("-2:2:401").parse()?;
    let x = grid.points();
    let profiles = match kind {
        ProfileKindArg::Quartic => quartic_profiles(&x, a.du.as_deref().unwrap_or(&QUARTIC_BARRIERS))?,
        ProfileKindArg::Pair => {
            let model = match (a.du.as_deref(), a.sigma) {
                (Some([du]), None) => TwoGaussianModel::for_mean_field_barrier(*du)?,
                (None, Some(s)) => TwoGaussianModel::with_range_check(1.0, s, a.alpha.unwrap_or(1.0), !a.allow_out_of_range)?,
                _ => return Err(usage("--kind pair needs a single --du or --sigma [--alpha]")),
            };
            if !a.allow_out_of_range && model.sigma_ratio() > DEFAULT_MAX_SIGMA_RATIO {
                return Err(usage(format!(
                    "sigma/x0 = {:.4} outside the validated range; pass --allow-out-of-range",
                    model.sigma_ratio()
                )));
            }
            potential_pair(&model, &x)?
        }
        ProfileKindArg::Shapes => shape_profiles(&x, a.sigmas.as_deref().unwrap_or(&SHAPE_SIGMA_RATIOS))?,
        ProfileKindArg::Extended => extended_profiles(&x)?,
    };
    let text = render(&profile_table(kind, &grid, &profiles), a.out.format.unwrap_or(Format::Csv))?;
    output::emit(&text, a.out.output.as_deref()).map_err(io)
}

/// Reduced-unit conversion note, with the energy unit worked out for a
/// hydrogen atom whose two minima are 1 Å apart.
pub fn unit_doc() -> String {
    const HBAR: f64 = 1.054_571_817e-34; // J s
    const H_MASS: f64 = 1.673_532_6e-27; // kg, hydrogen atom
    const AVOGADRO: f64 = 6.022_140_76e23;
    const HC_CM: f64 = 1.986_445_857e-23; // J cm
    let x0 = 0.5e-10;
    let eu = HBAR * HBAR / (2.0 * H_MASS * x0 * x0);
    format!(
        "Reduced units\n\
         \x20 positions        x / x0, with the two minima at x = ±x0\n\
         \x20 mean-field U     k_B T\n\
         \x20 energies         E_u = hbar^2 / (2 m x0^2)\n\
         \x20 curvatures       E_u / x0^2\n\
         In these units the shifted Hamiltonian reads -d^2/dx^2 + dV(x).\n\
         Example: a hydrogen atom moving between minima 1 Å apart (x0 = 0.5 Å) has\n\
         \x20 E_u = {eu:.3e} J = {:.2} kJ/mol = {:.1} cm^-1\n",
        eu * AVOGADRO / 1e3,
        eu / HC_CM
    )
}
