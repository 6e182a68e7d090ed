//! Command implementations behind the `mollify` binary.
//!
//! Every command is a pure function of a [`RunConfig`] that returns an
//! [`Outcome`]: the text for standard output, any extra files (demos write
//! several curves), warnings, and the number of failed checks. The binary
//! only parses arguments, performs I/O and maps errors to exit codes.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::curvature::{
    corners, plan_epsilons, sampled_max_curvature, speed_to_curvature_budget, EpsilonPlan, PlanOptions,
};
use crate::error::Error;
use crate::geometry::{linspace, refine_length, Norm};
use crate::paths::{
    cube_path, heart_path, local_convexity_counterexample, parse_waypoints, staircase_path, ExtendedPath, Extension,
    WaypointPath,
};
use crate::smoothing::{MollifiedPath, SampleRow};
use crate::verify::{
    check_convexity_preservation, check_hull_enclosure, check_length_non_increase, check_local_convexity_window,
    check_monotonicity, check_strictly_below, reports_from_json, reports_to_json, CheckReport, Grid, Monotone,
};

pub const DEFAULT_SAMPLES_PER_UNIT: usize = 200;

/// Length tolerance used by demo summaries and `analyze`.
const LENGTH_TOLERANCE: f64 = 1e-6;
/// Hull slack used by `analyze`.
const HULL_SLACK: f64 = 1e-6;
/// Relative slack on the curvature budget when checking compliance.
const BUDGET_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Smooth,
    Plan,
    Analyze,
    Demo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "table" | "csv" => Ok(Self::Table),
            "svg" => Ok(Self::Svg),
            other => Err(format!("unknown output format '{other}' (expected table or svg)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demo {
    Heart,
    Cube,
    Staircase,
    /// The piecewise-linear function whose mollification is not locally convex.
    Counterexample,
}

impl FromStr for Demo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "heart" => Ok(Self::Heart),
            "cube" => Ok(Self::Cube),
            "staircase" => Ok(Self::Staircase),
            "counterexample" => Ok(Self::Counterexample),
            other => Err(format!(
                "unknown demo '{other}' (expected heart, cube, staircase or counterexample)"
            )),
        }
    }
}

/// Speed-dependent turning radius: `(v, r_min, r_max, v_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedBudget {
    pub v: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub v_max: f64,
}

impl SpeedBudget {
    pub fn curvature_budget(&self) -> crate::Result<f64> {
        speed_to_curvature_budget(self.v, self.r_min, self.r_max, self.v_max)
    }
}

impl FromStr for SpeedBudget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = parse_reals(s).map_err(|e| format!("speed: {e}"))?;
        match values[..] {
            [v, r_min, r_max, v_max] => Ok(Self { v, r_min, r_max, v_max }),
            _ => Err(format!(
                "speed expects v,r_min,r_max,v_max, got {} values",
                values.len()
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Waypoint document (`smooth`, `plan`, `analyze`).
    pub input: Option<PathBuf>,
    /// Check-report document to summarise (`analyze`).
    pub reports: Option<PathBuf>,
    pub demo: Option<Demo>,
    pub epsilons: Option<Vec<f64>>,
    pub kappa_max: Option<f64>,
    pub speed: Option<SpeedBudget>,
    pub samples_per_unit: usize,
    pub output_format: OutputFormat,
    /// Norm for length checks.
    pub norm: Norm,
    /// Bisect the global scale against sampled curvature when the plan is not exact.
    pub refine: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input: None,
            reports: None,
            demo: None,
            epsilons: None,
            kappa_max: None,
            speed: None,
            samples_per_unit: DEFAULT_SAMPLES_PER_UNIT,
            output_format: OutputFormat::Table,
            norm: Norm::L2,
            refine: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A file produced alongside standard output.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub artifacts: Vec<Artifact>,
    pub warnings: Vec<String>,
    pub failed_checks: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failed_checks > 0 {
            3
        } else {
            0
        }
    }
}

/// Comma-separated reals, e.g. `0.2,0.8`.
fn parse_reals(text: &str) -> Result<Vec<f64>, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err("empty list".into());
    }
    trimmed
        .split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<f64>()
                .map_err(|_| format!("'{part}' is not a number"))
                .and_then(|x| {
                    if x.is_finite() {
                        Ok(x)
                    } else {
                        Err(format!("'{part}' is not finite"))
                    }
                })
        })
        .collect()
}

/// Parses a comma-separated list of positive, finite kernel scales.
pub fn parse_epsilon_list(text: &str) -> crate::Result<Vec<f64>> {
    let values = parse_reals(text).map_err(|e| Error::Input(format!("epsilon list: {e}")))?;
    if let Some(bad) = values.iter().find(|&&x| x <= 0.0) {
        return Err(Error::Input(format!(
            "epsilon list: scales must be positive, got {bad}"
        )));
    }
    Ok(values)
}

/// A parsed `--eps` argument.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonList(pub Vec<f64>);

impl FromStr for EpsilonList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_epsilon_list(s).map(Self).map_err(|e| e.to_string())
    }
}

pub fn run(config: &RunConfig) -> CliResult<Outcome> {
    match config.command {
        Command::Smooth => run_smooth(config),
        Command::Plan => run_plan(config),
        Command::Analyze => run_analyze(config),
        Command::Demo => run_demo(config),
    }
}

fn read_waypoints(config: &RunConfig) -> CliResult<WaypointPath> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| CliError::Input("a waypoint file is required".into()))?;
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_waypoints(&text)?)
}

fn check_samples(config: &RunConfig) -> CliResult<()> {
    if config.samples_per_unit == 0 {
        return Err(CliError::Input("samples per unit must be positive".into()));
    }
    Ok(())
}

/// Curvature budget from `--kappa-max` or `--speed`, if either was given.
fn curvature_budget(config: &RunConfig) -> CliResult<Option<f64>> {
    match (config.kappa_max, config.speed) {
        (Some(_), Some(_)) => Err(CliError::Input(
            "give either a curvature budget or a speed, not both".into(),
        )),
        (Some(k), None) if !(k > 0.0 && k.is_finite()) => {
            Err(CliError::Input(format!("curvature budget must be positive, got {k}")))
        }
        (Some(k), None) => Ok(Some(k)),
        (None, Some(s)) => Ok(Some(s.curvature_budget()?)),
        (None, None) => Ok(None),
    }
}

fn plan_options(config: &RunConfig) -> PlanOptions {
    PlanOptions {
        refine: config.refine,
        ..PlanOptions::default()
    }
}

/// Kernel scales from exactly one of the three sources, plus the plan if one was made.
fn resolve_epsilons(config: &RunConfig, path: &WaypointPath) -> CliResult<(Vec<f64>, Option<EpsilonPlan>)> {
    let budget = curvature_budget(config)?;
    match (&config.epsilons, budget) {
        (Some(_), Some(_)) => Err(CliError::Input(
            "give exactly one of --eps, --kappa-max or --speed".into(),
        )),
        (None, None) => Err(CliError::Input(
            "one of --eps, --kappa-max or --speed is required".into(),
        )),
        (Some(eps), None) => {
            let eps = match eps.len() {
                1 => vec![eps[0]; path.dimension()],
                n if n == path.dimension() => eps.clone(),
                n => {
                    return Err(CliError::Input(format!(
                        "expected 1 or {} scales, got {n}",
                        path.dimension()
                    )))
                }
            };
            if let Some(bad) = eps.iter().find(|&&e| !(e > 0.0 && e.is_finite())) {
                return Err(CliError::Input(format!("scales must be positive, got {bad}")));
            }
            Ok((eps, None))
        }
        (None, Some(kappa)) => {
            let plan = plan_epsilons(path, kappa, &plan_options(config))?;
            Ok((vec![plan.global_epsilon; path.dimension()], Some(plan)))
        }
    }
}

fn sample_count(span: f64, per_unit: usize) -> usize {
    ((span * per_unit as f64).ceil() as usize + 1).max(2)
}

fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x}")
    }
}

const AXES: [&str; 3] = ["x", "y", "z"];

/// Header `t,x,y[,z],dx,dy[,dz],kappa` and one row per sample.
pub fn samples_table(rows: &[SampleRow], dimension: usize) -> String {
    let mut out = String::from("t");
    for axis in &AXES[..dimension] {
        write!(out, ",{axis}").unwrap();
    }
    for axis in &AXES[..dimension] {
        write!(out, ",d{axis}").unwrap();
    }
    out.push_str(",kappa\n");
    for row in rows {
        out.push_str(&fmt_real(row.t));
        for v in row.position.iter().chain(&row.velocity) {
            out.push(',');
            out.push_str(&fmt_real(*v));
        }
        out.push(',');
        out.push_str(&fmt_real(row.curvature.unwrap_or(f64::NAN)));
        out.push('\n');
    }
    out
}

/// Header `t,x,y[,z]` for a source curve.
fn positions_table(ts: &[f64], points: &[Vec<f64>]) -> String {
    let dimension = points.first().map_or(0, Vec::len);
    let mut out = String::from("t");
    for axis in &AXES[..dimension] {
        write!(out, ",{axis}").unwrap();
    }
    out.push('\n');
    for (t, p) in ts.iter().zip(points) {
        out.push_str(&fmt_real(*t));
        for v in p {
            out.push(',');
            out.push_str(&fmt_real(*v));
        }
        out.push('\n');
    }
    out
}

fn svg_polyline(points: &[[f64; 2]], colour: &str, width: f64) -> String {
    let coords = points
        .iter()
        .map(|p| format!("{:.4},{:.4}", p[0], p[1]))
        .collect::<Vec<_>>()
        .join(" ");
    format!("  <polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"{width}\" points=\"{coords}\"/>\n")
}

/// Source polyline, mollified curve and per-corner curvature labels in the
/// `x`-`y` plane (3D inputs are projected).
pub fn render_svg(source: &[Vec<f64>], smooth: &[Vec<f64>], labels: &[(Vec<f64>, f64)]) -> String {
    const SIZE: f64 = 600.0;
    const MARGIN: f64 = 30.0;
    let all = source.iter().chain(smooth).chain(labels.iter().map(|(p, _)| p));
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in all {
        for c in 0..2 {
            lo[c] = lo[c].min(p[c]);
            hi[c] = hi[c].max(p[c]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let map = |p: &[f64]| [MARGIN + (p[0] - lo[0]) * scale, SIZE - MARGIN - (p[1] - lo[1]) * scale];
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&svg_polyline(
        &source.iter().map(|p| map(p)).collect::<Vec<_>>(),
        "#888888",
        1.0,
    ));
    out.push_str(&svg_polyline(
        &smooth.iter().map(|p| map(p)).collect::<Vec<_>>(),
        "#c0392b",
        2.0,
    ));
    for (p, kappa) in labels {
        let [x, y] = map(p);
        writeln!(out, "  <circle cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"3\" fill=\"#2c3e50\"/>").unwrap();
        writeln!(
            out,
            "  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"11\" font-family=\"monospace\">κ={}</text>",
            x + 5.0,
            y - 5.0,
            format_args!("{kappa:.4}")
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Samples the mollified waypoint path and emits a table or an SVG.
pub fn run_smooth(config: &RunConfig) -> CliResult<Outcome> {
    check_samples(config)?;
    let path = read_waypoints(config)?;
    let (eps, plan) = resolve_epsilons(config, &path)?;
    let mollified = MollifiedPath::new(ExtendedPath::natural(path.clone())?, &eps)?;
    let end = path.parameter_end();
    let ts = linspace(0.0, end, sample_count(end, config.samples_per_unit));
    let rows = mollified.sample_with_derivatives(&ts)?;
    let mut outcome = Outcome {
        warnings: plan.map(|p| p.warnings).unwrap_or_default(),
        ..Outcome::default()
    };
    outcome.stdout = match config.output_format {
        OutputFormat::Table => samples_table(&rows, path.dimension()),
        OutputFormat::Svg => {
            let labels = corners(&path)?
                .iter()
                .map(|c| {
                    let k = c.knot;
                    let kappa = mollified.curvature(k)?;
                    Ok((path.eval(k), kappa))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let mut source: Vec<Vec<f64>> = path.points().to_vec();
            if path.is_closed() {
                source.push(path.points()[0].clone());
            }
            let smooth: Vec<Vec<f64>> = rows.into_iter().map(|r| r.position).collect();
            render_svg(&source, &smooth, &labels)
        }
    };
    Ok(outcome)
}

/// Per-corner scales for the curvature budget as a table with trailer lines.
pub fn run_plan(config: &RunConfig) -> CliResult<Outcome> {
    let path = read_waypoints(config)?;
    if config.epsilons.is_some() {
        return Err(CliError::Input("plan takes --kappa-max or --speed, not --eps".into()));
    }
    let kappa =
        curvature_budget(config)?.ok_or_else(|| CliError::Input("plan requires --kappa-max or --speed".into()))?;
    let plan = plan_epsilons(&path, kappa, &plan_options(config))?;
    Ok(Outcome {
        stdout: plan_table(&plan),
        warnings: plan.warnings.clone(),
        ..Outcome::default()
    })
}

pub fn plan_table(plan: &EpsilonPlan) -> String {
    let mut out = String::from("corner_index,epsilon,bound\n");
    for c in &plan.per_corner {
        writeln!(out, "{},{},{}", c.index, fmt_real(c.epsilon), fmt_real(c.bound)).unwrap();
    }
    writeln!(out, "global_epsilon,{}", fmt_real(plan.global_epsilon)).unwrap();
    writeln!(out, "exact,{}", plan.exact).unwrap();
    for w in &plan.warnings {
        writeln!(out, "warning,\"{}\"", w.replace('"', "'")).unwrap();
    }
    out
}

fn eps_label(eps: &[f64]) -> String {
    eps.iter().map(|e| format!("{e}")).collect::<Vec<_>>().join("_")
}

/// Default scales of each demo.
pub fn demo_epsilons(demo: Demo) -> Vec<Vec<f64>> {
    match demo {
        Demo::Heart => vec![vec![0.4, 0.4], vec![0.2, 0.8]],
        Demo::Cube => vec![vec![1.0; 3]],
        Demo::Staircase => vec![vec![0.5]],
        Demo::Counterexample => vec![vec![3.2], vec![0.45]],
    }
}

const STAIRCASE_STEPS: usize = 4;

fn demo_source(demo: Demo) -> CliResult<ExtendedPath> {
    Ok(match demo {
        Demo::Heart => ExtendedPath::natural(heart_path())?,
        Demo::Cube => ExtendedPath::natural(cube_path())?,
        Demo::Staircase => ExtendedPath::new(staircase_path(STAIRCASE_STEPS), Extension::Clamp)?,
        Demo::Counterexample => ExtendedPath::new(local_convexity_counterexample(), Extension::Clamp)?,
    })
}

/// Parameter interval each demo is sampled over.
fn demo_window(demo: Demo) -> (f64, f64) {
    match demo {
        Demo::Heart => (0.0, std::f64::consts::TAU),
        Demo::Cube => (0.0, (crate::paths::CUBE_TOUR.len() - 1) as f64),
        Demo::Staircase => (-1.0, STAIRCASE_STEPS as f64 + 1.0),
        Demo::Counterexample => (-1.0, 1.5),
    }
}

fn demo_name(demo: Demo) -> &'static str {
    match demo {
        Demo::Heart => "heart",
        Demo::Cube => "cube",
        Demo::Staircase => "staircase",
        Demo::Counterexample => "counterexample",
    }
}

/// Writes source and mollified curves of a demo and a length summary.
pub fn run_demo(config: &RunConfig) -> CliResult<Outcome> {
    check_samples(config)?;
    let demo = config
        .demo
        .ok_or_else(|| CliError::Input("demo requires a name".into()))?;
    let name = demo_name(demo);
    let source = demo_source(demo)?;
    let (a, b) = demo_window(demo);
    let ts = linspace(a, b, sample_count(b - a, config.samples_per_unit));
    let source_points: Vec<Vec<f64>> = ts.iter().map(|&t| source.eval(t)).collect();
    let settings = match &config.epsilons {
        Some(eps) => vec![eps.clone()],
        None => demo_epsilons(demo),
    };
    let norm = match demo {
        Demo::Heart => Norm::L1,
        _ => Norm::L2,
    };
    let mut outcome = Outcome::default();
    outcome.artifacts.push(Artifact {
        file_name: format!("{name}_source.csv"),
        contents: positions_table(&ts, &source_points),
    });
    let mut summary = String::from("curve,norm,length\n");
    if source.dimension() >= 2 {
        let length = refine_length(&source, a, b, norm, LENGTH_TOLERANCE)?;
        writeln!(summary, "{name}_source,{},{length:.6}", norm_label(norm)).unwrap();
    }
    for eps in settings {
        let eps = if eps.len() == 1 {
            vec![eps[0]; source.dimension()]
        } else {
            eps
        };
        let mollified = MollifiedPath::new(source.clone(), &eps)?;
        let label = format!("{name}_eps_{}", eps_label(&eps));
        let rows = mollified.sample_with_derivatives(&ts)?;
        let contents = match (config.output_format, source.dimension()) {
            (OutputFormat::Svg, d) if d >= 2 => {
                let smooth: Vec<Vec<f64>> = rows.iter().map(|r| r.position.clone()).collect();
                outcome.artifacts.push(Artifact {
                    file_name: format!("{label}.svg"),
                    contents: render_svg(&source_points, &smooth, &[]),
                });
                samples_table(&rows, d)
            }
            (_, 1) => scalar_table(&rows, &source_points),
            (_, d) => samples_table(&rows, d),
        };
        outcome.artifacts.push(Artifact {
            file_name: format!("{label}.csv"),
            contents,
        });
        if source.dimension() >= 2 {
            let length = refine_length(&mollified, a, b, norm, LENGTH_TOLERANCE)?;
            writeln!(summary, "{label},{},{length:.6}", norm_label(norm)).unwrap();
        }
    }
    outcome.stdout = summary;
    Ok(outcome)
}

fn norm_label(norm: Norm) -> &'static str {
    match norm {
        Norm::L1 => "l1",
        Norm::L2 => "l2",
        Norm::LInf => "linf",
    }
}

/// `t,source,mollified,derivative` for scalar demos.
fn scalar_table(rows: &[SampleRow], source: &[Vec<f64>]) -> String {
    let mut out = String::from("t,source,mollified,derivative\n");
    for (row, f) in rows.iter().zip(source) {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_real(row.t),
            fmt_real(f[0]),
            fmt_real(row.position[0]),
            fmt_real(row.velocity[0])
        )
        .unwrap();
    }
    out
}

/// Runs the verification checks that apply to the input and reports them as JSON.
pub fn run_analyze(config: &RunConfig) -> CliResult<Outcome> {
    check_samples(config)?;
    let reports = if let Some(path) = &config.reports {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        reports_from_json(&text)?
    } else if let Some(demo) = config.demo {
        analyze_demo(config, demo)?
    } else {
        analyze_waypoints(config)?
    };
    Ok(Outcome {
        stdout: reports_to_json(&reports) + "\n",
        failed_checks: reports.iter().filter(|r| !r.passed).count(),
        ..Outcome::default()
    })
}

/// Enclosure is only guaranteed when every coordinate uses the same scale;
/// with distinct scales the mollified point need not be a convex combination.
fn hull_report(
    source: &ExtendedPath,
    mollified: &MollifiedPath,
    domain: (f64, f64),
    count: usize,
) -> CliResult<CheckReport> {
    let eps = mollified.epsilons();
    if eps.iter().any(|&e| e != eps[0]) {
        return Ok(CheckReport::skipped(
            "hull-enclosure",
            0,
            "enclosure needs one scale for every coordinate",
        ));
    }
    Ok(check_hull_enclosure(source, mollified, domain, count, HULL_SLACK)?)
}

fn analyze_waypoints(config: &RunConfig) -> CliResult<Vec<CheckReport>> {
    let path = read_waypoints(config)?;
    let (eps, _) = resolve_epsilons(config, &path)?;
    let budget = curvature_budget(config)?;
    let source = ExtendedPath::natural(path.clone())?;
    let mollified = MollifiedPath::new(source.clone(), &eps)?;
    let end = path.parameter_end();
    let count = sample_count(end, config.samples_per_unit);
    let mut reports = vec![
        hull_report(&source, &mollified, (0.0, end), count)?,
        check_length_non_increase(&source, &mollified, (0.0, end), config.norm, LENGTH_TOLERANCE)?,
    ];
    reports.push(match budget {
        Some(kappa) if eps.iter().all(|&e| e == eps[0]) => {
            let worst = sampled_max_curvature(&path, eps[0], config.samples_per_unit)?;
            CheckReport::new("curvature-budget", kappa * (1.0 + BUDGET_SLACK) - worst, count, 0.0)
                .with_detail(format!("max sampled curvature {worst:.6}, budget {kappa}"))
        }
        Some(_) => CheckReport::skipped("curvature-budget", 0, "budget checks need a uniform scale"),
        None => CheckReport::skipped("curvature-budget", 0, "no curvature budget given"),
    });
    Ok(reports)
}

fn analyze_demo(config: &RunConfig, demo: Demo) -> CliResult<Vec<CheckReport>> {
    let eps_settings = match &config.epsilons {
        Some(eps) => vec![eps.clone()],
        None => demo_epsilons(demo),
    };
    let source = demo_source(demo)?;
    let (a, b) = demo_window(demo);
    let count = sample_count(b - a, config.samples_per_unit);
    let mut reports = Vec::new();
    for eps in eps_settings {
        match demo {
            Demo::Heart | Demo::Cube => {
                let eps = if eps.len() == 1 {
                    vec![eps[0]; source.dimension()]
                } else {
                    eps
                };
                let mollified = MollifiedPath::new(source.clone(), &eps)?;
                reports.push(hull_report(&source, &mollified, (a, b), count)?);
                reports.push(check_length_non_increase(
                    &source,
                    &mollified,
                    (a, b),
                    config.norm,
                    LENGTH_TOLERANCE,
                )?);
            }
            Demo::Staircase => {
                let f = staircase_path(STAIRCASE_STEPS);
                let grid = Grid::new(a, b, count);
                reports.push(check_monotonicity(&f, eps[0], grid, Monotone::Increasing)?);
            }
            Demo::Counterexample => {
                let f = local_convexity_counterexample();
                // Windows on which the claim is tested: all of (-0.5, 0.5) at
                // large scales, the part left of the second kink otherwise.
                let window = if eps[0] >= 0.5 { (-0.5, 0.5) } else { (-0.5, 0.05) };
                reports.extend(check_local_convexity_window(&f, window, &eps[..1], 201)?);
                if eps[0] >= 0.5 {
                    reports.push(check_strictly_below(&f, eps[0], Grid::interior(-0.5, 0.5, 201))?);
                }
                reports.push(check_convexity_preservation(
                    &crate::paths::ParametricPath::scalar(f64::abs, crate::paths::Domain::EntireLine).with_kinks([0.0]),
                    eps[0],
                    Grid::new(-2.0, 2.0, 401),
                )?);
            }
        }
    }
    Ok(reports)
}
