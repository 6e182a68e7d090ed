use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mollify::cli::{self, Command, Demo, EpsilonList, OutputFormat, RunConfig, SpeedBudget, DEFAULT_SAMPLES_PER_UNIT};
use mollify::geometry::Norm;

/// Smooth waypoint paths by mollification and check the result.
#[derive(Parser)]
#[command(name = "mollify", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Sample a mollified waypoint path with derivatives and curvature.
    Smooth {
        /// Waypoint document (JSON).
        input: PathBuf,
        #[command(flatten)]
        scale: Scale,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_UNIT)]
        samples_per_unit: usize,
        /// `table` (CSV) or `svg`.
        #[arg(long, default_value = "table")]
        format: OutputFormat,
        #[command(flatten)]
        out: Out,
    },
    /// Choose kernel scales for a curvature budget.
    Plan {
        input: PathBuf,
        #[arg(long)]
        kappa_max: Option<f64>,
        /// `v,r_min,r_max,v_max`.
        #[arg(long)]
        speed: Option<SpeedBudget>,
        #[arg(long)]
        refine: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Run verification checks on a waypoint file or demo, or summarise a report file.
    Analyze {
        #[arg(required_unless_present_any = ["demo", "reports"])]
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        demo: Option<Demo>,
        /// Existing check-report document to summarise.
        #[arg(long, conflicts_with_all = ["input", "demo"])]
        reports: Option<PathBuf>,
        #[command(flatten)]
        scale: Scale,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_UNIT)]
        samples_per_unit: usize,
        /// Norm for the length check: l1, l2 or inf.
        #[arg(long, default_value = "l2")]
        norm: Norm,
        #[command(flatten)]
        out: Out,
    },
    /// Generate a demonstration path: heart, cube, staircase or counterexample.
    Demo {
        name: Demo,
        /// Override the demo's default scales.
        #[arg(long)]
        eps: Option<EpsilonList>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_UNIT)]
        samples_per_unit: usize,
        #[arg(long, default_value = "table")]
        format: OutputFormat,
        /// Directory for the curve files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct Scale {
    /// One scale, or one per coordinate, comma separated.
    #[arg(long)]
    eps: Option<EpsilonList>,
    /// Curvature budget in 1/m.
    #[arg(long)]
    kappa_max: Option<f64>,
    /// `v,r_min,r_max,v_max`.
    #[arg(long)]
    speed: Option<SpeedBudget>,
    /// Refine the global scale against sampled curvature when the plan is not exact.
    #[arg(long)]
    refine: bool,
}

#[derive(Args)]
struct Out {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn apply_scale(config: &mut RunConfig, scale: Scale) {
    config.epsilons = scale.eps.map(|e| e.0);
    config.kappa_max = scale.kappa_max;
    config.speed = scale.speed;
    config.refine = scale.refine;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (config, output, out_dir) = match cli.command {
        Sub::Smooth {
            input,
            scale,
            samples_per_unit,
            format,
            out,
        } => {
            let mut c = RunConfig::new(Command::Smooth);
            c.input = Some(input);
            apply_scale(&mut c, scale);
            c.samples_per_unit = samples_per_unit;
            c.output_format = format;
            (c, out.output, None)
        }
        Sub::Plan {
            input,
            kappa_max,
            speed,
            refine,
            out,
        } => {
            let mut c = RunConfig::new(Command::Plan);
            c.input = Some(input);
            c.kappa_max = kappa_max;
            c.speed = speed;
            c.refine = refine;
            (c, out.output, None)
        }
        Sub::Analyze {
            input,
            demo,
            reports,
            scale,
            samples_per_unit,
            norm,
            out,
        } => {
            let mut c = RunConfig::new(Command::Analyze);
            c.input = input;
            c.demo = demo;
            c.reports = reports;
            apply_scale(&mut c, scale);
            c.samples_per_unit = samples_per_unit;
            c.norm = norm;
            (c, out.output, None)
        }
        Sub::Demo {
            name,
            eps,
            samples_per_unit,
            format,
            out_dir,
        } => {
            let mut c = RunConfig::new(Command::Demo);
            c.demo = Some(name);
            c.epsilons = eps.map(|e| e.0);
            c.samples_per_unit = samples_per_unit;
            c.output_format = format;
            (c, None, Some(out_dir))
        }
    };

    let outcome = match cli::run(&config) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("mollify: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(dir) = out_dir {
        if let Err(e) = std::fs::create_dir_all(&dir) {
            eprintln!("mollify: cannot create {}: {e}", dir.display());
            return ExitCode::from(1);
        }
        for a in &outcome.artifacts {
            let path = dir.join(&a.file_name);
            if let Err(e) = std::fs::write(&path, &a.contents) {
                eprintln!("mollify: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
    }
    let written = match output {
        Some(path) => std::fs::write(&path, &outcome.stdout),
        None => std::io::stdout().lock().write_all(outcome.stdout.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("mollify: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
