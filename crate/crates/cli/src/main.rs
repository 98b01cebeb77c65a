use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cuntz_cli::commands;
use cuntz_cli::doc::{parse_rational, parse_vector, Document};
use cuntz_cli::error::{CliError, Result};
use cuntz_cli::report::Report;
use cuntz_core::goodearl::MeasureSpec;

const DEFAULT_SEED: u64 = 20_080_101;

#[derive(Parser, Debug)]
#[command(
    name = "cuntz",
    version,
    about = "Exact computations with model Cuntz semigroups"
)]
struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Enumeration bound: box radius for group suites, coefficient-sum bound
    /// for strict-cone.
    #[arg(long, global = true)]
    bound: Option<i64>,
    /// Number of stages (the last dyadic stage index for vector targets).
    #[arg(long, global = true)]
    stages: Option<u32>,
    /// Write the emitted document (or table) to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add the elapsed wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare two classes in both directions.
    Compare {
        model: PathBuf,
        x: PathBuf,
        y: PathBuf,
    },
    /// Sum of two classes.
    Add {
        model: PathBuf,
        x: PathBuf,
        y: PathBuf,
    },
    /// Scale a soft class by a positive rational.
    Scale {
        model: PathBuf,
        x: PathBuf,
        lambda: String,
    },
    /// Soft counterpart of a class.
    Soften { model: PathBuf, x: PathBuf },
    /// A class z with x + z = y, if one exists.
    Complement {
        model: PathBuf,
        x: PathBuf,
        y: PathBuf,
    },
    /// The Grothendieck group of a model and cone membership of a vector.
    K0star {
        model: PathBuf,
        /// Comma-separated rationals.
        element: Option<String>,
    },
    /// Order-unit test in the order-difference cone.
    OrderUnit {
        model: PathBuf,
        /// Comma-separated rationals.
        element: String,
    },
    /// Run a property suite on a wmodel or group document.
    Check {
        doc: PathBuf,
        #[arg(long)]
        suite: String,
    },
    /// The model of an invariant, and optionally the induced morphism.
    Functor {
        invariant: PathBuf,
        #[arg(long)]
        morphism: Option<PathBuf>,
    },
    /// Validate a morphism document.
    MorphismCheck { morphism: PathBuf },
    /// Realize a vector or step-function target by an increasing sequence.
    Realize {
        target: PathBuf,
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Uniform grid size used to verify step targets.
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Spectrum, dimension function and cutdown of a diagonal element.
    Goodearl {
        element: PathBuf,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        against: Option<PathBuf>,
    },
}

fn load(p: &Path) -> Result<Document> {
    Document::load(p)
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Compare { model, x, y } => commands::compare(
            &load(model)?.into_wmodel()?,
            &load(x)?.into_class()?,
            &load(y)?.into_class()?,
        ),
        Command::Add { model, x, y } => commands::add(
            &load(model)?.into_wmodel()?,
            &load(x)?.into_class()?,
            &load(y)?.into_class()?,
        ),
        Command::Scale { model, x, lambda } => commands::scale(
            &load(model)?.into_wmodel()?,
            &load(x)?.into_class()?,
            &parse_rational(lambda)?,
        ),
        Command::Soften { model, x } => {
            commands::soften(&load(model)?.into_wmodel()?, &load(x)?.into_class()?)
        }
        Command::Complement { model, x, y } => commands::complement(
            &load(model)?.into_wmodel()?,
            &load(x)?.into_class()?,
            &load(y)?.into_class()?,
        ),
        Command::K0star { model, element } => {
            let d = element.as_deref().map(parse_vector).transpose()?;
            commands::k0star(&load(model)?.into_wmodel()?, d.as_deref())
        }
        Command::OrderUnit { model, element } => {
            commands::order_unit(&load(model)?.into_wmodel()?, &parse_vector(element)?)
        }
        Command::Check { doc, suite } => commands::check(load(doc)?, suite, cli.seed, cli.bound),
        Command::Functor {
            invariant,
            morphism,
        } => {
            let m = morphism.as_deref().map(load).transpose()?;
            commands::functor(&load(invariant)?, m)
        }
        Command::MorphismCheck { morphism } => commands::morphism_check(load(morphism)?),
        Command::Realize {
            target,
            schedule,
            grid,
        } => {
            let s = schedule.as_deref().map(load).transpose()?;
            commands::realize(load(target)?, s, cli.stages, *grid)
        }
        Command::Goodearl {
            element,
            measure,
            eps,
            against,
        } => {
            let a = load(element)?.into_element()?;
            let mu = match measure {
                Some(p) => load(p)?.into_measure()?,
                None => MeasureSpec::lebesgue(),
            };
            let eps = eps.as_deref().map(parse_rational).transpose()?;
            let b = against
                .as_deref()
                .map(|p| load(p)?.into_element())
                .transpose()?;
            commands::goodearl(&a, &mu, eps.as_ref(), b.as_ref())
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let body = match cli.format {
        Format::Json => report.render_json(),
        Format::Table => report.render_table(),
    };
    if let Some(path) = &cli.out {
        let artifact = match (&report.document, &report.table) {
            (Some(d), _) => d.to_json() + "\n",
            (None, Some(t)) => t.clone(),
            (None, None) => body.clone(),
        };
        std::fs::write(path, artifact)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{body}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| {
        run(&cli).and_then(|mut report| {
            if cli.timing {
                report.set("elapsed_ms", start.elapsed().as_millis() as u64);
            }
            emit(&cli, &report)?;
            Ok(report.exit_code)
        })
    });
    match outcome {
        Err(_) => ExitCode::from(1),
        Ok(Ok(code)) => ExitCode::from(code as u8),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
