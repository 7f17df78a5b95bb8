//! `tropicaust`: command-line front-end of the tropical wave-front engine.
//!
//! Exit codes: 0 on success, 2 when the input is rejected, 1 when an internal
//! invariant breaks or a verification finds a violation.  Errors are written
//! to standard error as a JSON object.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tropicaust_core::json::error_to_json;
use tropicaust_core::svg::{render_svg, RenderSpec};
use tropicaust_core::toric::H2Class;
use tropicaust_core::{Error, Result};

use commands::Report;

#[derive(Parser)]
#[command(name = "tropicaust", version, about = "Exact tropical wave fronts, caustics and lattice trigonometry")]
struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write an SVG picture of the result to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, cotangent and caustic of a lattice angle.
    Angle {
        /// Two legs, e.g. "1,0;3,7".
        #[arg(long)]
        legs: String,
        /// Apex of the angle (default: the origin).
        #[arg(long)]
        apex: Option<String>,
    },
    /// Continued fractions of a rational in (0, 1).
    Contfrac {
        value: String,
        /// Also print the Hirzebruch–Jung chain of the corresponding angle.
        #[arg(long)]
        hj: bool,
    },
    /// The wave front of a domain at a given time.
    Evolve {
        /// Domain JSON: a file, "-" for stdin, or inline JSON.
        domain: String,
        #[arg(long, default_value = "0")]
        time: String,
    },
    /// Particles and collision events of the whole evolution.
    Trace { domain: String },
    /// The caustic, its Noether audit and the final collision type.
    Caustic { domain: String },
    /// Arrival time of the front at the given points.
    Series {
        domain: String,
        /// Points "x,y"; repeat the flag for several points.
        #[arg(long, required = true)]
        point: Vec<String>,
    },
    /// How far the domain can be evolved backwards.
    Age {
        domain: String,
        /// Evolve backwards by this time and print the result.
        #[arg(long)]
        back: Option<String>,
    },
    /// Dual fan, self-intersections and canonical class of the front.
    Toric {
        domain: String,
        #[arg(long, default_value = "0")]
        time: String,
        /// A closed class "λx,λy:a;…".
        #[arg(long)]
        class: Option<String>,
        /// Window "t0;t1" on which to check the area slope of the class.
        #[arg(long)]
        window: Option<String>,
    },
    /// Run every invariant check on a domain or on a random suite.
    Verify {
        domain: Option<String>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Render a domain with its caustic and fronts as SVG.
    Render {
        domain: Option<String>,
        /// Times "t1;t2;…" at which to draw the front.
        #[arg(long)]
        times: Option<String>,
        /// Write the sixteen reflexive star pictures into this directory.
        #[arg(long, value_name = "DIR")]
        reflexive: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Angle { legs, apex } => {
            commands::angle(input::legs(legs)?, apex.as_deref().map(input::point).transpose()?)
        }
        Command::Contfrac { value, hj } => commands::contfrac(&input::rational(value)?, *hj),
        Command::Evolve { domain, time } => commands::evolve(&input::domain(domain)?, &input::time(time)?),
        Command::Trace { domain } => commands::trace(&input::domain(domain)?),
        Command::Caustic { domain } => commands::caustic(&input::domain(domain)?),
        Command::Series { domain, point } => {
            let points = point.iter().map(|p| input::point(p)).collect::<Result<Vec<_>>>()?;
            commands::series(&input::domain(domain)?, &points)
        }
        Command::Age { domain, back } => {
            commands::age_cmd(&input::domain(domain)?, back.as_deref().map(input::time).transpose()?.as_ref())
        }
        Command::Toric { domain, time, class, window } => {
            let class = class.as_deref().map(H2Class::parse).transpose()?;
            let window = match window.as_deref().map(input::times).transpose()? {
                None => None,
                Some(ts) => match <[_; 2]>::try_from(ts) {
                    Ok([a, b]) => Some((a, b)),
                    Err(_) => return Err(Error::Parse("window must be \"t0;t1\"".into())),
                },
            };
            if window.is_some() && class.is_none() {
                return Err(Error::Invalid("--window needs --class".into()));
            }
            commands::toric(&input::domain(domain)?, &input::time(time)?, class.as_ref(), window)
        }
        Command::Verify { domain, suite, count } => match (domain, suite) {
            (Some(d), None) => commands::verify_one(&input::domain(d)?, cli.seed),
            (None, Some(Suite::Random)) => commands::verify_random(*count, cli.seed),
            _ => Err(Error::Invalid("give either a domain or --suite random".into())),
        },
        Command::Render { domain, times, reflexive } => match (domain, reflexive) {
            (None, Some(dir)) => commands::render_reflexive(dir),
            (Some(d), None) => {
                let ts = times.as_deref().map(input::times).transpose()?.unwrap_or_default();
                commands::render(&input::domain(d)?, &ts)
            }
            _ => Err(Error::Invalid("give either a domain or --reflexive DIR".into())),
        },
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("{}", error_to_json(e));
    ExitCode::from(if e.is_validation() { 2 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if let Some(path) = &cli.svg {
        let Some(scene) = &report.scene else {
            return fail(&Error::Invalid("this command has no picture".into()));
        };
        let written = render_svg(scene, &RenderSpec::from_env()).and_then(|svg| {
            std::fs::write(path, svg).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
        });
        if let Err(e) = written {
            return fail(&e);
        }
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
    } else {
        print!("{}", report.text);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
