use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reltube::commutant::CommutantConfig;
use reltube::oracle::OracleConfig;
use reltube::report::{self, Report, RunConfig};
use reltube::{alpha, Error};

/// Relative tube algebras, half-braidings and α-induction counting checks.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
#[derive(Parser, Debug)]
#[command(name = "reltube", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Category: catalog name (vec_z2, vec_z3, vec_z2_twisted, fibonacci, ising) or JSON file.
    #[arg(long, global = true)]
    category: Option<String>,

    /// Comma-separated labels of the subcategory; the whole category by default.
    #[arg(long, global = true, value_delimiter = ',')]
    sub: Option<Vec<usize>>,

    /// Modular data: JSON file or `su2:k`.
    #[arg(long, global = true)]
    modular: Option<String>,

    /// Extension summary: JSON file or the catalog entry `e6`.
    #[arg(long, global = true)]
    extension: Option<String>,

    /// Validation and half-braiding tolerance.
    #[arg(long, global = true, env = "RELTUBE_TOL")]
    tol: Option<f64>,

    /// Eigenvalue gap separating central projections.
    #[arg(long, global = true, default_value_t = CommutantConfig::default().cluster_tol)]
    cluster_tol: f64,

    /// Singular-value threshold for numerical rank.
    #[arg(long, global = true, default_value_t = CommutantConfig::default().rank_tol)]
    rank_tol: f64,

    /// Seed for the random central element and the oracle starts.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Cross-check block counts against direct solutions of the half-braiding equations.
    #[arg(long, global = true)]
    oracle: bool,

    /// Random starts per object for the oracle.
    #[arg(long, global = true, default_value_t = OracleConfig::default().starts)]
    oracle_starts: usize,

    /// Write every half-braiding component as annotated JSON to stderr.
    #[arg(long, global = true)]
    dump_morphisms: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Check fusion ring, pentagon, unitarity, dimensions and hexagon.
    Validate,
    /// Build the tube algebra and check its axioms.
    Tube,
    /// Center of the tube algebra and its minimal central projections.
    Center,
    /// Simple blocks, matrix units and half-braidings.
    Commutant,
    /// Fusion rules of the relative commutant.
    Fusion,
    /// Dimension and count identities for an extension of modular data.
    AlphaCheck,
    /// Compare tube blocks with direct solutions of the half-braiding equations.
    Oracle,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Format {
    Json,
    Text,
}

fn emit<R: Report>(r: &R, f: Format) -> ExitCode {
    match f {
        Format::Json => print!("{}", report::to_json(r)),
        Format::Text => print!("{}", report::to_text(r)),
    }
    if r.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> reltube::Result<ExitCode> {
    let f = cli.format;
    if let Command::AlphaCheck = cli.command {
        let md = alpha::resolve_modular(cli.modular.as_deref().ok_or_else(|| missing("--modular"))?)?;
        let ext = report::load_extension(cli.extension.as_deref().ok_or_else(|| missing("--extension"))?)?;
        return Ok(emit(&report::run_alpha(&md, &ext)?, f));
    }
    let cfg = RunConfig {
        category: cli.category.clone().ok_or_else(|| missing("--category"))?,
        sub: cli.sub.clone(),
        tol: cli.tol,
        commutant: CommutantConfig {
            cluster_tol: cli.cluster_tol,
            rank_tol: cli.rank_tol,
            seed: cli.seed,
            ..Default::default()
        },
        oracle: (cli.oracle || matches!(cli.command, Command::Oracle)).then(|| OracleConfig {
            starts: cli.oracle_starts,
            seed: cli.seed,
            ..Default::default()
        }),
    };
    if cli.dump_morphisms {
        let dump = report::dump_half_braidings(&cfg)?;
        eprintln!("{}", serde_json::to_string_pretty(&dump)?);
    }
    Ok(match cli.command {
        Command::Validate => emit(&report::run_validate(&cfg)?, f),
        Command::Tube => emit(&report::run_tube(&cfg)?, f),
        Command::Center => emit(&report::run_center(&cfg)?, f),
        Command::Commutant => emit(&report::run_commutant(&cfg)?, f),
        Command::Fusion => emit(&report::run_fusion(&cfg)?, f),
        Command::Oracle => emit(&report::run_oracle(&cfg)?, f),
        Command::AlphaCheck => unreachable!(),
    })
}

fn missing(flag: &str) -> Error {
    Error::Shape(format!("{flag} is required for this subcommand"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input() { 2 } else { 1 })
        }
    }
}
