use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sun2_cli::commands::{self, status_word, write_atomic, EXIT_USAGE};
use sun2_cli::config::{ConfigError, RunConfig, DEFAULT_SEED};
use sun2_cli::{exit_code, CliError};

#[derive(Parser)]
#[command(
    name = "sun2",
    version,
    about = "Exact boson realizations of polynomial su(2) algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a realization and check its commutation relations.
    Verify(RunArgs),
    /// Build a realization and write its matrices as JSON.
    Export(RunArgs),
    /// Print the power-sum constants D_0..D_rmax.
    DeriveDr {
        #[arg(long, default_value_t = 4)]
        rmax: usize,
    },
    /// Verify every preset algebra across the four boson realizations.
    PresetSuite(SuiteArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// su2, su11, higgs[:c1,c3] or quadratic[:c0,c1,c2].
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Structure constants "c0,c1,...", each an integer or p/q.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// fock3, three_boson, two_boson_central, two_boson_lowering or single_boson.
    #[arg(long)]
    kind: Option<String>,
    /// Lambda, lambda or kappa for the reduced realizations.
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
    /// Occupation caps "N1,N2,N3".
    #[arg(long)]
    caps: Option<String>,
    /// Replacement for a3+ as "(p,q,coeff);..." terms coeff (a3+)^p a3^q.
    #[arg(long, allow_hyphen_values = true)]
    subst: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig, ConfigError> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let caps = self
            .caps
            .map(|text| {
                text.split(',')
                    .map(|t| t.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| ConfigError::Invalid {
                        field: "caps",
                        message: format!("{text:?}: {e}"),
                    })
            })
            .transpose()?;
        let flags = RunConfig {
            preset: self.preset,
            n: self.n,
            coeffs: self
                .coeffs
                .map(|c| c.split(',').map(|t| t.trim().to_owned()).collect()),
            kind: self.kind,
            param: self.param,
            caps,
            subst: self.subst,
            out: self.out,
            seed: self.seed,
        };
        Ok(base.overlay(flags))
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Verify(args) => {
            let cfg = args.into_config()?.resolve()?;
            let report = commands::verify(&cfg)?;
            emit(cfg.out.as_ref(), &report.to_json())?;
            let status = report.status();
            eprintln!("{} {}", cfg.kind.name(), status_word(status));
            Ok(exit_code(status))
        }
        Command::Export(args) => {
            let cfg = args.into_config()?.resolve()?;
            emit(cfg.out.as_ref(), &commands::export(&cfg)?)?;
            Ok(0)
        }
        Command::DeriveDr { rmax } => {
            print!("{}", commands::derive_dr_text(rmax)?);
            Ok(0)
        }
        Command::PresetSuite(args) => {
            let file = match &args.config {
                Some(path) => RunConfig::load(path)?,
                None => RunConfig::default(),
            };
            let seed = args.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
            let suite = commands::preset_suite(seed)?;
            print!("{}", suite.summary);
            if let Some(path) = args.out.or(file.out) {
                let mut text =
                    serde_json::to_string_pretty(&suite.reports).expect("reports serialize");
                text.push('\n');
                write_atomic(&path, &text)?;
            }
            Ok(exit_code(suite.status))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
