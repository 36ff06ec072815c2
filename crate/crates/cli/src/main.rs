use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rotweb_cli::{cmd_classify, cmd_compat, cmd_crosscheck, cmd_symmetry, cmd_tables, render_text, CliError, Outcome};

/// Classify rotationally symmetric conformal Killing tensors and the webs they define.
#[derive(Parser)]
#[command(name = "rotweb", version)]
struct Cli {
    /// Print the JSON report instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also compare against floating-point root counts.
    #[arg(long, global = true)]
    float_probe: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a parameter tuple or a binary quartic.
    Classify {
        /// Six rationals M33,L3,H,C33,D3,A33.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "quartic")]
        params: Option<String>,
        /// Five rationals M33,L3,H,D3,A33.
        #[arg(long, allow_hyphen_values = true)]
        quartic: Option<String>,
    },
    /// Reproduce the catalog of webs and its equivalences.
    Tables {
        /// Override a catalog constant, e.g. `a=2` or `k=1/3`.
        #[arg(long = "scale")]
        scales: Vec<String>,
    },
    /// Solve the compatibility condition for a potential.
    Compat {
        /// Rational expression in x, y, z and named constants.
        #[arg(long, allow_hyphen_values = true)]
        potential: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        energy: String,
        /// Named constant, e.g. `c=1`.
        #[arg(long = "const")]
        constants: Vec<String>,
    },
    /// Scan CKTs with a prescribed symmetry under a generator.
    Symmetry {
        /// X1-3, R1-3, D or I1-3.
        generator: String,
        /// `0` for invariance, `const` for all constant eigenvalues.
        #[arg(long, default_value = "0")]
        h: String,
    },
    /// Randomized cross-validation of the classifiers.
    Crosscheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per web type.
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify { params, quartic } => cmd_classify(params.as_deref(), quartic.as_deref(), cli.float_probe),
        Command::Tables { scales } => cmd_tables(scales),
        Command::Compat { potential, energy, constants } => cmd_compat(potential, energy, constants),
        Command::Symmetry { generator, h } => cmd_symmetry(generator, h),
        Command::Crosscheck { seed, count } => cmd_crosscheck(*seed, *count, cli.float_probe),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = if cli.json {
                let mut json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
                json.push('\n');
                json
            } else {
                render_text(&outcome.report)
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code as u8)
        }
    }
}
