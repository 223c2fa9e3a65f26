//! `modal-workbench`: run scripts, exhaustive sweeps and the bundled examples.
//!
//! Exit status: 0 when every assertion passed, 1 when some failed, 2 on a
//! parse, validation or usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modal_core::algebra::{DEFAULT_SAMPLES, MAX_ATOMS};
use modal_core::bundles::NAMES;
use modal_core::script::{run_source, Diagnostic, ExecConfig, Report, EXIT_INVALID, SCHEMA};
use modal_core::sweep::{sweep_seeded, SweepKind};
use modal_core::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "modal-workbench", version, about = "Exact workbench for modal operators on Boolean algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script.
    Run {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Write the graphs of `dot` queries to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Largest powerset the script may declare.
        #[arg(long, default_value_t = MAX_ATOMS)]
        max_atoms: usize,
    },
    /// Run an exhaustive equivalence suite.
    Sweep {
        /// pc-oracle, proper-oracle, raut-oracle, cover-oracle or axiom-frame.
        kind: String,
        /// Atoms, or points for axiom-frame.
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        json: bool,
        /// Seed for sampled suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List or run the bundled examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// Print the bundle names.
    List,
    /// Run one bundle, or all of them with `--all`.
    Run {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Witness budget for searches.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Random samples for certification on symbolic carriers.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

impl Common {
    fn config(&self, max_atoms: usize) -> ExecConfig {
        ExecConfig {
            seed: self.seed,
            budget: self.budget,
            samples: self.samples,
            max_atoms,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID as u8 } else { 0 });
        }
    };
    let status = match cli.command {
        Command::Run {
            file,
            common,
            dot,
            max_atoms,
        } => run_file(&file, &common, dot.as_ref(), max_atoms),
        Command::Sweep { kind, n, json, seed } => run_sweep(&kind, n, json, seed),
        Command::Examples { action } => match action {
            ExamplesAction::List => {
                for name in NAMES {
                    println!("{name}");
                }
                0
            }
            ExamplesAction::Run { name, all, common } => {
                let target = if all { "--all".to_string() } else { name.unwrap_or_default() };
                run_script(&format!("examples run {target}\n"), "<examples>", &common, None, MAX_ATOMS)
            }
        },
    };
    ExitCode::from(status as u8)
}

fn run_file(file: &PathBuf, common: &Common, dot: Option<&PathBuf>, max_atoms: usize) -> i32 {
    match fs::read_to_string(file) {
        Ok(src) => run_script(&src, &file.display().to_string(), common, dot, max_atoms),
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            EXIT_INVALID
        }
    }
}

fn run_script(src: &str, origin: &str, common: &Common, dot: Option<&PathBuf>, max_atoms: usize) -> i32 {
    match run_source(src, &common.config(max_atoms)) {
        Ok(report) => {
            if let Some(path) = dot {
                if let Err(e) = write_dot(&report, path) {
                    eprintln!("{}: {e}", path.display());
                    return EXIT_INVALID;
                }
            }
            if common.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            report.exit_status()
        }
        Err(d) => {
            report_diagnostic(&d, origin, common.json);
            EXIT_INVALID
        }
    }
}

fn write_dot(report: &Report, path: &PathBuf) -> std::io::Result<()> {
    fs::write(path, report.dot_outputs().concat())
}

fn report_diagnostic(d: &Diagnostic, origin: &str, json: bool) {
    if json {
        println!("{}", d.to_json());
    }
    eprintln!("{origin}:{d}");
}

fn run_sweep(kind: &str, n: usize, json: bool, seed: u64) -> i32 {
    let outcome = kind.parse::<SweepKind>().and_then(|k| sweep_seeded(k, n, seed));
    match outcome {
        Ok(report) => {
            if json {
                let mut value = serde_json::to_value(&report).expect("sweep report serializes");
                value["schema"] = SCHEMA.into();
                println!("{}", serde_json::to_string_pretty(&value).expect("json prints"));
            } else {
                println!("{report}");
            }
            if report.all_agree() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("sweep: {e}");
            EXIT_INVALID
        }
    }
}
