use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mma::export::{self, ViewSelector};
use mma::scenario::{self, RunOptions, Scenario, ScenarioError, View};
use mma::{oracle, AgentId, SemanticsKind, TrustPolicy};

const EXIT_INVALID: u8 = 1;
const EXIT_ANNOUNCEMENT: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(name = "mma", version, about = "Multi-agent argumentation simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryView {
    Public,
    Local,
    TrustAdjusted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario's initial state.
    Validate { file: PathBuf },
    /// Replay the script and print a step table.
    Run {
        file: PathBuf,
        /// Write the trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Trust increments as HONEST,DISHONEST.
        #[arg(long)]
        policy: Option<TrustPolicy>,
        /// Record every agent's trust-adjusted public semantics per step.
        #[arg(long)]
        with_semantics: bool,
    },
    /// Print one semantics after a number of script steps.
    Query {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        at: usize,
        #[arg(long)]
        viewer: String,
        #[arg(long)]
        subject: Option<String>,
        #[arg(long, value_enum)]
        view: QueryView,
        /// Overrides the recorded semantics kind.
        #[arg(long)]
        semantics: Option<SemanticsKind>,
    },
    /// Render a frame of the state after a number of script steps.
    Export {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        at: usize,
        /// global, public, aware:E, scope:E, perceived:V:S, adjusted:V:S,
        /// public-model:V:S or trust-adjusted:E
        #[arg(long, default_value = "global")]
        view: ViewSelector,
        #[arg(long, value_enum, default_value = "graph")]
        format: Format,
    },
    /// Compare the solver against brute-force enumeration.
    OracleCheck {
        /// Largest random frame.
        #[arg(long, default_value_t = 10)]
        max_args: usize,
        /// Frames up to this size are checked exhaustively.
        #[arg(long, default_value_t = 3)]
        exhaustive: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn load(file: &PathBuf) -> Result<Scenario, ExitCode> {
    scenario::load_path(file).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(match e {
            ScenarioError::Invalid(_) | ScenarioError::TrustOutOfRange { .. } => EXIT_INVALID,
            _ => EXIT_PARSE,
        })
    })
}

fn state_at(sc: &Scenario, at: usize) -> Result<mma::MmaState, ExitCode> {
    scenario::state_at(sc, at).map_err(|e| {
        eprintln!("{e}");
        ExitCode::from(match e {
            ScenarioError::Step { .. } => EXIT_ANNOUNCEMENT,
            _ => EXIT_INVALID,
        })
    })
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("{e}");
    ExitCode::from(EXIT_INVALID)
}

fn execute(cli: Cli) -> Result<(), ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let sc = load(&file)?;
            println!(
                "{}: valid ({} agents, {} arguments, {} steps)",
                file.display(),
                sc.initial.agents.len(),
                sc.initial.global.args().len(),
                sc.script.len()
            );
        }
        Command::Run {
            file,
            trace,
            policy,
            with_semantics,
        } => {
            let sc = load(&file)?;
            let opts = RunOptions {
                policy,
                trust_adjusted: with_semantics,
            };
            let t = scenario::run_with(&sc, opts).map_err(fail)?;
            print!("{}", scenario::render_trace(&t));
            if let Some(path) = trace {
                std::fs::write(&path, t.to_json())
                    .map_err(|e| fail(format!("{}: {e}", path.display())))?;
            }
            if t.halted.is_some() {
                return Err(ExitCode::from(EXIT_ANNOUNCEMENT));
            }
        }
        Command::Query {
            file,
            at,
            viewer,
            subject,
            view,
            semantics,
        } => {
            let sc = load(&file)?;
            let m = state_at(&sc, at)?;
            let viewer = AgentId::new(viewer);
            let subject = subject.map(AgentId::new).unwrap_or_else(|| viewer.clone());
            let view = match view {
                QueryView::Public => View::Public,
                QueryView::Local => View::Local,
                QueryView::TrustAdjusted => View::TrustAdjusted,
            };
            let ext = scenario::query(&m, &viewer, &subject, view, semantics).map_err(fail)?;
            println!("{ext}");
        }
        Command::Export {
            file,
            at,
            view,
            format,
        } => {
            let sc = load(&file)?;
            let m = state_at(&sc, at)?;
            match format {
                Format::Graph => print!(
                    "{}",
                    export::export_graph(&m, &view, &sc.labels).map_err(fail)?
                ),
            }
        }
        Command::OracleCheck {
            max_args,
            exhaustive,
            seed,
            trials,
        } => {
            if max_args > oracle::MAX_ORACLE_ARGS {
                return Err(fail(format!(
                    "--max-args is at most {}",
                    oracle::MAX_ORACLE_ARGS
                )));
            }
            let report = oracle::run_check(exhaustive, max_args, trials, seed).map_err(fail)?;
            for d in &report.disagreements {
                println!(
                    "{} on {}: solver {} oracle {}",
                    d.kind, d.frame, d.solver, d.oracle
                );
            }
            println!(
                "{} frames checked, {} disagreements",
                report.frames,
                report.disagreements.len()
            );
            if !report.disagreements.is_empty() {
                return Err(ExitCode::from(EXIT_INVALID));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
