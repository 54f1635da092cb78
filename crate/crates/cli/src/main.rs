mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use uga_core::baer::{AlgebraSpec, DEFAULT_BUDGET};
use uga_core::groups::{FamilySpec, GroupSpec};

use commands::{read_json, AlgebraSource, ConvergenceArgs, Failure};
use report::{render_pretty, render_pretty_error, ErrorBody, ErrorReport};

/// Regular-representation operator algebras over Q_p and the structure of
/// their group-algebra reductions.
#[derive(Parser, Debug)]
#[command(name = "uga", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Emit the JSON report (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Largest number of algebra elements an exhaustive scan may visit.
    #[arg(long, global = true, env = "UGA_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Include wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug)]
struct AlgebraInput {
    /// Group spec as JSON, or @file.
    #[arg(long, required_unless_present = "algebra", conflicts_with = "algebra")]
    group: Option<String>,
    /// Structure-constant algebra as JSON, or @file.
    #[arg(long)]
    algebra: Option<String>,
    /// Characteristic of the coefficient field (with --group).
    #[arg(long, required_unless_present = "algebra")]
    p: Option<u64>,
    /// Degree of the coefficient field over F_p.
    #[arg(long, default_value_t = 1)]
    k: u32,
}

impl AlgebraInput {
    fn source(&self) -> Result<AlgebraSource, Failure> {
        match (&self.group, &self.algebra, self.p) {
            (Some(g), None, Some(p)) => Ok(AlgebraSource::Group {
                spec: read_json("group", g)?,
                p,
                k: self.k,
            }),
            (None, Some(a), _) => Ok(AlgebraSource::Table(read_json::<AlgebraSpec>("algebra", a)?)),
            _ => Err(Failure::invalid("give --group with --p, or --algebra")),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy data of a finite group and the full structure pipeline for F_q[G].
    Analyze {
        /// Group spec as JSON, or @file, e.g. {"type":"symmetric","n":3}.
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Conjugacy-orbit probes deciding whether the operator algebra of an
    /// infinite group is a factor.
    FactorCheck {
        /// Family spec as JSON, or @file, e.g. {"type":"free","rank":2}.
        #[arg(long)]
        family: String,
        /// Comma-separated probe elements, e.g. a,b,ab or (1,2),(1 2 3).
        #[arg(long)]
        probes: String,
        /// Orbit size at which a class counts as large.
        #[arg(long, default_value_t = 1000)]
        cap: usize,
        /// Longest normal form explored during the orbit search.
        #[arg(long)]
        length_cap: Option<usize>,
    },
    /// Strong-convergence test for a sequence of operator matrices.
    Convergence {
        /// Built-in scenario: scalar-decay, column-shift or unbounded-growth.
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        scenario: Option<String>,
        /// Stage file as JSON, or @file.
        #[arg(long)]
        file: Option<String>,
        /// Number of stages in a built-in scenario.
        #[arg(long, default_value_t = 20)]
        stages: usize,
        /// First stage of the tail examined for column decay.
        #[arg(long)]
        tail: Option<usize>,
        /// Column-decay threshold, e.g. 1/625.
        #[arg(long, alias = "threshold")]
        eps: Option<String>,
        /// Comma-separated column indices to check.
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<usize>>,
    },
    /// Wedderburn block shapes of a semisimple algebra.
    Wedderburn {
        #[command(flatten)]
        input: AlgebraInput,
        /// Fail unless every block is a matrix algebra over the ground field.
        #[arg(long)]
        split: bool,
    },
    /// Baer property and Kaplansky type.
    Baer {
        #[command(flatten)]
        input: AlgebraInput,
        /// Check this many random annihilators instead of the full lattice.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::FactorCheck { .. } => "factor-check",
            Command::Convergence { .. } => "convergence",
            Command::Wedderburn { .. } => "wedderburn",
            Command::Baer { .. } => "baer",
        }
    }

    fn run(&self, budget: u64) -> commands::CmdResult {
        match self {
            Command::Analyze { group, p, k } => {
                commands::analyze(&read_json::<GroupSpec>("group", group)?, *p, *k, budget)
            }
            Command::FactorCheck {
                family,
                probes,
                cap,
                length_cap,
            } => commands::factor_check(
                &read_json::<FamilySpec>("family", family)?,
                &commands::split_probes(probes),
                *cap,
                *length_cap,
            ),
            Command::Convergence {
                scenario,
                file,
                stages,
                tail,
                eps,
                columns,
            } => commands::convergence(
                &ConvergenceArgs {
                    scenario: scenario.clone(),
                    file: file.clone(),
                    stages: *stages,
                    tail: *tail,
                    threshold: eps.clone(),
                    columns: columns.clone(),
                },
                budget,
            ),
            Command::Wedderburn { input, split } => commands::wedderburn(&input.source()?, *split, budget),
            Command::Baer { input, sample, seed } => {
                commands::baer(&input.source()?, sample.map(|n| (n, *seed)), budget)
            }
        }
    }
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let name = cli.command.name();
    match cli.command.run(cli.common.budget) {
        Ok(mut r) => {
            if cli.common.timing {
                r.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            if cli.common.pretty {
                emit(&render_pretty(&r));
            } else {
                emit(&json_line(&r));
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.kind.exit_code() as u8;
            let e = ErrorReport {
                command: name.to_string(),
                error: ErrorBody {
                    kind: f.kind,
                    message: f.message,
                },
            };
            if cli.common.pretty {
                eprint!("{}", render_pretty_error(&e));
            } else {
                emit(&json_line(&e));
            }
            ExitCode::from(code)
        }
    }
}
