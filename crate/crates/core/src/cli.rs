//! The `inconlog` command line.
//!
//! Exit codes: 0 success (or "yes"), 1 "no", 2 parse or validation error,
//! 3 a budget or cap was exceeded.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::af::{linear_framework, rule4_outcomes};
use crate::arguments::{supports_in, trace};
use crate::bridges::atms::{atms_labels, atms_nogoods, parse_atms};
use crate::error::{Error, Result};
use crate::extensions::{all_extensions, credulous_entails, skeptical_entails};
use crate::formula::{parse_formula, Formula};
use crate::semantics::{conditional, preferred_models_over, revise};
use crate::theory_file::{parse_theory, print_theory};
use crate::{Limits, PreparedTheory};

#[derive(Debug, Parser)]
#[command(
    name = "inconlog",
    version,
    about = "Reasoning with inconsistent, reliability-ordered premises"
)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Caps {
    /// Atoms up to which truth tables are used
    #[arg(long, global = true, env = "INCONLOG_MAX_ATOMS", default_value_t = crate::DEFAULT_MAX_ATOMS)]
    max_atoms: usize,
    /// Linear extensions enumerated before giving up
    #[arg(long, global = true, env = "INCONLOG_MAX_EXTENSIONS", default_value_t = crate::DEFAULT_MAX_EXTENSIONS)]
    max_extensions: usize,
    /// Largest premise set searched for minimal unsatisfiable subsets
    #[arg(long, global = true, env = "INCONLOG_MUS_BUDGET", default_value_t = crate::DEFAULT_MUS_BUDGET)]
    mus_budget: usize,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            max_atoms: self.max_atoms,
            max_extensions: self.max_extensions,
            mus_budget: self.mus_budget,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a theory file
    Check { file: PathBuf },
    /// List the most reliable consistent sets
    Extensions { file: PathBuf },
    /// Skeptical (or credulous) consequence
    Entails {
        file: PathBuf,
        formula: String,
        #[arg(long)]
        credulous: bool,
    },
    /// List the preferred models
    Models { file: PathBuf },
    /// Decide the conditional ALPHA |~ BETA
    Conditional {
        file: PathBuf,
        alpha: String,
        beta: String,
    },
    /// Revise by ALPHA and write the resulting theory
    Revise {
        file: PathBuf,
        alpha: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Export the argumentation framework
    Af {
        file: PathBuf,
        /// Use the partial-order framework and list its stable extensions
        #[arg(long)]
        rule4: bool,
        /// Also list ignored extensions
        #[arg(long, requires = "rule4")]
        show_ignored: bool,
    },
    /// Minimal supporting arguments for FORMULA in each believed set
    Argue {
        file: PathBuf,
        formula: String,
        /// Print the argument saturation log for the first linear extension
        #[arg(long)]
        trace: bool,
    },
    /// ATMS labels or nogoods
    Atms {
        file: PathBuf,
        #[arg(long, conflicts_with = "nogoods", required_unless_present = "nogoods")]
        node: Option<String>,
        #[arg(long)]
        nogoods: bool,
    },
}

/// What a run printed and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn answer(yes: bool) -> Self {
        Outcome {
            code: if yes { 0 } else { 1 },
            stdout: if yes { "yes\n" } else { "no\n" }.to_string(),
            stderr: String::new(),
        }
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return Outcome {
                code,
                stdout: if code == 0 {
                    text.clone()
                } else {
                    String::new()
                },
                stderr: if code == 0 { String::new() } else { text },
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: if e.is_budget() { 3 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {}\n", first_line(&e)),
        },
    }
}

fn first_line(e: &Error) -> String {
    match e {
        Error::InvalidTheory(report) => report
            .to_string()
            .lines()
            .next()
            .unwrap_or("invalid theory")
            .to_string(),
        other => other.to_string().lines().next().unwrap_or("").to_string(),
    }
}

fn formula(text: &str) -> Result<Formula> {
    parse_formula(text)
}

fn load(file: &PathBuf, limits: Limits) -> Result<PreparedTheory> {
    let text = fs::read_to_string(file)?;
    parse_theory(&text)?.prepare(limits)
}

fn lines(mut rows: Vec<String>) -> String {
    rows.sort();
    rows.iter().map(|r| format!("{r}\n")).collect()
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Check { file } => {
            let theory = parse_theory(&fs::read_to_string(file)?)?;
            let report = theory.validate_with(&crate::formula::Oracle::new(limits.max_atoms));
            let text = format!("{report}\n");
            Ok(if report.is_valid() {
                Outcome::ok(text)
            } else {
                Outcome {
                    code: 2,
                    stdout: text,
                    stderr: String::new(),
                }
            })
        }
        Command::Extensions { file } => {
            let t = load(file, limits)?;
            let r = all_extensions(&t)?;
            let mut out = lines(r.members.iter().map(|d| t.format_set(d)).collect());
            out.push_str(&format!("(count: {})\n", r.len()));
            Ok(Outcome::ok(out))
        }
        Command::Entails {
            file,
            formula: text,
            credulous,
        } => {
            let t = load(file, limits)?;
            let goal = formula(text)?;
            let yes = if *credulous {
                credulous_entails(&t, &goal)?
            } else {
                skeptical_entails(&t, &goal)?
            };
            Ok(Outcome::answer(yes))
        }
        Command::Models { file } => {
            let t = load(file, limits)?;
            let models = preferred_models_over(&t, &Default::default())?;
            let mut out = lines(models.iter().map(|m| m.to_string()).collect());
            out.push_str(&format!("(count: {})\n", models.len()));
            Ok(Outcome::ok(out))
        }
        Command::Conditional { file, alpha, beta } => {
            let t = load(file, limits)?;
            Ok(Outcome::answer(conditional(
                &t,
                &formula(alpha)?,
                &formula(beta)?,
            )?))
        }
        Command::Revise {
            file,
            alpha,
            output,
        } => {
            let t = load(file, limits)?;
            let revised = revise(&t, &formula(alpha)?);
            fs::write(output, print_theory(&revised))?;
            Ok(Outcome::ok(String::new()))
        }
        Command::Af {
            file,
            rule4,
            show_ignored,
        } => {
            let t = load(file, limits)?;
            if !rule4 {
                let af = linear_framework(&t, &t.first_linear_extension())?;
                return Ok(Outcome::ok(af.export(&t)));
            }
            let (af, outcomes) = rule4_outcomes(&t)?;
            let mut out = af.export(&t);
            let mut rows = Vec::new();
            let mut ignored = 0;
            for o in &outcomes {
                if o.ignored {
                    ignored += 1;
                    if *show_ignored {
                        rows.push(format!("ignored: Δ = {}", t.format_set(&o.delta)));
                    }
                } else {
                    rows.push(format!("stable: Δ = {}", t.format_set(&o.delta)));
                }
            }
            out.push_str(&lines(rows));
            out.push_str(&format!(
                "(stable: {}, ignored: {})\n",
                outcomes.len() - ignored,
                ignored
            ));
            Ok(Outcome::ok(out))
        }
        Command::Argue {
            file,
            formula: text,
            trace: tracing,
        } => {
            let t = load(file, limits)?;
            let goal = formula(text)?;
            if *tracing {
                let log = trace(&t, &t.first_linear_extension(), Some(&goal))?;
                return Ok(Outcome::ok(log.iter().map(|l| format!("{l}\n")).collect()));
            }
            let r = all_extensions(&t)?;
            let mut blocks: Vec<String> = Vec::new();
            for delta in &r.members {
                let mut block = format!("Δ = {}\n", t.format_set(delta));
                match supports_in(&t, delta, &goal) {
                    Ok(args) => {
                        for a in args {
                            block.push_str(&format!("  {}\n", a.display(&t)));
                        }
                    }
                    Err(Error::NotBelieved(_)) => {
                        block.push_str(&format!("  not believed: {goal}\n"))
                    }
                    Err(e) => return Err(e),
                }
                blocks.push(block);
            }
            blocks.sort();
            Ok(Outcome::ok(blocks.concat()))
        }
        Command::Atms {
            file,
            node,
            nogoods,
        } => {
            let problem = parse_atms(&fs::read_to_string(file)?)?;
            let sets = match (node, nogoods) {
                (_, true) => atms_nogoods(&problem, limits)?,
                (Some(n), false) => atms_labels(&problem, n, limits)?,
                (None, false) => unreachable!("clap requires --node or --nogoods"),
            };
            let mut out = lines(
                sets.iter()
                    .map(|e| format!("{{{}}}", e.iter().cloned().collect::<Vec<_>>().join(", ")))
                    .collect(),
            );
            out.push_str(&format!("(count: {})\n", sets.len()));
            Ok(Outcome::ok(out))
        }
    }
}
