//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for I/O and malformed input, 2 for domain
//! failures (total conflict, or a false answer under `--assert`).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::combination::{combine_all, CombinationRule};
use crate::defaults::{parse_kb, KnowledgeBase};
use crate::entailment::{coarsening_entails, flow_entails, interval_contained, partition_entails, weaken_to};
use crate::error::Error;
use crate::frame::{FocalSet, Frame};
use crate::monotonicity::{pairwise_survey, parse_grid, sweep, sweep_csv, SurveyEntry};
use crate::structure::BeliefStructure;

const ALL_RULES: &str = "dempster,yager,dubois-prade,unnormalized,priority-first,priority-second,discount:1/2";

#[derive(Parser, Debug)]
#[command(name = "evidential", version, about = "Exact belief-structure reasoning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a belief-structure document or knowledge base.
    Validate { path: PathBuf },
    /// Bel, Pl and uncertainty range of a set (knowledge bases are inferred first).
    Query {
        path: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "dempster")]
        rule: String,
    },
    /// Combine belief structures left to right.
    Combine {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value = "dempster")]
        rule: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Does the first structure entail the second?
    Entails {
        specific: PathBuf,
        general: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Flow)]
        mode: Mode,
        #[arg(long)]
        assert: bool,
    },
    /// Monotonicity survey of combining the second structure into the first.
    Monotone {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = ALL_RULES)]
        rules: String,
        #[arg(long)]
        assert: bool,
    },
    /// Infer the belief structure of a knowledge base.
    KbInfer {
        path: PathBuf,
        #[arg(long, default_value = "dempster")]
        rule: String,
        /// Restate the result as "typically SET" with strength Bel(SET).
        #[arg(long)]
        weaken_to: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Probability interval of a set under a knowledge base.
    KbQuery {
        path: PathBuf,
        #[arg(long, default_value = "dempster")]
        rule: String,
        #[arg(long)]
        set: String,
    },
    /// Sweep the two-focal family {A: α, X: 1-α} ∩ {B: β, X: 1-β} as CSV.
    Sweep {
        /// Comma list or start:stop:step.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Use B = {c,d} (disjoint from A = {a,b}) instead of B = {b,c}.
        #[arg(long)]
        disjoint: bool,
        #[arg(long, default_value = "dempster")]
        rule: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Flow,
    Partition,
    Coarsening,
    Interval,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(context: &str, e: Error) -> Self {
        let code = if e.is_domain() { 2 } else { 1 };
        let location = match &e {
            Error::Kb(k) => format!("{context}:{}:{}", k.line, k.column),
            Error::StatementConflict { line, .. } => format!("{context}:{line}"),
            _ => context.to_string(),
        };
        let detail = match &e {
            Error::Kb(k) => k.kind.to_string(),
            other => other.to_string(),
        };
        Failure { code, message: format!("error[{}]: {location}: {detail}", e.kind()) }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: 1, message: format!("error[io]: {}: {e}", path.display()) }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

enum Input {
    Structure(BeliefStructure),
    Kb(KnowledgeBase),
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn name(path: &Path) -> String {
    path.display().to_string()
}

fn load(path: &Path) -> std::result::Result<Input, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        BeliefStructure::from_json(&text).map(Input::Structure).map_err(|e| Failure::new(&name(path), e))
    } else {
        parse_kb(&text).map(Input::Kb).map_err(|e| Failure::new(&name(path), e.into()))
    }
}

fn load_structure(path: &Path) -> std::result::Result<BeliefStructure, Failure> {
    let text = read(path)?;
    BeliefStructure::from_json(&text).map_err(|e| Failure::new(&name(path), e))
}

fn load_kb(path: &Path) -> std::result::Result<KnowledgeBase, Failure> {
    let text = read(path)?;
    parse_kb(&text).map_err(|e| Failure::new(&name(path), e.into()))
}

fn rule(text: &str) -> std::result::Result<CombinationRule, Failure> {
    text.parse().map_err(|e| Failure::new("--rule", e))
}

/// `a,b`, `{a,b}`, or `{}` / empty for the empty set.
fn parse_set(frame: &Frame, text: &str) -> std::result::Result<FocalSet, Failure> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let atoms: Vec<&str> = inner.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
    frame.set(atoms).map_err(|e| Failure::new("--set", e))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::io(p, e))?;
            let _ = writeln!(out, "wrote {}", p.display());
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(0)
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

fn print_interval(out: &mut dyn Write, m: &BeliefStructure, set: &FocalSet, context: &str) -> Outcome {
    let iv = m.prob_interval(set).map_err(|e| Failure::new(context, e))?;
    let _ = writeln!(out, "set {set}");
    if m.is_normal() {
        let r = iv.width();
        let _ = writeln!(out, "Bel={} Pl={} range={}", iv.lower, iv.upper, r);
        let _ = writeln!(out, "Bel~{} Pl~{} range~{}", iv.lower.to_decimal(6), iv.upper.to_decimal(6), r.to_decimal(6));
    } else {
        let _ = writeln!(out, "Bel={} Pl={} range=undefined (subnormal, m({{}}) = {})", iv.lower, iv.upper, m.empty_mass());
        let _ = writeln!(out, "Bel~{} Pl~{}", iv.lower.to_decimal(6), iv.upper.to_decimal(6));
    }
    Ok(0)
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { path } => {
            let line = match load(&path)? {
                Input::Structure(m) if m.is_normal() => format!(
                    "ok: normal belief structure on {} atoms with {} focal elements",
                    m.frame().len(),
                    m.len()
                ),
                Input::Structure(m) => format!(
                    "ok: subnormal belief structure on {} atoms with {} focal elements; m({{}}) = {}",
                    m.frame().len(),
                    m.len(),
                    m.empty_mass()
                ),
                Input::Kb(kb) => format!(
                    "ok: knowledge base over variable {} on {} atoms with {} statements",
                    kb.variable(),
                    kb.frame().len(),
                    kb.statements().len()
                ),
            };
            let _ = writeln!(out, "{line}");
            Ok(0)
        }
        Command::Query { path, set, rule: r } => {
            let context = name(&path);
            let m = match load(&path)? {
                Input::Structure(m) => m,
                Input::Kb(kb) => kb.infer(&rule(&r)?).map_err(|e| Failure::new(&context, e))?,
            };
            let set = parse_set(m.frame(), &set)?;
            print_interval(out, &m, &set, &context)
        }
        Command::Combine { paths, rule: r, out: target } => {
            let rule = rule(&r)?;
            let structures = paths.iter().map(|p| load_structure(p)).collect::<Result<Vec<_>, _>>()?;
            let context = paths.iter().map(|p| name(p)).collect::<Vec<_>>().join(" + ");
            let combined = combine_all(&structures, &rule).map_err(|e| Failure::new(&context, e))?;
            emit(out, target.as_deref(), &combined.to_json())
        }
        Command::Entails { specific, general, mode, assert } => {
            let (s, g) = (load_structure(&specific)?, load_structure(&general)?);
            let context = format!("{} vs {}", name(&specific), name(&general));
            let fail = |e| Failure::new(&context, e);
            let mode_name = format!("{mode:?}").to_lowercase();
            let holds = match mode {
                Mode::Interval => {
                    let c = interval_contained(&s, &g).map_err(fail)?;
                    match &c.first_violation {
                        None => {
                            let _ = writeln!(out, "entails: true ({mode_name})");
                        }
                        Some(v) => {
                            let _ = writeln!(out, "entails: false ({mode_name}); first violation {v}");
                        }
                    }
                    c.contained
                }
                _ => {
                    let witness = match mode {
                        Mode::Flow => flow_entails(&s, &g),
                        Mode::Partition => partition_entails(&s, &g),
                        _ => coarsening_entails(&s, &g),
                    }
                    .map_err(fail)?;
                    let _ = writeln!(out, "entails: {} ({mode_name})", witness.is_some());
                    if let Some(w) = &witness {
                        let _ = out.write_all(pretty(&w.to_json()).as_bytes());
                    }
                    witness.is_some()
                }
            };
            Ok(if assert && !holds { 2 } else { 0 })
        }
        Command::Monotone { first, second, rules, assert } => {
            let (m1, m2) = (load_structure(&first)?, load_structure(&second)?);
            let rules = rules
                .split(',')
                .map(|r| r.parse::<CombinationRule>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::new("--rules", e))?;
            let context = format!("{} + {}", name(&first), name(&second));
            let survey = pairwise_survey(&m1, &m2, &rules).map_err(|e| Failure::new(&context, e))?;
            let json = serde_json::Value::Array(survey.iter().map(SurveyEntry::to_json).collect());
            let _ = out.write_all(pretty(&json).as_bytes());
            let monotone = survey.iter().all(|e| e.report().is_some_and(|r| r.entails_first));
            Ok(if assert && !monotone { 2 } else { 0 })
        }
        Command::KbInfer { path, rule: r, weaken_to: target, out: dest } => {
            let kb = load_kb(&path)?;
            let context = name(&path);
            let mut m = kb.infer(&rule(&r)?).map_err(|e| Failure::new(&context, e))?;
            if let Some(t) = target {
                let set = parse_set(kb.frame(), &t)?;
                m = weaken_to(&m, &set).map_err(|e| Failure::new(&context, e))?;
            }
            emit(out, dest.as_deref(), &m.to_json())
        }
        Command::KbQuery { path, rule: r, set } => {
            let kb = load_kb(&path)?;
            let context = name(&path);
            let m = kb.infer(&rule(&r)?).map_err(|e| Failure::new(&context, e))?;
            let set = parse_set(kb.frame(), &set)?;
            print_interval(out, &m, &set, &context)
        }
        Command::Sweep { alpha, beta, disjoint, rule: r, out: dest } => {
            let rule = rule(&r)?;
            let alphas = parse_grid(&alpha).map_err(|e| Failure::new("--alpha", e))?;
            let betas = parse_grid(&beta).map_err(|e| Failure::new("--beta", e))?;
            let rows = sweep(&alphas, &betas, disjoint, &rule).map_err(|e| Failure::new("sweep", e))?;
            emit(out, dest.as_deref(), &sweep_csv(&rows))
        }
    }
}

