//! Command-line front end.
//!
//! [`run`] takes the full argument vector and returns the exit status and
//! the text destined for stdout and stderr, so the binary is a thin shell
//! around it.

use std::fs::OpenOptions;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::altsem::{self, Semantics};
use crate::diffkit::{self, GenConfig, Verdict, COLUMNS};
use crate::error::{Error, Result};
use crate::fixpoint::{self, Mode};
use crate::general;
use crate::limits::Limits;
use crate::model::{self, AtomId, Interpretation, Program};
use crate::parser;
use crate::sweep::sweep;
use crate::unfold;
use crate::wellsupport::{self, Kind, Method};

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "catoms",
    version,
    about = "Answer sets of programs with abstract constraint atoms"
)]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of candidate sets a sweep may visit (overrides CATOMS_CAP).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u64>,
    /// Number of worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Program file, or `-` for stdin.
    file: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Reduct,
    Complement,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeArg::Reduct => vec![Mode::Reduct],
            ModeArg::Complement => vec![Mode::Complement],
            ModeArg::Both => Mode::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Weak,
    Strong,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Constructive,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SemanticsArg {
    Mr,
    Mt,
    Flp,
    Pelov,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print the program in canonical form.
    Parse(Input),
    /// List the models of the program.
    Models {
        #[command(flatten)]
        input: Input,
        /// Only minimal models.
        #[arg(long)]
        minimal: bool,
    },
    /// List the answer sets.
    Answersets {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
    },
    /// Decide whether a set of atoms is an answer set.
    Check {
        #[command(flatten)]
        input: Input,
        /// Comma-separated atoms.
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        #[arg(long, value_enum, default_value = "reduct")]
        mode: ModeArg,
    },
    /// Search for a level mapping showing a model is well-supported.
    Wellsupported {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        model: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "constructive")]
        method: MethodArg,
    },
    /// Translate into a normal logic program.
    Unfold {
        #[command(flatten)]
        input: Input,
        /// Print the stable models of the unfolding instead of the rules.
        #[arg(long, conflicts_with = "model")]
        solve: bool,
        /// Decide this set through the unfolding instead of printing rules.
        #[arg(long, allow_hyphen_values = true)]
        model: Option<String>,
        #[arg(long, value_enum, default_value = "complement", requires = "model")]
        mode: ModeArg,
    },
    /// Evaluate one of the comparator semantics.
    Altsem {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        /// Decide this set only instead of listing all accepted sets.
        #[arg(long, allow_hyphen_values = true)]
        model: Option<String>,
    },
    /// Evaluate every semantics on every candidate set.
    Compare(Input),
    /// Compare randomly generated programs.
    Fuzz {
        #[arg(long, default_value_t = 4)]
        atoms: usize,
        #[arg(long, default_value_t = 5)]
        rules: usize,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only monotone c-atoms.
        #[arg(long)]
        monotone: bool,
        /// Negate body literals with probability 0.3.
        #[arg(long)]
        naf: bool,
        /// Allow non-elementary heads.
        #[arg(long)]
        general: bool,
        /// Append a record for each divergent program to this file.
        #[arg(long, value_name = "FILE")]
        corpus: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse(_) => "parse",
            Command::Models { .. } => "models",
            Command::Answersets { .. } => "answersets",
            Command::Check { .. } => "check",
            Command::Wellsupported { .. } => "wellsupported",
            Command::Unfold { .. } => "unfold",
            Command::Altsem { .. } => "altsem",
            Command::Compare(_) => "compare",
            Command::Fuzz { .. } => "fuzz",
        }
    }
}

/// Text and JSON forms of a command's result.
struct Report {
    text: String,
    json: Value,
    hash: Option<String>,
    /// Diagnostics for stderr.
    notes: Vec<String>,
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut limits = Limits::from_env();
    if let Some(cap) = cli.cap {
        limits.max_candidates = cap;
    }
    let result = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| execute(&cli.command, &limits)),
            Err(e) => Err(Error::Invalid(format!("cannot start workers: {e}"))),
        },
        None => execute(&cli.command, &limits),
    };
    match result {
        Ok(report) => {
            let stdout = if cli.json {
                let envelope = json!({
                    "command": cli.command.name(),
                    "program_hash": report.hash,
                    "results": report.json,
                    "limits": {
                        "max_candidates": limits.max_candidates,
                        "max_brute_levels": limits.max_brute_levels,
                        "max_unfold_product": limits.max_unfold_product,
                    },
                });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&envelope).expect("serialisable")
                )
            } else if report.text.is_empty() {
                String::new()
            } else {
                format!("{}\n", report.text)
            };
            let stderr = report
                .notes
                .iter()
                .map(|n| format!("note: {n}\n"))
                .collect();
            Outcome {
                code: 0,
                stdout,
                stderr,
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(input: &Input) -> Result<Program> {
    let text = if input.file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.file)
            .map_err(|e| Error::Io(format!("`{}`: {e}", input.file)))?
    };
    parser::parse_program(&text).map_err(|e| match e {
        Error::Parse { span, message } => Error::Parse {
            span,
            message: format!("{message} (in {})", input.file),
        },
        other => other,
    })
}

fn program_hash(p: &Program) -> String {
    Sha256::digest(parser::render(p).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Splits an atom list on commas outside parentheses; braces are ignored.
fn parse_model(p: &Program, list: &str) -> Result<Interpretation> {
    let list = list.trim().trim_start_matches('{').trim_end_matches('}');
    let mut names = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in list.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                names.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if !c.is_whitespace() {
            cur.push(c);
        }
    }
    names.push(cur);
    p.atoms().resolve(names.iter().map(String::as_str))
}

fn sets_text(p: &Program, sets: &[Interpretation]) -> String {
    if sets.is_empty() {
        return "(none)".to_string();
    }
    sets.iter()
        .map(|s| p.atoms().render_set(s))
        .collect::<Vec<_>>()
        .join("\n")
}

fn sets_json(p: &Program, sets: &[Interpretation]) -> Value {
    json!(sets
        .iter()
        .map(|s| p.atoms().set_names(s))
        .collect::<Vec<_>>())
}

fn answer_sets(p: &Program, mode: Mode, limits: &Limits) -> Result<Vec<Interpretation>> {
    if p.is_basic() {
        fixpoint::enumerate_answer_sets(p, mode, limits)
    } else {
        general::enumerate_answer_sets_general(p, mode, limits)
    }
}

fn with_program(p: &Program, text: String, json: Value) -> Report {
    Report {
        text,
        json,
        hash: Some(program_hash(p)),
        notes: Vec::new(),
    }
}

fn per_mode<F>(p: &Program, modes: &[Mode], mut f: F) -> Result<Report>
where
    F: FnMut(Mode) -> Result<(String, Value)>,
{
    let mut text = Vec::new();
    let mut obj = serde_json::Map::new();
    for &mode in modes {
        let (t, j) = f(mode)?;
        if modes.len() > 1 {
            text.push(format!("{mode}:"));
        }
        text.push(t);
        obj.insert(mode.to_string(), j);
    }
    Ok(with_program(p, text.join("\n"), Value::Object(obj)))
}

fn execute(cmd: &Command, limits: &Limits) -> Result<Report> {
    match cmd {
        Command::Parse(input) => {
            let p = load(input)?;
            let class = p.class();
            Ok(with_program(
                &p,
                parser::render(&p),
                json!({
                    "program": parser::render(&p),
                    "atoms": p.atoms().names(),
                    "rules": p.rules().len(),
                    "class": {
                        "basic": class.basic,
                        "positive": class.positive,
                        "monotone": class.monotone,
                        "naf_monotone": class.naf_monotone,
                    },
                }),
            ))
        }
        Command::Models { input, minimal } => {
            let p = load(input)?;
            let mut sets = model::models(&p, limits)?;
            if *minimal {
                let mut kept = Vec::new();
                for s in sets {
                    if model::is_minimal_model(&s, &p, limits)? {
                        kept.push(s);
                    }
                }
                sets = kept;
            }
            Ok(with_program(&p, sets_text(&p, &sets), sets_json(&p, &sets)))
        }
        Command::Answersets { input, mode } => {
            let p = load(input)?;
            per_mode(&p, &mode.modes(), |m| {
                let sets = answer_sets(&p, m, limits)?;
                Ok((sets_text(&p, &sets), sets_json(&p, &sets)))
            })
        }
        Command::Check { input, model, mode } => {
            let p = load(input)?;
            let m = parse_model(&p, model)?;
            per_mode(&p, &mode.modes(), |mode| {
                let ok = general::check_answer_set_general(&p, &m, mode)?;
                Ok((if ok { "accept" } else { "reject" }.to_string(), json!(ok)))
            })
        }
        Command::Wellsupported {
            input,
            model,
            kind,
            method,
        } => {
            let p = load(input)?;
            let m = parse_model(&p, model)?;
            let kind = match kind {
                KindArg::Weak => Kind::Weak,
                KindArg::Strong => Kind::Strong,
            };
            let method = match method {
                MethodArg::Constructive => Method::Constructive,
                MethodArg::Brute => Method::Brute,
            };
            let found = wellsupport::find_ws(&p, &m, kind, method, limits)?;
            let (text, json) = match &found {
                Some(l) => (
                    l.render(p.atoms()),
                    json!(l
                        .iter()
                        .map(|(a, v)| (p.atoms().name(a).to_string(), v))
                        .collect::<std::collections::BTreeMap<_, _>>()),
                ),
                None => ("(none)".to_string(), Value::Null),
            };
            Ok(with_program(&p, text, json))
        }
        Command::Unfold {
            input,
            solve,
            model,
            mode,
        } => {
            let p = load(input)?;
            if let Some(model) = model {
                let m = parse_model(&p, model)?;
                return per_mode(&p, &mode.modes(), |mode| {
                    let ok = unfold::unfolded_answer_set(&p, &m, mode, limits)?;
                    Ok((if ok { "accept" } else { "reject" }.to_string(), json!(ok)))
                });
            }
            if !p.is_basic() {
                return Err(Error::Unsupported(
                    "unfolding applies to basic programs (elementary or bot heads); \
                     pass --model to decide a set through its instance"
                        .into(),
                ));
            }
            let mut notes = Vec::new();
            let positive = if p.is_positive() {
                p.clone()
            } else {
                notes.push("naf atoms were replaced by their complements before unfolding".into());
                fixpoint::complement_program(&p)?
            };
            let n = unfold::unfold_program(&positive, limits)?;
            let mut report = if *solve {
                let sets = unfold::gl_stable_models(&n, limits)?;
                with_program(&p, sets_text(&p, &sets), sets_json(&p, &sets))
            } else {
                let rules: Vec<String> = n.rules.iter().map(|r| r.render(&n.atoms)).collect();
                with_program(&p, n.render(), json!(rules))
            };
            report.notes = notes;
            Ok(report)
        }
        Command::Altsem {
            input,
            semantics,
            model,
        } => {
            let p = load(input)?;
            let s = match semantics {
                SemanticsArg::Mr => Semantics::Mr,
                SemanticsArg::Mt => Semantics::Mt,
                SemanticsArg::Flp => Semantics::Flp,
                SemanticsArg::Pelov => Semantics::Pelov,
            };
            let mut notes = Vec::new();
            if s == Semantics::Mr && !p.is_positive() {
                notes.push("naf atoms are read as their complements; the mr verdict depends on this convention".into());
            }
            // Surface precondition errors even when no candidate is tried.
            match s {
                Semantics::Mt if !p.is_monotone() => return Err(Error::NotMonotone),
                Semantics::Flp | Semantics::Pelov if !p.is_basic() => return Err(Error::NotBasic),
                _ => {}
            }
            let mut report = match model {
                Some(list) => {
                    let m = parse_model(&p, list)?;
                    let ok = s.accepts(&p, &m, limits)?;
                    if s == Semantics::Mt && !ok {
                        let reduct = altsem::mt_reduct(&p, &m);
                        if altsem::derivation(&reduct, &m, limits)?.is_none() {
                            notes.push(
                                "no computation of the reduct has this set as its result".into(),
                            );
                        }
                    }
                    with_program(
                        &p,
                        if ok { "accept" } else { "reject" }.to_string(),
                        json!(ok),
                    )
                }
                None => {
                    let ids: Vec<AtomId> = p.atoms().ids().collect();
                    let sets = sweep("candidate sweep", &ids, limits, |m| {
                        s.accepts(&p, m, limits)
                    })?;
                    with_program(&p, sets_text(&p, &sets), sets_json(&p, &sets))
                }
            };
            report.notes = notes;
            Ok(report)
        }
        Command::Compare(input) => {
            let p = load(input)?;
            let c = diffkit::compare(&p, limits)?;
            let mut lines = Vec::new();
            let mut columns = serde_json::Map::new();
            for col in COLUMNS {
                match c.accepted(col) {
                    Some(sets) => {
                        let shown = if sets.is_empty() {
                            "(none)".to_string()
                        } else {
                            sets.iter()
                                .map(|s| p.atoms().render_set(s))
                                .collect::<Vec<_>>()
                                .join(" ")
                        };
                        lines.push(format!("{col}: {shown}"));
                        columns.insert(col.to_string(), sets_json(&p, &sets));
                    }
                    None => {
                        let why = c
                            .verdicts
                            .iter()
                            .find_map(|v| match v.verdicts.get(col) {
                                Some(Verdict::Unsupported(w)) => Some(w.clone()),
                                _ => None,
                            })
                            .unwrap_or_default();
                        lines.push(format!("{col}: unsupported ({why})"));
                        columns.insert(col.to_string(), json!({ "unsupported": why }));
                    }
                }
            }
            lines.push(findings_text(&p, &c.findings));
            let mut report = with_program(
                &p,
                lines.join("\n"),
                json!({
                    "accepted": columns,
                    "findings": findings_json(&p, &c.findings),
                    "diverges": c.diverges(),
                    "mr_convention_dependent": c.mr_convention_dependent,
                }),
            );
            if c.mr_convention_dependent {
                report
                    .notes
                    .push("naf atoms are read as their complements in the mr column".into());
            }
            Ok(report)
        }
        Command::Fuzz {
            atoms,
            rules,
            count,
            seed,
            monotone,
            naf,
            general,
            corpus,
        } => {
            if *atoms > diffkit::MAX_GEN_ATOMS {
                return Err(Error::Invalid(format!(
                    "at most {} atoms can be generated",
                    diffkit::MAX_GEN_ATOMS
                )));
            }
            let cfg = GenConfig {
                atom_count: *atoms,
                rule_count: *rules,
                naf_probability: if *naf { 0.3 } else { 0.0 },
                monotone_only: *monotone,
                general_heads: *general,
                seed: *seed,
            };
            let cases = diffkit::fuzz(&cfg, *count, limits)?;
            let mut lines = Vec::new();
            let mut records = Vec::new();
            let mut divergent = 0;
            let mut findings = 0;
            let mut case_json = Vec::new();
            for case in &cases {
                let p = &case.program;
                let diverges = case.comparison.diverges();
                findings += case.comparison.findings.len();
                if diverges {
                    divergent += 1;
                    records.push(diffkit::corpus_record(case.seed, p, &case.comparison));
                }
                if diverges || !case.comparison.findings.is_empty() {
                    lines.push(format!(
                        "seed {}: {}{}",
                        case.seed,
                        if diverges { "divergent" } else { "consistent" },
                        if case.comparison.findings.is_empty() {
                            String::new()
                        } else {
                            format!("; {}", findings_text(p, &case.comparison.findings))
                        }
                    ));
                }
                case_json.push(json!({
                    "seed": case.seed,
                    "program": parser::render(p),
                    "diverges": diverges,
                    "findings": findings_json(p, &case.comparison.findings),
                }));
            }
            lines.push(format!(
                "programs: {}, divergent: {divergent}, findings: {findings}",
                cases.len()
            ));
            if let Some(path) = corpus {
                let mut f = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .map_err(|e| Error::Invalid(format!("cannot open `{path}`: {e}")))?;
                for r in &records {
                    writeln!(f, "{r}")
                        .map_err(|e| Error::Invalid(format!("cannot write `{path}`: {e}")))?;
                }
            }
            Ok(Report {
                text: lines.join("\n"),
                json: json!({
                    "programs": cases.len(),
                    "divergent": divergent,
                    "findings": findings,
                    "cases": case_json,
                }),
                hash: None,
                notes: Vec::new(),
            })
        }
    }
}

fn findings_text(p: &Program, findings: &[diffkit::Finding]) -> String {
    if findings.is_empty() {
        return "findings: (none)".to_string();
    }
    let parts: Vec<String> = findings
        .iter()
        .map(|f| {
            format!(
                "{} at {}: {}",
                f.property,
                p.atoms().render_set(&f.model),
                f.detail
            )
        })
        .collect();
    format!("findings: {}", parts.join("; "))
}

fn findings_json(p: &Program, findings: &[diffkit::Finding]) -> Value {
    json!(findings
        .iter()
        .map(|f| json!({
            "property": f.property,
            "model": p.atoms().set_names(&f.model),
            "detail": f.detail,
        }))
        .collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_program(name: &str, text: &str) -> String {
        let dir = std::env::temp_dir().join(format!("catoms-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("catoms").chain(args.iter().copied()))
    }

    #[test]
    fn model_lists_split_outside_parentheses() {
        let p = parser::parse_program("taken(s1,ai). b.").unwrap();
        let m = parse_model(&p, "{taken(s1, ai), b}").unwrap();
        assert_eq!(p.atoms().render_set(&m), "{b,taken(s1,ai)}");
        assert!(parse_model(&p, "").unwrap().is_empty());
        assert_eq!(parse_model(&p, "zz"), Err(Error::UnknownAtom("zz".into())));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["nonsense"]).code, 1);
        assert_eq!(run_args(&["--help"]).code, 0);
        let f = temp_program("p3.cat", "p :- ({q},{{}}). q :- ({p},{{}}).");
        let out = run_args(&["check", &f, "--model", "r", "--mode", "reduct"]);
        assert_eq!(out.code, 1, "{out:?}");
    }

    #[test]
    fn program_hash_is_of_the_canonical_text() {
        let a = parser::parse_program("p :- ({q},{{}}).   q :- ({p},{{}}).").unwrap();
        let b = parser::parse_program("p :- ({q},{{}}).\nq :- ({p},{{}}).").unwrap();
        assert_eq!(program_hash(&a), program_hash(&b));
        assert_eq!(program_hash(&a).len(), 64);
    }
}
