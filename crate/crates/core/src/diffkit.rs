//! Random program generation and a side-by-side comparison of every
//! implemented semantics, with the expected relationships between them
//! checked on each candidate model.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::altsem::Semantics;
use crate::error::Result;
use crate::fixpoint::Mode;
use crate::general::check_answer_set_general;
use crate::limits::Limits;
use crate::model::{
    closure, is_minimal_model, supports, AtomId, AtomTable, CAtom, Interpretation, Program, Rule,
};
use crate::parser::{parse_program, render};

/// Largest universe the generator draws from.
pub const MAX_GEN_ATOMS: usize = 6;

/// Shape of randomly generated programs.
#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    /// Size of the atom pool `a, b, …`; at most [`MAX_GEN_ATOMS`].
    pub atom_count: usize,
    pub rule_count: usize,
    /// Probability that a body literal is negated.
    pub naf_probability: f64,
    /// Draw only superset-closed solution families.
    pub monotone_only: bool,
    /// Allow non-elementary heads.
    pub general_heads: bool,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            atom_count: 4,
            rule_count: 5,
            naf_probability: 0.0,
            monotone_only: false,
            general_heads: false,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        GenConfig {
            seed,
            ..self.clone()
        }
    }
}

fn random_catom(rng: &mut ChaCha8Rng, pool: &[AtomId], monotone: bool) -> CAtom {
    if rng.gen_bool(0.45) {
        return CAtom::elementary(*pool.choose(rng).unwrap());
    }
    let k = rng.gen_range(1..=pool.len().min(3));
    let domain: Interpretation = pool.choose_multiple(rng, k).copied().collect();
    let a = CAtom::from_predicate(&domain, |_| rng.gen_bool(0.5)).expect("small domain");
    if monotone {
        closure(&a)
    } else {
        a
    }
}

/// A program drawn deterministically from `cfg`. Its universe is the set of
/// atoms that actually occur, as if the program had been parsed.
pub fn generate(cfg: &GenConfig) -> Program {
    let n = cfg.atom_count.min(MAX_GEN_ATOMS);
    if n == 0 {
        return Program::empty();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let names: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let table = Arc::new(AtomTable::new(names));
    let pool: Vec<AtomId> = table.ids().collect();
    let mut rules = Vec::with_capacity(cfg.rule_count);
    for _ in 0..cfg.rule_count {
        let head = if rng.gen_bool(0.08) {
            CAtom::bottom()
        } else if cfg.general_heads && rng.gen_bool(0.35) {
            random_catom(&mut rng, &pool, cfg.monotone_only)
        } else {
            CAtom::elementary(*pool.choose(&mut rng).unwrap())
        };
        // A constraint with an empty body would make the program inconsistent.
        let len = rng.gen_range(usize::from(head.is_bottom())..=3);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for _ in 0..len {
            let a = random_catom(&mut rng, &pool, cfg.monotone_only);
            if rng.gen_bool(cfg.naf_probability.clamp(0.0, 1.0)) {
                neg.push(a);
            } else {
                pos.push(a);
            }
        }
        rules.push(Rule::new(head, pos, neg));
    }
    let drawn = Program::new(table, rules).expect("ids from the pool");
    parse_program(&render(&drawn)).expect("rendered programs parse")
}

/// Outcome of one semantics on one candidate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
    Unsupported(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accept"),
            Verdict::Reject => f.write_str("reject"),
            Verdict::Unsupported(why) => write!(f, "unsupported ({why})"),
        }
    }
}

/// Column names, in report order.
pub const COLUMNS: [&str; 6] = ["ours-reduct", "ours-complement", "mr", "mt", "flp", "pelov"];

/// Verdicts of every column on one candidate model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsVerdict {
    pub model: Interpretation,
    pub verdicts: BTreeMap<&'static str, Verdict>,
}

impl SemanticsVerdict {
    pub fn accepted_by(&self, column: &str) -> bool {
        self.verdicts.get(column) == Some(&Verdict::Accept)
    }
}

/// A violated relationship between semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub property: &'static str,
    pub model: Interpretation,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// One entry per subset of the universe, in canonical order.
    pub verdicts: Vec<SemanticsVerdict>,
    pub findings: Vec<Finding>,
    /// The program uses naf, so the `mr` column reads it by complement.
    pub mr_convention_dependent: bool,
}

impl Comparison {
    /// Models accepted by `column`, or `None` when it does not apply.
    pub fn accepted(&self, column: &str) -> Option<Vec<Interpretation>> {
        if self
            .verdicts
            .iter()
            .any(|v| matches!(v.verdicts.get(column), Some(Verdict::Unsupported(_)) | None))
        {
            return None;
        }
        Some(
            self.verdicts
                .iter()
                .filter(|v| v.accepted_by(column))
                .map(|v| v.model.clone())
                .collect(),
        )
    }

    /// Whether two applicable columns accept different models.
    pub fn diverges(&self) -> bool {
        let sets: Vec<_> = COLUMNS.iter().filter_map(|c| self.accepted(c)).collect();
        sets.windows(2).any(|w| w[0] != w[1])
    }
}

fn verdict(r: Result<bool>) -> Result<Verdict> {
    match r {
        Ok(true) => Ok(Verdict::Accept),
        Ok(false) => Ok(Verdict::Reject),
        Err(e @ crate::Error::CapExceeded { .. }) => Err(e),
        Err(e) => Ok(Verdict::Unsupported(e.to_string())),
    }
}

fn row(
    p: &Program,
    m: &Interpretation,
    limits: &Limits,
) -> Result<(SemanticsVerdict, Vec<Finding>)> {
    let mut v = BTreeMap::new();
    v.insert(
        "ours-reduct",
        verdict(check_answer_set_general(p, m, Mode::Reduct))?,
    );
    v.insert(
        "ours-complement",
        verdict(check_answer_set_general(p, m, Mode::Complement))?,
    );
    for s in Semantics::ALL {
        v.insert(s.as_str(), verdict(s.accepts(p, m, limits))?);
    }
    let sv = SemanticsVerdict {
        model: m.clone(),
        verdicts: v,
    };

    let acc = |c: &str| sv.accepted_by(c);
    let class = p.class();
    let mut findings = Vec::new();
    let mut flag = |property: &'static str, ok: bool, detail: &str| {
        if !ok {
            findings.push(Finding {
                property,
                model: m.clone(),
                detail: detail.to_string(),
            });
        }
    };
    let (red, comp) = (acc("ours-reduct"), acc("ours-complement"));
    flag(
        "complement-within-reduct",
        !comp || red,
        "accepted by complement but not by reduct",
    );
    if class.naf_monotone {
        flag(
            "naf-monotone-modes-agree",
            comp == red,
            "modes disagree on a naf-monotone program",
        );
    }
    if red || comp {
        flag(
            "supported",
            m.iter().all(|a| supports(m, p, a)),
            "an answer set does not support one of its atoms",
        );
    }
    if class.basic && class.positive && (red || comp) {
        flag(
            "minimal",
            is_minimal_model(m, p, limits)?,
            "an answer set is not a minimal model",
        );
    }
    if class.positive {
        flag(
            "nss-contains-ours",
            !red || acc("mr"),
            "accepted by ours but rejected by mr",
        );
    }
    if class.monotone {
        flag(
            "mt-agrees",
            red == acc("mt"),
            "ours and mt disagree on a monotone program",
        );
    }
    if class.monotone && class.basic {
        flag(
            "flp-agrees",
            red == acc("flp") && comp == acc("flp"),
            "ours and flp disagree on a monotone basic program",
        );
    }
    if class.basic {
        flag(
            "pelov-agrees",
            comp == acc("pelov"),
            "ours-complement and pelov disagree",
        );
    }
    Ok((sv, findings))
}

/// Evaluates every column on every subset of the universe.
pub fn compare(p: &Program, limits: &Limits) -> Result<Comparison> {
    let ids: Vec<AtomId> = p.atoms().ids().collect();
    limits.check_sweep("comparison sweep", ids.len())?;
    let rows: Vec<Result<(SemanticsVerdict, Vec<Finding>)>> = (0..1u64 << ids.len())
        .into_par_iter()
        .map(|mask| row(p, &Interpretation::from_mask(&ids, mask), limits))
        .collect();
    let mut rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.0.model.cmp(&b.0.model));
    let mut verdicts = Vec::with_capacity(rows.len());
    let mut findings = Vec::new();
    for (v, f) in rows {
        verdicts.push(v);
        findings.extend(f);
    }
    Ok(Comparison {
        verdicts,
        findings,
        mr_convention_dependent: !p.is_positive(),
    })
}

/// Accepted models per applicable column, as sorted lists of atom names.
pub fn verdict_matrix(p: &Program, c: &Comparison) -> BTreeMap<String, Vec<Vec<String>>> {
    COLUMNS
        .iter()
        .filter_map(|col| {
            c.accepted(col).map(|sets| {
                (
                    col.to_string(),
                    sets.iter().map(|s| p.atoms().set_names(s)).collect(),
                )
            })
        })
        .collect()
}

/// One line of the divergence corpus.
pub fn corpus_record(seed: u64, p: &Program, c: &Comparison) -> Value {
    json!({
        "seed": seed,
        "program": render(p),
        "verdicts": verdict_matrix(p, c),
    })
}

/// Result of comparing one generated program.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzCase {
    pub seed: u64,
    pub program: Program,
    pub comparison: Comparison,
}

/// Generates and compares `count` programs with seeds `cfg.seed`,
/// `cfg.seed + 1`, …, returned in seed order.
pub fn fuzz(cfg: &GenConfig, count: u64, limits: &Limits) -> Result<Vec<FuzzCase>> {
    let cases: Vec<Result<FuzzCase>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            let program = generate(&cfg.with_seed(seed));
            let comparison = compare(&program, limits)?;
            Ok(FuzzCase {
                seed,
                program,
                comparison,
            })
        })
        .collect();
    cases.into_iter().collect()
}
