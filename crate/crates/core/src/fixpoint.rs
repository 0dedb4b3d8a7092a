//! Conditional satisfaction, the two-argument consequence operator and
//! answer sets of basic programs, with negation handled by reduct or by
//! complement.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{complement, hset, is_model, satisfies, CAtom, Interpretation, Program, Rule};
use crate::sweep::sweep;

/// How negation-as-failure atoms are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Drop rules whose naf atoms are true in the candidate, then strip naf.
    Reduct,
    /// Replace `not A` by the complement of `A`.
    Complement,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Reduct, Mode::Complement];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Reduct => "reduct",
            Mode::Complement => "complement",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduct" => Ok(Mode::Reduct),
            "complement" => Ok(Mode::Complement),
            _ => Err(Error::Invalid(format!("unknown mode `{s}`"))),
        }
    }
}

/// `S ⊨_M A`: `S ⊨ A` and every `I` with `S ∩ A_d ⊆ I ⊆ M ∩ A_d` is a
/// solution of `A`.
pub fn cond_sat(s: &Interpretation, m: &Interpretation, a: &CAtom) -> bool {
    let lo = a.project(s);
    if !a.has_mask(lo) {
        return false;
    }
    let hi = a.project(m);
    if lo & !hi != 0 {
        // Empty interval.
        return true;
    }
    let free = hi & !lo;
    let mut sub = free;
    loop {
        if !a.has_mask(lo | sub) {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & free;
    }
}

/// Heads of the rules with elementary heads whose positive body is
/// conditionally satisfied by `s` w.r.t. `m`. Constraints never contribute.
pub(crate) fn consequences(
    rules: &[Rule],
    s: &Interpretation,
    m: &Interpretation,
) -> Interpretation {
    let mut out = Interpretation::new();
    for r in rules {
        if let Some(h) = r.head_atom() {
            if r.pos().iter().all(|a| cond_sat(s, m, a)) {
                out.insert(h);
            }
        }
    }
    out
}

/// `T_P(S, M)` for a basic positive program.
pub fn tp_step(p: &Program, s: &Interpretation, m: &Interpretation) -> Result<Interpretation> {
    p.require_basic_positive()?;
    Ok(consequences(p.rules(), s, m))
}

/// The sequence `T^0 = ∅, T^{i+1} = T_P(T^i, M)` up to its limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TpTrace {
    /// Distinct stages in order of computation, starting with `∅`.
    pub stages: Vec<Interpretation>,
    /// Index of the last stage. When `fixpoint` holds this is `T^∞`.
    pub converged_at: usize,
    /// Whether the last stage is a fixpoint. It is unless `M` is not a model
    /// and the iteration revisits an earlier stage.
    pub fixpoint: bool,
}

impl TpTrace {
    /// `T^i`; stages past convergence repeat the limit.
    pub fn stage(&self, i: usize) -> &Interpretation {
        &self.stages[i.min(self.converged_at)]
    }

    pub fn limit(&self) -> &Interpretation {
        &self.stages[self.converged_at]
    }

    /// Smallest `k` with `a ∈ T^k`.
    pub fn first_stage_of(&self, a: crate::model::AtomId) -> Option<usize> {
        self.stages.iter().position(|s| s.contains(a))
    }
}

pub(crate) fn trace_rules(rules: &[Rule], m: &Interpretation) -> TpTrace {
    let mut stages = vec![Interpretation::new()];
    let mut seen: HashSet<Interpretation> = HashSet::new();
    seen.insert(Interpretation::new());
    loop {
        let next = consequences(rules, stages.last().unwrap(), m);
        if &next == stages.last().unwrap() {
            return TpTrace {
                converged_at: stages.len() - 1,
                stages,
                fixpoint: true,
            };
        }
        if !seen.insert(next.clone()) {
            return TpTrace {
                converged_at: stages.len() - 1,
                stages,
                fixpoint: false,
            };
        }
        stages.push(next);
    }
}

/// Iterates [`tp_step`] from `∅`.
pub fn tp_lfp(p: &Program, m: &Interpretation) -> Result<TpTrace> {
    p.require_basic_positive()?;
    Ok(trace_rules(p.rules(), m))
}

pub(crate) fn complement_rule(r: &Rule) -> Rule {
    let pos = r
        .pos()
        .iter()
        .cloned()
        .chain(r.neg().iter().map(complement))
        .collect();
    Rule::new(r.head().clone(), pos, Vec::new())
}

/// `𝒞(P)`: every `not A` becomes the positive literal `Ā`.
pub fn complement_program(p: &Program) -> Result<Program> {
    p.require_basic()?;
    Ok(p.derive(p.rules().iter().map(complement_rule).collect()))
}

/// Rules kept by the reduct, with their naf literals removed. Head shape is
/// not checked.
pub(crate) fn reduct_rules(rules: &[Rule], m: &Interpretation) -> Vec<Rule> {
    rules
        .iter()
        .filter(|r| !r.neg().iter().any(|a| satisfies(m, a)))
        .map(|r| Rule::new(r.head().clone(), r.pos().to_vec(), Vec::new()))
        .collect()
}

/// `P^M`: drop every rule with some `not A` where `M ⊨ A`, then strip the
/// remaining naf literals.
pub fn reduct(p: &Program, m: &Interpretation) -> Result<Program> {
    p.require_basic()?;
    Ok(p.derive(reduct_rules(p.rules(), m)))
}

/// Answer-set test for a basic program. Model-hood of `m` is checked first.
pub fn check_answer_set(p: &Program, m: &Interpretation, mode: Mode) -> Result<bool> {
    p.require_basic()?;
    Ok(checker(p, mode)(m))
}

/// A reusable membership test; for complement mode the transformed program
/// is built once.
fn checker(p: &Program, mode: Mode) -> impl Fn(&Interpretation) -> bool + Sync + '_ {
    let comp: Option<Vec<Rule>> =
        (mode == Mode::Complement).then(|| p.rules().iter().map(complement_rule).collect());
    move |m: &Interpretation| {
        if !is_model(m, p) {
            return false;
        }
        let t = match &comp {
            Some(rules) => trace_rules(rules, m),
            None => trace_rules(&reduct_rules(p.rules(), m), m),
        };
        t.fixpoint && t.limit() == m
    }
}

/// All answer sets in canonical order.
///
/// Candidates range over subsets of `hset(P)`: an answer set equals
/// `T^∞ ⊆ hset(P)`, so nothing outside the head atoms can occur.
pub fn enumerate_answer_sets(
    p: &Program,
    mode: Mode,
    limits: &Limits,
) -> Result<Vec<Interpretation>> {
    p.require_basic()?;
    let ids = hset(p).to_vec();
    let check = checker(p, mode);
    sweep("answer-set enumeration", &ids, limits, |m| Ok(check(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    fn set(p: &Program, names: &[&str]) -> Interpretation {
        p.atoms().resolve(names.iter().copied()).unwrap()
    }

    fn shown(p: &Program, sets: &[Interpretation]) -> Vec<String> {
        sets.iter().map(|s| p.atoms().render_set(s)).collect()
    }

    /// Independent evaluation of conditional satisfaction over explicit sets.
    fn cond_sat_naive(s: &Interpretation, m: &Interpretation, a: &CAtom) -> bool {
        let d = a.domain();
        let sols = a.solutions();
        let lo = s.intersection(&d);
        let hi = m.intersection(&d);
        sols.contains(&lo)
            && hi
                .subsets()
                .filter(|i| lo.is_subset(i))
                .all(|i| sols.contains(&i))
    }

    #[test]
    fn cond_sat_examples() {
        let p = parse_program("p :- ({q},{{}}). x :- ({y,z},{{},{y,z}}).").unwrap();
        let a = &p.rules()[0].pos()[0];
        assert!(!cond_sat(&Interpretation::new(), &set(&p, &["p", "q"]), a));
        assert!(cond_sat(&Interpretation::new(), &set(&p, &["p"]), a));
        let b = &p.rules()[1].pos()[0];
        assert!(!cond_sat(&Interpretation::new(), &set(&p, &["y", "z"]), b));
        assert!(cond_sat(&set(&p, &["y", "z"]), &set(&p, &["y", "z"]), b));
    }

    #[test]
    fn cond_sat_matches_naive() {
        let p = parse_program("x :- ({a,b,c},{{},{a},{a,b},{a,c},{a,b,c},{b}}).").unwrap();
        let a = &p.rules()[0].pos()[0];
        let all = p.atoms().universe();
        for s in all.subsets() {
            for m in all.subsets() {
                assert_eq!(cond_sat(&s, &m, a), cond_sat_naive(&s, &m, a));
            }
        }
    }

    #[test]
    fn traces_follow_the_worked_examples() {
        let p1 = parse_program("p(a). p(b). p(c) :- q. q :- count{p(a),p(b),p(c)} > 2.").unwrap();
        let m = set(&p1, &["p(a)", "p(b)"]);
        let t = tp_lfp(&p1, &m).unwrap();
        assert_eq!(shown(&p1, &t.stages), ["{}", "{p(a),p(b)}"]);
        assert_eq!(t.converged_at, 1);

        let p2 = parse_program("p(1). p(-1) :- p(2). p(2) :- sum{p(1)=1,p(2)=2,p(-1)=-1} >= 1.")
            .unwrap();
        let m = set(&p2, &["p(1)", "p(-1)"]);
        assert_eq!(
            shown(&p2, &[tp_step(&p2, &Interpretation::new(), &m).unwrap()]),
            ["{p(1)}"]
        );
        let t = tp_lfp(&p2, &m).unwrap();
        assert_eq!(shown(&p2, &t.stages), ["{}", "{p(1)}"]);
        assert_eq!(t.stage(7), &set(&p2, &["p(1)"]));

        let empty = Program::empty();
        let t = tp_lfp(&empty, &Interpretation::new()).unwrap();
        assert_eq!(t.stages.len(), 1);
    }

    #[test]
    fn reduct_and_complement() {
        let p5 = parse_program("a. c :- not ({a,b},{{a,b}}).").unwrap();
        let r = reduct(&p5, &set(&p5, &["a", "c"])).unwrap();
        assert_eq!(crate::parser::render(&r), "a.\nc.");
        let c = complement_program(&p5).unwrap();
        assert_eq!(crate::parser::render(&c), "a.\nc :- ({a,b},{{},{a},{b}}).");

        let p6 = parse_program("c :- not 1{a,b}1. a :- c. b :- a.").unwrap();
        let r = reduct(&p6, &set(&p6, &["a", "b", "c"])).unwrap();
        assert_eq!(crate::parser::render(&r), "c.\na :- c.\nb :- a.");
        assert!(tp_step(&p6, &Interpretation::new(), &Interpretation::new()).is_err());
    }

    #[test]
    fn answer_sets_of_worked_examples() {
        let l = Limits::default();
        let cases: &[(&str, &[&str], &[&str])] = &[
            (
                "p :- ({q},{{}}). q :- ({p},{{}}).",
                &["{p}", "{q}"],
                &["{p}", "{q}"],
            ),
            (
                "p(1). p(-1) :- p(2). p(2) :- sum{p(1)=1,p(2)=2,p(-1)=-1} >= 1.",
                &[],
                &[],
            ),
            ("c. a :- ({a,c},{{},{a,c}}).", &["{c}"], &["{c}"]),
            ("a. c :- not ({a,b},{{a,b}}).", &["{a,c}"], &["{a,c}"]),
            ("c :- not 1{a,b}1. a :- c. b :- a.", &["{a,b,c}"], &[]),
            (
                "p(a). p(b). p(c) :- q. q :- not count{p(a),p(b),p(c)} <= 2.",
                &["{p(a),p(b)}", "{p(a),p(b),p(c),q}"],
                &["{p(a),p(b)}"],
            ),
        ];
        for (text, reduct_sets, comp_sets) in cases {
            let p = parse_program(text).unwrap();
            let r = enumerate_answer_sets(&p, Mode::Reduct, &l).unwrap();
            let c = enumerate_answer_sets(&p, Mode::Complement, &l).unwrap();
            assert_eq!(shown(&p, &r), *reduct_sets, "{text}");
            assert_eq!(shown(&p, &c), *comp_sets, "{text}");
        }
    }

    #[test]
    fn check_answer_set_examples() {
        let p4 = parse_program("c. a :- ({a,c},{{},{a,c}}).").unwrap();
        for mode in Mode::ALL {
            assert!(!check_answer_set(&p4, &set(&p4, &["a", "c"]), mode).unwrap());
            assert!(check_answer_set(&p4, &set(&p4, &["c"]), mode).unwrap());
        }
        let p6 = parse_program("c :- not 1{a,b}1. a :- c. b :- a.").unwrap();
        let m = set(&p6, &["a", "b", "c"]);
        assert!(check_answer_set(&p6, &m, Mode::Reduct).unwrap());
        assert!(!check_answer_set(&p6, &m, Mode::Complement).unwrap());
        let general = parse_program("({a,b},{{a}}).").unwrap();
        assert_eq!(
            check_answer_set(&general, &Interpretation::new(), Mode::Reduct),
            Err(Error::NotBasic)
        );
    }

    #[test]
    fn constraints_restrict_answer_sets() {
        let p = parse_program("p :- ({q},{{}}). q :- ({p},{{}}). :- p.").unwrap();
        let sets = enumerate_answer_sets(&p, Mode::Reduct, &Limits::default()).unwrap();
        assert_eq!(shown(&p, &sets), ["{q}"]);
    }

    #[test]
    fn mode_parses() {
        assert_eq!("reduct".parse::<Mode>().unwrap(), Mode::Reduct);
        assert_eq!(Mode::Complement.to_string(), "complement");
        assert!("both".parse::<Mode>().is_err());
    }
}
