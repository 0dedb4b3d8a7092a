//! Competing semantics for c-atom programs, used as comparators: stable
//! models of monotone programs via computations, answer sets via the
//! NSS-reduct, FLP-reduct answer sets, and the aggregate consequence
//! operator built on solution pairs.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fixpoint::{complement_rule, reduct_rules};
use crate::limits::Limits;
use crate::model::{
    closure, is_minimal_model, is_model, satisfies, satisfies_body, CAtom, Interpretation, Program,
    Rule,
};

/// `P(S)`: rules whose body is satisfied by `s`.
pub fn applicable<'a>(p: &'a Program, s: &Interpretation) -> Vec<&'a Rule> {
    p.rules().iter().filter(|r| satisfies_body(s, r)).collect()
}

fn head_union<'a>(rules: impl IntoIterator<Item = &'a Rule>) -> Interpretation {
    let mut h = Interpretation::new();
    for r in rules {
        for &a in r.head().domain_ids() {
            h.insert(a);
        }
    }
    h
}

/// `T^nd_P(S)`: every `S' ⊆ hset(P(S))` satisfying the head of each rule
/// applicable in `s`, in canonical order.
pub fn tnd(p: &Program, s: &Interpretation, limits: &Limits) -> Result<Vec<Interpretation>> {
    let apps = applicable(p, s);
    let ids = head_union(apps.iter().copied()).to_vec();
    limits.check_sweep("one-step provability", ids.len())?;
    let mut out: Vec<Interpretation> = (0..1u64 << ids.len())
        .map(|m| Interpretation::from_mask(&ids, m))
        .filter(|t| apps.iter().all(|r| satisfies(t, r.head())))
        .collect();
    out.sort();
    Ok(out)
}

/// Membership test for `T^nd_P(S)` without enumerating it.
fn in_tnd(rules: &[Rule], s: &Interpretation, t: &Interpretation) -> bool {
    let apps: Vec<&Rule> = rules.iter().filter(|r| satisfies_body(s, r)).collect();
    t.is_subset(&head_union(apps.iter().copied())) && apps.iter().all(|r| satisfies(t, r.head()))
}

/// A finite presentation of a computation: the listed steps, after which the
/// last step repeats forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computation {
    /// `X_0 = ∅, X_1, …, X_k`.
    pub steps: Vec<Interpretation>,
    /// `X_k`, the union of all steps.
    pub result: Interpretation,
}

impl Computation {
    /// Checks `X_0 = ∅`, `X_n ⊆ X_{n+1}` and `X_{n+1} ∈ T^nd(X_n)` for every
    /// listed step and for the repeated tail.
    pub fn is_valid_for(&self, p: &Program) -> bool {
        is_computation(p.rules(), &self.steps)
    }
}

fn is_computation(rules: &[Rule], steps: &[Interpretation]) -> bool {
    let Some(last) = steps.last() else {
        return false;
    };
    steps[0].is_empty()
        && steps
            .windows(2)
            .all(|w| w[0].is_subset(&w[1]) && in_tnd(rules, &w[0], &w[1]))
        && in_tnd(rules, last, last)
}

/// `P^M` for programs of any head shape.
pub fn mt_reduct(p: &Program, m: &Interpretation) -> Program {
    p.derive(reduct_rules(p.rules(), m))
}

/// `X_0 = ∅, X_{i+1} = ⋃_{r ∈ P(X_i)} head(r)_d ∩ M`, stopped at the first
/// repetition.
pub fn canonical_computation(p: &Program, m: &Interpretation) -> Computation {
    let mut steps = vec![Interpretation::new()];
    loop {
        let last = steps.last().unwrap();
        let next = p
            .rules()
            .iter()
            .filter(|r| satisfies_body(last, r))
            .fold(Interpretation::new(), |acc, r| {
                acc.union(&r.head().domain().intersection(m))
            });
        if steps.contains(&next) {
            let result = steps.last().unwrap().clone();
            return Computation { steps, result };
        }
        steps.push(next);
    }
}

/// Stable model of a monotone program: `M` is the result of a computation
/// of `P^M`. Decided with the canonical computation, which is validated step
/// by step.
pub fn mt_stable(p: &Program, m: &Interpretation) -> Result<bool> {
    if !p.is_monotone() {
        return Err(Error::NotMonotone);
    }
    let reduct = mt_reduct(p, m);
    let c = canonical_computation(&reduct, m);
    Ok(is_model(m, p) && c.result == *m && c.is_valid_for(&reduct))
}

/// Exhaustive search for a computation of `p` whose result is `target`, for
/// programs of any kind. Returns a shortest one.
pub fn derivation(
    p: &Program,
    target: &Interpretation,
    limits: &Limits,
) -> Result<Option<Computation>> {
    let members = target.to_vec();
    limits.check_sweep("derivability search", members.len())?;
    let rules = p.rules();
    let start = Interpretation::new();
    let mut parent: HashMap<Interpretation, Option<Interpretation>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == *target {
            if !in_tnd(rules, &x, &x) {
                continue;
            }
            let mut steps = vec![x.clone()];
            let mut cur = x;
            while let Some(Some(prev)) = parent.get(&cur) {
                steps.push(prev.clone());
                cur = prev.clone();
            }
            steps.reverse();
            return Ok(Some(Computation {
                steps,
                result: target.clone(),
            }));
        }
        // Successors X ⊆ Y ⊆ target with Y ∈ T^nd(X).
        let free: Vec<_> = members
            .iter()
            .copied()
            .filter(|a| !x.contains(*a))
            .collect();
        for extra in 0..1u64 << free.len() {
            let y = x.union(&Interpretation::from_mask(&free, extra));
            if y != x && !parent.contains_key(&y) && in_tnd(rules, &x, &y) {
                parent.insert(y.clone(), Some(x.clone()));
                queue.push_back(y);
            }
        }
    }
    Ok(None)
}

/// How the NSS-reduct treats negation-as-failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NafConvention {
    /// Programs with naf are rejected with [`Error::NotPositive`].
    Reject,
    /// `not A` is read as the complement of `A`. Results on such programs
    /// depend on this convention.
    Complement,
}

fn positive_rules(p: &Program, conv: NafConvention) -> Result<Vec<Rule>> {
    if p.is_positive() {
        return Ok(p.rules().to_vec());
    }
    match conv {
        NafConvention::Reject => Err(Error::NotPositive),
        NafConvention::Complement => Ok(p.rules().iter().map(complement_rule).collect()),
    }
}

fn is_horn(r: &Rule) -> bool {
    r.head().is_elementary() && r.neg().is_empty() && r.pos().iter().all(|a| closure(a) == *a)
}

/// `NSS(P, M)`: rules with `M ⊨ body`, each replaced by
/// `{a ← closure(body) : a ∈ head_d ∩ M}`.
pub fn nss_reduct(p: &Program, m: &Interpretation, conv: NafConvention) -> Result<Program> {
    let rules = positive_rules(p, conv)?;
    let mut out: Vec<Rule> = Vec::new();
    for r in rules.iter().filter(|r| satisfies_body(m, r)) {
        let body: Vec<CAtom> = r.pos().iter().map(closure).collect();
        for &a in r.head().domain_ids().iter().filter(|&&a| m.contains(a)) {
            let nr = Rule::new(CAtom::elementary(a), body.clone(), Vec::new());
            if !out.contains(&nr) {
                out.push(nr);
            }
        }
    }
    debug_assert!(out.iter().all(is_horn));
    Ok(p.derive(out))
}

/// Least fixpoint of `T(X) = {a : a ← body ∈ P, X ⊨ body}` for a Horn program.
pub fn horn_lfp(p: &Program) -> Interpretation {
    let mut x = Interpretation::new();
    loop {
        let next: Interpretation = p
            .rules()
            .iter()
            .filter(|r| satisfies_body(&x, r))
            .filter_map(Rule::head_atom)
            .collect();
        if next == x {
            return x;
        }
        x = next;
    }
}

/// Answer set via the NSS-reduct: `M` is a model and the least fixpoint of
/// `NSS(P, M)` is `M`.
pub fn mr_answer_set(p: &Program, m: &Interpretation, conv: NafConvention) -> Result<bool> {
    let nss = nss_reduct(p, m, conv)?;
    Ok(is_model(m, p) && horn_lfp(&nss) == *m)
}

/// `M` is a minimal model of the rules whose body `M` satisfies.
pub fn flp_answer_set(p: &Program, m: &Interpretation, limits: &Limits) -> Result<bool> {
    p.require_basic()?;
    let kept = p
        .rules()
        .iter()
        .filter(|r| satisfies_body(m, r))
        .cloned()
        .collect();
    is_minimal_model(m, &p.derive(kept), limits)
}

/// A partial assignment: atoms known true and atoms known false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionPair {
    pub s_plus: Interpretation,
    pub s_minus: Interpretation,
}

impl SolutionPair {
    pub fn new(s_plus: Interpretation, s_minus: Interpretation) -> Result<Self> {
        if !s_plus.is_disjoint(&s_minus) {
            return Err(Error::Invalid("a solution pair must be disjoint".into()));
        }
        Ok(SolutionPair { s_plus, s_minus })
    }

    /// Every `J ⊆ A_d` with `s_plus ⊆ J` and `J ∩ s_minus = ∅` is a solution.
    pub fn is_solution_of(&self, a: &CAtom) -> bool {
        let plus = a.project(&self.s_plus);
        let minus = a.project(&self.s_minus);
        (0..=a.full_mask())
            .filter(|j| j & plus == plus && j & minus == 0)
            .all(|j| a.has_mask(j))
    }
}

/// `(I, M) ⊨ A`: `⟨I ∩ M ∩ A_d, A_d ∖ M⟩` is a solution of `A`.
pub fn pelov_cond_sat(i: &Interpretation, m: &Interpretation, a: &CAtom) -> bool {
    let d = a.domain();
    SolutionPair {
        s_plus: i.intersection(m).intersection(&d),
        s_minus: d.difference(m),
    }
    .is_solution_of(a)
}

fn k_rules(rules: &[Rule], i: &Interpretation, m: &Interpretation) -> Interpretation {
    rules
        .iter()
        .filter(|r| r.pos().iter().all(|a| pelov_cond_sat(i, m, a)))
        .filter_map(Rule::head_atom)
        .collect()
}

/// `K^P_M(I)`: heads of rules whose whole body holds in `(I, M)`.
pub fn k_operator(p: &Program, i: &Interpretation, m: &Interpretation) -> Result<Interpretation> {
    p.require_basic_positive()?;
    Ok(k_rules(p.rules(), i, m))
}

/// `M` is a model and the least fixpoint of `K_M` on `𝒞(P)` is `M`. A naf
/// atom holds in `(I, M)` when its complement does.
pub fn pelov_answer_set(p: &Program, m: &Interpretation) -> Result<bool> {
    p.require_basic()?;
    if !is_model(m, p) {
        return Ok(false);
    }
    let rules: Vec<Rule> = p.rules().iter().map(complement_rule).collect();
    let mut i = Interpretation::new();
    loop {
        let next = k_rules(&rules, &i, m);
        if next == i {
            return Ok(i == *m);
        }
        if !i.is_subset(&next) {
            return Ok(false);
        }
        i = next;
    }
}

/// The comparator semantics, by column name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    Mr,
    Mt,
    Flp,
    Pelov,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::Mr,
        Semantics::Mt,
        Semantics::Flp,
        Semantics::Pelov,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Mr => "mr",
            Semantics::Mt => "mt",
            Semantics::Flp => "flp",
            Semantics::Pelov => "pelov",
        }
    }

    /// Decides `m` under this semantics. Naf is read by complement for MR.
    pub fn accepts(self, p: &Program, m: &Interpretation, limits: &Limits) -> Result<bool> {
        match self {
            Semantics::Mr => mr_answer_set(p, m, NafConvention::Complement),
            Semantics::Mt => mt_stable(p, m),
            Semantics::Flp => flp_answer_set(p, m, limits),
            Semantics::Pelov => pelov_answer_set(p, m),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Semantics::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown semantics `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixpoint::{cond_sat, tp_step};
    use crate::parser::{parse_program, render};

    fn set(p: &Program, names: &[&str]) -> Interpretation {
        p.atoms().resolve(names.iter().copied()).unwrap()
    }

    fn shown(p: &Program, sets: &[Interpretation]) -> Vec<String> {
        sets.iter().map(|s| p.atoms().render_set(s)).collect()
    }

    const P3: &str = "p :- ({q},{{}}). q :- ({p},{{}}).";
    const P4: &str = "c. a :- ({a,c},{{},{a,c}}).";
    const P2: &str = "p(1). p(-1) :- p(2). p(2) :- sum{p(1)=1,p(2)=2,p(-1)=-1} >= 1.";
    const EX21: &str = "p(1) :- ({p(1),p(-1)},{{},{p(1),p(-1)}}). p(1) :- p(-1). p(-1) :- p(1).";

    #[test]
    fn one_step_provability() {
        let l = Limits::default();
        let p3 = parse_program(P3).unwrap();
        let none = Interpretation::new();
        assert_eq!(applicable(&p3, &none).len(), 2);
        assert!(applicable(&p3, &set(&p3, &["p", "q"])).is_empty());
        assert_eq!(shown(&p3, &tnd(&p3, &none, &l).unwrap()), ["{p,q}"]);
        assert_eq!(
            shown(&p3, &tnd(&p3, &set(&p3, &["p", "q"]), &l).unwrap()),
            ["{}"]
        );

        let p8 = parse_program("({a,b},{{a},{b}}).").unwrap();
        assert_eq!(shown(&p8, &tnd(&p8, &none, &l).unwrap()), ["{a}", "{b}"]);
        assert!(applicable(&Program::empty(), &none).is_empty());
    }

    #[test]
    fn stable_models_of_monotone_programs() {
        let l = Limits::default();
        let n = parse_program("p :- not q. q :- not p.").unwrap();
        assert!(mt_stable(&n, &set(&n, &["p"])).unwrap());
        assert!(!mt_stable(&n, &set(&n, &["p", "q"])).unwrap());
        let c = canonical_computation(&mt_reduct(&n, &set(&n, &["p"])), &set(&n, &["p"]));
        assert_eq!(shown(&n, &c.steps), ["{}", "{p}"]);

        let p3 = parse_program(P3).unwrap();
        assert_eq!(mt_stable(&p3, &set(&p3, &["p"])), Err(Error::NotMonotone));
        let reduct = mt_reduct(&p3, &set(&p3, &["p"]));
        assert_eq!(derivation(&reduct, &set(&p3, &["p"]), &l).unwrap(), None);

        let facts = parse_program("a. b.").unwrap();
        assert!(mt_stable(&facts, &facts.atoms().universe()).unwrap());

        // A choice head is monotone when its family is superset-closed.
        let g = parse_program("({a,b},{{a},{b},{a,b}}). c :- b.").unwrap();
        for (m, want) in [
            (&["a"][..], true),
            (&["b", "c"], true),
            (&["a", "b", "c"], true),
            (&["a", "c"], false),
        ] {
            assert_eq!(mt_stable(&g, &set(&g, m)).unwrap(), want, "{m:?}");
            let found = derivation(&mt_reduct(&g, &set(&g, m)), &set(&g, m), &l).unwrap();
            assert_eq!(found.is_some() && is_model(&set(&g, m), &g), want);
        }
    }

    #[test]
    fn nss_answer_sets() {
        let p4 = parse_program(P4).unwrap();
        let ac = set(&p4, &["a", "c"]);
        assert_eq!(
            render(&nss_reduct(&p4, &ac, NafConvention::Reject).unwrap()),
            "c.\na :- ({a,c},{{},{a},{c},{a,c}})."
        );
        assert!(mr_answer_set(&p4, &ac, NafConvention::Reject).unwrap());
        assert!(mr_answer_set(&p4, &set(&p4, &["c"]), NafConvention::Reject).unwrap());

        let p10 = parse_program("a. c. d :- ({a,c,d},{{a},{a,c,d}}).").unwrap();
        assert!(mr_answer_set(&p10, &set(&p10, &["a", "c"]), NafConvention::Reject).unwrap());
        assert!(mr_answer_set(&p10, &set(&p10, &["a", "c", "d"]), NafConvention::Reject).unwrap());

        let p2 = parse_program(P2).unwrap();
        let m = set(&p2, &["p(1)", "p(-1)", "p(2)"]);
        assert!(mr_answer_set(&p2, &m, NafConvention::Reject).unwrap());
        assert!(!flp_answer_set(&p2, &m, &Limits::default()).unwrap());

        let naf = parse_program("a :- not b.").unwrap();
        assert_eq!(
            mr_answer_set(&naf, &set(&naf, &["a"]), NafConvention::Reject),
            Err(Error::NotPositive)
        );
        assert!(mr_answer_set(&naf, &set(&naf, &["a"]), NafConvention::Complement).unwrap());
    }

    #[test]
    fn flp_and_pelov_on_the_two_valued_divergence() {
        let l = Limits::default();
        let p = parse_program(EX21).unwrap();
        let m = set(&p, &["p(1)", "p(-1)"]);
        assert!(flp_answer_set(&p, &m, &l).unwrap());
        assert!(mr_answer_set(&p, &m, NafConvention::Reject).unwrap());
        assert!(!pelov_answer_set(&p, &m).unwrap());
        assert!(!pelov_cond_sat(
            &Interpretation::new(),
            &m,
            &p.rules()[0].pos()[0]
        ));

        let facts = parse_program("a. b.").unwrap();
        assert!(flp_answer_set(&facts, &facts.atoms().universe(), &l).unwrap());
        let general = parse_program("({a,b},{{a}}).").unwrap();
        assert_eq!(
            flp_answer_set(&general, &Interpretation::new(), &l),
            Err(Error::NotBasic)
        );
    }

    #[test]
    fn pelov_matches_cond_sat_below_the_model() {
        let p = parse_program("x :- ({a,b,c},{{},{a},{a,b},{b,c},{a,b,c}}). y :- a, ({b},{{}}).")
            .unwrap();
        let all = p.atoms().universe();
        for m in all.subsets() {
            for i in m.subsets() {
                for r in p.rules() {
                    for a in r.pos() {
                        assert_eq!(pelov_cond_sat(&i, &m, a), cond_sat(&i, &m, a));
                    }
                }
                assert_eq!(
                    k_operator(&p, &i, &m).unwrap(),
                    tp_step(&p, &i, &m).unwrap()
                );
            }
            assert_eq!(
                pelov_cond_sat(&m, &m, &p.rules()[0].pos()[0]),
                satisfies(&m, &p.rules()[0].pos()[0])
            );
        }
    }

    #[test]
    fn solution_pairs_are_disjoint() {
        let p = parse_program("a. b.").unwrap();
        assert!(SolutionPair::new(set(&p, &["a"]), set(&p, &["a"])).is_err());
        assert!(SolutionPair::new(set(&p, &["a"]), set(&p, &["b"])).is_ok());
    }

    #[test]
    fn semantics_names() {
        for s in Semantics::ALL {
            assert_eq!(s.as_str().parse::<Semantics>().unwrap(), s);
        }
    }
}
