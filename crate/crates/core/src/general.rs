//! Answer sets of programs with arbitrary c-atoms in rule heads, through the
//! instance of a program with respect to a candidate model.

use crate::error::Result;
use crate::fixpoint::{self, Mode};
use crate::limits::Limits;
use crate::model::{hset, is_model, CAtom, Interpretation, Program, Rule};
use crate::sweep::sweep;

/// `inst(r, M)`: one rule `b ← body(r)` per `b ∈ M ∩ head_d` when
/// `M ∩ head_d` is a head solution, nothing otherwise.
pub fn inst_rule(r: &Rule, m: &Interpretation) -> Vec<Rule> {
    let head = r.head();
    if !head.has_mask(head.project(m)) {
        return Vec::new();
    }
    head.domain_ids()
        .iter()
        .filter(|&&b| m.contains(b))
        .map(|&b| Rule::new(CAtom::elementary(b), r.pos().to_vec(), r.neg().to_vec()))
        .collect()
}

/// Union of the rule instances, first occurrence kept.
pub fn inst_program(p: &Program, m: &Interpretation) -> Program {
    let mut rules: Vec<Rule> = Vec::new();
    for r in p.rules() {
        for i in inst_rule(r, m) {
            if !rules.contains(&i) {
                rules.push(i);
            }
        }
    }
    p.derive(rules)
}

/// `M` is a model of `P` and an answer set of `inst(P, M)`.
pub fn check_answer_set_general(p: &Program, m: &Interpretation, mode: Mode) -> Result<bool> {
    if !is_model(m, p) {
        return Ok(false);
    }
    fixpoint::check_answer_set(&inst_program(p, m), m, mode)
}

/// All answer sets in canonical order. Results need not be minimal.
pub fn enumerate_answer_sets_general(
    p: &Program,
    mode: Mode,
    limits: &Limits,
) -> Result<Vec<Interpretation>> {
    // Every instance head lies in hset(P), hence so does every answer set.
    let ids = hset(p).to_vec();
    sweep("answer-set enumeration", &ids, limits, |m| {
        check_answer_set_general(p, m, mode)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_program, render};

    fn set(p: &Program, names: &[&str]) -> Interpretation {
        p.atoms().resolve(names.iter().copied()).unwrap()
    }

    fn shown(p: &Program, sets: &[Interpretation]) -> Vec<String> {
        sets.iter().map(|s| p.atoms().render_set(s)).collect()
    }

    const P8: &str = "({a,b},{{a},{b}}).";
    const P9: &str = "({a,b},{{a},{b},{a,b}}). c :- b.";

    #[test]
    fn instances() {
        let p8 = parse_program(P8).unwrap();
        assert_eq!(render(&inst_program(&p8, &set(&p8, &["a"]))), "a.");
        assert_eq!(render(&inst_program(&p8, &set(&p8, &["b"]))), "b.");
        assert_eq!(render(&inst_program(&p8, &set(&p8, &["a", "b"]))), "");

        let p9 = parse_program(P9).unwrap();
        assert_eq!(
            inst_rule(&p9.rules()[0], &set(&p9, &["a", "b", "c"])).len(),
            2
        );
        assert_eq!(
            render(&inst_program(&p9, &set(&p9, &["a", "c"]))),
            "a.\nc :- b."
        );
        assert!(inst_program(&p9, &set(&p9, &["a", "b"])).is_basic());
    }

    #[test]
    fn answer_sets() {
        let l = Limits::default();
        let p8 = parse_program(P8).unwrap();
        let p9 = parse_program(P9).unwrap();
        for mode in Mode::ALL {
            assert_eq!(
                shown(&p8, &enumerate_answer_sets_general(&p8, mode, &l).unwrap()),
                ["{a}", "{b}"]
            );
            assert_eq!(
                shown(&p9, &enumerate_answer_sets_general(&p9, mode, &l).unwrap()),
                ["{a}", "{b,c}", "{a,b,c}"]
            );
            assert!(!check_answer_set_general(&p9, &set(&p9, &["a", "c"]), mode).unwrap());
            assert!(!check_answer_set_general(&p8, &set(&p8, &["a", "b"]), mode).unwrap());
        }
        let empty = Program::empty();
        assert_eq!(
            enumerate_answer_sets_general(&empty, Mode::Reduct, &l).unwrap(),
            [Interpretation::new()]
        );
    }

    #[test]
    fn basic_programs_are_their_own_instance() {
        let p = parse_program("c :- not 1{a,b}1. a :- c. b :- a.").unwrap();
        let m = set(&p, &["a", "b", "c"]);
        assert_eq!(render(&inst_program(&p, &m)), render(&p));
    }
}
