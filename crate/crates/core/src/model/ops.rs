//! Satisfaction, models, support and the structural operations on c-atoms.

use crate::error::Result;
use crate::limits::Limits;

use super::catom::full_mask;
use super::{AtomId, CAtom, Interpretation, Program, Rule};

/// `S ⊨ A` iff `S ∩ A_d ∈ A_c`.
#[inline]
pub fn satisfies(s: &Interpretation, a: &CAtom) -> bool {
    a.has_mask(a.project(s))
}

/// `S ⊨ not A`.
#[inline]
pub fn satisfies_naf(s: &Interpretation, a: &CAtom) -> bool {
    !satisfies(s, a)
}

pub fn satisfies_body(s: &Interpretation, r: &Rule) -> bool {
    r.pos().iter().all(|a| satisfies(s, a)) && r.neg().iter().all(|a| satisfies_naf(s, a))
}

pub fn satisfies_rule(s: &Interpretation, r: &Rule) -> bool {
    satisfies(s, r.head()) || !satisfies_body(s, r)
}

pub fn is_model(s: &Interpretation, p: &Program) -> bool {
    p.rules().iter().all(|r| satisfies_rule(s, r))
}

/// Model with no proper subset that is also a model.
pub fn is_minimal_model(s: &Interpretation, p: &Program, limits: &Limits) -> Result<bool> {
    if !is_model(s, p) {
        return Ok(false);
    }
    let members = s.to_vec();
    limits.check_sweep("minimality check", members.len())?;
    let full = (1u64 << members.len()) - 1;
    Ok((0..full).all(|m| !is_model(&Interpretation::from_mask(&members, m), p)))
}

/// Every model of `p` over its universe, in canonical order.
pub fn models(p: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    let ids: Vec<AtomId> = p.atoms().ids().collect();
    limits.check_sweep("model enumeration", ids.len())?;
    let mut out: Vec<Interpretation> = (0..(1u64 << ids.len()))
        .map(|m| Interpretation::from_mask(&ids, m))
        .filter(|s| is_model(s, p))
        .collect();
    out.sort();
    Ok(out)
}

/// `S` supports `a` w.r.t. `p`: some rule with `S ⊨ body` has a head
/// solution `X ⊆ S` containing `a`.
pub fn supports(s: &Interpretation, p: &Program, a: AtomId) -> bool {
    p.rules().iter().any(|r| {
        if !satisfies_body(s, r) {
            return false;
        }
        let head = r.head();
        let Some(pos) = head.domain_ids().iter().position(|&d| d == a) else {
            return false;
        };
        let inside = head.project(s);
        head.solution_masks()
            .iter()
            .any(|&x| x & (1 << pos) != 0 && x & !inside == 0)
    })
}

/// Union of the head domains.
pub fn hset(p: &Program) -> Interpretation {
    let mut out = Interpretation::new();
    for r in p.rules() {
        for &a in r.head().domain_ids() {
            out.insert(a);
        }
    }
    out
}

/// `(A_d, 2^{A_d} ∖ A_c)`.
pub fn complement(a: &CAtom) -> CAtom {
    let full = a.full_mask();
    let masks = (0..=full).filter(|&m| !a.has_mask(m)).collect::<Vec<_>>();
    CAtom::from_masks(a.domain_ids().to_vec(), masks)
}

/// `(A_d, {Y ⊆ A_d : ∃Z ∈ A_c, Z ⊆ Y})`.
pub fn closure(a: &CAtom) -> CAtom {
    let up = upward(a);
    let masks = up
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(m, _)| m as u32)
        .collect::<Vec<_>>();
    CAtom::from_masks(a.domain_ids().to_vec(), masks)
}

/// Marks every subset of the domain lying above some solution.
fn upward(a: &CAtom) -> Vec<bool> {
    let n = a.domain_len();
    let mut marks = vec![false; 1usize << n];
    for &m in a.solution_masks() {
        marks[m as usize] = true;
    }
    for bit in 0..n {
        for m in 0..marks.len() {
            if m & (1 << bit) == 0 && marks[m] {
                marks[m | (1 << bit)] = true;
            }
        }
    }
    marks
}

/// Marks every subset of the domain lying below some solution.
fn downward(a: &CAtom) -> Vec<bool> {
    let n = a.domain_len();
    let mut marks = vec![false; 1usize << n];
    for &m in a.solution_masks() {
        marks[m as usize] = true;
    }
    for bit in 0..n {
        for m in (0..marks.len()).rev() {
            if m & (1 << bit) != 0 && marks[m] {
                marks[m & !(1 << bit)] = true;
            }
        }
    }
    marks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CAtomClass {
    pub elementary: bool,
    /// Solutions are closed under supersets within the domain.
    pub monotone: bool,
    /// Every set between two solutions is a solution.
    pub convex: bool,
    /// Equal to its own closure.
    pub closed: bool,
}

pub fn classify(a: &CAtom) -> CAtomClass {
    let n = a.domain_len();
    let full = full_mask(n);
    let monotone = a.solution_masks().iter().all(|&x| {
        (0..n)
            .filter(|b| x & (1 << b) == 0)
            .all(|b| a.has_mask(x | (1 << b)))
    });
    let up = upward(a);
    let down = downward(a);
    let convex = (0..=full).all(|m| !(up[m as usize] && down[m as usize]) || a.has_mask(m));
    let closed = up
        .iter()
        .enumerate()
        .all(|(m, &b)| b == a.has_mask(m as u32));
    CAtomClass {
        elementary: a.is_elementary(),
        monotone,
        convex,
        closed,
    }
}
