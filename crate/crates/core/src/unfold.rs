//! Normal logic programs: unfolding c-atom programs into them, embedding
//! them as c-atom programs, and a stable-model engine for them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fixpoint::{complement_program, reduct, Mode};
use crate::general::inst_program;
use crate::limits::Limits;
use crate::model::{is_model, AtomId, AtomTable, CAtom, Interpretation, Program, Rule};

/// `head ← pos, not neg`; a `None` head is an integrity constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalRule {
    pub head: Option<AtomId>,
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
}

impl NormalRule {
    /// Bodies are sorted and deduplicated.
    pub fn new(head: Option<AtomId>, mut pos: Vec<AtomId>, mut neg: Vec<AtomId>) -> Self {
        pos.sort();
        pos.dedup();
        neg.sort();
        neg.dedup();
        NormalRule { head, pos, neg }
    }

    pub fn render(&self, atoms: &AtomTable) -> String {
        let body: Vec<String> = self
            .pos
            .iter()
            .map(|&a| atoms.name(a).to_string())
            .chain(self.neg.iter().map(|&a| format!("not {}", atoms.name(a))))
            .collect();
        match (self.head, body.is_empty()) {
            (Some(h), true) => format!("{}.", atoms.name(h)),
            (Some(h), false) => format!("{} :- {}.", atoms.name(h), body.join(", ")),
            (None, true) => ":- #true.".to_string(),
            (None, false) => format!(":- {}.", body.join(", ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalProgram {
    pub atoms: Arc<AtomTable>,
    pub rules: Vec<NormalRule>,
}

impl NormalProgram {
    pub fn new(atoms: Arc<AtomTable>, rules: Vec<NormalRule>) -> Result<Self> {
        let n = atoms.len();
        for r in &rules {
            if let Some(bad) = r
                .head
                .iter()
                .chain(&r.pos)
                .chain(&r.neg)
                .find(|a| a.index() >= n)
            {
                return Err(Error::Invalid(format!(
                    "atom id {} outside a universe of {n} atoms",
                    bad.0
                )));
            }
        }
        Ok(NormalProgram { atoms, rules })
    }

    /// One rule per line, no trailing newline.
    pub fn render(&self) -> String {
        self.rules
            .iter()
            .map(|r| r.render(&self.atoms))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The unfoldings of one c-atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unfolding {
    /// The c-atom has no solutions; its only unfolding is falsity.
    Bottom,
    /// One `(pos, neg)` conjunction per solution `X`: `pos = X`,
    /// `neg = A_d ∖ X`, in canonical solution order.
    Literals(Vec<(Vec<AtomId>, Vec<AtomId>)>),
}

pub fn unfold_catom(a: &CAtom) -> Unfolding {
    if a.num_solutions() == 0 {
        return Unfolding::Bottom;
    }
    let d = a.domain();
    Unfolding::Literals(
        a.solutions()
            .into_iter()
            .map(|x| (x.to_vec(), d.difference(&x).to_vec()))
            .collect(),
    )
}

/// Replaces every body c-atom by each of its unfoldings.
///
/// A rule with a body atom whose only unfolding is falsity can never fire
/// and yields no rules. Output rules are deduplicated and sorted.
pub fn unfold_program(p: &Program, limits: &Limits) -> Result<NormalProgram> {
    p.require_basic_positive()?;
    let mut out: Vec<NormalRule> = Vec::new();
    for r in p.rules() {
        let mut parts = Vec::with_capacity(r.pos().len());
        let mut product: u128 = 1;
        let mut dead = false;
        for a in r.pos() {
            match unfold_catom(a) {
                Unfolding::Bottom => dead = true,
                Unfolding::Literals(v) => {
                    product = product.saturating_mul(v.len() as u128);
                    parts.push(v);
                }
            }
        }
        if dead {
            continue;
        }
        if product > limits.max_unfold_product as u128 {
            return Err(Error::cap(
                "unfolding of a single rule",
                product,
                limits.max_unfold_product as u128,
            ));
        }
        let head = r.head_atom();
        let mut bodies: Vec<(Vec<AtomId>, Vec<AtomId>)> = vec![(Vec::new(), Vec::new())];
        for choices in &parts {
            bodies = bodies
                .iter()
                .flat_map(|(pos, neg)| {
                    choices.iter().map(move |(p2, n2)| {
                        let mut pos = pos.clone();
                        pos.extend_from_slice(p2);
                        let mut neg = neg.clone();
                        neg.extend_from_slice(n2);
                        (pos, neg)
                    })
                })
                .collect();
        }
        out.extend(
            bodies
                .into_iter()
                .map(|(pos, neg)| NormalRule::new(head, pos, neg)),
        );
    }
    out.sort();
    out.dedup();
    NormalProgram::new(Arc::clone(p.atoms_arc()), out)
}

/// Each atom `a` becomes `({a},{{a}})`; constraints get a ⊥ head.
pub fn catom_embed(n: &NormalProgram) -> Program {
    let rules = n
        .rules
        .iter()
        .map(|r| {
            let head = r.head.map_or_else(CAtom::bottom, CAtom::elementary);
            Rule::new(
                head,
                r.pos.iter().map(|&a| CAtom::elementary(a)).collect(),
                r.neg.iter().map(|&a| CAtom::elementary(a)).collect(),
            )
        })
        .collect();
    Program::new(Arc::clone(&n.atoms), rules).expect("ids come from the same universe")
}

/// `T(R, S) = {head(r) : pos(r) ⊆ R, neg(r) ∩ S = ∅}` over heads.
fn t_two(n: &NormalProgram, r_set: &Interpretation, s: &Interpretation) -> Interpretation {
    let mut out = Interpretation::new();
    for r in &n.rules {
        if let Some(h) = r.head {
            if r.pos.iter().all(|&a| r_set.contains(a)) && r.neg.iter().all(|&a| !s.contains(a)) {
                out.insert(h);
            }
        }
    }
    out
}

/// `M` is stable iff iterating `I_{i+1} = T(I_i, M)` from `∅` reaches `M`
/// and no constraint body holds in `M`.
pub fn is_gl_stable(n: &NormalProgram, m: &Interpretation) -> bool {
    let mut i = Interpretation::new();
    loop {
        let next = t_two(n, &i, m);
        if next == i {
            break;
        }
        i = next;
    }
    i == *m
        && n.rules.iter().filter(|r| r.head.is_none()).all(|r| {
            !(r.pos.iter().all(|&a| m.contains(a)) && r.neg.iter().all(|&a| !m.contains(a)))
        })
}

/// All stable models over the program's universe, in canonical order.
pub fn gl_stable_models(n: &NormalProgram, limits: &Limits) -> Result<Vec<Interpretation>> {
    let ids: Vec<AtomId> = n.atoms.ids().collect();
    limits.check_sweep("stable-model enumeration", ids.len())?;
    let mut out: Vec<Interpretation> = (0..1u64 << ids.len())
        .map(|mask| Interpretation::from_mask(&ids, mask))
        .filter(|m| is_gl_stable(n, m))
        .collect();
    out.sort();
    Ok(out)
}

/// Decides `M` through the unfolding: complement mode unfolds the
/// complement program, reduct mode the reduct `P^M` of a model `M`, and `M`
/// must be a stable model of the result. Programs with non-elementary heads
/// are replaced by their instance for `M` first.
///
/// This is only as sound as the unfolding itself, which can lose answer sets
/// (see the tests).
pub fn unfolded_answer_set(
    p: &Program,
    m: &Interpretation,
    mode: Mode,
    limits: &Limits,
) -> Result<bool> {
    if !p.is_basic() {
        return Ok(is_model(m, p) && unfolded_answer_set(&inst_program(p, m), m, mode, limits)?);
    }
    let positive = match mode {
        Mode::Complement => complement_program(p)?,
        Mode::Reduct if !is_model(m, p) => return Ok(false),
        Mode::Reduct => reduct(p, m)?,
    };
    Ok(is_gl_stable(&unfold_program(&positive, limits)?, m))
}
