//! Aggregate and choice sugar, expanded into explicit c-atoms.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{AtomTable, CAtom, Interpretation, DOMAIN_CAP};

pub use super::lexer::Cmp as Comparator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AggregateKind {
    Count,
    Sum,
    Avg,
    Min,
    Max,
    Choice,
}

impl fmt::Display for AggregateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AggregateKind::Count => "count",
            AggregateKind::Sum => "sum",
            AggregateKind::Avg => "avg",
            AggregateKind::Min => "min",
            AggregateKind::Max => "max",
            AggregateKind::Choice => "choice",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggElement {
    pub atom: String,
    /// Meaningful for sum, avg, min and max only.
    pub weight: i64,
    /// Meaningful for choice only.
    pub negated: bool,
}

impl AggElement {
    pub fn plain(atom: impl Into<String>) -> Self {
        AggElement {
            atom: atom.into(),
            weight: 1,
            negated: false,
        }
    }

    pub fn weighted(atom: impl Into<String>, weight: i64) -> Self {
        AggElement {
            atom: atom.into(),
            weight,
            negated: false,
        }
    }

    pub fn negated(atom: impl Into<String>) -> Self {
        AggElement {
            atom: atom.into(),
            weight: 1,
            negated: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AggBound {
    /// `F(T) ⊕ rhs`.
    Compare(Comparator, i64),
    /// `L ≤ count ≤ U` for choice atoms.
    Range(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateSugar {
    pub kind: AggregateKind,
    pub elements: Vec<AggElement>,
    pub bound: AggBound,
}

fn compare(lhs: i128, op: Comparator, rhs: i128) -> bool {
    match op {
        Comparator::Lt => lhs < rhs,
        Comparator::Le => lhs <= rhs,
        Comparator::Eq => lhs == rhs,
        Comparator::Ne => lhs != rhs,
        Comparator::Ge => lhs >= rhs,
        Comparator::Gt => lhs > rhs,
    }
}

/// Expands sugar into the c-atom whose solutions are the subsets `T` of the
/// element atoms on which the aggregate condition holds.
///
/// `sum` and `count` of the empty set are 0; `avg`, `min` and `max` are
/// undefined there, so `∅` is never a solution of those.
pub fn expand_aggregate(s: &AggregateSugar, atoms: &AtomTable) -> Result<CAtom> {
    if s.elements.is_empty() {
        return Err(Error::Invalid(format!(
            "{} aggregate without elements",
            s.kind
        )));
    }
    let mut domain = Interpretation::new();
    let mut seen = BTreeSet::new();
    for e in &s.elements {
        let id = atoms
            .lookup(&e.atom)
            .ok_or_else(|| Error::UnknownAtom(e.atom.clone()))?;
        if !seen.insert((
            e.atom.as_str(),
            e.negated && s.kind == AggregateKind::Choice,
        )) {
            return Err(Error::Invalid(format!(
                "atom `{}` listed twice in {} aggregate",
                e.atom, s.kind
            )));
        }
        domain.insert(id);
    }
    if domain.len() > DOMAIN_CAP {
        return Err(Error::cap(
            "aggregate domain",
            domain.len() as u128,
            DOMAIN_CAP as u128,
        ));
    }
    let ids: Vec<_> = s
        .elements
        .iter()
        .map(|e| atoms.lookup(&e.atom).expect("resolved above"))
        .collect();

    match (s.kind, s.bound) {
        (AggregateKind::Choice, AggBound::Range(lo, hi)) => {
            if lo < 0 || lo > hi {
                return Err(Error::Invalid(format!(
                    "choice bounds must satisfy 0 <= L <= U, got {lo} and {hi}"
                )));
            }
            CAtom::from_predicate(&domain, |t| {
                let n = s
                    .elements
                    .iter()
                    .zip(&ids)
                    .filter(|(e, id)| t.contains(**id) != e.negated)
                    .count() as i64;
                lo <= n && n <= hi
            })
        }
        (AggregateKind::Choice, AggBound::Compare(..)) => Err(Error::Invalid(
            "choice atoms take lower and upper bounds".into(),
        )),
        (_, AggBound::Range(..)) => Err(Error::Invalid(format!(
            "{} aggregate takes a comparator",
            s.kind
        ))),
        (kind, AggBound::Compare(op, rhs)) => {
            if s.elements.iter().any(|e| e.negated) {
                return Err(Error::Invalid(format!(
                    "negated elements are only allowed in choice atoms, not {kind}"
                )));
            }
            let rhs = rhs as i128;
            CAtom::from_predicate(&domain, |t| {
                let weights: Vec<i128> = s
                    .elements
                    .iter()
                    .zip(&ids)
                    .filter(|(_, id)| t.contains(**id))
                    .map(|(e, _)| e.weight as i128)
                    .collect();
                let n = weights.len() as i128;
                match kind {
                    AggregateKind::Count => compare(n, op, rhs),
                    AggregateKind::Sum => compare(weights.iter().sum(), op, rhs),
                    // avg ⊕ V  ⇔  sum ⊕ V·n for n > 0
                    AggregateKind::Avg => n > 0 && compare(weights.iter().sum(), op, rhs * n),
                    AggregateKind::Min => {
                        weights.iter().min().is_some_and(|&m| compare(m, op, rhs))
                    }
                    AggregateKind::Max => {
                        weights.iter().max().is_some_and(|&m| compare(m, op, rhs))
                    }
                    AggregateKind::Choice => unreachable!(),
                }
            })
        }
    }
}
