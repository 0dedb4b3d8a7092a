use std::sync::Arc;

use crate::error::{Error, Result};

use super::ops::classify;
use super::{AtomId, AtomTable, CAtom};

/// `head ← pos₁, …, posₖ, not neg₁, …, not negₘ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    head: CAtom,
    pos: Vec<CAtom>,
    neg: Vec<CAtom>,
}

impl Rule {
    /// Repeated body atoms are dropped, keeping the first occurrence.
    pub fn new(head: CAtom, pos: Vec<CAtom>, neg: Vec<CAtom>) -> Self {
        Rule {
            head,
            pos: dedup_keep_order(pos),
            neg: dedup_keep_order(neg),
        }
    }

    pub fn fact(head: CAtom) -> Self {
        Rule::new(head, Vec::new(), Vec::new())
    }

    pub fn head(&self) -> &CAtom {
        &self.head
    }

    pub fn pos(&self) -> &[CAtom] {
        &self.pos
    }

    pub fn neg(&self) -> &[CAtom] {
        &self.neg
    }

    /// Atom of an elementary head.
    pub fn head_atom(&self) -> Option<AtomId> {
        self.head.elementary_atom()
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_bottom()
    }

    pub fn is_basic(&self) -> bool {
        self.head.is_elementary() || self.head.is_bottom()
    }

    pub fn is_positive(&self) -> bool {
        self.neg.is_empty()
    }

    /// Every c-atom of the rule, head first.
    pub fn catoms(&self) -> impl Iterator<Item = &CAtom> {
        std::iter::once(&self.head)
            .chain(self.pos.iter())
            .chain(self.neg.iter())
    }
}

fn dedup_keep_order(v: Vec<CAtom>) -> Vec<CAtom> {
    let mut out: Vec<CAtom> = Vec::with_capacity(v.len());
    for a in v {
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

/// Syntactic classes of a program, computed once at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ProgramClass {
    /// Every head is elementary or ⊥.
    pub basic: bool,
    /// No negation-as-failure.
    pub positive: bool,
    /// Every c-atom is monotone.
    pub monotone: bool,
    /// Every c-atom under `not` is monotone.
    pub naf_monotone: bool,
}

impl ProgramClass {
    pub fn of(rules: &[Rule]) -> Self {
        ProgramClass {
            basic: rules.iter().all(Rule::is_basic),
            positive: rules.iter().all(Rule::is_positive),
            monotone: rules
                .iter()
                .flat_map(Rule::catoms)
                .all(|a| classify(a).monotone),
            naf_monotone: rules
                .iter()
                .flat_map(|r| r.neg.iter())
                .all(|a| classify(a).monotone),
        }
    }
}

/// A propositional program over an interned atom universe.
///
/// Programs derived from another program (reducts, complements, instances)
/// share the parent's universe even when some atoms no longer occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    atoms: Arc<AtomTable>,
    rules: Vec<Rule>,
    class: ProgramClass,
}

impl Program {
    pub fn new(atoms: Arc<AtomTable>, rules: Vec<Rule>) -> Result<Self> {
        let n = atoms.len();
        for r in &rules {
            for a in r.catoms() {
                if let Some(bad) = a.domain_ids().iter().find(|id| id.index() >= n) {
                    return Err(Error::Invalid(format!(
                        "atom id {} outside a universe of {n} atoms",
                        bad.0
                    )));
                }
            }
        }
        let class = ProgramClass::of(&rules);
        Ok(Program {
            atoms,
            rules,
            class,
        })
    }

    /// Same universe, different rules. Ids are trusted to come from `self`.
    pub(crate) fn derive(&self, rules: Vec<Rule>) -> Program {
        let class = ProgramClass::of(&rules);
        Program {
            atoms: Arc::clone(&self.atoms),
            rules,
            class,
        }
    }

    pub fn empty() -> Self {
        Program {
            atoms: Arc::new(AtomTable::default()),
            rules: Vec::new(),
            class: ProgramClass::of(&[]),
        }
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn atoms_arc(&self) -> &Arc<AtomTable> {
        &self.atoms
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn class(&self) -> ProgramClass {
        self.class
    }

    pub fn is_basic(&self) -> bool {
        self.class.basic
    }

    pub fn is_positive(&self) -> bool {
        self.class.positive
    }

    pub fn is_monotone(&self) -> bool {
        self.class.monotone
    }

    pub fn is_naf_monotone(&self) -> bool {
        self.class.naf_monotone
    }

    pub(crate) fn require_basic(&self) -> Result<()> {
        if self.is_basic() {
            Ok(())
        } else {
            Err(Error::NotBasic)
        }
    }

    pub(crate) fn require_basic_positive(&self) -> Result<()> {
        if self.is_basic() && self.is_positive() {
            Ok(())
        } else {
            Err(Error::NotBasicPositive)
        }
    }
}
