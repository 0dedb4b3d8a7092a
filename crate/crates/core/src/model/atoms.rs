use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

use super::Interpretation;

/// Dense identifier of a propositional atom inside one [`AtomTable`].
///
/// Ids follow the lexicographic order of the atom names, so comparing ids
/// compares names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl AtomId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The atom universe of a program: every atom name occurring in it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AtomTable {
    names: Vec<String>,
}

impl AtomTable {
    /// Builds a table from arbitrary names; duplicates are merged and ids are
    /// assigned in ascending lexicographic order.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        AtomTable {
            names: set.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| AtomId(i as u32))
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.names.len() as u32).map(AtomId)
    }

    /// The whole universe as an interpretation.
    pub fn universe(&self) -> Interpretation {
        self.ids().collect()
    }

    /// Resolves a list of atom names; unknown names are an error rather than
    /// being added to the universe.
    pub fn resolve<'a, I>(&self, names: I) -> Result<Interpretation>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut out = Interpretation::new();
        for n in names {
            let n = n.trim();
            if n.is_empty() {
                continue;
            }
            let id = self
                .lookup(n)
                .ok_or_else(|| Error::UnknownAtom(n.to_string()))?;
            out.insert(id);
        }
        Ok(out)
    }

    /// `{a,b,c}` in canonical order.
    pub fn render_set(&self, set: &Interpretation) -> String {
        let mut s = String::from("{");
        for (i, id) in set.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(self.name(id));
        }
        s.push('}');
        s
    }

    pub fn set_names(&self, set: &Interpretation) -> Vec<String> {
        set.iter().map(|id| self.name(id).to_string()).collect()
    }
}
