use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::{AtomId, AtomTable, Interpretation};

/// Largest admissible c-atom domain. Complement and closure enumerate the
/// full power set of a domain, so this bounds them at 2^24 subsets.
pub const DOMAIN_CAP: usize = 24;

/// An abstract constraint atom `(D, C)` with an explicit solution family.
///
/// Solutions are kept as bitmasks local to the domain: bit `i` of a mask
/// stands for `domain[i]`, and `domain` is sorted by id. The mask vector is
/// sorted numerically and duplicate-free, which makes derived equality
/// structural and membership a binary search. Use [`CAtom::solutions`] for
/// the canonical (size, then lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CAtom {
    domain: Vec<AtomId>,
    solutions: Vec<u32>,
}

impl CAtom {
    /// Builds a c-atom from a domain and its solution sets.
    pub fn new<I>(domain: &Interpretation, solutions: I) -> Result<Self>
    where
        I: IntoIterator<Item = Interpretation>,
    {
        let ids = domain.to_vec();
        check_domain(ids.len())?;
        let mut masks = Vec::new();
        for s in solutions {
            if !s.is_subset(domain) {
                return Err(Error::Invalid(format!(
                    "solution {s:?} is not a subset of the domain {domain:?}"
                )));
            }
            masks.push(s.mask_over(&ids) as u32);
        }
        Ok(Self::from_masks(ids, masks))
    }

    /// Builds a c-atom from local masks. `domain` must be sorted and within
    /// [`DOMAIN_CAP`]; masks are sorted and deduplicated here.
    pub(crate) fn from_masks<I>(domain: Vec<AtomId>, masks: I) -> Self
    where
        I: IntoIterator<Item = u32>,
    {
        debug_assert!(domain.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(domain.len() <= DOMAIN_CAP);
        let full = full_mask(domain.len());
        let mut solutions: Vec<u32> = masks.into_iter().collect();
        debug_assert!(solutions.iter().all(|m| m & !full == 0));
        solutions.sort_unstable();
        solutions.dedup();
        CAtom { domain, solutions }
    }

    /// The c-atom whose solutions are exactly the subsets of `domain` that
    /// satisfy `keep`.
    pub fn from_predicate<F>(domain: &Interpretation, mut keep: F) -> Result<Self>
    where
        F: FnMut(&Interpretation) -> bool,
    {
        let ids = domain.to_vec();
        check_domain(ids.len())?;
        let masks = (0..=full_mask(ids.len()))
            .filter(|&m| keep(&Interpretation::from_mask(&ids, m as u64)))
            .collect::<Vec<_>>();
        Ok(Self::from_masks(ids, masks))
    }

    /// `({a}, {{a}})`, the c-atom standing for the plain atom `a`.
    pub fn elementary(a: AtomId) -> Self {
        CAtom {
            domain: vec![a],
            solutions: vec![1],
        }
    }

    /// `(∅, ∅)`: satisfied by no set of atoms.
    pub fn bottom() -> Self {
        CAtom {
            domain: Vec::new(),
            solutions: Vec::new(),
        }
    }

    pub fn domain_ids(&self) -> &[AtomId] {
        &self.domain
    }

    pub fn domain(&self) -> Interpretation {
        self.domain.iter().copied().collect()
    }

    pub fn domain_len(&self) -> usize {
        self.domain.len()
    }

    /// Solution masks in increasing numeric order.
    pub fn solution_masks(&self) -> &[u32] {
        &self.solutions
    }

    pub fn num_solutions(&self) -> usize {
        self.solutions.len()
    }

    /// Solutions as sets, in canonical order.
    pub fn solutions(&self) -> Vec<Interpretation> {
        let mut masks = self.solutions.clone();
        masks.sort_by(|a, b| canonical_mask_cmp(*a, *b));
        masks.into_iter().map(|m| self.mask_to_set(m)).collect()
    }

    pub fn full_mask(&self) -> u32 {
        full_mask(self.domain.len())
    }

    #[inline]
    pub fn has_mask(&self, mask: u32) -> bool {
        self.solutions.binary_search(&mask).is_ok()
    }

    /// `S ∩ D` as a local mask.
    pub fn project(&self, s: &Interpretation) -> u32 {
        let mut m = 0u32;
        for (i, id) in self.domain.iter().enumerate() {
            if s.contains(*id) {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn mask_to_set(&self, mask: u32) -> Interpretation {
        Interpretation::from_mask(&self.domain, mask as u64)
    }

    /// The atom `a` when this is `({a}, {{a}})`.
    pub fn elementary_atom(&self) -> Option<AtomId> {
        (self.domain.len() == 1 && self.solutions == [1]).then(|| self.domain[0])
    }

    pub fn is_elementary(&self) -> bool {
        self.elementary_atom().is_some()
    }

    pub fn is_bottom(&self) -> bool {
        self.domain.is_empty() && self.solutions.is_empty()
    }

    /// Renders the atom: bare name for elementary atoms, `bot` for ⊥, and
    /// `({..},{{..},..})` otherwise.
    pub fn render(&self, atoms: &AtomTable) -> String {
        if let Some(a) = self.elementary_atom() {
            return atoms.name(a).to_string();
        }
        let mut s = String::from("(");
        s.push_str(&atoms.render_set(&self.domain()));
        s.push_str(",{");
        for (i, sol) in self.solutions().iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&atoms.render_set(sol));
        }
        s.push_str("})");
        s
    }
}

fn check_domain(n: usize) -> Result<()> {
    if n > DOMAIN_CAP {
        return Err(Error::cap("c-atom domain", n as u128, DOMAIN_CAP as u128));
    }
    Ok(())
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// Size first, then lexicographic on the ascending sequence of set bits.
pub(crate) fn canonical_mask_cmp(a: u32, b: u32) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        let (mut x, mut y) = (a, b);
        while x != 0 && y != 0 {
            let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
            if i != j {
                return i.cmp(&j);
            }
            x &= x - 1;
            y &= y - 1;
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Interpretation {
        v.iter().map(|&i| AtomId(i)).collect()
    }

    #[test]
    fn rejects_solution_outside_domain() {
        let err = CAtom::new(&ids(&[0]), [ids(&[1])]).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn rejects_oversized_domain() {
        let d: Interpretation = (0..25).map(AtomId).collect();
        assert!(matches!(
            CAtom::new(&d, []),
            Err(Error::CapExceeded { needed: 25, .. })
        ));
    }

    #[test]
    fn solutions_render_in_canonical_order() {
        let t = AtomTable::new(["a", "b", "c"]);
        let a = CAtom::new(
            &ids(&[0, 1, 2]),
            [
                ids(&[1, 2]),
                ids(&[0, 1, 2]),
                ids(&[]),
                ids(&[2]),
                ids(&[0, 2]),
            ],
        )
        .unwrap();
        assert_eq!(a.render(&t), "({a,b,c},{{},{c},{a,c},{b,c},{a,b,c}})");
        assert_eq!(CAtom::elementary(AtomId(1)).render(&t), "b");
        assert_eq!(CAtom::bottom().render(&t), "({},{})");
    }

    #[test]
    fn elementary_detection() {
        assert_eq!(
            CAtom::elementary(AtomId(4)).elementary_atom(),
            Some(AtomId(4))
        );
        let not_elem = CAtom::new(&ids(&[4]), [ids(&[]), ids(&[4])]).unwrap();
        assert_eq!(not_elem.elementary_atom(), None);
        assert!(CAtom::bottom().is_bottom());
    }
}
