use std::cmp::Ordering;
use std::fmt;

use super::AtomId;

/// A set of atoms, stored as a bitset over atom ids.
///
/// The word vector never carries trailing zero words, so derived equality and
/// hashing are extensional. [`Ord`] is the canonical order used for every
/// rendered family of sets: smaller sets first, then lexicographic on the
/// ascending id sequence.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Interpretation {
    words: Vec<u64>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Set built from the low bits of `mask`, bit `i` standing for `ids[i]`.
    pub fn from_mask(ids: &[AtomId], mask: u64) -> Self {
        let mut out = Self::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out.insert(ids[i]);
            m &= m - 1;
        }
        out
    }

    /// Inverse of [`Interpretation::from_mask`] restricted to `ids`.
    pub fn mask_over(&self, ids: &[AtomId]) -> u64 {
        let mut m = 0u64;
        for (i, id) in ids.iter().enumerate() {
            if self.contains(*id) {
                m |= 1 << i;
            }
        }
        m
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, id: AtomId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, id: AtomId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        if w >= self.words.len() {
            return false;
        }
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        had
    }

    #[inline]
    pub fn contains(&self, id: AtomId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.word(i) | other.word(i))
            .collect::<Vec<_>>();
        let mut out = Interpretation { words };
        out.trim();
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.words.len().min(other.words.len());
        let words = (0..n).map(|i| self.words[i] & other.words[i]).collect();
        let mut out = Interpretation { words };
        out.trim();
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let words = (0..self.words.len())
            .map(|i| self.words[i] & !other.word(i))
            .collect();
        let mut out = Interpretation { words };
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.word(i) == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    #[inline]
    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<AtomId> {
        self.iter().collect()
    }

    /// Every subset of `self`, in increasing mask order over the members.
    ///
    /// Callers are responsible for keeping `self` small.
    pub fn subsets(&self) -> impl Iterator<Item = Interpretation> {
        let ids = self.to_vec();
        assert!(
            ids.len() < 64,
            "subset enumeration over {} atoms",
            ids.len()
        );
        (0..(1u64 << ids.len())).map(move |m| Interpretation::from_mask(&ids, m))
    }
}

impl Ord for Interpretation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<AtomId> for Interpretation {
    fn from_iter<T: IntoIterator<Item = AtomId>>(iter: T) -> Self {
        let mut out = Interpretation::new();
        for id in iter {
            out.insert(id);
        }
        out
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = AtomId;

    fn next(&mut self) -> Option<AtomId> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(AtomId((self.word * 64 + b) as u32));
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ids: &[u32]) -> Interpretation {
        ids.iter().map(|&i| AtomId(i)).collect()
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v = vec![set(&[1, 2]), set(&[0]), set(&[]), set(&[0, 3]), set(&[2])];
        v.sort();
        assert_eq!(
            v,
            vec![set(&[]), set(&[0]), set(&[2]), set(&[0, 3]), set(&[1, 2])]
        );
    }

    #[test]
    fn remove_keeps_equality_extensional() {
        let mut a = set(&[3, 130]);
        a.remove(AtomId(130));
        assert_eq!(a, set(&[3]));
        assert!(a.is_subset(&set(&[3, 200])));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            a in proptest::collection::btree_set(0u32..150, 0..20),
            b in proptest::collection::btree_set(0u32..150, 0..20),
        ) {
            let sa = set(&a.iter().copied().collect::<Vec<_>>());
            let sb = set(&b.iter().copied().collect::<Vec<_>>());
            let u: Vec<u32> = sa.union(&sb).iter().map(|x| x.0).collect();
            let i: Vec<u32> = sa.intersection(&sb).iter().map(|x| x.0).collect();
            let d: Vec<u32> = sa.difference(&sb).iter().map(|x| x.0).collect();
            prop_assert_eq!(u, a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(i, a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(d, a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
            prop_assert_eq!(sa.len(), a.len());
        }
    }
}
