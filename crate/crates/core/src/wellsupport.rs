//! Level mappings and weakly / strongly well-supported models.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fixpoint::{self, cond_sat};
use crate::limits::Limits;
use crate::model::{
    complement, is_model, satisfies_body, AtomId, AtomTable, CAtom, Interpretation, Program, Rule,
};

/// A map from the atoms of a model to positive levels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LevelMapping {
    levels: BTreeMap<AtomId, u32>,
}

impl LevelMapping {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (AtomId, u32)>>(pairs: I) -> Self {
        LevelMapping {
            levels: pairs.into_iter().collect(),
        }
    }

    pub fn set(&mut self, a: AtomId, level: u32) {
        self.levels.insert(a, level);
    }

    pub fn get(&self, a: AtomId) -> Option<u32> {
        self.levels.get(&a).copied()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Pairs in canonical atom order.
    pub fn iter(&self) -> impl Iterator<Item = (AtomId, u32)> + '_ {
        self.levels.iter().map(|(a, l)| (*a, *l))
    }

    pub fn domain(&self) -> Interpretation {
        self.levels.keys().copied().collect()
    }

    /// `a:1,b:2` in canonical atom order.
    pub fn render(&self, atoms: &AtomTable) -> String {
        self.iter()
            .map(|(a, l)| format!("{}:{l}", atoms.name(a)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Levels constrain positive body atoms only.
    Weak,
    /// Naf atoms are levelled through their complements as well.
    Strong,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Weak => "weak",
            Kind::Strong => "strong",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Kind::Weak),
            "strong" => Ok(Kind::Strong),
            _ => Err(Error::Invalid(format!("unknown kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Levels read off the stages of the consequence operator.
    Constructive,
    /// Exhaustive search over levels `1..=|M|`.
    Brute,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Constructive => "constructive",
            Method::Brute => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constructive" => Ok(Method::Constructive),
            "brute" => Ok(Method::Brute),
            _ => Err(Error::Invalid(format!("unknown method `{s}`"))),
        }
    }
}

/// `H(X)`: the largest level over `X`, `0` for `∅`.
pub fn h_value(x: &Interpretation, l: &LevelMapping) -> Result<u32> {
    x.iter().try_fold(0, |acc, a| {
        l.get(a)
            .map(|v| acc.max(v))
            .ok_or_else(|| Error::UnmappedAtom(format!("#{}", a.0)))
    })
}

/// `L(A, M)`: the least `H(X)` over solutions `X ⊆ M` with `X ⊨_M A`.
pub fn l_value(a: &CAtom, m: &Interpretation, l: &LevelMapping) -> Option<u32> {
    a.solutions()
        .iter()
        .filter(|x| x.is_subset(m) && cond_sat(x, m, a))
        .filter_map(|x| h_value(x, l).ok())
        .min()
}

fn validate(m: &Interpretation, l: &LevelMapping) -> Result<()> {
    if l.domain() != *m {
        return Err(Error::InvalidLevelMapping(
            "the mapping must assign a level to exactly the atoms of the model".into(),
        ));
    }
    if l.iter().any(|(_, v)| v == 0) {
        return Err(Error::InvalidLevelMapping("levels must be positive".into()));
    }
    Ok(())
}

fn justifies(r: &Rule, m: &Interpretation, l: &LevelMapping, level: u32, kind: Kind) -> bool {
    satisfies_body(m, r)
        && r.pos()
            .iter()
            .all(|a| l_value(a, m, l).is_some_and(|v| v < level))
        && (kind == Kind::Weak
            || r.neg()
                .iter()
                .all(|a| l_value(&complement(a), m, l).is_some_and(|v| v < level)))
}

/// Whether `m` is a model of `p` that is well-supported under `l`.
pub fn check_ws(p: &Program, m: &Interpretation, l: &LevelMapping, kind: Kind) -> Result<bool> {
    p.require_basic()?;
    validate(m, l)?;
    if !is_model(m, p) {
        return Ok(false);
    }
    Ok(m.iter().all(|b| {
        let level = l.get(b).expect("validated");
        p.rules()
            .iter()
            .any(|r| r.head_atom() == Some(b) && justifies(r, m, l, level, kind))
    }))
}

/// Searches for a level mapping witnessing that `m` is well-supported.
pub fn find_ws(
    p: &Program,
    m: &Interpretation,
    kind: Kind,
    method: Method,
    limits: &Limits,
) -> Result<Option<LevelMapping>> {
    p.require_basic()?;
    match method {
        Method::Constructive => constructive(p, m, kind),
        Method::Brute => brute(p, m, kind, limits),
    }
}

/// `l(a)` is the first stage of the consequence operator containing `a`,
/// computed on the reduct (weak) or on the complement program (strong).
fn constructive(p: &Program, m: &Interpretation, kind: Kind) -> Result<Option<LevelMapping>> {
    if !is_model(m, p) {
        return Ok(None);
    }
    let derived = match kind {
        Kind::Weak => fixpoint::reduct(p, m)?,
        Kind::Strong => fixpoint::complement_program(p)?,
    };
    let trace = fixpoint::tp_lfp(&derived, m)?;
    let mut l = LevelMapping::new();
    for a in m.iter() {
        match trace.first_stage_of(a) {
            Some(k) => l.set(a, k as u32),
            None => return Ok(None),
        }
    }
    Ok(check_ws(p, m, &l, kind)?.then_some(l))
}

/// Per atom of `M`, the sets of "lower" atoms (as masks over positions in
/// `M`) that suffice for some rule to justify it. A mapping is a witness iff
/// for every atom the set of atoms with a strictly smaller level is one of
/// its sufficient sets.
struct Compiled {
    sufficient: Vec<Vec<bool>>,
}

impl Compiled {
    fn new(p: &Program, m: &Interpretation, kind: Kind) -> Self {
        let members = m.to_vec();
        let n = members.len();
        let pos_of = |a: AtomId| members.iter().position(|&x| x == a);
        // Cond-sat solutions X ⊆ M of an atom, as masks over `members`.
        let witnesses = |a: &CAtom| -> Vec<u64> {
            a.solutions()
                .iter()
                .filter(|x| x.is_subset(m) && cond_sat(x, m, a))
                .map(|x| x.iter().fold(0u64, |acc, y| acc | 1 << pos_of(y).unwrap()))
                .collect()
        };
        let sufficient = members
            .iter()
            .map(|&b| {
                let rules: Vec<Vec<Vec<u64>>> = p
                    .rules()
                    .iter()
                    .filter(|r| r.head_atom() == Some(b) && satisfies_body(m, r))
                    .map(|r| {
                        let mut atoms: Vec<Vec<u64>> = r.pos().iter().map(witnesses).collect();
                        if kind == Kind::Strong {
                            atoms.extend(r.neg().iter().map(|a| witnesses(&complement(a))));
                        }
                        atoms
                    })
                    .collect();
                (0..1u64 << n)
                    .map(|lower| {
                        rules
                            .iter()
                            .any(|atoms| atoms.iter().all(|ws| ws.iter().any(|&x| x & !lower == 0)))
                    })
                    .collect()
            })
            .collect();
        Compiled { sufficient }
    }

    fn accepts(&self, levels: &[u32]) -> bool {
        levels.iter().enumerate().all(|(i, &li)| {
            let lower = levels
                .iter()
                .enumerate()
                .filter(|(_, &lj)| lj < li)
                .fold(0usize, |acc, (j, _)| acc | 1 << j);
            self.sufficient[i][lower]
        })
    }
}

/// Lexicographically least witness over levels `1..=|M|`, atoms taken in
/// canonical order as the digits.
fn brute(
    p: &Program,
    m: &Interpretation,
    kind: Kind,
    limits: &Limits,
) -> Result<Option<LevelMapping>> {
    let n = m.len();
    if n > limits.max_brute_levels {
        return Err(Error::cap(
            "brute-force level-mapping search (model size)",
            n as u128,
            limits.max_brute_levels as u128,
        ));
    }
    if !is_model(m, p) {
        return Ok(None);
    }
    let compiled = Compiled::new(p, m, kind);
    let members = m.to_vec();
    let top = n.max(1) as u32;
    let mut levels = vec![1u32; n];
    loop {
        if compiled.accepts(&levels) {
            let l = LevelMapping::from_pairs(members.iter().copied().zip(levels.iter().copied()));
            debug_assert!(check_ws(p, m, &l, kind)?);
            return Ok(Some(l));
        }
        // Next mapping in lexicographic order; the last digit varies fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if levels[i] < top {
                levels[i] += 1;
                break;
            }
            levels[i] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;
    use proptest::prelude::*;

    fn set(p: &Program, names: &[&str]) -> Interpretation {
        p.atoms().resolve(names.iter().copied()).unwrap()
    }

    fn mapping(p: &Program, pairs: &[(&str, u32)]) -> LevelMapping {
        LevelMapping::from_pairs(
            pairs
                .iter()
                .map(|(a, l)| (p.atoms().lookup(a).unwrap(), *l)),
        )
    }

    #[test]
    fn h_and_l_values() {
        let p = parse_program("x :- ({a,b},{{},{a,b}}).").unwrap();
        let l = mapping(&p, &[("a", 1), ("b", 2)]);
        assert_eq!(h_value(&Interpretation::new(), &l).unwrap(), 0);
        assert_eq!(h_value(&set(&p, &["a", "b"]), &l).unwrap(), 2);
        assert!(matches!(
            h_value(&set(&p, &["x"]), &l),
            Err(Error::UnmappedAtom(_))
        ));

        let a = &p.rules()[0].pos()[0];
        assert_eq!(l_value(a, &set(&p, &["a", "b"]), &l), Some(2));
        assert_eq!(
            l_value(a, &set(&p, &["a"]), &mapping(&p, &[("a", 1)])),
            None
        );
        let e = CAtom::elementary(p.atoms().lookup("a").unwrap());
        assert_eq!(
            l_value(
                &e,
                &set(&p, &["a", "b"]),
                &mapping(&p, &[("a", 5), ("b", 1)])
            ),
            Some(5)
        );
    }

    #[test]
    fn worked_examples() {
        let l = Limits::default();
        let p5 = parse_program("a. c :- not ({a,b},{{a,b}}).").unwrap();
        let ab = set(&p5, &["a", "b"]);
        for method in [Method::Constructive, Method::Brute] {
            assert_eq!(find_ws(&p5, &ab, Kind::Weak, method, &l).unwrap(), None);
        }
        let ac = set(&p5, &["a", "c"]);
        assert!(check_ws(&p5, &ac, &mapping(&p5, &[("a", 1), ("c", 2)]), Kind::Strong).unwrap());

        let p6 = parse_program("c :- not 1{a,b}1. a :- c. b :- a.").unwrap();
        let abc = set(&p6, &["a", "b", "c"]);
        let want = mapping(&p6, &[("a", 2), ("b", 3), ("c", 1)]);
        for method in [Method::Constructive, Method::Brute] {
            assert_eq!(
                find_ws(&p6, &abc, Kind::Weak, method, &l).unwrap().as_ref(),
                Some(&want)
            );
        }
        assert_eq!(
            find_ws(&p6, &abc, Kind::Strong, Method::Brute, &l).unwrap(),
            None
        );

        let facts = parse_program("a. b.").unwrap();
        let all = set(&facts, &["a", "b"]);
        let ones = mapping(&facts, &[("a", 1), ("b", 1)]);
        assert!(check_ws(&facts, &all, &ones, Kind::Weak).unwrap());
        assert!(check_ws(&facts, &all, &ones, Kind::Strong).unwrap());

        let empty = parse_program("p :- q.").unwrap();
        assert_eq!(
            find_ws(
                &empty,
                &Interpretation::new(),
                Kind::Weak,
                Method::Brute,
                &l
            )
            .unwrap(),
            Some(LevelMapping::new())
        );
    }

    #[test]
    fn mapping_must_cover_the_model() {
        let p = parse_program("a. b.").unwrap();
        let m = set(&p, &["a", "b"]);
        assert!(matches!(
            check_ws(&p, &m, &mapping(&p, &[("a", 1)]), Kind::Weak),
            Err(Error::InvalidLevelMapping(_))
        ));
        assert!(matches!(
            check_ws(&p, &m, &mapping(&p, &[("a", 0), ("b", 1)]), Kind::Weak),
            Err(Error::InvalidLevelMapping(_))
        ));
    }

    #[test]
    fn brute_respects_cap() {
        let p = parse_program("a. b. c.").unwrap();
        let m = p.atoms().universe();
        let l = Limits {
            max_brute_levels: 2,
            ..Limits::default()
        };
        assert!(matches!(
            find_ws(&p, &m, Kind::Weak, Method::Brute, &l),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        /// The compiled test used by the search agrees with `check_ws`.
        #[test]
        fn compiled_matches_check(levels in proptest::collection::vec(1u32..4, 3), strong: bool) {
            let p = parse_program(
                "c :- not 1{a,b}1. a :- c. b :- a. a :- ({a,b},{{},{a,b}}). b :- not c, ({c},{{},{c}}).",
            ).unwrap();
            let kind = if strong { Kind::Strong } else { Kind::Weak };
            let m = p.atoms().universe();
            let l = LevelMapping::from_pairs(m.iter().zip(levels.iter().copied()));
            let compiled = Compiled::new(&p, &m, kind);
            prop_assert_eq!(compiled.accepts(&levels), check_ws(&p, &m, &l, kind).unwrap());
        }
    }
}
