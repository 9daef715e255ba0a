//! Classical propositional engine over a finite atom universe.
//!
//! Valuations are numbered so that bit `i` of the index is the truth value of
//! the `i`-th atom in sorted order. A [`WorldSet`] is a bitmask over those
//! indices, so `models_of(φ ∧ ψ)` is a bitwise AND, and so on.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{is_atom_name, Formula};

/// Hard guard for exhaustive truth-table enumeration.
pub const MAX_ATOMS: usize = 16;

/// Sorted, duplicate-free list of atom names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomUniverse {
    atoms: Vec<String>,
}

impl AtomUniverse {
    pub fn new<I, S>(atoms: I) -> Result<AtomUniverse>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = atoms.into_iter().map(Into::into).collect();
        if set.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms { found: set.len(), limit: MAX_ATOMS });
        }
        if let Some(bad) = set.iter().find(|a| !is_atom_name(a)) {
            return Err(Error::UnknownAtom(bad.clone()));
        }
        Ok(AtomUniverse { atoms: set.into_iter().collect() })
    }

    pub fn empty() -> AtomUniverse {
        AtomUniverse::default()
    }

    /// The universe `{p}`, `{p, q}`, `{p, q, r}`, ... of the given size.
    pub fn standard(n: usize) -> Result<AtomUniverse> {
        AtomUniverse::new(fresh_names(&BTreeSet::new(), n))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.atoms.binary_search_by(|a| a.as_str().cmp(atom)).ok()
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.index_of(atom).is_some()
    }

    pub fn is_subset(&self, other: &AtomUniverse) -> bool {
        self.atoms.iter().all(|a| other.contains(a))
    }

    /// 2^n
    pub fn valuation_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn union(&self, other: &AtomUniverse) -> Result<AtomUniverse> {
        AtomUniverse::new(self.atoms.iter().chain(other.atoms.iter()).cloned())
    }

    /// Adds `extra` atoms whose names do not occur in the universe yet.
    pub fn extended_with_fresh(&self, extra: usize) -> Result<AtomUniverse> {
        let used: BTreeSet<&str> = self.atoms.iter().map(String::as_str).collect();
        let fresh = fresh_names(&used, extra);
        AtomUniverse::new(self.atoms.iter().cloned().chain(fresh))
    }

    /// Pads the universe with fresh atoms up to `n` atoms.
    pub fn padded_to(&self, n: usize) -> Result<AtomUniverse> {
        self.extended_with_fresh(n.saturating_sub(self.len()))
    }

    pub fn valuation(&self, index: usize) -> Valuation {
        debug_assert!(index < self.valuation_count());
        Valuation(index as u32)
    }
}

impl fmt::Display for AtomUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atoms.join(", "))
    }
}

fn fresh_names(used: &BTreeSet<&str>, count: usize) -> Vec<String> {
    const PREFERRED: [&str; 8] = ["p", "q", "r", "s", "t", "u", "w", "x"];
    PREFERRED
        .iter()
        .map(|s| s.to_string())
        .chain((0..).map(|i| format!("x{i}")))
        .filter(|name| !used.contains(name.as_str()))
        .take(count)
        .collect()
}

/// A classical valuation, encoded as an index into the 2^n assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation(pub u32);

impl Valuation {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn truth(self, atom_index: usize) -> bool {
        (self.0 >> atom_index) & 1 == 1
    }

    /// `p:true, q:false`
    pub fn describe(self, universe: &AtomUniverse) -> String {
        universe
            .atoms()
            .iter()
            .enumerate()
            .map(|(i, a)| format!("{a}:{}", self.truth(i)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// A set of valuations over a universe with `worlds` valuations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    worlds: usize,
    words: Vec<u64>,
}

impl WorldSet {
    fn word_count(worlds: usize) -> usize {
        worlds.div_ceil(64).max(1)
    }

    pub fn empty(worlds: usize) -> WorldSet {
        WorldSet { worlds, words: vec![0; Self::word_count(worlds)] }
    }

    pub fn full(worlds: usize) -> WorldSet {
        let mut set = WorldSet::empty(worlds);
        for v in 0..worlds {
            set.insert(v);
        }
        set
    }

    /// Builds a set over at most 64 worlds from a bitmask.
    pub fn from_bits(worlds: usize, bits: u64) -> WorldSet {
        assert!(worlds <= 64, "from_bits supports at most 64 worlds");
        let mask = if worlds == 64 { u64::MAX } else { (1u64 << worlds) - 1 };
        WorldSet { worlds, words: vec![bits & mask] }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(worlds: usize, indices: I) -> WorldSet {
        let mut set = WorldSet::empty(worlds);
        for v in indices {
            set.insert(v);
        }
        set
    }

    /// The low 64 bits; exact for universes of up to 6 atoms.
    pub fn bits(&self) -> u64 {
        self.words[0]
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.worlds, "valuation {v} out of range");
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.worlds && (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.worlds
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.worlds).filter(move |&v| self.contains(v))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_with(&self, other: &WorldSet, op: impl Fn(u64, u64) -> u64) -> WorldSet {
        assert_eq!(self.worlds, other.worlds, "world sets over different universes");
        WorldSet {
            worlds: self.worlds,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> WorldSet {
        WorldSet::full(self.worlds).difference(self)
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        assert_eq!(self.worlds, other.worlds, "world sets over different universes");
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &WorldSet) -> bool {
        assert_eq!(self.worlds, other.worlds, "world sets over different universes");
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }
}

/// Numeric order of the bitmask, within one universe size.
impl Ord for WorldSet {
    fn cmp(&self, other: &WorldSet) -> std::cmp::Ordering {
        self.worlds
            .cmp(&other.worlds)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for WorldSet {
    fn partial_cmp(&self, other: &WorldSet) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `{v0, v3}`
impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|v| format!("v{v}")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WorldSet{self}")
    }
}

/// The truth-set of a formula, used as the representative of its
/// PL-equivalence class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemanticClass(pub WorldSet);

impl SemanticClass {
    pub fn of(formula: &Formula, universe: &AtomUniverse) -> Result<SemanticClass> {
        models_of(formula, universe).map(SemanticClass)
    }

    pub fn worlds(&self) -> &WorldSet {
        &self.0
    }

    /// The bitmask value; exact for universes of up to 6 atoms.
    pub fn index(&self) -> u64 {
        self.0.bits()
    }
}

/// Sorted union of the atoms occurring in `items`.
pub fn relevant_atoms<'a, I>(items: I) -> Result<AtomUniverse>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut atoms = BTreeSet::new();
    for f in items {
        f.collect_atoms(&mut atoms);
    }
    AtomUniverse::new(atoms)
}

fn atom_models(index: usize, worlds: usize) -> WorldSet {
    let mut set = WorldSet::empty(worlds);
    for v in 0..worlds {
        if (v >> index) & 1 == 1 {
            set.insert(v);
        }
    }
    set
}

/// M(φ) over `universe`.
pub fn models_of(formula: &Formula, universe: &AtomUniverse) -> Result<WorldSet> {
    let worlds = universe.valuation_count();
    Ok(match formula {
        Formula::Atom(name) => {
            let i = universe.index_of(name).ok_or_else(|| Error::UnknownAtom(name.clone()))?;
            atom_models(i, worlds)
        }
        Formula::Top => WorldSet::full(worlds),
        Formula::Bottom => WorldSet::empty(worlds),
        Formula::Not(f) => models_of(f, universe)?.complement(),
        Formula::And(a, b) => models_of(a, universe)?.intersection(&models_of(b, universe)?),
        Formula::Or(a, b) => models_of(a, universe)?.union(&models_of(b, universe)?),
        Formula::Implies(a, b) => models_of(a, universe)?.complement().union(&models_of(b, universe)?),
        Formula::Iff(a, b) => {
            let (ma, mb) = (models_of(a, universe)?, models_of(b, universe)?);
            ma.intersection(&mb).union(&ma.union(&mb).complement())
        }
    })
}

/// Truth-table evaluation of a single valuation, independent of the bitmask path.
pub fn evaluate(formula: &Formula, universe: &AtomUniverse, valuation: Valuation) -> Result<bool> {
    Ok(match formula {
        Formula::Atom(name) => {
            let i = universe.index_of(name).ok_or_else(|| Error::UnknownAtom(name.clone()))?;
            valuation.truth(i)
        }
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(f) => !evaluate(f, universe, valuation)?,
        Formula::And(a, b) => evaluate(a, universe, valuation)? && evaluate(b, universe, valuation)?,
        Formula::Or(a, b) => evaluate(a, universe, valuation)? || evaluate(b, universe, valuation)?,
        Formula::Implies(a, b) => !evaluate(a, universe, valuation)? || evaluate(b, universe, valuation)?,
        Formula::Iff(a, b) => evaluate(a, universe, valuation)? == evaluate(b, universe, valuation)?,
    })
}

/// ∩ M(premises) over `universe`; the full set when there are no premises.
pub fn models_of_all<'a, I>(premises: I, universe: &AtomUniverse) -> Result<WorldSet>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut acc = WorldSet::full(universe.valuation_count());
    for f in premises {
        acc = acc.intersection(&models_of(f, universe)?);
    }
    Ok(acc)
}

/// `premises ⊢_PL conclusion`, decided over the atoms occurring in the query.
pub fn pl_entails<'a, I>(premises: I, conclusion: &Formula) -> Result<bool>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let premises: Vec<&Formula> = premises.into_iter().collect();
    let universe = relevant_atoms(premises.iter().copied().chain(std::iter::once(conclusion)))?;
    pl_entails_in(premises, conclusion, &universe)
}

/// `premises ⊢_PL conclusion` over an explicitly given universe.
pub fn pl_entails_in<'a, I>(premises: I, conclusion: &Formula, universe: &AtomUniverse) -> Result<bool>
where
    I: IntoIterator<Item = &'a Formula>,
{
    Ok(models_of_all(premises, universe)?.is_subset(&models_of(conclusion, universe)?))
}

/// Shortest formulas for each semantic class of a small universe.
///
/// Built bottom-up by size over the connectives `!`, `&`, `|`, `->`, `<->`
/// and the literals `true`/`false`; classes that are not reached within the
/// size budget fall back to a disjunctive normal form.
#[derive(Debug, Clone)]
pub struct CanonicalForms {
    universe: AtomUniverse,
    by_class: HashMap<u64, Formula>,
}

const CANONICAL_MAX_ATOMS: usize = 3;
const CANONICAL_MAX_SIZE: usize = 15;

impl CanonicalForms {
    pub fn new(universe: &AtomUniverse) -> Result<CanonicalForms> {
        if universe.len() > CANONICAL_MAX_ATOMS {
            return Err(Error::Scale {
                what: "canonical formula table",
                found: universe.len(),
                limit: CANONICAL_MAX_ATOMS,
            });
        }
        let worlds = universe.valuation_count();
        let total = 1usize << worlds;
        let full = (1u64 << worlds) - 1;
        let mut by_class: HashMap<u64, Formula> = HashMap::new();
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); CANONICAL_MAX_SIZE + 1];

        let mut seed = vec![(full, Formula::Top), (0, Formula::Bottom)];
        for (i, a) in universe.atoms().iter().enumerate() {
            seed.push((atom_models(i, worlds).bits(), Formula::Atom(a.clone())));
        }
        for (class, f) in seed {
            if let std::collections::hash_map::Entry::Vacant(e) = by_class.entry(class) {
                e.insert(f);
                by_size[1].push(class);
            }
        }

        for size in 2..=CANONICAL_MAX_SIZE {
            if by_class.len() == total {
                break;
            }
            let mut fresh: Vec<(u64, Formula)> = Vec::new();
            for &c in &by_size[size - 1] {
                fresh.push((!c & full, by_class[&c].clone().not()));
            }
            for left in 1..size - 1 {
                let right = size - 1 - left;
                for &a in &by_size[left] {
                    for &b in &by_size[right] {
                        let (fa, fb) = (&by_class[&a], &by_class[&b]);
                        fresh.push((a & b, fa.clone().and(fb.clone())));
                        fresh.push((a | b, fa.clone().or(fb.clone())));
                        fresh.push(((!a | b) & full, fa.clone().implies(fb.clone())));
                        fresh.push((!(a ^ b) & full, fa.clone().iff(fb.clone())));
                    }
                }
            }
            for (class, f) in fresh {
                if let std::collections::hash_map::Entry::Vacant(e) = by_class.entry(class) {
                    e.insert(f);
                    by_size[size].push(class);
                }
            }
        }

        for class in 0..total as u64 {
            by_class.entry(class).or_insert_with(|| dnf(universe, class));
        }
        Ok(CanonicalForms { universe: universe.clone(), by_class })
    }

    pub fn universe(&self) -> &AtomUniverse {
        &self.universe
    }

    /// Shortest formula whose truth-set has the given bitmask.
    pub fn formula(&self, class: u64) -> &Formula {
        &self.by_class[&class]
    }
}

fn dnf(universe: &AtomUniverse, class: u64) -> Formula {
    dnf_worldset(&WorldSet::from_bits(universe.valuation_count(), class), universe)
}

/// Shortest representative of `class` over universes of up to three atoms,
/// disjunctive normal form beyond that.
pub fn canonical_formula(class: &SemanticClass, universe: &AtomUniverse) -> Formula {
    if universe.len() <= CANONICAL_MAX_ATOMS {
        CanonicalForms::new(universe).expect("size checked").formula(class.index()).clone()
    } else {
        dnf_worldset(&class.0, universe)
    }
}

fn dnf_worldset(set: &WorldSet, universe: &AtomUniverse) -> Formula {
    Formula::disjunction(set.iter().map(|v| {
        Formula::conjunction(universe.atoms().iter().enumerate().map(|(i, a)| {
            let atom = Formula::Atom(a.clone());
            if (v >> i) & 1 == 1 {
                atom
            } else {
                atom.not()
            }
        }))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn u(atoms: &[&str]) -> AtomUniverse {
        AtomUniverse::new(atoms.iter().copied()).unwrap()
    }

    #[test]
    fn relevant_atoms_examples() {
        assert_eq!(relevant_atoms([&f("p -> q"), &f("q")]).unwrap(), u(&["p", "q"]));
        assert_eq!(relevant_atoms(std::iter::empty()).unwrap(), AtomUniverse::empty());
        assert_eq!(relevant_atoms([&f("a | b"), &f("s & m")]).unwrap().atoms(), ["a", "b", "m", "s"]);
    }

    #[test]
    fn atom_guard() {
        let many: Vec<String> = (0..17).map(|i| format!("a{i}")).collect();
        assert_eq!(
            AtomUniverse::new(many.clone()).unwrap_err(),
            Error::TooManyAtoms { found: 17, limit: 16 }
        );
        let big = Formula::conjunction(many.into_iter().map(Formula::Atom));
        assert!(matches!(pl_entails([&big], &Formula::Top), Err(Error::TooManyAtoms { .. })));
        assert!(AtomUniverse::new((0..16).map(|i| format!("a{i}"))).is_ok());
    }

    #[test]
    fn models_examples() {
        assert!(models_of(&Formula::Top, &u(&["p"])).unwrap().is_full());
        assert_eq!(models_of(&Formula::Top, &u(&["p"])).unwrap().len(), 2);
        assert!(models_of(&f("p & !p"), &u(&["p"])).unwrap().is_empty());
        assert_eq!(models_of(&f("p | q"), &u(&["p", "q"])).unwrap().len(), 3);
        assert_eq!(models_of(&f("p"), &u(&["p", "q"])).unwrap().bits(), 0b1010);
        assert_eq!(models_of(&f("q"), &u(&["p", "q"])).unwrap().bits(), 0b1100);
        assert_eq!(models_of(&f("r"), &u(&["p"])).unwrap_err(), Error::UnknownAtom("r".into()));
    }

    #[test]
    fn entailment_examples() {
        assert!(pl_entails([&f("p -> q"), &f("p")], &f("q")).unwrap());
        assert!(!pl_entails(std::iter::empty(), &f("p")).unwrap());
        assert!(pl_entails([&f("s"), &f("k -> m"), &f("k")], &f("s & m")).unwrap());
    }

    #[test]
    fn large_universe_bitsets() {
        let atoms: Vec<String> = (0..10).map(|i| format!("a{i}")).collect();
        let universe = AtomUniverse::new(atoms.clone()).unwrap();
        let conj = Formula::conjunction(atoms.iter().cloned().map(Formula::Atom));
        let m = models_of(&conj, &universe).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.contains(1023));
        assert_eq!(m.complement().len(), 1023);
    }

    #[test]
    fn canonical_forms_are_short_and_correct() {
        let universe = u(&["p", "q"]);
        let table = CanonicalForms::new(&universe).unwrap();
        for class in 0..16u64 {
            let formula = table.formula(class);
            assert_eq!(models_of(formula, &universe).unwrap().bits(), class, "{formula}");
        }
        assert_eq!(table.formula(0).to_string(), "false");
        assert_eq!(table.formula(15).to_string(), "true");
        assert_eq!(table.formula(0b1010).to_string(), "p");
        assert_eq!(table.formula(0b0101).to_string(), "!p");
        assert_eq!(table.formula(0b1000).to_string(), "p & q");

        let three = u(&["p", "q", "r"]);
        let table = CanonicalForms::new(&three).unwrap();
        for class in 0..256u64 {
            assert_eq!(models_of(table.formula(class), &three).unwrap().bits(), class);
        }
    }

    #[test]
    fn canonical_formula_falls_back_to_dnf() {
        let universe = u(&["a", "b", "c", "d"]);
        let class = SemanticClass::of(&f("a & !b | c & d"), &universe).unwrap();
        let rep = canonical_formula(&class, &universe);
        assert_eq!(SemanticClass::of(&rep, &universe).unwrap(), class);
    }

    #[test]
    fn fresh_atoms_avoid_used_names() {
        let universe = u(&["p", "r"]);
        assert_eq!(universe.extended_with_fresh(2).unwrap().atoms(), ["p", "q", "r", "s"]);
        assert_eq!(universe.padded_to(1).unwrap(), universe);
        assert_eq!(AtomUniverse::standard(2).unwrap().atoms(), ["p", "q"]);
    }
}
