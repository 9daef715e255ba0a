//! Model theory for WBD, GBD and BD.
//!
//! A model pairs the agent's possible worlds `M` with the worlds its sources
//! regard as possible:
//!
//! * WBD: a non-empty family `𝒩` of world sets, one per source;
//! * GBD: one world set `N` (a single source);
//! * BD: a non-empty family whose members are all subsets of `M`.
//!
//! `φ` holds iff `M ⊆ M(φ)`; `φ̄` holds iff some source (the source, for GBD)
//! rules out every `φ`-world. Empty family members and an empty `M` are
//! admissible; they are what makes `⊥̄` valid and gives B-inconsistent sets
//! models.
//!
//! [`brute_force_entails`] enumerates every model over a universe of at most
//! two atoms (three for GBD) and is the ground truth the decision procedures
//! are checked against.

use std::fmt;

use crate::decision::{Frame, LogicId, Rationale, Verdict};
use crate::error::{Error, Result};
use crate::pl::{models_of, AtomUniverse, Valuation, WorldSet};
use crate::syntax::{InformationSet, Sentence, SentenceKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelWbd {
    pub m: WorldSet,
    family: Vec<WorldSet>,
}

impl ModelWbd {
    pub fn new(m: WorldSet, family: impl IntoIterator<Item = WorldSet>) -> Result<ModelWbd> {
        let family = normalize_family(&m, family)?;
        Ok(ModelWbd { m, family })
    }

    pub fn family(&self) -> &[WorldSet] {
        &self.family
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelGbd {
    pub m: WorldSet,
    pub n: WorldSet,
}

impl ModelGbd {
    pub fn new(m: WorldSet, n: WorldSet) -> Result<ModelGbd> {
        if m.worlds() != n.worlds() {
            return Err(Error::InvalidModel("M and N are over different universes"));
        }
        Ok(ModelGbd { m, n })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelBd {
    pub m: WorldSet,
    family: Vec<WorldSet>,
}

impl ModelBd {
    pub fn new(m: WorldSet, family: impl IntoIterator<Item = WorldSet>) -> Result<ModelBd> {
        let family = normalize_family(&m, family)?;
        if !family.iter().all(|n| n.is_subset(&m)) {
            return Err(Error::InvalidModel("a source admits a world outside M"));
        }
        Ok(ModelBd { m, family })
    }

    pub fn family(&self) -> &[WorldSet] {
        &self.family
    }

    /// The same structure read as a WBD-model.
    pub fn to_wbd(&self) -> ModelWbd {
        ModelWbd { m: self.m.clone(), family: self.family.clone() }
    }
}

fn normalize_family(m: &WorldSet, family: impl IntoIterator<Item = WorldSet>) -> Result<Vec<WorldSet>> {
    let mut family: Vec<WorldSet> = family.into_iter().collect();
    if family.is_empty() {
        return Err(Error::InvalidModel("the family of sources is empty"));
    }
    if family.iter().any(|n| n.worlds() != m.worlds()) {
        return Err(Error::InvalidModel("sources are over a different universe"));
    }
    family.sort();
    family.dedup();
    Ok(family)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Wbd(ModelWbd),
    Gbd(ModelGbd),
    Bd(ModelBd),
}

impl Model {
    pub fn logic(&self) -> LogicId {
        match self {
            Model::Wbd(_) => LogicId::Wbd,
            Model::Gbd(_) => LogicId::Gbd,
            Model::Bd(_) => LogicId::Bd,
        }
    }

    pub fn agent_worlds(&self) -> &WorldSet {
        match self {
            Model::Wbd(m) => &m.m,
            Model::Gbd(m) => &m.m,
            Model::Bd(m) => &m.m,
        }
    }

    /// Source world sets; a single one for GBD.
    pub fn sources(&self) -> Vec<&WorldSet> {
        match self {
            Model::Wbd(m) => m.family.iter().collect(),
            Model::Gbd(m) => vec![&m.n],
            Model::Bd(m) => m.family.iter().collect(),
        }
    }
}

/// `M = {v0, v3}; N = {{v0}, {}}`
impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M = {}; N = ", self.agent_worlds())?;
        match self {
            Model::Gbd(m) => write!(f, "{}", m.n),
            Model::Wbd(ModelWbd { family, .. }) | Model::Bd(ModelBd { family, .. }) => {
                let items: Vec<String> = family.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
        }
    }
}

/// `model ⊩ sentence`.
pub fn satisfies(model: &Model, sentence: &Sentence, universe: &AtomUniverse) -> Result<bool> {
    let worlds = universe.valuation_count();
    if model.agent_worlds().worlds() != worlds {
        return Err(Error::UniverseMismatch { model: model.agent_worlds().worlds(), universe: worlds });
    }
    let phi = models_of(&sentence.body, universe)?;
    Ok(match sentence.kind {
        SentenceKind::Belief => model.agent_worlds().is_subset(&phi),
        // N ⊆ M(¬φ)
        SentenceKind::Disbelief => model.sources().into_iter().any(|n| n.is_disjoint(&phi)),
    })
}

pub fn satisfies_all(model: &Model, gamma: &InformationSet, universe: &AtomUniverse) -> Result<bool> {
    for s in gamma {
        if !satisfies(model, s, universe)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A model together with the universe its valuations are numbered over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub universe: AtomUniverse,
    pub model: Model,
}

impl Countermodel {
    /// Valuations mentioned by the model, in index order.
    pub fn mentioned_valuations(&self) -> Vec<usize> {
        let mut all = self.model.agent_worlds().clone();
        for n in self.model.sources() {
            all = all.union(n);
        }
        all.iter().collect()
    }

    pub fn legend(&self) -> String {
        self.mentioned_valuations()
            .into_iter()
            .map(|v| format!("v{v} = {{{}}}", Valuation(v as u32).describe(&self.universe)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.model)?;
        let legend = self.legend();
        if !legend.is_empty() {
            write!(f, "\n  where {legend}")?;
        }
        Ok(())
    }
}

/// Builds the canonical countermodel for a query the frame does not entail,
/// and checks it before returning.
pub(crate) fn build_countermodel(frame: &Frame, logic: LogicId, query: &Sentence) -> Result<Countermodel> {
    let worlds = frame.universe.valuation_count();
    let phi = frame.models(&query.body)?;
    let model = match logic {
        LogicId::Wbd => {
            let family: Vec<WorldSet> = if frame.disbeliefs.is_empty() {
                vec![WorldSet::full(worlds)]
            } else {
                frame.disbeliefs.iter().map(|(_, m)| m.complement()).collect()
            };
            Model::Wbd(ModelWbd::new(frame.beliefs.clone(), family)?)
        }
        LogicId::Gbd => Model::Gbd(ModelGbd::new(frame.beliefs.clone(), frame.dual.clone())?),
        LogicId::Bd => {
            let family = match query.kind {
                SentenceKind::Belief => vec![WorldSet::empty(worlds)],
                SentenceKind::Disbelief => {
                    let relative = frame.beliefs.intersection(&phi);
                    let pick = |set: WorldSet| {
                        set.first().map(|v| WorldSet::from_indices(worlds, [v])).ok_or_else(|| {
                            Error::Inconsistent(format!("no world for {query} in BD construction"))
                        })
                    };
                    if frame.disbeliefs.is_empty() {
                        vec![pick(relative)?]
                    } else {
                        frame
                            .disbeliefs
                            .iter()
                            .map(|(_, m)| pick(relative.difference(m)))
                            .collect::<Result<_>>()?
                    }
                }
            };
            Model::Bd(ModelBd::new(frame.beliefs.clone(), family)?)
        }
        LogicId::Bn => return Err(Error::NoSemantics(LogicId::Bn)),
    };

    let holds = |s: &Sentence| -> Result<bool> {
        let m = frame.models(&s.body)?;
        Ok(match s.kind {
            SentenceKind::Belief => model.agent_worlds().is_subset(&m),
            SentenceKind::Disbelief => model.sources().into_iter().any(|n| n.is_disjoint(&m)),
        })
    };
    for (psi, _) in &frame.disbeliefs {
        if !holds(&Sentence::disbelief(psi.clone()))? {
            return Err(Error::Inconsistent(format!("{model} fails D: {psi}")));
        }
    }
    if !model.agent_worlds().is_subset(&frame.beliefs) {
        return Err(Error::Inconsistent(format!("{model} fails the beliefs")));
    }
    if holds(query)? {
        return Err(Error::Inconsistent(format!("{model} satisfies {query}")));
    }
    Ok(Countermodel { universe: frame.universe.clone(), model })
}

/// A model of Γ falsifying the query, or `None` when the query is entailed.
pub fn construct_countermodel(
    logic: LogicId,
    gamma: &InformationSet,
    query: &Sentence,
) -> Result<Option<Countermodel>> {
    if !logic.has_semantics() {
        return Err(Error::NoSemantics(logic));
    }
    let frame = Frame::for_query(gamma, query)?;
    if frame.decide(logic, query)?.0 {
        return Ok(None);
    }
    build_countermodel(&frame, logic, query).map(Some)
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

/// Largest universe for exhaustive WBD/BD model enumeration.
pub const MAX_FAMILY_ORACLE_ATOMS: usize = 2;
/// Largest universe for exhaustive GBD model enumeration.
pub const MAX_GBD_ORACLE_ATOMS: usize = 3;

/// Bitset over the (at most 256) semantic classes of a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct ClassBits([u64; 4]);

impl ClassBits {
    fn all(count: usize) -> ClassBits {
        let mut out = ClassBits::default();
        for c in 0..count {
            out.set(c);
        }
        out
    }

    fn set(&mut self, c: usize) {
        self.0[c / 64] |= 1 << (c % 64);
    }

    fn get(&self, c: usize) -> bool {
        (self.0[c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    fn and(self, o: ClassBits) -> ClassBits {
        ClassBits([self.0[0] & o.0[0], self.0[1] & o.0[1], self.0[2] & o.0[2], self.0[3] & o.0[3]])
    }

    #[inline]
    fn or(self, o: ClassBits) -> ClassBits {
        ClassBits([self.0[0] | o.0[0], self.0[1] | o.0[1], self.0[2] | o.0[2], self.0[3] | o.0[3]])
    }

    #[inline]
    fn and_not(self, o: ClassBits) -> ClassBits {
        ClassBits([self.0[0] & !o.0[0], self.0[1] & !o.0[1], self.0[2] & !o.0[2], self.0[3] & !o.0[3]])
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    #[inline]
    fn contains_all(&self, o: &ClassBits) -> bool {
        o.and_not(*self).is_empty()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..256).filter(move |&c| self.get(c))
    }
}

/// One enumerated model: the agent's world-set index and the family code
/// (bit `k` set iff world set `k` is a source; for GBD, the source index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ModelCode {
    m: usize,
    sources: u64,
}

/// Result of enumerating every model of Γ over a universe.
#[derive(Debug, Clone)]
pub struct OracleRun {
    logic: LogicId,
    universe: AtomUniverse,
    entailed: [ClassBits; 2],
    first_counter: [Vec<Option<ModelCode>>; 2],
    models_enumerated: u64,
    models_of_gamma: u64,
}

fn kind_slot(kind: SentenceKind) -> usize {
    match kind {
        SentenceKind::Belief => 0,
        SentenceKind::Disbelief => 1,
    }
}

struct Accumulator {
    acc: [ClassBits; 2],
    first: [Vec<Option<ModelCode>>; 2],
    of_gamma: u64,
}

impl Accumulator {
    fn new(classes: usize) -> Accumulator {
        Accumulator {
            acc: [ClassBits::all(classes), ClassBits::all(classes)],
            first: [vec![None; classes], vec![None; classes]],
            of_gamma: 0,
        }
    }

    #[inline]
    #[allow(clippy::needless_range_loop)]
    fn visit(&mut self, code: ModelCode, sat: [ClassBits; 2]) {
        self.of_gamma += 1;
        for slot in 0..2 {
            let lost = self.acc[slot].and_not(sat[slot]);
            if !lost.is_empty() {
                for c in lost.ones() {
                    self.first[slot][c] = Some(code);
                }
                self.acc[slot] = self.acc[slot].and(sat[slot]);
            }
        }
    }
}

/// Enumerates every model over `universe` in the order (M ascending, family
/// code ascending) and records which sentences hold in all models of Γ.
#[allow(clippy::needless_range_loop)]
pub fn brute_force_run(logic: LogicId, gamma: &InformationSet, universe: &AtomUniverse) -> Result<OracleRun> {
    let limit = match logic {
        LogicId::Wbd | LogicId::Bd => MAX_FAMILY_ORACLE_ATOMS,
        LogicId::Gbd => MAX_GBD_ORACLE_ATOMS,
        LogicId::Bn => return Err(Error::NoSemantics(LogicId::Bn)),
    };
    if universe.len() > limit {
        return Err(Error::Scale { what: "brute-force model enumeration", found: universe.len(), limit });
    }
    let worlds = universe.valuation_count();
    let classes = 1usize << worlds;

    // Sentence classes occurring in Γ.
    let mut gamma_bits = [ClassBits::default(); 2];
    for s in gamma {
        let c = models_of(&s.body, universe)?.bits() as usize;
        gamma_bits[kind_slot(s.kind)].set(c);
    }

    // belief_sat[m]: classes c with m ⊆ c
    // source_sat[n]: classes c with n ⊆ ¬c
    let mut belief_sat = vec![ClassBits::default(); classes];
    let mut source_sat = vec![ClassBits::default(); classes];
    for x in 0..classes {
        for c in 0..classes {
            if x & !c == 0 {
                belief_sat[x].set(c);
            }
            if x & c == 0 {
                source_sat[x].set(c);
            }
        }
    }

    let mut acc = Accumulator::new(classes);
    let mut enumerated = 0u64;
    match logic {
        LogicId::Gbd => {
            for m in 0..classes {
                for n in 0..classes {
                    enumerated += 1;
                    let sat = [belief_sat[m], source_sat[n]];
                    if sat[0].contains_all(&gamma_bits[0]) && sat[1].contains_all(&gamma_bits[1]) {
                        acc.visit(ModelCode { m, sources: n as u64 }, sat);
                    }
                }
            }
        }
        LogicId::Wbd | LogicId::Bd => {
            // family_sat[F] = ⋃_{N ∈ F} source_sat[N]: some source rules the class out
            let families = 1usize << classes;
            let mut family_sat = vec![ClassBits::default(); families];
            for f in 1..families {
                let low = f.trailing_zeros() as usize;
                family_sat[f] = family_sat[f & (f - 1)].or(source_sat[low]);
            }
            for m in 0..classes {
                let beliefs = belief_sat[m];
                if logic == LogicId::Wbd {
                    enumerated += (families - 1) as u64;
                    if !beliefs.contains_all(&gamma_bits[0]) {
                        continue;
                    }
                    for f in 1..families {
                        let dis = family_sat[f];
                        if dis.contains_all(&gamma_bits[1]) {
                            acc.visit(ModelCode { m, sources: f as u64 }, [beliefs, dis]);
                        }
                    }
                } else {
                    // world sets n ⊆ m
                    let allowed: usize = (0..classes).filter(|&n| n & !m == 0).map(|n| 1 << n).sum();
                    let mut f = 0usize;
                    loop {
                        f = f.wrapping_sub(allowed) & allowed;
                        if f == 0 {
                            break;
                        }
                        enumerated += 1;
                        if !beliefs.contains_all(&gamma_bits[0]) {
                            continue;
                        }
                        let dis = family_sat[f];
                        if dis.contains_all(&gamma_bits[1]) {
                            acc.visit(ModelCode { m, sources: f as u64 }, [beliefs, dis]);
                        }
                    }
                }
            }
        }
        LogicId::Bn => unreachable!(),
    }

    Ok(OracleRun {
        logic,
        universe: universe.clone(),
        entailed: acc.acc,
        first_counter: acc.first,
        models_enumerated: enumerated,
        models_of_gamma: acc.of_gamma,
    })
}

impl OracleRun {
    pub fn logic(&self) -> LogicId {
        self.logic
    }

    pub fn universe(&self) -> &AtomUniverse {
        &self.universe
    }

    /// Total number of models visited.
    pub fn models_enumerated(&self) -> u64 {
        self.models_enumerated
    }

    /// Number of visited models satisfying Γ.
    pub fn models_of_gamma(&self) -> u64 {
        self.models_of_gamma
    }

    /// Entailment of the sentence with the given class bitmask.
    pub fn entails_class(&self, kind: SentenceKind, class: usize) -> bool {
        self.entailed[kind_slot(kind)].get(class)
    }

    pub fn entails(&self, query: &Sentence) -> Result<bool> {
        let class = models_of(&query.body, &self.universe)?.bits() as usize;
        Ok(self.entails_class(query.kind, class))
    }

    fn decode(&self, code: ModelCode) -> Model {
        let worlds = self.universe.valuation_count();
        let m = WorldSet::from_bits(worlds, code.m as u64);
        let members = || {
            (0..64)
                .filter(move |k| (code.sources >> k) & 1 == 1)
                .map(move |k| WorldSet::from_bits(worlds, k as u64))
        };
        match self.logic {
            LogicId::Wbd => Model::Wbd(ModelWbd { m, family: members().collect() }),
            LogicId::Bd => Model::Bd(ModelBd { m, family: members().collect() }),
            LogicId::Gbd => Model::Gbd(ModelGbd { m, n: WorldSet::from_bits(worlds, code.sources) }),
            LogicId::Bn => unreachable!(),
        }
    }

    /// Verdict with the first counterexample in enumeration order.
    pub fn verdict(&self, query: &Sentence) -> Result<Verdict> {
        let class = models_of(&query.body, &self.universe)?.bits() as usize;
        let slot = kind_slot(query.kind);
        let entailed = self.entailed[slot].get(class);
        let witness = self.first_counter[slot][class]
            .filter(|_| !entailed)
            .map(|code| Countermodel { universe: self.universe.clone(), model: self.decode(code) });
        Ok(Verdict {
            logic: self.logic,
            query: query.clone(),
            entailed,
            rationale: if entailed { Rationale::AllModels } else { Rationale::NotEntailed },
            witness,
        })
    }

    /// Entailed sentences as class bitmasks; universes of up to two atoms.
    pub fn mask(&self) -> crate::closure::SentenceMask {
        let mut out = crate::closure::SentenceMask::default();
        let classes = 1usize << self.universe.valuation_count();
        assert!(classes <= 32, "masks cover at most two atoms");
        for kind in [SentenceKind::Belief, SentenceKind::Disbelief] {
            for c in 0..classes {
                if self.entails_class(kind, c) {
                    out.insert(kind, c);
                }
            }
        }
        out
    }
}

/// `Γ ⊨_logic α` by enumerating every model over `universe`.
pub fn brute_force_entails(
    logic: LogicId,
    gamma: &InformationSet,
    query: &Sentence,
    universe: &AtomUniverse,
) -> Result<Verdict> {
    brute_force_run(logic, gamma, universe)?.verdict(query)
}
