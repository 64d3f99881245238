//! Homogeneity of coded clique candidates in ω-automatic presentations.
//!
//! A [`Presentation`] bundles a regular ω-language of names, a name-equality
//! relation and edge relations, all as Büchi automata. Given a triple
//! `(u, v, w)` of a prefix and two distinct equal-length blocks, the coded
//! candidate is the image of the growing-zero-blocks language under the
//! blockwise coding `0 ↦ v`, `1 ↦ w` prefixed by `u` (see [`crate::nlang`]).
//! [`verify`] decides whether every candidate word is a name and whether
//! every pair of distinct candidate words falls into one chosen edge class;
//! [`find_triple`] searches candidate triples in canonical order.
//!
//! Both questions reduce to emptiness of a finite automaton over choice
//! sequences. Reading a coded member blockwise, a Büchi automaton only sees
//! each block through its transition profile, and the profiles of the powers
//! of the filler block are eventually periodic in the exponent. Since the
//! zero-run exponents grow monotonically, an automaton can track each
//! exponent exactly below a threshold and as a residue beyond it, which
//! turns "some member (or pair of distinct members) lands in this ω-regular
//! language" into plain Büchi emptiness — with no loss: every accepting
//! lasso of the abstraction is realized by a genuine member, and conversely.
//! Reported witnesses are ultimately periodic shadow words that repeat the
//! lasso's exponents verbatim; they re-verify by ordinary membership because
//! their block profiles match the genuine run exactly.
//!
//! A presentation bundle on disk is a directory holding `L.nba`, `eq.nba`
//! and `E1.nba` … `Ek.nba` in the automaton text format.

use std::collections::HashMap;
use std::path::Path;

use crate::algebra::{self, Step, TransitionProfile};
use crate::nba::{Nba, Side};
use crate::nlang::WordHom;
use crate::words::{Alphabet, FiniteWord, UpWord};
use crate::{Error, Result};

/// An ω-automatic presentation of a partition of pairs: names, name
/// equality, and one automaton per edge class (classes are 1-based).
#[derive(Clone, Debug)]
pub struct Presentation {
    alphabet: Alphabet,
    domain: Nba,
    equality: Nba,
    edges: Vec<Nba>,
}

impl Presentation {
    pub fn new(domain: Nba, equality: Nba, edges: Vec<Nba>) -> Result<Presentation> {
        let alphabet = domain.alphabet().clone();
        let pair = alphabet.pair();
        if edges.is_empty() {
            return Err(Error::Invalid("a presentation needs at least one edge class".into()));
        }
        if *equality.alphabet() != pair || edges.iter().any(|e| *e.alphabet() != pair) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Presentation { alphabet, domain, equality, edges })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn domain(&self) -> &Nba {
        &self.domain
    }

    pub fn equality(&self) -> &Nba {
        &self.equality
    }

    pub fn edges(&self) -> &[Nba] {
        &self.edges
    }

    /// Loads `L.nba`, `eq.nba`, `E1.nba` … from a bundle directory.
    pub fn load(dir: &Path) -> Result<Presentation> {
        let read = |name: &str| -> Result<Nba> {
            let text = std::fs::read_to_string(dir.join(name))?;
            Nba::parse(&text)
        };
        let domain = read("L.nba")?;
        let equality = read("eq.nba")?;
        let mut edges = Vec::new();
        loop {
            let path = dir.join(format!("E{}.nba", edges.len() + 1));
            if !path.exists() {
                break;
            }
            let text = std::fs::read_to_string(path)?;
            edges.push(Nba::parse(&text)?);
        }
        Presentation::new(domain, equality, edges)
    }

    /// Writes the bundle files into a directory (created if missing).
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("L.nba"), self.domain.to_text())?;
        std::fs::write(dir.join("eq.nba"), self.equality.to_text())?;
        for (i, e) in self.edges.iter().enumerate() {
            std::fs::write(dir.join(format!("E{}.nba", i + 1)), e.to_text())?;
        }
        Ok(())
    }

    /// Sample-based sanity checks: equality should be reflexive and
    /// symmetric on names, and every distinct pair of names should fall into
    /// equality or some edge class. Violations come back as warnings.
    pub fn validate_on(&self, samples: &[UpWord]) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        let names: Vec<&UpWord> = samples
            .iter()
            .filter(|x| self.domain.member_up(x).unwrap_or(false))
            .collect();
        for &x in &names {
            let xx = UpWord::convolve(&[x.clone(), x.clone()])?;
            if !self.equality.member_up(&xx)? {
                warnings.push(format!("equality is not reflexive at {x}"));
            }
        }
        for &x in &names {
            for &y in &names {
                if x == y {
                    continue;
                }
                let xy = UpWord::convolve(&[x.clone(), y.clone()])?;
                let yx = UpWord::convolve(&[y.clone(), x.clone()])?;
                if self.equality.member_up(&xy)? != self.equality.member_up(&yx)? {
                    warnings.push(format!("equality is not symmetric at ({x}, {y})"));
                }
                let mut covered = self.equality.member_up(&xy)?;
                for e in &self.edges {
                    covered = covered || e.member_up(&xy)?;
                }
                if !covered {
                    warnings.push(format!("pair ({x}, {y}) falls in no class"));
                }
            }
        }
        Ok(warnings)
    }
}

/// A candidate triple: non-empty prefix `u` and distinct equal-length blocks
/// `v`, `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCandidate {
    u: FiniteWord,
    v: FiniteWord,
    w: FiniteWord,
}

impl TripleCandidate {
    pub fn new(u: FiniteWord, v: FiniteWord, w: FiniteWord) -> Result<TripleCandidate> {
        if u.is_empty() {
            return Err(Error::Invalid("the prefix of a candidate must be non-empty".into()));
        }
        // block invariants are shared with the coding homomorphism
        WordHom::new(u.clone(), v.clone(), w.clone())?;
        Ok(TripleCandidate { u, v, w })
    }

    pub fn u(&self) -> &FiniteWord {
        &self.u
    }

    pub fn v(&self) -> &FiniteWord {
        &self.v
    }

    pub fn w(&self) -> &FiniteWord {
        &self.w
    }

    pub fn hom(&self) -> WordHom {
        WordHom::new(self.u.clone(), self.v.clone(), self.w.clone()).expect("validated")
    }
}

/// A witness refuting an inclusion.
#[derive(Clone, Debug)]
pub enum Refutation {
    /// A word shaped like the candidate language that the name language
    /// rejects.
    Word(UpWord),
    /// A pair of candidate-shaped words landing in the wrong edge class
    /// (1-based).
    Pair { left: UpWord, right: UpWord, class: usize },
}

/// The outcome of one inclusion check.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Refutation>,
}

impl Verdict {
    fn holds() -> Verdict {
        Verdict { holds: true, witness: None }
    }
}

/// Outcome of the full two-stage verification.
#[derive(Clone, Debug)]
pub enum VerifyOutcome {
    Holds,
    /// Some candidate word is not a name.
    FailsSubset(Verdict),
    /// Some pair of distinct candidate words misses the chosen class.
    FailsPair(Verdict),
}

impl VerifyOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, VerifyOutcome::Holds)
    }
}

// ---------------------------------------------------------------------------
// block-profile abstraction

/// Eventually periodic powers of one profile: `get(n)` is the profile of the
/// n-th power for every `n ≥ 0`.
struct PowerTable {
    powers: Vec<TransitionProfile>,
    threshold: usize,
    period: usize,
}

/// Safety cap on the power table length.
const POWER_TABLE_CAP: usize = 4096;

impl PowerTable {
    fn new(base: TransitionProfile) -> Result<PowerTable> {
        let mut powers = vec![TransitionProfile::identity(base.dim()), base.clone()];
        let mut seen: HashMap<TransitionProfile, usize> = HashMap::new();
        seen.insert(base.clone(), 1);
        loop {
            let next = powers.last().expect("non-empty").multiply(&base);
            let exponent = powers.len();
            if let Some(&t) = seen.get(&next) {
                return Ok(PowerTable { powers, threshold: t, period: exponent - t });
            }
            if exponent > POWER_TABLE_CAP {
                return Err(Error::MonoidCap { cap: POWER_TABLE_CAP });
            }
            seen.insert(next.clone(), exponent);
            powers.push(next);
        }
    }

    /// Values below this bound are tracked exactly by counters.
    fn exact_bound(&self) -> usize {
        self.threshold.max(2)
    }

    fn get(&self, n: usize) -> &TransitionProfile {
        if n < self.powers.len() {
            &self.powers[n]
        } else {
            &self.powers[self.fold(n)]
        }
    }

    /// Folds an exponent known only by residue (value guaranteed to be at
    /// least the threshold) into the stored range.
    fn fold_residue(&self, residue: usize) -> usize {
        let d = self.period;
        let t = self.threshold;
        t + (residue + d - t % d) % d
    }

    fn fold(&self, n: usize) -> usize {
        debug_assert!(n >= self.threshold);
        self.threshold + (n - self.threshold) % self.period
    }
}

/// A block exponent, exact below the table's bound and a residue beyond it.
/// All tracked quantities are monotone, so a residue is valid forever.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Counter {
    Exact(usize),
    Residue(usize),
}

impl Counter {
    fn make(value: usize, table: &PowerTable) -> Counter {
        if value < table.exact_bound() {
            Counter::Exact(value)
        } else {
            Counter::Residue(value % table.period)
        }
    }

    /// The affine update `2·self + shift`.
    fn double_plus(self, shift: i64, table: &PowerTable) -> Counter {
        match self {
            Counter::Exact(v) => {
                let next = 2 * v as i64 + shift;
                debug_assert!(next >= 0);
                Counter::make(next as usize, table)
            }
            Counter::Residue(r) => {
                let d = table.period as i64;
                Counter::Residue((2 * r as i64 + shift).rem_euclid(d) as usize)
            }
        }
    }

    /// The profile-table slot for the exponent `self + shift`; the slot
    /// doubles as the representative exponent realizing the same profile.
    fn exponent_slot(self, shift: i64, table: &PowerTable) -> usize {
        match self {
            Counter::Exact(v) => {
                let n = v as i64 + shift;
                debug_assert!(n >= 0);
                let n = n as usize;
                if n < table.powers.len() {
                    n
                } else {
                    table.fold(n)
                }
            }
            Counter::Residue(r) => {
                let d = table.period as i64;
                table.fold_residue((r as i64 + shift).rem_euclid(d) as usize)
            }
        }
    }

    /// The profile-table slot for the exponent `2·self + shift`.
    fn doubled_slot(self, shift: i64, table: &PowerTable) -> usize {
        match self {
            Counter::Exact(v) => Counter::Exact(2 * v).exponent_slot(shift, table),
            Counter::Residue(r) => {
                let d = table.period as i64;
                table.fold_residue((2 * r as i64 + shift).rem_euclid(d) as usize)
            }
        }
    }
}

/// Per-macro-step profile over a target automaton, with the `AccPath`
/// entries marking accepting visits inside the step.
fn step_targets(profile: &TransitionProfile, from: usize) -> Vec<(usize, bool)> {
    (0..profile.dim())
        .filter_map(|q| match profile.get(from, q) {
            Step::No => None,
            Step::Path => Some((q, false)),
            Step::AccPath => Some((q, true)),
        })
        .collect()
}

/// The automaton over choice bits accepting the choice sequences whose coded
/// member lies in the target language.
struct WordChoiceAutomaton {
    nba: Nba,
    decode: WordDecoder,
}

struct WordDecoder {
    hom: WordHom,
    table: PowerTable,
}

/// State of the single-word abstraction: counter for the next block's
/// leading-one position, target-automaton state, accepting flag.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum WordState {
    Start,
    Block(Counter, usize, bool),
}

fn build_word_choice_automaton(target: &Nba, hom: &WordHom) -> Result<WordChoiceAutomaton> {
    if target.alphabet() != hom.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let table = PowerTable::new(TransitionProfile::of_word(target, hom.image0())?)?;
    let one_profile = TransitionProfile::of_word(target, hom.image1())?;
    let prefix_profile = if hom.prefix().is_empty() {
        TransitionProfile::identity(target.state_count())
    } else {
        TransitionProfile::of_word(target, hom.prefix())?
    };

    let alphabet = Alphabet::binary();
    let mut states: Vec<WordState> = vec![WordState::Start];
    let mut index: HashMap<WordState, usize> = HashMap::from([(WordState::Start, 0)]);
    let mut transitions = Vec::new();
    let mut frontier = vec![WordState::Start];
    while let Some(state) = frontier.pop() {
        let from_id = index[&state];
        for bit in 0..2usize {
            let (counter, q, base_profile) = match state {
                WordState::Start => (
                    Counter::Exact(0),
                    target.initial(),
                    Some(prefix_profile.clone()),
                ),
                WordState::Block(c, q, _) => (c, q, None),
            };
            // block = image1 · image0^(position + bit)
            let slot = counter.exponent_slot(bit as i64, &table);
            let mut profile = one_profile.multiply(table.get(slot));
            if let Some(base) = base_profile {
                profile = base.multiply(&profile);
            }
            let next_counter = counter.double_plus(1 + bit as i64, &table);
            for (q2, acc) in step_targets(&profile, q) {
                let next = WordState::Block(next_counter, q2, acc);
                let id = *index.entry(next).or_insert_with(|| {
                    states.push(next);
                    frontier.push(next);
                    states.len() - 1
                });
                transitions.push((from_id, bit, id));
            }
        }
    }
    let accepting: Vec<usize> = states
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, WordState::Block(_, _, true)))
        .map(|(i, _)| i)
        .collect();
    let nba = Nba::new(alphabet, states.len(), 0, accepting, transitions)?;
    Ok(WordChoiceAutomaton { nba, decode: WordDecoder { hom: hom.clone(), table } })
}

impl WordChoiceAutomaton {
    /// Turns an accepting choice lasso into an ultimately periodic shadow
    /// word: the coded word that repeats the lasso's exponents verbatim,
    /// with residue-tracked exponents replaced by the representative of the
    /// same profile class. The shadow's block profiles equal those of the
    /// lasso run, so it lies in the target language.
    fn shadow(&self, stem: &[usize], cycle: &[usize]) -> UpWord {
        let hom = &self.decode.hom;
        let table = &self.decode.table;
        let mut counter = Counter::Exact(0);
        let mut emit = |bits: &[usize], out: &mut FiniteWord| {
            for &bit in bits {
                let exponent = counter.exponent_slot(bit as i64, table);
                *out = out.concat(hom.image1()).expect("same alphabet");
                for _ in 0..exponent {
                    *out = out.concat(hom.image0()).expect("same alphabet");
                }
                counter = counter.double_plus(1 + bit as i64, table);
            }
        };
        let mut pre = hom.prefix().clone();
        emit(stem, &mut pre);
        let mut per = FiniteWord::empty(hom.alphabet().clone());
        emit(cycle, &mut per);
        UpWord::new(pre, per).expect("non-empty period")
    }
}

/// The automaton over pair moves accepting the pairs of distinct choice
/// sequences whose coded members, convolved, lie in the target pair
/// language. Divergence is fixed as first-component-short; the swapped
/// orientation is handled by transposing the target.
struct PairChoiceAutomaton {
    nba: Nba,
    decode: PairDecoder,
}

struct PairDecoder {
    hom: WordHom,
    table: PowerTable,
    base: Alphabet,
}

/// Pair-abstraction state: shared counter before divergence, the two gap
/// counters after it.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum PairState {
    Start,
    Common(Counter, usize, bool),
    Loop { lead: Counter, spread: Counter, q: usize, acc: bool },
}

/// Move alphabet of the pair abstraction: shared bits, the divergence
/// marker, then independent bit pairs.
fn pair_moves() -> Alphabet {
    Alphabet::new(["0", "1", "d", "0|0", "0|1", "1|0", "1|1"]).expect("pair move alphabet")
}

fn build_pair_choice_automaton(target: &Nba, hom: &WordHom) -> Result<PairChoiceAutomaton> {
    let base = hom.alphabet().clone();
    if *target.alphabet() != base.pair() {
        return Err(Error::AlphabetMismatch);
    }
    let pair_word = |x: &FiniteWord, y: &FiniteWord| x.convolve_with(y).expect("equal lengths");
    let vv = TransitionProfile::of_word(target, &pair_word(hom.image0(), hom.image0()))?;
    let ww = TransitionProfile::of_word(target, &pair_word(hom.image1(), hom.image1()))?;
    let wv = TransitionProfile::of_word(target, &pair_word(hom.image1(), hom.image0()))?;
    let vw = TransitionProfile::of_word(target, &pair_word(hom.image0(), hom.image1()))?;
    let table = PowerTable::new(vv)?;
    let prefix_profile = if hom.prefix().is_empty() {
        TransitionProfile::identity(target.state_count())
    } else {
        let uu = pair_word(hom.prefix(), hom.prefix());
        TransitionProfile::of_word(target, &uu)?
    };

    let moves = pair_moves();
    let sym = |name: &str| moves.index_of(name).expect("known move");
    let mut states: Vec<PairState> = vec![PairState::Start];
    let mut index: HashMap<PairState, usize> = HashMap::from([(PairState::Start, 0)]);
    let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
    let mut frontier = vec![PairState::Start];

    let intern = |next: PairState,
                  states: &mut Vec<PairState>,
                  index: &mut HashMap<PairState, usize>,
                  frontier: &mut Vec<PairState>|
     -> usize {
        *index.entry(next).or_insert_with(|| {
            states.push(next);
            frontier.push(next);
            states.len() - 1
        })
    };

    while let Some(state) = frontier.pop() {
        let from_id = index[&state];
        match state {
            PairState::Start | PairState::Common(..) => {
                let (counter, q, lead_in) = match state {
                    PairState::Start => {
                        (Counter::Exact(0), target.initial(), Some(prefix_profile.clone()))
                    }
                    PairState::Common(c, q, _) => (c, q, None),
                    PairState::Loop { .. } => unreachable!(),
                };
                // shared bit: both members take the same block
                for bit in 0..2usize {
                    let slot = counter.exponent_slot(bit as i64, &table);
                    let mut profile = ww.multiply(table.get(slot));
                    if let Some(base_p) = &lead_in {
                        profile = base_p.multiply(&profile);
                    }
                    let next_counter = counter.double_plus(1 + bit as i64, &table);
                    for (q2, acc) in step_targets(&profile, q) {
                        let next = PairState::Common(next_counter, q2, acc);
                        let id = intern(next, &mut states, &mut index, &mut frontier);
                        transitions.push((from_id, sym(&bit.to_string()), id));
                    }
                }
                // divergence: first member takes the short block, second the
                // long one; their next leading ones land adjacently
                {
                    let slot = counter.exponent_slot(0, &table);
                    let mut profile = ww.multiply(table.get(slot)).multiply(&wv).multiply(&vw);
                    if let Some(base_p) = &lead_in {
                        profile = base_p.multiply(&profile);
                    }
                    let lead = counter.double_plus(0, &table);
                    let spread = Counter::Exact(1);
                    for (q2, acc) in step_targets(&profile, q) {
                        let _ = acc; // pre-divergence accepting visits do not recur
                        let next = PairState::Loop { lead, spread, q: q2, acc: false };
                        let id = intern(next, &mut states, &mut index, &mut frontier);
                        transitions.push((from_id, sym("d"), id));
                    }
                }
            }
            PairState::Loop { lead, spread, q, .. } => {
                for a in 0..2usize {
                    for b in 0..2usize {
                        // gap to the first member's next one, then to the
                        // second member's
                        let g1 = lead.exponent_slot(a as i64, &table);
                        let g2 = spread.doubled_slot(b as i64 - a as i64 - 1, &table);
                        let profile = table
                            .get(g1)
                            .multiply(&wv)
                            .multiply(table.get(g2))
                            .multiply(&vw);
                        let lead2 = lead.double_plus(1 + 2 * a as i64 - b as i64, &table);
                        let spread2 = spread.double_plus(b as i64 - a as i64, &table);
                        for (q2, acc) in step_targets(&profile, q) {
                            let next = PairState::Loop { lead: lead2, spread: spread2, q: q2, acc };
                            let id = intern(next, &mut states, &mut index, &mut frontier);
                            transitions.push((from_id, sym(&format!("{a}|{b}")), id));
                        }
                    }
                }
            }
        }
    }
    let accepting: Vec<usize> = states
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, PairState::Loop { acc: true, .. }))
        .map(|(i, _)| i)
        .collect();
    let nba = Nba::new(moves, states.len(), 0, accepting, transitions)?;
    Ok(PairChoiceAutomaton { nba, decode: PairDecoder { hom: hom.clone(), table, base } })
}

impl PairChoiceAutomaton {
    /// Shadow pair for an accepting move lasso, as the two projections of
    /// the reconstructed convolution.
    fn shadow(&self, stem: &[usize], cycle: &[usize]) -> Result<(UpWord, UpWord)> {
        let hom = &self.decode.hom;
        let table = &self.decode.table;
        let base = &self.decode.base;
        let pair_alph = base.pair();
        let moves = pair_moves();
        let pair_word = |x: &FiniteWord, y: &FiniteWord| x.convolve_with(y).expect("equal lengths");
        let vv = pair_word(hom.image0(), hom.image0());
        let ww = pair_word(hom.image1(), hom.image1());
        let wv = pair_word(hom.image1(), hom.image0());
        let vw = pair_word(hom.image0(), hom.image1());

        enum Mode {
            Common(Counter),
            Loop(Counter, Counter),
        }
        let mut mode = Mode::Common(Counter::Exact(0));
        let mut emit = |tokens: &[usize], out: &mut FiniteWord| {
            for &tok in tokens {
                let name = moves.symbol(tok).to_string();
                match &mut mode {
                    Mode::Common(counter) => match name.as_str() {
                        "0" | "1" => {
                            let bit = i64::from(name == "1");
                            let exponent = counter.exponent_slot(bit, table);
                            *out = out.concat(&ww).expect("same alphabet");
                            for _ in 0..exponent {
                                *out = out.concat(&vv).expect("same alphabet");
                            }
                            *counter = counter.double_plus(1 + bit, table);
                        }
                        "d" => {
                            let exponent = counter.exponent_slot(0, table);
                            *out = out.concat(&ww).expect("same alphabet");
                            for _ in 0..exponent {
                                *out = out.concat(&vv).expect("same alphabet");
                            }
                            *out = out.concat(&wv).expect("same alphabet");
                            *out = out.concat(&vw).expect("same alphabet");
                            let lead = counter.double_plus(0, table);
                            mode = Mode::Loop(lead, Counter::Exact(1));
                        }
                        other => unreachable!("move {other} before divergence"),
                    },
                    Mode::Loop(lead, spread) => {
                        let (a, b) = match name.as_str() {
                            "0|0" => (0i64, 0i64),
                            "0|1" => (0, 1),
                            "1|0" => (1, 0),
                            "1|1" => (1, 1),
                            other => unreachable!("move {other} after divergence"),
                        };
                        let g1 = lead.exponent_slot(a, table);
                        let g2 = spread.doubled_slot(b - a - 1, table);
                        for _ in 0..g1 {
                            *out = out.concat(&vv).expect("same alphabet");
                        }
                        *out = out.concat(&wv).expect("same alphabet");
                        for _ in 0..g2 {
                            *out = out.concat(&vv).expect("same alphabet");
                        }
                        *out = out.concat(&vw).expect("same alphabet");
                        *lead = lead.double_plus(1 + 2 * a - b, table);
                        *spread = spread.double_plus(b - a, table);
                    }
                }
            }
        };
        let prefix = pair_word(hom.prefix(), hom.prefix());
        let mut pre = FiniteWord::empty(pair_alph.clone());
        pre = pre.concat(&prefix)?;
        emit(stem, &mut pre);
        let mut per = FiniteWord::empty(pair_alph);
        emit(cycle, &mut per);
        let combined = UpWord::new(pre, per)?;
        Ok((combined.project(0, base)?, combined.project(1, base)?))
    }
}

// ---------------------------------------------------------------------------
// the decision procedure

/// Caches per-presentation constructions across candidate tests.
pub struct Decider<'a> {
    presentation: &'a Presentation,
    domain_complement: Nba,
}

impl<'a> Decider<'a> {
    pub fn new(presentation: &'a Presentation) -> Result<Decider<'a>> {
        let domain_complement = algebra::complement(&presentation.domain)?.trimmed();
        Ok(Decider { presentation, domain_complement })
    }

    /// Does every coded candidate word belong to the name language? The
    /// check runs the choice abstraction against the complement of the
    /// names; a refuting lasso yields a candidate-shaped shadow word the
    /// name automaton rejects.
    pub fn subset_of_domain(&self, t: &TripleCandidate) -> Result<Verdict> {
        let hom = t.hom();
        let automaton = build_word_choice_automaton(&self.domain_complement, &hom)?;
        match automaton.nba.fast_lasso() {
            None => Ok(Verdict::holds()),
            Some((stem, cycle)) => {
                let shadow = automaton.shadow(&stem, &cycle);
                debug_assert!(!self.presentation.domain.member_up(&shadow)?);
                Ok(Verdict { holds: false, witness: Some(Refutation::Word(shadow)) })
            }
        }
    }

    /// Does every pair of distinct coded candidate words fall into edge
    /// class `class` (or name equality)? Exploits that partition classes are
    /// disjoint: it suffices that no distinct candidate pair lands in any
    /// other class. Assumes [`Decider::subset_of_domain`] holds.
    pub fn homogeneous(&self, t: &TripleCandidate, class: usize) -> Result<Verdict> {
        let edges = &self.presentation.edges;
        if class == 0 || class > edges.len() {
            return Err(Error::Invalid(format!("no edge class {class}")));
        }
        let others: Vec<Nba> = edges
            .iter()
            .enumerate()
            .filter(|(j, _)| j + 1 != class)
            .map(|(_, e)| e.clone())
            .collect();
        let Some(rest) = Nba::union_all(&others)? else {
            return Ok(Verdict::holds());
        };
        let rest = rest.trimmed();
        let hom = t.hom();

        let oriented = build_pair_choice_automaton(&rest, &hom)?;
        if let Some((stem, cycle)) = oriented.nba.fast_lasso() {
            let (left, right) = oriented.shadow(&stem, &cycle)?;
            return self.pair_verdict(left, right, class);
        }
        let transposed = rest.swap_pairs(&self.presentation.alphabet)?;
        let swapped = build_pair_choice_automaton(&transposed, &hom)?;
        if let Some((stem, cycle)) = swapped.nba.fast_lasso() {
            let (right, left) = swapped.shadow(&stem, &cycle)?;
            return self.pair_verdict(left, right, class);
        }
        Ok(Verdict::holds())
    }

    fn pair_verdict(&self, left: UpWord, right: UpWord, class: usize) -> Result<Verdict> {
        let pair = UpWord::convolve(&[left.clone(), right.clone()])?;
        let mut hit = None;
        for (j, e) in self.presentation.edges.iter().enumerate() {
            if j + 1 != class && e.member_up(&pair)? {
                hit = Some(j + 1);
                break;
            }
        }
        let class_hit = hit.ok_or_else(|| {
            Error::Invalid("pair witness does not re-verify in any other class".into())
        })?;
        Ok(Verdict {
            holds: false,
            witness: Some(Refutation::Pair { left, right, class: class_hit }),
        })
    }
}

/// Two-stage verification: candidate words are names, then pairs stay in the
/// chosen class.
pub fn verify(p: &Presentation, t: &TripleCandidate, class: usize) -> Result<VerifyOutcome> {
    let decider = Decider::new(p)?;
    let subset = decider.subset_of_domain(t)?;
    if !subset.holds {
        return Ok(VerifyOutcome::FailsSubset(subset));
    }
    let pairs = decider.homogeneous(t, class)?;
    if !pairs.holds {
        return Ok(VerifyOutcome::FailsPair(pairs));
    }
    Ok(VerifyOutcome::Holds)
}

/// Searches candidate triples in canonical order — graded by prefix and
/// block lengths, then lexicographic on prefix, first block, second block —
/// and returns the first candidate homogeneous for some class (classes tried
/// in ascending order).
pub fn find_triple(p: &Presentation, max_len: usize) -> Result<Option<(TripleCandidate, usize)>> {
    let decider = Decider::new(p)?;
    let alphabet = &p.alphabet;
    let words_of = |len: usize| -> Vec<FiniteWord> {
        let mut out = Vec::new();
        let total = alphabet.len().pow(len as u32);
        for code in 0..total {
            let mut syms = vec![0usize; len];
            let mut c = code;
            for slot in syms.iter_mut().rev() {
                *slot = c % alphabet.len();
                c /= alphabet.len();
            }
            out.push(FiniteWord::new(alphabet.clone(), syms).expect("valid word"));
        }
        out
    };
    for u_len in 1..=max_len {
        for v_len in 1..=max_len {
            for u in words_of(u_len) {
                for v in words_of(v_len) {
                    for w in words_of(v_len) {
                        if v == w {
                            continue;
                        }
                        let t = TripleCandidate::new(u.clone(), v.clone(), w.clone())?;
                        if !decider.subset_of_domain(&t)?.holds {
                            continue;
                        }
                        for class in 1..=p.edges.len() {
                            if decider.homogeneous(&t, class)?.holds {
                                return Ok(Some((t, class)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// partial orders as presentations

/// Builds the four-class presentation of a partial order given by name
/// automata: equality, strictly-below with lexicographically smaller name,
/// strictly-above with lexicographically smaller name, and incomparable.
/// Negations of `leq` go through the profile-monoid complement, so this is
/// meant for desk-scale automata.
pub fn poset_partition(domain: &Nba, eq: &Nba, leq: &Nba) -> Result<Presentation> {
    let base = domain.alphabet().clone();
    let pair = base.pair();
    if *eq.alphabet() != pair || *leq.alphabet() != pair {
        return Err(Error::AlphabetMismatch);
    }
    let not_leq = algebra::complement(leq)?.trimmed();
    let leq_swapped = leq.swap_pairs(&base)?;
    let not_leq_swapped = not_leq.swap_pairs(&base)?;
    let lex = Nba::lex_order(&base);

    // strictly below, stated on the lexicographically ordered representative
    let below_lex = leq.product(&not_leq_swapped)?.product(&lex)?;
    let above_lex = leq_swapped.product(&not_leq)?.product(&lex)?;
    let e1 = below_lex.union(&below_lex.swap_pairs(&base)?)?;
    let e2 = above_lex.union(&above_lex.swap_pairs(&base)?)?;
    let e3 = not_leq.product(&not_leq_swapped)?;
    Presentation::new(domain.clone(), eq.clone(), vec![e1, e2, e3])
}

// ---------------------------------------------------------------------------
// relation builders and the support-overlap gallery partition

/// The identity relation: accepts `x ⊗ x`.
pub fn diagonal_relation(base: &Alphabet) -> Nba {
    let pair = base.pair();
    let transitions: Vec<_> =
        (0..base.len()).map(|a| (0, Alphabet::pair_index(base, a, a), 0)).collect();
    Nba::new(pair, 1, 0, [0], transitions).expect("diagonal relation")
}

/// Ultimate equality: from some position on, all letters are diagonal.
pub fn eventually_diagonal(base: &Alphabet) -> Nba {
    let pair = base.pair();
    let mut transitions = Vec::new();
    for a in 0..base.len() {
        for b in 0..base.len() {
            transitions.push((0, Alphabet::pair_index(base, a, b), 0));
        }
        let diag = Alphabet::pair_index(base, a, a);
        transitions.push((0, diag, 1));
        transitions.push((1, diag, 1));
    }
    Nba::new(pair, 2, 0, [1], transitions).expect("eventually diagonal relation")
}

/// Pairs whose selected move set occurs infinitely often.
fn infinitely_often(pair: &Alphabet, selected: impl Fn(usize) -> bool) -> Nba {
    let mut transitions = Vec::new();
    for sym in 0..pair.len() {
        let target = if selected(sym) { 1 } else { 0 };
        transitions.push((0, sym, target));
        transitions.push((1, sym, target));
    }
    Nba::new(pair.clone(), 2, 0, [1], transitions).expect("recurrence relation")
}

/// Pairs whose selected move set occurs only finitely often.
fn finitely_often(pair: &Alphabet, selected: impl Fn(usize) -> bool) -> Nba {
    let mut transitions = Vec::new();
    for sym in 0..pair.len() {
        transitions.push((0, sym, 0));
        if !selected(sym) {
            transitions.push((0, sym, 1));
            transitions.push((1, sym, 1));
        }
    }
    Nba::new(pair.clone(), 2, 0, [1], transitions).expect("co-recurrence relation")
}

/// The support-overlap partition on the block language `(1+0+)^ω`: class one
/// holds pairs with finitely meeting supports or ultimately equal words,
/// class two the rest. Its names, equality and both classes are ω-automatic;
/// the identity coding `(1, 0, 1)` is class-one homogeneous here.
pub fn support_overlap_presentation() -> Presentation {
    let base = Alphabet::binary();
    let pair = base.pair();
    let domain = Nba::alternating_blocks();
    let in_domain = domain
        .lift_to_pairs(Side::Left)
        .product(&domain.lift_to_pairs(Side::Right))
        .expect("same alphabet");
    let shares_one = |sym: usize| {
        let (a, b) = Alphabet::pair_split(&base, sym);
        a == 1 && b == 1
    };
    let differs = |sym: usize| {
        let (a, b) = Alphabet::pair_split(&base, sym);
        a != b
    };
    let finite_meet = finitely_often(&pair, shares_one);
    let ultimately_equal = eventually_diagonal(&base);
    let e1 = finite_meet
        .union(&ultimately_equal)
        .expect("same alphabet")
        .product(&in_domain)
        .expect("same alphabet");
    let e2 = infinitely_often(&pair, shares_one)
        .product(&infinitely_often(&pair, differs))
        .expect("same alphabet")
        .product(&in_domain)
        .expect("same alphabet");
    Presentation::new(domain, diagonal_relation(&base), vec![e1, e2])
        .expect("valid presentation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;
    use crate::words::tests_support::enumerate_up;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn fin(text: &str) -> FiniteWord {
        FiniteWord::parse(&bin(), text).unwrap()
    }

    fn triple(u: &str, v: &str, w: &str) -> TripleCandidate {
        TripleCandidate::new(fin(u), fin(v), fin(w)).unwrap()
    }

    #[test]
    fn counters_track_values_and_residues() {
        let table = PowerTable::new(TransitionProfile::identity(2)).unwrap();
        // identity powers repeat immediately: threshold 1, period 1
        assert_eq!(table.get(0), table.get(5));
        let c = Counter::make(0, &table);
        let c = c.double_plus(1, &table);
        match c {
            Counter::Exact(1) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn subset_stage_on_the_gallery_presentation() {
        let p = support_overlap_presentation();
        let decider = Decider::new(&p).unwrap();

        // identity coding with prefix 1 stays inside the block language
        let v = decider.subset_of_domain(&triple("1", "0", "1")).unwrap();
        assert!(v.holds);

        // prefix 0 leaves it immediately
        let v = decider.subset_of_domain(&triple("0", "0", "1")).unwrap();
        assert!(!v.holds);
        match v.witness {
            Some(Refutation::Word(w)) => {
                assert_eq!(w.sym_at(0), 0, "witness should start with 0, got {w}");
                assert!(!p.domain().member_up(&w).unwrap());
            }
            other => panic!("expected a word witness, got {other:?}"),
        }
    }

    #[test]
    fn subset_stage_with_universal_names_always_holds() {
        let base = bin();
        let p = Presentation::new(
            Nba::universal(base.clone()),
            diagonal_relation(&base),
            vec![Nba::universal(base.pair())],
        )
        .unwrap();
        let decider = Decider::new(&p).unwrap();
        for (u, v, w) in [("1", "0", "1"), ("0", "0", "1"), ("10", "01", "11")] {
            assert!(decider.subset_of_domain(&triple(u, v, w)).unwrap().holds);
        }
    }

    #[test]
    fn homogeneity_on_the_gallery_presentation() {
        let p = support_overlap_presentation();
        let decider = Decider::new(&p).unwrap();
        let t = triple("1", "0", "1");

        let v = decider.homogeneous(&t, 1).unwrap();
        assert!(v.holds, "distinct members share support only finitely");

        let v = decider.homogeneous(&t, 2).unwrap();
        assert!(!v.holds);
        match v.witness {
            Some(Refutation::Pair { left, right, class }) => {
                assert_eq!(class, 1);
                let pair = UpWord::convolve(&[left.clone(), right.clone()]).unwrap();
                assert!(p.edges()[0].member_up(&pair).unwrap());
                assert_ne!(left, right);
            }
            other => panic!("expected a pair witness, got {other:?}"),
        }
    }

    #[test]
    fn vacuous_homogeneity_with_one_class() {
        let base = bin();
        let p = Presentation::new(
            Nba::universal(base.clone()),
            diagonal_relation(&base),
            vec![Nba::universal(base.pair())],
        )
        .unwrap();
        let decider = Decider::new(&p).unwrap();
        assert!(decider.homogeneous(&triple("0", "0", "1"), 1).unwrap().holds);
    }

    #[test]
    fn full_verification_pipeline() {
        let p = support_overlap_presentation();
        assert!(verify(&p, &triple("1", "0", "1"), 1).unwrap().holds());
        match verify(&p, &triple("1", "0", "1"), 2).unwrap() {
            VerifyOutcome::FailsPair(v) => assert!(!v.holds),
            other => panic!("expected pair failure, got {other:?}"),
        }
        match verify(&p, &triple("0", "0", "1"), 1).unwrap() {
            VerifyOutcome::FailsSubset(v) => assert!(!v.holds),
            other => panic!("expected subset failure, got {other:?}"),
        }
    }

    #[test]
    fn search_finds_the_canonical_triple() {
        let p = support_overlap_presentation();
        let (t, class) = find_triple(&p, 1).unwrap().unwrap();
        assert_eq!((t.u().to_string(), t.v().to_string(), t.w().to_string(), class),
            ("1".to_string(), "0".to_string(), "1".to_string(), 1));

        assert!(find_triple(&p, 0).unwrap().is_none());
    }

    #[test]
    fn search_on_a_universal_presentation_returns_the_first_candidate() {
        let base = bin();
        let p = Presentation::new(
            Nba::universal(base.clone()),
            diagonal_relation(&base),
            vec![Nba::universal(base.pair())],
        )
        .unwrap();
        let (t, class) = find_triple(&p, 1).unwrap().unwrap();
        assert_eq!((t.u().to_string(), t.v().to_string(), t.w().to_string(), class),
            ("0".to_string(), "0".to_string(), "1".to_string(), 1));
    }

    #[test]
    fn shadow_pairs_match_the_brute_classifier() {
        // the gallery class-2 refutation pair must classify as class one
        let p = support_overlap_presentation();
        let decider = Decider::new(&p).unwrap();
        let v = decider.homogeneous(&triple("1", "0", "1"), 2).unwrap();
        let Some(Refutation::Pair { left, right, .. }) = v.witness else {
            panic!("expected pair witness");
        };
        assert_eq!(classify::pair_classify(&left, &right).unwrap(), classify::Class::E1);
    }

    #[test]
    fn bundle_round_trip() {
        let p = support_overlap_presentation();
        let dir = std::env::temp_dir().join(format!("bundle-test-{}", std::process::id()));
        p.write(&dir).unwrap();
        let q = Presentation::load(&dir).unwrap();
        assert_eq!(p.domain(), q.domain());
        assert_eq!(p.equality(), q.equality());
        assert_eq!(p.edges(), q.edges());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn validation_warns_on_broken_bundles() {
        let base = bin();
        let p = support_overlap_presentation();
        let samples: Vec<UpWord> = enumerate_up(2, 3);
        assert!(p.validate_on(&samples).unwrap().is_empty());

        // empty equality: reflexivity warnings
        let broken = Presentation::new(
            Nba::alternating_blocks(),
            Nba::empty_language(base.pair()),
            vec![Nba::universal(base.pair())],
        )
        .unwrap();
        assert!(!broken.validate_on(&samples).unwrap().is_empty());
    }

    #[test]
    fn poset_partition_of_the_discrete_order() {
        let base = bin();
        let domain = Nba::universal(base.clone());
        let eq = diagonal_relation(&base);
        let leq = diagonal_relation(&base);
        let p = poset_partition(&domain, &eq, &leq).unwrap();
        assert_eq!(p.edges().len(), 3);
        let words = enumerate_up(2, 2);
        for x in &words {
            for y in &words {
                if x == y {
                    continue;
                }
                let xy = UpWord::convolve(&[x.clone(), y.clone()]).unwrap();
                let classes: Vec<usize> = (0..3)
                    .filter(|&i| p.edges()[i].member_up(&xy).unwrap())
                    .collect();
                assert_eq!(classes, vec![2], "{x} vs {y} should be incomparable");
            }
        }
    }

    #[test]
    fn poset_partition_of_the_lexicographic_order() {
        let base = bin();
        let domain = Nba::universal(base.clone());
        let eq = diagonal_relation(&base);
        let leq = Nba::lex_order(&base).union(&diagonal_relation(&base)).unwrap();
        let p = poset_partition(&domain, &eq, &leq).unwrap();
        let words = enumerate_up(2, 2);
        for x in &words {
            for y in &words {
                if x == y {
                    continue;
                }
                let xy = UpWord::convolve(&[x.clone(), y.clone()]).unwrap();
                let classes: Vec<usize> = (0..3)
                    .filter(|&i| p.edges()[i].member_up(&xy).unwrap())
                    .collect();
                // linear order: never incomparable, exactly one class
                assert_eq!(classes.len(), 1, "{x} vs {y}: {classes:?}");
                assert_ne!(classes[0], 2, "{x} vs {y} must be comparable");
            }
        }
    }

    #[test]
    fn poset_partition_classes_are_disjoint_and_exhaustive() {
        let base = bin();
        let domain = Nba::universal(base.clone());
        let eq = diagonal_relation(&base);
        // two-level order: x ⊑ y iff x = y, or x starts with 0 and y with 1
        let zero_below_one = Nba::new(
            base.pair(),
            2,
            0,
            [1],
            [
                (0, Alphabet::pair_index(&base, 0, 1), 1),
                (1, Alphabet::pair_index(&base, 0, 0), 1),
                (1, Alphabet::pair_index(&base, 0, 1), 1),
                (1, Alphabet::pair_index(&base, 1, 0), 1),
                (1, Alphabet::pair_index(&base, 1, 1), 1),
            ],
        )
        .unwrap();
        let leq = zero_below_one.union(&diagonal_relation(&base)).unwrap();
        let p = poset_partition(&domain, &eq, &leq).unwrap();
        let words = enumerate_up(2, 2);
        for x in &words {
            for y in &words {
                if x == y {
                    continue;
                }
                let xy = UpWord::convolve(&[x.clone(), y.clone()]).unwrap();
                let eq_hit = usize::from(p.equality().member_up(&xy).unwrap());
                let hits: usize = (0..3)
                    .map(|i| usize::from(p.edges()[i].member_up(&xy).unwrap()))
                    .sum();
                assert_eq!(eq_hit + hits, 1, "{x} vs {y}");
            }
        }
    }
}
