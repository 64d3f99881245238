//! The algebraic view of ω-regular languages: transition profiles, linked
//! pairs, Wilke algebras, algebraic membership for ultimately periodic words,
//! and monoid-based Büchi complementation.
//!
//! A [`TransitionProfile`] of a finite word over an automaton records, per
//! state pair, whether the word admits no run, some run, or some run through
//! an accepting state. Profiles multiply like matrices over the three-element
//! chain `None < Path < AccPath`, and `profile(uv) = profile(u) · profile(v)`.
//! The profiles of all non-empty words form a finite monoid; its linked pairs
//! `(s, e)` with `s·e = s` and `e·e = e` classify every ω-word, which yields
//! both the membership test for lassos and the complement construction.

use std::collections::HashMap;
use std::fmt;

use crate::nba::Nba;
use crate::words::{FiniteWord, UpWord};
use crate::{Error, Result};

/// Default cap on the number of generated profile-monoid elements.
pub const DEFAULT_MONOID_CAP: usize = 20_000;

/// Reachability grade between two states over a fixed word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Step {
    /// No run.
    No = 0,
    /// Some run, none through an accepting state.
    Path = 1,
    /// Some run through an accepting state (endpoints included).
    AccPath = 2,
}

impl Step {
    fn combine(self, other: Step) -> Step {
        match (self, other) {
            (Step::No, _) | (_, Step::No) => Step::No,
            (Step::AccPath, _) | (_, Step::AccPath) => Step::AccPath,
            _ => Step::Path,
        }
    }
}

/// The behaviour of one finite word over one automaton, as a matrix of
/// [`Step`] entries indexed by state pairs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransitionProfile {
    n: usize,
    cells: Vec<Step>,
}

impl fmt::Debug for TransitionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TransitionProfile[")?;
        for p in 0..self.n {
            let row: String = (0..self.n)
                .map(|q| match self.get(p, q) {
                    Step::No => '.',
                    Step::Path => '+',
                    Step::AccPath => '*',
                })
                .collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

impl TransitionProfile {
    /// The multiplicative identity (empty-word behaviour).
    pub fn identity(n: usize) -> TransitionProfile {
        let mut cells = vec![Step::No; n * n];
        for p in 0..n {
            cells[p * n + p] = Step::Path;
        }
        TransitionProfile { n, cells }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> Step {
        self.cells[p * self.n + q]
    }

    /// Profile of a single letter: `Path` for each transition, upgraded to
    /// `AccPath` when an endpoint is accepting.
    pub fn of_letter(a: &Nba, symbol: usize) -> TransitionProfile {
        let n = a.state_count();
        let mut cells = vec![Step::No; n * n];
        for &(p, s, q) in a.transitions() {
            if s == symbol {
                let step = if a.accepting().contains(&p) || a.accepting().contains(&q) {
                    Step::AccPath
                } else {
                    Step::Path
                };
                let cell = &mut cells[p * n + q];
                *cell = (*cell).max(step);
            }
        }
        TransitionProfile { n, cells }
    }

    /// Profile of a non-empty word, multiplicatively from letter profiles.
    pub fn of_word(a: &Nba, w: &FiniteWord) -> Result<TransitionProfile> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        if w.alphabet() != a.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let mut profile = TransitionProfile::of_letter(a, w.sym(0));
        for &s in &w.syms()[1..] {
            profile = profile.multiply(&TransitionProfile::of_letter(a, s));
        }
        Ok(profile)
    }

    /// Matrix product over the chain `No < Path < AccPath`.
    pub fn multiply(&self, other: &TransitionProfile) -> TransitionProfile {
        assert_eq!(self.n, other.n, "profile dimension mismatch");
        let n = self.n;
        let mut cells = vec![Step::No; n * n];
        for p in 0..n {
            for r in 0..n {
                let left = self.cells[p * n + r];
                if left == Step::No {
                    continue;
                }
                for q in 0..n {
                    let right = other.cells[r * n + q];
                    if right == Step::No {
                        continue;
                    }
                    let cell = &mut cells[p * n + q];
                    *cell = (*cell).max(left.combine(right));
                }
            }
        }
        TransitionProfile { n, cells }
    }

    pub fn is_idempotent(&self) -> bool {
        self.multiply(self) == *self
    }

    /// The minimal `k ≥ 1` with `(self^k)·(self^k) = self^k`, together with
    /// the idempotent power itself.
    pub fn idempotent_power(&self) -> (TransitionProfile, usize) {
        let mut power = self.clone();
        let mut k = 1;
        let mut seen: HashMap<TransitionProfile, usize> = HashMap::new();
        loop {
            if power.is_idempotent() {
                return (power, k);
            }
            if seen.insert(power.clone(), k).is_some() {
                unreachable!("finite semigroup has an idempotent power");
            }
            power = power.multiply(self);
            k += 1;
        }
    }
}

/// A pair of profiles `(s, e)` with `s·e = s` and `e·e = e`: the algebraic
/// shape of a lasso.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedPair {
    pub stem: TransitionProfile,
    pub cycle: TransitionProfile,
}

impl LinkedPair {
    pub fn new(stem: TransitionProfile, cycle: TransitionProfile) -> Result<LinkedPair> {
        if stem.multiply(&cycle) != stem || !cycle.is_idempotent() {
            return Err(Error::InvalidAlgebra("not a linked pair".into()));
        }
        Ok(LinkedPair { stem, cycle })
    }
}

/// Does the linked pair describe ω-words accepted from the initial state?
fn accepting_pair(a: &Nba, stem: &TransitionProfile, cycle: &TransitionProfile) -> bool {
    let n = a.state_count();
    let i = a.initial();
    (0..n).any(|q| stem.get(i, q) != Step::No && cycle.get(q, q) == Step::AccPath)
}

/// Membership of an ultimately periodic word through the profile algebra:
/// with `e` the idempotent power of the period profile and `s` the preperiod
/// profile times `e`, the word is accepted iff some state `q` has
/// `s[initial, q] ≥ Path` and `e[q, q] = AccPath`.
pub fn member_up_algebraic(a: &Nba, x: &UpWord) -> Result<bool> {
    if x.alphabet() != a.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let period_profile = TransitionProfile::of_word(a, x.period())?;
    let (e, _) = period_profile.idempotent_power();
    let s = if x.preperiod().is_empty() {
        e.clone()
    } else {
        TransitionProfile::of_word(a, x.preperiod())?.multiply(&e)
    };
    Ok(accepting_pair(a, &s, &e))
}

/// The lazily generated monoid of word profiles of an automaton.
pub(crate) struct ProfileMonoid {
    pub elements: Vec<TransitionProfile>,
    pub letter: Vec<usize>,            // symbol -> element index
    pub next: Vec<Vec<usize>>,         // element × symbol -> element index
    index: HashMap<TransitionProfile, usize>,
}

impl ProfileMonoid {
    /// Generates the submonoid reachable from the letter profiles, erroring
    /// beyond `cap` elements.
    pub fn generate(a: &Nba, cap: usize) -> Result<ProfileMonoid> {
        let symbols = a.alphabet().len();
        let mut monoid = ProfileMonoid {
            elements: Vec::new(),
            letter: Vec::with_capacity(symbols),
            next: Vec::new(),
            index: HashMap::new(),
        };
        let letter_profiles: Vec<TransitionProfile> =
            (0..symbols).map(|s| TransitionProfile::of_letter(a, s)).collect();
        for p in &letter_profiles {
            let id = monoid.intern(p.clone(), cap)?;
            monoid.letter.push(id);
        }
        let mut frontier: Vec<usize> = (0..monoid.elements.len()).collect();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for &m in &frontier {
                for (s, lp) in letter_profiles.iter().enumerate() {
                    let product = monoid.elements[m].multiply(lp);
                    let before = monoid.elements.len();
                    let id = monoid.intern(product, cap)?;
                    monoid.next[m][s] = id;
                    if id == before {
                        fresh.push(id);
                    }
                }
            }
            frontier = fresh;
        }
        Ok(monoid)
    }

    fn intern(&mut self, p: TransitionProfile, cap: usize) -> Result<usize> {
        if let Some(&id) = self.index.get(&p) {
            return Ok(id);
        }
        if self.elements.len() >= cap {
            return Err(Error::MonoidCap { cap });
        }
        let id = self.elements.len();
        self.index.insert(p.clone(), id);
        self.elements.push(p);
        self.next.push(vec![usize::MAX; self.letter.capacity().max(1)]);
        Ok(id)
    }

    pub fn id_of(&self, p: &TransitionProfile) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// Complement of a Büchi automaton through its profile monoid.
///
/// Every ω-word factors as `w₀ w₁ w₂ ⋯` whose profiles form a linked pair
/// `(s, e)`, and each class `W_s (W_e)^ω` lies entirely inside or outside the
/// language. The complement is the union of the non-accepting classes,
/// realized as one automaton: a prefix reader over the monoid that may jump,
/// at any non-accepting linked pair `(s, e)`, into a block reader that
/// revisits its restart state once per completed `W_e`-block.
pub fn complement(a: &Nba) -> Result<Nba> {
    complement_capped(a, DEFAULT_MONOID_CAP)
}

/// [`complement`] with an explicit cap on the profile monoid size.
pub fn complement_capped(a: &Nba, cap: usize) -> Result<Nba> {
    let monoid = ProfileMonoid::generate(a, cap)?;
    let m = monoid.elements.len();
    let symbols = a.alphabet().len();

    let idempotents: Vec<usize> =
        (0..m).filter(|&e| monoid.elements[e].is_idempotent()).collect();
    // non-accepting linked pairs, as jump targets per stem element
    let mut jumps: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &e in &idempotents {
        for s in 0..m {
            let linked = monoid.elements[s].multiply(&monoid.elements[e]) == monoid.elements[s];
            if linked && !accepting_pair(a, &monoid.elements[s], &monoid.elements[e]) {
                jumps[s].push(e);
            }
        }
    }

    // states: 0 = start, 1 + s = prefix reader at element s, then one block
    // of (m + 1) states per idempotent: tracker at element t, restart last
    let block_base: HashMap<usize, usize> = idempotents
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, 1 + m + i * (m + 1)))
        .collect();
    let states = 1 + m + idempotents.len() * (m + 1);
    let mut transitions = Vec::new();

    for sym in 0..symbols {
        let first = monoid.letter[sym];
        transitions.push((0, sym, 1 + first));
    }
    for s in 0..m {
        for sym in 0..symbols {
            transitions.push((1 + s, sym, 1 + monoid.next[s][sym]));
            // jump: the prefix so far is the W_s part, the letter starts the
            // first block of (W_e)^ω
            for &e in &jumps[s] {
                let base = block_base[&e];
                let t = monoid.letter[sym];
                transitions.push((1 + s, sym, base + t));
                if t == e {
                    transitions.push((1 + s, sym, base + m));
                }
            }
        }
    }
    for &e in &idempotents {
        let base = block_base[&e];
        for t in 0..m {
            for sym in 0..symbols {
                let t2 = monoid.next[t][sym];
                transitions.push((base + t, sym, base + t2));
                if t2 == e {
                    transitions.push((base + t, sym, base + m));
                }
            }
        }
        for sym in 0..symbols {
            let t = monoid.letter[sym];
            transitions.push((base + m, sym, base + t));
            if t == e {
                transitions.push((base + m, sym, base + m));
            }
        }
    }
    let accepting: Vec<usize> = idempotents.iter().map(|&e| block_base[&e] + m).collect();
    let full = Nba::new(a.alphabet().clone(), states, 0, accepting, transitions)?;
    Ok(full.trimmed())
}

/// A finite two-sorted Wilke algebra: a semigroup `(S₊, ·)`, a mixed action
/// `* : S₊ × S_ω → S_ω`, and an ω-power `S₊ → S_ω`.
///
/// Text format, exhaustive tables required:
///
/// ```text
/// plus a b
/// omega x y
/// dot a b a      # a·b = a
/// mix a x y      # a*x = y
/// pow a x        # a^ω = x
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilkeAlgebra {
    pub plus_names: Vec<String>,
    pub omega_names: Vec<String>,
    pub dot: Vec<Vec<usize>>,
    pub mix: Vec<Vec<usize>>,
    pub pow: Vec<usize>,
}

impl WilkeAlgebra {
    /// Checks all defining identities exhaustively; returns the violated ones.
    pub fn check(&self) -> Vec<String> {
        let np = self.plus_names.len();
        let mut violations = Vec::new();
        let name = |i: usize| self.plus_names[i].clone();
        for a in 0..np {
            for b in 0..np {
                for c in 0..np {
                    let left = self.dot[self.dot[a][b]][c];
                    let right = self.dot[a][self.dot[b][c]];
                    if left != right {
                        violations.push(format!(
                            "dot associativity fails at ({}, {}, {})",
                            name(a),
                            name(b),
                            name(c)
                        ));
                    }
                }
            }
        }
        for a in 0..np {
            for b in 0..np {
                for (x, _) in self.omega_names.iter().enumerate() {
                    let left = self.mix[a][self.mix[b][x]];
                    let right = self.mix[self.dot[a][b]][x];
                    if left != right {
                        violations.push(format!(
                            "mixed associativity fails at ({}, {}, {})",
                            name(a),
                            name(b),
                            self.omega_names[x]
                        ));
                    }
                }
            }
        }
        for a in 0..np {
            for b in 0..np {
                // (a·b)^ω = a * (b·a)^ω
                let left = self.pow[self.dot[a][b]];
                let right = self.mix[a][self.pow[self.dot[b][a]]];
                if left != right {
                    violations.push(format!("omega-power coherence fails at ({}, {})", name(a), name(b)));
                }
            }
        }
        for a in 0..np {
            // (a^n)^ω = a^ω for n up to the carrier size
            let mut power = a;
            for n in 2..=np.max(2) {
                power = self.dot[power][a];
                if self.pow[power] != self.pow[a] {
                    violations.push(format!("omega-power of {}^{} differs from {}^ω", name(a), n, name(a)));
                }
            }
        }
        violations
    }

    /// The Wilke algebra of an automaton: profiles as the plus part and
    /// acceptance behaviours (sets of states from which an ω-word class is
    /// accepted) as the omega part.
    pub fn from_nba(a: &Nba, cap: usize) -> Result<WilkeAlgebra> {
        let monoid = ProfileMonoid::generate(a, cap)?;
        let m = monoid.elements.len();
        let n = a.state_count();

        let mut dot = vec![vec![0usize; m]; m];
        for s in 0..m {
            for t in 0..m {
                let p = monoid.elements[s].multiply(&monoid.elements[t]);
                dot[s][t] = monoid
                    .id_of(&p)
                    .ok_or_else(|| Error::InvalidAlgebra("monoid not closed".into()))?;
            }
        }

        // behaviour of the ω-word class of s^ω: accepted from q iff some q'
        // is reachable over s·ê and cycles acceptingly over ê
        let behaviour_of = |s: usize| -> Vec<bool> {
            let (e, _) = monoid.elements[s].idempotent_power();
            let se = monoid.elements[s].multiply(&e);
            (0..n)
                .map(|q| (0..n).any(|q2| se.get(q, q2) != Step::No && e.get(q2, q2) == Step::AccPath))
                .collect()
        };
        let mix_into = |s: usize, b: &[bool]| -> Vec<bool> {
            (0..n)
                .map(|q| {
                    (0..n).any(|q2| monoid.elements[s].get(q, q2) != Step::No && b[q2])
                })
                .collect()
        };

        let mut omega: Vec<Vec<bool>> = Vec::new();
        let mut omega_index: HashMap<Vec<bool>, usize> = HashMap::new();
        let intern = |b: Vec<bool>, omega: &mut Vec<Vec<bool>>, omega_index: &mut HashMap<Vec<bool>, usize>| -> usize {
            if let Some(&i) = omega_index.get(&b) {
                return i;
            }
            let i = omega.len();
            omega_index.insert(b.clone(), i);
            omega.push(b);
            i
        };
        let mut pow = vec![0usize; m];
        for s in 0..m {
            pow[s] = intern(behaviour_of(s), &mut omega, &mut omega_index);
        }
        // close the omega carrier under the mixed action
        let mut frontier: Vec<usize> = (0..omega.len()).collect();
        let mut mix: Vec<Vec<usize>> = vec![Vec::new(); m];
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for &x in &frontier {
                let b = omega[x].clone();
                for s in 0..m {
                    let before = omega.len();
                    let y = intern(mix_into(s, &b), &mut omega, &mut omega_index);
                    if y == before {
                        fresh.push(y);
                    }
                }
            }
            frontier = fresh;
        }
        for s in 0..m {
            mix[s] = (0..omega.len())
                .map(|x| {
                    let b = mix_into(s, &omega[x]);
                    *omega_index.get(&b).expect("omega carrier closed")
                })
                .collect();
        }

        Ok(WilkeAlgebra {
            plus_names: (0..m).map(|i| format!("p{i}")).collect(),
            omega_names: (0..omega.len()).map(|i| format!("o{i}")).collect(),
            dot,
            mix,
            pow,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("plus {}\n", self.plus_names.join(" ")));
        out.push_str(&format!("omega {}\n", self.omega_names.join(" ")));
        for (a, row) in self.dot.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                out.push_str(&format!(
                    "dot {} {} {}\n",
                    self.plus_names[a], self.plus_names[b], self.plus_names[c]
                ));
            }
        }
        for (a, row) in self.mix.iter().enumerate() {
            for (x, &y) in row.iter().enumerate() {
                out.push_str(&format!(
                    "mix {} {} {}\n",
                    self.plus_names[a], self.omega_names[x], self.omega_names[y]
                ));
            }
        }
        for (a, &x) in self.pow.iter().enumerate() {
            out.push_str(&format!("pow {} {}\n", self.plus_names[a], self.omega_names[x]));
        }
        out
    }

    pub fn parse(text: &str) -> Result<WilkeAlgebra> {
        let mut plus_names: Option<Vec<String>> = None;
        let mut omega_names: Option<Vec<String>> = None;
        let mut dot_rows: Vec<(String, String, String)> = Vec::new();
        let mut mix_rows: Vec<(String, String, String)> = Vec::new();
        let mut pow_rows: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            match toks[0] {
                "plus" => plus_names = Some(toks[1..].iter().map(|s| s.to_string()).collect()),
                "omega" => omega_names = Some(toks[1..].iter().map(|s| s.to_string()).collect()),
                "dot" => {
                    let [_, a, b, c] = toks.as_slice() else { return Err(bad("dot expects 3 names")) };
                    dot_rows.push((a.to_string(), b.to_string(), c.to_string()));
                }
                "mix" => {
                    let [_, a, x, y] = toks.as_slice() else { return Err(bad("mix expects 3 names")) };
                    mix_rows.push((a.to_string(), x.to_string(), y.to_string()));
                }
                "pow" => {
                    let [_, a, x] = toks.as_slice() else { return Err(bad("pow expects 2 names")) };
                    pow_rows.push((a.to_string(), x.to_string()));
                }
                other => return Err(bad(&format!("unknown directive {other:?}"))),
            }
        }
        let plus_names = plus_names.ok_or_else(|| Error::Parse("missing plus carrier".into()))?;
        let omega_names = omega_names.ok_or_else(|| Error::Parse("missing omega carrier".into()))?;
        let np = plus_names.len();
        let no = omega_names.len();
        let plus_id = |n: &str| {
            plus_names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::Parse(format!("unknown plus element {n:?}")))
        };
        let omega_id = |n: &str| {
            omega_names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::Parse(format!("unknown omega element {n:?}")))
        };
        let mut dot = vec![vec![usize::MAX; np]; np];
        for (a, b, c) in dot_rows {
            dot[plus_id(&a)?][plus_id(&b)?] = plus_id(&c)?;
        }
        let mut mix = vec![vec![usize::MAX; no]; np];
        for (a, x, y) in mix_rows {
            mix[plus_id(&a)?][omega_id(&x)?] = omega_id(&y)?;
        }
        let mut pow = vec![usize::MAX; np];
        for (a, x) in pow_rows {
            pow[plus_id(&a)?] = omega_id(&x)?;
        }
        if dot.iter().flatten().any(|&c| c == usize::MAX)
            || mix.iter().flatten().any(|&c| c == usize::MAX)
            || pow.iter().any(|&c| c == usize::MAX)
        {
            return Err(Error::InvalidAlgebra("tables must be exhaustive".into()));
        }
        Ok(WilkeAlgebra { plus_names, omega_names, dot, mix, pow })
    }
}


#[cfg(test)]
mod tests {
    use super::tests_support::random_nba;
    use super::*;
    use crate::words::Alphabet;
    use crate::words::tests_support::enumerate_up;
    use crate::words::UpWord;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn fin(text: &str) -> FiniteWord {
        FiniteWord::parse(&bin(), text).unwrap()
    }

    fn up(text: &str) -> UpWord {
        UpWord::parse(&bin(), text).unwrap()
    }

    #[test]
    fn letter_profiles_read_off_transitions() {
        let a = Nba::alternating_blocks();
        let p1 = TransitionProfile::of_letter(&a, 1);
        assert_eq!(p1.get(0, 1), Step::Path);
        assert_eq!(p1.get(2, 3), Step::AccPath); // target accepting
        assert_eq!(p1.get(0, 2), Step::No);
    }

    #[test]
    fn profiles_are_multiplicative() {
        let a = Nba::alternating_blocks();
        let p10 = TransitionProfile::of_word(&a, &fin("10")).unwrap();
        let p1 = TransitionProfile::of_word(&a, &fin("1")).unwrap();
        let p0 = TransitionProfile::of_word(&a, &fin("0")).unwrap();
        assert_eq!(p10, p1.multiply(&p0));

        for seed in 0..20u64 {
            let a = random_nba(seed, 3);
            for bits in 0..64u32 {
                let len1 = 1 + (bits % 3) as usize;
                let len2 = 1 + ((bits / 4) % 3) as usize;
                let u: Vec<usize> = (0..len1).map(|i| ((bits >> i) & 1) as usize).collect();
                let v: Vec<usize> = (0..len2).map(|i| ((bits >> (i + 2)) & 1) as usize).collect();
                let uw = FiniteWord::new(bin(), u.clone()).unwrap();
                let vw = FiniteWord::new(bin(), v.clone()).unwrap();
                let uv = uw.concat(&vw).unwrap();
                assert_eq!(
                    TransitionProfile::of_word(&a, &uv).unwrap(),
                    TransitionProfile::of_word(&a, &uw)
                        .unwrap()
                        .multiply(&TransitionProfile::of_word(&a, &vw).unwrap())
                );
            }
        }
    }

    #[test]
    fn empty_word_profiles_are_rejected() {
        let a = Nba::alternating_blocks();
        assert!(TransitionProfile::of_word(&a, &FiniteWord::empty(bin())).is_err());
    }

    #[test]
    fn idempotent_powers() {
        let id = TransitionProfile::identity(3);
        assert_eq!(id.idempotent_power().1, 1);

        let none = TransitionProfile { n: 2, cells: vec![Step::No; 4] };
        assert_eq!(none.idempotent_power().1, 1);

        let a = Nba::alternating_blocks();
        let p = TransitionProfile::of_word(&a, &fin("10")).unwrap();
        let (e, _) = p.idempotent_power();
        assert!(e.is_idempotent());
    }

    #[test]
    fn linked_pair_validation() {
        let a = Nba::alternating_blocks();
        let p = TransitionProfile::of_word(&a, &fin("10")).unwrap();
        let (e, _) = p.idempotent_power();
        let s = p.multiply(&e);
        assert!(LinkedPair::new(s, e.clone()).is_ok());
        let not_idem = TransitionProfile::of_letter(&a, 1);
        if !not_idem.is_idempotent() {
            assert!(LinkedPair::new(not_idem.clone(), not_idem).is_err());
        }
    }

    #[test]
    fn algebraic_membership_on_fixed_automata() {
        let universal = Nba::universal(bin());
        let none = Nba::empty_language(bin());
        for w in enumerate_up(2, 3) {
            assert!(member_up_algebraic(&universal, &w).unwrap());
            assert!(!member_up_algebraic(&none, &w).unwrap());
        }
    }

    #[test]
    fn algebraic_membership_agrees_with_lasso_membership() {
        let words = enumerate_up(3, 3);
        let mut checked = 0;
        for seed in 0..48u64 {
            let a = random_nba(seed, 4);
            for w in words.iter().step_by(7) {
                assert_eq!(
                    member_up_algebraic(&a, w).unwrap(),
                    a.member_up(w).unwrap(),
                    "seed {seed}, word {w}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 500, "only {checked} instances checked");
    }

    #[test]
    fn complement_of_empty_is_universal_and_vice_versa() {
        let c = complement(&Nba::empty_language(bin())).unwrap();
        assert!(c.member_up(&up("(0)")).unwrap());
        assert!(c.member_up(&up("1(10)")).unwrap());

        let c = complement(&Nba::universal(bin())).unwrap();
        assert!(c.is_empty_language());
    }

    #[test]
    fn complement_of_the_block_language() {
        let c = complement(&Nba::alternating_blocks()).unwrap();
        assert!(c.member_up(&up("(0)")).unwrap());
        assert!(c.member_up(&up("0(1)")).unwrap());
        assert!(!c.member_up(&up("(10)")).unwrap());
        let a = Nba::alternating_blocks();
        for w in enumerate_up(3, 3) {
            assert!(a.member_up(&w).unwrap() != c.member_up(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn complement_covers_each_word_exactly_once() {
        let words = enumerate_up(2, 3);
        for seed in 100..120u64 {
            let a = random_nba(seed, 3);
            let c = complement(&a).unwrap();
            for w in &words {
                let inside = a.member_up(w).unwrap();
                let outside = c.member_up(w).unwrap();
                assert!(inside != outside, "seed {seed}, word {w}");
            }
        }
    }

    #[test]
    fn wilke_of_one_element_algebra_checks() {
        let w = WilkeAlgebra {
            plus_names: vec!["a".into()],
            omega_names: vec!["x".into()],
            dot: vec![vec![0]],
            mix: vec![vec![0]],
            pow: vec![0],
        };
        assert!(w.check().is_empty());
    }

    #[test]
    fn corrupted_algebra_is_flagged() {
        // two-element semigroup {a, b} with a = identity-ish corrupt cell
        let w = WilkeAlgebra {
            plus_names: vec!["a".into(), "b".into()],
            omega_names: vec!["x".into()],
            dot: vec![vec![0, 1], vec![1, 0]], // b·b = a: fine, still a group
            mix: vec![vec![0], vec![0]],
            pow: vec![0, 0],
        };
        assert!(w.check().is_empty());
        let mut corrupt = w.clone();
        corrupt.dot[0][1] = 0; // now (b·a)·b ≠ b·(a·b)
        let violations = corrupt.check();
        assert!(violations.iter().any(|v| v.contains("associativity")), "{violations:?}");
    }

    #[test]
    fn profile_algebras_of_small_automata_check() {
        let w = WilkeAlgebra::from_nba(&Nba::alternating_blocks(), DEFAULT_MONOID_CAP).unwrap();
        assert!(w.check().is_empty());
        for seed in 40..48u64 {
            let a = random_nba(seed, 3);
            let w = WilkeAlgebra::from_nba(&a, DEFAULT_MONOID_CAP).unwrap();
            let violations = w.check();
            assert!(violations.is_empty(), "seed {seed}: {violations:?}");
        }
    }

    #[test]
    fn wilke_text_round_trips() {
        let w = WilkeAlgebra::from_nba(&Nba::alternating_blocks(), DEFAULT_MONOID_CAP).unwrap();
        let text = w.to_text();
        assert_eq!(WilkeAlgebra::parse(&text).unwrap(), w);
        assert!(WilkeAlgebra::parse("plus a\nomega x\npow a x\n").is_err());
    }
}
