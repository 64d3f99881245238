//! Nondeterministic Büchi automata and finite-word automata.
//!
//! Automata share a line-based text format:
//!
//! ```text
//! # optional comments
//! alphabet 0 1
//! states 3
//! initial 0
//! accepting 2
//! trans 0 1 1
//! trans 1 0 2
//! ```
//!
//! The same description is read either with Büchi acceptance ([`Nba`], a
//! final state occurs infinitely often) or with finite acceptance ([`Nfa`],
//! the run ends in a final state). Membership of ultimately periodic words
//! is decided on the product with the word's lasso automaton; emptiness
//! returns the lexicographically least shortest lasso as a witness.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::words::{Alphabet, FiniteWord, UpWord};
use crate::{Error, Result};

/// Which component of a pair relation an automaton constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A nondeterministic Büchi automaton.
#[derive(Clone, PartialEq, Eq)]
pub struct Nba {
    alphabet: Alphabet,
    states: usize,
    initial: usize,
    accepting: BTreeSet<usize>,
    transitions: BTreeSet<(usize, usize, usize)>, // (state, symbol, state)
}

impl fmt::Debug for Nba {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Nba({} states, {} transitions, initial {}, accepting {:?})",
            self.states,
            self.transitions.len(),
            self.initial,
            self.accepting
        )
    }
}

impl Nba {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        let transitions: BTreeSet<(usize, usize, usize)> = transitions.into_iter().collect();
        if states == 0 {
            return Err(Error::InvalidAutomaton("automaton needs at least one state".into()));
        }
        if initial >= states {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        if let Some(&q) = accepting.iter().find(|&&q| q >= states) {
            return Err(Error::InvalidAutomaton(format!("accepting state {q} out of range")));
        }
        for &(p, a, q) in &transitions {
            if p >= states || q >= states {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({p},{a},{q}) out of range"
                )));
            }
            if a >= alphabet.len() {
                return Err(Error::InvalidAutomaton(format!("transition symbol {a} out of range")));
            }
        }
        Ok(Nba { alphabet, states, initial, accepting, transitions })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.transitions
    }

    /// The automaton accepting every ω-word.
    pub fn universal(alphabet: Alphabet) -> Nba {
        let transitions: Vec<_> = (0..alphabet.len()).map(|a| (0, a, 0)).collect();
        Nba::new(alphabet, 1, 0, [0], transitions).expect("universal automaton")
    }

    /// The automaton accepting no ω-word.
    pub fn empty_language(alphabet: Alphabet) -> Nba {
        Nba::new(alphabet, 1, 0, [], []).expect("empty automaton")
    }

    /// Accepts exactly the ω-words alternating non-empty `1`-blocks and
    /// `0`-blocks forever, i.e. `(1+0+)^ω` over the binary alphabet.
    pub fn alternating_blocks() -> Nba {
        let alph = Alphabet::binary();
        // 0: before the first letter, 1: inside a 1-block, 2: inside a
        // 0-block, 3: first letter of a later 1-block (accepting)
        Nba::new(
            alph,
            4,
            0,
            [3],
            [(0, 1, 1), (1, 1, 1), (1, 0, 2), (2, 0, 2), (2, 1, 3), (3, 1, 1), (3, 0, 2)],
        )
        .expect("block automaton")
    }

    /// Same automaton re-rooted at another initial state.
    pub fn rerooted(&self, initial: usize) -> Result<Nba> {
        if initial >= self.states {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        let mut a = self.clone();
        a.initial = initial;
        Ok(a)
    }

    /// Restriction to the states reachable from the initial state.
    pub fn trimmed(&self) -> Nba {
        let succ = self.successor_map();
        let mut seen = vec![false; self.states];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(p) = queue.pop_front() {
            for &(_, q) in &succ[p] {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        let mut remap = vec![usize::MAX; self.states];
        let mut next = 0;
        for q in 0..self.states {
            if seen[q] {
                remap[q] = next;
                next += 1;
            }
        }
        Nba {
            alphabet: self.alphabet.clone(),
            states: next,
            initial: remap[self.initial],
            accepting: self.accepting.iter().filter(|&&q| seen[q]).map(|&q| remap[q]).collect(),
            transitions: self
                .transitions
                .iter()
                .filter(|&&(p, _, q)| seen[p] && seen[q])
                .map(|&(p, a, q)| (remap[p], a, remap[q]))
                .collect(),
        }
    }

    pub(crate) fn successor_map(&self) -> Vec<Vec<(usize, usize)>> {
        let mut succ = vec![Vec::new(); self.states];
        for &(p, a, q) in &self.transitions {
            succ[p].push((a, q));
        }
        succ
    }

    /// Decides whether the ultimately periodic word is accepted, via the
    /// product with the word's lasso automaton and a cycle search.
    pub fn member_up(&self, x: &UpWord) -> Result<bool> {
        if *x.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let pre = x.preperiod().len();
        let m = pre + x.period().len();
        let node = |q: usize, i: usize| q * m + i;
        let next_pos = |i: usize| if i + 1 < m { i + 1 } else { pre };
        let succ = self.successor_map();

        // reachable product nodes
        let mut seen = vec![false; self.states * m];
        let start = node(self.initial, 0);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(n) = queue.pop_front() {
            let (q, i) = (n / m, n % m);
            let letter = x.sym_at(i);
            for &(a, q2) in &succ[q] {
                if a == letter {
                    let n2 = node(q2, next_pos(i));
                    if !seen[n2] {
                        seen[n2] = true;
                        queue.push_back(n2);
                    }
                }
            }
        }

        // an accepting product node lying on a cycle
        for q in self.accepting.iter().copied() {
            for i in pre..m {
                let n = node(q, i);
                if !seen[n] {
                    continue;
                }
                let mut vis = vec![false; self.states * m];
                let mut stack = Vec::new();
                let letter = x.sym_at(i);
                for &(a, q2) in &succ[q] {
                    if a == letter {
                        let n2 = node(q2, next_pos(i));
                        if !vis[n2] {
                            vis[n2] = true;
                            stack.push(n2);
                        }
                    }
                }
                while let Some(c) = stack.pop() {
                    if c == n {
                        return Ok(true);
                    }
                    let (cq, ci) = (c / m, c % m);
                    let letter = x.sym_at(ci);
                    for &(a, q2) in &succ[cq] {
                        if a == letter {
                            let n2 = node(q2, next_pos(ci));
                            if !vis[n2] {
                                vis[n2] = true;
                                stack.push(n2);
                            }
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    /// Lexicographically least shortest word (by symbol order) reaching each
    /// state from `from`; `None` for unreachable states.
    fn best_words_from(&self, from: usize) -> Vec<Option<Vec<usize>>> {
        let succ = self.successor_map();
        let mut best: Vec<Option<Vec<usize>>> = vec![None; self.states];
        best[from] = Some(Vec::new());
        let mut frontier = vec![from];
        while !frontier.is_empty() {
            let mut improved: HashMap<usize, Vec<usize>> = HashMap::new();
            for &p in &frontier {
                let base = best[p].clone().expect("frontier state settled");
                for &(a, q) in &succ[p] {
                    if best[q].is_some() {
                        continue;
                    }
                    let mut cand = base.clone();
                    cand.push(a);
                    match improved.get(&q) {
                        Some(old) if old.as_slice() <= cand.as_slice() => {}
                        _ => {
                            improved.insert(q, cand);
                        }
                    }
                }
            }
            frontier = improved.keys().copied().collect();
            frontier.sort_unstable();
            for (q, w) in improved {
                best[q] = Some(w);
            }
        }
        best
    }

    /// Lexicographically least shortest non-empty cycle word at `q`, if any.
    fn best_cycle_at(&self, q: usize) -> Option<Vec<usize>> {
        let succ = self.successor_map();
        let mut best: Option<Vec<usize>> = None;
        let mut firsts: Vec<(usize, usize)> = succ[q].clone();
        firsts.sort_unstable();
        for (a, r) in firsts {
            let words = self.best_words_from(r);
            if let Some(back) = &words[q] {
                let mut cand = vec![a];
                cand.extend_from_slice(back);
                let better = match &best {
                    None => true,
                    Some(old) => (cand.len(), cand.as_slice()) < (old.len(), old.as_slice()),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        best
    }

    /// A witness of non-emptiness: the lexicographically least shortest lasso
    /// `stem(cycle)^ω` through an accepting state, preferring shorter total
    /// length, then shorter stem, then lexicographic order on stem and cycle.
    /// `None` means the language is empty.
    pub fn witness(&self) -> Option<UpWord> {
        let reach = self.best_words_from(self.initial);
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for &q in &self.accepting {
            let Some(stem) = reach[q].clone() else { continue };
            let Some(cycle) = self.best_cycle_at(q) else { continue };
            let better = match &best {
                None => true,
                Some((s, c)) => {
                    let old = (s.len() + c.len(), s.len(), s.as_slice(), c.as_slice());
                    let new =
                        (stem.len() + cycle.len(), stem.len(), stem.as_slice(), cycle.as_slice());
                    new < old
                }
            };
            if better {
                best = Some((stem, cycle));
            }
        }
        best.map(|(stem, cycle)| {
            UpWord::new(
                FiniteWord::new(self.alphabet.clone(), stem).expect("valid witness stem"),
                FiniteWord::new(self.alphabet.clone(), cycle).expect("valid witness cycle"),
            )
            .expect("valid witness")
        })
    }

    /// True if no ω-word is accepted.
    pub fn is_empty_language(&self) -> bool {
        self.witness().is_none()
    }

    /// A raw accepting lasso `(stem, cycle)` as symbol sequences, found in
    /// linear time: breadth-first reachability plus a strongly connected
    /// component search. Deterministic (smallest breadth-first distance,
    /// then smallest state index) but not length- or lex-minimal; intended
    /// for large product automata.
    pub(crate) fn fast_lasso(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let succ = self.successor_map();
        let mut sorted_succ = succ.clone();
        for s in &mut sorted_succ {
            s.sort_unstable();
        }

        // BFS with parents
        let mut dist = vec![usize::MAX; self.states];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.states];
        dist[self.initial] = 0;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(p) = queue.pop_front() {
            for &(a, q) in &sorted_succ[p] {
                if dist[q] == usize::MAX {
                    dist[q] = dist[p] + 1;
                    parent[q] = Some((p, a));
                    queue.push_back(q);
                }
            }
        }

        // iterative Tarjan over reachable states
        let mut index = vec![usize::MAX; self.states];
        let mut low = vec![0usize; self.states];
        let mut on_stack = vec![false; self.states];
        let mut comp = vec![usize::MAX; self.states];
        let mut comp_size = Vec::new();
        let mut stack = Vec::new();
        let mut next_index = 0usize;
        for root in 0..self.states {
            if dist[root] == usize::MAX || index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&(v, ei)) = call.last() {
                if ei == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if ei < sorted_succ[v].len() {
                    call.last_mut().expect("frame").1 += 1;
                    let (_, w) = sorted_succ[v][ei];
                    if index[w] == usize::MAX {
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        let c = comp_size.len();
                        let mut size = 0;
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp[w] = c;
                            size += 1;
                            if w == v {
                                break;
                            }
                        }
                        comp_size.push(size);
                    }
                    call.pop();
                    if let Some(&(u, _)) = call.last() {
                        low[u] = low[u].min(low[v]);
                    }
                }
            }
        }

        // an accepting state on a cycle, nearest to the initial state
        let mut anchor: Option<usize> = None;
        for &q in &self.accepting {
            if dist[q] == usize::MAX {
                continue;
            }
            let cyclic = comp_size[comp[q]] > 1
                || sorted_succ[q].iter().any(|&(_, r)| r == q);
            if !cyclic {
                continue;
            }
            let better = match anchor {
                None => true,
                Some(b) => (dist[q], q) < (dist[b], b),
            };
            if better {
                anchor = Some(q);
            }
        }
        let anchor = anchor?;

        let mut stem = Vec::new();
        let mut cur = anchor;
        while let Some((p, a)) = parent[cur] {
            stem.push(a);
            cur = p;
        }
        stem.reverse();

        // BFS back to the anchor inside its component
        let mut back: Vec<Option<(usize, usize)>> = vec![None; self.states];
        let mut seen = vec![false; self.states];
        let mut queue = VecDeque::new();
        for &(a, q) in &sorted_succ[anchor] {
            if comp[q] == comp[anchor] && !seen[q] {
                seen[q] = true;
                back[q] = Some((anchor, a));
                queue.push_back(q);
                if q == anchor {
                    break;
                }
            }
        }
        if !seen[anchor] {
            while let Some(p) = queue.pop_front() {
                if p == anchor {
                    break;
                }
                for &(a, q) in &sorted_succ[p] {
                    if comp[q] == comp[anchor] && !seen[q] {
                        seen[q] = true;
                        back[q] = Some((p, a));
                        queue.push_back(q);
                    }
                }
            }
        }
        let mut cycle = Vec::new();
        let mut cur = anchor;
        loop {
            let (p, a) = back[cur].expect("cycle path");
            cycle.push(a);
            cur = p;
            if cur == anchor {
                break;
            }
        }
        cycle.reverse();
        Some((stem, cycle))
    }

    /// Intersection by the standard two-flag Büchi product.
    pub fn product(&self, other: &Nba) -> Result<Nba> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let (na, nb) = (self.states, other.states);
        let idx = |p: usize, q: usize, f: usize| (p * nb + q) * 2 + f;
        let mut transitions = Vec::new();
        for &(p, a, p2) in &self.transitions {
            for &(q, b, q2) in &other.transitions {
                if a != b {
                    continue;
                }
                // flag 0: waiting for an accepting state of `self`
                let f0 = if self.accepting.contains(&p) { 1 } else { 0 };
                transitions.push((idx(p, q, 0), a, idx(p2, q2, f0)));
                // flag 1: waiting for an accepting state of `other`
                let f1 = if other.accepting.contains(&q) { 0 } else { 1 };
                transitions.push((idx(p, q, 1), a, idx(p2, q2, f1)));
            }
        }
        let accepting: Vec<usize> = (0..na)
            .filter(|p| self.accepting.contains(p))
            .flat_map(|p| (0..nb).map(move |q| idx(p, q, 0)))
            .collect();
        let product = Nba::new(
            self.alphabet.clone(),
            na * nb * 2,
            idx(self.initial, other.initial, 0),
            accepting,
            transitions,
        )?;
        Ok(product.trimmed())
    }

    /// Union by disjoint sum with a fresh initial state.
    pub fn union(&self, other: &Nba) -> Result<Nba> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let offa = 1;
        let offb = 1 + self.states;
        let mut transitions = Vec::new();
        for &(p, a, q) in &self.transitions {
            transitions.push((p + offa, a, q + offa));
            if p == self.initial {
                transitions.push((0, a, q + offa));
            }
        }
        for &(p, a, q) in &other.transitions {
            transitions.push((p + offb, a, q + offb));
            if p == other.initial {
                transitions.push((0, a, q + offb));
            }
        }
        let accepting: Vec<usize> = self
            .accepting
            .iter()
            .map(|&q| q + offa)
            .chain(other.accepting.iter().map(|&q| q + offb))
            .collect();
        Nba::new(self.alphabet.clone(), 1 + self.states + other.states, 0, accepting, transitions)
    }

    /// Union of several automata; `None` if the slice is empty.
    pub fn union_all(automata: &[Nba]) -> Result<Option<Nba>> {
        let mut it = automata.iter();
        let Some(first) = it.next() else { return Ok(None) };
        let mut acc = first.clone();
        for a in it {
            acc = acc.union(a)?;
        }
        Ok(Some(acc))
    }

    /// Lifts a word automaton to the pair alphabet: on the left side the
    /// automaton constrains the first component and the second is free.
    pub fn lift_to_pairs(&self, side: Side) -> Nba {
        let base = &self.alphabet;
        let pair = base.pair();
        let mut transitions = Vec::new();
        for &(p, a, q) in &self.transitions {
            for b in 0..base.len() {
                let sym = match side {
                    Side::Left => Alphabet::pair_index(base, a, b),
                    Side::Right => Alphabet::pair_index(base, b, a),
                };
                transitions.push((p, sym, q));
            }
        }
        Nba::new(pair, self.states, self.initial, self.accepting.iter().copied(), transitions)
            .expect("lift of a valid automaton")
    }

    /// The strict lexicographic order as a pair relation: accepts `x ⊗ y`
    /// exactly when `x <_lex y`.
    pub fn lex_order(base: &Alphabet) -> Nba {
        let pair = base.pair();
        let mut transitions = Vec::new();
        for a in 0..base.len() {
            transitions.push((0, Alphabet::pair_index(base, a, a), 0));
            for b in a + 1..base.len() {
                transitions.push((0, Alphabet::pair_index(base, a, b), 1));
            }
            for b in 0..base.len() {
                transitions.push((1, Alphabet::pair_index(base, a, b), 1));
            }
        }
        Nba::new(pair, 2, 0, [1], transitions).expect("lex order automaton")
    }

    /// Transposes a pair-relation automaton: the result accepts `x ⊗ y` iff
    /// the original accepts `y ⊗ x`.
    pub fn swap_pairs(&self, base: &Alphabet) -> Result<Nba> {
        if self.alphabet != base.pair() {
            return Err(Error::AlphabetMismatch);
        }
        let transitions: Vec<_> = self
            .transitions
            .iter()
            .map(|&(p, sym, q)| {
                let (a, b) = Alphabet::pair_split(base, sym);
                (p, Alphabet::pair_index(base, b, a), q)
            })
            .collect();
        Nba::new(
            self.alphabet.clone(),
            self.states,
            self.initial,
            self.accepting.iter().copied(),
            transitions,
        )
    }

    /// Accepts `u · V^ω` for non-empty block words `V`: a stem for `u`, then
    /// one loop through a shared restart state per completed block.
    pub fn prefixed_blocks(u: &FiniteWord, blocks: &[FiniteWord]) -> Result<Nba> {
        let alphabet = u.alphabet().clone();
        if blocks.is_empty() || blocks.iter().any(|v| v.is_empty()) {
            return Err(Error::UnequalBlockLengths);
        }
        if blocks.iter().any(|v| *v.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        // states 0..=|u| form the stem; |u| doubles as the restart state
        let restart = u.len();
        let mut transitions = Vec::new();
        for i in 0..u.len() {
            transitions.push((i, u.sym(i), i + 1));
        }
        let mut next_state = restart + 1;
        for v in blocks {
            let mut cur = restart;
            for i in 0..v.len() {
                let target = if i + 1 == v.len() {
                    restart
                } else {
                    let t = next_state;
                    next_state += 1;
                    t
                };
                transitions.push((cur, v.sym(i), target));
                cur = target;
            }
        }
        Nba::new(alphabet, next_state, 0, [restart], transitions)
    }

    /// The complement of the safety language `u · V^ω` for equal-length
    /// blocks `V`: a deterministic prefix checker whose bad-prefix sink is
    /// the single accepting state.
    pub fn safety_complement_of_blocks(u: &FiniteWord, blocks: &[FiniteWord]) -> Result<Nba> {
        let alphabet = u.alphabet().clone();
        if blocks.is_empty() {
            return Err(Error::UnequalBlockLengths);
        }
        let m = blocks[0].len();
        if m == 0 || blocks.iter().any(|v| v.len() != m) {
            return Err(Error::UnequalBlockLengths);
        }
        if blocks.iter().any(|v| *v.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        // proper prefixes of block words, deduplicated; the empty prefix is
        // identified with the end-of-stem state |u|
        let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
        for v in blocks {
            for l in 1..m {
                let p = v.syms()[..l].to_vec();
                if !prefixes.contains(&p) {
                    prefixes.push(p);
                }
            }
        }
        let stem_states = u.len();
        let sink = stem_states + prefixes.len();
        let mut transitions = Vec::new();
        for i in 0..u.len() {
            for a in 0..alphabet.len() {
                let target = if a == u.sym(i) { i + 1 } else { sink };
                transitions.push((i, a, target));
            }
        }
        for (pi, p) in prefixes.iter().enumerate() {
            let from = stem_states + pi;
            for a in 0..alphabet.len() {
                let mut ext = p.clone();
                ext.push(a);
                let target = if ext.len() == m {
                    if blocks.iter().any(|v| v.syms() == ext.as_slice()) {
                        stem_states // block complete, restart
                    } else {
                        sink
                    }
                } else if let Some(i) = prefixes.iter().position(|x| *x == ext) {
                    stem_states + i
                } else {
                    sink
                };
                transitions.push((from, a, target));
            }
        }
        for a in 0..alphabet.len() {
            transitions.push((sink, a, sink));
        }
        Nba::new(alphabet, sink + 1, 0, [sink], transitions)
    }

    /// Serializes into the line-based text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet");
        for s in self.alphabet.symbols() {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
        out.push_str(&format!("states {}\n", self.states));
        out.push_str(&format!("initial {}\n", self.initial));
        if !self.accepting.is_empty() {
            out.push_str("accepting");
            for q in &self.accepting {
                out.push_str(&format!(" {q}"));
            }
            out.push('\n');
        }
        for &(p, a, q) in &self.transitions {
            out.push_str(&format!("trans {p} {} {q}\n", self.alphabet.symbol(a)));
        }
        out
    }

    /// Parses the text format with Büchi acceptance.
    pub fn parse(text: &str) -> Result<Nba> {
        let raw = parse_raw(text)?;
        Nba::new(raw.alphabet, raw.states, raw.initial, raw.accepting, raw.transitions)
    }
}

/// A nondeterministic finite-word automaton over the same description.
#[derive(Clone, Debug)]
pub struct Nfa {
    automaton: Nba,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        Ok(Nfa { automaton: Nba::new(alphabet, states, initial, accepting, transitions)? })
    }

    /// Reads the shared text format with finite acceptance.
    pub fn parse(text: &str) -> Result<Nfa> {
        Ok(Nfa { automaton: Nba::parse(text)? })
    }

    /// Views an ω-automaton's transition graph as a finite-word automaton.
    pub fn from_graph(a: &Nba) -> Nfa {
        Nfa { automaton: a.clone() }
    }

    /// Same graph with a different accepting set.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = usize>) -> Result<Nfa> {
        Nfa::new(
            self.automaton.alphabet.clone(),
            self.automaton.states,
            self.automaton.initial,
            accepting,
            self.automaton.transitions.iter().copied(),
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.automaton.alphabet()
    }

    pub fn state_count(&self) -> usize {
        self.automaton.states
    }

    pub fn initial(&self) -> usize {
        self.automaton.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.automaton.accepting
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.automaton.transitions
    }

    pub fn to_text(&self) -> String {
        self.automaton.to_text()
    }

    /// Finite-word membership by subset simulation.
    pub fn accepts(&self, w: &FiniteWord) -> Result<bool> {
        if w.alphabet() != self.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let mut current: BTreeSet<usize> = BTreeSet::from([self.automaton.initial]);
        for &a in w.syms() {
            let mut next = BTreeSet::new();
            for &(p, b, q) in &self.automaton.transitions {
                if b == a && current.contains(&p) {
                    next.insert(q);
                }
            }
            current = next;
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|q| self.automaton.accepting.contains(q)))
    }

    /// Lexicographically least shortest accepted word, if any.
    pub fn shortest_accepted(&self) -> Option<FiniteWord> {
        if self.automaton.accepting.contains(&self.automaton.initial) {
            return Some(FiniteWord::empty(self.automaton.alphabet.clone()));
        }
        let best = self.automaton.best_words_from(self.automaton.initial);
        self.automaton
            .accepting
            .iter()
            .filter_map(|&q| best[q].clone())
            .min_by(|a, b| match a.len().cmp(&b.len()) {
                Ordering::Equal => a.cmp(b),
                o => o,
            })
            .map(|w| FiniteWord::new(self.automaton.alphabet.clone(), w).expect("valid witness"))
    }

    /// The closure `L(self)+` obtained by restarting after each accepted
    /// block.
    pub fn plus_closure(&self) -> Nfa {
        let a = &self.automaton;
        let mut transitions: Vec<_> = a.transitions.iter().copied().collect();
        for &(p, sym, q) in &a.transitions {
            if a.accepting.contains(&q) {
                transitions.push((p, sym, a.initial));
            }
        }
        Nfa::new(a.alphabet.clone(), a.states, a.initial, a.accepting.iter().copied(), transitions)
            .expect("plus closure of a valid automaton")
    }
}

struct RawAutomaton {
    alphabet: Alphabet,
    states: usize,
    initial: usize,
    accepting: Vec<usize>,
    transitions: Vec<(usize, usize, usize)>,
}

fn parse_raw(text: &str) -> Result<RawAutomaton> {
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting: Vec<usize> = Vec::new();
    let mut transitions: Vec<(usize, String, usize)> = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let directive = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        match directive {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(bad("duplicate alphabet directive"));
                }
                alphabet = Some(Alphabet::new(rest)?);
            }
            "states" => {
                let [n] = rest.as_slice() else { return Err(bad("states expects one count")) };
                states = Some(n.parse().map_err(|_| bad("bad state count"))?);
            }
            "initial" => {
                let [q] = rest.as_slice() else { return Err(bad("initial expects one state")) };
                initial = Some(q.parse().map_err(|_| bad("bad initial state"))?);
            }
            "accepting" => {
                for q in rest {
                    accepting.push(q.parse().map_err(|_| bad("bad accepting state"))?);
                }
            }
            "trans" => {
                let [p, a, q] = rest.as_slice() else {
                    return Err(bad("trans expects: state symbol state"));
                };
                transitions.push((
                    p.parse().map_err(|_| bad("bad source state"))?,
                    a.to_string(),
                    q.parse().map_err(|_| bad("bad target state"))?,
                ));
            }
            other => return Err(bad(&format!("unknown directive {other:?}"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::Parse("missing alphabet directive".into()))?;
    let states = states.ok_or_else(|| Error::Parse("missing states directive".into()))?;
    let initial = initial.ok_or_else(|| Error::Parse("missing initial directive".into()))?;
    let transitions = transitions
        .into_iter()
        .map(|(p, a, q)| {
            let sym = alphabet
                .index_of(&a)
                .ok_or_else(|| Error::Parse(format!("transition symbol {a:?} not in alphabet")))?;
            Ok((p, sym, q))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawAutomaton { alphabet, states, initial, accepting, transitions })
}
