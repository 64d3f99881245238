//! Context-free grammars and the eventually regular context-free fragment of
//! ω-languages.
//!
//! Grammar text format, one production per line:
//!
//! ```text
//! start S
//! rule S -> 0
//! rule S -> X 0 1
//! rule X -> eps
//! ```
//!
//! Tokens are space separated; uppercase identifiers are nonterminals,
//! everything else is a terminal, `eps` denotes the empty body. Membership
//! goes through an internal Chomsky normal form and CYK; the user-facing
//! grammar stays unrestricted.
//!
//! An [`ErcfLanguage`] is a finite union of pieces, each either a regular
//! ω-language or a concatenation `C · L` of a context-free language of finite
//! words with a regular ω-language. The pieces are closed under intersection
//! with Büchi automata by the state-split identity
//! `(C·L) ∩ R = ⋃_q (C ∩ W_q) · (L ∩ R_q)`, where `W_q` collects the finite
//! words driving `R` from its initial state to `q` and `R_q` is `R` re-rooted
//! at `q`; the identity holds because Büchi acceptance ignores finite
//! prefixes.

use std::collections::HashMap;
use std::fmt;

use crate::nba::{Nba, Nfa, Side};
use crate::words::{Alphabet, FiniteWord, UpWord};
use crate::{Error, Result};

/// Default bound on word length for CYK membership.
pub const DEFAULT_MEMBER_BOUND: usize = 2048;

/// A grammar symbol: terminal or nonterminal, by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GSym {
    T(usize),
    N(usize),
}

/// A context-free grammar over an [`Alphabet`] of terminals.
#[derive(Clone, PartialEq, Eq)]
pub struct Cfg {
    terminals: Alphabet,
    nonterminals: Vec<String>,
    start: usize,
    rules: Vec<(usize, Vec<GSym>)>,
}

impl fmt::Debug for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cfg({} nonterminals, {} rules)", self.nonterminals.len(), self.rules.len())
    }
}

impl Cfg {
    pub fn new(
        terminals: Alphabet,
        nonterminals: Vec<String>,
        start: usize,
        rules: Vec<(usize, Vec<GSym>)>,
    ) -> Result<Cfg> {
        if start >= nonterminals.len() {
            return Err(Error::InvalidGrammar("start symbol not declared".into()));
        }
        for (lhs, body) in &rules {
            if *lhs >= nonterminals.len() {
                return Err(Error::InvalidGrammar("rule head not declared".into()));
            }
            for sym in body {
                match sym {
                    GSym::T(t) if *t >= terminals.len() => {
                        return Err(Error::InvalidGrammar("terminal out of range".into()))
                    }
                    GSym::N(n) if *n >= nonterminals.len() => {
                        return Err(Error::InvalidGrammar("nonterminal out of range".into()))
                    }
                    _ => {}
                }
            }
        }
        Ok(Cfg { terminals, nonterminals, start, rules })
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn start_name(&self) -> &str {
        &self.nonterminals[self.start]
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Parses the `start`/`rule` text format. Terminals must belong to the
    /// given alphabet; a token starting with an uppercase letter is a
    /// nonterminal and `eps` is the empty body.
    pub fn parse(terminals: &Alphabet, text: &str) -> Result<Cfg> {
        let mut start: Option<String> = None;
        let mut nonterminals: Vec<String> = Vec::new();
        let mut raw_rules: Vec<(String, Vec<String>)> = Vec::new();
        let intern = |name: &str, nonterminals: &mut Vec<String>| {
            if !nonterminals.iter().any(|n| n == name) {
                nonterminals.push(name.to_string());
            }
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            match toks[0] {
                "start" => {
                    let [_, s] = toks.as_slice() else { return Err(bad("start expects one name")) };
                    intern(s, &mut nonterminals);
                    start = Some(s.to_string());
                }
                "rule" => {
                    if toks.len() < 3 || toks[2] != "->" {
                        return Err(bad("rule expects: rule A -> body"));
                    }
                    intern(toks[1], &mut nonterminals);
                    for t in &toks[3..] {
                        if t.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
                            intern(t, &mut nonterminals);
                        }
                    }
                    raw_rules
                        .push((toks[1].to_string(), toks[3..].iter().map(|s| s.to_string()).collect()));
                }
                other => return Err(bad(&format!("unknown directive {other:?}"))),
            }
        }
        let start = start.ok_or_else(|| Error::Parse("missing start directive".into()))?;
        let nt_id = |name: &str| nonterminals.iter().position(|n| n == name).expect("interned");
        let mut rules = Vec::new();
        for (lhs, body) in raw_rules {
            let mut syms = Vec::new();
            for tok in &body {
                if tok == "eps" {
                    continue;
                }
                if tok.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
                    syms.push(GSym::N(nt_id(tok)));
                } else {
                    let t = terminals.index_of(tok).ok_or_else(|| {
                        Error::Parse(format!("terminal {tok:?} not in alphabet"))
                    })?;
                    syms.push(GSym::T(t));
                }
            }
            rules.push((nt_id(&lhs), syms));
        }
        Cfg::new(terminals.clone(), nonterminals.clone(), nt_id(&start), rules)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("start {}\n", self.nonterminals[self.start]);
        for (lhs, body) in &self.rules {
            let rendered: Vec<String> = body
                .iter()
                .map(|s| match s {
                    GSym::T(t) => self.terminals.symbol(*t).to_string(),
                    GSym::N(n) => self.nonterminals[*n].clone(),
                })
                .collect();
            let body_text = if rendered.is_empty() { "eps".to_string() } else { rendered.join(" ") };
            out.push_str(&format!("rule {} -> {}\n", self.nonterminals[*lhs], body_text));
        }
        out
    }

    /// The shortest derivable word, ties broken lexicographically; `None`
    /// when the language is empty.
    pub fn shortest_word(&self) -> Option<FiniteWord> {
        let n = self.nonterminals.len();
        let mut best: Vec<Option<Vec<usize>>> = vec![None; n];
        let better = |cand: &[usize], old: &Option<Vec<usize>>| match old {
            None => true,
            Some(o) => (cand.len(), cand) < (o.len(), o.as_slice()),
        };
        loop {
            let mut changed = false;
            for (lhs, body) in &self.rules {
                let mut word: Vec<usize> = Vec::new();
                let mut ok = true;
                for sym in body {
                    match sym {
                        GSym::T(t) => word.push(*t),
                        GSym::N(m) => match &best[*m] {
                            Some(w) => word.extend_from_slice(w),
                            None => {
                                ok = false;
                                break;
                            }
                        },
                    }
                }
                if ok && better(&word, &best[*lhs]) {
                    best[*lhs] = Some(word);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        best[self.start]
            .clone()
            .map(|w| FiniteWord::new(self.terminals.clone(), w).expect("valid witness"))
    }

    /// CYK membership with the default length bound.
    pub fn member(&self, w: &FiniteWord) -> Result<bool> {
        Ok(self.cnf().member(w)?)
    }

    /// The internal normal form, reusable across many membership queries.
    pub fn cnf(&self) -> CnfGrammar {
        CnfGrammar::from_cfg(self)
    }

    /// Intersection with a finite automaton by the triple construction: the
    /// nonterminal `(q, A, q')` derives the words that `A` derives and that
    /// drive the automaton from `q` to `q'`.
    pub fn intersect_nfa(&self, nfa: &Nfa) -> Result<Cfg> {
        if *nfa.alphabet() != self.terminals {
            return Err(Error::AlphabetMismatch);
        }
        let q_count = nfa.state_count();
        let n_count = self.nonterminals.len();
        let nt = |q: usize, a: usize, q2: usize| (q * n_count + a) * q_count + q2;
        let fresh_start = q_count * n_count * q_count;
        let mut nonterminals: Vec<String> = Vec::with_capacity(fresh_start + 1);
        for q in 0..q_count {
            for a in 0..n_count {
                for q2 in 0..q_count {
                    nonterminals.push(format!("{}@{q},{q2}", self.nonterminals[a]));
                }
            }
        }
        nonterminals.push("S@".into());

        let mut rules: Vec<(usize, Vec<GSym>)> = Vec::new();
        for &f in nfa.accepting() {
            rules.push((fresh_start, vec![GSym::N(nt(nfa.initial(), self.start, f))]));
        }
        // terminal steps available in the automaton
        let mut steps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &(p, a, q) in nfa.transitions() {
            steps.entry((p, a)).or_default().push(q);
        }
        for (lhs, body) in &self.rules {
            let k = body.len();
            // enumerate state sequences q0 … qk
            let mut seq = vec![0usize; k + 1];
            'outer: loop {
                let mut items = Vec::with_capacity(k);
                let mut ok = true;
                for (i, sym) in body.iter().enumerate() {
                    match sym {
                        GSym::T(t) => {
                            if steps.get(&(seq[i], *t)).is_some_and(|ts| ts.contains(&seq[i + 1])) {
                                items.push(GSym::T(*t));
                            } else {
                                ok = false;
                                break;
                            }
                        }
                        GSym::N(m) => items.push(GSym::N(nt(seq[i], *m, seq[i + 1]))),
                    }
                }
                if ok {
                    rules.push((nt(seq[0], *lhs, seq[k]), items));
                }
                // next sequence
                let mut i = 0;
                loop {
                    if i > k {
                        break 'outer;
                    }
                    seq[i] += 1;
                    if seq[i] < q_count {
                        break;
                    }
                    seq[i] = 0;
                    i += 1;
                }
            }
        }
        Cfg::new(self.terminals.clone(), nonterminals, fresh_start, rules)
    }

    /// Replaces every terminal by its image word; realizes homomorphic
    /// images of the language.
    pub fn apply_hom(&self, images: &[FiniteWord], target: &Alphabet) -> Result<Cfg> {
        if images.len() != self.terminals.len() {
            return Err(Error::Invalid("one image per terminal required".into()));
        }
        if images.iter().any(|w| w.is_empty()) {
            return Err(Error::EmptyImage);
        }
        if images.iter().any(|w| w.alphabet() != target) {
            return Err(Error::AlphabetMismatch);
        }
        let rules = self
            .rules
            .iter()
            .map(|(lhs, body)| {
                let mut out = Vec::new();
                for sym in body {
                    match sym {
                        GSym::T(t) => out.extend(images[*t].syms().iter().map(|&s| GSym::T(s))),
                        GSym::N(n) => out.push(GSym::N(*n)),
                    }
                }
                (*lhs, out)
            })
            .collect();
        Cfg::new(target.clone(), self.nonterminals.clone(), self.start, rules)
    }

    /// Prepends a fixed terminal word to the language.
    pub fn prepend(&self, prefix: &FiniteWord) -> Result<Cfg> {
        if *prefix.alphabet() != self.terminals {
            return Err(Error::AlphabetMismatch);
        }
        let mut nonterminals = self.nonterminals.clone();
        let fresh = nonterminals.len();
        nonterminals.push("S^".into());
        let mut rules = self.rules.clone();
        let mut body: Vec<GSym> = prefix.syms().iter().map(|&s| GSym::T(s)).collect();
        body.push(GSym::N(self.start));
        rules.push((fresh, body));
        Cfg::new(self.terminals.clone(), nonterminals, fresh, rules)
    }

    /// Lifts the language to the pair alphabet, pairing each member with
    /// every word of the same length: on the left side the grammar
    /// constrains first components.
    pub fn convolve_universal(&self, side: Side, other: &Alphabet) -> Cfg {
        let (pair, mine, theirs) = match side {
            Side::Left => (Alphabet::pair_of(&self.terminals, other), self.terminals.len(), other.len()),
            Side::Right => (Alphabet::pair_of(other, &self.terminals), other.len(), self.terminals.len()),
        };
        let _ = (mine, theirs);
        let rules = self
            .rules
            .iter()
            .map(|(lhs, body)| {
                let out = body
                    .iter()
                    .map(|sym| match sym {
                        GSym::N(n) => vec![GSym::N(*n)],
                        GSym::T(_) => vec![],
                    })
                    .collect::<Vec<_>>();
                (*lhs, body.clone(), out)
            })
            .collect::<Vec<_>>();
        // rebuild with terminal fan-out
        let mut new_rules: Vec<(usize, Vec<GSym>)> = Vec::new();
        let nt_count = self.nonterminals.len();
        let mut nonterminals = self.nonterminals.clone();
        // one helper nonterminal per terminal
        for t in 0..self.terminals.len() {
            nonterminals.push(format!("T{t}^"));
        }
        for (lhs, body, _) in rules {
            let new_body = body
                .iter()
                .map(|sym| match sym {
                    GSym::N(n) => GSym::N(*n),
                    GSym::T(t) => GSym::N(nt_count + t),
                })
                .collect();
            new_rules.push((lhs, new_body));
        }
        for t in 0..self.terminals.len() {
            for b in 0..other.len() {
                let sym = match side {
                    Side::Left => t * other.len() + b,
                    Side::Right => b * self.terminals.len() + t,
                };
                new_rules.push((nt_count + t, vec![GSym::T(sym)]));
            }
        }
        Cfg::new(pair, nonterminals, self.start, new_rules).expect("valid lifted grammar")
    }
}

/// A grammar in Chomsky normal form, for repeated CYK queries.
pub struct CnfGrammar {
    terminals: Alphabet,
    start: usize,
    nullable_start: bool,
    unit_terminal: Vec<Vec<usize>>, // nonterminal -> derivable single terminals
    binary: Vec<(usize, usize, usize)>, // A -> B C
    count: usize,
    member_bound: usize,
}

impl CnfGrammar {
    fn from_cfg(g: &Cfg) -> CnfGrammar {
        // TERM+BIN: introduce symbols for terminals in long rules, binarize
        let mut count = g.nonterminals.len();
        let mut term_wrap: HashMap<usize, usize> = HashMap::new();
        let mut rules: Vec<(usize, Vec<GSym>)> = Vec::new();
        for (lhs, body) in &g.rules {
            let mut syms = body.clone();
            if syms.len() >= 2 {
                for s in &mut syms {
                    if let GSym::T(t) = *s {
                        let wrapped = *term_wrap.entry(t).or_insert_with(|| {
                            count += 1;
                            count - 1
                        });
                        *s = GSym::N(wrapped);
                    }
                }
            }
            while syms.len() > 2 {
                let tail = syms.split_off(syms.len() - 2);
                let fresh = count;
                count += 1;
                rules.push((fresh, tail));
                syms.push(GSym::N(fresh));
            }
            rules.push((*lhs, syms));
        }
        for (&t, &wrapped) in &term_wrap {
            rules.push((wrapped, vec![GSym::T(t)]));
        }

        // DEL: nullable set
        let mut nullable = vec![false; count];
        loop {
            let mut changed = false;
            for (lhs, body) in &rules {
                if nullable[*lhs] {
                    continue;
                }
                let all = body.iter().all(|s| matches!(s, GSym::N(n) if nullable[*n]));
                if all && body.iter().all(|s| matches!(s, GSym::N(_))) || body.is_empty() {
                    let derives_empty = body.is_empty()
                        || body.iter().all(|s| matches!(s, GSym::N(n) if nullable[*n]));
                    if derives_empty {
                        nullable[*lhs] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // expand nullable occurrences in binary rules
        let mut expanded: Vec<(usize, Vec<GSym>)> = Vec::new();
        for (lhs, body) in &rules {
            match body.as_slice() {
                [GSym::N(b), GSym::N(c)] => {
                    expanded.push((*lhs, body.clone()));
                    if nullable[*b] {
                        expanded.push((*lhs, vec![GSym::N(*c)]));
                    }
                    if nullable[*c] {
                        expanded.push((*lhs, vec![GSym::N(*b)]));
                    }
                }
                _ => expanded.push((*lhs, body.clone())),
            }
        }

        // UNIT: transitive closure of unit rules
        let mut unit_reach: Vec<Vec<bool>> = vec![vec![false; count]; count];
        for (i, row) in unit_reach.iter_mut().enumerate() {
            row[i] = true;
        }
        loop {
            let mut changed = false;
            for (lhs, body) in &expanded {
                if let [GSym::N(n)] = body.as_slice() {
                    for target in 0..count {
                        if unit_reach[*n][target] && !unit_reach[*lhs][target] {
                            unit_reach[*lhs][target] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let mut unit_terminal: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut binary: Vec<(usize, usize, usize)> = Vec::new();
        for a in 0..count {
            for (lhs, body) in &expanded {
                if !unit_reach[a][*lhs] {
                    continue;
                }
                match body.as_slice() {
                    [GSym::T(t)] => {
                        if !unit_terminal[a].contains(t) {
                            unit_terminal[a].push(*t);
                        }
                    }
                    [GSym::N(b), GSym::N(c)] => {
                        if !binary.contains(&(a, *b, *c)) {
                            binary.push((a, *b, *c));
                        }
                    }
                    _ => {}
                }
            }
        }

        CnfGrammar {
            terminals: g.terminals.clone(),
            start: g.start,
            nullable_start: nullable[g.start],
            unit_terminal,
            binary,
            count,
            member_bound: DEFAULT_MEMBER_BOUND,
        }
    }

    /// Replaces the length bound for membership queries.
    pub fn with_member_bound(mut self, bound: usize) -> CnfGrammar {
        self.member_bound = bound;
        self
    }

    /// CYK membership.
    pub fn member(&self, w: &FiniteWord) -> Result<bool> {
        if *w.alphabet() != self.terminals {
            return Err(Error::AlphabetMismatch);
        }
        let n = w.len();
        if n > self.member_bound {
            return Err(Error::MembershipBound { len: n, bound: self.member_bound });
        }
        if n == 0 {
            return Ok(self.nullable_start);
        }
        // table[len-1][i][a]: does a derive w[i, i+len)?
        let mut table = vec![vec![vec![false; self.count]; n]; n];
        for i in 0..n {
            for (a, ts) in self.unit_terminal.iter().enumerate() {
                if ts.contains(&w.sym(i)) {
                    table[0][i][a] = true;
                }
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                for split in 1..len {
                    for &(a, b, c) in &self.binary {
                        if table[len - 1][i][a] {
                            continue;
                        }
                        if table[split - 1][i][b] && table[len - split - 1][i + split][c] {
                            table[len - 1][i][a] = true;
                        }
                    }
                }
            }
        }
        Ok(table[n - 1][0][self.start])
    }
}

/// One piece of an eventually regular context-free ω-language.
#[derive(Clone, Debug)]
pub enum ErcfPiece {
    /// A regular ω-language.
    Regular(Nba),
    /// `C · L`: a context-free prefix language followed by a regular tail.
    Cl(Cfg, Nba),
}

/// A finite union of [`ErcfPiece`]s over one alphabet.
#[derive(Clone, Debug)]
pub struct ErcfLanguage {
    alphabet: Alphabet,
    pieces: Vec<ErcfPiece>,
}

impl ErcfLanguage {
    pub fn new(alphabet: Alphabet, pieces: Vec<ErcfPiece>) -> Result<ErcfLanguage> {
        for piece in &pieces {
            let ok = match piece {
                ErcfPiece::Regular(a) => *a.alphabet() == alphabet,
                ErcfPiece::Cl(c, l) => *c.terminals() == alphabet && *l.alphabet() == alphabet,
            };
            if !ok {
                return Err(Error::AlphabetMismatch);
            }
        }
        Ok(ErcfLanguage { alphabet, pieces })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pieces(&self) -> &[ErcfPiece] {
        &self.pieces
    }

    /// Intersection with a regular ω-language, piecewise.
    pub fn intersect_nba(&self, r: &Nba) -> Result<ErcfLanguage> {
        if *r.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut pieces = Vec::new();
        for piece in &self.pieces {
            match piece {
                ErcfPiece::Regular(a) => pieces.push(ErcfPiece::Regular(a.product(r)?)),
                ErcfPiece::Cl(c, l) => {
                    let graph = Nfa::from_graph(r);
                    for q in 0..r.state_count() {
                        let to_q = graph.with_accepting([q])?;
                        let c_part = c.intersect_nfa(&to_q)?;
                        let l_part = l.product(&r.rerooted(q)?)?;
                        pieces.push(ErcfPiece::Cl(c_part, l_part));
                    }
                }
            }
        }
        ErcfLanguage::new(self.alphabet.clone(), pieces)
    }

    /// A witness of non-emptiness: for a `C·L` piece the shortest derivable
    /// prefix prepended to the tail witness. `None` means every piece is
    /// empty.
    pub fn witness(&self) -> Option<UpWord> {
        for piece in &self.pieces {
            match piece {
                ErcfPiece::Regular(a) => {
                    if let Some(w) = a.witness() {
                        return Some(w);
                    }
                }
                ErcfPiece::Cl(c, l) => {
                    let (Some(prefix), Some(tail)) = (c.shortest_word(), l.witness()) else {
                        continue;
                    };
                    let pre = prefix.concat(tail.preperiod()).expect("same alphabet");
                    return Some(UpWord::new(pre, tail.period().clone()).expect("valid witness"));
                }
            }
        }
        None
    }

    pub fn is_empty_language(&self) -> bool {
        self.witness().is_none()
    }

    /// Membership of an ultimately periodic word.
    ///
    /// For a `C·L` piece, the cut positions of `x` that land in `C` are found
    /// by intersecting `C` with the chain-and-cycle automaton of `x`'s
    /// prefixes, one accepting position at a time; the corresponding tails
    /// are checked against `L`. Tails repeat with the period, so the
    /// positions of one preperiod-plus-period window suffice.
    pub fn member_up(&self, x: &UpWord) -> Result<bool> {
        if *x.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        for piece in &self.pieces {
            match piece {
                ErcfPiece::Regular(a) => {
                    if a.member_up(x)? {
                        return Ok(true);
                    }
                }
                ErcfPiece::Cl(c, l) => {
                    let pre = x.preperiod().len();
                    let m = pre + x.period().len();
                    // chain automaton over positions 0..m with the period cycle
                    let mut transitions = Vec::new();
                    for i in 0..m {
                        let target = if i + 1 < m { i + 1 } else { pre };
                        transitions.push((i, x.sym_at(i), target));
                    }
                    for j in 0..m {
                        let tail = x.drop_first(j);
                        if !l.member_up(&tail)? {
                            continue;
                        }
                        let chain =
                            Nfa::new(self.alphabet.clone(), m, 0, [j], transitions.iter().copied())?;
                        if c.intersect_nfa(&chain)?.shortest_word().is_some() {
                            return Ok(true);
                        }
                    }
                }
            }
        }
        Ok(false)
    }
}
