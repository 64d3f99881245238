//! Finite and ultimately periodic ω-words.
//!
//! An ω-word is modelled by its lasso presentation `u(v)`: a finite preperiod
//! `u` followed by a forever repeated non-empty period `v`. Construction
//! canonicalises the lasso (primitive period, shortest preperiod), so two
//! [`UpWord`]s denote the same ω-word exactly when they are structurally
//! equal. All order and equivalence questions are answered by inspecting the
//! prefix of length `max(preperiods) + lcm(periods)`: past the common
//! preperiod both words repeat with the least common period, so agreement on
//! one such window implies agreement everywhere.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A finite, totally ordered alphabet of single-token symbols.
///
/// The symbol order defines the lexicographic order on words. Symbols of
/// product alphabets are written `a|b`.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Arc<Vec<String>>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.symbols, &other.symbols) || self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", self.symbols.join(" "))
    }
}

impl Alphabet {
    /// Builds an alphabet from distinct symbol tokens, in the given order.
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(symbols: I) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet must be non-empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad alphabet symbol {s:?}")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::Invalid(format!("duplicate alphabet symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols: Arc::new(symbols) })
    }

    /// The binary alphabet `0 1`.
    pub fn binary() -> Self {
        Alphabet::new(["0", "1"]).expect("binary alphabet")
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True if the alphabet has no symbols (never holds for valid alphabets).
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The symbol at the given index.
    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    /// All symbols in order.
    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    /// Index of a symbol token.
    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == token)
    }

    /// True if this is exactly the binary alphabet `0 1`.
    pub fn is_binary(&self) -> bool {
        self.symbols.len() == 2 && self.symbols[0] == "0" && self.symbols[1] == "1"
    }

    /// The pair alphabet with symbols `a|b`, ordered row-major by `(a, b)`.
    pub fn pair(&self) -> Self {
        Alphabet::pair_of(self, self)
    }

    /// Pair alphabet over two (possibly different) base alphabets.
    pub fn pair_of(left: &Alphabet, right: &Alphabet) -> Self {
        let mut symbols = Vec::with_capacity(left.len() * right.len());
        for a in left.symbols() {
            for b in right.symbols() {
                symbols.push(format!("{a}|{b}"));
            }
        }
        Alphabet { symbols: Arc::new(symbols) }
    }

    /// Index of `a|b` in `base.pair()` for component indices `a` and `b`.
    pub fn pair_index(base: &Alphabet, a: usize, b: usize) -> usize {
        a * base.len() + b
    }

    /// Splits a pair-alphabet symbol index back into its components.
    pub fn pair_split(base: &Alphabet, sym: usize) -> (usize, usize) {
        (sym / base.len(), sym % base.len())
    }

    /// Tokenizes a string into symbol indices.
    ///
    /// Whitespace separates chunks; within a chunk the longest matching
    /// symbol is taken greedily, so both `0101` and `0|1 1|0` parse.
    pub fn tokenize(&self, text: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for chunk in text.split_whitespace() {
            let mut rest = chunk;
            while !rest.is_empty() {
                let mut best: Option<(usize, usize)> = None; // (len, index)
                for (i, s) in self.symbols.iter().enumerate() {
                    if rest.starts_with(s.as_str()) {
                        let cand = (s.len(), i);
                        if best.map_or(true, |(l, _)| s.len() > l) {
                            best = Some(cand);
                        }
                    }
                }
                match best {
                    Some((l, i)) => {
                        out.push(i);
                        rest = &rest[l..];
                    }
                    None => {
                        return Err(Error::Parse(format!(
                            "no alphabet symbol matches {rest:?} (alphabet {})",
                            self.symbols.join(" ")
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    /// True if any symbol needs a separator when words are printed.
    fn needs_spacing(&self) -> bool {
        self.symbols.iter().any(|s| s.chars().count() > 1)
    }
}

/// A finite word over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: Alphabet,
    symbols: Vec<usize>,
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({self})")
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet.needs_spacing() { " " } else { "" };
        let rendered: Vec<&str> = self.symbols.iter().map(|&i| self.alphabet.symbol(i)).collect();
        write!(f, "{}", rendered.join(sep))
    }
}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.symbols.hash(state);
    }
}

impl FiniteWord {
    /// Builds a word from symbol indices.
    pub fn new(alphabet: Alphabet, symbols: Vec<usize>) -> Result<Self> {
        if symbols.iter().any(|&s| s >= alphabet.len()) {
            return Err(Error::Invalid("symbol index outside alphabet".into()));
        }
        Ok(FiniteWord { alphabet, symbols })
    }

    /// The empty word.
    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord { alphabet, symbols: Vec::new() }
    }

    /// Parses a word from text (see [`Alphabet::tokenize`]).
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Ok(FiniteWord { alphabet: alphabet.clone(), symbols: alphabet.tokenize(text)? })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol index at a position.
    pub fn sym(&self, i: usize) -> usize {
        self.symbols[i]
    }

    /// All symbol indices.
    pub fn syms(&self) -> &[usize] {
        &self.symbols
    }

    /// Concatenation.
    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(FiniteWord { alphabet: self.alphabet.clone(), symbols })
    }

    /// The subword `[from, to)`.
    pub fn slice(&self, from: usize, to: usize) -> FiniteWord {
        FiniteWord { alphabet: self.alphabet.clone(), symbols: self.symbols[from..to].to_vec() }
    }

    /// Letterwise pairing of two equal-length words over the pair alphabet.
    pub fn convolve_with(&self, other: &FiniteWord) -> Result<FiniteWord> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::UnequalBlockLengths);
        }
        let pair = self.alphabet.pair();
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| Alphabet::pair_index(&self.alphabet, a, b))
            .collect();
        Ok(FiniteWord { alphabet: pair, symbols })
    }

    fn positions_of(&self, token: &str) -> Vec<usize> {
        match self.alphabet.index_of(token) {
            Some(id) => {
                self.symbols.iter().enumerate().filter(|(_, &s)| s == id).map(|(i, _)| i).collect()
            }
            None => Vec::new(),
        }
    }

    /// Positions carrying the letter `1` (binary words).
    pub fn support(&self) -> Vec<usize> {
        self.positions_of("1")
    }
}

/// How two ω-words relate as an eventual prefix: a finite common prefix or
/// full equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonPrefix {
    Finite(FiniteWord),
    Infinite,
}

/// An ultimately periodic ω-word `preperiod · period^ω` in canonical lasso
/// form: the period is primitive and the preperiod is shortest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UpWord {
    preperiod: FiniteWord,
    period: FiniteWord,
}

impl fmt::Debug for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UpWord({self})")
    }
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.alphabet.needs_spacing() && !self.preperiod.is_empty() {
            write!(f, "{} ({})", self.preperiod, self.period)
        } else {
            write!(f, "{}({})", self.preperiod, self.period)
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl UpWord {
    /// Builds the ω-word `preperiod · period^ω`, canonicalising the lasso.
    pub fn new(preperiod: FiniteWord, period: FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if preperiod.alphabet != period.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut pre = preperiod.symbols;
        let mut per = period.symbols;

        // primitive period: shortest d dividing |per| with per = per[..d]^k
        let n = per.len();
        for d in 1..=n {
            if n % d == 0 && (d..n).all(|i| per[i] == per[i - d]) {
                per.truncate(d);
                break;
            }
        }
        // shortest preperiod: absorb trailing letters equal to the period's
        // last letter by rotating the period right
        while let (Some(&last), Some(&plast)) = (pre.last(), per.last()) {
            if last != plast {
                break;
            }
            pre.pop();
            let l = per.pop().expect("non-empty period");
            per.insert(0, l);
        }
        let alphabet = preperiod.alphabet;
        Ok(UpWord {
            preperiod: FiniteWord { alphabet: alphabet.clone(), symbols: pre },
            period: FiniteWord { alphabet, symbols: per },
        })
    }

    /// Parses the literal syntax `u(v)`, e.g. `1(10)` or `(01)`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let open = text
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing '(' in word literal {text:?}")))?;
        if !text.ends_with(')') {
            return Err(Error::Parse(format!("missing ')' in word literal {text:?}")));
        }
        let pre = &text[..open];
        let per = &text[open + 1..text.len() - 1];
        if per.find('(').is_some() || per.find(')').is_some() || pre.find(')').is_some() {
            return Err(Error::Parse(format!("malformed word literal {text:?}")));
        }
        UpWord::new(FiniteWord::parse(alphabet, pre)?, FiniteWord::parse(alphabet, per)?)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.preperiod.alphabet()
    }

    pub fn preperiod(&self) -> &FiniteWord {
        &self.preperiod
    }

    pub fn period(&self) -> &FiniteWord {
        &self.period
    }

    /// The symbol index at position `i`.
    pub fn sym_at(&self, i: usize) -> usize {
        if i < self.preperiod.len() {
            self.preperiod.sym(i)
        } else {
            self.period.sym((i - self.preperiod.len()) % self.period.len())
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        let symbols = (0..n).map(|i| self.sym_at(i)).collect();
        FiniteWord { alphabet: self.alphabet().clone(), symbols }
    }

    /// The tail `x[k, ω)` as an ultimately periodic word.
    pub fn drop_first(&self, k: usize) -> UpWord {
        let pre_len = self.preperiod.len();
        let (pre, per) = if k <= pre_len {
            (self.preperiod.slice(k, pre_len), self.period.clone())
        } else {
            let shift = (k - pre_len) % self.period.len();
            let mut syms = self.period.symbols[shift..].to_vec();
            syms.extend_from_slice(&self.period.symbols[..shift]);
            (
                FiniteWord::empty(self.alphabet().clone()),
                FiniteWord { alphabet: self.alphabet().clone(), symbols: syms },
            )
        };
        UpWord::new(pre, per).expect("tail of a valid word")
    }

    /// Window length past which two words agree everywhere if they agree on
    /// the window: `max(preperiods) + lcm(periods)`.
    pub fn comparison_bound(&self, other: &UpWord) -> usize {
        self.preperiod.len().max(other.preperiod.len())
            + lcm(self.period.len(), other.period.len())
    }

    /// Lexicographic comparison of the denoted ω-words.
    pub fn lex_cmp(&self, other: &UpWord) -> Result<Ordering> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let bound = self.comparison_bound(other);
        for i in 0..bound {
            match self.sym_at(i).cmp(&other.sym_at(i)) {
                Ordering::Equal => continue,
                ord => return Ok(ord),
            }
        }
        Ok(Ordering::Equal)
    }

    /// Longest common prefix; [`CommonPrefix::Infinite`] exactly when the
    /// words are equal.
    pub fn lcp(&self, other: &UpWord) -> Result<CommonPrefix> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let bound = self.comparison_bound(other);
        for i in 0..bound {
            if self.sym_at(i) != other.sym_at(i) {
                return Ok(CommonPrefix::Finite(self.prefix(i)));
            }
        }
        Ok(CommonPrefix::Infinite)
    }

    /// True if the words agree from some position on, decided by comparing
    /// one lcm window at offset `max(preperiod lengths)`.
    pub fn ultimately_equal(&self, other: &UpWord) -> Result<bool> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let off = self.preperiod.len().max(other.preperiod.len());
        let window = lcm(self.period.len(), other.period.len());
        Ok((off..off + window).all(|i| self.sym_at(i) == other.sym_at(i)))
    }

    /// True if the supports (positions of letter `1`) meet only finitely
    /// often. Requires the binary alphabet.
    pub fn support_meet_finite(&self, other: &UpWord) -> Result<bool> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        if !self.alphabet().is_binary() {
            return Err(Error::NonBinaryAlphabet);
        }
        let one = 1usize; // index of "1" in the binary alphabet
        let off = self.preperiod.len().max(other.preperiod.len());
        let window = lcm(self.period.len(), other.period.len());
        Ok(!(off..off + window).any(|i| self.sym_at(i) == one && other.sym_at(i) == one))
    }

    /// Convolution of two or more words over one alphabet into a single word
    /// over the product alphabet, letter `i` being the tuple of letters `i`.
    pub fn convolve(words: &[UpWord]) -> Result<UpWord> {
        if words.len() < 2 {
            return Err(Error::Invalid("convolution needs at least two words".into()));
        }
        let base = words[0].alphabet().clone();
        if words.iter().any(|w| *w.alphabet() != base) {
            return Err(Error::AlphabetMismatch);
        }
        let mut product = base.clone();
        for _ in 1..words.len() {
            product = Alphabet::pair_of(&product, &base);
        }
        let pre_len = words.iter().map(|w| w.preperiod.len()).max().unwrap();
        let per_len = words.iter().map(|w| w.period.len()).fold(1, lcm);
        let letter = |i: usize| -> usize {
            let mut idx = words[0].sym_at(i);
            for w in &words[1..] {
                idx = idx * base.len() + w.sym_at(i);
            }
            idx
        };
        let pre = FiniteWord { alphabet: product.clone(), symbols: (0..pre_len).map(letter).collect() };
        let per = FiniteWord {
            alphabet: product,
            symbols: (pre_len..pre_len + per_len).map(letter).collect(),
        };
        UpWord::new(pre, per)
    }

    /// Projects a word over a pair alphabet back to one component
    /// (`0` = left, `1` = right) over the given base alphabet.
    pub fn project(&self, component: usize, base: &Alphabet) -> Result<UpWord> {
        let split = |sym: usize| -> Result<usize> {
            let token = self.alphabet().symbol(sym);
            let parts: Vec<&str> = token.split('|').collect();
            let part = parts
                .get(component)
                .ok_or_else(|| Error::Invalid(format!("symbol {token:?} has no component {component}")))?;
            base.index_of(part)
                .ok_or_else(|| Error::Invalid(format!("component {part:?} not in base alphabet")))
        };
        let pre = self.preperiod.symbols.iter().map(|&s| split(s)).collect::<Result<Vec<_>>>()?;
        let per = self.period.symbols.iter().map(|&s| split(s)).collect::<Result<Vec<_>>>()?;
        UpWord::new(
            FiniteWord { alphabet: base.clone(), symbols: pre },
            FiniteWord { alphabet: base.clone(), symbols: per },
        )
    }
}

/// Collects the symbol tokens appearing in word literals and infers an
/// alphabet: the binary alphabet when all tokens are `0`/`1`, otherwise the
/// sorted set of tokens. Used by the command line, where no alphabet file
/// accompanies bare word arguments.
pub fn infer_alphabet(literals: &[&str]) -> Result<Alphabet> {
    let mut tokens: Vec<String> = Vec::new();
    for lit in literals {
        for chunk in lit.split_whitespace() {
            let cleaned: String =
                chunk.chars().filter(|c| *c != '(' && *c != ')').collect();
            let chars: Vec<char> = cleaned.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let mut tok = String::new();
                tok.push(chars[i]);
                i += 1;
                while i + 1 < chars.len() && chars[i] == '|' {
                    tok.push('|');
                    tok.push(chars[i + 1]);
                    i += 2;
                }
                if i < chars.len() && chars[i] == '|' {
                    return Err(Error::Parse(format!("dangling '|' in literal {lit:?}")));
                }
                if !tokens.contains(&tok) {
                    tokens.push(tok);
                }
            }
        }
    }
    if tokens.is_empty() || tokens.iter().all(|t| t == "0" || t == "1") {
        return Ok(Alphabet::binary());
    }
    tokens.sort();
    Alphabet::new(tokens)
}
