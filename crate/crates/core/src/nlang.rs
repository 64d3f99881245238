//! The ω-language of growing zero-blocks and its coded clique families.
//!
//! A binary ω-word `x` belongs to the language exactly when it starts with
//! `1` and every window `x[n, 2n+3)` has one of the shapes `0 Σ^n 0 0`,
//! `1 0^n 0 1`, or `1 0^n 1 0`. Equivalently, writing
//! `x = 1 0^{n_0} 1 0^{n_1} 1 0^{n_2} ⋯`, each exponent satisfies
//! `n_k − |1 0^{n_0} ⋯ 1 0^{n_{k-1}}| ∈ {0, 1}`. Either exponent choice is
//! available at every block, so members correspond one-to-one to infinite
//! choice sequences; [`ChoiceSeq`] holds a finite stem of such a sequence,
//! extended by zeros.
//!
//! Members have pairwise finite support intersections, the choice map is an
//! order embedding (antitone for the letter order `0 < 1`), and the
//! complement is eventually regular context-free: the bad finite prefixes
//! form the context-free language `0 ∪ ⋃_n Σ^n (0 Σ^n {01,10,11} ∪
//! 1 Σ^n {00,11})` produced by [`complement_grammar`].
//!
//! A coding `0 ↦ v`, `1 ↦ w` with a prefix `u` ([`WordHom`]) turns the
//! language into a clique candidate inside an ω-automatic graph;
//! [`complement_of_image`] is its ωerCF complement.

use crate::grammar::{Cfg, ErcfLanguage, ErcfPiece};
use crate::nba::Nba;
use crate::words::{Alphabet, FiniteWord};
use crate::{Error, Result};

/// A finite stem of an infinite choice sequence; positions beyond the stem
/// choose `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceSeq {
    bits: Vec<bool>,
}

impl ChoiceSeq {
    pub fn new(bits: Vec<bool>) -> ChoiceSeq {
        ChoiceSeq { bits }
    }

    /// Parses a bare bit string such as `0110`.
    pub fn parse(text: &str) -> Result<ChoiceSeq> {
        let mut bits = Vec::new();
        for c in text.trim().chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(Error::Parse(format!("bad choice bit {other:?}"))),
            }
        }
        Ok(ChoiceSeq { bits })
    }

    pub fn bit(&self, k: usize) -> bool {
        self.bits.get(k).copied().unwrap_or(false)
    }

    pub fn stem(&self) -> &[bool] {
        &self.bits
    }

    /// Equality of the denoted infinite sequences (stems padded by zeros).
    pub fn same_extended(&self, other: &ChoiceSeq) -> bool {
        let n = self.bits.len().max(other.bits.len());
        (0..n).all(|k| self.bit(k) == other.bit(k))
    }
}

impl std::fmt::Display for ChoiceSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A blockwise coding `0 ↦ image0`, `1 ↦ image1` with a fixed prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordHom {
    prefix: FiniteWord,
    image0: FiniteWord,
    image1: FiniteWord,
}

impl WordHom {
    pub fn new(prefix: FiniteWord, image0: FiniteWord, image1: FiniteWord) -> Result<WordHom> {
        if prefix.alphabet() != image0.alphabet() || image0.alphabet() != image1.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        if image0.is_empty() || image0.len() != image1.len() || image0 == image1 {
            return Err(Error::UnequalBlockLengths);
        }
        Ok(WordHom { prefix, image0, image1 })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.prefix.alphabet()
    }

    pub fn prefix(&self) -> &FiniteWord {
        &self.prefix
    }

    pub fn image0(&self) -> &FiniteWord {
        &self.image0
    }

    pub fn image1(&self) -> &FiniteWord {
        &self.image1
    }

    pub fn image_of(&self, bit: bool) -> &FiniteWord {
        if bit {
            &self.image1
        } else {
            &self.image0
        }
    }

    pub fn block_len(&self) -> usize {
        self.image0.len()
    }
}

fn require_binary(p: &FiniteWord) -> Result<()> {
    if !p.alphabet().is_binary() {
        return Err(Error::NonBinaryAlphabet);
    }
    Ok(())
}

/// Viability of a finite binary word as a prefix, by the window condition:
/// the word must start with `1` and every fully contained window
/// `p[n, 2n+3)` must match one of the three admissible shapes `0 Σ^n 0 0`,
/// `1 0^n 0 1`, `1 0^n 1 0`. Windows reaching past the end of the word are
/// skipped.
pub fn window_check(p: &FiniteWord) -> Result<bool> {
    require_binary(p)?;
    let len = p.len();
    if len >= 1 && p.sym(0) != 1 {
        return Ok(false);
    }
    for n in 0..len {
        if 2 * n + 3 > len {
            break;
        }
        if p.sym(n) == 0 {
            if p.sym(2 * n + 1) != 0 || p.sym(2 * n + 2) != 0 {
                return Ok(false);
            }
        } else {
            if (n + 1..2 * n + 1).any(|i| p.sym(i) != 0) {
                return Ok(false);
            }
            let pair = (p.sym(2 * n + 1), p.sym(2 * n + 2));
            if pair != (0, 1) && pair != (1, 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Viability by the block characterization: decompose `p` into
/// `1 0^{n_0} 1 0^{n_1} ⋯` and check the exponent arithmetic. The exponent
/// of the block led by the `1` at position `q` is judged once the word
/// covers position `2q+2`: the next `1` must then sit at `2q+1` or `2q+2`
/// (that is, `n_k − q ∈ {0, 1}`), a truncated final run must not already
/// exceed `q+1`, and a short exponent forces the following run to open with
/// a zero. Conversely every visible `1` must continue some block: a `1` at
/// position `2n+1` or `2n+2` whose own window is determined must sit below a
/// `1` at position `n`. Words not starting with `1` are not viable.
pub fn block_check(p: &FiniteWord) -> Result<bool> {
    require_binary(p)?;
    let len = p.len();
    if len == 0 {
        return Ok(true);
    }
    if p.sym(0) != 1 {
        return Ok(false);
    }
    let ones: Vec<usize> = p.support();
    for (k, &q) in ones.iter().enumerate() {
        if 2 * q + 3 > len {
            continue;
        }
        match ones.get(k + 1) {
            None => {
                // truncated final run already longer than q+1
                if len - q - 1 > q + 1 {
                    return Ok(false);
                }
            }
            Some(&next) => {
                let exponent = next - q - 1;
                if exponent != q && exponent != q + 1 {
                    return Ok(false);
                }
                // short exponent: the following run opens with a zero
                if exponent == q && p.sym(2 * q + 2) != 0 {
                    return Ok(false);
                }
            }
        }
    }
    // every judged 1 hangs below a 1: position 2n+1 or 2n+2 continues the
    // block led at n
    for &j in ones.iter().skip(1) {
        let (parent, needed) = if j % 2 == 1 { ((j - 1) / 2, j + 2) } else { (j / 2 - 1, j + 1) };
        if needed <= len && p.sym(parent) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The length-`len` prefix of the member selected by a choice sequence: the
/// `k`-th zero-run has length `p_k + a_k` where `p_k` is the position of its
/// leading `1`.
pub fn generate(choices: &ChoiceSeq, len: usize) -> FiniteWord {
    let alphabet = Alphabet::binary();
    let mut syms = Vec::with_capacity(len);
    let mut block = 0usize;
    while syms.len() < len {
        let position = syms.len();
        syms.push(1);
        let run = position + usize::from(choices.bit(block));
        for _ in 0..run {
            if syms.len() == len {
                break;
            }
            syms.push(0);
        }
        block += 1;
    }
    syms.truncate(len);
    FiniteWord::new(alphabet, syms).expect("binary word")
}

/// The length-`len` prefix of the coded member `prefix · h(member)`.
pub fn image_prefix(hom: &WordHom, choices: &ChoiceSeq, len: usize) -> FiniteWord {
    let mut syms: Vec<usize> = Vec::with_capacity(len);
    syms.extend_from_slice(hom.prefix().syms());
    let letters_needed = len.saturating_sub(hom.prefix().len());
    let base = generate(choices, letters_needed);
    for i in 0..letters_needed {
        if syms.len() >= len {
            break;
        }
        let image = hom.image_of(base.sym(i) == 1);
        syms.extend_from_slice(image.syms());
    }
    syms.truncate(len);
    FiniteWord::new(hom.alphabet().clone(), syms).expect("valid image prefix")
}

/// The context-free language of bad finite prefixes:
/// `0 ∪ ⋃_n Σ^n (0 Σ^n {01,10,11} ∪ 1 Σ^n {00,11})`. Paired outside-in
/// growth (`X → 0 | σ X τ`, `Y → 1 | σ Y τ`) produces the `Σ^n 0 Σ^n` and
/// `Σ^n 1 Σ^n` cores, since all letter combinations occur.
pub fn complement_grammar() -> Cfg {
    let bin = Alphabet::binary();
    let mut text = String::from("start S\nrule S -> 0\n");
    for suffix in ["0 1", "1 0", "1 1"] {
        text.push_str(&format!("rule S -> X {suffix}\n"));
    }
    for suffix in ["0 0", "1 1"] {
        text.push_str(&format!("rule S -> Y {suffix}\n"));
    }
    text.push_str("rule X -> 0\nrule Y -> 1\n");
    for a in ["0", "1"] {
        for b in ["0", "1"] {
            text.push_str(&format!("rule X -> {a} X {b}\n"));
            text.push_str(&format!("rule Y -> {a} Y {b}\n"));
        }
    }
    Cfg::parse(&bin, &text).expect("complement grammar")
}

/// The ωerCF complement of the coded language `u · h(member set)`: words that
/// break the block coding at all (complement of the safety language
/// `u·{v,w}^ω`), plus correctly coded words whose decoded prefix goes bad
/// (the image of [`complement_grammar`] followed by arbitrary blocks).
pub fn complement_of_image(hom: &WordHom) -> ErcfLanguage {
    let alphabet = hom.alphabet().clone();
    let blocks = [hom.image0().clone(), hom.image1().clone()];
    let safety = Nba::safety_complement_of_blocks(hom.prefix(), &blocks)
        .expect("valid block words");
    let bad_core = complement_grammar()
        .apply_hom(&[hom.image0().clone(), hom.image1().clone()], &alphabet)
        .expect("non-empty images");
    let bad_prefixes = bad_core.prepend(hom.prefix()).expect("same alphabet");
    let tail = Nba::prefixed_blocks(&FiniteWord::empty(alphabet.clone()), &blocks)
        .expect("valid block words");
    ErcfLanguage::new(alphabet, vec![
        ErcfPiece::Regular(safety),
        ErcfPiece::Cl(bad_prefixes, tail),
    ])
    .expect("consistent alphabets")
}

/// The largest position where the two selected members both carry `1`,
/// within their length-`len` prefixes. Position `0` is always shared.
/// Errors when the extended choice sequences coincide.
pub fn shared_support_bound(c1: &ChoiceSeq, c2: &ChoiceSeq, len: usize) -> Result<usize> {
    if c1.same_extended(c2) {
        return Err(Error::Invalid("choice sequences denote the same member".into()));
    }
    let x = generate(c1, len);
    let y = generate(c2, len);
    let shared = (0..len).filter(|&i| x.sym(i) == 1 && y.sym(i) == 1).max();
    shared.ok_or_else(|| Error::Invalid("prefix too short to contain the leading 1".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::tests_support::enumerate_up;
    use crate::words::UpWord;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn fin(text: &str) -> FiniteWord {
        FiniteWord::parse(&bin(), text).unwrap()
    }

    fn choices(text: &str) -> ChoiceSeq {
        ChoiceSeq::parse(text).unwrap()
    }

    fn identity_hom() -> WordHom {
        WordHom::new(fin("1"), fin("0"), fin("1")).unwrap()
    }

    fn all_words_of_len(n: usize) -> Vec<FiniteWord> {
        (0..(1usize << n))
            .map(|bits| {
                let syms: Vec<usize> = (0..n).map(|i| (bits >> i) & 1).collect();
                FiniteWord::new(bin(), syms).unwrap()
            })
            .collect()
    }

    #[test]
    fn window_check_examples() {
        assert!(!window_check(&fin("0")).unwrap());
        assert!(!window_check(&fin("111")).unwrap());
        assert!(window_check(&fin("101001000001")).unwrap());
        assert!(window_check(&FiniteWord::empty(bin())).unwrap());
    }

    #[test]
    fn block_check_examples() {
        assert!(block_check(&fin("1")).unwrap());
        assert!(block_check(&fin("11010001")).unwrap());
        assert!(!block_check(&fin("1001")).unwrap());
        assert!(!block_check(&fin("100")).unwrap());
        assert!(!block_check(&fin("0")).unwrap());
    }

    #[test]
    fn both_checks_coincide_up_to_length_ten() {
        for n in 0..=10 {
            for w in all_words_of_len(n) {
                assert_eq!(
                    window_check(&w).unwrap(),
                    block_check(&w).unwrap(),
                    "diverge on {w}"
                );
            }
        }
    }

    #[test]
    fn generation_examples() {
        assert_eq!(generate(&choices("000"), 8), fin("11010001"));
        assert_eq!(generate(&choices("1"), 2), fin("10"));
    }

    #[test]
    fn generated_prefixes_pass_both_checks() {
        for stem_bits in 0..(1usize << 6) {
            let bits: Vec<bool> = (0..6).map(|i| (stem_bits >> i) & 1 == 1).collect();
            let c = ChoiceSeq::new(bits);
            let p = generate(&c, 64);
            assert!(window_check(&p).unwrap(), "window fails for {c}");
            assert!(block_check(&p).unwrap(), "block fails for {c}");
        }
    }

    #[test]
    fn image_prefix_examples() {
        let hom = identity_hom();
        let c = choices("000");
        let img = image_prefix(&hom, &c, 9);
        let expect = fin("1").concat(&generate(&c, 8)).unwrap();
        assert_eq!(img, expect);

        let doubling = WordHom::new(FiniteWord::empty(bin()), fin("00"), fin("01")).unwrap();
        let img = image_prefix(&doubling, &c, 8);
        // base 1101… codes to 01 01 00 01
        assert_eq!(img, fin("01010001"));

        let prefixed = WordHom::new(fin("110"), fin("0"), fin("1")).unwrap();
        let img = image_prefix(&prefixed, &c, 3);
        assert_eq!(img, fin("110"));
    }

    #[test]
    fn hom_invariants() {
        assert!(WordHom::new(fin("1"), fin("0"), fin("0")).is_err());
        assert!(WordHom::new(fin("1"), fin("01"), fin("1")).is_err());
        assert!(WordHom::new(fin("1"), FiniteWord::empty(bin()), fin("1")).is_err());
    }

    #[test]
    fn complement_grammar_examples() {
        let cnf = complement_grammar().cnf();
        assert!(cnf.member(&fin("0")).unwrap());
        assert!(cnf.member(&fin("111")).unwrap());
        assert!(!cnf.member(&fin("1")).unwrap());
    }

    #[test]
    fn complement_grammar_matches_window_check_up_to_seven() {
        let cnf = complement_grammar().cnf();
        for n in 0..=7 {
            for w in all_words_of_len(n) {
                let mut has_bad_prefix = false;
                for k in 0..=w.len() {
                    if cnf.member(&w.slice(0, k)).unwrap() {
                        has_bad_prefix = true;
                        break;
                    }
                }
                assert_eq!(has_bad_prefix, !window_check(&w).unwrap(), "{w}");
            }
        }
    }

    #[test]
    fn complement_of_image_membership() {
        let e = complement_of_image(&identity_hom());
        let tail_starts_zero = UpWord::parse(&bin(), "(10)").unwrap();
        assert!(e.member_up(&tail_starts_zero).unwrap());
        let zero_tail = UpWord::parse(&bin(), "1(0)").unwrap();
        assert!(e.member_up(&zero_tail).unwrap());
    }

    #[test]
    fn every_lasso_is_in_the_complement() {
        // members have unboundedly growing zero-runs, so no ultimately
        // periodic word is a member
        let e = complement_of_image(&identity_hom());
        for w in enumerate_up(3, 3) {
            assert!(e.member_up(&w).unwrap(), "{w}");
        }
        let coded = WordHom::new(fin("0"), fin("01"), fin("10")).unwrap();
        let e = complement_of_image(&coded);
        for w in enumerate_up(2, 3).into_iter().step_by(3) {
            assert!(e.member_up(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn image_prefixes_never_trip_the_safety_piece() {
        let hom = WordHom::new(fin("0"), fin("01"), fin("10")).unwrap();
        let safety = Nba::safety_complement_of_blocks(
            hom.prefix(),
            &[hom.image0().clone(), hom.image1().clone()],
        )
        .unwrap();
        for stem_bits in 0..8usize {
            let bits: Vec<bool> = (0..3).map(|i| (stem_bits >> i) & 1 == 1).collect();
            let c = ChoiceSeq::new(bits);
            // block-aligned image prefix extended by one block forever stays
            // inside the coded safety language
            let aligned_len = hom.prefix().len() + 6 * hom.block_len();
            let prefix = image_prefix(&hom, &c, aligned_len);
            let w = UpWord::new(prefix, hom.image0().clone()).unwrap();
            assert!(!safety.member_up(&w).unwrap(), "{c}");
        }
    }

    #[test]
    fn shared_support_examples() {
        assert_eq!(shared_support_bound(&choices("0"), &choices("1"), 16).unwrap(), 0);
        assert!(shared_support_bound(&choices("00"), &choices("0"), 16).is_err());

        // equal stems padded differently at index k share nothing past the
        // divergence block
        let c1 = choices("0110");
        let c2 = choices("0111");
        let bound = shared_support_bound(&c1, &c2, 256).unwrap();
        let x = generate(&c1, 256);
        let y = generate(&c2, 256);
        let first_diff = (0..256).find(|&i| x.sym(i) != y.sym(i)).unwrap();
        assert!(bound < first_diff);
    }

    #[test]
    fn shared_support_precedes_divergence_on_random_stems() {
        let mut seed = 0x505u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut done = 0;
        while done < 100 {
            let a: Vec<bool> = (0..8).map(|_| next() % 2 == 1).collect();
            let b: Vec<bool> = (0..8).map(|_| next() % 2 == 1).collect();
            let (c1, c2) = (ChoiceSeq::new(a), ChoiceSeq::new(b));
            if c1.same_extended(&c2) {
                continue;
            }
            let len = 512;
            let bound = shared_support_bound(&c1, &c2, len).unwrap();
            let x = generate(&c1, len);
            let y = generate(&c2, len);
            let first_diff = (0..len).find(|&i| x.sym(i) != y.sym(i)).unwrap();
            assert!(bound < first_diff, "{c1} vs {c2}");
            done += 1;
        }
    }

    #[test]
    fn choice_map_is_antitone_for_small_stems() {
        // exhaustive strict check: stems of equal length ≤ 6 diverge within
        // the first 128 letters
        for len in 1..=6usize {
            for a_bits in 0..(1usize << len) {
                for b_bits in (a_bits + 1)..(1usize << len) {
                    let a: Vec<bool> = (0..len).map(|i| (a_bits >> (len - 1 - i)) & 1 == 1).collect();
                    let b: Vec<bool> = (0..len).map(|i| (b_bits >> (len - 1 - i)) & 1 == 1).collect();
                    // a_bits < b_bits in the usual reading means a <lex b
                    let x = generate(&ChoiceSeq::new(a), 128);
                    let y = generate(&ChoiceSeq::new(b), 128);
                    assert!(x.syms() > y.syms(), "{a_bits:0len$b} vs {b_bits:0len$b}");
                }
            }
        }
    }
}
