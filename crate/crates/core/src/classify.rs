//! Executable classifiers for the two partition constructions without large
//! homogeneous sets, together with brute-force homogeneity checking over
//! finite samples of lasso words and constructive inhomogeneity witnesses.
//!
//! The ternary classifier colors a 3-set `{x, y, z}` with `x < y < z`
//! lexicographically by comparing longest common prefixes: class one when
//! `x ∧ y` is a proper prefix of `y ∧ z`. Its `k`-ary lift classifies a
//! `k`-set by its three lexicographically least members.
//!
//! The pair classifier lives on the block language `(1+0+)^ω`: a pair is in
//! class one when the supports meet finitely often or the words are
//! ultimately equal.

use crate::nba::{Nba, Nfa};
use crate::nlang::{generate, ChoiceSeq};
use crate::words::{Alphabet, CommonPrefix, FiniteWord, UpWord};
use crate::{Error, Result};

/// A two-class verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    E1,
    E2,
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Class::E1 => write!(f, "E1"),
            Class::E2 => write!(f, "E2"),
        }
    }
}

fn require_distinct(words: &[UpWord]) -> Result<()> {
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            if x == y {
                return Err(Error::Invalid("inputs must be pairwise distinct".into()));
            }
        }
    }
    Ok(())
}

/// Classifies a 3-set of distinct binary lasso words: sort lexicographically,
/// then `E1` iff `lcp(x, y)` is strictly shorter than `lcp(y, z)` (both are
/// prefixes of `y`, so length decides prefix order).
pub fn hyper3_classify(x: &UpWord, y: &UpWord, z: &UpWord) -> Result<Class> {
    let mut words = [x.clone(), y.clone(), z.clone()];
    require_distinct(&words)?;
    // insertion sort by lex order
    for i in 1..3 {
        let mut j = i;
        while j > 0 && words[j - 1].lex_cmp(&words[j])? == std::cmp::Ordering::Greater {
            words.swap(j - 1, j);
            j -= 1;
        }
    }
    let low = match words[0].lcp(&words[1])? {
        CommonPrefix::Finite(w) => w,
        CommonPrefix::Infinite => unreachable!("distinct words"),
    };
    let high = match words[1].lcp(&words[2])? {
        CommonPrefix::Finite(w) => w,
        CommonPrefix::Infinite => unreachable!("distinct words"),
    };
    Ok(if low.len() < high.len() { Class::E1 } else { Class::E2 })
}

/// Classifies a set of `k ≥ 3` distinct words by its three lexicographically
/// least members; the remaining classes of the `k`-ary partition are empty.
pub fn hyperk_classify(set: &[UpWord]) -> Result<Class> {
    if set.len() < 3 {
        return Err(Error::Invalid("need at least three words".into()));
    }
    require_distinct(set)?;
    let mut sorted: Vec<&UpWord> = set.iter().collect();
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1].lex_cmp(sorted[j])? == std::cmp::Ordering::Greater {
            sorted.swap(j - 1, j);
            j -= 1;
        }
    }
    hyper3_classify(sorted[0], sorted[1], sorted[2])
}

/// Classifies a pair of distinct members of `(1+0+)^ω`: class one when the
/// supports meet finitely often or the words are ultimately equal.
pub fn pair_classify(x: &UpWord, y: &UpWord) -> Result<Class> {
    require_distinct(&[x.clone(), y.clone()])?;
    let domain = Nba::alternating_blocks();
    if !domain.member_up(x)? || !domain.member_up(y)? {
        return Err(Error::Invalid("pair classifier needs words from (1+0+)^ω".into()));
    }
    Ok(if x.support_meet_finite(y)? || x.ultimately_equal(y)? {
        Class::E1
    } else {
        Class::E2
    })
}

/// Which classifier [`brute_homogeneous`] applies to each subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classifier {
    /// Triples under [`hyper3_classify`].
    Hyper3,
    /// `k`-sets under [`hyperk_classify`].
    Hyperk(usize),
    /// Pairs under [`pair_classify`].
    Pair,
}

impl Classifier {
    fn subset_size(&self) -> usize {
        match self {
            Classifier::Hyper3 => 3,
            Classifier::Hyperk(k) => *k,
            Classifier::Pair => 2,
        }
    }
}

/// Outcome of brute-force homogeneity checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(Class),
    /// Two differently classified subsets.
    Violation { first: (Vec<UpWord>, Class), second: (Vec<UpWord>, Class) },
}

/// Classifies every `k`-subset of a small sample; homogeneous iff all agree.
/// Subsets are enumerated in canonical index order, so violations are
/// deterministic.
pub fn brute_homogeneous(set: &[UpWord], classifier: Classifier) -> Result<Homogeneity> {
    let k = classifier.subset_size();
    require_distinct(set)?;
    if set.len() < k {
        return Err(Error::Invalid(format!("need at least {k} words")));
    }
    if set.len() > 12 {
        return Err(Error::Invalid("brute-force checking is limited to 12 words".into()));
    }
    let mut first: Option<(Vec<UpWord>, Class)> = None;
    let mut indices: Vec<usize> = (0..k).collect();
    loop {
        let subset: Vec<UpWord> = indices.iter().map(|&i| set[i].clone()).collect();
        let class = match classifier {
            Classifier::Hyper3 => hyper3_classify(&subset[0], &subset[1], &subset[2])?,
            Classifier::Hyperk(_) => hyperk_classify(&subset)?,
            Classifier::Pair => pair_classify(&subset[0], &subset[1])?,
        };
        match &first {
            None => first = Some((subset, class)),
            Some((w, c)) if *c != class => {
                return Ok(Homogeneity::Violation {
                    first: (w.clone(), *c),
                    second: (subset, class),
                })
            }
            _ => {}
        }
        // next k-combination of 0..set.len()
        let n = set.len();
        let mut i = k;
        loop {
            if i == 0 {
                let (subset, class) = first.expect("at least one subset");
                let _ = subset;
                return Ok(Homogeneity::Homogeneous(class));
            }
            i -= 1;
            if indices[i] != i + n - k {
                indices[i] += 1;
                for j in i + 1..k {
                    indices[j] = indices[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The length-`len` prefix of the interleaving `1 a_1 1 a_2 1 a_3 ⋯` of the
/// member selected by the choice sequence: even positions carry `1`, odd
/// positions spell the member.
pub fn interleave_blocks(choices: &ChoiceSeq, len: usize) -> FiniteWord {
    let base = generate(choices, len.div_ceil(2));
    let syms: Vec<usize> =
        (0..len).map(|i| if i % 2 == 0 { 1 } else { base.sym((i - 1) / 2) }).collect();
    FiniteWord::new(Alphabet::binary(), syms).expect("binary word")
}

/// A shortest pair of distinct equal-length words from `V+`, or `None` when
/// every two equal-length words of `V+` coincide (then `V^ω` has at most one
/// element). Among shortest pairs the first component with the earliest `1`
/// wins, then the lexicographically least first and second components.
pub fn equal_length_distinct_pair(v: &Nfa) -> Result<Option<(FiniteWord, FiniteWord)>> {
    let plus = v.plus_closure();
    let alphabet = plus.alphabet().clone();
    let n = plus.state_count();
    // reachability over pairs of runs with a divergence flag
    let idx = |p: usize, q: usize, d: usize| (p * n + q) * 2 + d;
    let mut dist = vec![usize::MAX; n * n * 2];
    let start = idx(plus.initial(), plus.initial(), 0);
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    let succ: Vec<Vec<(usize, usize)>> = {
        let mut m = vec![Vec::new(); n];
        for &(p, a, q) in plus.transitions() {
            m[p].push((a, q));
        }
        m
    };
    let mut shortest: Option<usize> = None;
    while let Some(node) = queue.pop_front() {
        let d0 = dist[node];
        if let Some(s) = shortest {
            if d0 >= s {
                continue;
            }
        }
        let diverged = node % 2;
        let q2 = (node / 2) % n;
        let q1 = node / (2 * n);
        for &(a, r1) in &succ[q1] {
            for &(b, r2) in &succ[q2] {
                let d2 = if diverged == 1 || a != b { 1 } else { 0 };
                let next = idx(r1, r2, d2);
                if dist[next] == usize::MAX {
                    dist[next] = d0 + 1;
                    if d2 == 1
                        && plus.accepting().contains(&r1)
                        && plus.accepting().contains(&r2)
                        && shortest.is_none()
                    {
                        shortest = Some(d0 + 1);
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    let Some(len) = shortest else { return Ok(None) };

    // enumerate all word pairs of the shortest length and apply preferences
    let mut candidates: Vec<(FiniteWord, FiniteWord)> = Vec::new();
    let total = alphabet.len().pow(len as u32);
    for first_code in 0..total {
        let first = decode_word(&alphabet, first_code, len);
        if !plus.accepts(&first)? {
            continue;
        }
        for second_code in 0..total {
            if second_code == first_code {
                continue;
            }
            let second = decode_word(&alphabet, second_code, len);
            if plus.accepts(&second)? {
                candidates.push((first.clone(), second));
            }
        }
    }
    let one = alphabet.index_of("1");
    let key = |w: &FiniteWord| -> (usize, Vec<usize>) {
        let first_one = one
            .and_then(|id| w.syms().iter().position(|&s| s == id))
            .unwrap_or(usize::MAX);
        (first_one, w.syms().to_vec())
    };
    candidates.sort_by_key(|(v1, v2)| (key(v1), v2.syms().to_vec()));
    Ok(candidates.into_iter().next())
}

fn decode_word(alphabet: &Alphabet, mut code: usize, len: usize) -> FiniteWord {
    let mut syms = vec![0usize; len];
    for slot in syms.iter_mut().rev() {
        *slot = code % alphabet.len();
        code /= alphabet.len();
    }
    FiniteWord::new(alphabet.clone(), syms).expect("valid decoded word")
}

/// Constructive witnesses that `U·V^ω` is not homogeneous under the pair
/// classifier: from a shortest `u ∈ U` and a shortest distinct equal-length
/// pair `v1, v2 ∈ V+` with `1` occurring in `v1`, the pair
/// `(u(v1 v2)^ω, u(v1 v1)^ω)` shares support at every aligned `v1` yet never
/// becomes equal (class two), while `(u v1 v1^ω, u v2 v1^ω)` differs once
/// and then runs identically (class one).
#[derive(Clone, Debug)]
pub struct InhomogWitness {
    pub class1_pair: (UpWord, UpWord),
    pub class2_pair: (UpWord, UpWord),
}

pub fn inhomog_witness(u: &Nfa, v: &Nfa) -> Result<InhomogWitness> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let prefix = u
        .shortest_accepted()
        .ok_or_else(|| Error::Invalid("the prefix language is empty".into()))?;
    let pair = equal_length_distinct_pair(v)?
        .ok_or_else(|| Error::Invalid("no distinct equal-length pair in the block language".into()))?;
    let one = u.alphabet().index_of("1");
    let contains_one =
        |w: &FiniteWord| one.is_some_and(|id| w.syms().iter().any(|&s| s == id));
    let (v1, v2) = if contains_one(&pair.0) {
        pair
    } else if contains_one(&pair.1) {
        (pair.1, pair.0)
    } else {
        return Err(Error::Invalid("no candidate block contains the letter 1".into()));
    };

    let class2_pair = (
        UpWord::new(prefix.clone(), v1.concat(&v2)?)?,
        UpWord::new(prefix.clone(), v1.concat(&v1)?)?,
    );
    let class1_pair = (
        UpWord::new(prefix.concat(&v1)?, v1.clone())?,
        UpWord::new(prefix.concat(&v2)?, v1.clone())?,
    );
    Ok(InhomogWitness { class1_pair, class2_pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn up(text: &str) -> UpWord {
        UpWord::parse(&bin(), text).unwrap()
    }

    #[test]
    fn hyper3_examples() {
        // the family 1^k 0^ω is class one
        assert_eq!(hyper3_classify(&up("(0)"), &up("1(0)"), &up("11(0)")).unwrap(), Class::E1);
        // the family 0^k 1^ω is class two
        assert_eq!(hyper3_classify(&up("(0)"), &up("00(1)"), &up("0(1)")).unwrap(), Class::E2);
        // x∧y = "0", y∧z = ε
        assert_eq!(hyper3_classify(&up("00(0)"), &up("01(0)"), &up("1(0)")).unwrap(), Class::E2);
        assert!(hyper3_classify(&up("(0)"), &up("0(0)"), &up("1(0)")).is_err());
    }

    #[test]
    fn hyper3_is_permutation_invariant() {
        let words = [up("(0)"), up("1(0)"), up("11(0)"), up("0(1)"), up("(10)")];
        for i in 0..words.len() {
            for j in 0..words.len() {
                for k in 0..words.len() {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let a = hyper3_classify(&words[i], &words[j], &words[k]).unwrap();
                    let b = hyper3_classify(&words[k], &words[i], &words[j]).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn hyperk_depends_on_the_three_least() {
        let core = [up("(0)"), up("1(0)"), up("11(0)")];
        let extended = vec![
            core[0].clone(),
            core[1].clone(),
            core[2].clone(),
            up("111(0)"),
            up("1111(0)"),
        ];
        assert_eq!(hyperk_classify(&extended).unwrap(), Class::E1);
        let triple: Vec<UpWord> = core.to_vec();
        assert_eq!(
            hyperk_classify(&triple).unwrap(),
            hyper3_classify(&core[0], &core[1], &core[2]).unwrap()
        );
        // lex-larger extensions never change the class
        for extra in ["111(10)", "1110(1110)", "(1)"] {
            let mut set = triple.clone();
            set.push(up(extra));
            assert_eq!(hyperk_classify(&set).unwrap(), Class::E1, "{extra}");
        }
    }

    #[test]
    fn pair_examples() {
        // supports eventually on disjoint residues mod 3
        assert_eq!(pair_classify(&up("(100)"), &up("1(010)")).unwrap(), Class::E1);
        // ultimately equal after one shift
        assert_eq!(pair_classify(&up("(10)"), &up("1(10)")).unwrap(), Class::E1);
        // shared residue, never equal
        assert_eq!(pair_classify(&up("(110)"), &up("(101)")).unwrap(), Class::E2);
        // outside the domain
        assert!(pair_classify(&up("(0)"), &up("(10)")).is_err());
    }

    #[test]
    fn brute_force_on_the_two_stated_families() {
        let ones_then_zeros: Vec<UpWord> = (0..6)
            .map(|k| up(&format!("{}(0)", "1".repeat(k))))
            .collect();
        assert_eq!(
            brute_homogeneous(&ones_then_zeros, Classifier::Hyper3).unwrap(),
            Homogeneity::Homogeneous(Class::E1)
        );
        let zeros_then_ones: Vec<UpWord> = (0..6)
            .map(|k| up(&format!("{}(1)", "0".repeat(k))))
            .collect();
        assert_eq!(
            brute_homogeneous(&zeros_then_ones, Classifier::Hyper3).unwrap(),
            Homogeneity::Homogeneous(Class::E2)
        );
    }

    #[test]
    fn brute_force_finds_violations() {
        let mixed = vec![up("(0)"), up("1(0)"), up("0(1)"), up("11(0)")];
        match brute_homogeneous(&mixed, Classifier::Hyper3).unwrap() {
            Homogeneity::Violation { first, second } => {
                assert_ne!(first.1, second.1);
                // both exhibited subsets re-classify as reported
                let f = hyper3_classify(&first.0[0], &first.0[1], &first.0[2]).unwrap();
                let s = hyper3_classify(&second.0[0], &second.0[1], &second.0[2]).unwrap();
                assert_eq!(f, first.1);
                assert_eq!(s, second.1);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn interleaving_carries_ones_on_even_positions() {
        let c = ChoiceSeq::parse("0").unwrap();
        let w = interleave_blocks(&c, 16);
        // base member starts 11010001
        assert_eq!(w.to_string(), "1111101110101011".to_string());
        for i in (0..16).step_by(2) {
            assert_eq!(w.sym(i), 1);
        }
    }

    #[test]
    fn interleaved_pairs_behave_like_class_two() {
        let c1 = ChoiceSeq::parse("01").unwrap();
        let c2 = ChoiceSeq::parse("10").unwrap();
        let x = interleave_blocks(&c1, 512);
        let y = interleave_blocks(&c2, 512);
        // infinite shared support at even positions, persistent differences
        let diffs = (0..512).filter(|&i| x.sym(i) != y.sym(i)).count();
        assert!(diffs > 0);
        let last_shared = (0..512).rev().find(|&i| x.sym(i) == 1 && y.sym(i) == 1).unwrap();
        let last_diff = (0..512).rev().find(|&i| x.sym(i) != y.sym(i)).unwrap();
        assert!(last_shared > 256 && last_diff > 128);
    }

    #[test]
    fn equal_length_pair_examples() {
        // V = {10, 01}
        let v = Nfa::new(bin(), 4, 0, [3], [(0, 1, 1), (1, 0, 3), (0, 0, 2), (2, 1, 3)]).unwrap();
        let (v1, v2) = equal_length_distinct_pair(&v).unwrap().unwrap();
        assert_eq!(v1.to_string(), "10");
        assert_eq!(v2.to_string(), "01");

        // V = {0}: all powers coincide
        let v = Nfa::new(bin(), 2, 0, [1], [(0, 0, 1)]).unwrap();
        assert!(equal_length_distinct_pair(&v).unwrap().is_none());

        // V = {1, 11}: equal-length elements of V+ coincide
        let v = Nfa::new(bin(), 3, 0, [1, 2], [(0, 1, 1), (1, 1, 2)]).unwrap();
        assert!(equal_length_distinct_pair(&v).unwrap().is_none());
    }

    #[test]
    fn inhomogeneity_witnesses() {
        let u = Nfa::new(bin(), 2, 0, [1], [(0, 1, 1)]).unwrap();
        let v = Nfa::new(bin(), 4, 0, [3], [(0, 1, 1), (1, 0, 3), (0, 0, 2), (2, 1, 3)]).unwrap();
        let w = inhomog_witness(&u, &v).unwrap();
        assert_eq!(w.class2_pair.0, up("1(1001)"));
        assert_eq!(w.class2_pair.1, up("1(1010)"));
        assert_eq!(w.class1_pair.0, up("1(10)"));
        assert_eq!(w.class1_pair.1, up("101(10)"));
        assert_eq!(pair_classify(&w.class2_pair.0, &w.class2_pair.1).unwrap(), Class::E2);
        assert_eq!(pair_classify(&w.class1_pair.0, &w.class1_pair.1).unwrap(), Class::E1);

        let v0 = Nfa::new(bin(), 2, 0, [1], [(0, 0, 1)]).unwrap();
        assert!(inhomog_witness(&u, &v0).is_err());
    }

    #[test]
    fn witnesses_reverify_for_randomized_blocks() {
        // several small block languages over which U·V^ω stays inside the
        // domain of the pair classifier
        let u = Nfa::new(bin(), 2, 0, [1], [(0, 1, 1)]).unwrap();
        let block_sets: Vec<Vec<&str>> = vec![
            vec!["10", "01"],
            vec!["100", "010"],
            vec!["10", "10", "01"],
            vec!["1100", "1010"],
            vec!["110", "101"],
        ];
        for blocks in block_sets {
            let words: Vec<FiniteWord> =
                blocks.iter().map(|t| FiniteWord::parse(&bin(), t).unwrap()).collect();
            // build an NFA accepting exactly the block set
            let mut transitions = Vec::new();
            let mut states = 1usize;
            let mut finals = Vec::new();
            for w in &words {
                let mut cur = 0usize;
                for (i, &s) in w.syms().iter().enumerate() {
                    let next = states;
                    states += 1;
                    transitions.push((cur, s, next));
                    cur = next;
                    if i + 1 == w.len() {
                        finals.push(cur);
                    }
                }
            }
            let v = Nfa::new(bin(), states, 0, finals, transitions).unwrap();
            let w = inhomog_witness(&u, &v).unwrap();
            assert_eq!(
                pair_classify(&w.class2_pair.0, &w.class2_pair.1).unwrap(),
                Class::E2,
                "{blocks:?}"
            );
            assert_eq!(
                pair_classify(&w.class1_pair.0, &w.class1_pair.1).unwrap(),
                Class::E1,
                "{blocks:?}"
            );
        }
    }
}
