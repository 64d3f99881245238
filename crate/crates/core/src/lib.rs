//! Decision procedures for cliques and anticliques in ω-automatic graphs.
//!
//! The computable fragment of ω-words is modelled by ultimately periodic
//! lassos ([`words::UpWord`]). On top of that the crate provides
//! nondeterministic Büchi automata with products, emptiness and UP-word
//! membership ([`nba`]), the transition-profile algebra behind ω-regular
//! recognition and complementation ([`algebra`]), context-free machinery for
//! eventually regular context-free ω-languages ([`grammar`]), the ω-language
//! of growing zero-blocks together with its coded clique families ([`nlang`]),
//! hypergraph and pair classifiers with brute-force homogeneity checks
//! ([`classify`]), and the homogeneity decision procedure over ω-automatic
//! presentations ([`clique`]).

pub mod algebra;
pub mod classify;
pub mod clique;
pub mod grammar;
pub mod nba;
pub mod nlang;
pub mod words;

pub use words::{Alphabet, FiniteWord, UpWord};

/// Errors shared by all modules of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("operation requires the binary alphabet 0 1")]
    NonBinaryAlphabet,
    #[error("period of an ultimately periodic word must be non-empty")]
    EmptyPeriod,
    #[error("operation requires a non-empty word")]
    EmptyWord,
    #[error("homomorphic image of a terminal must be non-empty")]
    EmptyImage,
    #[error("block words must be non-empty and of equal length")]
    UnequalBlockLengths,
    #[error("word of length {len} exceeds the membership bound {bound}")]
    MembershipBound { len: usize, bound: usize },
    #[error("transition profile monoid exceeds the cap of {cap} elements")]
    MonoidCap { cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
