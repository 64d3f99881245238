//! Batch command line over the omega-clique library.
//!
//! Output is line oriented (`KEY value`) for shell composition; exit code 0
//! means an affirmative verdict or plain success, 1 a negative verdict, and
//! 2 a usage or format error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use omega_clique::classify::{self, Classifier, Homogeneity};
use omega_clique::clique::{self, Refutation, TripleCandidate, VerifyOutcome};
use omega_clique::nba::{Nba, Nfa};
use omega_clique::nlang::{self, ChoiceSeq, WordHom};
use omega_clique::words::{infer_alphabet, Alphabet, FiniteWord, UpWord};
use omega_clique::{algebra, Error};

#[derive(Parser)]
#[command(
    name = "omega-clique",
    about = "Ultimately periodic words, Büchi automata, and homogeneity of coded cliques in ω-automatic graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relations between ultimately periodic words, given as literals `u(v)`.
    #[command(subcommand)]
    Word(WordCmd),
    /// Büchi automaton operations over the text format.
    #[command(subcommand)]
    Nba(NbaCmd),
    /// The ω-language of growing zero-blocks and its codings.
    #[command(subcommand)]
    Nlang(NlangCmd),
    /// Homogeneity of coded clique candidates over a presentation bundle.
    #[command(subcommand)]
    Clique(CliqueCmd),
    /// Hypergraph and pair classifiers with brute-force checks.
    #[command(subcommand)]
    Cx(CxCmd),
    /// Partial orders as four-class presentations.
    #[command(subcommand)]
    Poset(PosetCmd),
}

#[derive(Subcommand)]
enum WordCmd {
    /// Lexicographic comparison.
    Cmp { w1: String, w2: String },
    /// Are the words ultimately equal?
    Simeq { w1: String, w2: String },
    /// Do the supports meet only finitely often? (binary words)
    Suppmeet { w1: String, w2: String },
    /// Longest common prefix.
    Lcp { w1: String, w2: String },
    /// Convolution into a word over the pair alphabet.
    Convolve { w1: String, w2: String },
}

#[derive(Subcommand)]
enum NbaCmd {
    /// Is the word accepted?
    Member {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Is the language empty?
    Empty {
        #[arg(long)]
        automaton: PathBuf,
    },
    /// Print a witness lasso if the language is non-empty.
    Witness {
        #[arg(long)]
        automaton: PathBuf,
    },
    /// Intersection of two automata (pass --automaton twice).
    Product {
        #[arg(long, num_args = 1, action = clap::ArgAction::Append)]
        automaton: Vec<PathBuf>,
    },
    /// Complement through the profile monoid (desk-scale automata).
    Complement {
        #[arg(long)]
        automaton: PathBuf,
    },
}

#[derive(Subcommand)]
enum NlangCmd {
    /// Is the binary word viable as a member prefix?
    Check { bits: String },
    /// Generate the member prefix selected by a choice sequence.
    Gen {
        #[arg(long)]
        choices: String,
        #[arg(long)]
        len: usize,
    },
    /// Generate a coded member prefix under `0 ↦ v`, `1 ↦ w` after `u`.
    Image {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        choices: String,
        #[arg(long)]
        len: usize,
    },
}

#[derive(Subcommand)]
enum CliqueCmd {
    /// Verify that the coded candidate is homogeneous for one class.
    Verify {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        class: usize,
    },
    /// Search candidate triples in canonical order.
    Find {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long, value_name = "n")]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum CxCmd {
    /// Classify a triple of distinct binary words.
    Hyper3 { w1: String, w2: String, w3: String },
    /// Classify a pair from the block language `(1+0+)^ω`.
    Pair { w1: String, w2: String },
    /// Constructive inhomogeneity witnesses for `U·V^ω`.
    Inhomog {
        #[arg(long = "U")]
        u: PathBuf,
        #[arg(long = "V")]
        v: PathBuf,
    },
    /// Brute-force homogeneity over a small word sample.
    Brute {
        #[arg(long)]
        classifier: ClassifierArg,
        /// Subset size for the k-ary classifier.
        #[arg(long, default_value_t = 3)]
        k: usize,
        words: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifierArg {
    Hyper3,
    Hyperk,
    Pair,
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Build the four-class presentation of a partial order.
    Partition(PosetPartition),
}

#[derive(Args)]
struct PosetPartition {
    #[arg(long = "L")]
    domain: PathBuf,
    #[arg(long)]
    eq: PathBuf,
    #[arg(long)]
    leq: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn yes_no(affirmative: bool) -> ExitCode {
    println!("RESULT {}", if affirmative { "yes" } else { "no" });
    ExitCode::from(u8::from(!affirmative))
}

fn parse_words(literals: &[&str]) -> Result<Vec<UpWord>, Error> {
    let alphabet = infer_alphabet(literals)?;
    literals.iter().map(|l| UpWord::parse(&alphabet, l)).collect()
}

fn load_nba(path: &PathBuf) -> Result<Nba, Error> {
    Nba::parse(&std::fs::read_to_string(path)?)
}

fn load_nfa(path: &PathBuf) -> Result<Nfa, Error> {
    Nfa::parse(&std::fs::read_to_string(path)?)
}

fn render_finite(w: &FiniteWord) -> String {
    if w.is_empty() {
        "eps".to_string()
    } else {
        w.to_string()
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Word(cmd) => run_word(cmd),
        Command::Nba(cmd) => run_nba(cmd),
        Command::Nlang(cmd) => run_nlang(cmd),
        Command::Clique(cmd) => run_clique(cmd),
        Command::Cx(cmd) => run_cx(cmd),
        Command::Poset(PosetCmd::Partition(args)) => run_poset(args),
    }
}

fn run_word(cmd: WordCmd) -> Result<ExitCode, Error> {
    match cmd {
        WordCmd::Cmp { w1, w2 } => {
            let ws = parse_words(&[&w1, &w2])?;
            let order = match ws[0].lex_cmp(&ws[1])? {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            println!("ORDER {order}");
            Ok(ExitCode::SUCCESS)
        }
        WordCmd::Simeq { w1, w2 } => {
            let ws = parse_words(&[&w1, &w2])?;
            Ok(yes_no(ws[0].ultimately_equal(&ws[1])?))
        }
        WordCmd::Suppmeet { w1, w2 } => {
            let ws = parse_words(&[&w1, &w2])?;
            Ok(yes_no(ws[0].support_meet_finite(&ws[1])?))
        }
        WordCmd::Lcp { w1, w2 } => {
            let ws = parse_words(&[&w1, &w2])?;
            match ws[0].lcp(&ws[1])? {
                omega_clique::words::CommonPrefix::Infinite => println!("LCP infinite"),
                omega_clique::words::CommonPrefix::Finite(p) => {
                    println!("LCP {}", render_finite(&p))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        WordCmd::Convolve { w1, w2 } => {
            let ws = parse_words(&[&w1, &w2])?;
            println!("WORD {}", UpWord::convolve(&ws)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_nba(cmd: NbaCmd) -> Result<ExitCode, Error> {
    match cmd {
        NbaCmd::Member { automaton, word } => {
            let a = load_nba(&automaton)?;
            let w = UpWord::parse(a.alphabet(), &word)?;
            Ok(yes_no(a.member_up(&w)?))
        }
        NbaCmd::Empty { automaton } => {
            let a = load_nba(&automaton)?;
            match a.witness() {
                None => Ok(yes_no(true)),
                Some(w) => {
                    println!("RESULT no");
                    println!("WITNESS {w}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        NbaCmd::Witness { automaton } => {
            let a = load_nba(&automaton)?;
            match a.witness() {
                Some(w) => {
                    println!("RESULT yes");
                    println!("WITNESS {w}");
                    Ok(ExitCode::SUCCESS)
                }
                None => Ok(yes_no(false)),
            }
        }
        NbaCmd::Product { automaton } => {
            let [first, second] = automaton.as_slice() else {
                return Err(Error::Invalid("product expects --automaton twice".into()));
            };
            let product = load_nba(first)?.product(&load_nba(second)?)?;
            print!("{}", product.to_text());
            Ok(ExitCode::SUCCESS)
        }
        NbaCmd::Complement { automaton } => {
            let complement = algebra::complement(&load_nba(&automaton)?)?.trimmed();
            print!("{}", complement.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_nlang(cmd: NlangCmd) -> Result<ExitCode, Error> {
    let binary = Alphabet::binary();
    match cmd {
        NlangCmd::Check { bits } => {
            let word = FiniteWord::parse(&binary, &bits)?;
            Ok(yes_no(nlang::window_check(&word)?))
        }
        NlangCmd::Gen { choices, len } => {
            let c = ChoiceSeq::parse(&choices)?;
            println!("PREFIX {}", nlang::generate(&c, len));
            Ok(ExitCode::SUCCESS)
        }
        NlangCmd::Image { u, v, w, choices, len } => {
            let alphabet = infer_alphabet(&[&u, &v, &w])?;
            let hom = WordHom::new(
                FiniteWord::parse(&alphabet, &u)?,
                FiniteWord::parse(&alphabet, &v)?,
                FiniteWord::parse(&alphabet, &w)?,
            )?;
            let c = ChoiceSeq::parse(&choices)?;
            println!("PREFIX {}", nlang::image_prefix(&hom, &c, len));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_clique(cmd: CliqueCmd) -> Result<ExitCode, Error> {
    match cmd {
        CliqueCmd::Verify { bundle, u, v, w, class } => {
            let presentation = clique::Presentation::load(&bundle)?;
            let alphabet = presentation.alphabet().clone();
            let t = TripleCandidate::new(
                FiniteWord::parse(&alphabet, &u)?,
                FiniteWord::parse(&alphabet, &v)?,
                FiniteWord::parse(&alphabet, &w)?,
            )?;
            match clique::verify(&presentation, &t, class)? {
                VerifyOutcome::Holds => Ok(yes_no(true)),
                VerifyOutcome::FailsSubset(verdict) => {
                    println!("RESULT no");
                    println!("STAGE subset");
                    if let Some(Refutation::Word(x)) = verdict.witness {
                        println!("WITNESS {x}");
                    }
                    Ok(ExitCode::from(1))
                }
                VerifyOutcome::FailsPair(verdict) => {
                    println!("RESULT no");
                    println!("STAGE pair");
                    if let Some(Refutation::Pair { left, right, class }) = verdict.witness {
                        println!("PAIR {left} {right}");
                        println!("CLASS E{class}");
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        CliqueCmd::Find { bundle, max_len } => {
            let presentation = clique::Presentation::load(&bundle)?;
            match clique::find_triple(&presentation, max_len)? {
                Some((t, class)) => {
                    println!("RESULT yes");
                    println!("TRIPLE {} {} {}", t.u(), t.v(), t.w());
                    println!("CLASS E{class}");
                    Ok(ExitCode::SUCCESS)
                }
                None => Ok(yes_no(false)),
            }
        }
    }
}

fn run_cx(cmd: CxCmd) -> Result<ExitCode, Error> {
    match cmd {
        CxCmd::Hyper3 { w1, w2, w3 } => {
            let ws = parse_words(&[&w1, &w2, &w3])?;
            let class = classify::hyper3_classify(&ws[0], &ws[1], &ws[2])?;
            println!("CLASS {class}");
            Ok(ExitCode::SUCCESS)
        }
        CxCmd::Pair { w1, w2 } => {
            let ws = parse_words(&[&w1, &w2])?;
            let class = classify::pair_classify(&ws[0], &ws[1])?;
            println!("CLASS {class}");
            Ok(ExitCode::SUCCESS)
        }
        CxCmd::Inhomog { u, v } => {
            let witness = classify::inhomog_witness(&load_nfa(&u)?, &load_nfa(&v)?)?;
            println!("CLASS E1");
            println!("PAIR {} {}", witness.class1_pair.0, witness.class1_pair.1);
            println!("CLASS E2");
            println!("PAIR {} {}", witness.class2_pair.0, witness.class2_pair.1);
            Ok(ExitCode::SUCCESS)
        }
        CxCmd::Brute { classifier, k, words } => {
            let literals: Vec<&str> = words.iter().map(String::as_str).collect();
            let ws = parse_words(&literals)?;
            let classifier = match classifier {
                ClassifierArg::Hyper3 => Classifier::Hyper3,
                ClassifierArg::Hyperk => Classifier::Hyperk(k),
                ClassifierArg::Pair => Classifier::Pair,
            };
            match classify::brute_homogeneous(&ws, classifier)? {
                Homogeneity::Homogeneous(class) => {
                    println!("RESULT yes");
                    println!("CLASS {class}");
                    Ok(ExitCode::SUCCESS)
                }
                Homogeneity::Violation { first, second } => {
                    println!("RESULT no");
                    for (subset, class) in [first, second] {
                        let rendered: Vec<String> =
                            subset.iter().map(|w| w.to_string()).collect();
                        println!("VIOLATION {class} {}", rendered.join(" "));
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn run_poset(args: PosetPartition) -> Result<ExitCode, Error> {
    let domain = load_nba(&args.domain)?;
    let eq = load_nba(&args.eq)?;
    let leq = load_nba(&args.leq)?;
    let presentation = clique::poset_partition(&domain, &eq, &leq)?;
    presentation.write(&args.out)?;
    println!("WROTE {}", args.out.join("L.nba").display());
    println!("WROTE {}", args.out.join("eq.nba").display());
    for i in 1..=presentation.edges().len() {
        println!("WROTE {}", args.out.join(format!("E{i}.nba")).display());
    }
    Ok(ExitCode::SUCCESS)
}
