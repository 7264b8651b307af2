//! `latkit`: command-line front end.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails (the
//! counterexample is printed), 2 for usage, parse and validation errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latkit::enumerate::{self, CorpusOptions, DEFAULT_MAX_LATTICE, MAX_POSET};
use latkit::io::read_algebra;
use latkit::katrinak::{self, ConversePart, Functor, KappaDualVariant, KatrinakError};
use latkit::logic::{self, LogicSpec, ProofVerdict};
use latkit::varieties::{catalog, check_membership, Report};
use latkit::{
    check_identity, check_quasi_identity, eval_term, parse_quasi_identity, parse_term, FiniteAlgebra, Identity,
};

#[derive(Parser)]
#[command(name = "latkit", version, about = "Finite-model workbench for lattice-based algebras and their logics")]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Converse {
    Implication,
    CoImplication,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Membership of an algebra in a catalog variety, axiom by axiom.
    Check {
        file: PathBuf,
        #[arg(long)]
        variety: String,
    },
    /// Value of a term under a valuation such as `x=a,y=1`.
    Eval {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, default_value = "")]
        valuation: String,
    },
    /// Decides the identity `lhs ~ rhs`.
    Identity {
        file: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Decides a quasi-identity `s1 ~ t1 & ... => s ~ t`.
    Quasi {
        file: PathBuf,
        #[arg(long)]
        spec: String,
    },
    /// The κ and κ^d tables against the implications, or the converse.
    Katrinak {
        file: PathBuf,
        #[arg(long, value_enum)]
        converse: Option<Converse>,
        #[arg(long, default_value = "strict-dual")]
        variant: KappaDualVariant,
    },
    /// Applies a functor and its inverse and compares tables.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        functor: Functor,
    },
    /// Lists (and optionally writes) the corpus.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_LATTICE)]
        max_lattice: usize,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a proof script.
    Prove {
        script: PathBuf,
        #[arg(long)]
        logic: String,
    },
    /// Soundness of a logic over its models in the corpus.
    Soundness {
        #[arg(long)]
        logic: String,
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
        #[arg(long, default_value_t = 32)]
        max_lattice: usize,
    },
}

/// A failure that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn load(path: &Path) -> Result<FiniteAlgebra, Usage> {
    Ok(read_algebra(path)?)
}

fn print_report(r: &Report) -> bool {
    print!("{r}");
    r.holds()
}

fn check_caps(max_poset: usize, max_lattice: usize) -> Result<CorpusOptions, Usage> {
    if !(1..=MAX_POSET).contains(&max_poset) {
        return Err(Usage(format!("--max-poset must be between 1 and {MAX_POSET}")));
    }
    if max_lattice == 0 {
        return Err(Usage("--max-lattice must be positive".into()));
    }
    Ok(CorpusOptions::new(max_poset, max_lattice))
}

fn cmd_check(file: &Path, variety: &str) -> Outcome {
    let spec = catalog(variety)?;
    let a = load(file)?;
    Ok(print_report(&check_membership(&a, &spec)?))
}

fn parse_valuation(a: &FiniteAlgebra, text: &str) -> Result<BTreeMap<String, usize>, Usage> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (var, label) = part.split_once('=').ok_or_else(|| Usage(format!("expected var=element, found {part:?}")))?;
        let e = a.index_of(label.trim()).ok_or_else(|| Usage(format!("{} has no element {label:?}", a.name())))?;
        out.insert(var.trim().to_string(), e);
    }
    Ok(out)
}

fn cmd_eval(file: &Path, term: &str, valuation: &str) -> Outcome {
    let t = parse_term(term)?;
    let a = load(file)?;
    let v = parse_valuation(&a, valuation)?;
    println!("{}", a.label(eval_term(&a, &t, &v)?));
    Ok(true)
}

fn cmd_identity(file: &Path, lhs: &str, rhs: &str) -> Outcome {
    let id = Identity::new(parse_term(lhs)?, parse_term(rhs)?);
    let a = load(file)?;
    let v = check_identity(&a, &id)?;
    println!("{}", v.describe(&a));
    Ok(v.holds())
}

fn cmd_quasi(file: &Path, spec: &str) -> Outcome {
    let q = parse_quasi_identity(spec)?;
    let a = load(file)?;
    let v = check_quasi_identity(&a, &q)?;
    println!("{}", v.describe(&a));
    Ok(v.holds())
}

/// Katriňák failures that are verdicts rather than usage errors.
fn katrinak_outcome<T>(r: Result<T, KatrinakError>, on_ok: impl FnOnce(T) -> bool) -> Outcome {
    match r {
        Ok(x) => Ok(on_ok(x)),
        Err(
            e @ (KatrinakError::NotInSourceVariety { .. }
            | KatrinakError::TheoremViolation { .. }
            | KatrinakError::RoundTripFailure { .. }),
        ) => {
            println!("{e}");
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_katrinak(file: &Path, converse: Option<Converse>, variant: KappaDualVariant) -> Outcome {
    let a = load(file)?;
    let r = match converse {
        None => katrinak::katrinak_check(&a, variant),
        Some(c) => {
            let part = match c {
                Converse::Implication => ConversePart::Implication,
                Converse::CoImplication => ConversePart::CoImplication,
                Converse::Both => ConversePart::Both,
            };
            katrinak::converse_check(&a, part)
        }
    };
    katrinak_outcome(r, |report| print_report(&report))
}

fn cmd_roundtrip(file: &Path, functor: Functor) -> Outcome {
    let a = load(file)?;
    katrinak_outcome(katrinak::roundtrip_check(&a, functor), |()| {
        println!("ROUNDTRIP {functor}: OK");
        true
    })
}

fn cmd_enumerate(opts: &CorpusOptions, filter: Option<&str>, out: Option<&Path>) -> Outcome {
    let algebras = match filter {
        None => {
            let mut all = enumerate::lattices(opts)?;
            all.extend(enumerate::de_morgan_algebras(opts)?);
            all
        }
        Some(v) => enumerate::build_corpus_with(opts, v)?,
    };
    for a in &algebras {
        println!("{} {} {} {}", a.name(), a.n(), enumerate::variety_flags(a).join(","), a.canonical_form().digest());
    }
    println!("TOTAL {}", algebras.len());
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Usage(format!("{}: {e}", dir.display())))?;
        enumerate::write_corpus(dir, &algebras)?;
    }
    Ok(true)
}

fn cmd_prove(script: &Path, logic: &str) -> Outcome {
    let spec = LogicSpec::by_name(logic)?;
    let text = std::fs::read_to_string(script).map_err(|e| Usage(format!("{}: {e}", script.display())))?;
    let d = logic::parse_script(&text).map_err(|e| Usage(format!("{}: {e}", script.display())))?;
    let v = logic::check_derivation(&spec, &d);
    println!("{v}");
    Ok(matches!(v, ProofVerdict::Valid(_)))
}

fn cmd_soundness(logic: &str, opts: &CorpusOptions) -> Outcome {
    let spec = LogicSpec::by_name(logic)?;
    let models = match std::env::var_os("LATKIT_CORPUS") {
        Some(dir) => spec.models_from(&enumerate::read_corpus(Path::new(&dir))?)?,
        None => spec.models(opts)?,
    };
    if models.is_empty() {
        return Err(Usage(format!("no {} models in the corpus", spec.model_class)));
    }
    Ok(print_report(&logic::soundness_check(&spec, &models)?))
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Check { file, variety } => cmd_check(&file, &variety),
        Command::Eval { file, term, valuation } => cmd_eval(&file, &term, &valuation),
        Command::Identity { file, lhs, rhs } => cmd_identity(&file, &lhs, &rhs),
        Command::Quasi { file, spec } => cmd_quasi(&file, &spec),
        Command::Katrinak { file, converse, variant } => cmd_katrinak(&file, converse, variant),
        Command::Roundtrip { file, functor } => cmd_roundtrip(&file, functor),
        Command::Enumerate { max_poset, max_lattice, filter, out } => {
            cmd_enumerate(&check_caps(max_poset, max_lattice)?, filter.as_deref(), out.as_deref())
        }
        Command::Prove { script, logic } => cmd_prove(&script, &logic),
        Command::Soundness { logic, max_poset, max_lattice } => cmd_soundness(&logic, &check_caps(max_poset, max_lattice)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
