//! Katriňák's terms for the Heyting implication and its dual, the converse
//! checks, and the term-equivalence functors with their round trips.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra, Op};
use crate::term::{self, check_identity, tabulate, EvalError, Identity, Term, Valuation, Verdict};
use crate::varieties::{catalog, check_membership, check_suite, Axiom, Report, ReportKind, VarietyError, VarietySpec};

/// κ(x, y), the implication of a regular double p-algebra.
pub const KAPPA: &str = "(x* \\/ y**)** /\\ ((x \\/ x*)+ \\/ x* \\/ y \\/ y*)";
/// κ^d(x, y) as the formal dual of κ.
pub const KAPPA_D_STRICT: &str = "(x+ /\\ y++)++ \\/ ((x /\\ x+)* /\\ x+ /\\ y /\\ y+)";
/// κ^d(x, y) with `(x \/ x+)*` in the second disjunct. That factor is
/// always 0, so this form does not compute the co-implication.
pub const KAPPA_D_PRINTED: &str = "(x+ /\\ y++)++ \\/ ((x \\/ x+)* /\\ x+ /\\ y /\\ y+)";
/// κ with `+` realized as `'*'`, for De Morgan p-algebras.
pub const KAPPA_DM: &str = "(x* \\/ y**)** /\\ ((x \\/ x*)'*' \\/ x* \\/ y \\/ y*)";
/// Implication with `'` in place of `+`, as it appears in one display of the
/// converse argument. Only meaningful where `'` is present.
pub const KAPPA_PRIMED: &str = "(x* \\/ y**)** /\\ ((x \\/ x*)' \\/ (x* \\/ (y \\/ y*)))";

pub fn kappa_term() -> Term {
    term::term(KAPPA)
}

pub fn kappa_dual_term(variant: KappaDualVariant) -> Term {
    term::term(match variant {
        KappaDualVariant::Printed => KAPPA_D_PRINTED,
        KappaDualVariant::StrictDual => KAPPA_D_STRICT,
    })
}

/// κ for De Morgan p-algebras.
pub fn kappa_dm_term() -> Term {
    term::term(KAPPA_DM)
}

/// Strict κ^d for De Morgan p-algebras.
pub fn kappa_dual_dm_term() -> Term {
    kappa_dual_term(KappaDualVariant::StrictDual).plus_via_prime()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum KappaDualVariant {
    Printed,
    #[default]
    StrictDual,
}

impl FromStr for KappaDualVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "printed" | "as-printed" => Ok(KappaDualVariant::Printed),
            "strict-dual" | "strict" => Ok(KappaDualVariant::StrictDual),
            other => Err(format!("unknown variant {other}; expected printed or strict-dual")),
        }
    }
}

impl fmt::Display for KappaDualVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KappaDualVariant::Printed => "printed",
            KappaDualVariant::StrictDual => "strict-dual",
        })
    }
}

fn eval2(a: &FiniteAlgebra, t: &Term, x: Elem, y: Elem) -> Result<Elem, EvalError> {
    let v: Valuation = [("x".to_string(), x), ("y".to_string(), y)].into();
    term::eval_term(a, t, &v)
}

/// κ(x, y) on an algebra with `*` and `+`.
pub fn kappa(a: &FiniteAlgebra, x: Elem, y: Elem) -> Result<Elem, EvalError> {
    eval2(a, &kappa_term(), x, y)
}

/// κ^d(x, y) in the chosen variant.
pub fn kappa_dual(a: &FiniteAlgebra, x: Elem, y: Elem, variant: KappaDualVariant) -> Result<Elem, EvalError> {
    eval2(a, &kappa_dual_term(variant), x, y)
}

/// κ tabulated row-major, like the arrow table.
pub fn kappa_table(a: &FiniteAlgebra) -> Result<Vec<Elem>, EvalError> {
    tabulate(a, &kappa_term(), &["x", "y"])
}

pub fn kappa_dual_table(a: &FiniteAlgebra, variant: KappaDualVariant) -> Result<Vec<Elem>, EvalError> {
    tabulate(a, &kappa_dual_term(variant), &["x", "y"])
}

// ---------------------------------------------------------------------------
// Errors

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KatrinakError {
    #[error("not in {class}: {axiom} {detail}")]
    NotInSourceVariety { class: String, axiom: String, detail: String },
    #[error("{functor}: result is not in {class}: {axiom} {detail}")]
    TheoremViolation { functor: String, class: String, axiom: String, detail: String },
    #[error("{functor}: round trip differs at {op}({args}): expected {expected}, got {got}")]
    RoundTripFailure { functor: String, op: Op, args: String, expected: String, got: String },
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn require(a: &FiniteAlgebra, class: &str) -> Result<FiniteAlgebra, KatrinakError> {
    let spec = catalog(class)?;
    let view = a.clone().restrict(&spec.required_ops);
    let report = check_membership(&view, &spec)?;
    match report.first_failure() {
        None => Ok(view),
        Some(e) => Err(KatrinakError::NotInSourceVariety {
            class: class.to_string(),
            axiom: e.name.clone(),
            detail: e.detail.clone(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Functors

/// The signature-changing constructions. Each has a source and a target
/// class and an inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Functor {
    /// RDBLP to RDBLH: `->` := κ, `<-` := κ^d.
    Dblh,
    /// RDBLH to RDBLP: `*` := x -> 0, `+` := x <- 1.
    DblpFromDblh,
    /// RDBLP to RDPCH: `->` := κ, keeping `+`.
    Dpch,
    /// RDPCH to RDBLP: `*` := x -> 0.
    DblpFromDpch,
    /// RDBLP to RPCHd: `<-` := κ^d, keeping `*`.
    Pchd,
    /// RPCHd to RDBLP: `+` := x <- 1.
    DblpFromPchd,
    /// RDMP to RDMH: `->` := κ with `+` realized as `'*'`.
    Dmh,
    /// RDMH to RDMP: `*` := x -> 0.
    DmpFromDmh,
    /// RDMP to RDMDBLH: both implications, `+` realized as `'*'`.
    Dmdblh,
    /// RDMDBLH to RDMP: `*` := x -> 0.
    DmpFromDmdblh,
    /// RDMP to RDMDBLP: `+` := x'*'.
    Dmdblp,
    /// RDMDBLP to RDMP: forget `+`.
    DmpFromDmdblp,
}

impl Functor {
    pub const ALL: [Functor; 12] = [
        Functor::Dblh,
        Functor::DblpFromDblh,
        Functor::Dpch,
        Functor::DblpFromDpch,
        Functor::Pchd,
        Functor::DblpFromPchd,
        Functor::Dmh,
        Functor::DmpFromDmh,
        Functor::Dmdblh,
        Functor::DmpFromDmdblh,
        Functor::Dmdblp,
        Functor::DmpFromDmdblp,
    ];

    /// The superscript naming the construction.
    pub fn tag(self) -> &'static str {
        use Functor::*;
        match self {
            Dblh => "dblh",
            DblpFromDblh | DblpFromDpch | DblpFromPchd => "dblp",
            Dpch => "dpch",
            Pchd => "pchd",
            Dmh => "dmh",
            DmpFromDmh | DmpFromDmdblh | DmpFromDmdblp => "dmp",
            Dmdblh => "dmdblh",
            Dmdblp => "dmdblp",
        }
    }

    /// Unique command-line name.
    pub fn name(self) -> &'static str {
        use Functor::*;
        match self {
            DblpFromDblh => "dblp-from-dblh",
            DblpFromDpch => "dblp-from-dpch",
            DblpFromPchd => "dblp-from-pchd",
            DmpFromDmh => "dmp-from-dmh",
            DmpFromDmdblh => "dmp-from-dmdblh",
            DmpFromDmdblp => "dmp-from-dmdblp",
            other => other.tag(),
        }
    }

    pub fn source(self) -> &'static str {
        use Functor::*;
        match self {
            Dblh | Dpch | Pchd => "RDBLP",
            DblpFromDblh => "RDBLH",
            DblpFromDpch => "RDPCH",
            DblpFromPchd => "RPCHd",
            Dmh | Dmdblh | Dmdblp => "RDMP",
            DmpFromDmh => "RDMH_ALG",
            DmpFromDmdblh => "RDMDBLH",
            DmpFromDmdblp => "RDMDBLP",
        }
    }

    pub fn target(self) -> &'static str {
        self.inverse().source()
    }

    pub fn inverse(self) -> Functor {
        use Functor::*;
        match self {
            Dblh => DblpFromDblh,
            DblpFromDblh => Dblh,
            Dpch => DblpFromDpch,
            DblpFromDpch => Dpch,
            Pchd => DblpFromPchd,
            DblpFromPchd => Pchd,
            Dmh => DmpFromDmh,
            DmpFromDmh => Dmh,
            Dmdblh => DmpFromDmdblh,
            DmpFromDmdblh => Dmdblh,
            Dmdblp => DmpFromDmdblp,
            DmpFromDmdblp => Dmdblp,
        }
    }

    /// New operations as `(op, defining term)`, evaluated on the source.
    fn definitions(self) -> Vec<(Op, Term)> {
        use Functor::*;
        let strict = || kappa_dual_term(KappaDualVariant::StrictDual);
        let star = || term::term("x -> 0");
        match self {
            Dblh => vec![(Op::Arrow, kappa_term()), (Op::CoArrow, strict())],
            DblpFromDblh => vec![(Op::Star, star()), (Op::Plus, term::term("x <- 1"))],
            Dpch => vec![(Op::Arrow, kappa_term())],
            DblpFromDpch | DmpFromDmh | DmpFromDmdblh => vec![(Op::Star, star())],
            Pchd => vec![(Op::CoArrow, strict())],
            DblpFromPchd => vec![(Op::Plus, term::term("x <- 1"))],
            Dmh => vec![(Op::Arrow, kappa_dm_term())],
            Dmdblh => vec![(Op::Arrow, kappa_dm_term()), (Op::CoArrow, kappa_dual_dm_term())],
            Dmdblp => vec![(Op::Plus, term::term("x'*'"))],
            DmpFromDmdblp => vec![],
        }
    }

    /// Applies the construction without checking source or target
    /// membership. The result carries exactly the target signature.
    pub fn apply_unverified(self, a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
        let source_ops = catalog(self.source())?.required_ops;
        let target_ops = catalog(self.target())?.required_ops;
        let src = a.clone().restrict(&source_ops);
        let mut out = src.clone();
        for (op, t) in self.definitions() {
            let vars: &[&str] = if op.arity() == 1 { &["x"] } else { &["x", "y"] };
            let table = tabulate(&src, &t, vars)?;
            out = out.with_table(op, table).expect("tabulated table has the right shape");
        }
        Ok(out.restrict(&target_ops))
    }

    /// Applies the construction to a member of the source class and verifies
    /// that the result lies in the target class.
    pub fn apply(self, a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
        let src = require(a, self.source())?;
        let out = self.apply_unverified(&src)?;
        let report = check_membership(&out, &catalog(self.target())?)?;
        match report.first_failure() {
            None => Ok(out),
            Some(e) => Err(KatrinakError::TheoremViolation {
                functor: self.name().to_string(),
                class: self.target().to_string(),
                axiom: e.name.clone(),
                detail: e.detail.clone(),
            }),
        }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Functor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Functor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Functor::ALL.iter().map(|f| f.name()).collect();
                format!("unknown functor {s}; expected one of {}", names.join(", "))
            })
    }
}

/// RDBLP to RDBLH.
pub fn to_dblh(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::Dblh.apply(a)
}

/// RDBLH to RDBLP.
pub fn to_dblp(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::DblpFromDblh.apply(a)
}

pub fn to_dpch(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::Dpch.apply(a)
}

pub fn to_pchd(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::Pchd.apply(a)
}

pub fn to_dmh(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::Dmh.apply(a)
}

/// RDMH to RDMP.
pub fn to_dmp(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::DmpFromDmh.apply(a)
}

pub fn to_dmdblh(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::Dmdblh.apply(a)
}

pub fn to_dmdblp(a: &FiniteAlgebra) -> Result<FiniteAlgebra, KatrinakError> {
    Functor::Dmdblp.apply(a)
}

fn compare_tables(f: Functor, before: &FiniteAlgebra, after: &FiniteAlgebra) -> Result<(), KatrinakError> {
    let n = before.n();
    for op in catalog(f.source())?.required_ops {
        let (x, y) = (before.table(op).unwrap(), after.table(op).unwrap());
        if let Some(i) = (0..x.len()).find(|&i| x[i] != y[i]) {
            let args = if op.arity() == 1 {
                before.label(i).to_string()
            } else {
                format!("{},{}", before.label(i / n), before.label(i % n))
            };
            return Err(KatrinakError::RoundTripFailure {
                functor: f.name().to_string(),
                op,
                args,
                expected: before.label(x[i]).to_string(),
                got: before.label(y[i]).to_string(),
            });
        }
    }
    Ok(())
}

/// Applies `f` and then its inverse, and requires the source-signature tables
/// to come back unchanged, entry for entry.
pub fn roundtrip_check(a: &FiniteAlgebra, f: Functor) -> Result<(), KatrinakError> {
    let src = require(a, f.source())?;
    let back = f.inverse().apply(&f.apply(&src)?)?;
    compare_tables(f, &src, &back)
}

/// The round trip without membership checks, for inputs outside the source
/// class.
pub fn roundtrip_unverified(a: &FiniteAlgebra, f: Functor) -> Result<(), KatrinakError> {
    let src = a.clone().restrict(&catalog(f.source())?.required_ops);
    let back = f.inverse().apply_unverified(&f.apply_unverified(&src)?)?;
    compare_tables(f, &src, &back)
}

// ---------------------------------------------------------------------------
// Table-level checks

/// κ against the implication and κ^d against the co-implication, on an
/// algebra in RDBLP whose tables come from its order. Also checks
/// `κ(x,0) = x*` and `κ^d(x,1) = x+`.
pub fn katrinak_check(a: &FiniteAlgebra, variant: KappaDualVariant) -> Result<Report, KatrinakError> {
    require(a, "RDBLP")?;
    for op in [Op::Arrow, Op::CoArrow] {
        if !a.has(op) {
            return Err(VarietyError::OperationAbsent(op).into());
        }
    }
    let kd = kappa_dual_term(variant);
    let laws = [
        ("arrow=kappa", Identity::new(term::term("x -> y"), kappa_term())),
        (
            "coarrow=kappa_d",
            Identity::new(term::term("x <- y"), kd.clone()),
        ),
        (
            "kappa(x,0)=x*",
            Identity::new(
                kappa_term().substitute(&[("y".to_string(), Term::Zero)].into()),
                term::term("x*"),
            ),
        ),
        (
            "kappa_d(x,1)=x+",
            Identity::new(kd.substitute(&[("y".to_string(), Term::One)].into()), term::term("x+")),
        ),
    ];
    let mut report = Report::new(format!("katrinak ({variant}) on {}", a.name()), ReportKind::Suite);
    for (name, id) in laws {
        report.push(name, check_identity(a, &id)?, a);
    }
    Ok(report)
}

/// Which part of the converse to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConversePart {
    /// On RDPCH: `x -> y ~ κ(x,y)`.
    Implication,
    /// On RPCHd: `x <- y ~ κ^d(x,y)`.
    CoImplication,
    /// On RDBLH: both.
    Both,
}

impl ConversePart {
    pub fn class(self) -> &'static str {
        match self {
            ConversePart::Implication => "RDPCH",
            ConversePart::CoImplication => "RPCHd",
            ConversePart::Both => "RDBLH",
        }
    }
}

/// Checks the converse identities on the view of `a` in the part's class,
/// with the class's derived operations materialized.
pub fn converse_check(a: &FiniteAlgebra, part: ConversePart) -> Result<Report, KatrinakError> {
    let view = require(a, part.class())?;
    let work = catalog(part.class())?.materialize(&view)?;
    let mut report = Report::new(format!("converse ({}) on {}", part.class(), a.name()), ReportKind::Suite);
    if part != ConversePart::CoImplication {
        let id = Identity::new(term::term("x -> y"), kappa_term());
        report.push("arrow=kappa", check_identity(&work, &id)?, &work);
    }
    if part != ConversePart::Implication {
        let id = Identity::new(term::term("x <- y"), kappa_dual_term(KappaDualVariant::StrictDual));
        report.push("coarrow=kappa_d", check_identity(&work, &id)?, &work);
    }
    Ok(report)
}

/// Compares the implication with the primed display of κ on a De Morgan
/// Heyting algebra. Agreement is not expected; the verdict records it.
pub fn primed_form_check(a: &FiniteAlgebra) -> Result<Verdict, KatrinakError> {
    let view = require(a, "RDMH_ALG")?;
    let work = catalog("RDMH_ALG")?.materialize(&view)?;
    let id = Identity::new(term::term("x -> y"), term::term(KAPPA_PRIMED));
    Ok(check_identity(&work, &id)?)
}

/// The α, β, γ suite for regular dually pseudocomplemented Heyting algebras,
/// with auxiliary identities E1, E3 and E4.
pub fn lemma21_spec() -> VarietySpec {
    let alpha = "((x* \\/ y**)**)";
    let beta = "((x \\/ x*)+)";
    let gamma = "(x* \\/ y \\/ y*)";
    let imp = "(x -> y)";
    let sub = |s: &str| {
        s.replace("ALPHA", alpha)
            .replace("BETA", beta)
            .replace("GAMMA", gamma)
            .replace("IMP", imp)
    };
    let items = [
        ("a", "IMP \\/ BETA ~ IMP \\/ x+"),
        ("b", "IMP \\/ GAMMA ~ IMP \\/ y*"),
        ("c", "ALPHA /\\ x+ <= IMP"),
        ("d", "IMP+ <= (ALPHA /\\ (BETA \\/ GAMMA))+"),
        ("e", "IMP <= ALPHA"),
        ("f", "ALPHA \\/ IMP+ ~ 1"),
        ("g", "IMP+ \\/ BETA \\/ GAMMA ~ 1"),
        ("h", "(ALPHA /\\ (BETA \\/ GAMMA))+ <= IMP+"),
        ("i", "IMP* <= (ALPHA /\\ (BETA \\/ GAMMA))*"),
        ("j", "(ALPHA /\\ (BETA \\/ GAMMA))* <= IMP*"),
        ("E1", "(x* \\/ y**)** ~ (x** /\\ y*)*"),
        ("E3", "IMP* <= x** /\\ y*"),
        ("E4", "IMP /\\ (ALPHA /\\ GAMMA)* ~ 0"),
    ];
    let mut spec = catalog("RDPCH").expect("RDPCH is in the catalog");
    spec.name = "ALPHA-BETA-GAMMA".to_string();
    spec.quasi_identities.clear();
    spec.identities = items.iter().map(|(n, t)| Axiom::new(n, &sub(t))).collect();
    spec
}

/// Runs the α, β, γ suite on a member of RDPCH.
pub fn lemma21_suite(a: &FiniteAlgebra) -> Result<Report, KatrinakError> {
    let view = require(a, "RDPCH")?;
    Ok(check_suite(&view, &lemma21_spec())?)
}
