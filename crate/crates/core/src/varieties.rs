//! Catalog of the algebra classes as checkable axiom systems, and itemized
//! membership reports.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{FiniteAlgebra, Op};
use crate::term::{self, check_quasi_identity, tabulate, EvalError, Identity, QuasiIdentity, Term, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("unknown variety {0}")]
    UnknownVariety(String),
    #[error("operation {0} is absent and not derivable")]
    OperationAbsent(Op),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A named law. Identities are quasi-identities without premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub law: QuasiIdentity,
}

impl Axiom {
    /// Parses `s ~ t`, `s <= t` (as `s \/ t ~ t`) or `p & q => c`.
    pub(crate) fn new(name: &str, text: &str) -> Axiom {
        let law = if let Some((s, t)) = text.split_once(" <= ") {
            QuasiIdentity::from(Identity::le(term::term(s), term::term(t)))
        } else {
            term::parse_quasi_identity(text)
                .unwrap_or_else(|e| panic!("built-in law {name}: {e}"))
        };
        Axiom { name: name.to_string(), law }
    }

    pub fn is_identity(&self) -> bool {
        self.law.premises.is_empty()
    }
}

/// An operation defined by a term: unary definitions use `x`, binary ones `x`
/// and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedDef {
    pub op: Op,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub name: String,
    pub required_ops: Vec<Op>,
    pub identities: Vec<Axiom>,
    pub quasi_identities: Vec<Axiom>,
    /// Applied in order; later definitions may use earlier ones.
    pub derived_defs: Vec<DerivedDef>,
}

impl VarietySpec {
    fn new(name: &str, required_ops: &[Op]) -> Self {
        VarietySpec {
            name: name.to_string(),
            required_ops: required_ops.to_vec(),
            identities: Vec::new(),
            quasi_identities: Vec::new(),
            derived_defs: Vec::new(),
        }
    }

    fn laws(mut self, laws: &[(&str, &str)]) -> Self {
        for (name, text) in laws {
            let ax = Axiom::new(name, text);
            if ax.is_identity() {
                self.identities.push(ax);
            } else {
                self.quasi_identities.push(ax);
            }
        }
        self
    }

    fn derive(mut self, op: Op, text: &str) -> Self {
        self.derived_defs.push(DerivedDef { op, term: term::term(text) });
        self
    }

    fn extend(mut self, other: &VarietySpec) -> Self {
        self.identities.extend(other.identities.iter().cloned());
        self.quasi_identities.extend(other.quasi_identities.iter().cloned());
        self
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// All axioms in report order: identities first, then quasi-identities.
    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> {
        self.identities.iter().chain(&self.quasi_identities)
    }

    pub fn axiom(&self, name: &str) -> Option<&Axiom> {
        self.axioms().find(|a| a.name == name)
    }

    /// Does the spec use the De Morgan operation?
    pub fn needs_involution(&self) -> bool {
        self.required_ops.contains(&Op::Prime)
    }

    /// A working copy of `a` with every derived operation tabulated.
    pub fn materialize(&self, a: &FiniteAlgebra) -> Result<FiniteAlgebra, VarietyError> {
        for &op in &self.required_ops {
            if !a.has(op) {
                return Err(VarietyError::OperationAbsent(op));
            }
        }
        let mut work = a.clone();
        for def in &self.derived_defs {
            let vars: &[&str] = if def.op.arity() == 1 { &["x"] } else { &["x", "y"] };
            let table = tabulate(&work, &def.term, vars)?;
            work = work.with_table(def.op, table).expect("tabulated table has the right shape");
        }
        Ok(work)
    }
}

// ---------------------------------------------------------------------------
// Laws shared between entries

const LATTICE: &[(&str, &str)] = &[
    ("L1", "(x \\/ y) \\/ z ~ x \\/ (y \\/ z)"),
    ("L2", "(x /\\ y) /\\ z ~ x /\\ (y /\\ z)"),
    ("L3", "x \\/ y ~ y \\/ x"),
    ("L4", "x /\\ y ~ y /\\ x"),
    ("L5", "x \\/ (x /\\ y) ~ x"),
    ("L6", "x /\\ (x \\/ y) ~ x"),
    ("L7", "x /\\ (y \\/ z) ~ (x /\\ y) \\/ (x /\\ z)"),
    ("L8", "x \\/ 0 ~ x"),
    ("L9", "x /\\ 1 ~ x"),
];

const P_LAWS: &[(&str, &str)] = &[
    ("S2", "(x \\/ y)* ~ x* /\\ y*"),
    ("S3", "(x /\\ y)** ~ x** /\\ y**"),
    ("S4", "x <= x**"),
    ("S5", "x* /\\ x** ~ 0"),
];

const RIBENBOIM: &[(&str, &str)] = &[
    ("R1", "(x \\/ y) \\/ z ~ x \\/ (y \\/ z)"),
    ("R2", "(x /\\ y) /\\ z ~ x /\\ (y /\\ z)"),
    ("R3", "x \\/ y ~ y \\/ x"),
    ("R4", "x /\\ y ~ y /\\ x"),
    ("R5", "x \\/ x ~ x"),
    ("R6", "x /\\ x ~ x"),
    ("R7", "x \\/ (x /\\ y) ~ x"),
    ("R8", "x /\\ (y \\/ z) ~ (x /\\ y) \\/ (x /\\ z)"),
    ("R9", "x /\\ x* ~ y /\\ y*"),
    ("R10", "x /\\ (x /\\ y)* ~ x /\\ y*"),
    ("R11", "x /\\ (x /\\ x*)* ~ x"),
    ("R12", "(x /\\ x*)** ~ x /\\ x*"),
];

const DP_LAWS: &[(&str, &str)] = &[
    ("S2d", "(x /\\ y)+ ~ x+ \\/ y+"),
    ("S3d", "(x \\/ y)++ ~ x++ \\/ y++"),
    ("S4d", "x++ <= x"),
    ("S5d", "x+ \\/ x++ ~ 1"),
];

const SH_LAWS: &[(&str, &str)] = &[
    ("SH2", "x /\\ (x -> y) ~ x /\\ y"),
    ("SH3", "x /\\ (y -> z) ~ x /\\ ((x /\\ y) -> (x /\\ z))"),
    ("SH4", "x -> x ~ 1"),
];

const H_LAW: &[(&str, &str)] = &[("H", "(x /\\ y) -> x ~ 1")];

const DUAL_H_LAWS: &[(&str, &str)] = &[
    ("SH2d", "x \\/ (x <- y) ~ x \\/ y"),
    ("SH3d", "x \\/ (y <- z) ~ x \\/ ((x \\/ y) <- (x \\/ z))"),
    ("SH4d", "x <- x ~ 0"),
    ("Hd", "(x \\/ y) <- x ~ 0"),
];

const DM_LAWS: &[(&str, &str)] = &[
    ("DM1", "x'' ~ x"),
    ("DM2", "(x \\/ y)' ~ x' /\\ y'"),
    ("DM3", "(x /\\ y)' ~ x' \\/ y'"),
    ("DM4", "0' ~ 1"),
    ("DM5", "1' ~ 0"),
];

const HEMIMORPHISM_LAWS: &[(&str, &str)] = &[
    ("HM1", "0' ~ 1"),
    ("HM2", "1' ~ 0"),
    ("HM3", "(x /\\ y)' ~ x' \\/ y'"),
];

pub const M_TEXT: &str = "(x /\\ x+) \\/ (y \\/ y*) ~ y \\/ y*";
pub const R_TEXT: &str = "x* ~ y* & x+ ~ y+ => x ~ y";
pub const M1_TEXT: &str = "(x /\\ x'*') \\/ (y \\/ y*) ~ y \\/ y*";

/// The regularity identity (M).
pub fn regularity_identity() -> Identity {
    term::identity(M_TEXT)
}

/// The regularity quasi-identity (R).
pub fn regularity_quasi_identity() -> QuasiIdentity {
    term::parse_quasi_identity(R_TEXT).expect("built-in law")
}

/// The De Morgan regularity identity (M1).
pub fn de_morgan_regularity_identity() -> Identity {
    term::identity(M1_TEXT)
}

const STAR_FROM_ARROW: &str = "x -> 0";
const PLUS_FROM_COARROW: &str = "x <- 1";
const PLUS_FROM_PRIME: &str = "x'*'";

pub const CATALOG_NAMES: &[&str] = &[
    "BDL",
    "P",
    "P_ALT",
    "P_RIBENBOIM",
    "DP",
    "DBLP",
    "RDBLP",
    "RDBLP_R",
    "SH",
    "H",
    "DBLH",
    "RDBLH",
    "DPCH",
    "RDPCH",
    "PCHd",
    "RPCHd",
    "DM",
    "DMP",
    "RDMP",
    "DMH",
    "RDMH_ALG",
    "DMDBLP",
    "RDMDBLP",
    "DMDBLH",
    "RDMDBLH",
    "DHMSH",
];

/// Looks up a catalog entry by name.
pub fn catalog(name: &str) -> Result<VarietySpec, VarietyError> {
    use Op::*;
    let m = &[("M", M_TEXT)];
    let m1 = &[("M1", M1_TEXT)];
    let spec = match name {
        "BDL" => VarietySpec::new(name, &[]).laws(LATTICE),
        "P" => VarietySpec::new(name, &[Star]).laws(P_LAWS),
        "P_ALT" => VarietySpec::new(name, &[Star])
            .laws(&P_LAWS[..3])
            .laws(&[("S5'", "x /\\ x* ~ 0")]),
        "P_RIBENBOIM" => VarietySpec::new(name, &[Star]).laws(RIBENBOIM),
        "DP" => VarietySpec::new(name, &[Plus]).laws(DP_LAWS),
        "DBLP" => VarietySpec::new(name, &[Star, Plus]).laws(P_LAWS).laws(DP_LAWS),
        "RDBLP" => catalog("DBLP")?.renamed(name).laws(m),
        "RDBLP_R" => catalog("DBLP")?.renamed(name).laws(&[("R", R_TEXT)]),
        "SH" => VarietySpec::new(name, &[Arrow]).laws(SH_LAWS).derive(Star, STAR_FROM_ARROW),
        "H" => catalog("SH")?.renamed(name).laws(H_LAW),
        "DBLH" => VarietySpec::new(name, &[Arrow, CoArrow])
            .laws(SH_LAWS)
            .laws(H_LAW)
            .laws(DUAL_H_LAWS)
            .derive(Star, STAR_FROM_ARROW)
            .derive(Plus, PLUS_FROM_COARROW),
        "RDBLH" => catalog("DBLH")?.renamed(name).laws(m),
        "DPCH" => VarietySpec::new(name, &[Arrow, Plus])
            .laws(SH_LAWS)
            .laws(H_LAW)
            .laws(DP_LAWS)
            .derive(Star, STAR_FROM_ARROW),
        "RDPCH" => catalog("DPCH")?.renamed(name).laws(m),
        "PCHd" => VarietySpec::new(name, &[Star, CoArrow])
            .laws(DUAL_H_LAWS)
            .laws(P_LAWS)
            .derive(Plus, PLUS_FROM_COARROW),
        "RPCHd" => catalog("PCHd")?.renamed(name).laws(m),
        "DM" => VarietySpec::new(name, &[Prime]).laws(DM_LAWS),
        "DMP" => VarietySpec::new(name, &[Star, Prime])
            .laws(P_LAWS)
            .laws(DM_LAWS)
            .derive(Plus, PLUS_FROM_PRIME),
        "RDMP" => catalog("DMP")?.renamed(name).laws(m1),
        "DMH" => VarietySpec::new(name, &[Arrow, Prime])
            .laws(SH_LAWS)
            .laws(H_LAW)
            .laws(DM_LAWS)
            .derive(Star, STAR_FROM_ARROW)
            .derive(Plus, PLUS_FROM_PRIME),
        "RDMH_ALG" => catalog("DMH")?.renamed(name).laws(m1),
        "DMDBLP" => VarietySpec::new(name, &[Star, Plus, Prime])
            .extend(&catalog("DBLP")?)
            .laws(DM_LAWS),
        "RDMDBLP" => catalog("DMDBLP")?.renamed(name).laws(m1),
        "DMDBLH" => VarietySpec::new(name, &[Arrow, CoArrow, Prime])
            .extend(&catalog("DBLH")?)
            .laws(DM_LAWS)
            .derive(Star, STAR_FROM_ARROW)
            .derive(Plus, PLUS_FROM_COARROW),
        "RDMDBLH" => catalog("DMDBLH")?.renamed(name).laws(m1),
        "DHMSH" => VarietySpec::new(name, &[Arrow, Prime])
            .laws(SH_LAWS)
            .laws(HEMIMORPHISM_LAWS)
            .derive(Star, STAR_FROM_ARROW),
        _ => return Err(VarietyError::UnknownVariety(name.to_string())),
    };
    Ok(spec)
}

/// Heyting properties: `x* <= x -> y`, `y <= x -> y`, and residuation as a
/// pair of quasi-identities. Holds on every Heyting algebra.
pub fn lemma_heyting_suite() -> VarietySpec {
    VarietySpec::new("LEMMA-H", &[Op::Arrow])
        .derive(Op::Star, STAR_FROM_ARROW)
        .laws(&[
            ("a", "x* <= x -> y"),
            ("b", "y <= x -> y"),
            ("c-if", "(x /\\ y) \\/ z ~ z => x \\/ (y -> z) ~ y -> z"),
            ("c-only-if", "x \\/ (y -> z) ~ y -> z => (x /\\ y) \\/ z ~ z"),
        ])
}

/// Properties of dually pseudocomplemented Heyting algebras, with
/// `x* := x -> 0`.
pub fn lemma_dpch_suite() -> VarietySpec {
    VarietySpec::new("LEMMA-DPCH", &[Op::Arrow, Op::Plus])
        .derive(Op::Star, STAR_FROM_ARROW)
        .laws(&[
            ("a", "(x /\\ y)+ ~ x+ \\/ y+"),
            ("b", "(x \\/ y)* ~ x* /\\ y*"),
            ("c", "x*** ~ x*"),
            ("d", "x <= x**"),
            ("e", "x \\/ (x \\/ y)+ ~ x \\/ y+"),
            ("f", "x /\\ (x /\\ y)* ~ x /\\ y*"),
        ])
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    /// Ends with `VERDICT: MEMBER` or `VERDICT: NOT-MEMBER`.
    Membership,
    /// Ends with `VERDICT: HOLDS` or `VERDICT: FAILS`.
    Suite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub name: String,
    pub verdict: Verdict,
    /// The verdict rendered with element labels.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub kind: ReportKind,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(title: impl Into<String>, kind: ReportKind) -> Self {
        Report { title: title.into(), kind, entries: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, verdict: Verdict, a: &FiniteAlgebra) {
        let detail = verdict.describe(a);
        self.entries.push(ReportEntry { name: name.into(), verdict, detail });
    }

    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.holds())
    }

    pub fn first_failure(&self) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| !e.verdict.holds())
    }

    pub fn entry(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn verdict_line(&self) -> &'static str {
        match (self.kind, self.holds()) {
            (ReportKind::Membership, true) => "VERDICT: MEMBER",
            (ReportKind::Membership, false) => "VERDICT: NOT-MEMBER",
            (ReportKind::Suite, true) => "VERDICT: HOLDS",
            (ReportKind::Suite, false) => "VERDICT: FAILS",
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{}: {}", e.name, e.detail)?;
        }
        writeln!(f, "{}", self.verdict_line())
    }
}

fn run(a: &FiniteAlgebra, spec: &VarietySpec, kind: ReportKind) -> Result<Report, VarietyError> {
    let work = spec.materialize(a)?;
    let axioms: Vec<&Axiom> = spec.axioms().collect();
    let verdicts: Vec<Verdict> = axioms
        .par_iter()
        .map(|ax| check_quasi_identity(&work, &ax.law))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new(format!("{} on {}", spec.name, a.name()), kind);
    for (ax, v) in axioms.iter().zip(verdicts) {
        report.push(ax.name.clone(), v, &work);
    }
    Ok(report)
}

/// Checks every axiom of `spec` on `a` (no short-circuit).
pub fn check_membership(a: &FiniteAlgebra, spec: &VarietySpec) -> Result<Report, VarietyError> {
    run(a, spec, ReportKind::Membership)
}

/// Like [`check_membership`] but reported as a property suite.
pub fn check_suite(a: &FiniteAlgebra, spec: &VarietySpec) -> Result<Report, VarietyError> {
    run(a, spec, ReportKind::Suite)
}

/// Membership by catalog name.
pub fn is_member(a: &FiniteAlgebra, name: &str) -> Result<bool, VarietyError> {
    Ok(check_membership(a, &catalog(name)?)?.holds())
}

/// Do the two axiomatizations of pseudocomplemented distributive lattices
/// agree on `a`? `a` must carry a (possibly wrong) `*` table.
pub fn ribenboim_equivalence_check(a: &FiniteAlgebra) -> bool {
    let p = is_member(a, "P").expect("P is in the catalog and a has *");
    let r = is_member(a, "P_RIBENBOIM").expect("P_RIBENBOIM is in the catalog and a has *");
    p == r
}
