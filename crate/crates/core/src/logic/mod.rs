//! The six logics: axiom schemas, Hilbert-style derivations, and finite-model
//! soundness and faithfulness.
//!
//! The dual logic `RPCHd` is generated from `RDPCH` by dualizing every schema
//! and both rules. Its models are the order duals of `RDPCH` models and its
//! designated value is the bottom element.

mod formula;
mod proof;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra, Op};
use crate::enumerate::{self, CorpusOptions, EnumerateError};
use crate::term::{check_quasi_identity, EvalError, Identity, QuasiIdentity, Term, Verdict};
use crate::varieties::{is_member, Report, ReportEntry, ReportKind, VarietyError};

pub use formula::{parse_formula, Formula};
pub use proof::{
    check_derivation, parse_script, Derivation, Justification, ProofVerdict, ScriptError, Step,
};

pub const LOGIC_NAMES: &[&str] = &["DHMSH", "DPCH", "RDPCH", "RPCHd", "DMH", "RDMH"];

/// Demo derivations shipped with the library.
pub const MP_DEMO: &str = include_str!("../../data/mp_demo.prf");
pub const CP_DEMO: &str = include_str!("../../data/cp_demo.prf");

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("unknown logic {0}")]
    UnknownLogic(String),
    #[error("logic {logic} has no axiom {schema}")]
    UnknownSchema { logic: String, schema: String },
    #[error("axiom {schema}: no formula given for {}", missing.join(", "))]
    IncompleteSubstitution { schema: String, missing: Vec<String> },
    #[error("custom negation table: {0}")]
    BadBinding(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// How `~` is realized in a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NegBinding {
    /// The dual pseudocomplement.
    Plus,
    /// The pseudocomplement; the dual logic's negation after dualizing `+`.
    Star,
    /// The involution (the `'` slot).
    Involution,
    /// An arbitrary table, for negative controls.
    Custom(Vec<Elem>),
}

impl NegBinding {
    fn op(&self) -> Op {
        match self {
            NegBinding::Plus => Op::Plus,
            NegBinding::Star => Op::Star,
            NegBinding::Involution | NegBinding::Custom(_) => Op::Prime,
        }
    }
}

impl fmt::Display for NegBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegBinding::Plus => f.write_str("~ := +"),
            NegBinding::Star => f.write_str("~ := *"),
            NegBinding::Involution => f.write_str("~ := '"),
            NegBinding::Custom(t) => write!(f, "~ := {t:?}"),
        }
    }
}

/// A named axiom template over the metavariables `alpha`, `beta`, `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub id: String,
    pub template: Formula,
}

const HILBERT_BASE: &[(&str, &str)] = &[
    ("1", "alpha ->h (alpha \\/ beta)"),
    ("2", "beta ->h (alpha \\/ beta)"),
    ("3", "(alpha ->h gamma) ->h ((beta ->h gamma) ->h ((alpha \\/ beta) ->h gamma))"),
    ("4", "(alpha /\\ beta) ->h alpha"),
    ("5", "(gamma ->h alpha) ->h ((gamma ->h beta) ->h (gamma ->h (alpha /\\ beta)))"),
    ("6", "top"),
    ("7", "bot ->h alpha"),
    ("8", "((alpha /\\ beta) ->h gamma) ->h (alpha ->h (beta ->h gamma))"),
    ("9", "(alpha ->h (beta ->h gamma)) ->h ((alpha /\\ beta) ->h gamma)"),
    ("10", "(alpha ->h beta) ->h ((beta ->h alpha) ->h ((alpha -> gamma) ->h (beta -> gamma)))"),
    ("11", "(alpha ->h beta) ->h ((beta ->h alpha) ->h ((gamma -> beta) ->h (gamma -> alpha)))"),
    ("12", "top ->h ~bot"),
    ("13", "~top ->h bot"),
    ("14", "~(alpha /\\ beta) ->h (~alpha \\/ ~beta)"),
];

const AX15: (&str, &str) = ("15", "(alpha /\\ beta) -> alpha");

const DPCH_EXTRA: &[(&str, &str)] = &[
    ("16", "~bot ->h top"),
    ("17", "~~(alpha \\/ beta) <->h (~~alpha \\/ ~~beta)"),
    ("18", "(~~alpha \\/ alpha) <->h alpha"),
    ("19", "alpha \\/ ~alpha"),
];

const AX19B: (&str, &str) = ("19b", "~alpha \\/ ~~alpha");

const AX_M1: (&str, &str) =
    ("M1", "((alpha /\\ ~alpha) \\/ (beta \\/ (beta -> bot))) <->h (beta \\/ (beta -> bot))");

const AX20: (&str, &str) = ("20", "~~alpha <->h alpha");

const AX_M2: (&str, &str) = (
    "M2",
    "((alpha /\\ ~((~alpha) -> bot)) \\/ (beta \\/ (beta -> bot))) <->h (beta \\/ (beta -> bot))",
);

fn schemas(list: &[(&str, &str)]) -> Vec<Schema> {
    list.iter()
        .map(|(id, text)| Schema { id: id.to_string(), template: formula::formula(text) })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicSpec {
    pub name: String,
    pub schemas: Vec<Schema>,
    /// Alternative forms checked semantically only; not usable in proofs.
    pub alternatives: Vec<Schema>,
    pub model_class: String,
    pub neg_binding: NegBinding,
    /// Dual logics designate the bottom element and use `<-h` in the rules.
    pub dual: bool,
}

impl LogicSpec {
    pub fn by_name(name: &str) -> Result<LogicSpec, LogicError> {
        let make = |list: Vec<(&str, &str)>, alts: &[(&str, &str)], class: &str, neg: NegBinding| LogicSpec {
            name: name.to_string(),
            schemas: schemas(&list),
            alternatives: schemas(alts),
            model_class: class.to_string(),
            neg_binding: neg,
            dual: false,
        };
        let base = HILBERT_BASE.to_vec();
        let dpch: Vec<_> = base.iter().copied().chain([AX15]).chain(DPCH_EXTRA.iter().copied()).collect();
        let dmh: Vec<_> = base.iter().copied().chain([AX15, AX20]).collect();
        Ok(match name {
            "DHMSH" => make(base, &[], "DHMSH", NegBinding::Involution),
            "DPCH" => make(dpch, &[AX19B], "DPCH", NegBinding::Plus),
            "RDPCH" => make(dpch.into_iter().chain([AX_M1]).collect(), &[AX19B], "RDPCH", NegBinding::Plus),
            "DMH" => make(dmh, &[], "DMH", NegBinding::Involution),
            "RDMH" => make(dmh.into_iter().chain([AX_M2]).collect(), &[], "RDMH_ALG", NegBinding::Involution),
            "RPCHd" => LogicSpec::by_name("RDPCH")?.dualized("RPCHd", "RPCHd"),
            _ => return Err(LogicError::UnknownLogic(name.to_string())),
        })
    }

    fn dualized(&self, name: &str, class: &str) -> LogicSpec {
        let dual_all = |v: &[Schema]| {
            v.iter()
                .map(|s| Schema { id: s.id.clone(), template: s.template.dualize() })
                .collect()
        };
        LogicSpec {
            name: name.to_string(),
            schemas: dual_all(&self.schemas),
            alternatives: dual_all(&self.alternatives),
            model_class: class.to_string(),
            neg_binding: NegBinding::Star,
            dual: !self.dual,
        }
    }

    pub fn schema(&self, id: &str) -> Option<&Schema> {
        self.schemas.iter().find(|s| s.id == id)
    }

    /// The rule connective: `a ->h b`, or `a <-h b` in a dual logic.
    pub fn rule_imp(&self, a: Formula, b: Formula) -> Formula {
        if self.dual {
            Formula::coimp_h(a, b)
        } else {
            Formula::imp_h(a, b)
        }
    }

    /// Splits a formula of the rule connective's shape.
    pub fn split_rule_imp<'f>(&self, f: &'f Formula) -> Option<(&'f Formula, &'f Formula)> {
        if self.dual {
            f.as_coimp_h()
        } else {
            f.as_imp_h()
        }
    }

    pub fn designated(&self, a: &FiniteAlgebra) -> Elem {
        if self.dual {
            a.bot()
        } else {
            a.top()
        }
    }

    fn designated_term(&self) -> Term {
        if self.dual {
            Term::Zero
        } else {
            Term::One
        }
    }

    /// One line per schema, `id: formula`.
    pub fn axiom_listing(&self) -> String {
        let mut out = String::new();
        for s in &self.schemas {
            out.push_str(&format!("{}: {}\n", s.id, s.template));
        }
        for s in &self.alternatives {
            out.push_str(&format!("{} (alternative): {}\n", s.id, s.template));
        }
        out
    }

    /// The models of this logic in the corpus described by `opts`.
    pub fn models(&self, opts: &CorpusOptions) -> Result<Vec<Model>, LogicError> {
        let mut candidates = enumerate::lattices(opts)?;
        candidates.extend(enumerate::de_morgan_algebras(opts)?);
        self.models_from(&candidates)
    }

    /// Picks this logic's models out of a mixed corpus of lattices and De
    /// Morgan algebras, keeping corpus order.
    ///
    /// `DHMSH` takes both De Morgan members (`~` as the involution) and
    /// lattices whose `+` is a dual hemimorphism (`~` as `+`). `RPCHd` takes
    /// the order duals of the `RDPCH` models.
    pub fn models_from(&self, corpus: &[FiniteAlgebra]) -> Result<Vec<Model>, LogicError> {
        let (de_morgan, plain): (Vec<&FiniteAlgebra>, Vec<&FiniteAlgebra>) =
            corpus.iter().partition(|a| a.has(Op::Prime));
        let members = |pool: &[&FiniteAlgebra], class: &str| -> Result<Vec<FiniteAlgebra>, LogicError> {
            let keep: Vec<bool> = pool.par_iter().map(|a| is_member(a, class)).collect::<Result<_, _>>()?;
            Ok(pool.iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| (*a).clone()).collect())
        };
        let tag = |algebras: Vec<FiniteAlgebra>, neg: NegBinding| -> Vec<Model> {
            algebras.into_iter().map(|algebra| Model { algebra, neg: neg.clone() }).collect()
        };
        Ok(match self.name.as_str() {
            "RPCHd" => {
                let duals = members(&plain, "RDPCH")?.iter().map(FiniteAlgebra::dualize).collect();
                tag(duals, NegBinding::Star)
            }
            "DHMSH" => {
                let mut out = tag(members(&de_morgan, "DHMSH")?, NegBinding::Involution);
                for a in plain {
                    let Some(plus) = a.table(Op::Plus) else { continue };
                    let probe = a.clone().with_table(Op::Prime, plus.to_vec()).expect("+ has the unary shape");
                    if is_member(&probe, "DHMSH")? {
                        out.push(Model { algebra: a.clone(), neg: NegBinding::Plus });
                    }
                }
                out
            }
            _ => {
                let pool = if self.neg_binding == NegBinding::Involution { &de_morgan } else { &plain };
                tag(members(pool, &self.model_class)?, self.neg_binding.clone())
            }
        })
    }
}

/// Instantiates axiom `schema` of `logic`. Every metavariable of the template
/// must be mapped; extra entries are ignored.
pub fn instantiate_axiom(
    logic: &LogicSpec,
    schema: &str,
    substitution: &BTreeMap<String, Formula>,
) -> Result<Formula, LogicError> {
    let s = logic.schema(schema).ok_or_else(|| LogicError::UnknownSchema {
        logic: logic.name.clone(),
        schema: schema.to_string(),
    })?;
    let missing: Vec<String> =
        s.template.vars().into_iter().filter(|v| !substitution.contains_key(v)).collect();
    if !missing.is_empty() {
        return Err(LogicError::IncompleteSubstitution { schema: schema.to_string(), missing });
    }
    Ok(s.template.substitute(substitution))
}

// ---------------------------------------------------------------------------
// Semantics

/// An algebra together with the realization of `~`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub algebra: FiniteAlgebra,
    pub neg: NegBinding,
}

impl Model {
    pub fn new(algebra: FiniteAlgebra, neg: NegBinding) -> Self {
        Model { algebra, neg }
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    /// The algebra with `~` installed in a table slot, and a translation of
    /// formulas into terms over it.
    fn interpretation(&self) -> Result<(FiniteAlgebra, Op), LogicError> {
        let work = match &self.neg {
            NegBinding::Custom(t) => self
                .algebra
                .clone()
                .with_table(Op::Prime, t.clone())
                .map_err(|e| LogicError::BadBinding(e.to_string()))?,
            _ => self.algebra.clone(),
        };
        let op = self.neg.op();
        if !work.has(op) {
            return Err(EvalError::OperationAbsent(op).into());
        }
        Ok((work, op))
    }
}

fn neg_term(op: Op) -> impl Fn(Term) -> Term {
    move |t| match op {
        Op::Star => Term::star(t),
        Op::Plus => Term::plus(t),
        _ => Term::prime(t),
    }
}

/// The term denoted by `f` when `~` is realized by `op`.
fn to_term(f: &Formula, op: Op) -> Term {
    f.to_term(&neg_term(op))
}

/// Homomorphic evaluation; unmapped variables are an error.
pub fn eval_formula(
    a: &FiniteAlgebra,
    neg: &NegBinding,
    f: &Formula,
    valuation: &BTreeMap<String, Elem>,
) -> Result<Elem, LogicError> {
    let (work, op) = Model::new(a.clone(), neg.clone()).interpretation()?;
    Ok(crate::term::eval_term(&work, &to_term(f, op), valuation)?)
}

fn designation(logic: &LogicSpec, f: &Formula, op: Op) -> Identity {
    Identity::new(to_term(f, op), logic.designated_term())
}

/// The rules as quasi-identities over metavariables `p` and `q`: MP, then CP.
fn rule_laws(logic: &LogicSpec, op: Op) -> [(&'static str, QuasiIdentity); 2] {
    let p = Formula::var("p");
    let q = Formula::var("q");
    let mp = QuasiIdentity {
        premises: vec![designation(logic, &p, op), designation(logic, &logic.rule_imp(p.clone(), q.clone()), op)],
        conclusion: designation(logic, &q, op),
    };
    let cp = QuasiIdentity {
        premises: vec![designation(logic, &logic.rule_imp(p.clone(), q.clone()), op)],
        conclusion: designation(logic, &logic.rule_imp(Formula::neg(q), Formula::neg(p)), op),
    };
    [("MP", mp), ("CP", cp)]
}

/// Every schema and alternative designated, and both rules preserving
/// designation, on one model. Entries are named by schema id and rule.
pub fn model_report(logic: &LogicSpec, model: &Model) -> Result<Report, LogicError> {
    let (work, op) = model.interpretation()?;
    let mut laws: Vec<(String, QuasiIdentity)> = logic
        .schemas
        .iter()
        .chain(&logic.alternatives)
        .map(|s| (s.id.clone(), QuasiIdentity::from(designation(logic, &s.template, op))))
        .collect();
    laws.extend(rule_laws(logic, op).into_iter().map(|(n, q)| (n.to_string(), q)));
    let verdicts: Vec<Verdict> = laws
        .par_iter()
        .map(|(_, q)| check_quasi_identity(&work, q))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new(format!("{} on {} ({})", logic.name, model.name(), model.neg), ReportKind::Suite);
    for ((name, _), v) in laws.into_iter().zip(verdicts) {
        report.push(name, v, &work);
    }
    Ok(report)
}

/// Soundness over a corpus: one entry per model, naming the first failing
/// axiom or rule with its valuation.
pub fn soundness_check(logic: &LogicSpec, corpus: &[Model]) -> Result<Report, LogicError> {
    let reports: Vec<Report> = corpus
        .par_iter()
        .map(|m| model_report(logic, m))
        .collect::<Result<_, _>>()?;
    let mut out = Report::new(format!("soundness of {}", logic.name), ReportKind::Suite);
    for (m, r) in corpus.iter().zip(reports) {
        let entry = match r.first_failure() {
            None => ReportEntry { name: m.name().to_string(), verdict: Verdict::Holds, detail: "HOLDS".into() },
            Some(e) => ReportEntry {
                name: m.name().to_string(),
                verdict: e.verdict.clone(),
                detail: format!("axiom {} {}", e.name, e.detail),
            },
        };
        out.entries.push(entry);
    }
    Ok(out)
}

/// Do `p ->h q` and `q ->h p` both designate exactly when `p = q`, and does
/// `p ->h p` always designate? Uses `->h` with top when the algebra has an
/// arrow, and otherwise `<-h` with bottom.
pub fn faithfulness_check(a: &FiniteAlgebra) -> Result<Report, LogicError> {
    let (imp, unit): (fn(Formula, Formula) -> Formula, Term) = if a.has(Op::Arrow) {
        (Formula::imp_h, Term::One)
    } else if a.has(Op::CoArrow) {
        (Formula::coimp_h, Term::Zero)
    } else {
        return Err(EvalError::OperationAbsent(Op::Arrow).into());
    };
    let p = Formula::var("p");
    let q = Formula::var("q");
    let designated = |f: Formula| Identity::new(to_term(&f, Op::Prime), unit.clone());
    let same = Identity::new(Term::var("p"), Term::var("q"));
    let laws = [
        ("defining", QuasiIdentity::from(designated(imp(p.clone(), p.clone())))),
        (
            "equal-implies-delta",
            QuasiIdentity { premises: vec![same.clone()], conclusion: designated(imp(p.clone(), q.clone())) },
        ),
        (
            "delta-implies-equal",
            QuasiIdentity { premises: vec![designated(imp(p.clone(), q.clone())), designated(imp(q, p))], conclusion: same },
        ),
    ];
    let mut report = Report::new(format!("faithfulness on {}", a.name()), ReportKind::Suite);
    for (name, law) in laws {
        report.push(name, check_quasi_identity(a, &law)?, a);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples::*;

    fn subst(pairs: &[(&str, &str)]) -> BTreeMap<String, Formula> {
        pairs.iter().map(|(k, v)| (k.to_string(), parse_formula(v).unwrap())).collect()
    }

    fn val(a: &FiniteAlgebra, pairs: &[(&str, &str)]) -> BTreeMap<String, Elem> {
        pairs.iter().map(|(k, v)| (k.to_string(), a.index_of(v).unwrap())).collect()
    }

    #[test]
    fn instantiation() {
        let l = LogicSpec::by_name("DHMSH").unwrap();
        let f = instantiate_axiom(&l, "1", &subst(&[("alpha", "p"), ("beta", "q")])).unwrap();
        assert_eq!(f, parse_formula("p ->h (p \\/ q)").unwrap());
        assert_eq!(instantiate_axiom(&l, "6", &BTreeMap::new()).unwrap(), Formula::Top);
        assert!(matches!(
            instantiate_axiom(&l, "1", &subst(&[("alpha", "p")])),
            Err(LogicError::IncompleteSubstitution { missing, .. }) if missing == ["beta"]
        ));
        assert!(matches!(instantiate_axiom(&l, "15", &BTreeMap::new()), Err(LogicError::UnknownSchema { .. })));
    }

    #[test]
    fn m1_expands_the_star() {
        let l = LogicSpec::by_name("RDPCH").unwrap();
        let f = instantiate_axiom(&l, "M1", &subst(&[("alpha", "p"), ("beta", "q")])).unwrap();
        let q_star = Formula::imp(Formula::var("q"), Formula::Bot);
        let rhs = Formula::or(Formula::var("q"), q_star);
        let lhs = Formula::or(Formula::and(Formula::var("p"), Formula::neg(Formula::var("p"))), rhs.clone());
        assert_eq!(f, Formula::iff_h(lhs, rhs));
    }

    #[test]
    fn axiom_sets_are_cumulative() {
        let ids = |n: &str| -> Vec<String> {
            LogicSpec::by_name(n).unwrap().schemas.iter().map(|s| s.id.clone()).collect()
        };
        let dhmsh = ids("DHMSH");
        assert_eq!(dhmsh.len(), 14);
        let dpch = ids("DPCH");
        assert_eq!(&dpch[..14], &dhmsh[..]);
        assert_eq!(&dpch[14..], ["15", "16", "17", "18", "19"]);
        let rdpch = ids("RDPCH");
        assert_eq!(&rdpch[..19], &dpch[..]);
        assert_eq!(rdpch[19], "M1");
        assert_eq!(&ids("DMH")[14..], ["15", "20"]);
        assert_eq!(ids("RDMH").last().unwrap(), "M2");
        assert_eq!(ids("RPCHd"), rdpch);
        assert!(LogicSpec::by_name("K").is_err());
    }

    #[test]
    fn evaluation_examples() {
        let c3 = chain(3);
        let f = parse_formula("p ->h q").unwrap();
        assert_eq!(eval_formula(&c3, &NegBinding::Plus, &f, &val(&c3, &[("p", "1"), ("q", "a")])).unwrap(), 1);
        let ax14 = parse_formula("~(p /\\ q) ->h (~p \\/ ~q)").unwrap();
        assert_eq!(eval_formula(&c3, &NegBinding::Plus, &ax14, &val(&c3, &[("p", "a"), ("q", "1")])).unwrap(), 2);
        let ax12 = parse_formula("top ->h ~bot").unwrap();
        assert_eq!(eval_formula(&c3, &NegBinding::Plus, &ax12, &BTreeMap::new()).unwrap(), 2);
        assert!(eval_formula(&c3, &NegBinding::Involution, &ax12, &BTreeMap::new()).is_err());
    }

    #[test]
    fn identity_negation_breaks_axiom_13() {
        let l = LogicSpec::by_name("DHMSH").unwrap();
        let m = Model::new(chain(3), NegBinding::Custom(vec![0, 1, 2]));
        let r = model_report(&l, &m).unwrap();
        assert!(!r.entry("13").unwrap().verdict.holds());
        assert_eq!(r.entry("13").unwrap().detail, "FAILS at -  lhs=0 rhs=1");
        let good = model_report(&l, &Model::new(chain(3), NegBinding::Plus)).unwrap();
        assert!(good.holds(), "{good}");
    }

    #[test]
    fn boolean_models_are_sound_for_every_logic() {
        // In a Boolean algebra * = + = ' is complementation.
        let b4 = boolean4();
        let comp = b4.table(Op::Star).unwrap().to_vec();
        let b4i = b4.clone().with_involution(comp).unwrap();
        for name in LOGIC_NAMES {
            let l = LogicSpec::by_name(name).unwrap();
            let model = match name {
                &"RPCHd" => Model::new(b4.dualize(), NegBinding::Star),
                _ if l.neg_binding == NegBinding::Involution => Model::new(b4i.clone(), NegBinding::Involution),
                _ => Model::new(b4.clone(), NegBinding::Plus),
            };
            let r = model_report(&l, &model).unwrap();
            assert!(r.holds(), "{name}\n{r}");
        }
    }

    #[test]
    fn semi_heyting_arrows_satisfy_the_base_logic() {
        // Every semi-Heyting arrow on C3, with ~ := +, is a DHMSH model.
        let c3 = chain(3);
        let l = LogicSpec::by_name("DHMSH").unwrap();
        let spec = crate::varieties::catalog("SH").unwrap();
        let mut semi = 0;
        let mut table = vec![0; 9];
        for code in 0..3usize.pow(9) {
            let mut c = code;
            for v in table.iter_mut() {
                *v = c % 3;
                c /= 3;
            }
            let a = c3.clone().with_table(Op::Arrow, table.clone()).unwrap();
            if !crate::varieties::check_membership(&a, &spec).unwrap().holds() {
                continue;
            }
            semi += 1;
            let r = model_report(&l, &Model::new(a, NegBinding::Plus)).unwrap();
            assert!(r.holds(), "{table:?}\n{r}");
        }
        // the Heyting arrow and at least one genuinely semi-Heyting one
        assert!(semi >= 2, "{semi}");
    }

    #[test]
    fn faithfulness_examples() {
        for a in [chain(3), boolean4(), chain(4).dualize()] {
            let r = faithfulness_check(&a).unwrap();
            assert!(r.holds(), "{r}");
        }
        // the constant-top arrow makes every delta formula designate
        let c3 = chain(3);
        let bad = c3.with_table(Op::Arrow, vec![2; 9]).unwrap();
        let r = faithfulness_check(&bad).unwrap();
        assert!(!r.entry("delta-implies-equal").unwrap().verdict.holds());
    }

    #[test]
    fn dual_listing_swaps_connectives() {
        let l = LogicSpec::by_name("RPCHd").unwrap();
        let listing = l.axiom_listing();
        assert!(listing.starts_with("1: alpha <-h alpha /\\ beta\n"), "{listing}");
        assert!(listing.contains("6: bot\n"));
        assert!(l.dual);
        assert_eq!(l.designated(&chain(3)), 0);
    }
}
