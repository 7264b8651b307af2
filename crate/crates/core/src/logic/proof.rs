//! Proof scripts and the derivation checker.
//!
//! ```text
//! # comment
//! premises: p ; q
//! 1. p ; premise 1
//! 2. p ->h (p \/ q) ; ax 1 [alpha:=p, beta:=q]
//! 3. p \/ q ; mp 1,2
//! ```
//!
//! `premise` without an index accepts any declared premise.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::formula::{parse_formula, Formula};
use super::{instantiate_axiom, LogicSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// 1-based index into the premises, or any premise.
    Premise(Option<usize>),
    Axiom { id: String, substitution: BTreeMap<String, Formula> },
    /// From step `i` and step `j` = `i ->h current`.
    Mp(usize, usize),
    /// From step `i` = `f ->h g`, deduce `~g ->h ~f`.
    Cp(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub premises: Vec<Formula>,
    pub steps: Vec<Step>,
}

impl Derivation {
    /// Dualizes every formula, premise and substitution; step references
    /// are unchanged.
    pub fn dualize(&self) -> Derivation {
        Derivation {
            premises: self.premises.iter().map(Formula::dualize).collect(),
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    formula: s.formula.dualize(),
                    justification: match &s.justification {
                        Justification::Axiom { id, substitution } => Justification::Axiom {
                            id: id.clone(),
                            substitution: substitution.iter().map(|(k, v)| (k.clone(), v.dualize())).collect(),
                        },
                        j => j.clone(),
                    },
                })
                .collect(),
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Premise(None) => f.write_str("premise"),
            Justification::Premise(Some(i)) => write!(f, "premise {i}"),
            Justification::Axiom { id, substitution } => {
                write!(f, "ax {id}")?;
                if !substitution.is_empty() {
                    let parts: Vec<String> = substitution.iter().map(|(k, v)| format!("{k}:={v}")).collect();
                    write!(f, " [{}]", parts.join(", "))?;
                }
                Ok(())
            }
            Justification::Mp(i, j) => write!(f, "mp {i},{j}"),
            Justification::Cp(i) => write!(f, "cp {i}"),
        }
    }
}

impl fmt::Display for Derivation {
    /// The script form, which [`parse_script`] reads back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.premises.is_empty() {
            let ps: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
            writeln!(f, "premises: {}", ps.join(" ; "))?;
        }
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", k + 1, s.formula, s.justification)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn parse_index(text: &str, line: usize) -> Result<usize, ScriptError> {
    text.trim()
        .parse()
        .map_err(|_| ScriptError { line, message: format!("expected a step number, found {:?}", text.trim()) })
}

fn parse_justification(text: &str, line: usize) -> Result<Justification, ScriptError> {
    let err = |message: String| ScriptError { line, message };
    let text = text.trim();
    let (word, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    match word {
        "premise" if rest.is_empty() => Ok(Justification::Premise(None)),
        "premise" => Ok(Justification::Premise(Some(parse_index(rest, line)?))),
        "mp" => {
            let (i, j) = rest.split_once(',').ok_or_else(|| err(format!("mp needs two steps, found {rest:?}")))?;
            Ok(Justification::Mp(parse_index(i, line)?, parse_index(j, line)?))
        }
        "cp" => Ok(Justification::Cp(parse_index(rest, line)?)),
        "ax" => {
            let (id, subst) = match rest.split_once('[') {
                Some((id, s)) => {
                    let s = s.trim_end().strip_suffix(']').ok_or_else(|| err("unclosed '['".into()))?;
                    (id.trim(), s)
                }
                None => (rest, ""),
            };
            if id.is_empty() || id.contains(char::is_whitespace) {
                return Err(err(format!("expected an axiom id, found {id:?}")));
            }
            let mut substitution = BTreeMap::new();
            for part in subst.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (var, form) =
                    part.split_once(":=").ok_or_else(|| err(format!("expected var:=formula, found {part:?}")))?;
                let form = parse_formula(form).map_err(|e| err(format!("in substitution for {}: {e}", var.trim())))?;
                if substitution.insert(var.trim().to_string(), form).is_some() {
                    return Err(err(format!("{} substituted twice", var.trim())));
                }
            }
            Ok(Justification::Axiom { id: id.to_string(), substitution })
        }
        _ => Err(err(format!("unknown justification {text:?}"))),
    }
}

/// Parses a proof script. Steps must be numbered 1, 2, 3, ... in order.
pub fn parse_script(text: &str) -> Result<Derivation, ScriptError> {
    let mut d = Derivation::default();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| ScriptError { line, message };
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(rest) = l.strip_prefix("premises:") {
            if !d.steps.is_empty() || !d.premises.is_empty() {
                return Err(err("premises must be declared once, before the steps".into()));
            }
            for p in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                d.premises.push(parse_formula(p).map_err(|e| err(format!("premise: {e}")))?);
            }
            continue;
        }
        let (num, body) = l.split_once('.').ok_or_else(|| err("expected '<n>. <formula> ; <justification>'".into()))?;
        let num = parse_index(num, line)?;
        if num != d.steps.len() + 1 {
            return Err(err(format!("step numbered {num}, expected {}", d.steps.len() + 1)));
        }
        let (form, just) = body.rsplit_once(';').ok_or_else(|| err("missing ';' before the justification".into()))?;
        let formula = parse_formula(form.trim()).map_err(|e| err(e.to_string()))?;
        let justification = parse_justification(just, line)?;
        d.steps.push(Step { formula, justification });
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofVerdict {
    /// Every step checks; carries the last formula.
    Valid(Formula),
    /// The first bad step (1-based) and why.
    InvalidStep { step: usize, reason: String },
}

impl ProofVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ProofVerdict::Valid(_))
    }
}

impl fmt::Display for ProofVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofVerdict::Valid(c) => write!(f, "Valid: {c}"),
            ProofVerdict::InvalidStep { step, reason } => write!(f, "Invalid step {step}: {reason}"),
        }
    }
}

/// Checks each step against its justification, in order.
pub fn check_derivation(logic: &LogicSpec, d: &Derivation) -> ProofVerdict {
    let conn = if logic.dual { "<-h" } else { "->h" };
    for (k, step) in d.steps.iter().enumerate() {
        let current = &step.formula;
        let earlier = |i: usize| -> Result<&Formula, String> {
            if i == 0 || i > k {
                Err(format!("step {i} is not an earlier step"))
            } else {
                Ok(&d.steps[i - 1].formula)
            }
        };
        let outcome: Result<(), String> = match &step.justification {
            Justification::Premise(Some(i)) => match d.premises.get(i.wrapping_sub(1)) {
                None => Err(format!("there is no premise {i}")),
                Some(p) if p == current => Ok(()),
                Some(p) => Err(format!("premise {i} is {p}")),
            },
            Justification::Premise(None) => {
                if d.premises.contains(current) {
                    Ok(())
                } else {
                    Err("not a declared premise".into())
                }
            }
            Justification::Axiom { id, substitution } => match instantiate_axiom(logic, id, substitution) {
                Err(e) => Err(e.to_string()),
                Ok(inst) if &inst == current => Ok(()),
                Ok(inst) => Err(format!("axiom {id} instance is {inst}")),
            },
            Justification::Mp(i, j) => earlier(*i).and_then(|fi| {
                let fj = earlier(*j)?;
                if *fj == logic.rule_imp(fi.clone(), current.clone()) {
                    Ok(())
                } else {
                    Err(format!("MP shape mismatch: step {j} is not step {i} {conn} this step"))
                }
            }),
            Justification::Cp(i) => earlier(*i).and_then(|fi| {
                let (phi, gamma) = logic
                    .split_rule_imp(fi)
                    .ok_or_else(|| format!("CP shape mismatch: step {i} is not of the form f {conn} g"))?;
                let expected =
                    logic.rule_imp(Formula::neg(gamma.clone()), Formula::neg(phi.clone()));
                if expected == *current {
                    Ok(())
                } else {
                    Err(format!("CP shape mismatch: expected {expected}"))
                }
            }),
        };
        if let Err(reason) = outcome {
            return ProofVerdict::InvalidStep { step: k + 1, reason };
        }
    }
    match d.steps.last() {
        Some(s) => ProofVerdict::Valid(s.formula.clone()),
        None => ProofVerdict::InvalidStep { step: 0, reason: "no steps".into() },
    }
}
