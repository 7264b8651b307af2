//! Propositional formulas over `{\/, /\, ->, ~, bot, top}`, with the dual
//! co-implication `<-` for the dual logic.
//!
//! Grammar:
//!
//! ```text
//! form := impl
//! impl := or ( ("->" | "<-" | "->h" | "<->h" | "<-h") or )?
//! or   := and ( "\/" and )*
//! and  := neg ( "/\" neg )*
//! neg  := "~" neg | atom
//! atom := "bot" | "top" | ident | "(" form ")"
//! ```
//!
//! The defined connectives expand while parsing: `a ->h b` is
//! `a -> (a /\ b)`, `a <->h b` is `(a ->h b) /\ (b ->h a)` and the dual
//! `a <-h b` is `a <- (a \/ b)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::term::{ParseError, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    PVar(String),
    Bot,
    Top,
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    CoImp(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::PVar(name.to_string())
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn coimp(l: Formula, r: Formula) -> Formula {
        Formula::CoImp(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    /// `a ->h b`, that is `a -> (a /\ b)`.
    pub fn imp_h(a: Formula, b: Formula) -> Formula {
        Formula::imp(a.clone(), Formula::and(a, b))
    }

    /// `a <->h b`.
    pub fn iff_h(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp_h(a.clone(), b.clone()), Formula::imp_h(b, a))
    }

    /// `a <-h b`, that is `a <- (a \/ b)`; the dual of `->h`.
    pub fn coimp_h(a: Formula, b: Formula) -> Formula {
        Formula::coimp(a.clone(), Formula::or(a, b))
    }

    /// `(a, b)` when the formula is `a ->h b`.
    pub fn as_imp_h(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, r) => match r.as_ref() {
                Formula::And(a2, b) if a2 == a => Some((a, b)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `(a, b)` when the formula is `a <-h b`.
    pub fn as_coimp_h(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::CoImp(a, r) => match r.as_ref() {
                Formula::Or(a2, b) if a2 == a => Some((a, b)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `(a, b)` when the formula is `a <->h b`.
    pub fn as_iff_h(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => {
                let (a, b) = l.as_imp_h()?;
                let (b2, a2) = r.as_imp_h()?;
                (a == a2 && b == b2).then_some((a, b))
            }
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::PVar(v) => {
                out.insert(v.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::Or(l, r) | Formula::And(l, r) | Formula::Imp(l, r) | Formula::CoImp(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Formula::Neg(f) => f.collect_vars(out),
        }
    }

    /// Simultaneous substitution of variables; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::PVar(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Bot | Formula::Top => self.clone(),
            Formula::Or(l, r) => Formula::or(l.substitute(map), r.substitute(map)),
            Formula::And(l, r) => Formula::and(l.substitute(map), r.substitute(map)),
            Formula::Imp(l, r) => Formula::imp(l.substitute(map), r.substitute(map)),
            Formula::CoImp(l, r) => Formula::coimp(l.substitute(map), r.substitute(map)),
            Formula::Neg(f) => Formula::neg(f.substitute(map)),
        }
    }

    /// Order dual: `\/` and `/\`, `bot` and `top`, `->` and `<-` swap; `~`
    /// stays. An involution.
    pub fn dualize(&self) -> Formula {
        match self {
            Formula::PVar(_) => self.clone(),
            Formula::Bot => Formula::Top,
            Formula::Top => Formula::Bot,
            Formula::Or(l, r) => Formula::and(l.dualize(), r.dualize()),
            Formula::And(l, r) => Formula::or(l.dualize(), r.dualize()),
            Formula::Imp(l, r) => Formula::coimp(l.dualize(), r.dualize()),
            Formula::CoImp(l, r) => Formula::imp(l.dualize(), r.dualize()),
            Formula::Neg(f) => Formula::neg(f.dualize()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::PVar(_) | Formula::Bot | Formula::Top => 1,
            Formula::Or(l, r) | Formula::And(l, r) | Formula::Imp(l, r) | Formula::CoImp(l, r) => {
                1 + l.size() + r.size()
            }
            Formula::Neg(f) => 1 + f.size(),
        }
    }

    /// The formula as a term, with `~` realized by `neg`.
    pub fn to_term(&self, neg: &dyn Fn(Term) -> Term) -> Term {
        match self {
            Formula::PVar(v) => Term::Var(v.clone()),
            Formula::Bot => Term::Zero,
            Formula::Top => Term::One,
            Formula::Or(l, r) => Term::join(l.to_term(neg), r.to_term(neg)),
            Formula::And(l, r) => Term::meet(l.to_term(neg), r.to_term(neg)),
            Formula::Imp(l, r) => Term::arrow(l.to_term(neg), r.to_term(neg)),
            Formula::CoImp(l, r) => Term::coarrow(l.to_term(neg), r.to_term(neg)),
            Formula::Neg(f) => neg(f.to_term(neg)),
        }
    }

    fn precedence(&self) -> u8 {
        if self.as_iff_h().is_some() {
            return 0;
        }
        match self {
            Formula::Imp(..) | Formula::CoImp(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Formula {
    /// Prints with the defined connectives folded back, so printing and
    /// parsing round-trip on the expanded tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, x: &Formula, min: u8) -> fmt::Result {
            if x.precedence() < min {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        }
        fn infix(f: &mut fmt::Formatter<'_>, l: &Formula, op: &str, r: &Formula) -> fmt::Result {
            side(f, l, 1)?;
            write!(f, " {op} ")?;
            side(f, r, 1)
        }
        if let Some((a, b)) = self.as_iff_h() {
            return infix(f, a, "<->h", b);
        }
        if let Some((a, b)) = self.as_imp_h() {
            return infix(f, a, "->h", b);
        }
        if let Some((a, b)) = self.as_coimp_h() {
            return infix(f, a, "<-h", b);
        }
        match self {
            Formula::PVar(v) => f.write_str(v),
            Formula::Bot => f.write_str("bot"),
            Formula::Top => f.write_str("top"),
            Formula::Imp(l, r) => infix(f, l, "->", r),
            Formula::CoImp(l, r) => infix(f, l, "<-", r),
            Formula::Or(l, r) => {
                side(f, l, 1)?;
                f.write_str(" \\/ ")?;
                side(f, r, 2)
            }
            Formula::And(l, r) => {
                side(f, l, 2)?;
                f.write_str(" /\\ ")?;
                side(f, r, 3)
            }
            Formula::Neg(x) => {
                f.write_str("~")?;
                side(f, x, 3)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Imp,
    CoImp,
    ImpH,
    IffH,
    CoImpH,
    Or,
    And,
    Neg,
    LParen,
    RParen,
    Bot,
    Top,
    Ident(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Imp => f.write_str("'->'"),
            Tok::CoImp => f.write_str("'<-'"),
            Tok::ImpH => f.write_str("'->h'"),
            Tok::IffH => f.write_str("'<->h'"),
            Tok::CoImpH => f.write_str("'<-h'"),
            Tok::Or => f.write_str("'\\/'"),
            Tok::And => f.write_str("'/\\'"),
            Tok::Neg => f.write_str("'~'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Bot => f.write_str("'bot'"),
            Tok::Top => f.write_str("'top'"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let ident_char = |c: u8| c.is_ascii_alphanumeric() || c == b'_';
    // `->h` only when the `h` does not start an identifier
    let sugar_at = |i: usize, lit: &[u8]| {
        bytes[i..].starts_with(lit) && bytes.get(i + lit.len()).is_none_or(|&c| !ident_char(c))
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = if sugar_at(i, b"<->h") {
            (Tok::IffH, 4)
        } else if sugar_at(i, b"->h") {
            (Tok::ImpH, 3)
        } else if sugar_at(i, b"<-h") {
            (Tok::CoImpH, 3)
        } else if bytes[i..].starts_with(b"->") {
            (Tok::Imp, 2)
        } else if bytes[i..].starts_with(b"<-") {
            (Tok::CoImp, 2)
        } else if bytes[i..].starts_with(b"\\/") {
            (Tok::Or, 2)
        } else if bytes[i..].starts_with(b"/\\") {
            (Tok::And, 2)
        } else {
            match c {
                b'~' => (Tok::Neg, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut j = i;
                    while j < bytes.len() && ident_char(bytes[j]) {
                        j += 1;
                    }
                    let word = &text[i..j];
                    let tok = match word {
                        "bot" => Tok::Bot,
                        "top" => Tok::Top,
                        _ => Tok::Ident(word.to_string()),
                    };
                    (tok, j - i)
                }
                _ => {
                    let found = text[i..].chars().next().map(|c| format!("'{c}'")).unwrap_or_default();
                    return Err(ParseError { position: i, expected: vec!["a formula symbol".into()], found });
                }
            }
        };
        out.push((i, tok));
        i += len;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) {
        if *self.peek() != Tok::End {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.toks[self.pos].0,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn form(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        let build: fn(Formula, Formula) -> Formula = match self.peek() {
            Tok::Imp => Formula::imp,
            Tok::CoImp => Formula::coimp,
            Tok::ImpH => Formula::imp_h,
            Tok::IffH => Formula::iff_h,
            Tok::CoImpH => Formula::coimp_h,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.or()?;
        Ok(build(lhs, rhs))
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.neg()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.neg()?);
        }
        Ok(acc)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Neg {
            self.bump();
            return Ok(Formula::neg(self.neg()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let f = match self.peek().clone() {
            Tok::Bot => Formula::Bot,
            Tok::Top => Formula::Top,
            Tok::Ident(name) => Formula::PVar(name),
            Tok::LParen => {
                self.bump();
                let f = self.form()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["')'"]));
                }
                f
            }
            _ => return Err(self.error(&["'bot'", "'top'", "identifier", "'~'", "'('"])),
        };
        self.bump();
        Ok(f)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.form()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["end of input"]));
    }
    Ok(f)
}

/// Parses a built-in formula, panicking on error.
pub(crate) fn formula(text: &str) -> Formula {
    parse_formula(text).unwrap_or_else(|e| panic!("built-in formula {text:?}: {e}"))
}
