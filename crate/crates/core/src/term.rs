//! Terms over `{\/, /\, ->, <-, *, +, ', 0, 1}` and exhaustive identity checking.
//!
//! Grammar:
//!
//! ```text
//! term := impl
//! impl := join ( "->" join | "<-" join )?
//! join := meet ( "\/" meet )*
//! meet := post ( "/\" post )*
//! post := atom ( "*" | "+" | "'" )*
//! atom := "0" | "1" | ident | "(" term ")"
//! ```
//!
//! Implications do not chain: `x -> y -> z` is rejected. Postfix operators
//! stack left to right, so `x*+'` is `((x*)+)'`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FiniteAlgebra, Op};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Arrow(Box<Term>, Box<Term>),
    CoArrow(Box<Term>, Box<Term>),
    Star(Box<Term>),
    Plus(Box<Term>),
    Prime(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::Join(Box::new(l), Box::new(r))
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::Meet(Box::new(l), Box::new(r))
    }

    pub fn arrow(l: Term, r: Term) -> Term {
        Term::Arrow(Box::new(l), Box::new(r))
    }

    pub fn coarrow(l: Term, r: Term) -> Term {
        Term::CoArrow(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn star(t: Term) -> Term {
        Term::Star(Box::new(t))
    }

    pub fn plus(t: Term) -> Term {
        Term::Plus(Box::new(t))
    }

    pub fn prime(t: Term) -> Term {
        Term::Prime(Box::new(t))
    }

    /// Distinct variable names, sorted.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Join(l, r) | Term::Meet(l, r) | Term::Arrow(l, r) | Term::CoArrow(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Star(t) | Term::Plus(t) | Term::Prime(t) => t.collect_vars(out),
        }
    }

    /// Operation symbols (beyond lattice operations and constants) used by the term.
    pub fn ops(&self) -> BTreeSet<Op> {
        let mut out = BTreeSet::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops(&self, out: &mut BTreeSet<Op>) {
        match self {
            Term::Var(_) | Term::Zero | Term::One => {}
            Term::Join(l, r) | Term::Meet(l, r) => {
                l.collect_ops(out);
                r.collect_ops(out);
            }
            Term::Arrow(l, r) | Term::CoArrow(l, r) => {
                out.insert(if matches!(self, Term::Arrow(..)) { Op::Arrow } else { Op::CoArrow });
                l.collect_ops(out);
                r.collect_ops(out);
            }
            Term::Star(t) | Term::Plus(t) | Term::Prime(t) => {
                out.insert(match self {
                    Term::Star(_) => Op::Star,
                    Term::Plus(_) => Op::Plus,
                    _ => Op::Prime,
                });
                t.collect_ops(out);
            }
        }
    }

    /// Replaces variables by terms; unmapped variables are kept.
    pub fn substitute(&self, map: &BTreeMap<String, Term>) -> Term {
        self.map_nodes(&|t| match t {
            Term::Var(v) => map.get(v).cloned(),
            _ => None,
        })
    }

    /// Rewrites every `t+` as `t'*'`, the dual pseudocomplement of a De Morgan
    /// p-algebra.
    pub fn plus_via_prime(&self) -> Term {
        match self {
            Term::Plus(t) => Term::prime(Term::star(Term::prime(t.plus_via_prime()))),
            other => other.map_children(&|c| c.plus_via_prime()),
        }
    }

    fn map_nodes(&self, f: &dyn Fn(&Term) -> Option<Term>) -> Term {
        if let Some(t) = f(self) {
            return t;
        }
        self.map_children(&|c| c.map_nodes(f))
    }

    fn map_children(&self, f: &dyn Fn(&Term) -> Term) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Join(l, r) => Term::join(f(l), f(r)),
            Term::Meet(l, r) => Term::meet(f(l), f(r)),
            Term::Arrow(l, r) => Term::arrow(f(l), f(r)),
            Term::CoArrow(l, r) => Term::coarrow(f(l), f(r)),
            Term::Star(t) => Term::star(f(t)),
            Term::Plus(t) => Term::plus(f(t)),
            Term::Prime(t) => Term::prime(f(t)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Arrow(..) | Term::CoArrow(..) => 0,
            Term::Join(..) => 1,
            Term::Meet(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
            if t.precedence() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        }
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Arrow(l, r) | Term::CoArrow(l, r) => {
                side(f, l, 1)?;
                f.write_str(if matches!(self, Term::Arrow(..)) { " -> " } else { " <- " })?;
                side(f, r, 1)
            }
            Term::Join(l, r) => {
                side(f, l, 1)?;
                f.write_str(" \\/ ")?;
                side(f, r, 2)
            }
            Term::Meet(l, r) => {
                side(f, l, 2)?;
                f.write_str(" /\\ ")?;
                side(f, r, 3)
            }
            Term::Star(t) | Term::Plus(t) | Term::Prime(t) => {
                side(f, t, 3)?;
                f.write_str(match self {
                    Term::Star(_) => "*",
                    Term::Plus(_) => "+",
                    _ => "'",
                })
            }
        }
    }
}

/// `lhs ~ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Identity { lhs, rhs }
    }

    /// `s <= t`, encoded as `s \/ t ~ t`.
    pub fn le(s: Term, t: Term) -> Self {
        Identity::new(Term::join(s, t.clone()), t)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }

    pub fn ops(&self) -> BTreeSet<Op> {
        let mut o = self.lhs.ops();
        o.extend(self.rhs.ops());
        o
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self.lhs, self.rhs)
    }
}

/// `p1 & ... & pk => c`; with no premises it is just the identity `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIdentity {
    pub premises: Vec<Identity>,
    pub conclusion: Identity,
}

impl QuasiIdentity {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.conclusion.vars();
        for p in &self.premises {
            v.extend(p.vars());
        }
        v
    }

    pub fn ops(&self) -> BTreeSet<Op> {
        let mut o = self.conclusion.ops();
        for p in &self.premises {
            o.extend(p.ops());
        }
        o
    }
}

impl From<Identity> for QuasiIdentity {
    fn from(conclusion: Identity) -> Self {
        QuasiIdentity { premises: Vec::new(), conclusion }
    }
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.premises.is_empty() {
            let ps: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
            write!(f, "{} => ", ps.join(" & "))?;
        }
        write!(f, "{}", self.conclusion)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Arrow,
    CoArrow,
    Join,
    Meet,
    Star,
    Plus,
    Prime,
    LParen,
    RParen,
    Zero,
    One,
    Ident(String),
    Tilde,
    Amp,
    Implies,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Arrow => f.write_str("'->'"),
            Tok::CoArrow => f.write_str("'<-'"),
            Tok::Join => f.write_str("'\\/'"),
            Tok::Meet => f.write_str("'/\\'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Prime => f.write_str("'''"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Zero => f.write_str("'0'"),
            Tok::One => f.write_str("'1'"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Tilde => f.write_str("'~'"),
            Tok::Amp => f.write_str("'&'"),
            Tok::Implies => f.write_str("'=>'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = &bytes[i..(i + 2).min(bytes.len())];
        let (tok, len) = match two {
            b"->" => (Tok::Arrow, 2),
            b"<-" => (Tok::CoArrow, 2),
            b"\\/" => (Tok::Join, 2),
            b"/\\" => (Tok::Meet, 2),
            b"=>" => (Tok::Implies, 2),
            _ => match c {
                b'*' => (Tok::Star, 1),
                b'+' => (Tok::Plus, 1),
                b'\'' => (Tok::Prime, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b'0' => (Tok::Zero, 1),
                b'1' => (Tok::One, 1),
                b'~' => (Tok::Tilde, 1),
                b'&' => (Tok::Amp, 1),
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = i;
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    (Tok::Ident(text[start..j].to_string()), j - start)
                }
                _ => {
                    let found = text[i..].chars().next().map(|c| format!("'{c}'")).unwrap_or_default();
                    return Err(ParseError {
                        position: i,
                        expected: vec!["a term symbol".into()],
                        found,
                    });
                }
            },
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
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.toks[self.pos].0,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let lhs = self.join()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(Term::arrow(lhs, self.join()?))
            }
            Tok::CoArrow => {
                self.bump();
                Ok(Term::coarrow(lhs, self.join()?))
            }
            _ => Ok(lhs),
        }
    }

    fn join(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.meet()?;
        while *self.peek() == Tok::Join {
            self.bump();
            acc = Term::join(acc, self.meet()?);
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.post()?;
        while *self.peek() == Tok::Meet {
            self.bump();
            acc = Term::meet(acc, self.post()?);
        }
        Ok(acc)
    }

    fn post(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        loop {
            acc = match self.peek() {
                Tok::Star => Term::star(acc),
                Tok::Plus => Term::plus(acc),
                Tok::Prime => Term::prime(acc),
                _ => return Ok(acc),
            };
            self.bump();
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            _ => Err(self.error(&["'0'", "'1'", "identifier", "'('"])),
        }
    }

    fn identity(&mut self) -> Result<Identity, ParseError> {
        let lhs = self.term()?;
        self.expect(Tok::Tilde, "'~'")?;
        let rhs = self.term()?;
        Ok(Identity::new(lhs, rhs))
    }

    fn finish(&self, expected: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish(&["end of input"])?;
    Ok(t)
}

/// Parses an identity line `<term> ~ <term>`.
pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut p = Parser::new(text)?;
    let id = p.identity()?;
    p.finish(&["end of input"])?;
    Ok(id)
}

/// Parses `<id> & <id> ... => <id>`; a bare identity is a quasi-identity
/// without premises.
pub fn parse_quasi_identity(text: &str) -> Result<QuasiIdentity, ParseError> {
    let mut p = Parser::new(text)?;
    let mut ids = vec![p.identity()?];
    while *p.peek() == Tok::Amp {
        p.bump();
        ids.push(p.identity()?);
    }
    match p.peek() {
        Tok::Implies => {
            p.bump();
            let conclusion = p.identity()?;
            p.finish(&["end of input"])?;
            Ok(QuasiIdentity { premises: ids, conclusion })
        }
        Tok::End if ids.len() == 1 => Ok(QuasiIdentity::from(ids.pop().unwrap())),
        _ => Err(p.error(&["'&'", "'=>'"])),
    }
}

/// Parses a term and panics on error. For built-in, known-good term text.
pub(crate) fn term(text: &str) -> Term {
    parse_term(text).unwrap_or_else(|e| panic!("built-in term {text:?}: {e}"))
}

pub(crate) fn identity(text: &str) -> Identity {
    parse_identity(text).unwrap_or_else(|e| panic!("built-in identity {text:?}: {e}"))
}

// ---------------------------------------------------------------------------
// Evaluation

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is not bound by the valuation")]
    UnboundVariable(String),
    #[error("operation {0} is absent on this algebra")]
    OperationAbsent(Op),
    #[error("element index {0} is out of range")]
    ElementOutOfRange(Elem),
}

impl From<AlgebraError> for EvalError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::OperationAbsent(op) => EvalError::OperationAbsent(op),
            other => panic!("unexpected algebra error during evaluation: {other}"),
        }
    }
}

pub type Valuation = BTreeMap<String, Elem>;

#[derive(Clone, Copy, Debug)]
enum Instr {
    Var(usize),
    Zero,
    One,
    Join(usize, usize),
    Meet(usize, usize),
    Arrow(usize, usize),
    CoArrow(usize, usize),
    Star(usize),
    Plus(usize),
    Prime(usize),
}

/// A term flattened into straight-line code over variable slots.
#[derive(Clone, Debug)]
pub(crate) struct Program {
    code: Vec<Instr>,
}

impl Program {
    /// Compiles `t` with variables numbered by their position in `vars`.
    pub(crate) fn compile(t: &Term, vars: &[String]) -> Result<Program, EvalError> {
        let mut code = Vec::new();
        Self::emit(t, vars, &mut code)?;
        Ok(Program { code })
    }

    fn emit(t: &Term, vars: &[String], code: &mut Vec<Instr>) -> Result<usize, EvalError> {
        let instr = match t {
            Term::Var(v) => Instr::Var(
                vars.iter()
                    .position(|x| x == v)
                    .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
            ),
            Term::Zero => Instr::Zero,
            Term::One => Instr::One,
            Term::Join(l, r) => Instr::Join(Self::emit(l, vars, code)?, Self::emit(r, vars, code)?),
            Term::Meet(l, r) => Instr::Meet(Self::emit(l, vars, code)?, Self::emit(r, vars, code)?),
            Term::Arrow(l, r) => Instr::Arrow(Self::emit(l, vars, code)?, Self::emit(r, vars, code)?),
            Term::CoArrow(l, r) => {
                Instr::CoArrow(Self::emit(l, vars, code)?, Self::emit(r, vars, code)?)
            }
            Term::Star(x) => Instr::Star(Self::emit(x, vars, code)?),
            Term::Plus(x) => Instr::Plus(Self::emit(x, vars, code)?),
            Term::Prime(x) => Instr::Prime(Self::emit(x, vars, code)?),
        };
        code.push(instr);
        Ok(code.len() - 1)
    }

    pub(crate) fn bind<'a>(&'a self, a: &'a FiniteAlgebra) -> Result<Bound<'a>, EvalError> {
        let need = |op: Op| a.table(op).ok_or(EvalError::OperationAbsent(op));
        let mut tables = Tables::default();
        for instr in &self.code {
            match instr {
                Instr::Arrow(..) => tables.arrow = need(Op::Arrow)?,
                Instr::CoArrow(..) => tables.coarrow = need(Op::CoArrow)?,
                Instr::Star(_) => tables.star = need(Op::Star)?,
                Instr::Plus(_) => tables.plus = need(Op::Plus)?,
                Instr::Prime(_) => tables.prime = need(Op::Prime)?,
                _ => {}
            }
        }
        Ok(Bound { program: self, algebra: a, tables })
    }
}

#[derive(Clone, Default)]
struct Tables<'a> {
    star: &'a [Elem],
    plus: &'a [Elem],
    arrow: &'a [Elem],
    coarrow: &'a [Elem],
    prime: &'a [Elem],
}

/// A compiled term bound to an algebra whose tables are known to be present.
#[derive(Clone)]
pub(crate) struct Bound<'a> {
    program: &'a Program,
    algebra: &'a FiniteAlgebra,
    tables: Tables<'a>,
}

impl Bound<'_> {
    pub(crate) fn scratch(&self) -> Vec<Elem> {
        vec![0; self.program.code.len()]
    }

    /// Evaluates with `env[i]` bound to variable slot `i`.
    pub(crate) fn eval(&self, env: &[Elem], regs: &mut [Elem]) -> Elem {
        let a = self.algebra;
        let n = a.n();
        let (meet, join) = (a.meet_table(), a.join_table());
        let t = &self.tables;
        for (k, instr) in self.program.code.iter().enumerate() {
            regs[k] = match *instr {
                Instr::Var(i) => env[i],
                Instr::Zero => a.bot(),
                Instr::One => a.top(),
                Instr::Join(l, r) => join[regs[l] * n + regs[r]],
                Instr::Meet(l, r) => meet[regs[l] * n + regs[r]],
                Instr::Arrow(l, r) => t.arrow[regs[l] * n + regs[r]],
                Instr::CoArrow(l, r) => t.coarrow[regs[l] * n + regs[r]],
                Instr::Star(x) => t.star[regs[x]],
                Instr::Plus(x) => t.plus[regs[x]],
                Instr::Prime(x) => t.prime[regs[x]],
            };
        }
        regs[self.program.code.len() - 1]
    }
}

/// Evaluates `t` on `a` under `valuation`.
pub fn eval_term(a: &FiniteAlgebra, t: &Term, valuation: &Valuation) -> Result<Elem, EvalError> {
    let vars: Vec<String> = t.vars().into_iter().collect();
    let mut env = Vec::with_capacity(vars.len());
    for v in &vars {
        let e = *valuation.get(v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
        if e >= a.n() {
            return Err(EvalError::ElementOutOfRange(e));
        }
        env.push(e);
    }
    let program = Program::compile(t, &vars)?;
    let bound = program.bind(a)?;
    let mut regs = bound.scratch();
    Ok(bound.eval(&env, &mut regs))
}

/// Tabulates a term in the variables `vars` (in that slot order) over all
/// valuations, lexicographically. Used to materialize derived operations.
pub fn tabulate(a: &FiniteAlgebra, t: &Term, vars: &[&str]) -> Result<Vec<Elem>, EvalError> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let program = Program::compile(t, &vars)?;
    let bound = program.bind(a)?;
    let mut regs = bound.scratch();
    let mut out = Vec::new();
    for_each_valuation(a.n(), vars.len(), |env| {
        out.push(bound.eval(env, &mut regs));
        true
    });
    Ok(out)
}

/// Visits all `n^k` valuations in lexicographic order (slot 0 most
/// significant) until `f` returns false. Returns whether the walk completed.
pub(crate) fn for_each_valuation(n: usize, k: usize, mut f: impl FnMut(&[Elem]) -> bool) -> bool {
    let mut env = vec![0; k];
    loop {
        if !f(&env) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            env[i] += 1;
            if env[i] < n {
                break;
            }
            env[i] = 0;
        }
    }
}

/// A failing valuation with the two sides' values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Vec<(String, Elem)>,
    pub lhs: Elem,
    pub rhs: Elem,
}

impl Counterexample {
    /// `x=b,y=a  lhs=b rhs=a` using the algebra's labels.
    pub fn describe(&self, a: &FiniteAlgebra) -> String {
        let assign = if self.assignment.is_empty() {
            "-".to_string()
        } else {
            self.assignment
                .iter()
                .map(|(v, e)| format!("{v}={}", a.label(*e)))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{assign}  lhs={} rhs={}", a.label(self.lhs), a.label(self.rhs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    FailsAt(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    /// `HOLDS` or `FAILS at x=b,y=a  lhs=b rhs=a`.
    pub fn describe(&self, a: &FiniteAlgebra) -> String {
        match self {
            Verdict::Holds => "HOLDS".to_string(),
            Verdict::FailsAt(c) => format!("FAILS at {}", c.describe(a)),
        }
    }
}

/// Decides `a |= id` over all valuations. The counterexample is the
/// lexicographically first failing valuation (variables sorted by name).
pub fn check_identity(a: &FiniteAlgebra, id: &Identity) -> Result<Verdict, EvalError> {
    check_quasi_identity(a, &QuasiIdentity::from(id.clone()))
}

/// Decides a quasi-identity over all valuations: wherever every premise holds,
/// the conclusion must hold.
pub fn check_quasi_identity(a: &FiniteAlgebra, q: &QuasiIdentity) -> Result<Verdict, EvalError> {
    let vars: Vec<String> = q.vars().into_iter().collect();
    let compile_pair = |id: &Identity| -> Result<(Program, Program), EvalError> {
        Ok((Program::compile(&id.lhs, &vars)?, Program::compile(&id.rhs, &vars)?))
    };
    let premises: Vec<(Program, Program)> =
        q.premises.iter().map(compile_pair).collect::<Result<_, _>>()?;
    let conclusion = compile_pair(&q.conclusion)?;
    // bind once to surface OperationAbsent before any work
    for (l, r) in premises.iter().chain(std::iter::once(&conclusion)) {
        l.bind(a)?;
        r.bind(a)?;
    }

    let n = a.n();
    let k = vars.len();
    let search = |first: Option<Elem>| -> Option<Counterexample> {
        fn bind<'a>(pair: &'a (Program, Program), a: &'a FiniteAlgebra) -> (Bound<'a>, Bound<'a>) {
            (pair.0.bind(a).unwrap(), pair.1.bind(a).unwrap())
        }
        let prem: Vec<_> = premises.iter().map(|p| bind(p, a)).collect();
        let (cl, cr) = bind(&conclusion, a);
        let width = prem
            .iter()
            .chain(std::iter::once(&(cl.clone(), cr.clone())))
            .flat_map(|(l, r)| [l.program.code.len(), r.program.code.len()])
            .max()
            .unwrap_or(1);
        let mut regs_l = vec![0; width];
        let mut regs_r = vec![0; width];
        let mut env = vec![0; k];
        let mut found = None;
        let rest = if first.is_some() { k - 1 } else { k };
        for_each_valuation(n, rest, |tail| {
            if let Some(f) = first {
                env[0] = f;
                env[1..].copy_from_slice(tail);
            } else {
                env.copy_from_slice(tail);
            }
            let premises_hold = prem
                .iter()
                .all(|(l, r)| l.eval(&env, &mut regs_l) == r.eval(&env, &mut regs_r));
            if premises_hold {
                let lv = cl.eval(&env, &mut regs_l);
                let rv = cr.eval(&env, &mut regs_r);
                if lv != rv {
                    found = Some(Counterexample {
                        assignment: vars.iter().cloned().zip(env.iter().copied()).collect(),
                        lhs: lv,
                        rhs: rv,
                    });
                    return false;
                }
            }
            true
        });
        found
    };

    // Partition on the most significant variable; the first partition with a
    // failure holds the lexicographically first counterexample.
    let result = if k == 0 || n.pow(k as u32) < 4096 {
        search(None)
    } else {
        (0..n).into_par_iter().find_map_first(|f| search(Some(f)))
    };
    Ok(match result {
        Some(c) => Verdict::FailsAt(c),
        None => Verdict::Holds,
    })
}
