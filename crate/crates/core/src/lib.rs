//! Finite-model workbench for bounded distributive lattices with
//! pseudocomplements, Heyting implications and De Morgan involutions, and for
//! the propositional logics they interpret.

pub mod algebra;
pub mod canon;
pub mod term;
pub mod varieties;
pub mod katrinak;
pub mod enumerate;
pub mod io;
pub mod logic;

pub use algebra::{AlgebraError, Elem, FiniteAlgebra, Op};
pub use canon::CanonicalForm;
pub use term::{
    check_identity, check_quasi_identity, eval_term, parse_identity, parse_quasi_identity,
    parse_term, Counterexample, EvalError, Identity, ParseError, QuasiIdentity, Term, Valuation,
    Verdict,
};
