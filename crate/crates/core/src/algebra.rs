//! Finite bounded distributive lattices and the operations derived from their order.
//!
//! A [`FiniteAlgebra`] is built from an order relation on dense indices `0..n`.
//! Meets and joins are read off the order, and every derived operation that
//! exists on the lattice (pseudocomplement `*`, dual pseudocomplement `+`,
//! Heyting arrow `->`, co-implication `<-`) is tabulated eagerly. On a finite
//! distributive lattice all four always exist; the tables stay optional so
//! that signature views (see [`FiniteAlgebra::restrict`]) and deliberately
//! corrupted tables can be represented with the same type.
//!
//! Co-implication convention: `x <- y` is the least `z` with `y <= x \/ z`,
//! so that `x <- 1` is the dual pseudocomplement `x+`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Dense element index.
pub type Elem = usize;

/// Operation symbols beyond the bounded-lattice signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Star,
    Plus,
    Arrow,
    CoArrow,
    Prime,
}

impl Op {
    pub const ALL: [Op; 5] = [Op::Star, Op::Plus, Op::Arrow, Op::CoArrow, Op::Prime];

    pub fn arity(self) -> usize {
        match self {
            Op::Star | Op::Plus | Op::Prime => 1,
            Op::Arrow | Op::CoArrow => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Star => "*",
            Op::Plus => "+",
            Op::Arrow => "->",
            Op::CoArrow => "<-",
            Op::Prime => "'",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra must have at least one element")]
    Empty,
    #[error("order pair ({0}, {1}) refers to an element outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("not a partial order: {0} <= {1} and {1} <= {0} for distinct elements")]
    NotAPartialOrder(Elem, Elem),
    #[error("not bounded: no {0} element")]
    NotBounded(&'static str),
    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(Elem, Elem, &'static str),
    #[error("not distributive: {0} /\\ ({1} \\/ {2}) differs from ({0} /\\ {1}) \\/ ({0} /\\ {2})")]
    NotDistributive(Elem, Elem, Elem),
    #[error("operation {0} is absent on this algebra")]
    OperationAbsent(Op),
    #[error("table for {op} is malformed: {reason}")]
    BadTable { op: Op, reason: String },
    #[error("involution is invalid: {0}")]
    BadInvolution(String),
    #[error("expected {op} table does not match the derived one at {at}")]
    ExpectMismatch { op: Op, at: String },
}

/// A finite bounded distributive lattice with optional operation tables.
///
/// Immutable once built; every operation is a table lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    labels: Vec<String>,
    le: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bot: Elem,
    top: Elem,
    star: Option<Vec<Elem>>,
    plus: Option<Vec<Elem>>,
    arrow: Option<Vec<Elem>>,
    coarrow: Option<Vec<Elem>>,
    involution: Option<Vec<Elem>>,
}

impl FiniteAlgebra {
    /// Builds and validates an algebra from order pairs `(i, j)` meaning `i <= j`.
    ///
    /// Reflexive and transitive closure is applied. Derived tables that do not
    /// exist are left absent.
    pub fn build_from_order<S: AsRef<str>>(
        name: &str,
        labels: &[S],
        le_pairs: &[(usize, usize)],
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(i, j) in le_pairs {
            if i >= n || j >= n {
                return Err(AlgebraError::IndexOutOfRange(i, j, n));
            }
            le[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i * n + j] && le[j * n + i] {
                    return Err(AlgebraError::NotAPartialOrder(i, j));
                }
            }
        }
        let bot = (0..n)
            .find(|&b| (0..n).all(|x| le[b * n + x]))
            .ok_or(AlgebraError::NotBounded("least"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le[x * n + t]))
            .ok_or(AlgebraError::NotBounded("greatest"))?;

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<Elem> = (0..n).filter(|&z| le[z * n + a] && le[z * n + b]).collect();
                meet[a * n + b] = *lower
                    .iter()
                    .find(|&&g| lower.iter().all(|&z| le[z * n + g]))
                    .ok_or(AlgebraError::NotALattice(a, b, "meet"))?;
                let upper: Vec<Elem> = (0..n).filter(|&z| le[a * n + z] && le[b * n + z]).collect();
                join[a * n + b] = *upper
                    .iter()
                    .find(|&&l| upper.iter().all(|&z| le[l * n + z]))
                    .ok_or(AlgebraError::NotALattice(a, b, "join"))?;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = meet[x * n + join[y * n + z]];
                    let rhs = join[meet[x * n + y] * n + meet[x * n + z]];
                    if lhs != rhs {
                        return Err(AlgebraError::NotDistributive(x, y, z));
                    }
                }
            }
        }

        let mut algebra = FiniteAlgebra {
            name: name.to_string(),
            labels: labels.iter().map(|s| s.as_ref().to_string()).collect(),
            le,
            meet,
            join,
            bot,
            top,
            star: None,
            plus: None,
            arrow: None,
            coarrow: None,
            involution: None,
        };
        algebra.star = algebra.derive_star();
        algebra.plus = algebra.derive_plus();
        algebra.arrow = algebra.derive_arrow();
        algebra.coarrow = algebra.derive_coarrow();
        Ok(algebra)
    }

    /// Greatest element of `candidates` in the lattice order, if one exists.
    fn greatest(&self, candidates: impl Iterator<Item = Elem> + Clone) -> Option<Elem> {
        candidates
            .clone()
            .find(|&g| candidates.clone().all(|z| self.le(z, g)))
    }

    fn least(&self, candidates: impl Iterator<Item = Elem> + Clone) -> Option<Elem> {
        candidates
            .clone()
            .find(|&l| candidates.clone().all(|z| self.le(l, z)))
    }

    fn derive_star(&self) -> Option<Vec<Elem>> {
        let n = self.n();
        (0..n)
            .map(|x| self.greatest((0..n).filter(move |&z| self.meet(x, z) == self.bot)))
            .collect()
    }

    fn derive_plus(&self) -> Option<Vec<Elem>> {
        let n = self.n();
        (0..n)
            .map(|x| self.least((0..n).filter(move |&z| self.join(x, z) == self.top)))
            .collect()
    }

    fn derive_arrow(&self) -> Option<Vec<Elem>> {
        let n = self.n();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(self.greatest((0..n).filter(move |&z| self.le(self.meet(x, z), y)))?);
            }
        }
        Some(table)
    }

    fn derive_coarrow(&self) -> Option<Vec<Elem>> {
        let n = self.n();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(self.least((0..n).filter(move |&z| self.le(y, self.join(x, z))))?);
            }
        }
        Some(table)
    }

    /// Attaches a De Morgan involution after checking it is an order-reversing
    /// involutive bijection.
    pub fn with_involution(mut self, table: Vec<Elem>) -> Result<Self, AlgebraError> {
        let n = self.n();
        if table.len() != n {
            return Err(AlgebraError::BadInvolution(format!(
                "expected {n} entries, found {}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(AlgebraError::BadInvolution(format!("image {bad} out of range")));
        }
        for x in 0..n {
            if table[table[x]] != x {
                return Err(AlgebraError::BadInvolution(format!(
                    "{0}'' = {1}, not {0}",
                    self.labels[x], self.labels[table[table[x]]]
                )));
            }
            for y in 0..n {
                if self.le(x, y) && !self.le(table[y], table[x]) {
                    return Err(AlgebraError::BadInvolution(format!(
                        "{} <= {} but the images are not reversed",
                        self.labels[x], self.labels[y]
                    )));
                }
            }
        }
        self.involution = Some(table);
        Ok(self)
    }

    /// Replaces (or installs) the table for `op` without checking that it is the
    /// derived operation. Only the shape is validated. Used for functor outputs,
    /// semi-Heyting arrows, dual hemimorphisms and negative controls.
    pub fn with_table(mut self, op: Op, table: Vec<Elem>) -> Result<Self, AlgebraError> {
        let n = self.n();
        let expected = if op.arity() == 1 { n } else { n * n };
        if table.len() != expected {
            return Err(AlgebraError::BadTable {
                op,
                reason: format!("expected {expected} entries, found {}", table.len()),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(AlgebraError::BadTable {
                op,
                reason: format!("value {bad} out of range"),
            });
        }
        *self.slot_mut(op) = Some(table);
        Ok(self)
    }

    /// Drops the table for `op`.
    pub fn without(mut self, op: Op) -> Self {
        *self.slot_mut(op) = None;
        self
    }

    /// Keeps only the tables of the listed operations (a signature view).
    pub fn restrict(mut self, ops: &[Op]) -> Self {
        for op in Op::ALL {
            if !ops.contains(&op) {
                *self.slot_mut(op) = None;
            }
        }
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn slot_mut(&mut self, op: Op) -> &mut Option<Vec<Elem>> {
        match op {
            Op::Star => &mut self.star,
            Op::Plus => &mut self.plus,
            Op::Arrow => &mut self.arrow,
            Op::CoArrow => &mut self.coarrow,
            Op::Prime => &mut self.involution,
        }
    }

    pub fn table(&self, op: Op) -> Option<&[Elem]> {
        match op {
            Op::Star => self.star.as_deref(),
            Op::Plus => self.plus.as_deref(),
            Op::Arrow => self.arrow.as_deref(),
            Op::CoArrow => self.coarrow.as_deref(),
            Op::Prime => self.involution.as_deref(),
        }
    }

    pub fn has(&self, op: Op) -> bool {
        self.table(op).is_some()
    }

    /// Operations whose tables are present.
    pub fn signature(&self) -> BTreeSet<Op> {
        Op::ALL.into_iter().filter(|&op| self.has(op)).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.le[a * self.n() + b]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n() + b]
    }

    pub fn meet_table(&self) -> &[Elem] {
        &self.meet
    }

    pub fn join_table(&self) -> &[Elem] {
        &self.join
    }

    pub fn le_table(&self) -> &[bool] {
        &self.le
    }

    /// `x*`, the largest `z` with `x /\ z = 0`.
    pub fn pseudocomplement(&self, x: Elem) -> Result<Elem, AlgebraError> {
        self.unary(Op::Star, x)
    }

    /// `x+`, the least `z` with `x \/ z = 1`.
    pub fn dual_pseudocomplement(&self, x: Elem) -> Result<Elem, AlgebraError> {
        self.unary(Op::Plus, x)
    }

    /// `x -> y`, the largest `z` with `x /\ z <= y`.
    pub fn heyting_arrow(&self, x: Elem, y: Elem) -> Result<Elem, AlgebraError> {
        self.binary(Op::Arrow, x, y)
    }

    /// `x <- y`, the least `z` with `y <= x \/ z`.
    pub fn dual_arrow(&self, x: Elem, y: Elem) -> Result<Elem, AlgebraError> {
        self.binary(Op::CoArrow, x, y)
    }

    pub fn involution(&self, x: Elem) -> Result<Elem, AlgebraError> {
        self.unary(Op::Prime, x)
    }

    pub fn unary(&self, op: Op, x: Elem) -> Result<Elem, AlgebraError> {
        self.table(op)
            .map(|t| t[x])
            .ok_or(AlgebraError::OperationAbsent(op))
    }

    pub fn binary(&self, op: Op, x: Elem, y: Elem) -> Result<Elem, AlgebraError> {
        let n = self.n();
        self.table(op)
            .map(|t| t[x * n + y])
            .ok_or(AlgebraError::OperationAbsent(op))
    }

    /// Order-dual algebra: meet and join, bounds, `*`/`+` and `->`/`<-` swap.
    ///
    /// The dual arrow of the reversed order coincides with `<-` under the
    /// argument convention above, so the tables swap without transposition.
    /// Dualizing twice gives back the same algebra, name included.
    pub fn dualize(&self) -> FiniteAlgebra {
        let n = self.n();
        let mut le = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                le[a * n + b] = self.le(b, a);
            }
        }
        let name = match self.name.strip_suffix("^d") {
            Some(base) => base.to_string(),
            None => format!("{}^d", self.name),
        };
        FiniteAlgebra {
            name,
            labels: self.labels.clone(),
            le,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bot: self.top,
            top: self.bot,
            star: self.plus.clone(),
            plus: self.star.clone(),
            arrow: self.coarrow.clone(),
            coarrow: self.arrow.clone(),
            involution: self.involution.clone(),
        }
    }

    /// Checks every present `*`, `+`, `->`, `<-` table against its defining
    /// extremal property. Returns the first operation that disagrees.
    pub fn verify_derived(&self) -> Result<(), AlgebraError> {
        let n = self.n();
        let checks: [(Op, Option<Vec<Elem>>); 4] = [
            (Op::Star, self.derive_star()),
            (Op::Plus, self.derive_plus()),
            (Op::Arrow, self.derive_arrow()),
            (Op::CoArrow, self.derive_coarrow()),
        ];
        for (op, derived) in checks {
            if let Some(table) = self.table(op) {
                let Some(derived) = derived else {
                    return Err(AlgebraError::OperationAbsent(op));
                };
                if let Some(i) = (0..table.len()).find(|&i| table[i] != derived[i]) {
                    let at = if op.arity() == 1 {
                        self.labels[i].clone()
                    } else {
                        format!("({}, {})", self.labels[i / n], self.labels[i % n])
                    };
                    return Err(AlgebraError::ExpectMismatch { op, at });
                }
            }
        }
        Ok(())
    }

    /// Cartesian product with componentwise order and operations.
    ///
    /// Elements are pairs `(a, b)` at index `a * m + b`; labels are `a.b`.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
        let (n, m) = (self.n(), other.n());
        let labels: Vec<String> = (0..n * m)
            .map(|i| format!("{}.{}", self.labels[i / m], other.labels[i % m]))
            .collect();
        let mut pairs = Vec::new();
        for i in 0..n * m {
            for j in 0..n * m {
                if self.le(i / m, j / m) && other.le(i % m, j % m) {
                    pairs.push((i, j));
                }
            }
        }
        let mut product = FiniteAlgebra::build_from_order(
            &format!("{}x{}", self.name, other.name),
            &labels,
            &pairs,
        )?;
        for op in Op::ALL {
            match (self.table(op), other.table(op)) {
                (Some(s), Some(o)) => {
                    let table = if op.arity() == 1 {
                        (0..n * m).map(|i| s[i / m] * m + o[i % m]).collect()
                    } else {
                        let mut t = Vec::with_capacity(n * m * n * m);
                        for i in 0..n * m {
                            for j in 0..n * m {
                                let left = s[(i / m) * n + j / m];
                                let right = o[(i % m) * m + j % m];
                                t.push(left * m + right);
                            }
                        }
                        t
                    };
                    *product.slot_mut(op) = Some(table);
                }
                _ => *product.slot_mut(op) = None,
            }
        }
        Ok(product)
    }

    /// Join-irreducible elements (exactly one lower cover), ascending by index.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        (0..self.n())
            .filter(|&j| j != self.bot && self.lower_covers(j).len() == 1)
            .collect()
    }

    pub fn lower_covers(&self, x: Elem) -> Vec<Elem> {
        let n = self.n();
        (0..n)
            .filter(|&y| y != x && self.le(y, x))
            .filter(|&y| !(0..n).any(|z| z != x && z != y && self.le(y, z) && self.le(z, x)))
            .collect()
    }

    /// Covering pairs `(i, j)` with `i` covered by `j`.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        (0..self.n())
            .flat_map(|j| self.lower_covers(j).into_iter().map(move |i| (i, j)))
            .collect()
    }
}

/// Common small algebras used throughout the tests and examples.
pub mod samples {
    use super::FiniteAlgebra;

    /// Chain `0 < ... < 1` with `n` elements; inner labels `a, b, c, ...`.
    pub fn chain(n: usize) -> FiniteAlgebra {
        assert!(n >= 1);
        let labels: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == n - 1 => "1".to_string(),
                i => ((b'a' + (i as u8 - 1)) as char).to_string(),
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteAlgebra::build_from_order(&format!("C{n}"), &labels, &pairs)
            .expect("chains are distributive")
    }

    /// The four-element Boolean lattice `0, a, b, 1` with `a`, `b` incomparable.
    pub fn boolean4() -> FiniteAlgebra {
        FiniteAlgebra::build_from_order("B4", &["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .expect("Boolean lattices are distributive")
    }

    /// The chain with its unique order-reversing involution.
    pub fn chain_with_involution(n: usize) -> FiniteAlgebra {
        let c = chain(n);
        let inv: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        let name = format!("C{n}'");
        c.with_involution(inv).expect("reversal is an involution").renamed(name)
    }
}
