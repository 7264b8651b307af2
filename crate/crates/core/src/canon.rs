//! Canonical forms for finite posets and finite distributive lattices.
//!
//! The canonical encoding of a poset is the lexicographically least
//! column-major bit encoding of its order relation over all relabelings that
//! are linear extensions. Linear extensions are an isomorphism-invariant family of
//! labelings, so the minimum is a complete invariant.
//!
//! Lattices are canonicalized through their poset of join-irreducibles: a
//! finite distributive lattice is determined by that poset, and its maximal
//! chains (the linear extensions of the poset) are few even when the lattice
//! itself has many linear extensions.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::algebra::{Elem, FiniteAlgebra};

/// Least encoding over linear extensions, with every ordering attaining it.
///
/// `le(i, j)` must be a partial order on `0..n`. The encoding is column-major:
/// in a linear extension, column `k` (which earlier elements lie below the
/// `k`-th) is fixed as soon as the `k`-th element is placed, so the search can
/// prune on prefixes. Orderings list original indices in their new positions.
pub(crate) fn min_over_linear_extensions(
    n: usize,
    le: impl Fn(usize, usize) -> bool,
) -> (Vec<bool>, Vec<Vec<usize>>) {
    let rel: Vec<bool> = (0..n * n).map(|k| le(k / n, k % n)).collect();
    let mut search = Search {
        n,
        below: (0..n).map(|j| (0..n).filter(|&i| i != j && rel[i * n + j]).count()).collect(),
        rel,
        placed: vec![false; n],
        order: Vec::with_capacity(n),
        current: Vec::with_capacity(n * n),
        best: None,
        winners: Vec::new(),
    };
    search.extend(false);
    (search.best.unwrap_or_default(), search.winners)
}

struct Search {
    n: usize,
    rel: Vec<bool>,
    below: Vec<usize>,
    placed: Vec<bool>,
    order: Vec<usize>,
    current: Vec<bool>,
    best: Option<Vec<bool>>,
    winners: Vec<Vec<usize>>,
}

impl Search {
    /// `ahead` means the current prefix is already strictly below the best.
    /// Returns whether the best encoding was replaced.
    fn extend(&mut self, ahead: bool) -> bool {
        let n = self.n;
        if self.order.len() == n {
            let replace = ahead || self.best.is_none();
            if replace {
                self.best = Some(self.current.clone());
                self.winners.clear();
            }
            self.winners.push(self.order.clone());
            return replace;
        }
        let mut ahead = ahead;
        let mut replaced = false;
        for x in 0..n {
            if self.placed[x] || self.below[x] != 0 {
                continue;
            }
            let k = self.order.len();
            let start = self.current.len();
            for r in 0..n {
                let bit = if r < k { self.rel[self.order[r] * n + x] } else { r == k };
                self.current.push(bit);
            }
            let mut child_ahead = ahead;
            if !ahead {
                if let Some(best) = &self.best {
                    match self.current[start..].cmp(&best[start..start + n]) {
                        std::cmp::Ordering::Greater => {
                            self.current.truncate(start);
                            continue;
                        }
                        std::cmp::Ordering::Less => child_ahead = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            self.placed[x] = true;
            self.order.push(x);
            for y in 0..n {
                if y != x && self.rel[x * n + y] {
                    self.below[y] -= 1;
                }
            }
            if self.extend(child_ahead) {
                // the path to here is now a prefix of the best
                replaced = true;
                ahead = false;
            }
            for y in 0..n {
                if y != x && self.rel[x * n + y] {
                    self.below[y] += 1;
                }
            }
            self.order.pop();
            self.placed[x] = false;
            self.current.truncate(start);
        }
        replaced
    }
}

/// Isomorphism-invariant encoding of an algebra's order and involution.
///
/// Ordered by size first, so sorting by canonical form gives the corpus order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub order: Vec<bool>,
    pub involution: Option<Vec<Elem>>,
}

impl CanonicalForm {
    /// Short stable hex digest, used for corpus file names.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_string().as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.order {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        if let Some(inv) = &self.involution {
            f.write_str("|")?;
            let parts: Vec<String> = inv.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))?;
        }
        Ok(())
    }
}

impl FiniteAlgebra {
    /// Canonical form of the order (and involution, when present).
    pub fn canonical_form(&self) -> CanonicalForm {
        let (form, _) = self.canonical_labeling();
        form
    }

    /// Canonical form together with the relabeling that produces it
    /// (`perm[new] = old`).
    pub fn canonical_labeling(&self) -> (CanonicalForm, Vec<Elem>) {
        let n = self.n();
        let irreducibles = self.join_irreducibles();
        let k = irreducibles.len();
        assert!(k < 64, "lattices with 64 or more join-irreducibles are out of range");
        let (_, orderings) =
            min_over_linear_extensions(k, |i, j| self.le(irreducibles[i], irreducibles[j]));

        let mut best: Option<(CanonicalForm, Vec<Elem>)> = None;
        for ordering in orderings {
            let masks: Vec<u64> = (0..n)
                .map(|x| {
                    ordering
                        .iter()
                        .enumerate()
                        .filter(|&(_, &j)| self.le(irreducibles[j], x))
                        .fold(0u64, |m, (pos, _)| m | (1 << pos))
                })
                .collect();
            let mut perm: Vec<Elem> = (0..n).collect();
            perm.sort_by_key(|&x| (masks[x].count_ones(), masks[x]));
            let mut pos = vec![0; n];
            for (new, &old) in perm.iter().enumerate() {
                pos[old] = new;
            }
            let order: Vec<bool> = (0..n * n)
                .map(|c| self.le(perm[c / n], perm[c % n]))
                .collect();
            let involution = self
                .table(crate::algebra::Op::Prime)
                .map(|inv| perm.iter().map(|&old| pos[inv[old]]).collect::<Vec<_>>());
            let form = CanonicalForm { n, order, involution };
            if best.as_ref().is_none_or(|(b, _)| form < *b) {
                best = Some((form, perm));
            }
        }
        best.expect("every poset has a linear extension")
    }

    /// Isomorphism of order and involution. Algebras that differ in whether an
    /// involution is present are never isomorphic.
    pub fn is_isomorphic(&self, other: &FiniteAlgebra) -> bool {
        self.n() == other.n() && self.canonical_form() == other.canonical_form()
    }
}
