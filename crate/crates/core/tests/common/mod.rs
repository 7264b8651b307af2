//! Brute-force oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls the library's search code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use latkit::logic::{Derivation, Formula, Justification};
use latkit::{Elem, FiniteAlgebra};
use rand::Rng;

/// Largest `z` with `x /\ z <= y`, by scanning every element.
pub fn brute_arrow(a: &FiniteAlgebra) -> Vec<Elem> {
    let n = a.n();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let ok: Vec<Elem> = (0..n).filter(|&z| a.le(a.meet(x, z), y)).collect();
            let max = ok.iter().copied().find(|&m| ok.iter().all(|&z| a.le(z, m)));
            out.push(max.expect("finite distributive lattices are Heyting"));
        }
    }
    out
}

/// Least `z` with `y <= x \/ z`.
pub fn brute_coarrow(a: &FiniteAlgebra) -> Vec<Elem> {
    let n = a.n();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let ok: Vec<Elem> = (0..n).filter(|&z| a.le(y, a.join(x, z))).collect();
            let min = ok.iter().copied().find(|&m| ok.iter().all(|&z| a.le(m, z)));
            out.push(min.expect("finite distributive lattices are co-Heyting"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Strict order on `0..n` as a bitmask over pairs `i*n + j`.
type Rel = u64;

/// Naturally labeled posets (`i < j` in the order only if `i < j` as numbers)
/// on `n` points. Every poset has such a labeling.
fn natural_posets(n: usize) -> Vec<Rel> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut rel: Rel = 0;
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel |= 1 << (i * n + j);
            }
        }
        let lt = |i: usize, j: usize| rel >> (i * n + j) & 1 == 1;
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !lt(i, j) || (0..n).all(|k| !lt(j, k) || lt(i, k)))
        });
        if transitive {
            out.push(rel);
        }
    }
    out
}

fn canonical(rel: Rel, n: usize, perms: &[Vec<usize>]) -> Rel {
    perms
        .iter()
        .map(|p| {
            let mut r: Rel = 0;
            for i in 0..n {
                for j in 0..n {
                    if rel >> (i * n + j) & 1 == 1 {
                        r |= 1 << (p[i] * n + p[j]);
                    }
                }
            }
            r
        })
        .min()
        .unwrap()
}

fn downset_count(rel: Rel, n: usize) -> usize {
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|j| s >> j & 1 == 0 || (0..n).all(|i| rel >> (i * n + j) & 1 == 0 || s >> i & 1 == 1))
        })
        .count()
}

/// Unlabeled posets by size `1..=max_n`.
pub fn poset_count_oracle(max_n: usize) -> Vec<usize> {
    (1..=max_n)
        .map(|n| {
            let perms = permutations(n);
            natural_posets(n).into_iter().map(|r| canonical(r, n, &perms)).collect::<BTreeSet<_>>().len()
        })
        .collect()
}

/// Distributive lattices by size `1..=max_size`, counted as unlabeled posets
/// with that many downsets (plus the one-element lattice of the empty poset).
pub fn lattice_count_oracle(max_size: usize) -> Vec<usize> {
    let mut counts = vec![0; max_size + 1];
    counts[1] = 1;
    for n in 1..max_size {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for r in natural_posets(n) {
            let d = downset_count(r, n);
            if d <= max_size && seen.insert(canonical(r, n, &perms)) {
                counts[d] += 1;
            }
        }
    }
    counts[1..].to_vec()
}

/// Published values: unlabeled posets (OEIS A000112) and distributive
/// lattices (OEIS A006982).
pub const PUBLISHED_POSETS: [usize; 7] = [1, 2, 5, 16, 63, 318, 2045];
pub const PUBLISHED_LATTICES: [usize; 8] = [1, 1, 1, 2, 3, 5, 8, 15];

pub fn random_formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..5) {
            0 => Formula::Bot,
            1 => Formula::Top,
            2 => Formula::var("p"),
            3 => Formula::var("q"),
            _ => Formula::var("r"),
        };
    }
    let choice = rng.gen_range(0..5);
    let mut sub = || random_formula(rng, depth - 1);
    match choice {
        0 => Formula::or(sub(), sub()),
        1 => Formula::and(sub(), sub()),
        2 => Formula::imp(sub(), sub()),
        3 => Formula::imp_h(sub(), sub()),
        _ => Formula::neg(sub()),
    }
}

/// Breaks one step of `d`, returning the mutant and the broken step
/// (1-based). Either the formula or the justification's indices change.
pub fn mutate<R: Rng>(rng: &mut R, d: &Derivation) -> (Derivation, usize) {
    let mut m = d.clone();
    let k = rng.gen_range(0..d.steps.len());
    let step = &mut m.steps[k];
    if rng.gen_bool(0.5) {
        loop {
            let f = random_formula(rng, 3);
            if f != step.formula {
                step.formula = f;
                break;
            }
        }
    } else {
        let bound = d.steps.len() + 1;
        let orig = step.justification.clone();
        loop {
            let j = match &orig {
                Justification::Premise(_) => Justification::Premise(Some(rng.gen_range(0..=d.premises.len() + 1))),
                Justification::Mp(..) => Justification::Mp(rng.gen_range(0..=bound), rng.gen_range(0..=bound)),
                Justification::Cp(_) => Justification::Cp(rng.gen_range(0..=bound)),
                Justification::Axiom { substitution, .. } => {
                    if rng.gen_bool(0.5) {
                        Justification::Axiom { id: rng.gen_range(2..=14).to_string(), substitution: substitution.clone() }
                    } else {
                        let mut s: BTreeMap<String, Formula> = substitution.clone();
                        let key = s.keys().next().cloned().expect("demo axioms are instantiated");
                        s.insert(key, random_formula(rng, 2));
                        Justification::Axiom { id: "1".into(), substitution: s }
                    }
                }
            };
            if j != orig {
                step.justification = j;
                break;
            }
        }
    }
    (m, k + 1)
}
