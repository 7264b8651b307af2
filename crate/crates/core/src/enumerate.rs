//! The model corpus: posets up to isomorphism, their downset lattices, and the
//! De Morgan involutions those lattices admit.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Elem, FiniteAlgebra, Op};
use crate::canon::{min_over_linear_extensions, CanonicalForm};
use crate::io::{self, IoError};
use crate::varieties::{catalog, is_member, VarietyError, CATALOG_NAMES};

pub const MAX_POSET: usize = 7;
pub const DEFAULT_MAX_LATTICE: usize = 12;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("{what} {value} is outside the supported range {min}..={max}")]
    SizeCapExceeded { what: &'static str, value: usize, min: usize, max: usize },
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// A finite poset given by its covering pairs `(i, j)`, `i` covered by `j`.
///
/// Seeds produced here are labeled along a linear extension, so `i < j` for
/// every cover.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosetSeed {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
}

impl PosetSeed {
    /// Reflexive-transitive closure of the covers, row-major.
    pub fn order(&self) -> Vec<bool> {
        let n = self.n;
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(i, j) in &self.covers {
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
        le
    }

    /// Seed from a full order relation, relabeled canonically. The key is a
    /// complete isomorphism invariant.
    fn canonical(n: usize, le: &[bool]) -> (Vec<bool>, PosetSeed) {
        let (key, winners) = min_over_linear_extensions(n, |i, j| le[i * n + j]);
        let perm = &winners[0];
        let rel = |a: usize, b: usize| a != b && le[perm[a] * n + perm[b]];
        let covers = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|&(i, j)| rel(i, j) && !(i + 1..j).any(|k| rel(i, k) && rel(k, j)))
            .collect();
        (key, PosetSeed { n, covers })
    }

    /// Downsets as bitmasks, sorted by size and then mask.
    pub fn downsets(&self) -> Vec<u32> {
        let n = self.n;
        let le = self.order();
        let mut out: Vec<u32> = (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|j| m & (1 << j) == 0 || (0..n).all(|i| !le[i * n + j] || m & (1 << i) != 0))
            })
            .collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }
}

/// All posets with `1..=max_n` elements up to isomorphism, ordered by size and
/// then canonical key.
pub fn enumerate_posets(max_n: usize) -> Result<Vec<PosetSeed>, EnumerateError> {
    if !(1..=MAX_POSET).contains(&max_n) {
        return Err(EnumerateError::SizeCapExceeded { what: "poset size", value: max_n, min: 1, max: MAX_POSET });
    }
    let mut all = Vec::new();
    let mut level = vec![PosetSeed { n: 0, covers: Vec::new() }];
    for n in 1..=max_n {
        // every poset arises from a smaller one by adding a maximal element
        // above some downset
        let next: BTreeMap<Vec<bool>, PosetSeed> = level
            .par_iter()
            .flat_map_iter(|p| {
                let le = p.order();
                p.downsets().into_iter().map(move |d| {
                    let mut ext = vec![false; n * n];
                    for i in 0..n - 1 {
                        for j in 0..n - 1 {
                            ext[i * n + j] = le[i * (n - 1) + j];
                        }
                        ext[i * n + n - 1] = d & (1 << i) != 0;
                    }
                    ext[n * n - 1] = true;
                    PosetSeed::canonical(n, &ext)
                })
            })
            .collect();
        level = next.into_values().collect();
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

fn downset_label(p: &PosetSeed, le: &[bool], mask: u32) -> String {
    let n = p.n;
    if mask == 0 {
        return "0".to_string();
    }
    if mask == (1u32 << n) - 1 {
        return "1".to_string();
    }
    (0..n)
        .filter(|&i| mask & (1 << i) != 0)
        .filter(|&i| !(0..n).any(|j| j != i && mask & (1 << j) != 0 && le[i * n + j]))
        .map(|i| (b'a' + i as u8) as char)
        .collect()
}

/// The lattice of downsets of `p` ordered by inclusion. Labels name the
/// maximal elements of each downset; `0` and `1` are the bounds.
pub fn downset_lattice(p: &PosetSeed) -> FiniteAlgebra {
    let le = p.order();
    let sets = p.downsets();
    let labels: Vec<String> = sets.iter().map(|&m| downset_label(p, &le, m)).collect();
    let mut pairs = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            if a & !b == 0 {
                pairs.push((i, j));
            }
        }
    }
    let name = format!("D{}", sets.len());
    FiniteAlgebra::build_from_order(&name, &labels, &pairs).expect("downset lattices are distributive")
}

/// Every order-reversing involution of `a`, in lexicographic order of tables.
pub fn enumerate_involutions(a: &FiniteAlgebra) -> Vec<Vec<Elem>> {
    let n = a.n();
    let mut out = Vec::new();
    let mut f: Vec<Option<Elem>> = vec![None; n];
    search_involutions(a, &mut f, &mut out);
    out.sort();
    out
}

fn consistent(a: &FiniteAlgebra, f: &[Option<Elem>], x: Elem, fx: Elem) -> bool {
    (0..a.n()).all(|u| match f[u] {
        Some(fu) => a.le(u, x) == a.le(fx, fu) && a.le(x, u) == a.le(fu, fx),
        None => true,
    })
}

fn search_involutions(a: &FiniteAlgebra, f: &mut Vec<Option<Elem>>, out: &mut Vec<Vec<Elem>>) {
    let Some(x) = f.iter().position(|v| v.is_none()) else {
        out.push(f.iter().map(|v| v.unwrap()).collect());
        return;
    };
    for y in x..a.n() {
        if f[y].is_some() {
            continue;
        }
        f[x] = Some(y);
        if !consistent(a, f, x, y) {
            f[x] = None;
            continue;
        }
        f[y] = Some(x);
        if consistent(a, f, y, x) {
            search_involutions(a, f, out);
        }
        f[y] = None;
        f[x] = None;
    }
}

/// `a` with each of its involutions attached, one per isomorphism class,
/// ordered by canonical form.
pub fn attach_involutions(a: &FiniteAlgebra) -> Vec<FiniteAlgebra> {
    let mut seen: BTreeMap<CanonicalForm, FiniteAlgebra> = BTreeMap::new();
    for inv in enumerate_involutions(a) {
        let b = a.clone().with_involution(inv).expect("search yields involutions");
        seen.entry(b.canonical_form()).or_insert(b);
    }
    seen.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusOptions {
    pub max_poset: usize,
    pub max_lattice: usize,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { max_poset: 4, max_lattice: DEFAULT_MAX_LATTICE }
    }
}

impl CorpusOptions {
    pub fn new(max_poset: usize, max_lattice: usize) -> Self {
        CorpusOptions { max_poset, max_lattice }
    }
}

/// Distinct distributive lattices from posets with at most `max_poset`
/// elements (the empty poset included), capped at `max_lattice` elements.
/// Named `L<size>.<k>` in canonical order.
pub fn lattices(opts: &CorpusOptions) -> Result<Vec<FiniteAlgebra>, EnumerateError> {
    if !(1..=MAX_POSET).contains(&opts.max_poset) {
        return Err(EnumerateError::SizeCapExceeded {
            what: "poset size",
            value: opts.max_poset,
            min: 1,
            max: MAX_POSET,
        });
    }
    let mut seeds = vec![PosetSeed { n: 0, covers: Vec::new() }];
    seeds.extend(enumerate_posets(opts.max_poset)?);
    let mut found: Vec<(CanonicalForm, FiniteAlgebra)> = seeds
        .par_iter()
        .filter(|p| p.downsets().len() <= opts.max_lattice)
        .map(|p| {
            let l = downset_lattice(p);
            (l.canonical_form(), l)
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    Ok(name_in_order(found.into_iter().map(|(_, l)| l).collect()))
}

fn name_in_order(algebras: Vec<FiniteAlgebra>) -> Vec<FiniteAlgebra> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    algebras
        .into_iter()
        .map(|a| {
            let k = counts.entry(a.n()).or_default();
            *k += 1;
            let name = format!("L{}.{}", a.n(), k);
            a.renamed(name)
        })
        .collect()
}

/// Lattices with every involution attached (up to isomorphism), named
/// `L<size>.<k>'<j>`.
pub fn de_morgan_algebras(opts: &CorpusOptions) -> Result<Vec<FiniteAlgebra>, EnumerateError> {
    let out = lattices(opts)?
        .into_par_iter()
        .flat_map_iter(|l| {
            let base = l.name().to_string();
            attach_involutions(&l)
                .into_iter()
                .enumerate()
                .map(move |(j, a)| a.renamed(format!("{base}'{}", j + 1)))
        })
        .collect();
    Ok(out)
}

/// Corpus members of a catalog variety: lattices (with involutions when the
/// variety uses `'`) filtered by membership, in canonical order.
pub fn build_corpus_with(opts: &CorpusOptions, variety: &str) -> Result<Vec<FiniteAlgebra>, EnumerateError> {
    let spec = catalog(variety)?;
    let candidates = if spec.needs_involution() { de_morgan_algebras(opts)? } else { lattices(opts)? };
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|a| is_member(a, variety))
        .collect::<Result<_, _>>()?;
    Ok(candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| a).collect())
}

/// [`build_corpus_with`] under the default lattice cap.
pub fn build_corpus(max_poset: usize, variety: &str) -> Result<Vec<FiniteAlgebra>, EnumerateError> {
    build_corpus_with(&CorpusOptions { max_poset, ..CorpusOptions::default() }, variety)
}

/// Catalog classes an algebra belongs to, in catalog order. Classes whose
/// signature needs an absent operation are skipped.
pub fn variety_flags(a: &FiniteAlgebra) -> Vec<&'static str> {
    CATALOG_NAMES
        .par_iter()
        .filter(|name| {
            let spec = catalog(name).expect("catalog name");
            spec.required_ops.iter().all(|&op| a.has(op)) && is_member(a, name).unwrap_or(false)
        })
        .copied()
        .collect()
}

/// Writes one `<digest>.alg` file per algebra and an `index.txt` with lines
/// `<name> <size> <flags>` where flags are comma-separated catalog names.
pub fn write_corpus(dir: &Path, algebras: &[FiniteAlgebra]) -> Result<(), EnumerateError> {
    fs::create_dir_all(dir).map_err(|e| IoError::Io(dir.display().to_string(), e.to_string()))?;
    let mut index = String::new();
    for a in algebras {
        let digest = a.canonical_form().digest();
        io::write_algebra(&dir.join(format!("{digest}.alg")), a)?;
        let flags = variety_flags(a);
        let flags = if flags.is_empty() { "-".to_string() } else { flags.join(",") };
        index.push_str(&format!("{} {} {} {digest}\n", a.name(), a.n(), flags));
    }
    let path = dir.join("index.txt");
    fs::write(&path, index).map_err(|e| IoError::Io(path.display().to_string(), e.to_string()))?;
    Ok(())
}

/// Reads a corpus directory written by [`write_corpus`], in index order.
pub fn read_corpus(dir: &Path) -> Result<Vec<FiniteAlgebra>, EnumerateError> {
    let path = dir.join("index.txt");
    let text = fs::read_to_string(&path).map_err(|e| IoError::Io(path.display().to_string(), e.to_string()))?;
    let mut out = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let digest = line
            .split_whitespace()
            .nth(3)
            .ok_or_else(|| IoError::Format(path.display().to_string(), format!("bad index line {line:?}")))?;
        out.push(io::read_algebra(&dir.join(format!("{digest}.alg")))?);
    }
    Ok(out)
}

/// Members of `variety` in a prebuilt corpus.
pub fn filter_corpus(algebras: &[FiniteAlgebra], variety: &str) -> Result<Vec<FiniteAlgebra>, EnumerateError> {
    let spec = catalog(variety)?;
    let mut out = Vec::new();
    for a in algebras {
        if spec.required_ops.iter().all(|&op| a.has(op)) && is_member(a, variety)? {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// Poset counts by size, for reporting.
pub fn poset_counts(seeds: &[PosetSeed]) -> Vec<usize> {
    let max = seeds.iter().map(|p| p.n).max().unwrap_or(0);
    (1..=max).map(|n| seeds.iter().filter(|p| p.n == n).count()).collect()
}

/// Lattice counts by element count `1..=max_size`.
pub fn lattice_counts(algebras: &[FiniteAlgebra], max_size: usize) -> Vec<usize> {
    (1..=max_size).map(|n| algebras.iter().filter(|a| a.n() == n).count()).collect()
}

/// Sizes of the distinct lattices, for quick summaries.
pub fn sizes(algebras: &[FiniteAlgebra]) -> BTreeSet<usize> {
    algebras.iter().map(|a| a.n()).collect()
}

/// Does every corpus member carry `*` and `+`?
pub fn doubly_pseudocomplemented(algebras: &[FiniteAlgebra]) -> bool {
    algebras.iter().all(|a| a.has(Op::Star) && a.has(Op::Plus))
}
