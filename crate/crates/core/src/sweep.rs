//! Exhaustive sweeps over `S_n`.
//!
//! `S_n` is cut into contiguous lexicographic rank ranges. Each range is
//! walked with `next_lex`, and per-range results are combined in rank order,
//! so every sweep returns the same value whether the ranges run on the rayon
//! pool or one after another. Without the `parallel` feature only the
//! sequential path is compiled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::perm::Permutation;

/// How a sweep distributes its rank ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    /// Rayon's current pool. Falls back to `Sequential` when the crate is
    /// built without the `parallel` feature.
    #[default]
    Parallel,
}

const CHUNK: u64 = 720;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn ranges(n: usize) -> Vec<(u64, u64)> {
    let total = factorial(n);
    (0..total.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .collect()
}

fn walk<T>(
    n: usize,
    (start, end): (u64, u64),
    init: T,
    fold: &(impl Fn(T, &Permutation) -> T + Sync),
) -> T {
    let mut p = Permutation::unrank(n, start);
    let mut acc = init;
    for rank in start..end {
        acc = fold(acc, &p);
        if rank + 1 < end {
            p.next_lex();
        }
    }
    acc
}

/// Folds every permutation of size `n` in lexicographic order within each
/// range and reduces the per-range results left to right.
pub fn fold<T, I, F, R>(strategy: Strategy, n: usize, init: I, fold: F, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(T, &Permutation) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let ranges = ranges(n);
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            let parts: Vec<T> = ranges
                .into_par_iter()
                .map(|r| walk(n, r, init(), &fold))
                .collect();
            parts.into_iter().reduce(&reduce).unwrap_or_else(&init)
        }
        _ => ranges
            .into_iter()
            .map(|r| walk(n, r, init(), &fold))
            .reduce(&reduce)
            .unwrap_or_else(init),
    }
}

pub fn count_with(strategy: Strategy, n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> u64 {
    fold(
        strategy,
        n,
        || 0u64,
        |acc, p| acc + u64::from(pred(p)),
        |a, b| a + b,
    )
}

pub fn count(n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> u64 {
    count_with(Strategy::default(), n, pred)
}

/// Permutations of size `n` satisfying `pred`, in lexicographic order.
pub fn collect(n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> Vec<Permutation> {
    filter_map(n, |p| pred(p).then(|| p.clone()))
}

/// `f` applied to every permutation of size `n`, keeping the `Some`s, in
/// lexicographic order of the argument.
pub fn filter_map<T: Send>(n: usize, f: impl Fn(&Permutation) -> Option<T> + Sync) -> Vec<T> {
    fold(
        Strategy::default(),
        n,
        Vec::new,
        |mut acc, p| {
            acc.extend(f(p));
            acc
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )
}

/// First permutation (lexicographically) for which `pred` holds.
pub fn find_first(n: usize, pred: impl Fn(&Permutation) -> bool + Sync) -> Option<Permutation> {
    fold(
        Strategy::default(),
        n,
        || None,
        |acc, p| acc.or_else(|| pred(p).then(|| p.clone())),
        |a, b| a.or(b),
    )
}

/// Every permutation of size `n`, in lexicographic order.
pub fn all(n: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(factorial(n) as usize);
    let mut p = Permutation::identity(n);
    loop {
        out.push(p.clone());
        if !p.next_lex() {
            return out;
        }
    }
}
