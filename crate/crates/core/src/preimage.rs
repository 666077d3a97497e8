//! Preimages under the pop stack with bypass map, an exhaustive oracle, and
//! the permutations with zero, one or two preimages.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};

use crate::error::{guard, Result};
use crate::machines::{psb, psb_values};
use crate::perm::{ltr_maxima, shuffles, Permutation};
use crate::sweep;

/// Every sequence `π` with `psb(π) = s`, in lexicographic order. `s` may be
/// any sequence of distinct integers; values are kept as given.
pub fn preimages(s: &[u32]) -> BTreeSet<Vec<u32>> {
    candidates(s)
        .into_iter()
        .filter(|c| psb_values(c) == s)
        .collect()
}

fn candidates(s: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let Some(&n) = s.iter().max() else {
        out.insert(Vec::new());
        return out;
    };
    if s[s.len() - 1] != n {
        return out;
    }
    // The final run: the longest suffix of consecutive increasing values.
    let mut first = s.len() - 1;
    while first > 0 && s[first - 1] + 1 == s[first] {
        first -= 1;
    }
    for cut in first..s.len() {
        let m = s[cut];
        let rest = &s[..cut];
        let descending: Vec<u32> = (m..n).rev().collect();
        let splits = std::iter::once(0).chain(ltr_maxima(rest).into_iter().map(|(i, _)| i + 1));
        for split in splits {
            let (head, tail) = rest.split_at(split);
            let prefixes = preimages(head);
            if prefixes.is_empty() {
                continue;
            }
            let needs_before_m = m > 0 && tail.contains(&(m - 1));
            let Ok(mixes) = shuffles(&descending, tail) else {
                continue;
            };
            for r in mixes {
                if needs_before_m {
                    let at = |v| r.iter().position(|&x| x == v);
                    if let (Some(a), Some(b)) = (at(m - 1), at(m)) {
                        if a > b {
                            continue;
                        }
                    }
                }
                for l in &prefixes {
                    let mut c = l.clone();
                    c.push(n);
                    c.extend_from_slice(&r);
                    out.insert(c);
                }
            }
        }
    }
    out
}

/// Preimages of a permutation, as permutations.
pub fn preimages_of(s: &Permutation) -> Vec<Permutation> {
    preimages(s.as_slice())
        .into_iter()
        .map(|v| Permutation::new(v).expect("rearrangement of a permutation"))
        .collect()
}

/// Default size limit for the exhaustive oracle; `force` lifts it by one.
pub const BRUTE_LIMIT: usize = 9;

/// Preimages by running the map on every permutation of the same size.
pub fn brute_preimages(s: &Permutation, force: bool) -> Result<Vec<Permutation>> {
    guard(
        "brute-force preimage size",
        s.len(),
        BRUTE_LIMIT + usize::from(force),
    )?;
    Ok(sweep::collect(s.len(), |p| psb(p) == *s))
}

/// Every image of size `n` with its preimages.
pub fn image_table(n: usize) -> HashMap<Permutation, Vec<Permutation>> {
    let mut table: HashMap<Permutation, Vec<Permutation>> = HashMap::new();
    for (image, p) in sweep::filter_map(n, |p| Some((psb(p), p.clone()))) {
        table.entry(image).or_default().push(p);
    }
    table
}

/// `hist[k]` counts the permutations of size `n` with exactly `k`
/// preimages.
pub fn preimage_histogram(n: usize) -> Vec<u64> {
    let table = image_table(n);
    let mut hist = vec![0u64; 1];
    for pre in table.values() {
        if hist.len() <= pre.len() {
            hist.resize(pre.len() + 1, 0);
        }
        hist[pre.len()] += 1;
    }
    hist[0] = sweep::factorial(n) - table.len() as u64;
    hist
}

/// No preimage: the last entry is not the maximum.
pub fn in_c0(s: &[u32]) -> bool {
    s.last()
        .is_some_and(|&l| Some(l) != s.iter().max().copied())
}

/// Left-to-right maxima as (position, value), when the sequence ends with
/// its maximum.
fn ending_in_max(s: &[u32]) -> Option<Vec<(usize, u32)>> {
    let ltr = ltr_maxima(s);
    (ltr.last()?.0 == s.len() - 1).then_some(ltr)
}

fn consecutive_values(ltr: &[(usize, u32)]) -> bool {
    ltr.windows(2).all(|w| w[0].1 + 1 == w[1].1)
}

fn nonadjacent(ltr: &[(usize, u32)]) -> bool {
    ltr.windows(2).all(|w| w[0].0 + 1 < w[1].0)
}

/// Exactly one preimage: ends with its maximum, and the left-to-right
/// maxima are consecutive values at pairwise nonadjacent positions.
pub fn in_c1(s: &[u32]) -> bool {
    ending_in_max(s).is_some_and(|ltr| consecutive_values(&ltr) && nonadjacent(&ltr))
}

/// Exactly two preimages: ends with its maximum, the left-to-right maxima
/// after the first are consecutive values at nonadjacent positions, and the
/// first is at least two below the second.
pub fn in_c2(s: &[u32]) -> bool {
    ending_in_max(s).is_some_and(|ltr| {
        ltr.len() >= 2
            && ltr[0].1 + 1 < ltr[1].1
            && consecutive_values(&ltr[1..])
            && nonadjacent(&ltr[1..])
    })
}

/// Exactly two preimages. `in_c2` plus the permutations whose
/// left-to-right maxima are consecutive values with only the first two
/// adjacent, such as 2314.
pub fn in_c2_complete(s: &[u32]) -> bool {
    in_c2(s)
        || ending_in_max(s).is_some_and(|ltr| {
            ltr.len() >= 2
                && ltr[0].0 + 1 == ltr[1].0
                && consecutive_values(&ltr)
                && nonadjacent(&ltr[1..])
        })
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn choose(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n as u64), BigUint::from(k as u64))
    }
}

/// Permutations of size `n` without preimages: `(n-1)(n-1)!`.
pub fn c0(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    factorial(n - 1) * (n - 1)
}

/// Permutations of size `n` with exactly one preimage.
pub fn c1(n: usize) -> BigUint {
    if n <= 1 {
        return BigUint::one();
    }
    let n = n as i64;
    (2..=(n + 1) / 2)
        .map(|k| factorial((n - k) as usize) * choose(n - k - 1, k - 2))
        .sum()
}

/// Permutations of size `n` with exactly two preimages.
pub fn c2(n: usize) -> BigUint {
    let n = n as i64;
    let mut total = BigUint::zero();
    for k in 3..=n {
        for j in 1..=n - k {
            let term = factorial((n - k) as usize)
                * BigUint::from((n - k - j + 1) as u64)
                * choose(n - j - k, k - 3);
            let (q, r) = term.div_rem(&BigUint::from(j as u64));
            assert!(r.is_zero(), "non-integral term at n={n}, k={k}, j={j}");
            total += q;
        }
    }
    total
}

/// Size of `in_c2_complete` at `n`. Removing the first entry maps the
/// extra permutations onto the single-preimage ones of size `n - 1`.
pub fn c2_complete(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::zero();
    }
    c2(n) + c1(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let got: Vec<String> = preimages_of(&p("3154267"))
            .iter()
            .map(|q| q.compact().unwrap())
            .collect();
        let mut want = vec![
            "7315642", "7315462", "7315426", "3715642", "3715462", "3715426", "3517642", "3517462",
            "3517426", "3516427", "5317642", "5317462", "5317426", "5316427",
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            brute_preimages(&p("3154267"), false).unwrap(),
            preimages_of(&p("3154267"))
        );
    }

    #[test]
    fn small_cases() {
        assert_eq!(preimages_of(&p("1")), [p("1")]);
        assert!(preimages_of(&p("21")).is_empty());
        assert_eq!(
            brute_preimages(&p("12"), false).unwrap(),
            [p("12"), p("21")]
        );
        assert_eq!(preimages(&[]).len(), 1);
        assert!(brute_preimages(&Permutation::identity(10), false).is_err());
    }

    #[test]
    fn formulas() {
        assert_eq!(c0(4), BigUint::from(18u8));
        let c1s: Vec<BigUint> = (1..=7).map(c1).collect();
        let want: Vec<BigUint> = [1u32, 0, 1, 2, 8, 36, 198].map(BigUint::from).to_vec();
        assert_eq!(c1s, want);
    }

    #[test]
    fn membership() {
        assert!(in_c0(&[2, 1]));
        assert!(!in_c0(&[]));
        assert!(in_c1(&[1]));
        assert!(!in_c1(&[1, 2]));
        assert!(in_c2(&[1, 3, 2, 4]));
        assert!(!in_c2(&[2, 3, 1, 4]));
        assert!(in_c2_complete(&[2, 3, 1, 4]));
        assert!(!in_c2_complete(&[1, 2, 3]));
    }
}
