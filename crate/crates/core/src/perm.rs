//! Permutations in one-line notation and the structural decompositions
//! used by the sorting machines and the preimage algorithm.
//!
//! Most routines here work on plain `&[u32]` slices of distinct integers as
//! well as on [`Permutation`], because the preimage recursion runs on
//! prefixes whose values are not `1..=n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `1..=n`, stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        validate(&entries)?;
        Ok(Permutation(entries))
    }

    /// Caller guarantees `entries` is a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(validate(&entries).is_ok(), "{entries:?}");
        Permutation(entries)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// `n (n-1) ... 1`
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n as u32).rev().collect())
    }

    /// Rescales any sequence of distinct integers to the order-isomorphic
    /// permutation.
    pub fn standardize(seq: &[u32]) -> Self {
        Permutation(standardize(seq))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        is_increasing(&self.0)
    }

    pub fn max(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }

    /// Left-to-right maxima as `(index, value)` pairs, indices 0-based.
    pub fn ltr_maxima(&self) -> Vec<(usize, u32)> {
        ltr_maxima(&self.0)
    }

    /// `self ⊕ other`: `other` shifted above `self` and appended.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len() as u32;
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&x| x + shift));
        Permutation(v)
    }

    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation(inv)
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.0)
    }

    pub fn run_decomposition(&self) -> RunDecomposition {
        run_decomposition(&self.0)
    }

    pub fn max_suffix_decomposition(&self) -> MaxSuffixDecomposition {
        max_suffix_decomposition(&self.0)
    }

    /// Digit-string form, available when every entry is at most 9.
    pub fn compact(&self) -> Option<String> {
        compact(&self.0)
    }

    /// Removes the entry at `index` and standardizes the rest.
    pub fn delete(&self, index: usize) -> Permutation {
        let removed = self.0[index];
        Permutation(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        )
    }

    /// Advances to the lexicographically next permutation of the same size.
    /// Returns `false` (leaving `self` unchanged) on the last one.
    pub fn next_lex(&mut self) -> bool {
        next_permutation(&mut self.0)
    }

    /// The permutation of rank `rank` (0-based) in lexicographic order.
    pub fn unrank(n: usize, mut rank: u64) -> Permutation {
        let mut pool: Vec<u32> = (1..=n as u32).collect();
        let mut out = Vec::with_capacity(n);
        let mut fact: u64 = (1..n as u64).product::<u64>().max(1);
        for left in (1..=n).rev() {
            let idx = (rank / fact) as usize;
            rank %= fact;
            out.push(pool.remove(idx));
            if left > 1 {
                fact /= (left - 1) as u64;
            }
        }
        Permutation(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.0
    }
}

impl AsRef<[u32]> for Permutation {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

pub(crate) fn write_spaced(f: &mut fmt::Formatter<'_>, seq: &[u32]) -> fmt::Result {
    for (i, v) in seq.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

pub(crate) fn compact(seq: &[u32]) -> Option<String> {
    seq.iter()
        .map(|&v| char::from_digit(v, 10).filter(|_| v <= 9))
        .collect()
}

fn validate(entries: &[u32]) -> Result<()> {
    let n = entries.len();
    let mut seen = vec![false; n + 1];
    for &v in entries {
        if v == 0 || v as usize > n {
            return Err(Error::Parse {
                token: v.to_string(),
                reason: format!("value out of range 1..={n}"),
            });
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::Parse {
                token: v.to_string(),
                reason: "duplicate value".into(),
            });
        }
    }
    Ok(())
}

/// Splits permutation text into integer tokens. Accepts whitespace or comma
/// separators, or a bare digit string (one entry per digit).
pub(crate) fn tokenize(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let separated = text.contains(|c: char| c.is_whitespace() || c == ',');
    if !separated {
        return text
            .chars()
            .map(|c| {
                c.to_digit(10).ok_or_else(|| Error::Parse {
                    token: c.to_string(),
                    reason: "not a digit".into(),
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for field in text.split(',') {
        let mut any = false;
        for tok in field.split_whitespace() {
            any = true;
            out.push(tok.parse::<u32>().map_err(|_| Error::Parse {
                token: tok.to_string(),
                reason: "not a positive integer".into(),
            })?);
        }
        if !any {
            return Err(Error::Parse {
                token: String::new(),
                reason: "empty token".into(),
            });
        }
    }
    Ok(out)
}

/// Parses `"3 6 5 1 4 2"`, `"3,6,5,1,4,2"` or the compact `"365142"`.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let entries = tokenize(text)?;
    let n = entries.len();
    let mut seen = vec![false; n + 1];
    for &v in &entries {
        if v == 0 || v as usize > n {
            let missing = (1..=n).find(|&k| !entries.contains(&(k as u32)));
            let reason = match missing {
                Some(k) => format!("out of range 1..={n} (value {k} is missing)"),
                None => format!("out of range 1..={n}"),
            };
            return Err(Error::Parse {
                token: v.to_string(),
                reason,
            });
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::Parse {
                token: v.to_string(),
                reason: "duplicate value".into(),
            });
        }
    }
    Ok(Permutation(entries))
}

pub fn is_increasing(seq: &[u32]) -> bool {
    seq.windows(2).all(|w| w[0] < w[1])
}

pub fn standardize(seq: &[u32]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_unstable_by_key(|&i| seq[i]);
    let mut out = vec![0; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    out
}

pub fn ltr_maxima(seq: &[u32]) -> Vec<(usize, u32)> {
    let mut best = None;
    let mut out = Vec::new();
    for (i, &v) in seq.iter().enumerate() {
        if best.is_none_or(|b| v > b) {
            best = Some(v);
            out.push((i, v));
        }
    }
    out
}

/// All interleavings of `a` and `b` that keep the internal order of each.
pub fn shuffles(a: &[u32], b: &[u32]) -> Result<Vec<Vec<u32>>> {
    if let Some(&v) = a.iter().find(|v| b.contains(v)) {
        return Err(Error::Overlap(v));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a.len() + b.len());
    shuffle_into(a, b, &mut cur, &mut out);
    Ok(out)
}

fn shuffle_into(a: &[u32], b: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    match (a.split_first(), b.split_first()) {
        (None, None) => out.push(cur.clone()),
        (Some((&x, rest)), None) | (None, Some((&x, rest))) => {
            let mark = cur.len();
            cur.push(x);
            cur.extend_from_slice(rest);
            out.push(cur.clone());
            cur.truncate(mark);
        }
        (Some((&x, ra)), Some((&y, rb))) => {
            cur.push(x);
            shuffle_into(ra, b, cur, out);
            cur.pop();
            cur.push(y);
            shuffle_into(a, rb, cur, out);
            cur.pop();
        }
    }
}

/// No contiguous block of positions of length strictly between 1 and n
/// carries a contiguous range of values. Sizes 0, 1 and 2 count as simple.
pub fn is_simple(seq: &[u32]) -> bool {
    let n = seq.len();
    if n <= 2 {
        return true;
    }
    for i in 0..n {
        let (mut lo, mut hi) = (seq[i], seq[i]);
        for (len, &v) in seq[i..].iter().enumerate().skip(1).map(|(k, v)| (k + 1, v)) {
            lo = lo.min(v);
            hi = hi.max(v);
            if len < n && (hi - lo) as usize == len - 1 {
                return false;
            }
        }
    }
    true
}

pub fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// One left-to-right maximum `max` together with the block that follows it
/// up to the next left-to-right maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Run {
    pub max: u32,
    /// Length of the chain `max-1, max-2, ...` found inside `block`.
    pub chain: usize,
    /// Elements of `block` outside the chain, in order.
    pub bypassers: Vec<u32>,
    pub block: Vec<u32>,
}

impl Run {
    /// `bypassers` followed by `max-chain, ..., max`: what the pop stack
    /// with bypass emits for this run.
    pub fn sorted_image(&self) -> impl Iterator<Item = u32> + '_ {
        let low = self.max - self.chain as u32;
        self.bypassers.iter().copied().chain(low..=self.max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunDecomposition {
    pub runs: Vec<Run>,
}

impl RunDecomposition {
    pub fn concat(&self) -> Vec<u32> {
        self.runs
            .iter()
            .flat_map(|r| std::iter::once(r.max).chain(r.block.iter().copied()))
            .collect()
    }
}

/// Splits `seq` as `m_1 A_1 ... m_k A_k` at its left-to-right maxima and
/// finds, inside each `A_i`, the longest subsequence `m_i - 1, m_i - 2, ...`.
pub fn run_decomposition(seq: &[u32]) -> RunDecomposition {
    let maxima = ltr_maxima(seq);
    let mut runs = Vec::with_capacity(maxima.len());
    for (k, &(start, max)) in maxima.iter().enumerate() {
        let end = maxima.get(k + 1).map_or(seq.len(), |&(i, _)| i);
        let block = seq[start + 1..end].to_vec();
        let mut want = max.checked_sub(1);
        let mut chain = 0;
        let mut bypassers = Vec::new();
        for &v in &block {
            if Some(v) == want {
                chain += 1;
                want = v.checked_sub(1);
            } else {
                bypassers.push(v);
            }
        }
        runs.push(Run {
            max,
            chain,
            bypassers,
            block,
        });
    }
    RunDecomposition { runs }
}

/// `σ = μ_1 B_1 μ_2 B_2 ...`: each `μ_i` is a maximal factor of adjacent
/// left-to-right maxima increasing by exactly one, and `B_i` is the
/// (possibly empty) stretch of other entries that follows it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxSuffixDecomposition {
    pub runs: Vec<Vec<u32>>,
    /// `blocks[i]` follows `runs[i]`; same length as `runs`.
    pub blocks: Vec<Vec<u32>>,
}

impl MaxSuffixDecomposition {
    pub fn concat(&self) -> Vec<u32> {
        self.runs
            .iter()
            .zip(&self.blocks)
            .flat_map(|(r, b)| r.iter().chain(b.iter()).copied())
            .collect()
    }

    /// The run that ends the sequence, when the sequence ends with its
    /// maximum.
    pub fn final_run(&self) -> Option<&[u32]> {
        match (self.runs.last(), self.blocks.last()) {
            (Some(r), Some(b)) if b.is_empty() => Some(r),
            _ => None,
        }
    }
}

pub fn max_suffix_decomposition(seq: &[u32]) -> MaxSuffixDecomposition {
    let mut runs: Vec<Vec<u32>> = Vec::new();
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut best: Option<u32> = None;
    let mut prev_was_max = false;
    for &v in seq {
        if best.is_none_or(|b| v > b) {
            let extends = prev_was_max && best.map(|b| b + 1) == Some(v);
            if extends {
                runs.last_mut().unwrap().push(v);
            } else {
                runs.push(vec![v]);
                blocks.push(Vec::new());
            }
            best = Some(v);
            prev_was_max = true;
        } else {
            blocks.last_mut().unwrap().push(v);
            prev_was_max = false;
        }
    }
    MaxSuffixDecomposition { runs, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(p("3 6 5 1 4 2"), p("365142"));
        assert_eq!(p("3,6,5,1,4,2").as_slice(), &[3, 6, 5, 1, 4, 2]);
        assert_eq!(p("3, 6, 5, 1, 4, 2"), p("365142"));
        assert_eq!(p("10 1 2 3 4 5 6 7 8 9").len(), 10);
        assert!(p("").is_empty());
    }

    #[test]
    fn rejects_bad_text() {
        let err = "1 1 2".parse::<Permutation>().unwrap_err();
        assert!(
            matches!(err, Error::Parse { ref token, ref reason } if token == "1" && reason.contains("duplicate"))
        );
        let err = "1 3".parse::<Permutation>().unwrap_err();
        assert!(
            matches!(err, Error::Parse { ref token, ref reason } if token == "3" && reason.contains("value 2 is missing"))
        );
        assert!("1,,2".parse::<Permutation>().is_err());
        assert!("1 x 2".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        assert!("10".parse::<Permutation>().is_err());
    }

    #[test]
    fn ltr() {
        let vals: Vec<u32> = p("3645712").ltr_maxima().iter().map(|x| x.1).collect();
        assert_eq!(vals, [3, 6, 7]);
        assert_eq!(Permutation::identity(5).ltr_maxima().len(), 5);
        assert_eq!(Permutation::decreasing(5).ltr_maxima(), [(0, 5)]);
    }

    #[test]
    fn sums_reverses_inverses() {
        assert_eq!(p("3142").direct_sum(&p("42315")), p("314286759"));
        assert_eq!(p("3142").direct_sum(&Permutation::default()), p("3142"));
        assert_eq!(p("1").direct_sum(&p("1")), p("12"));
        assert_eq!(p("3645712").reverse(), p("2175463"));
        assert_eq!(p("312").inverse(), p("231"));
        assert_eq!(Permutation::identity(6).inverse(), Permutation::identity(6));
    }

    #[test]
    fn shuffle_example() {
        let mut got = shuffles(&[3, 1], &[2, 4]).unwrap();
        got.sort();
        let mut want: Vec<Vec<u32>> = ["3124", "3214", "3241", "2314", "2341", "2431"]
            .iter()
            .map(|s| p(s).into_vec())
            .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(shuffles(&[5, 2], &[]).unwrap(), vec![vec![5, 2]]);
        assert_eq!(shuffles(&[1, 2], &[2]), Err(Error::Overlap(2)));
    }

    #[test]
    fn simple_permutations() {
        assert!(p("2413").is_simple());
        assert!(p("3142").is_simple());
        assert!(!p("123").is_simple());
        assert!(p("12").is_simple());
        assert!(p("21").is_simple());
        assert!(!p("2314").is_simple());
    }

    #[test]
    fn run_decomposition_example() {
        let d = p("635247198").run_decomposition();
        let maxes: Vec<u32> = d.runs.iter().map(|r| r.max).collect();
        let chains: Vec<usize> = d.runs.iter().map(|r| r.chain).collect();
        assert_eq!(maxes, [6, 7, 9]);
        assert_eq!(chains, [2, 0, 1]);
        assert_eq!(d.runs[0].bypassers, [3, 2]);
        assert_eq!(d.runs[1].bypassers, [1]);
        assert!(d.runs[2].bypassers.is_empty());
        assert_eq!(d.concat(), p("635247198").into_vec());

        let id = Permutation::identity(4).run_decomposition();
        assert!(id
            .runs
            .iter()
            .all(|r| r.chain == 0 && r.bypassers.is_empty()));
        let dec = Permutation::decreasing(4).run_decomposition();
        assert_eq!(dec.runs.len(), 1);
        assert_eq!(dec.runs[0].chain, 3);
    }

    #[test]
    fn max_suffix_example() {
        let d = p("3154267").max_suffix_decomposition();
        assert_eq!(d.final_run(), Some(&[6, 7][..]));
        assert_eq!(d.runs, vec![vec![3], vec![5], vec![6, 7]]);
        assert_eq!(d.blocks, vec![vec![1], vec![4, 2], vec![]]);

        let id = Permutation::identity(5).max_suffix_decomposition();
        assert_eq!(id.runs, vec![vec![1, 2, 3, 4, 5]]);

        let d = p("3142").max_suffix_decomposition();
        assert_eq!(d.runs, vec![vec![3], vec![4]]);
        assert_eq!(d.blocks, vec![vec![1], vec![2]]);
        assert_eq!(d.final_run(), None);

        // adjacent maxima that are not consecutive values start a new run
        let d = p("1324").max_suffix_decomposition();
        assert_eq!(d.runs, vec![vec![1], vec![3], vec![4]]);
        assert_eq!(d.blocks, vec![vec![], vec![2], vec![]]);
    }

    #[test]
    fn lexicographic_walk_matches_unrank() {
        let mut q = Permutation::identity(4);
        let mut rank = 0;
        loop {
            assert_eq!(Permutation::unrank(4, rank), q);
            rank += 1;
            if !q.next_lex() {
                break;
            }
        }
        assert_eq!(rank, 24);
    }

    #[test]
    fn delete_standardizes() {
        assert_eq!(p("4213").delete(0), p("213"));
        assert_eq!(p("4213").delete(3), p("321"));
    }
}
