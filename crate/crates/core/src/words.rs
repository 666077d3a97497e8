//! Sorting words over {0, 1, 2}, the restricted Motzkin paths they encode,
//! and the conversions between permutations, words and paths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::enumeration::fib;
use crate::error::{guard, Error, Result};
use crate::machines::Machine;
use crate::perm::Permutation;

/// Letter 0 is a push, 1 a bypass, 2 a pop followed by a push.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SortingWord(pub Vec<u8>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathStep {
    U,
    D,
    H,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MotzkinPath(pub Vec<PathStep>);

impl SortingWord {
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SortingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|&l| write!(f, "{l}"))
    }
}

impl FromStr for SortingWord {
    type Err = Error;

    /// Letters 0, 1, 2; whitespace is ignored so factored words parse too.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::Parse {
                    token: c.to_string(),
                    reason: "sorting words use the letters 0, 1, 2".into(),
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(SortingWord)
    }
}

impl Serialize for SortingWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl MotzkinPath {
    pub fn steps(&self) -> &[PathStep] {
        &self.0
    }

    /// Number of U and H steps.
    pub fn size(&self) -> usize {
        self.0.iter().filter(|&&s| s != PathStep::D).count()
    }

    /// Prefix heights stay nonnegative and the path ends on the axis.
    pub fn is_motzkin(&self) -> bool {
        let mut h = 0i64;
        for s in &self.0 {
            h += match s {
                PathStep::U => 1,
                PathStep::D => -1,
                PathStep::H => 0,
            };
            if h < 0 {
                return false;
            }
        }
        h == 0
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                PathStep::U => "U",
                PathStep::D => "D",
                PathStep::H => "H",
            })?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_ascii_uppercase() {
                'U' => Ok(PathStep::U),
                'D' => Ok(PathStep::D),
                'H' => Ok(PathStep::H),
                _ => Err(Error::Parse {
                    token: c.to_string(),
                    reason: "paths use the steps U, D, H".into(),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(MotzkinPath)
    }
}

impl Serialize for MotzkinPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The operation each entry triggers when `p` goes through the pop stack
/// with bypass. Defined for every permutation.
pub fn perm_to_word(p: &Permutation) -> SortingWord {
    let trace = Machine::Psb.run_traced(p).trace.expect("traced run");
    SortingWord(
        trace
            .steps
            .iter()
            .map(|s| match s.op.as_str() {
                "PUSH" => 0,
                "BYPASS" => 1,
                "POP+PUSH" => 2,
                op => unreachable!("pop stack with bypass step {op}"),
            })
            .collect(),
    )
}

pub fn word_in_w(w: &SortingWord) -> bool {
    let l = w.letters();
    match (l.first(), l.last()) {
        (None, _) => true,
        (Some(&first), Some(&last)) => {
            first == 0 && last != 1 && !l.windows(2).any(|p| p == [1, 2])
        }
        _ => unreachable!(),
    }
}

/// The sortable permutation whose sorting word is `w`.
pub fn word_to_perm(w: &SortingWord) -> Result<Permutation> {
    if !word_in_w(w) {
        return Err(Error::NotSortingWord(w.to_string()));
    }
    let l = w.letters();
    let mut out = vec![0u32; l.len()];
    let mut next = 1u32;
    let mut start = 0;
    while start < l.len() {
        let end = l[start + 1..]
            .iter()
            .position(|&c| c == 2)
            .map_or(l.len(), |k| start + 1 + k);
        for i in start..end {
            if l[i] == 1 {
                out[i] = next;
                next += 1;
            }
        }
        for i in (start..end).rev() {
            if l[i] != 1 {
                out[i] = next;
                next += 1;
            }
        }
        start = end;
    }
    Ok(Permutation::from_vec_unchecked(out))
}

pub fn word_to_path(w: &SortingWord) -> MotzkinPath {
    let mut steps = Vec::with_capacity(2 * w.len());
    let mut h = 0;
    for &c in w.letters() {
        match c {
            0 => {
                steps.push(PathStep::U);
                h += 1;
            }
            1 => steps.push(PathStep::H),
            _ => {
                steps.extend(std::iter::repeat_n(PathStep::D, h));
                steps.push(PathStep::U);
                h = 1;
            }
        }
    }
    steps.extend(std::iter::repeat_n(PathStep::D, h));
    MotzkinPath(steps)
}

pub fn perm_to_path(p: &Permutation) -> MotzkinPath {
    word_to_path(&perm_to_word(p))
}

/// Inverse of `word_to_path`: U after a descent to the axis reads as 2.
pub fn path_to_word(m: &MotzkinPath) -> Result<SortingWord> {
    let invalid = || Error::InvalidPath(m.to_string());
    let mut letters = Vec::new();
    let mut after_descent = false;
    for (i, s) in m.steps().iter().enumerate() {
        match s {
            PathStep::U => letters.push(if after_descent { 2 } else { 0 }),
            PathStep::H => letters.push(1),
            PathStep::D => {
                if i == 0 {
                    return Err(invalid());
                }
            }
        }
        after_descent = *s == PathStep::D;
    }
    let w = SortingWord(letters);
    if word_to_path(&w) == *m {
        Ok(w)
    } else {
        Err(invalid())
    }
}

/// Starts with U, ends with D, has no H next to a D, and every run of D
/// steps goes all the way down to the axis.
pub fn path_in_m(m: &MotzkinPath) -> bool {
    use PathStep::*;
    let s = m.steps();
    if s.is_empty() {
        return true;
    }
    if s[0] != U || s[s.len() - 1] != D || !m.is_motzkin() {
        return false;
    }
    if s.windows(2).any(|w| matches!(w, [H, D] | [D, H])) {
        return false;
    }
    let mut h = 0i64;
    for (i, step) in s.iter().enumerate() {
        h += match step {
            U => 1,
            D => -1,
            H => 0,
        };
        let run_ends = *step == D && s.get(i + 1) != Some(&D);
        if run_ends && h != 0 {
            return false;
        }
    }
    true
}

/// Size of W restricted to length `n`, by dynamic programming on the last
/// letter.
pub fn count_w(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(1u8);
    }
    // ends[c]: words of the current length in the prefix language ending in c.
    let mut ends = [BigUint::from(1u8), BigUint::ZERO, BigUint::ZERO];
    for _ in 1..n {
        let all = &ends[0] + &ends[1] + &ends[2];
        let no_one = &ends[0] + &ends[2];
        ends = [all.clone(), all, no_one];
    }
    &ends[0] + &ends[2]
}

/// Limit for the exhaustive word and path enumerations.
pub const ENUMERATION_LIMIT: usize = 14;

/// Size of W restricted to length `n`, by testing all ternary words.
pub fn count_w_enumerated(n: usize) -> Result<u64> {
    guard("word enumeration length", n, ENUMERATION_LIMIT)?;
    let total = 3u64.pow(n as u32);
    let mut letters = vec![0u8; n];
    let mut count = 0;
    for mut code in 0..total {
        for l in letters.iter_mut() {
            *l = (code % 3) as u8;
            code /= 3;
        }
        let w = SortingWord(letters.clone());
        count += u64::from(word_in_w(&w));
    }
    Ok(count)
}

/// `|M_n|` by the recurrence `|M_n| = 2|M_{n-1}| + sum_{i=1}^{n-2} |M_i|`.
pub fn count_m(n: usize) -> BigUint {
    let mut m = vec![BigUint::from(1u8), BigUint::from(1u8)];
    let mut partial = BigUint::ZERO;
    for k in 2..=n {
        partial += &m[k - 2] * u8::from(k >= 3);
        let next = &m[k - 1] * 2u8 + &partial;
        m.push(next);
    }
    m.swap_remove(n)
}

/// `|M_n|` by generating every path in M with `n` U and H steps.
pub fn count_m_enumerated(n: usize) -> Result<u64> {
    guard("path enumeration size", n, ENUMERATION_LIMIT)?;
    if n == 0 {
        return Ok(1);
    }
    let mut count = 0;
    let mut path = Vec::new();
    extend_paths(&mut path, 0, n, &mut count);
    Ok(count)
}

fn extend_paths(path: &mut Vec<PathStep>, height: usize, left: usize, count: &mut u64) {
    use PathStep::*;
    let last = path.last().copied();
    let descending = last == Some(D) && height > 0;
    if left == 0 {
        if height > 0 && last != Some(H) {
            // Only a full descent can finish the path.
            *count += 1;
        }
        if height == 0 && last == Some(D) {
            *count += 1;
        }
        return;
    }
    let mut step = |s: PathStep, h: usize, l: usize, count: &mut u64| {
        path.push(s);
        extend_paths(path, h, l, count);
        path.pop();
    };
    if descending {
        step(D, height - 1, left, count);
        return;
    }
    step(U, height + 1, left - 1, count);
    if last.is_some() && last != Some(D) {
        step(H, height, left - 1, count);
        if last != Some(H) {
            step(D, height - 1, left, count);
        }
    }
}

/// One CSV row per size: `n,count_W,count_M,F_{2n-1}`.
pub fn counts_csv(max_n: usize) -> String {
    let mut out = String::from("n,count_W,count_M,F_2n-1\n");
    for n in 0..=max_n {
        let f = fib(2 * n as i64 - 1).expect("index at least -1");
        out.push_str(&format!("{n},{},{},{f}\n", count_w(n), count_m(n)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SortingWord {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let p: Permutation = "3127465".parse().unwrap();
        assert_eq!(perm_to_word(&p).to_string(), "0102100");
        assert_eq!(
            perm_to_word(&"365142".parse().unwrap()).to_string(),
            "020101"
        );
        assert_eq!(perm_to_path(&p).to_string(), "UHUDDUHUUDDD");
        assert_eq!(word_to_path(&w("0")).to_string(), "UD");
        assert_eq!(
            path_to_word(&"UHUDDUHUUDDD".parse().unwrap()).unwrap(),
            w("0102100")
        );
        assert!(word_in_w(&w("0102100")));
        assert!(!word_in_w(&w("01")));
        assert!(!word_in_w(&w("020101")));
        assert!(word_in_w(&w("")));
        assert_eq!(
            word_to_perm(&w("0110 210 2 2010 2")).unwrap().to_string(),
            "4 1 2 3 7 5 6 8 12 11 9 10 13"
        );
        assert_eq!(word_to_perm(&w("02")).unwrap().to_string(), "1 2");
        assert!(word_to_perm(&w("0120")).is_err());
    }

    #[test]
    fn path_membership() {
        for (s, ok) in [
            ("UHUDDUHUUDDD", true),
            ("UD", true),
            ("UHD", false),
            ("", true),
            ("UUDHD", false),
        ] {
            assert_eq!(path_in_m(&s.parse().unwrap()), ok, "{s}");
        }
        assert!(path_to_word(&"UDD".parse().unwrap()).is_err());
        assert!(path_to_word(&"UUDUDD".parse().unwrap()).is_err());
        assert!(path_to_word(&"DU".parse().unwrap()).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(count_m(0), BigUint::from(1u8));
        assert_eq!(count_m(5), BigUint::from(34u8));
        for n in 0..=10 {
            assert_eq!(
                BigUint::from(count_m_enumerated(n).unwrap()),
                count_m(n),
                "n={n}"
            );
            assert_eq!(
                BigUint::from(count_w_enumerated(n).unwrap()),
                count_w(n),
                "n={n}"
            );
        }
        assert!(count_w_enumerated(15).is_err());
    }
}
