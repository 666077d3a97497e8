//! Classical and barred pattern containment.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A classical pattern. Any permutation can serve as one.
pub type Pattern = Permutation;

/// True iff some subsequence of `text` is order-isomorphic to `pattern`.
///
/// Backtracks over positions; each new entry must fall inside the value
/// window fixed by the entries already matched.
pub fn contains(text: &[u32], pattern: &[u32]) -> bool {
    let mut found = false;
    for_each_occurrence(text, pattern, &mut |_| {
        found = true;
        false
    });
    found
}

pub fn avoids_pattern(text: &[u32], pattern: &[u32]) -> bool {
    !contains(text, pattern)
}

/// Calls `visit` with the text positions of each occurrence of `pattern`,
/// in lexicographic order of positions. `visit` returns `false` to stop.
pub fn for_each_occurrence(text: &[u32], pattern: &[u32], visit: &mut dyn FnMut(&[usize]) -> bool) {
    let k = pattern.len();
    if k > text.len() {
        return;
    }
    if k == 0 {
        visit(&[]);
        return;
    }
    // For pattern index j: the pattern indices (< j) holding the nearest
    // smaller and nearest larger pattern value.
    let bounds: Vec<(Option<usize>, Option<usize>)> = (0..k)
        .map(|j| {
            let v = pattern[j];
            let below = (0..j)
                .filter(|&i| pattern[i] < v)
                .max_by_key(|&i| pattern[i]);
            let above = (0..j)
                .filter(|&i| pattern[i] > v)
                .min_by_key(|&i| pattern[i]);
            (below, above)
        })
        .collect();
    let mut chosen = Vec::with_capacity(k);
    search(text, &bounds, 0, &mut chosen, visit);
}

fn search(
    text: &[u32],
    bounds: &[(Option<usize>, Option<usize>)],
    from: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let j = chosen.len();
    if j == bounds.len() {
        return visit(chosen);
    }
    let remaining = bounds.len() - j;
    let (below, above) = bounds[j];
    let lo = below.map(|i| text[chosen[i]]);
    let hi = above.map(|i| text[chosen[i]]);
    for pos in from..=text.len() - remaining {
        let v = text[pos];
        if lo.is_some_and(|lo| v <= lo) || hi.is_some_and(|hi| v >= hi) {
            continue;
        }
        chosen.push(pos);
        let go_on = search(text, bounds, pos + 1, chosen, visit);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// A pattern some of whose entries are barred.
///
/// A text avoids it when every occurrence of the unbarred entries extends to
/// an occurrence of the whole pattern; it contains it otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarredPattern {
    entries: Permutation,
    barred: Vec<bool>,
}

impl BarredPattern {
    pub fn new(entries: Permutation, barred_positions: &[usize]) -> Result<Self> {
        let mut barred = vec![false; entries.len()];
        for &i in barred_positions {
            if i >= entries.len() {
                return Err(Error::Parse {
                    token: i.to_string(),
                    reason: "barred position out of range".into(),
                });
            }
            barred[i] = true;
        }
        if barred.iter().all(|&b| b) {
            return Err(Error::Parse {
                token: entries.to_string(),
                reason: "at least one entry must be unbarred".into(),
            });
        }
        Ok(BarredPattern { entries, barred })
    }

    pub fn entries(&self) -> &Permutation {
        &self.entries
    }

    pub fn barred_positions(&self) -> Vec<usize> {
        (0..self.barred.len()).filter(|&i| self.barred[i]).collect()
    }

    pub fn is_classical(&self) -> bool {
        !self.barred.iter().any(|&b| b)
    }

    /// The unbarred entries, standardized.
    pub fn unbarred(&self) -> Permutation {
        let kept: Vec<u32> = self
            .unbarred_indices()
            .map(|i| self.entries.as_slice()[i])
            .collect();
        Permutation::standardize(&kept)
    }

    fn unbarred_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.barred.len()).filter(|&i| !self.barred[i])
    }
}

impl fmt::Display for BarredPattern {
    /// `3!5241` style: `!` marks the entry after it as barred. Patterns
    /// with an entry above 9 fall back to space-separated tokens.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.entries.len() <= 9;
        for (i, v) in self.entries.as_slice().iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            if self.barred[i] {
                f.write_str("!")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for BarredPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut values = Vec::new();
        let mut barred = Vec::new();
        if s.contains(|c: char| c.is_whitespace() || c == ',') {
            for tok in s
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let (num, bar) = match tok.strip_prefix('!') {
                    Some(num) => (num, true),
                    None => (tok, false),
                };
                let v = num.parse::<u32>().map_err(|_| Error::Parse {
                    token: tok.to_string(),
                    reason: "not a pattern entry".into(),
                })?;
                if bar {
                    barred.push(values.len());
                }
                values.push(v);
            }
        } else {
            let mut bar_next = false;
            for c in s.chars() {
                if c == '!' {
                    if bar_next {
                        return Err(Error::Parse {
                            token: s.to_string(),
                            reason: "repeated `!`".into(),
                        });
                    }
                    bar_next = true;
                } else {
                    if std::mem::take(&mut bar_next) {
                        barred.push(values.len());
                    }
                    values.push(c.to_digit(10).ok_or_else(|| Error::Parse {
                        token: c.to_string(),
                        reason: "not a digit".into(),
                    })?);
                }
            }
            if bar_next {
                return Err(Error::Parse {
                    token: s.to_string(),
                    reason: "`!` must precede an entry".into(),
                });
            }
        }
        BarredPattern::new(Permutation::new(values)?, &barred)
    }
}

impl From<Permutation> for BarredPattern {
    fn from(entries: Permutation) -> Self {
        let barred = vec![false; entries.len()];
        BarredPattern { entries, barred }
    }
}

/// True iff some occurrence of the unbarred entries of `pattern` in `text`
/// cannot be extended to an occurrence of the full pattern.
pub fn contains_barred(text: &[u32], pattern: &BarredPattern) -> bool {
    if pattern.is_classical() {
        return contains(text, pattern.entries.as_slice());
    }
    let unbarred: Vec<usize> = pattern.unbarred_indices().collect();
    let mut extendable: HashSet<Vec<usize>> = HashSet::new();
    for_each_occurrence(text, pattern.entries.as_slice(), &mut |occ| {
        extendable.insert(unbarred.iter().map(|&i| occ[i]).collect());
        true
    });
    let mut found = false;
    for_each_occurrence(text, pattern.unbarred().as_slice(), &mut |occ| {
        if !extendable.contains(occ) {
            found = true;
        }
        !found
    });
    found
}

/// A finite set of classical and barred patterns.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternBasis {
    pub classical: Vec<Pattern>,
    pub barred: Vec<BarredPattern>,
}

impl PatternBasis {
    pub fn classical<I: IntoIterator<Item = Pattern>>(patterns: I) -> Self {
        let mut classical: Vec<Pattern> = patterns.into_iter().collect();
        classical.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        classical.dedup();
        PatternBasis {
            classical,
            barred: Vec::new(),
        }
    }

    /// Parses a list like `["231", "4213"]`; entries with `!` become barred.
    pub fn parse<'a, I: IntoIterator<Item = &'a str>>(items: I) -> Result<Self> {
        let mut basis = PatternBasis::default();
        for item in items {
            let bp: BarredPattern = item.parse()?;
            if bp.is_classical() {
                basis.classical.push(bp.entries);
            } else {
                basis.barred.push(bp);
            }
        }
        basis
            .classical
            .sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        basis.classical.dedup();
        Ok(basis)
    }

    pub fn len(&self) -> usize {
        self.classical.len() + self.barred.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True iff `text` contains none of the classical and none of the barred
    /// patterns.
    pub fn admits(&self, text: &[u32]) -> bool {
        self.classical.iter().all(|q| !contains(text, q.as_slice()))
            && self.barred.iter().all(|q| !contains_barred(text, q))
    }

    /// Pairs `(a, b)` of distinct classical patterns with `a` contained in
    /// `b`. Empty iff the classical part is an antichain.
    pub fn comparable_pairs(&self) -> Vec<(Pattern, Pattern)> {
        let mut out = Vec::new();
        for a in &self.classical {
            for b in &self.classical {
                if a != b && a.len() <= b.len() && contains(b.as_slice(), a.as_slice()) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn is_antichain(&self) -> bool {
        self.comparable_pairs().is_empty()
    }

    /// The basis with every classical pattern inverted (barred patterns are
    /// inverted together with their bars).
    pub fn inverse(&self) -> PatternBasis {
        let barred = self
            .barred
            .iter()
            .map(|bp| {
                // entry at position i with value v moves to position v-1
                let positions: Vec<usize> = bp
                    .barred_positions()
                    .iter()
                    .map(|&i| bp.entries.as_slice()[i] as usize - 1)
                    .collect();
                BarredPattern::new(bp.entries.inverse(), &positions)
                    .expect("inverse keeps bars valid")
            })
            .collect();
        PatternBasis {
            classical: PatternBasis::classical(self.classical.iter().map(Permutation::inverse))
                .classical,
            barred,
        }
    }

    /// One pattern per line, in basis order, `!` marking barred entries.
    pub fn lines(&self) -> Vec<String> {
        self.classical
            .iter()
            .map(|p| BarredPattern::from(p.clone()).to_string())
            .chain(self.barred.iter().map(ToString::to_string))
            .collect()
    }
}

impl Serialize for PatternBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.lines())
    }
}

/// `avoids(p, b)`: `p` contains no pattern of `b`.
pub fn avoids(p: &Permutation, basis: &PatternBasis) -> bool {
    basis.admits(p.as_slice())
}
