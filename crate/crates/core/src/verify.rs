//! Named verification suites. Each suite runs exhaustive checks at desk
//! scale and returns one [`Check`] per claim.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::classes::{
    basis_preimage_max_first, basis_preimage_secondmax_first, classify, discover_basis,
    parallel_nobypass_basis, psbp_basis, Composition, BUB_PSB, PSB_QUE, QUE_PSB,
};
use crate::enumeration::{
    composition_counts, conjecture_simple_psbp, fib, parallel_counts, REPORT_LIMIT, SWEEP_LIMIT,
};
use crate::error::{guard, Error, Result};
use crate::machines::{compose_sorts, dfs_sortable, greedy_parallel, psb, psbw, Machine};
use crate::pattern::{contains, PatternBasis};
use crate::perm::{next_permutation, Permutation};
use crate::preimage::{
    c0, c1, c2, c2_complete, image_table, in_c0, in_c1, in_c2, in_c2_complete, preimage_histogram,
    preimages_of,
};
use crate::sweep;
use crate::words::{
    count_m_enumerated, count_w_enumerated, path_in_m, path_to_word, perm_to_path, perm_to_word,
    word_in_w, word_to_path, word_to_perm, SortingWord,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Fixtures,
    Fibonacci,
    Bijections,
    Preimages,
    Formulas,
    Classes,
    Compositions,
    Parallel,
    Discovery,
    Psbw,
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Fixtures,
        Suite::Fibonacci,
        Suite::Bijections,
        Suite::Preimages,
        Suite::Formulas,
        Suite::Classes,
        Suite::Compositions,
        Suite::Parallel,
        Suite::Discovery,
        Suite::Psbw,
        Suite::Conjecture,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Fixtures => "fixtures",
            Suite::Fibonacci => "fibonacci",
            Suite::Bijections => "bijections",
            Suite::Preimages => "preimages",
            Suite::Formulas => "formulas",
            Suite::Classes => "classes",
            Suite::Compositions => "compositions",
            Suite::Parallel => "parallel",
            Suite::Discovery => "discovery",
            Suite::Psbw => "psbw",
            Suite::Conjecture => "conjecture",
        }
    }

    /// Largest permutation size the suite sweeps when none is given.
    pub fn default_size(&self) -> usize {
        match self {
            Suite::Fibonacci | Suite::Conjecture => 9,
            Suite::Classes => 7,
            _ => 8,
        }
    }

    pub fn run(&self, max_n: Option<usize>, force: bool) -> Result<Vec<Check>> {
        let n = match max_n {
            Some(n) => {
                guard(
                    "verification size",
                    n,
                    if force { SWEEP_LIMIT } else { REPORT_LIMIT },
                )?;
                n
            }
            None => self.default_size(),
        };
        let mut out = Checks {
            suite: *self,
            list: Vec::new(),
        };
        match self {
            Suite::Fixtures => fixtures(&mut out),
            Suite::Fibonacci => fibonacci(&mut out, n),
            Suite::Bijections => bijections(&mut out, n),
            Suite::Preimages => preimages(&mut out, n),
            Suite::Formulas => formulas(&mut out, n),
            Suite::Classes => classes(&mut out, n),
            Suite::Compositions => compositions(&mut out, n, force)?,
            Suite::Parallel => parallel(&mut out, n, force)?,
            Suite::Discovery => discovery(&mut out)?,
            Suite::Psbw => psbw_suite(&mut out, n),
            Suite::Conjecture => conjecture(&mut out, n, force)?,
        }
        Ok(out.list)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "suite",
                name: s.to_string(),
            })
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never fails the suite.
    Report,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Report => "REPORT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

struct Checks {
    suite: Suite,
    list: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.list.push(Check {
            suite: self.suite,
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    fn report(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, Status::Report, detail);
    }

    /// Passes when no permutation with a size in `sizes` is a
    /// counterexample.
    fn sweep(
        &mut self,
        name: impl Into<String>,
        sizes: RangeInclusive<usize>,
        bad: impl Fn(&Permutation) -> bool + Sync,
    ) {
        let found = sizes.clone().find_map(|n| sweep::find_first(n, &bad));
        let detail = match &found {
            Some(p) => format!("counterexample {}", show(p)),
            None => format!("sizes {}..={}", sizes.start(), sizes.end()),
        };
        self.check(name, found.is_none(), detail);
    }
}

fn show(p: &Permutation) -> String {
    p.compact().unwrap_or_else(|| p.to_string())
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("valid permutation literal")
}

fn basis(items: &[&str]) -> PatternBasis {
    PatternBasis::parse(items.iter().copied()).expect("valid basis literal")
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn fastest<T>(f: impl Fn() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut value = f();
    for _ in 0..5 {
        let start = Instant::now();
        value = f();
        best = best.min(start.elapsed());
    }
    (value, best)
}

fn fixtures(out: &mut Checks) {
    let cases = [
        ("psb 365142", "365142", "312456"),
        ("psb 3127465", "3127465", "1234567"),
        ("word 3127465", "3127465", "0102100"),
        ("path 3127465", "3127465", "UHUDDUHUUDDD"),
        ("psb 635247198", "635247198", "324561789"),
    ];
    let mut slowest = Duration::ZERO;
    for (name, input, expected) in cases {
        let p = perm(input);
        let (got, t) = match name.split_once(' ').unwrap().0 {
            "word" => fastest(|| perm_to_word(&p).to_string()),
            "path" => fastest(|| perm_to_path(&p).to_string()),
            _ => fastest(|| psb(&p).compact().unwrap()),
        };
        slowest = slowest.max(t);
        out.check(
            name,
            got == expected,
            format!("{got} (expected {expected})"),
        );
    }
    out.check(
        "each fixture under 1 ms",
        slowest < Duration::from_millis(1),
        format!("slowest {slowest:?}"),
    );
}

fn fibonacci(out: &mut Checks, max_n: usize) {
    let b = basis(&["231", "4213"]);
    for n in 1..=max_n {
        let disagreement = sweep::find_first(n, |p| {
            let alg = psb(p).is_identity();
            alg != b.admits(p.as_slice()) || alg != dfs_sortable(p.as_slice(), &Machine::Psb)
        });
        let count = sweep::count(n, |p| psb(p).is_identity());
        let expected = fib(2 * n as i64 - 1).unwrap();
        let ok = disagreement.is_none() && BigUint::from(count) == expected;
        let detail = match disagreement {
            Some(p) => format!("disagreement on {}", show(&p)),
            None => format!("{count} sortable, F = {expected}"),
        };
        out.check(format!("psb = Av(231,4213) = search, n={n}"), ok, detail);
    }
}

fn ternary_words(len: usize) -> impl Iterator<Item = SortingWord> {
    (0..3u64.pow(len as u32)).map(move |mut code| {
        SortingWord(
            (0..len)
                .map(|_| {
                    let l = (code % 3) as u8;
                    code /= 3;
                    l
                })
                .collect(),
        )
    })
}

fn bijections(out: &mut Checks, max_n: usize) {
    out.sweep(
        "sortable perm -> word -> path round trips",
        0..=max_n,
        |p| {
            if !psb(p).is_identity() {
                return false;
            }
            let w = perm_to_word(p);
            let path = perm_to_path(p);
            !word_in_w(&w)
                || word_to_perm(&w).as_ref() != Ok(p)
                || !path_in_m(&path)
                || word_to_path(&w) != path
                || path_to_word(&path).as_ref() != Ok(&w)
        },
    );
    let word_len = max_n + 1;
    let bad = (0..=word_len).find_map(|len| {
        ternary_words(len).filter(word_in_w).find(|w| {
            word_to_perm(w).map_or(true, |p| !psb(&p).is_identity() || perm_to_word(&p) != *w)
                || path_to_word(&word_to_path(w)).as_ref() != Ok(w)
        })
    });
    out.check(
        "word -> perm -> word round trips",
        bad.is_none(),
        match bad {
            Some(w) => format!("counterexample {w}"),
            None => format!("all words up to length {word_len}"),
        },
    );
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 0..=12 {
        let (w, m) = (
            count_w_enumerated(n).unwrap(),
            count_m_enumerated(n).unwrap(),
        );
        let f = fib(2 * n as i64 - 1).unwrap();
        ok &= BigUint::from(w) == f && BigUint::from(m) == f;
        rows.push(w);
    }
    out.check("|W_n| = |M_n| = F(2n-1), n <= 12", ok, join(&rows));
}

fn preimages(out: &mut Checks, max_n: usize) {
    for n in 1..=max_n {
        let table = image_table(n);
        let bad = sweep::find_first(n, |s| {
            let brute = table.get(s).cloned().unwrap_or_default();
            preimages_of(s) != brute
        });
        out.check(
            format!("algorithm = brute force, n={n}"),
            bad.is_none(),
            match bad {
                Some(s) => format!("differs on {}", show(&s)),
                None => format!("{} images", table.len()),
            },
        );
    }
    let listed = [
        "7315642", "7315462", "7315426", "3715642", "3715462", "3715426", "3517642", "3517462",
        "3517426", "3516427",
    ];
    let found: Vec<String> = preimages_of(&perm("3154267"))
        .iter()
        .map(|p| p.compact().unwrap())
        .collect();
    let missing: Vec<&str> = listed
        .iter()
        .copied()
        .filter(|l| !found.iter().any(|f| f == l))
        .collect();
    let extra: Vec<&str> = found
        .iter()
        .map(String::as_str)
        .filter(|f| !listed.contains(f))
        .collect();
    out.check(
        "3154267 has the 10 listed preimages",
        missing.is_empty() && extra.is_empty(),
        format!(
            "{} found; missing [{}]; extra [{}]",
            found.len(),
            join(&missing),
            join(&extra)
        ),
    );
}

fn formulas(out: &mut Checks, max_n: usize) {
    let hists: Vec<Vec<u64>> = (0..=max_n).map(preimage_histogram).collect();
    let exact = |n: usize, k: usize| BigUint::from(hists[n].get(k).copied().unwrap_or(0));
    let compare = |out: &mut Checks,
                   name: &str,
                   sizes: RangeInclusive<usize>,
                   f: &dyn Fn(usize) -> BigUint,
                   k: usize| {
        let computed: Vec<BigUint> = sizes.clone().map(f).collect();
        let brute: Vec<BigUint> = sizes.clone().map(|n| exact(n, k)).collect();
        out.check(
            format!(
                "{name} = brute force, n in {}..={}",
                sizes.start(),
                sizes.end()
            ),
            computed == brute,
            format!("formula {} / brute {}", join(&computed), join(&brute)),
        );
    };
    compare(out, "c0", 1..=max_n, &c0, 0);
    compare(out, "c1", 1..=max_n, &c1, 1);
    compare(out, "c2", 4..=max_n, &c2, 2);
    let prefix: Vec<BigUint> = (1..=7).map(c1).collect();
    out.check(
        "c1 prefix 1,0,1,2,8,36,198",
        prefix == [1u32, 0, 1, 2, 8, 36, 198].map(BigUint::from),
        join(&prefix),
    );
    for (name, member, k) in [
        ("no preimage <=> C0", in_c0 as fn(&[u32]) -> bool, 0),
        ("one preimage <=> C1", in_c1, 1),
    ] {
        out.sweep(name, 1..=max_n, |p| {
            member(p.as_slice()) != (preimages_of(p).len() == k)
        });
    }
    let structural: Vec<BigUint> = (4..=max_n)
        .map(|n| BigUint::from(sweep::count(n, |p| in_c2(p.as_slice()))))
        .collect();
    let formula: Vec<BigUint> = (4..=max_n).map(c2).collect();
    out.check(
        "C2 membership count = c2",
        structural == formula,
        join(&structural),
    );
    out.sweep("two preimages <=> C2", 1..=max_n, |p| {
        in_c2(p.as_slice()) != (preimages_of(p).len() == 2)
    });
    out.sweep("two preimages <=> C2 with adjacent start", 1..=max_n, |p| {
        in_c2_complete(p.as_slice()) != (preimages_of(p).len() == 2)
    });
    compare(out, "c2 + c1(n-1)", 1..=max_n, &c2_complete, 2);
}

fn same_preimage_class(rho: &Permutation, b: &PatternBasis, max_n: usize) -> Option<Permutation> {
    (0..=max_n).find_map(|n| {
        sweep::find_first(n, |p| {
            !contains(psb(p).as_slice(), rho.as_slice()) != b.admits(p.as_slice())
        })
    })
}

fn classes(out: &mut Checks, max_n: usize) {
    for k in 2..=4 {
        for rho in sweep::all(k) {
            let r = rho.as_slice();
            let b = if r[0] as usize == k {
                basis_preimage_max_first(&rho)
            } else if k >= 3 && r[0] as usize == k - 1 && r[k - 1] as usize == k {
                basis_preimage_secondmax_first(&rho)
            } else {
                continue;
            };
            let b = b.expect("shape checked");
            let bad = same_preimage_class(&rho, &b, max_n);
            out.check(
                format!(
                    "preimage class of {} = Av({})",
                    show(&rho),
                    b.lines().join(",")
                ),
                bad.is_none(),
                match bad {
                    Some(p) => format!("differs on {}", show(&p)),
                    None => format!("n <= {max_n}"),
                },
            );
        }
    }
    let mut classes_seen = 0;
    let mut failures = Vec::new();
    for k in 1..=6 {
        for rho in sweep::all(k) {
            match classify(&rho) {
                Ok(v) if v.verify(&rho) => classes_seen += usize::from(v.is_class),
                _ => failures.push(show(&rho)),
            }
        }
    }
    out.check(
        "every pattern up to size 6 has a verified class basis or witness",
        failures.is_empty(),
        format!("{classes_seen} classes; failures [{}]", failures.join(",")),
    );
}

fn compositions(out: &mut Checks, max_n: usize, force: bool) -> Result<()> {
    for c in Composition::ALL {
        let (b, machines) = (c.basis(), c.machines());
        out.sweep(format!("{c} sortable = Av(basis)"), 0..=max_n, |p| {
            compose_sorts(&machines, p) != b.admits(p.as_slice())
        });
    }
    for (c, printed) in [
        (Composition::QuePsb, &QUE_PSB),
        (Composition::PsbQue, &PSB_QUE),
        (Composition::BubPsb, &BUB_PSB),
    ] {
        let machines = c.machines();
        let sizes = 1..=max_n.min(7);
        let computed: Vec<i64> = sizes
            .clone()
            .map(|n| sweep::count(n, |p| compose_sorts(&machines, p)) as i64)
            .collect();
        out.check(
            format!("{c} printed prefix"),
            computed == printed[..computed.len()],
            join(&computed),
        );
    }
    for c in Composition::ALL {
        let r = composition_counts(c, max_n, force)?;
        let detail = format!(
            "computed {} / reference {}",
            join(&r.computed),
            join(&r.reference)
        );
        out.check(format!("{c} counts against reference"), r.agree, detail);
    }
    Ok(())
}

fn parallel(out: &mut Checks, max_n: usize, force: bool) -> Result<()> {
    out.sweep("psbp = greedy(2, bypass) = search", 0..=max_n, |p| {
        let alg = Machine::PSBP.sorts(p);
        alg != greedy_parallel(p, 2, true).unwrap().sorted || alg != Machine::PSBP.can_sort(p)
    });
    let b = psbp_basis();
    out.sweep("psbp sortable = Av(9 patterns)", 0..=max_n, |p| {
        Machine::PSBP.sorts(p) != b.admits(p.as_slice())
    });
    let r = parallel_counts(max_n, force)?;
    out.check(
        "psbp counts = generating function",
        r.agree,
        format!("{} / {}", join(&r.computed), join(&r.reference)),
    );
    let nobypass = Machine::Parallel {
        stacks: 2,
        bypass: false,
    };
    let nb = parallel_nobypass_basis();
    out.sweep(
        "no-bypass greedy = Av(7 patterns) = search",
        0..=max_n.min(7),
        |p| {
            let alg = nobypass.sorts(p);
            alg != nb.admits(p.as_slice()) || alg != nobypass.can_sort(p)
        },
    );
    Ok(())
}

fn discovery(out: &mut Checks) -> Result<()> {
    let got = discover_basis(&Machine::Psb, 6)?;
    out.check(
        "psb, length 6",
        got.lines() == ["231", "4213"],
        got.lines().join(","),
    );
    let got = discover_basis(&Machine::PopStack, 5)?;
    out.check(
        "popstack, length 5",
        got.lines() == ["231", "312"],
        got.lines().join(","),
    );
    let expected = psbp_basis();
    for len in [6, 7] {
        let got = discover_basis(&Machine::PSBP, len)?;
        out.check(
            format!("psbp, length {len}"),
            got == expected,
            got.lines().join(","),
        );
    }
    Ok(())
}

/// Words using the letters `0..m` exactly twice each, for `m` up to
/// `max_letters`, in lexicographic order.
fn two_regular_words(max_letters: u32) -> Vec<Vec<u32>> {
    let mut words = Vec::new();
    for m in 0..=max_letters {
        let mut w: Vec<u32> = (0..m).flat_map(|x| [x, x]).collect();
        loop {
            words.push(w.clone());
            if !next_permutation(&mut w) {
                break;
            }
        }
    }
    words
}

fn psbw_suite(out: &mut Checks, max_n: usize) {
    out.sweep("psbw(., 1) = search", 0..=max_n, |p| {
        let w: Vec<u32> = p.as_slice().iter().map(|x| x - 1).collect();
        psbw(&w, 1).unwrap().sorted != dfs_sortable(p.as_slice(), &Machine::Psb)
    });
    let words = two_regular_words(4);
    let mut sortable = 0;
    let mut discrepancies = Vec::new();
    for w in &words {
        let greedy = psbw(w, 2).unwrap().sorted;
        let search = dfs_sortable(w, &Machine::Psb);
        sortable += usize::from(search);
        if greedy != search {
            let text: String = w.iter().map(ToString::to_string).collect();
            discrepancies.push(format!("{text}(greedy {greedy}, search {search})"));
        }
    }
    out.report(
        "psbw(., 2) against search, 2-regular words, <= 4 letters",
        format!(
            "{} words, {sortable} sortable, {} discrepancies [{}]",
            words.len(),
            discrepancies.len(),
            discrepancies.join(" ")
        ),
    );
}

fn conjecture(out: &mut Checks, max_n: usize, force: bool) -> Result<()> {
    let r = conjecture_simple_psbp(max_n, force)?;
    let to_int = |v: &[BigInt]| join(v);
    out.report(
        "simple psbp-sortable counts against the conjectured values",
        format!(
            "computed {} / conjectured {}; {}",
            to_int(&r.computed),
            to_int(&r.reference),
            match r.first_divergence {
                None => "agree".to_string(),
                Some(n) => format!("first divergence at n = {n}"),
            }
        ),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn two_regular_word_counts() {
        // 1 + 1 + 6 + 90 + 2520
        assert_eq!(two_regular_words(4).len(), 2618);
    }

    #[test]
    fn explicit_sizes_are_guarded() {
        assert!(matches!(
            Suite::Fibonacci.run(Some(9), false),
            Err(Error::Guard { .. })
        ));
        assert!(Suite::Fixtures
            .run(None, false)
            .unwrap()
            .iter()
            .all(|c| !c.failed()));
    }
}
