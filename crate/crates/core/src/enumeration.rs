//! Exact counting: Fibonacci targets, rational generating functions,
//! exhaustive avoidance and sortability counts, and the sequence reports
//! built from them.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classes::{psbp_basis, Composition};
use crate::error::{guard, Error, Result};
use crate::machines::Machine;
use crate::pattern::PatternBasis;
use crate::sweep::{self, Strategy};

/// Fibonacci numbers with `F_{-1} = 1`, `F_0 = 0`, `F_1 = 1`.
pub fn fib(n: i64) -> Result<BigUint> {
    if n < -1 {
        return Err(Error::Guard {
            what: "Fibonacci index below -1",
            requested: n.unsigned_abs() as usize,
            limit: 1,
        });
    }
    let (mut a, mut b) = (BigUint::one(), BigUint::zero());
    if n == -1 {
        return Ok(a);
    }
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(b)
}

/// A quotient of integer polynomials, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGf {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalGf {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self> {
        if denominator.first().is_none_or(Zero::is_zero) {
            return Err(Error::ZeroConstant);
        }
        Ok(RationalGf {
            numerator,
            denominator,
        })
    }

    pub fn from_i64(numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        Self::new(to_big(numerator), to_big(denominator))
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    /// First `count` Taylor coefficients from the linear recurrence the
    /// denominator imposes.
    pub fn expand(&self, count: usize) -> Result<Vec<BigInt>> {
        let d = &self.denominator;
        let mut a: Vec<BigInt> = Vec::with_capacity(count);
        for n in 0..count {
            let mut acc = self.numerator.get(n).cloned().unwrap_or_default();
            for i in 1..d.len().min(n + 1) {
                acc -= &d[i] * &a[n - i];
            }
            a.push(exact_div(acc, &d[0], n)?);
        }
        Ok(a)
    }
}

fn to_big(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&v| BigInt::from(v)).collect()
}

fn exact_div(a: BigInt, b: &BigInt, index: usize) -> Result<BigInt> {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonInteger { index })
    }
}

pub fn gf_expand(g: &RationalGf, count: usize) -> Result<Vec<BigInt>> {
    g.expand(count)
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The generating functions with closed forms.
pub mod gfs {
    use super::*;

    /// Sorting words, equivalently sortable permutations: `x(1-x)/(1-3x+x^2)`.
    pub fn sortable() -> RationalGf {
        RationalGf::from_i64(&[0, 1, -1], &[1, -3, 1]).unwrap()
    }

    /// Inverses of permutations sorted by bubble sort after the pop stack.
    pub fn bub_psb() -> RationalGf {
        let num = [&[-1, 3][..], &[-1, 2, 1], &[1, -1], &[1, -1]]
            .into_iter()
            .map(to_big)
            .reduce(|a, b| poly_mul(&a, &b))
            .unwrap();
        RationalGf::new(num, to_big(&[1, -8, 22, -24, 6, 5])).unwrap()
    }

    /// Inverses of permutations sorted by the pop stack after bubble sort.
    pub fn psb_bub() -> RationalGf {
        RationalGf::from_i64(&[1, -3], &[1, -4, 2]).unwrap()
    }

    /// Inverses of permutations sorted by two parallel pop stacks with
    /// bypass.
    pub fn parallel() -> RationalGf {
        let num = [[1, -1], [1, -2], [1, -4]]
            .iter()
            .map(|p| to_big(p))
            .reduce(|a, b| poly_mul(&a, &b))
            .unwrap();
        RationalGf::new(num, to_big(&[1, -8, 20, -18, 3])).unwrap()
    }
}

/// Largest size the exhaustive counters accept.
pub const SWEEP_LIMIT: usize = 10;
/// Default size limit for multi-size reports; `force` lifts it to
/// `SWEEP_LIMIT`.
pub const REPORT_LIMIT: usize = 8;

fn report_guard(what: &'static str, n: usize, force: bool) -> Result<()> {
    guard(what, n, if force { SWEEP_LIMIT } else { REPORT_LIMIT })
}

/// `|Av_n(basis)|` by exhaustive scan.
pub fn count_av(basis: &PatternBasis, n: usize) -> Result<u64> {
    guard("avoidance count size", n, SWEEP_LIMIT)?;
    Ok(sweep::count(n, |p| basis.admits(p.as_slice())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// Run the machine's deterministic algorithm.
    #[default]
    Algorithm,
    /// Ask the exhaustive search whether any run sorts.
    Oracle,
}

pub fn count_sortable_by(machine: &Machine, n: usize, mode: CountMode) -> Result<u64> {
    count_sortable_with(machine, n, mode, Strategy::default())
}

pub fn count_sortable_with(
    machine: &Machine,
    n: usize,
    mode: CountMode,
    strategy: Strategy,
) -> Result<u64> {
    guard("sortability count size", n, SWEEP_LIMIT)?;
    Ok(match mode {
        CountMode::Algorithm => sweep::count_with(strategy, n, |p| machine.sorts(p)),
        CountMode::Oracle => sweep::count_with(strategy, n, |p| machine.can_sort(p)),
    })
}

/// Computed counts for sizes `start..start + computed.len()` next to a
/// reference list for the same sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub label: String,
    pub start: usize,
    pub computed: Vec<BigInt>,
    pub reference: Vec<BigInt>,
    /// Counts of the class itself when `computed` counts inverses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct: Option<Vec<BigInt>>,
    pub agree: bool,
    pub first_divergence: Option<usize>,
}

impl SequenceReport {
    pub fn new(
        label: impl Into<String>,
        start: usize,
        computed: Vec<BigInt>,
        reference: Vec<BigInt>,
    ) -> Self {
        let first_divergence = computed
            .iter()
            .zip(&reference)
            .position(|(a, b)| a != b)
            .map(|i| i + start)
            .or_else(|| (computed.len() > reference.len()).then_some(start + reference.len()));
        SequenceReport {
            label: label.into(),
            start,
            computed,
            reference,
            direct: None,
            agree: first_divergence.is_none(),
            first_divergence,
        }
    }

    fn with_direct(mut self, direct: Vec<BigInt>) -> Self {
        if direct != self.computed {
            self.agree = false;
        }
        self.direct = Some(direct);
        self
    }

    /// `label,n,computed,reference,match` rows.
    pub fn csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str("label,n,computed,reference,match\n");
        }
        for (i, c) in self.computed.iter().enumerate() {
            let r = self.reference.get(i);
            let r_text = r.map(ToString::to_string).unwrap_or_default();
            let ok = r == Some(c);
            let _ = writeln!(out, "{},{},{c},{r_text},{ok}", self.label, self.start + i);
        }
        out
    }

    pub fn text(&self) -> String {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = format!(
            "{} (n from {})\n  computed:  {}\n  reference: {}\n",
            self.label,
            self.start,
            join(&self.computed),
            join(&self.reference)
        );
        if let Some(d) = &self.direct {
            let _ = writeln!(out, "  direct:    {}", join(d));
        }
        match self.first_divergence {
            None => out.push_str("  agree\n"),
            Some(n) => {
                let _ = writeln!(out, "  first divergence at n = {n}");
            }
        }
        out
    }
}

/// Counts for sizes `1..=max_n` of the permutations sorted by the
/// composition, compared with the sequence the class is known by.
///
/// Compositions whose reference is a generating function of the inverse
/// class are counted on inverses, with the direct counts attached; the two
/// must coincide for the report to agree.
pub fn composition_counts(c: Composition, max_n: usize, force: bool) -> Result<SequenceReport> {
    report_guard("composition report size", max_n, force)?;
    let machines = c.machines();
    let sorts = |p: &crate::perm::Permutation| crate::machines::compose_sorts(&machines, p);
    let sizes = 1..=max_n;
    let direct: Vec<BigInt> = sizes
        .clone()
        .map(|n| BigInt::from(sweep::count(n, sorts)))
        .collect();
    let reference = match c.reference(max_n + 1)? {
        Reference::Printed(v) => v,
        Reference::InverseGf(v) => {
            let inverse: Vec<BigInt> = sizes
                .map(|n| BigInt::from(sweep::count(n, |p| sorts(&p.inverse()))))
                .collect();
            return Ok(
                SequenceReport::new(c.to_string(), 1, inverse, v[1..].to_vec()).with_direct(direct),
            );
        }
        Reference::Basis(b) => (1..=max_n)
            .map(|n| count_av(&b, n).map(BigInt::from))
            .collect::<Result<_>>()?,
    };
    let reference = reference.into_iter().take(max_n).collect();
    Ok(SequenceReport::new(c.to_string(), 1, direct, reference))
}

/// What a composition's counts are checked against.
pub enum Reference {
    /// Published counts for sizes 1, 2, ...
    Printed(Vec<BigInt>),
    /// Coefficients 0, 1, ... of the generating function of the inverse class.
    InverseGf(Vec<BigInt>),
    /// Only a basis is known; count its avoiders.
    Basis(PatternBasis),
}

/// Sortable counts of the two-stack parallel machine for sizes `1..=max_n`,
/// on inverses, against the generating function; direct counts attached.
pub fn parallel_counts(max_n: usize, force: bool) -> Result<SequenceReport> {
    report_guard("parallel report size", max_n, force)?;
    let m = Machine::PSBP;
    let gf = gfs::parallel().expand(max_n + 1)?;
    let direct = (1..=max_n)
        .map(|n| BigInt::from(sweep::count(n, |p| m.sorts(p))))
        .collect();
    let inverse = (1..=max_n)
        .map(|n| BigInt::from(sweep::count(n, |p| m.sorts(&p.inverse()))))
        .collect();
    Ok(SequenceReport::new("psbp", 1, inverse, gf[1..].to_vec()).with_direct(direct))
}

/// The conjectured number of simple permutations of size `n` sortable by
/// two parallel pop stacks with bypass.
pub fn conjectured_simple_psbp(n: usize) -> BigInt {
    match n {
        0 | 1 => BigInt::one(),
        2 => BigInt::from(2),
        _ => {
            let f = BigInt::from(fib(2 * n as i64 - 5).unwrap());
            if n % 2 == 1 {
                f - 1
            } else {
                f
            }
        }
    }
}

/// Simple permutations of each size `0..=max_n` avoiding the two-stack
/// parallel basis, next to the conjectured values. A report, not a check.
pub fn conjecture_simple_psbp(max_n: usize, force: bool) -> Result<SequenceReport> {
    guard(
        "conjecture report size",
        max_n,
        if force { SWEEP_LIMIT } else { 9 },
    )?;
    let basis = psbp_basis();
    let computed = (0..=max_n)
        .map(|n| {
            BigInt::from(sweep::count(n, |p| {
                p.is_simple() && basis.admits(p.as_slice())
            }))
        })
        .collect();
    let reference = (0..=max_n).map(conjectured_simple_psbp).collect();
    Ok(SequenceReport::new(
        "simple psbp-sortable",
        0,
        computed,
        reference,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        to_big(v)
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fib(-1).unwrap(), BigUint::one());
        assert_eq!(fib(0).unwrap(), BigUint::zero());
        assert_eq!(fib(1).unwrap(), BigUint::one());
        assert_eq!(fib(9).unwrap(), BigUint::from(34u8));
        assert!(fib(-2).is_err());
    }

    #[test]
    fn expansions() {
        assert_eq!(
            gfs::sortable().expand(7).unwrap(),
            ints(&[0, 1, 2, 5, 13, 34, 89])
        );
        assert_eq!(
            gfs::psb_bub().expand(7).unwrap(),
            ints(&[1, 1, 2, 6, 20, 68, 232])
        );
        let ones = RationalGf::from_i64(&[1], &[1, -1]).unwrap();
        assert_eq!(ones.expand(5).unwrap(), ints(&[1; 5]));
        assert_eq!(
            gfs::bub_psb().expand(8).unwrap(),
            ints(&[1, 1, 2, 6, 21, 76, 273, 970])
        );
        assert_eq!(
            gfs::parallel().expand(6).unwrap(),
            ints(&[1, 1, 2, 6, 23, 97])
        );
    }

    #[test]
    fn expansion_errors() {
        assert_eq!(
            RationalGf::from_i64(&[1], &[0, 1]),
            Err(Error::ZeroConstant)
        );
        let half = RationalGf::from_i64(&[1], &[2]).unwrap();
        assert_eq!(half.expand(1), Err(Error::NonInteger { index: 0 }));
    }

    #[test]
    fn report_divergence() {
        let r = SequenceReport::new("x", 1, ints(&[1, 2, 5]), ints(&[1, 2, 6]));
        assert_eq!(r.first_divergence, Some(3));
        assert!(!r.agree);
        let r = SequenceReport::new("x", 1, ints(&[1, 2]), ints(&[1, 2, 6]));
        assert!(r.agree);
        assert_eq!(r.csv(true).lines().count(), 3);
    }

    #[test]
    fn conjectured_values() {
        let v: Vec<BigInt> = (0..=5).map(conjectured_simple_psbp).collect();
        assert_eq!(v, ints(&[1, 1, 2, 0, 2, 4]));
    }
}
