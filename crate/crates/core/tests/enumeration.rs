use num_bigint::BigInt;
use num_traits::Zero;
use popsort::classes::{psbp_basis, Composition, BUB_PSB};
use popsort::enumeration::{
    composition_counts, conjecture_simple_psbp, count_av, count_sortable_by, fib, gfs,
    parallel_counts, CountMode, RationalGf,
};
use popsort::machines::Machine;
use popsort::pattern::PatternBasis;

/// Reciprocal of the denominator by its own recurrence, then a product with
/// the numerator.
fn expand_by_inversion(g: &RationalGf, count: usize) -> Vec<BigInt> {
    let d = g.denominator();
    let d0 = &d[0];
    let mut inv: Vec<BigInt> = Vec::new();
    for n in 0..count {
        let mut acc = if n == 0 {
            BigInt::from(1)
        } else {
            BigInt::zero()
        };
        for i in 1..d.len().min(n + 1) {
            acc -= &d[i] * &inv[n - i];
        }
        assert!((&acc % d0).is_zero());
        inv.push(acc / d0);
    }
    (0..count)
        .map(|n| {
            g.numerator()
                .iter()
                .enumerate()
                .take(n + 1)
                .map(|(i, a)| a * &inv[n - i])
                .sum()
        })
        .collect()
}

#[test]
fn expansions_agree_across_methods() {
    for g in [
        gfs::sortable(),
        gfs::bub_psb(),
        gfs::psb_bub(),
        gfs::parallel(),
    ] {
        assert_eq!(g.expand(40).unwrap(), expand_by_inversion(&g, 40));
    }
}

#[test]
fn sortable_counts() {
    let basis = PatternBasis::parse(["231", "4213"]).unwrap();
    let f = gfs::sortable().expand(10).unwrap();
    for (n, coeff) in f.iter().enumerate().skip(1) {
        let c = count_sortable_by(&Machine::Psb, n, CountMode::Algorithm).unwrap();
        assert_eq!(c, count_av(&basis, n).unwrap());
        assert_eq!(
            BigInt::from(c),
            BigInt::from(fib(2 * n as i64 - 1).unwrap())
        );
        assert_eq!(&BigInt::from(c), coeff);
    }
    assert_eq!(count_av(&basis, 4).unwrap(), 13);
    for n in 1..=8 {
        let two = count_av(&PatternBasis::parse(["231", "321"]).unwrap(), n).unwrap();
        assert_eq!(two, 1 << (n - 1));
    }
    assert_eq!(count_av(&psbp_basis(), 3).unwrap(), 6);
    assert_eq!(
        count_sortable_by(&Machine::Bubble, 3, CountMode::Algorithm).unwrap(),
        4
    );
    assert!(count_av(&basis, 11).is_err());
}

#[test]
fn oracle_mode_agrees() {
    for m in [Machine::Psb, Machine::PSBP, Machine::Queue] {
        for n in 0..=7 {
            assert_eq!(
                count_sortable_by(&m, n, CountMode::Algorithm).unwrap(),
                count_sortable_by(&m, n, CountMode::Oracle).unwrap()
            );
        }
    }
}

#[test]
fn parallel_counts_follow_the_generating_function() {
    let r = parallel_counts(8, false).unwrap();
    assert!(r.agree, "{}", r.text());
    for n in 1..=8 {
        assert_eq!(
            BigInt::from(count_av(&psbp_basis(), n).unwrap()),
            r.computed[n - 1]
        );
    }
}

#[test]
fn composition_reports() {
    for c in Composition::ALL
        .into_iter()
        .filter(|&c| c != Composition::StackPsb)
    {
        let r = composition_counts(c, 8, false).unwrap();
        assert!(r.agree, "{}", r.text());
    }
    // The stack composition sorts 53241, which its basis excludes.
    let stack = composition_counts(Composition::StackPsb, 8, false).unwrap();
    assert_eq!(stack.first_divergence, Some(5));
    let bub = composition_counts(Composition::BubPsb, 8, false).unwrap();
    let printed: Vec<BigInt> = BUB_PSB[..8].iter().map(|&v| BigInt::from(v)).collect();
    assert_eq!(bub.computed, printed);
    assert!(composition_counts(Composition::QuePsb, 9, false).is_err());
}

#[test]
fn conjecture_report_runs() {
    let r = conjecture_simple_psbp(8, false).unwrap();
    println!("{}", r.text());
    assert_eq!(r.computed.len(), 9);
}
