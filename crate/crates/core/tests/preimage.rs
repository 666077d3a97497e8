use num_bigint::BigUint;
use popsort::machines::psb;
use popsort::perm::Permutation;
use popsort::preimage::{
    c0, c1, c2, c2_complete, image_table, in_c0, in_c1, in_c2, in_c2_complete, preimage_histogram,
    preimages_of,
};
use popsort::sweep;

#[test]
fn algorithm_matches_exhaustive_inversion() {
    for n in 0..=8 {
        let table = image_table(n);
        let bad = sweep::find_first(n, |s| {
            let expected = table.get(s).cloned().unwrap_or_default();
            preimages_of(s) != expected
        });
        assert!(bad.is_none(), "preimages differ for {}", bad.unwrap());
    }
}

#[test]
fn every_preimage_maps_back() {
    for s in sweep::all(7) {
        for q in preimages_of(&s) {
            assert_eq!(psb(&q), s);
        }
    }
}

#[test]
fn nonempty_iff_ends_with_max() {
    for n in 1..=8 {
        let bad = sweep::find_first(n, |s| preimages_of(s).is_empty() != in_c0(s.as_slice()));
        assert!(bad.is_none(), "{}", bad.unwrap());
    }
}

#[test]
fn histogram_accounts_for_every_permutation() {
    for n in 0..=8 {
        let hist = preimage_histogram(n);
        let total: u64 = hist.iter().enumerate().map(|(k, c)| k as u64 * c).sum();
        assert_eq!(total, sweep::factorial(n));
    }
}

fn structural(n: usize, member: fn(&[u32]) -> bool) -> u64 {
    sweep::count(n, |p| member(p.as_slice()))
}

#[test]
fn zero_and_one_preimage_sets() {
    for n in 1..=8 {
        let hist = preimage_histogram(n);
        let table = image_table(n);
        let c1_members = sweep::find_first(n, |p| {
            in_c1(p.as_slice()) != (table.get(p).map_or(0, Vec::len) == 1)
        });
        assert!(
            c1_members.is_none(),
            "C1 membership wrong for {}",
            c1_members.unwrap()
        );
        assert_eq!(BigUint::from(hist[0]), c0(n), "c0({n})");
        assert_eq!(BigUint::from(structural(n, in_c0)), c0(n));
        assert_eq!(BigUint::from(hist[1]), c1(n), "c1({n})");
        assert_eq!(BigUint::from(structural(n, in_c1)), c1(n));
    }
}

#[test]
fn two_preimage_characterization_matches_its_formula() {
    for n in 4..=8 {
        assert_eq!(BigUint::from(structural(n, in_c2)), c2(n), "n={n}");
    }
}

#[test]
fn two_preimage_set() {
    for n in 1..=8 {
        let table = image_table(n);
        let bad = sweep::find_first(n, |p| {
            in_c2_complete(p.as_slice()) != (table.get(p).map_or(0, Vec::len) == 2)
        });
        assert!(bad.is_none(), "wrong for {}", bad.unwrap());
        assert_eq!(
            BigUint::from(preimage_histogram(n).get(2).copied().unwrap_or(0)),
            c2_complete(n),
            "n={n}"
        );
    }
}

#[test]
fn two_preimage_formula_misses_adjacent_start() {
    // 2314 has the preimages 2314 and 3241 but its first two maxima are
    // consecutive, which the characterization excludes.
    let p: Permutation = "2314".parse().unwrap();
    assert_eq!(preimages_of(&p).len(), 2);
    assert!(!in_c2(p.as_slice()));
    for n in 4..=8 {
        let exact = preimage_histogram(n)[2];
        assert_eq!(BigUint::from(exact), c2(n) + c1(n - 1), "n={n}");
        assert_ne!(BigUint::from(exact), c2(n));
    }
}

#[test]
fn worked_example_family() {
    let s: Permutation = "3154267".parse().unwrap();
    let found = preimages_of(&s);
    assert_eq!(found.len(), 14);
    for listed in ["7315642", "3517426", "3516427"] {
        assert!(found.contains(&listed.parse().unwrap()));
    }
}
