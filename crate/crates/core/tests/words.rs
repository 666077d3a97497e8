use num_bigint::BigUint;
use popsort::enumeration::fib;
use popsort::machines::psb_sorts;
use popsort::sweep;
use popsort::words::{
    count_m, count_m_enumerated, count_w, count_w_enumerated, path_in_m, path_to_word,
    perm_to_path, perm_to_word, word_in_w, word_to_path, word_to_perm, SortingWord,
};
use regex::Regex;

fn ternary(n: usize) -> impl Iterator<Item = SortingWord> {
    (0..3u64.pow(n as u32)).map(move |mut code| {
        SortingWord(
            (0..n)
                .map(|_| {
                    let l = (code % 3) as u8;
                    code /= 3;
                    l
                })
                .collect(),
        )
    })
}

#[test]
fn sortable_permutations_round_trip() {
    for n in 0..=9 {
        for p in sweep::collect(n, psb_sorts) {
            let w = perm_to_word(&p);
            assert!(word_in_w(&w), "{p} -> {w}");
            assert_eq!(word_to_perm(&w).unwrap(), p);
            let path = perm_to_path(&p);
            assert!(path_in_m(&path), "{p} -> {path}");
            assert_eq!(word_to_path(&w), path);
            assert_eq!(path_to_word(&path).unwrap(), w);
        }
    }
}

#[test]
fn unsortable_permutations_do_not_decode_to_themselves() {
    // 2413 and 1423 share the word 0210; only the sortable one decodes back.
    for n in 1..=8 {
        let bad = sweep::find_first(n, |p| {
            let w = perm_to_word(p);
            !psb_sorts(p) && word_in_w(&w) && word_to_perm(&w).unwrap() == *p
        });
        assert!(bad.is_none(), "{}", bad.unwrap());
    }
}

#[test]
fn words_round_trip() {
    for n in 0..=10 {
        for w in ternary(n).filter(word_in_w) {
            let p = word_to_perm(&w).unwrap();
            assert!(psb_sorts(&p), "{w}");
            assert_eq!(perm_to_word(&p), w);
        }
    }
}

#[test]
fn membership_matches_the_regular_expression() {
    let re = Regex::new("^0(0|2|1+0)*$").unwrap();
    for n in 1..=12 {
        for w in ternary(n) {
            assert_eq!(word_in_w(&w), re.is_match(&w.to_string()), "{w}");
        }
    }
}

#[test]
fn counts_are_odd_fibonacci_numbers() {
    for n in 0..=12 {
        let enumerated = count_w_enumerated(n).unwrap();
        assert_eq!(enumerated, count_m_enumerated(n).unwrap(), "n={n}");
        assert_eq!(BigUint::from(enumerated), count_w(n));
    }
    for n in 0..=20 {
        assert_eq!(count_m(n), fib(2 * n as i64 - 1).unwrap(), "n={n}");
        assert_eq!(count_w(n), count_m(n));
    }
}
