use popsort::machines::{dfs_sortable, greedy_parallel, psbw, Machine};
use popsort::pattern::{avoids_pattern, PatternBasis};
use popsort::perm::Permutation;
use popsort::sweep;

fn basis(items: &[&str]) -> PatternBasis {
    PatternBasis::parse(items.iter().copied()).unwrap()
}

fn agree(machine: Machine, patterns: &[&str], max_n: usize) {
    let b = basis(patterns);
    for n in 0..=max_n {
        let bad = sweep::find_first(n, |p| {
            let alg = machine.sorts(p);
            alg != machine.can_sort(p) || alg != b.admits(p.as_slice())
        });
        assert!(bad.is_none(), "{machine} disagrees on {}", bad.unwrap());
    }
}

#[test]
fn psb_matches_basis_and_search() {
    agree(Machine::Psb, &["231", "4213"], 8);
}

#[test]
fn plain_popstack_matches_basis_and_search() {
    agree(Machine::PopStack, &["231", "312"], 8);
}

#[test]
fn stack_matches_basis_and_search() {
    agree(Machine::Stack, &["231"], 8);
}

#[test]
fn queue_matches_basis_and_search() {
    agree(Machine::Queue, &["321"], 8);
}

#[test]
fn bubble_matches_basis_and_search() {
    agree(Machine::Bubble, &["231", "321"], 8);
}

#[test]
fn two_parallel_with_bypass() {
    let patterns = [
        "2341", "25314", "42513", "42531", "45213", "45231", "52314", "642135", "642153",
    ];
    agree(Machine::PSBP, &patterns, 8);
    for n in 0..=8 {
        let bad = sweep::find_first(n, |p| {
            greedy_parallel(p, 2, true).unwrap().sorted != Machine::PSBP.sorts(p)
        });
        assert!(
            bad.is_none(),
            "greedy and psbp disagree on {}",
            bad.unwrap()
        );
    }
}

#[test]
fn two_parallel_without_bypass() {
    let m = Machine::Parallel {
        stacks: 2,
        bypass: false,
    };
    agree(
        m,
        &["2341", "3412", "25314", "42531", "52314", "53124", "53142"],
        7,
    );
}

#[test]
fn greedy_agrees_with_search_for_three_stacks() {
    for bypass in [true, false] {
        let m = Machine::Parallel { stacks: 3, bypass };
        for n in 0..=7 {
            let bad = sweep::find_first(n, |p| m.sorts(p) != m.can_sort(p));
            assert!(bad.is_none(), "{m} disagrees on {}", bad.unwrap());
        }
    }
}

#[test]
fn failed_runs_still_output_a_permutation() {
    let m = Machine::Parallel {
        stacks: 2,
        bypass: false,
    };
    for p in sweep::all(6) {
        let out = m.run(&p).output;
        let mut sorted = out.as_slice().to_vec();
        sorted.sort();
        assert_eq!(sorted, Permutation::identity(6).as_slice());
    }
}

#[test]
fn traces_replay() {
    let machines = [
        Machine::Psb,
        Machine::Stack,
        Machine::Queue,
        Machine::Bubble,
        Machine::PopStack,
        Machine::PSBP,
        Machine::Parallel {
            stacks: 2,
            bypass: false,
        },
        Machine::Parallel {
            stacks: 3,
            bypass: true,
        },
    ];
    for m in machines {
        for n in 0..=6 {
            for p in sweep::all(n) {
                let out = m.run_traced(&p);
                let t = out.trace.as_ref().unwrap();
                if t.final_ops.last().map(String::as_str) == Some("FAIL") {
                    assert!(!out.sorted);
                } else {
                    assert_eq!(t.steps.len(), n);
                }
                assert_eq!(
                    t.replay().as_deref(),
                    Ok(out.output.as_slice()),
                    "{m} on {p}"
                );
                assert_eq!(t.sorted, out.sorted);
            }
        }
    }
}

#[test]
fn psb_stack_stays_a_decreasing_interval() {
    for p in sweep::all(7) {
        let t = Machine::Psb.run_traced(&p).trace.unwrap();
        for step in &t.steps {
            let s = &step.stacks[0];
            assert!(s.windows(2).all(|w| w[0] + 1 == w[1]), "{p}: {s:?}");
        }
    }
}

#[test]
fn psbw_with_one_copy_matches_search() {
    for n in 0..=8 {
        let bad = sweep::find_first(n, |p| {
            let w: Vec<u32> = p.as_slice().iter().map(|x| x - 1).collect();
            psbw(&w, 1).unwrap().sorted != dfs_sortable(p.as_slice(), &Machine::Psb)
        });
        assert!(bad.is_none(), "psbw(1) disagrees on {}", bad.unwrap());
    }
}

#[test]
fn search_on_words() {
    assert!(dfs_sortable(&[1, 0, 1, 0], &Machine::Psb));
    assert!(!dfs_sortable(&[1, 0, 1, 0], &Machine::PopStack));
    assert!(dfs_sortable(&[1, 1, 0, 0], &Machine::PopStack));
    assert!(!avoids_pattern(&[2, 3, 1], &[2, 3, 1]));
}

#[test]
fn reordering_bypassed_entries_keeps_the_image() {
    let a: Permutation = "635247198".parse().unwrap();
    let b: Permutation = "635427198".parse().unwrap();
    assert_eq!(popsort::psb(&a), popsort::psb(&b));
    assert_eq!(popsort::psb(&a).compact().unwrap(), "324561789");
}
