//! Nondeterministic sortability by exhaustive search over machine states.
//!
//! Every legal operation sequence is explored (with memoised states), so the
//! answer does not depend on any particular algorithm. Pushes are pruned only
//! when they create a container that can never be released in sorted order.
//! Works for words as well as permutations: the target is the sorted input.

use std::collections::HashSet;

use super::device::ContainerKind;
use super::Machine;

struct Search<'a> {
    input: &'a [u32],
    target: Vec<u32>,
    kind: ContainerKind,
    bypass: bool,
    /// Containers are interchangeable, so states are stored sorted.
    symmetric: bool,
    seen: HashSet<(usize, Vec<Vec<u32>>)>,
}

impl Search<'_> {
    /// Smallest target value greater than `x`.
    fn successor(&self, x: u32) -> Option<u32> {
        let at = self.target.partition_point(|&v| v <= x);
        self.target.get(at).copied()
    }

    /// Whether `x` may sit directly above `below` in a container.
    fn stackable(&self, x: u32, below: u32) -> bool {
        match self.kind {
            ContainerKind::PopStack => x == below || self.successor(x) == Some(below),
            ContainerKind::Stack => x <= below,
            ContainerKind::Queue => below <= x,
            ContainerKind::Buffer => false,
        }
    }

    fn visit(&mut self, i: usize, containers: Vec<Vec<u32>>) -> bool {
        let held: usize = containers.iter().map(Vec::len).sum();
        let out = i - held;
        if out == self.input.len() {
            return true;
        }
        let key = if self.symmetric {
            let mut c = containers.clone();
            c.sort();
            c
        } else {
            containers.clone()
        };
        if !self.seen.insert((i, key)) {
            return false;
        }
        let needed = self.target[out];
        // Releases. Stacks and pop stacks are stored bottom to top, queues
        // front to back.
        for j in 0..containers.len() {
            let c = &containers[j];
            if c.is_empty() {
                continue;
            }
            let mut next = containers.clone();
            let ok = match self.kind {
                ContainerKind::PopStack => {
                    let run = c.iter().rev();
                    if run.clone().eq(self.target[out..out + c.len()].iter()) {
                        next[j].clear();
                        true
                    } else {
                        false
                    }
                }
                ContainerKind::Stack | ContainerKind::Buffer => {
                    c.last() == Some(&needed) && next[j].pop().is_some()
                }
                ContainerKind::Queue => {
                    c[0] == needed && {
                        next[j].remove(0);
                        true
                    }
                }
            };
            if ok && self.visit(i, next) {
                return true;
            }
        }
        let Some(&x) = self.input.get(i) else {
            return false;
        };
        if self.bypass && x == needed && self.visit(i + 1, containers.clone()) {
            return true;
        }
        let mut tried_empty = false;
        for j in 0..containers.len() {
            let c = &containers[j];
            let fits = match c.last() {
                None => {
                    if self.symmetric && tried_empty {
                        continue;
                    }
                    tried_empty = true;
                    true
                }
                Some(&b) => self.stackable(x, b),
            };
            if fits {
                let mut next = containers.clone();
                next[j].push(x);
                if self.visit(i + 1, next) {
                    return true;
                }
            }
        }
        false
    }
}

/// Whether some run of `machine` outputs `seq` in nondecreasing order.
pub fn dfs_sortable(seq: &[u32], machine: &Machine) -> bool {
    let (kind, count) = machine.containers();
    let mut target = seq.to_vec();
    target.sort_unstable();
    let mut search = Search {
        input: seq,
        target,
        kind,
        bypass: machine.has_bypass(),
        symmetric: count > 1,
        seen: HashSet::new(),
    };
    search.visit(0, vec![Vec::new(); count])
}
