//! Sorting machines: deterministic maps, a nondeterministic search oracle,
//! and optional operation traces.

mod algorithms;
mod device;
mod oracle;
mod psbw;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use device::{ContainerKind, Step, Trace};
pub use oracle::dfs_sortable;
pub use psbw::{check_regular, psbw, psbw_traced, WordOutcome};

use device::Device;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Machine {
    /// A pop stack with bypass.
    Psb,
    /// A classical stack.
    Stack,
    /// A queue with bypass.
    Queue,
    /// One bubble sort pass (a one-slot buffer with bypass).
    Bubble,
    /// A pop stack without bypass.
    PopStack,
    /// `stacks` pop stacks in parallel. Two stacks with bypass run the
    /// dedicated two-stack algorithm; every other shape runs the greedy
    /// process.
    Parallel { stacks: usize, bypass: bool },
}

impl Machine {
    pub const PSBP: Machine = Machine::Parallel {
        stacks: 2,
        bypass: true,
    };

    pub fn parallel(stacks: usize, bypass: bool) -> Result<Machine> {
        if stacks == 0 {
            return Err(Error::NoStacks);
        }
        Ok(Machine::Parallel { stacks, bypass })
    }

    pub fn containers(&self) -> (ContainerKind, usize) {
        match *self {
            Machine::Psb | Machine::PopStack => (ContainerKind::PopStack, 1),
            Machine::Stack => (ContainerKind::Stack, 1),
            Machine::Queue => (ContainerKind::Queue, 1),
            Machine::Bubble => (ContainerKind::Buffer, 1),
            Machine::Parallel { stacks, .. } => (ContainerKind::PopStack, stacks),
        }
    }

    pub fn has_bypass(&self) -> bool {
        match *self {
            Machine::Psb | Machine::Queue | Machine::Bubble => true,
            Machine::Stack | Machine::PopStack => false,
            Machine::Parallel { bypass, .. } => bypass,
        }
    }

    fn drive(&self, seq: &[u32], record: bool) -> (Vec<u32>, Option<Trace>) {
        let (kind, count) = self.containers();
        let mut dev = Device::new(kind, count, seq.len(), record);
        match *self {
            Machine::Psb => algorithms::psb(seq, &mut dev),
            Machine::Stack => algorithms::stacksort(seq, &mut dev),
            Machine::Queue => algorithms::queuesort(seq, &mut dev),
            Machine::Bubble => algorithms::bubblesort(seq, &mut dev),
            Machine::PopStack => algorithms::popstack(seq, &mut dev),
            Machine::PSBP => algorithms::psbp(seq, &mut dev),
            Machine::Parallel { bypass, .. } => {
                algorithms::greedy_parallel(seq, bypass, &mut dev);
            }
        }
        dev.finish(seq, self.to_string())
    }

    /// The machine's output on `p`.
    pub fn apply(&self, p: &Permutation) -> Permutation {
        Permutation::from_vec_unchecked(self.drive(p.as_slice(), false).0)
    }

    pub fn sorts(&self, p: &Permutation) -> bool {
        crate::perm::is_increasing(&self.drive(p.as_slice(), false).0)
    }

    pub fn run(&self, p: &Permutation) -> SortOutcome {
        SortOutcome::new(self.drive(p.as_slice(), false))
    }

    pub fn run_traced(&self, p: &Permutation) -> SortOutcome {
        SortOutcome::new(self.drive(p.as_slice(), true))
    }

    /// Whether any operation sequence of this machine sorts `p`.
    pub fn can_sort(&self, p: &Permutation) -> bool {
        dfs_sortable(p.as_slice(), self)
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Machine::Psb => f.write_str("psb"),
            Machine::Stack => f.write_str("stack"),
            Machine::Queue => f.write_str("queue"),
            Machine::Bubble => f.write_str("bubble"),
            Machine::PopStack => f.write_str("popstack"),
            Machine::PSBP => f.write_str("psbp"),
            Machine::Parallel {
                stacks,
                bypass: true,
            } => write!(f, "parallel-{stacks}"),
            Machine::Parallel {
                stacks,
                bypass: false,
            } => write!(f, "parallel-{stacks}-nobypass"),
        }
    }
}

impl FromStr for Machine {
    type Err = Error;

    /// Accepts `psb`, `stack`/`classic-stack`, `queue`/`queue-bypass`,
    /// `bubble`, `popstack`/`popstack-plain`, `psbp`, and
    /// `parallel-K[-bypass|-nobypass]`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown {
            kind: "machine",
            name: s.to_string(),
        };
        let name = s.trim().to_ascii_lowercase();
        Ok(match name.as_str() {
            "psb" => Machine::Psb,
            "stack" | "classic-stack" | "stk" => Machine::Stack,
            "queue" | "queue-bypass" | "que" => Machine::Queue,
            "bubble" | "bub" => Machine::Bubble,
            "popstack" | "popstack-plain" | "pop-stack" => Machine::PopStack,
            "psbp" => Machine::PSBP,
            _ => {
                let rest = name.strip_prefix("parallel-").ok_or_else(unknown)?;
                let (k, bypass) = match rest.split_once('-') {
                    None => (rest, true),
                    Some((k, "bypass")) => (k, true),
                    Some((k, "nobypass")) => (k, false),
                    Some(_) => return Err(unknown()),
                };
                let stacks = k.parse::<usize>().map_err(|_| unknown())?;
                Machine::parallel(stacks, bypass)?
            }
        })
    }
}

impl Serialize for Machine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortOutcome {
    pub output: Permutation,
    pub sorted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

impl SortOutcome {
    fn new((output, trace): (Vec<u32>, Option<Trace>)) -> Self {
        let sorted = crate::perm::is_increasing(&output);
        SortOutcome {
            output: Permutation::from_vec_unchecked(output),
            sorted,
            trace,
        }
    }
}

/// The pop stack with bypass map on any sequence of distinct values. The map
/// depends on actual values (an entry is pushed onto its successor), so a
/// sequence with gaps behaves differently from its standardization.
pub fn psb_values(seq: &[u32]) -> Vec<u32> {
    Machine::Psb.drive(seq, false).0
}

/// The pop stack with bypass map.
pub fn psb(p: &Permutation) -> Permutation {
    Machine::Psb.apply(p)
}

pub fn psb_sorts(p: &Permutation) -> bool {
    Machine::Psb.sorts(p)
}

pub fn psbp(p: &Permutation) -> Permutation {
    Machine::PSBP.apply(p)
}

/// Runs the greedy process for `k` parallel pop stacks.
pub fn greedy_parallel(p: &Permutation, k: usize, bypass: bool) -> Result<SortOutcome> {
    let m = Machine::parallel(k, bypass)?;
    let (kind, count) = m.containers();
    let mut dev = Device::new(kind, count, p.len(), false);
    algorithms::greedy_parallel(p.as_slice(), bypass, &mut dev);
    Ok(SortOutcome::new(dev.finish(p.as_slice(), m.to_string())))
}

/// Feeds `p` through `machines` in order; the first listed runs first.
pub fn compose(machines: &[Machine], p: &Permutation) -> Result<SortOutcome> {
    let (last, init) = machines.split_last().ok_or(Error::EmptyComposition)?;
    let mid = init.iter().fold(p.clone(), |q, m| m.apply(&q));
    Ok(last.run(&mid))
}

/// Whether the composition sorts `p`.
pub fn compose_sorts(machines: &[Machine], p: &Permutation) -> bool {
    let out = machines.iter().fold(p.clone(), |q, m| m.apply(&q));
    out.is_identity()
}
