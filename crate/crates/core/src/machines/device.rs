//! The containers a sorting machine drives, and the optional trace recorder.

use serde::{Deserialize, Serialize};

/// How a container releases its contents on a pop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainerKind {
    /// Pop empties the whole container, top element first.
    PopStack,
    /// Pop releases the top element.
    Stack,
    /// Pop releases the front element.
    Queue,
    /// Holds at most one element.
    Buffer,
}

/// One consumed input entry: the operations run while it was the current
/// input element, ending with the one that consumed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// 1-based input position.
    pub i: usize,
    pub value: u32,
    /// Atomic operations joined by `+`, e.g. `POP+PUSH` or `POP_1+PUSH_1`.
    pub op: String,
    /// Container contents after the step, each listed in release order
    /// (top first for stacks, front first for queues).
    pub stacks: Vec<Vec<u32>>,
    pub out_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub input: Vec<u32>,
    pub machine: String,
    pub steps: Vec<Step>,
    /// Operations after the input ran out. A trailing `FAIL` means the
    /// machine got stuck; the leftovers were appended as they stood.
    pub final_ops: Vec<String>,
    pub output: Vec<u32>,
    pub sorted: bool,
}

#[derive(Debug, Default)]
struct Recorder {
    pending: Vec<String>,
    steps: Vec<Step>,
}

pub(crate) struct Device {
    kind: ContainerKind,
    /// Stacks are stored bottom to top, queues front to back.
    containers: Vec<Vec<u32>>,
    pub(crate) output: Vec<u32>,
    recorder: Option<Recorder>,
}

impl Device {
    pub(crate) fn new(kind: ContainerKind, count: usize, len: usize, record: bool) -> Self {
        Device {
            kind,
            containers: vec![Vec::new(); count],
            output: Vec::with_capacity(len),
            recorder: record.then(Recorder::default),
        }
    }

    pub(crate) fn top(&self, j: usize) -> Option<u32> {
        let c = &self.containers[j];
        match self.kind {
            ContainerKind::Queue => c.first().copied(),
            _ => c.last().copied(),
        }
    }

    pub(crate) fn back(&self, j: usize) -> Option<u32> {
        self.containers[j].last().copied()
    }

    pub(crate) fn is_empty(&self, j: usize) -> bool {
        self.containers[j].is_empty()
    }

    pub(crate) fn count(&self) -> usize {
        self.containers.len()
    }

    fn label(&self, base: &str, j: usize) -> String {
        if self.containers.len() == 1 {
            base.to_string()
        } else {
            format!("{base}_{}", j + 1)
        }
    }

    /// Moves input entry `value` (0-based position `i`) into container `j`.
    pub(crate) fn push(&mut self, j: usize, i: usize, value: u32) {
        debug_assert!(self.kind != ContainerKind::Buffer || self.containers[j].is_empty());
        self.containers[j].push(value);
        let op = self.label("PUSH", j);
        self.consume(op, i, value);
    }

    pub(crate) fn bypass(&mut self, i: usize, value: u32) {
        self.output.push(value);
        self.consume("BYPASS".to_string(), i, value);
    }

    /// Releases from container `j` per its kind. No-op when empty.
    pub(crate) fn pop(&mut self, j: usize) {
        let c = &mut self.containers[j];
        if c.is_empty() {
            return;
        }
        match self.kind {
            ContainerKind::PopStack => self.output.extend(c.drain(..).rev()),
            ContainerKind::Stack | ContainerKind::Buffer => self.output.push(c.pop().unwrap()),
            ContainerKind::Queue => self.output.push(c.remove(0)),
        }
        let op = self.label("POP", j);
        if let Some(r) = &mut self.recorder {
            r.pending.push(op);
        }
    }

    pub(crate) fn drain_all(&mut self, j: usize) {
        while !self.is_empty(j) {
            self.pop(j);
        }
    }

    /// Gives up: leftover containers (in index order, release order within
    /// each) then the unread input are appended to the output.
    pub(crate) fn fail(&mut self, rest: &[u32]) {
        for j in 0..self.containers.len() {
            let c = std::mem::take(&mut self.containers[j]);
            match self.kind {
                ContainerKind::Queue => self.output.extend(c),
                _ => self.output.extend(c.into_iter().rev()),
            }
        }
        self.output.extend_from_slice(rest);
        if let Some(r) = &mut self.recorder {
            r.pending.push("FAIL".into());
        }
    }

    pub(crate) fn snapshot(&self) -> Vec<Vec<u32>> {
        self.containers
            .iter()
            .map(|c| match self.kind {
                ContainerKind::Queue => c.clone(),
                _ => c.iter().rev().copied().collect(),
            })
            .collect()
    }

    fn consume(&mut self, op: String, i: usize, value: u32) {
        if self.recorder.is_none() {
            return;
        }
        let stacks = self.snapshot();
        let out_len = self.output.len();
        let r = self.recorder.as_mut().unwrap();
        r.pending.push(op);
        let op = std::mem::take(&mut r.pending).join("+");
        r.steps.push(Step {
            i: i + 1,
            value,
            op,
            stacks,
            out_len,
        });
    }

    pub(crate) fn finish(self, input: &[u32], machine: String) -> (Vec<u32>, Option<Trace>) {
        let sorted =
            self.output.windows(2).all(|w| w[0] <= w[1]) && self.output.len() == input.len();
        let trace = self.recorder.map(|r| Trace {
            input: input.to_vec(),
            machine,
            steps: r.steps,
            final_ops: r.pending,
            output: self.output.clone(),
            sorted,
        });
        (self.output, trace)
    }
}

impl Trace {
    /// Re-executes the recorded operations from an empty machine, checking
    /// every recorded snapshot, and returns the output they produce.
    pub fn replay(&self) -> Result<Vec<u32>, String> {
        let (kind, count) = if self.machine.starts_with("psbw") {
            (ContainerKind::PopStack, 1)
        } else {
            let machine: super::Machine = self.machine.parse().map_err(|e| format!("{e}"))?;
            machine.containers()
        };
        let mut dev = Device::new(kind, count, self.input.len(), false);
        let mut next = 0usize;
        let apply = |dev: &mut Device, op: &str, next: &mut usize| -> Result<(), String> {
            let (base, j) = match op.split_once('_') {
                Some((b, j)) => (
                    b,
                    j.parse::<usize>().map_err(|_| format!("bad op {op}"))? - 1,
                ),
                None => (op, 0),
            };
            if j >= count {
                return Err(format!("{op}: no container {}", j + 1));
            }
            match base {
                "PUSH" | "BYPASS" => {
                    let v = *self.input.get(*next).ok_or("input exhausted")?;
                    if base == "PUSH" {
                        dev.push(j, *next, v);
                    } else {
                        dev.bypass(*next, v);
                    }
                    *next += 1;
                }
                "POP" => {
                    if dev.is_empty(j) {
                        return Err(format!("{op} on an empty container"));
                    }
                    dev.pop(j);
                }
                "FAIL" => dev.fail(&self.input[*next..]),
                _ => return Err(format!("unknown op {op}")),
            }
            Ok(())
        };
        for step in &self.steps {
            if step.i != next + 1 || self.input.get(next) != Some(&step.value) {
                return Err(format!(
                    "step {} does not consume input entry {}",
                    step.i,
                    next + 1
                ));
            }
            for op in step.op.split('+') {
                apply(&mut dev, op, &mut next)?;
            }
            if next != step.i {
                return Err(format!(
                    "step {} consumed the wrong number of entries",
                    step.i
                ));
            }
            if dev.snapshot() != step.stacks || dev.output.len() != step.out_len {
                return Err(format!(
                    "state after step {} differs from the record",
                    step.i
                ));
            }
        }
        for op in &self.final_ops {
            apply(&mut dev, op, &mut next)?;
        }
        Ok(dev.output)
    }
}
