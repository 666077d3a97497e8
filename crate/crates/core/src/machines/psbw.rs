//! Pop stack with bypass for k-regular words, bypass first.

use serde::Serialize;

use super::device::{ContainerKind, Device, Trace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordOutcome {
    pub output: Vec<u32>,
    /// Output is weakly increasing.
    pub sorted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

/// Checks that `w` uses exactly the letters `0..n`, each `k` times.
pub fn check_regular(w: &[u32], k: usize) -> Result<()> {
    let bad = |reason: String| Error::NotRegular { k, reason };
    if k == 0 {
        return Err(bad("k must be positive".into()));
    }
    if !w.len().is_multiple_of(k) {
        return Err(bad(format!("length {} is not a multiple of {k}", w.len())));
    }
    let n = w.len() / k;
    let mut seen = vec![0usize; n];
    for &x in w {
        let slot = seen
            .get_mut(x as usize)
            .ok_or_else(|| bad(format!("letter {x} outside 0..{n}")))?;
        *slot += 1;
    }
    if let Some(x) = seen.iter().position(|&c| c != k) {
        return Err(bad(format!("letter {x} appears {} times", seen[x])));
    }
    Ok(())
}

pub fn psbw(w: &[u32], k: usize) -> Result<WordOutcome> {
    run(w, k, false)
}

pub fn psbw_traced(w: &[u32], k: usize) -> Result<WordOutcome> {
    run(w, k, true)
}

fn run(w: &[u32], k: usize, record: bool) -> Result<WordOutcome> {
    check_regular(w, k)?;
    let mut dev = Device::new(ContainerKind::PopStack, 1, w.len(), record);
    let kk = k as u32;
    // `j` counts output entries, kept exactly as the algorithm updates it.
    let mut j: u32 = 0;
    for (i, &x) in w.iter().enumerate() {
        if x <= j / kk {
            dev.bypass(i, x);
            j += 1;
        } else if x <= dev.top(0).unwrap_or(u32::MAX) {
            dev.push(0, i, x);
        } else {
            dev.pop(0);
            j = i as u32;
            if x <= j / kk {
                dev.bypass(i, x);
                j += 1;
            } else {
                dev.push(0, i, x);
            }
        }
    }
    dev.pop(0);
    let (output, trace) = dev.finish(w, format!("psbw-{k}"));
    let sorted = output.windows(2).all(|p| p[0] <= p[1]);
    Ok(WordOutcome {
        output,
        sorted,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_examples() {
        for (w, out) in [
            ([1, 1, 0, 0], [0, 0, 1, 1]),
            ([1, 0, 1, 0], [0, 0, 1, 1]),
            ([0, 0, 1, 1], [0, 0, 1, 1]),
        ] {
            let o = psbw(&w, 2).unwrap();
            assert_eq!(o.output, out);
            assert!(o.sorted);
        }
    }

    #[test]
    fn rejects_irregular() {
        assert!(matches!(psbw(&[0, 1, 1], 2), Err(Error::NotRegular { .. })));
        assert!(psbw(&[0, 2, 2, 0], 2).is_err());
        assert!(psbw(&[0, 0, 0, 1], 2).is_err());
    }

    #[test]
    fn trace_replays() {
        let o = psbw_traced(&[2, 1, 0, 2, 1, 0], 2).unwrap();
        let t = o.trace.unwrap();
        assert_eq!(t.replay().unwrap(), o.output);
    }
}
