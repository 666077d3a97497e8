//! Deterministic machine maps. Each drives a `Device`; the caller decides
//! whether the device records a trace.

use super::device::Device;

/// Pop stack with bypass.
pub(crate) fn psb(seq: &[u32], dev: &mut Device) {
    for (i, &x) in seq.iter().enumerate() {
        match dev.top(0) {
            None => dev.push(0, i, x),
            Some(t) if x + 1 == t => dev.push(0, i, x),
            Some(t) if x + 1 < t => dev.bypass(i, x),
            Some(_) => {
                dev.pop(0);
                dev.push(0, i, x);
            }
        }
    }
    dev.pop(0);
}

/// Pop stack without bypass: push while decreasing, otherwise empty it.
pub(crate) fn popstack(seq: &[u32], dev: &mut Device) {
    for (i, &x) in seq.iter().enumerate() {
        if dev.top(0).is_some_and(|t| x > t) {
            dev.pop(0);
        }
        dev.push(0, i, x);
    }
    dev.pop(0);
}

/// One pass of a classical stack.
pub(crate) fn stacksort(seq: &[u32], dev: &mut Device) {
    for (i, &x) in seq.iter().enumerate() {
        while dev.top(0).is_some_and(|t| t < x) {
            dev.pop(0);
        }
        dev.push(0, i, x);
    }
    dev.drain_all(0);
}

/// One pass of a queue with bypass.
pub(crate) fn queuesort(seq: &[u32], dev: &mut Device) {
    for (i, &x) in seq.iter().enumerate() {
        loop {
            match (dev.top(0), dev.back(0)) {
                (None, _) => dev.push(0, i, x),
                (Some(_), Some(b)) if x > b => dev.push(0, i, x),
                (Some(f), _) if x < f => dev.bypass(i, x),
                _ => {
                    dev.pop(0);
                    continue;
                }
            }
            break;
        }
    }
    dev.drain_all(0);
}

/// One bubble sort pass: hold the largest entry seen so far.
pub(crate) fn bubblesort(seq: &[u32], dev: &mut Device) {
    for (i, &x) in seq.iter().enumerate() {
        match dev.top(0) {
            Some(h) if x < h => dev.bypass(i, x),
            held => {
                if held.is_some() {
                    dev.pop(0);
                }
                dev.push(0, i, x);
            }
        }
    }
    dev.pop(0);
}

/// Two pop stacks in parallel with bypass.
pub(crate) fn psbp(seq: &[u32], dev: &mut Device) {
    for (i, &x) in seq.iter().enumerate() {
        let (t1, t2) = (dev.top(0), dev.top(1));
        if t1.is_some_and(|t| x + 1 == t) {
            dev.push(0, i, x);
        } else if t2.is_some_and(|t| x + 1 == t) {
            dev.push(1, i, x);
        } else if let (Some(t1), Some(t2)) = (t1, t2) {
            // Bypass only below both tops; anything larger would strand the
            // smaller top above an entry it has to precede.
            if x + 1 < t1.min(t2) {
                dev.bypass(i, x);
            } else {
                let j = if t1 < t2 { 0 } else { 1 };
                dev.pop(j);
                dev.push(j, i, x);
            }
        } else {
            dev.push(usize::from(t1.is_some()), i, x);
        }
    }
    match (dev.top(0), dev.top(1)) {
        (None, _) => dev.pop(1),
        (_, None) => dev.pop(0),
        (Some(t1), Some(t2)) => {
            let order = if t1 < t2 { [0, 1] } else { [1, 0] };
            for j in order {
                dev.pop(j);
            }
        }
    }
}

/// Greedy run of `k` pop stacks in parallel. Returns false if it got stuck,
/// in which case the device output has been completed by `Device::fail`.
pub(crate) fn greedy_parallel(seq: &[u32], bypass: bool, dev: &mut Device) -> bool {
    let k = dev.count();
    let mut i = 0;
    loop {
        let needed = dev.output.len() as u32 + 1;
        let next = seq.get(i).copied();
        if bypass && next == Some(needed) {
            dev.bypass(i, needed);
            i += 1;
            continue;
        }
        if let Some(j) = (0..k).find(|&j| dev.top(j) == Some(needed)) {
            dev.pop(j);
            continue;
        }
        let Some(x) = next else {
            break;
        };
        let slot = (0..k)
            .find(|&j| dev.top(j) == Some(x + 1))
            .or_else(|| (0..k).find(|&j| dev.is_empty(j)));
        match slot {
            Some(j) => {
                dev.push(j, i, x);
                i += 1;
            }
            None => break,
        }
    }
    if i == seq.len() && (0..k).all(|j| dev.is_empty(j)) {
        true
    } else {
        dev.fail(&seq[i..]);
        false
    }
}
