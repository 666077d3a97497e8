//! One line per criterion. Checks that fail because the published claim
//! does not hold at these sizes are listed in `KNOWN_FAILURES`; the test
//! fails if any other check fails or if one of those starts passing.

use std::collections::BTreeSet;
use std::time::Instant;

use popsort::verify::{Check, Status, Suite};

const KNOWN_FAILURES: [(&str, &str); 5] = [
    // Four more preimages than listed: 5317642, 5317462, 5317426, 5316427.
    ("preimages", "3154267 has the 10 listed preimages"),
    // Misses c1(n-1) permutations per size, starting with 2314.
    ("formulas", "c2 = brute force, n in 4..=8"),
    ("formulas", "two preimages <=> C2"),
    // 53241 is sorted but contains 3241 with a 5 in front.
    ("compositions", "stack-psb sortable = Av(basis)"),
    ("compositions", "stack-psb counts against reference"),
];

fn main() {
    let expected: BTreeSet<(&str, &str)> = KNOWN_FAILURES.into_iter().collect();
    let mut failed = BTreeSet::new();
    for (i, suite) in Suite::ALL.into_iter().enumerate() {
        let start = Instant::now();
        let checks = suite.run(None, false).unwrap();
        let elapsed = start.elapsed();
        let bad: Vec<&Check> = checks.iter().filter(|c| c.failed()).collect();
        let reports = checks.iter().filter(|c| c.status == Status::Report).count();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {:>2} {:<13} {verdict}  {} checks, {} failed, {reports} reports, {elapsed:.1?}",
            i + 1,
            suite.name(),
            checks.len(),
            bad.len()
        );
        for c in &bad {
            line.push_str(&format!("\n      FAIL {}: {}", c.name, c.detail));
            failed.insert((suite.name(), c.name.clone()));
        }
        for c in checks.iter().filter(|c| c.status == Status::Report) {
            line.push_str(&format!("\n      REPORT {}: {}", c.name, c.detail));
        }
        println!("{line}");
    }
    let failed: BTreeSet<(&str, &str)> = failed.iter().map(|(s, n)| (*s, n.as_str())).collect();
    if failed != expected {
        eprintln!("failing checks differ from the known list");
        eprintln!("  expected: {expected:?}");
        eprintln!("  got:      {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: failing checks match the known list");
}
