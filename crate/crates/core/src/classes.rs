//! Bases of preimage classes, witnesses for preimages that are not classes,
//! bases of the machine compositions and parallel machines, and basis
//! discovery by exhaustive search.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::enumeration::{gfs, Reference};
use crate::error::{guard, Error, Result};
use crate::machines::{psb, psb_sorts, Machine};
use crate::pattern::{contains, PatternBasis};
use crate::perm::{shuffles, Permutation};
use crate::sweep;

fn shape_error(rho: &Permutation, expected: &str) -> Error {
    Error::Shape {
        pattern: rho.to_string(),
        expected: expected.into(),
    }
}

fn perm(v: Vec<u32>) -> Permutation {
    Permutation::standardize(&v)
}

/// Basis of the permutations whose image avoids `rho`, for `rho` starting
/// with its maximum.
pub fn basis_preimage_max_first(rho: &Permutation) -> Result<PatternBasis> {
    let r = rho.as_slice();
    let n = r.len() as u32;
    if r.len() < 2 || r[0] != n {
        return Err(shape_error(rho, "nα with n the maximum, length at least 2"));
    }
    let alpha = &r[1..];
    let mut out = vec![perm([&[n, n + 1][..], alpha].concat())];
    for tau in shuffles(&[n + 1], alpha)? {
        if tau[0] != n + 1 {
            out.push(perm([&[n + 2, n][..], &tau].concat()));
        }
    }
    Ok(PatternBasis::classical(out))
}

/// Basis of the permutations whose image avoids `rho`, for `rho` starting
/// with its second largest entry and ending with its largest.
pub fn basis_preimage_secondmax_first(rho: &Permutation) -> Result<PatternBasis> {
    let r = rho.as_slice();
    let n = r.len() as u32;
    if r.len() < 3 || r[0] != n - 1 || r[r.len() - 1] != n {
        return Err(shape_error(rho, "(n-1)αn, length at least 3"));
    }
    let alpha = &r[1..r.len() - 1];
    let mut out = vec![perm([&[n - 1, n][..], alpha].concat())];
    for tau in shuffles(&[n], alpha)? {
        if tau[0] != n {
            out.push(perm([&[n + 1, n - 1][..], &tau].concat()));
        }
    }
    Ok(PatternBasis::classical(out))
}

/// Whether the permutations whose image avoids `rho` form a class, with the
/// basis or a witness accordingly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisVerdict {
    pub is_class: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<PatternBasis>,
    /// `(σ, π)` with σ contained in π, `psb(σ)` containing `rho` and
    /// `psb(π)` avoiding it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Permutation, Permutation)>,
}

impl BasisVerdict {
    /// Checks the witness against the definition. Trivially true for
    /// classes.
    pub fn verify(&self, rho: &Permutation) -> bool {
        match &self.witness {
            None => self.is_class,
            Some((sigma, pi)) => {
                contains(pi.as_slice(), sigma.as_slice())
                    && contains(psb(sigma).as_slice(), rho.as_slice())
                    && !contains(psb(pi).as_slice(), rho.as_slice())
            }
        }
    }
}

/// Witness pair for a pattern whose preimage is not a class.
pub fn nonclass_witness(rho: &Permutation) -> Result<BasisVerdict> {
    let r = rho.as_slice();
    let n = r.len() as u32;
    let max_at = r.iter().position(|&v| v == n);
    let (sigma, pi) = match max_at {
        None | Some(0) => {
            return Err(shape_error(
                rho,
                "not of max-first shape (use the basis operation)",
            ));
        }
        Some(i) if i + 1 < r.len() => {
            let (alpha, beta) = (&r[..i], &r[i + 1..]);
            (
                [&[n + 1][..], alpha, &[n + 2], beta, &[n]].concat(),
                [&[n + 1, n + 3][..], alpha, &[n + 2], beta, &[n]].concat(),
            )
        }
        Some(_) => {
            let j = r.iter().position(|&v| v == n - 1).unwrap();
            if j == 0 {
                return Err(shape_error(rho, "not (n-1)αn (use the basis operation)"));
            }
            let alpha = &r[..j];
            let beta = &r[j + 1..r.len() - 1];
            if !beta.is_empty() {
                (
                    [&[n][..], alpha, &[n + 1], beta, &[n - 1]].concat(),
                    [&[n, n + 2][..], alpha, &[n + 1], beta, &[n - 1]].concat(),
                )
            } else if n >= 4 {
                (
                    [&[n - 1, n + 1, n][..], alpha].concat(),
                    [&[n - 1, n + 1, n + 2, n][..], alpha].concat(),
                )
            } else {
                // rho = 123
                (vec![3, 2, 1], vec![3, 4, 2, 1])
            }
        }
    };
    Ok(BasisVerdict {
        is_class: false,
        basis: None,
        witness: Some((Permutation::new(sigma)?, Permutation::new(pi)?)),
    })
}

/// Basis or witness, whichever applies to `rho`.
pub fn classify(rho: &Permutation) -> Result<BasisVerdict> {
    let r = rho.as_slice();
    let n = r.len() as u32;
    let class = |basis| BasisVerdict {
        is_class: true,
        basis: Some(basis),
        witness: None,
    };
    if r.len() >= 2 && r[0] == n {
        return Ok(class(basis_preimage_max_first(rho)?));
    }
    if r.len() >= 3 && r[0] == n - 1 && r[r.len() - 1] == n {
        return Ok(class(basis_preimage_secondmax_first(rho)?));
    }
    if r.len() < 2 {
        return Ok(class(PatternBasis::classical([rho.clone()])));
    }
    if r.len() == 2 {
        // Images end with their maximum, so only sizes below 2 avoid 12.
        return Ok(class(PatternBasis::classical(crate::sweep::all(2))));
    }
    nonclass_witness(rho)
}

/// Two machines in series. The name lists the second machine first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Composition {
    StackPsb,
    QuePsb,
    BubPsb,
    PsbQue,
    PsbBub,
}

impl Composition {
    pub const ALL: [Composition; 5] = [
        Composition::StackPsb,
        Composition::QuePsb,
        Composition::BubPsb,
        Composition::PsbQue,
        Composition::PsbBub,
    ];

    /// Machines in the order they run.
    pub fn machines(&self) -> [Machine; 2] {
        match self {
            Composition::StackPsb => [Machine::Psb, Machine::Stack],
            Composition::QuePsb => [Machine::Psb, Machine::Queue],
            Composition::BubPsb => [Machine::Psb, Machine::Bubble],
            Composition::PsbQue => [Machine::Queue, Machine::Psb],
            Composition::PsbBub => [Machine::Bubble, Machine::Psb],
        }
    }

    /// Permutations sorted by the composition avoid exactly these patterns.
    /// The stack case needs a barred pattern.
    pub fn basis(&self) -> PatternBasis {
        let items: &[&str] = match self {
            Composition::StackPsb => &["2341", "25314", "52314", "45231", "42531", "3!5241"],
            Composition::QuePsb => &["3421", "53241", "53214"],
            Composition::BubPsb => &["2341", "3421", "3241", "25314", "52314", "53214"],
            Composition::PsbQue => &["4231", "2431", "54213"],
            Composition::PsbBub => &["2341", "2431", "3241", "4231", "45213", "54213"],
        };
        PatternBasis::parse(items.iter().copied()).expect("valid basis")
    }

    /// The reference sequence, with `terms` generating-function coefficients
    /// where that is the reference.
    pub fn reference(&self, terms: usize) -> Result<Reference> {
        let printed = |v: &[i64]| Reference::Printed(v.iter().map(|&x| BigInt::from(x)).collect());
        Ok(match self {
            Composition::StackPsb => Reference::Basis(self.basis()),
            Composition::QuePsb => printed(&QUE_PSB),
            Composition::PsbQue => printed(&PSB_QUE),
            Composition::BubPsb => Reference::InverseGf(gfs::bub_psb().expand(terms)?),
            Composition::PsbBub => Reference::InverseGf(gfs::psb_bub().expand(terms)?),
        })
    }
}

/// Published counts for sizes 1 to 12.
pub const QUE_PSB: [i64; 12] = [
    1, 2, 6, 23, 101, 480, 2400, 12434, 66142, 359112, 1981904, 11085198,
];
pub const PSB_QUE: [i64; 12] = [
    1, 2, 6, 22, 89, 380, 1679, 7602, 35072, 164266, 779022, 3733444,
];
pub const BUB_PSB: [i64; 12] = [
    1, 2, 6, 21, 76, 273, 970, 3422, 12027, 42194, 147901, 518206,
];

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Composition::StackPsb => "stack-psb",
            Composition::QuePsb => "que-psb",
            Composition::BubPsb => "bub-psb",
            Composition::PsbQue => "psb-que",
            Composition::PsbBub => "psb-bub",
        })
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// `stack-psb` or `stack∘psb`; `queue`, `bubble` and `classic-stack`
    /// are accepted for the machine names.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown {
            kind: "composition",
            name: s.to_string(),
        };
        let (outer, inner) = s
            .split_once('∘')
            .or_else(|| s.split_once('-').filter(|(a, _)| *a != "classic"))
            .or_else(|| s.strip_prefix("classic-stack-").map(|b| ("stack", b)))
            .ok_or_else(unknown)?;
        let canon = |m: &str| match m.trim() {
            "stack" | "classic-stack" | "stk" => Some("stack"),
            "que" | "queue" | "queue-bypass" => Some("que"),
            "bub" | "bubble" => Some("bub"),
            "psb" => Some("psb"),
            _ => None,
        };
        let pair = (
            canon(outer).ok_or_else(unknown)?,
            canon(inner).ok_or_else(unknown)?,
        );
        Ok(match pair {
            ("stack", "psb") => Composition::StackPsb,
            ("que", "psb") => Composition::QuePsb,
            ("bub", "psb") => Composition::BubPsb,
            ("psb", "que") => Composition::PsbQue,
            ("psb", "bub") => Composition::PsbBub,
            _ => return Err(unknown()),
        })
    }
}

/// Basis of the permutations composition `name` sorts.
pub fn composition_basis(name: &str) -> Result<PatternBasis> {
    Ok(name.parse::<Composition>()?.basis())
}

pub fn psbp_basis() -> PatternBasis {
    PatternBasis::parse([
        "2341", "25314", "42513", "42531", "45213", "45231", "52314", "642135", "642153",
    ])
    .expect("valid basis")
}

pub fn parallel_nobypass_basis() -> PatternBasis {
    PatternBasis::parse(["2341", "3412", "25314", "42531", "52314", "53124", "53142"])
        .expect("valid basis")
}

/// The known basis of the permutations `machine` sorts, where there is one.
pub fn machine_basis(machine: &Machine) -> Option<PatternBasis> {
    let parse = |items: &[&str]| PatternBasis::parse(items.iter().copied()).expect("valid basis");
    match machine {
        Machine::Psb => Some(parse(&["231", "4213"])),
        Machine::PopStack => Some(parse(&["231", "312"])),
        Machine::Stack => Some(parse(&["231"])),
        Machine::Queue => Some(parse(&["321"])),
        Machine::Bubble => Some(parse(&["231", "321"])),
        Machine::Parallel {
            stacks: 2,
            bypass: true,
        } => Some(psbp_basis()),
        Machine::Parallel {
            stacks: 2,
            bypass: false,
        } => Some(parallel_nobypass_basis()),
        Machine::Parallel { .. } => None,
    }
}

/// Largest pattern length `discover_basis` explores.
pub const DISCOVERY_LIMIT: usize = 8;

/// Minimal permutations of length at most `max_len` that no run of
/// `machine` sorts, found with the exhaustive search.
pub fn discover_basis(machine: &Machine, max_len: usize) -> Result<PatternBasis> {
    guard("basis discovery length", max_len, DISCOVERY_LIMIT)?;
    let mut found = Vec::new();
    let mut sortable_below: HashSet<Permutation> = HashSet::from([Permutation::identity(0)]);
    for n in 1..=max_len {
        let verdicts = sweep::filter_map(n, |p| Some((p.clone(), machine.can_sort(p))));
        let mut sortable = HashSet::new();
        for (p, ok) in verdicts {
            if ok {
                sortable.insert(p);
            } else if (0..n).all(|i| sortable_below.contains(&p.delete(i))) {
                found.push(p);
            }
        }
        sortable_below = sortable;
    }
    Ok(PatternBasis::classical(found))
}

/// Splits a sortable permutation into its direct summands.
pub fn sortable_decomposition(p: &Permutation) -> Result<Vec<Permutation>> {
    if !psb_sorts(p) {
        return Err(Error::Unsortable(p.to_string()));
    }
    let s = p.as_slice();
    let mut blocks = Vec::new();
    let (mut start, mut seen_max) = (0, 0);
    for (i, &v) in s.iter().enumerate() {
        seen_max = seen_max.max(v);
        if seen_max as usize == i + 1 {
            let block = Permutation::standardize(&s[start..=i]);
            debug_assert_eq!(block.as_slice()[0] as usize, block.len());
            blocks.push(block);
            start = i + 1;
        }
    }
    Ok(blocks)
}
