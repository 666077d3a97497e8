mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use popsort::classes::{self, Composition};
use popsort::enumeration::{self, CountMode, SequenceReport, REPORT_LIMIT, SWEEP_LIMIT};
use popsort::machines::{self, psbw, psbw_traced, Machine};
use popsort::preimage::{self, BRUTE_LIMIT};
use popsort::verify::{Check, Suite};
use popsort::words::{self, MotzkinPath, SortingWord};
use popsort::{Error, Permutation};
use serde_json::json;

use render::{Format, Output};

#[derive(Parser)]
#[command(
    name = "popsort",
    version,
    about = "Pop stack with bypass sorting toolkit"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for exhaustive sweeps.
    #[arg(long, global = true, env = "POPSORT_WORKERS", value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    /// Lift the default size guards to their hard limits.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on a permutation.
    Sort {
        #[arg(long, short, default_value = "psb")]
        machine: Machine,
        #[arg(long)]
        trace: Option<TraceFormat>,
        perm: Permutation,
    },
    /// Decide whether a machine can sort a permutation.
    Sortable {
        #[arg(long, short, default_value = "psb")]
        machine: Machine,
        /// Ask the exhaustive search instead of the machine's algorithm.
        #[arg(long)]
        oracle: bool,
        perm: Permutation,
    },
    /// All preimages of a permutation under the pop stack with bypass.
    Preimages {
        /// Scan every permutation of the same size instead.
        #[arg(long)]
        brute: bool,
        perm: Permutation,
    },
    /// Decode a sorting word.
    #[command(name = "word2perm")]
    WordToPerm { word: SortingWord },
    /// Sorting word of a permutation.
    #[command(name = "perm2word")]
    PermToWord { perm: Permutation },
    /// Lattice path of a permutation.
    #[command(name = "perm2path")]
    PermToPath { perm: Permutation },
    /// Sorting word of a lattice path.
    #[command(name = "path2word")]
    PathToWord { path: MotzkinPath },
    /// Known basis of a machine or composition, or of the permutations whose
    /// image avoids a pattern.
    Basis {
        /// A machine or composition id; omit with --preimage.
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        preimage: Option<Permutation>,
    },
    /// Minimal unsortable permutations found by exhaustive search.
    DiscoverBasis {
        #[arg(long, short)]
        machine: Machine,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Counts by size: a machine, a composition, `parallel`, `words` or
    /// `preimages`.
    Enumerate {
        target: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Count with the exhaustive search instead of the algorithm.
        #[arg(long)]
        oracle: bool,
    },
    /// Run a composition: an id such as `stack-psb`, or machines in run order
    /// separated by commas.
    Compose {
        composition: String,
        #[arg(long)]
        trace: Option<TraceFormat>,
        perm: Permutation,
    },
    /// Pop stack with bypass on a k-regular word with 0-based letters.
    Psbw {
        #[arg(long, short, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        trace: Option<TraceFormat>,
        word: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Sweep size; each suite has its own default.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Simple permutations sortable by two parallel pop stacks with bypass,
    /// against the conjectured counts.
    Conjecture {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
}

enum Failure {
    Lib(Error),
    Verify(Output),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.global.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
            .expect("thread pool configured once");
    }
    let format = cli.global.format;
    match run(cli.command, &cli.global) {
        Ok(out) => {
            print!("{}", out.render(format));
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(out)) => {
            print!("{}", out.render(format));
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Guard { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn sweep_limit(g: &Global) -> usize {
    if g.force {
        SWEEP_LIMIT
    } else {
        REPORT_LIMIT
    }
}

fn guard(what: &'static str, requested: usize, limit: usize) -> Result<(), Error> {
    if requested > limit {
        return Err(Error::Guard {
            what,
            requested,
            limit,
        });
    }
    Ok(())
}

fn run(command: Command, g: &Global) -> Result<Output, Failure> {
    Ok(match command {
        Command::Sort {
            machine,
            trace,
            perm,
        } => {
            let out = if trace.is_some() {
                machine.run_traced(&perm)
            } else {
                machine.run(&perm)
            };
            render::outcome(
                &out.output.into_vec(),
                out.sorted,
                out.trace.as_ref(),
                trace,
            )
        }
        Command::Sortable {
            machine,
            oracle,
            perm,
        } => {
            let sortable = if oracle {
                machine.can_sort(&perm)
            } else {
                machine.sorts(&perm)
            };
            Output::new(
                if sortable {
                    "sortable\n"
                } else {
                    "unsortable\n"
                },
                json!({ "permutation": perm, "machine": machine, "sortable": sortable }),
                render::csv_rows(
                    &["permutation", "machine", "sortable"],
                    [[perm.to_string(), machine.to_string(), sortable.to_string()]],
                ),
            )
        }
        Command::Preimages { brute, perm } => {
            let found = if brute {
                guard(
                    "brute-force preimage size",
                    perm.len(),
                    if g.force { BRUTE_LIMIT } else { REPORT_LIMIT },
                )?;
                preimage::brute_preimages(&perm, true)?
            } else {
                preimage::preimages_of(&perm)
            };
            render::perm_list("preimage", &found)
        }
        Command::WordToPerm { word } => {
            let p = words::word_to_perm(&word)?;
            render::pair("word", &word.to_string(), "permutation", &p)
        }
        Command::PermToWord { perm } => {
            let w = words::perm_to_word(&perm);
            render::pair("permutation", &perm.to_string(), "word", &w)
        }
        Command::PermToPath { perm } => {
            let path = words::perm_to_path(&perm);
            render::pair("permutation", &perm.to_string(), "path", &path)
        }
        Command::PathToWord { path } => {
            let w = words::path_to_word(&path)?;
            render::pair("path", &path.to_string(), "word", &w)
        }
        Command::Basis { name, preimage } => match (name, preimage) {
            (_, Some(rho)) => render::verdict(&rho, &classes::classify(&rho)?),
            (Some(name), None) => {
                let basis = match name.parse::<Composition>() {
                    Ok(c) => c.basis(),
                    Err(_) => {
                        let m: Machine = name.parse()?;
                        classes::machine_basis(&m).ok_or(Error::Unknown {
                            kind: "basis for machine",
                            name: name.clone(),
                        })?
                    }
                };
                render::basis(&basis)
            }
            (None, None) => {
                return Err(Error::Parse {
                    token: String::new(),
                    reason: "give a machine or composition, or --preimage".into(),
                }
                .into())
            }
        },
        Command::DiscoverBasis { machine, max_len } => {
            render::basis(&classes::discover_basis(&machine, max_len)?)
        }
        Command::Enumerate {
            target,
            max_n,
            oracle,
        } => enumerate(&target, max_n, oracle, g)?,
        Command::Compose {
            composition,
            trace,
            perm,
        } => {
            let chain = composition_chain(&composition)?;
            let mut out = machines::compose(&chain, &perm)?;
            if trace.is_some() {
                let (last, init) = chain.split_last().expect("nonempty");
                let mid = init.iter().fold(perm.clone(), |q, m| m.apply(&q));
                out = last.run_traced(&mid);
            }
            render::outcome(
                &out.output.into_vec(),
                out.sorted,
                out.trace.as_ref(),
                trace,
            )
        }
        Command::Psbw { k, trace, word } => {
            let w = parse_word(&word)?;
            let out = if trace.is_some() {
                psbw_traced(&w, k)?
            } else {
                psbw(&w, k)?
            };
            render::outcome(&out.output, out.sorted, out.trace.as_ref(), trace)
        }
        Command::Verify { suite, max_n } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let mut checks: Vec<Check> = Vec::new();
            for s in suites {
                checks.extend(s.run(max_n, g.force)?);
            }
            let out = render::checks(&checks);
            if checks.iter().any(Check::failed) {
                return Err(Failure::Verify(out));
            }
            out
        }
        Command::Conjecture { max_n } => {
            render::report(&enumeration::conjecture_simple_psbp(max_n, g.force)?)
        }
    })
}

fn composition_chain(text: &str) -> Result<Vec<Machine>, Error> {
    if let Ok(c) = text.parse::<Composition>() {
        return Ok(c.machines().to_vec());
    }
    text.split(',').map(|m| m.trim().parse()).collect()
}

/// Digits when there are no spaces, space-separated numbers otherwise.
fn parse_word(text: &str) -> Result<Vec<u32>, Error> {
    let bad = |token: &str| Error::Parse {
        token: token.to_string(),
        reason: "expected a nonnegative integer".into(),
    };
    let text = text.trim();
    if text.contains(char::is_whitespace) {
        text.split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(t)))
            .collect()
    } else {
        text.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| bad(&c.to_string())))
            .collect()
    }
}

fn enumerate(target: &str, max_n: usize, oracle: bool, g: &Global) -> Result<Output, Error> {
    match target {
        "words" => {
            guard("word count size", max_n, 40)?;
            Ok(render::raw_csv(&words::counts_csv(max_n)))
        }
        "preimages" => {
            guard(
                "preimage count size",
                max_n,
                sweep_limit(g).min(BRUTE_LIMIT),
            )?;
            Ok(render::preimage_counts(max_n))
        }
        "parallel" => Ok(render::report(&enumeration::parallel_counts(
            max_n, g.force,
        )?)),
        _ => {
            if let Ok(c) = target.parse::<Composition>() {
                return Ok(render::report(&enumeration::composition_counts(
                    c, max_n, g.force,
                )?));
            }
            let machine: Machine = target.parse()?;
            guard("enumeration size", max_n, sweep_limit(g))?;
            let mode = if oracle {
                CountMode::Oracle
            } else {
                CountMode::Algorithm
            };
            let computed = (1..=max_n)
                .map(|n| enumeration::count_sortable_by(&machine, n, mode).map(Into::into))
                .collect::<Result<Vec<_>, _>>()?;
            // Against the known basis, or the other counting mode without one.
            let reference = match classes::machine_basis(&machine) {
                Some(b) => (1..=max_n)
                    .map(|n| enumeration::count_av(&b, n).map(Into::into))
                    .collect::<Result<Vec<_>, _>>()?,
                None => {
                    let other = if oracle {
                        CountMode::Algorithm
                    } else {
                        CountMode::Oracle
                    };
                    (1..=max_n)
                        .map(|n| enumeration::count_sortable_by(&machine, n, other).map(Into::into))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            Ok(render::report(&SequenceReport::new(
                machine.to_string(),
                1,
                computed,
                reference,
            )))
        }
    }
}
