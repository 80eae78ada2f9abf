//! `star-pcg` command line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 no certificate,
//! 64 usage or input error. Paths may be `-` for stdin.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::construct::construct;
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::obstruction::{cycle_star1_obstruction, lemma1_certificate, replay_grid4};
use crate::search::{search_report, SearchConfig, SearchMode};
use crate::star::{WeightedStar, Witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_NONE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "star-pcg",
    version,
    about = "Star-k pairwise compatibility graph witnesses and certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a cycle, path or grid as graph JSON (or DOT).
    Generate {
        /// cycle | path | grid
        family: String,
        /// Sizes: `cycle N`, `path N`, `grid N1 .. Nd`.
        #[arg(required = true)]
        params: Vec<usize>,
        #[arg(long)]
        dot: bool,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Print the closed-form witness for a cycle, path or 2-d grid.
    Witness {
        family: String,
        #[arg(required = true)]
        params: Vec<usize>,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Check that a witness realizes a graph; exits 1 on mismatch.
    Verify {
        graph: String,
        witness: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Look for a certificate that `k` intervals cannot realize the graph
    /// under the given weights; exits 2 when there is none.
    Obstruct {
        graph: String,
        /// JSON array of weights, or a witness JSON object.
        weights: String,
        /// Intervals to rule out (default 1, or 2 with `--method grid4`).
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Lemma1)]
        method: Method,
        /// With `--method grid4`, print the replay trace too.
        #[arg(long)]
        trace: bool,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Search integer weightings for the fewest intervals.
    Mink {
        /// `cycle N`, `path N`, `grid N1 .. Nd`, or a graph JSON path.
        #[arg(required = true)]
        source: Vec<String>,
        /// Largest weight tried (default 2n).
        #[arg(long)]
        max_weight: Option<u64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        target_k: Option<usize>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Only try weightings where vertex 0 is lightest (vertex-transitive graphs).
        #[arg(long)]
        prune_symmetry: bool,
        /// Human-readable summary instead of JSON.
        #[arg(long)]
        text: bool,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    /// Generic interleaving search.
    Lemma1,
    /// One-interval obstruction for cycles (k = 1).
    Cycle,
    /// Replay of the two-interval obstruction for G_{3,3,3,3} (k = 2).
    Grid4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            Ok(fs::read_to_string(path)?)
        }
    }

    fn write(&mut self, path: &str, text: &str) -> Result<()> {
        if path == "-" {
            self.stdout.write_all(text.as_bytes())?;
            self.stdout.flush()?;
        } else {
            fs::write(path, text)?;
        }
        Ok(())
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "star-pcg: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32> {
    match command {
        Command::Generate {
            family,
            params,
            dot,
            output,
        } => {
            let family = Family::parse(&family, &params)?;
            let g = family.graph();
            let text = if dot {
                g.to_dot(family.labels().as_deref())
            } else {
                g.to_json() + "\n"
            };
            io.write(&output, &text)?;
            Ok(EXIT_OK)
        }
        Command::Witness {
            family,
            params,
            output,
        } => {
            let constructed = construct(&Family::parse(&family, &params)?)?;
            io.write(&output, &(constructed.to_json() + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            graph,
            witness,
            output,
        } => {
            let g: Graph = serde_json::from_str(&io.read(&graph)?)?;
            let w: Witness = serde_json::from_str(&io.read(&witness)?)?;
            let report = w.verify(&g)?;
            io.write(&output, &(serde_json::to_string(&report)? + "\n"))?;
            Ok(if report.equal { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Obstruct {
            graph,
            weights,
            k,
            method,
            trace,
            output,
        } => {
            let g: Graph = serde_json::from_str(&io.read(&graph)?)?;
            let star = parse_weights(&io.read(&weights)?)?;
            let found = match method {
                Method::Lemma1 => {
                    lemma1_certificate(&g, &star, k.unwrap_or(1)).map(|c| c.map(|c| c.to_json()))
                }
                Method::Cycle => {
                    if k.is_some_and(|k| k != 1) || !is_cycle(&g) {
                        return Err(Error::invalid(
                            "--method cycle needs k = 1 and a cycle graph",
                        ));
                    }
                    cycle_star1_obstruction(g.n(), &star).map(|c| Some(c.to_json()))
                }
                Method::Grid4 => {
                    if k.is_some_and(|k| k != 2) {
                        return Err(Error::invalid("--method grid4 needs k = 2"));
                    }
                    replay_grid4(&star).and_then(|replay| {
                        Ok(Some(if trace {
                            serde_json::to_string(&replay)?
                        } else {
                            replay.certificate.to_json()
                        }))
                    })
                }
            };
            let text = match found {
                Err(Error::NoCertificate(_)) => None,
                other => other?,
            };
            match text {
                Some(t) => {
                    io.write(&output, &(t + "\n"))?;
                    Ok(EXIT_OK)
                }
                None => {
                    io.write(&output, "none\n")?;
                    Ok(EXIT_NONE)
                }
            }
        }
        Command::Mink {
            source,
            max_weight,
            mode,
            trials,
            seed,
            target_k,
            jobs,
            prune_symmetry,
            text,
            output,
        } => {
            let g = graph_source(&source, io)?;
            let cfg = SearchConfig {
                max_weight: max_weight.unwrap_or(2 * g.n() as u64),
                mode: match mode {
                    ModeArg::Exhaustive => SearchMode::Exhaustive,
                    ModeArg::Random => SearchMode::Random,
                },
                trials,
                seed,
                target_k,
                jobs,
                prune_symmetry,
            };
            let report = search_report(&g, &cfg)?;
            let body = if text {
                report.to_string()
            } else {
                report.to_json() + "\n"
            };
            io.write(&output, &body)?;
            Ok(EXIT_OK)
        }
    }
}

/// Weights as a bare array or inside a witness-shaped object.
fn parse_weights(text: &str) -> Result<WeightedStar> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Weights {
        Bare(WeightedStar),
        Wrapped { weights: WeightedStar },
    }
    Ok(match serde_json::from_str(text)? {
        Weights::Bare(w) | Weights::Wrapped { weights: w } => w,
    })
}

fn graph_source(source: &[String], io: &mut Io<'_>) -> Result<Graph> {
    match source {
        [family, params @ ..] if matches!(family.as_str(), "cycle" | "path" | "grid") => {
            let params = params
                .iter()
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad size {p:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Family::parse(family, &params)?.graph())
        }
        [path] => Ok(serde_json::from_str(&io.read(path)?)?),
        _ => Err(Error::invalid(format!(
            "expected a family or one graph file, got {source:?}"
        ))),
    }
}

fn is_cycle(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 || (0..n).any(|v| g.degree(v) != 2) {
        return false;
    }
    // connected 2-regular graph
    let (mut prev, mut cur, mut steps) = (0, g.neighbors(0)[0], 1);
    while cur != 0 {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&v| v != prev)
            .expect("degree 2");
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == n
}
