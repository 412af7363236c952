use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use cycle_isolation::constructive::{construct_for_any, construct_isolating_set};
use cycle_isolation::exact::{isolation_number, isolation_number_naive, Search};
use cycle_isolation::harness::census::{run_census, run_enumerated_census, CensusOptions, Check};
use cycle_isolation::harness::enumerate::{enumerate_connected, ENUMERATION_LIMIT};
use cycle_isolation::harness::io::{encode_graph6, format_edge_list, read_graphs, InputGraph};
use cycle_isolation::harness::verify::{random_block_graph, random_connected_graph, verify_constructive};
use cycle_isolation::special::{random_special, recognize_pure_special, Base, EqualityClass};
use cycle_isolation::{is_isolating, CycleFamily, Error, Graph};

/// Cycle-isolating sets: exact solver, constructive bound, special graphs,
/// and small-graph census. Every command prints JSON lines.
#[derive(Parser)]
#[command(name = "isolate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum isolating set for each input graph.
    Exact {
        #[arg(long, default_value = "cprime")]
        family: CycleFamily,
        /// Use subset enumeration instead of branching (n <= 12).
        #[arg(long)]
        naive: bool,
        /// Give up once the answer is known to exceed K.
        #[arg(long, value_name = "K")]
        budget: Option<usize>,
        /// Edge list or graph6 file; `-` reads standard input.
        input: PathBuf,
    },
    /// Non-triangle-cycle isolating set within the edge bound.
    Construct {
        input: PathBuf,
        /// Print the full case trace.
        #[arg(long)]
        trace: bool,
    },
    /// Exact values checked against the bounds, one record per graph.
    Census {
        #[arg(long, value_name = "N", conflicts_with = "input")]
        max_n: Option<usize>,
        #[arg(long, value_name = "FILE.g6")]
        input: Option<PathBuf>,
        /// Comma-separated families (c, cprime, c4, c<len>).
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<CycleFamily>>,
        /// Comma-separated checks (vertex, c-edge, cprime-edge, c4-edge).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<Check>>,
        /// Omit timing fields so runs can be compared byte for byte.
        #[arg(long)]
        no_timings: bool,
    },
    /// Random special graph.
    GenSpecial {
        #[arg(long)]
        base: Base,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        pure: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the graph here (graph6 if the name ends in .g6, else an edge list).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify each input graph against the extremal families.
    Recognize { input: PathBuf },
    /// Check the construction's contract on many graphs.
    VerifyConstructive {
        #[arg(long, conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Number of random connected graphs.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        /// Largest graph size (enumerated when neither --input nor --random is given).
        #[arg(long, default_value_t = ENUMERATION_LIMIT)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compare against the exact value (n <= 24).
        #[arg(long)]
        exact: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}

fn id_of(input: &InputGraph) -> String {
    encode_graph6(&input.graph).unwrap_or_else(|_| format!("line {}", input.line))
}

/// Returns whether every check passed.
fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Exact {
            family,
            naive,
            budget,
            input,
        } => {
            for g in read_graphs(&input)? {
                let base = json!({ "line": g.line, "n": g.graph.n(), "m": g.graph.m(), "family": family.name() });
                let mut out = base.as_object().unwrap().clone();
                if naive {
                    let r = isolation_number_naive(&g.graph, family)?;
                    out.insert("size".into(), json!(r.size));
                    out.insert("witness".into(), json!(r.witness));
                } else {
                    match isolation_number(&g.graph, family, budget)? {
                        Search::Found(r) => {
                            out.insert("size".into(), json!(r.size));
                            out.insert("witness".into(), json!(r.witness));
                        }
                        Search::ExceedsBudget { budget } => {
                            out.insert("exceeds_budget".into(), json!(budget));
                        }
                    }
                }
                emit(out.into());
            }
            Ok(true)
        }
        Command::Construct { input, trace } => {
            let mut ok = true;
            for g in read_graphs(&input)? {
                let graph = &g.graph;
                let four_cycle = graph.n() == 4 && graph.m() == 4 && graph.is_connected() && graph.max_degree() == 2;
                let (set, cases, rendered) = if graph.is_connected() && !four_cycle {
                    let (d, t) = construct_isolating_set(graph)?;
                    (d, t.root.cases(), Some(t.to_string()))
                } else {
                    (construct_for_any(graph)?, Vec::new(), None)
                };
                let isolating = is_isolating(graph, CycleFamily::NonTriangleCycles, &set)?;
                let within = four_cycle || 6 * set.len() <= graph.m() + graph.components().len();
                ok &= isolating && within;
                let mut out = json!({
                    "line": g.line,
                    "n": graph.n(),
                    "m": graph.m(),
                    "size": set.len(),
                    "set": set,
                    "isolating": isolating,
                    "within_bound": within,
                    "cases": cases,
                });
                if trace {
                    out["trace"] = json!(rendered);
                }
                emit(out);
            }
            Ok(ok)
        }
        Command::Census {
            max_n,
            input,
            families,
            checks,
            no_timings,
        } => {
            let defaults = CensusOptions::default();
            let opts = CensusOptions {
                families: families.unwrap_or(defaults.families),
                checks: checks.unwrap_or(defaults.checks),
                timings: !no_timings,
            };
            let report = match input {
                Some(path) => run_census(&read_graphs(&path)?, &opts)?,
                None => run_enumerated_census(max_n.unwrap_or(ENUMERATION_LIMIT), &opts)?,
            };
            print!("{}", report.to_json_lines());
            Ok(report.passed())
        }
        Command::GenSpecial {
            base,
            m,
            pure,
            seed,
            out,
        } => {
            let (spec, g) = random_special(base, m, pure, seed)?;
            let g6 = encode_graph6(&g).ok();
            if let Some(path) = &out {
                let text = match (&g6, path.extension().is_some_and(|e| e == "g6")) {
                    (Some(s), true) => format!("{s}\n"),
                    _ => format_edge_list(&g),
                };
                fs::write(path, text)?;
            }
            emit(json!({ "spec": spec, "n": g.n(), "m": g.m(), "graph6": g6, "edges": g.edges().collect::<Vec<_>>() }));
            Ok(true)
        }
        Command::Recognize { input } => {
            for g in read_graphs(&input)? {
                let class = EqualityClass::of(&g.graph);
                let decomposition = [Base::C4, Base::C3]
                    .into_iter()
                    .find_map(|b| recognize_pure_special(&g.graph, b));
                emit(json!({
                    "line": g.line,
                    "n": g.graph.n(),
                    "m": g.graph.m(),
                    "class": class,
                    "cprime_extremal": class.is_cprime_extremal(),
                    "decomposition": decomposition,
                }));
            }
            Ok(true)
        }
        Command::VerifyConstructive {
            input,
            random,
            max_n,
            seed,
            exact,
        } => {
            let graphs: Vec<(String, Graph)> = if let Some(path) = input {
                read_graphs(&path)?
                    .into_iter()
                    .flat_map(|g| {
                        let id = id_of(&g);
                        g.graph.components().into_iter().map(move |c| (id.clone(), c.graph))
                    })
                    .collect()
            } else if let Some(count) = random {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|i| {
                        let g = if i % 2 == 0 {
                            random_block_graph(max_n, &mut rng)
                        } else {
                            let n = rng.gen_range(1..=max_n.max(1));
                            let p = rng.gen_range(0.0..0.3);
                            random_connected_graph(n, p, &mut rng)
                        };
                        (format!("random {i}"), g)
                    })
                    .collect()
            } else {
                enumerate_connected(max_n)?.into_iter().map(|g| (String::new(), g)).collect()
            };
            let mut ok = true;
            let mut checked = 0;
            for (source, g) in graphs {
                if g.n() == 4 && g.m() == 4 && g.max_degree() == 2 {
                    continue;
                }
                let r = verify_constructive(&g, exact)?;
                ok &= r.passed();
                checked += 1;
                let mut out = serde_json::to_value(&r).expect("record serializes");
                out["passed"] = json!(r.passed());
                if !source.is_empty() {
                    out["source"] = json!(source);
                }
                emit(out);
            }
            emit(json!({ "summary": { "checked": checked, "passed": ok } }));
            Ok(ok)
        }
    }
}
