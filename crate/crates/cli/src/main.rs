//! `allhops` command-line front end.

mod output;
mod selftest;

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use allhops::baselines::{bellman_ford_allhops, default_max_hop, AllHopsTable};
use allhops::graph::{gen_random_graph, parse_graph, render_graph};
use allhops::kernels::ConvStrategy;
use allhops::oracles::{
    build_oracle_bf_capped, build_oracle_bounded, build_oracle_mn, build_oracle_mpp, build_oracle_powers_capped,
    Oracle, OracleKind, DEFAULT_MEM_CAP,
};
use allhops::reductions::{
    build_tree_gadget, build_triangle_gadget, parse_tripartite, reduce_convolution_to_hops,
    reduce_mpp_to_exact_hops, verify_convolution, verify_mpp, verify_tree, verify_triangle, GadgetGraph,
};
use allhops::sampling::SamplePlan;
use allhops::solvers::{
    all_pairs_allhops_with, default_levels, default_split, single_pair_allhops_with, single_source_allhops_with,
};
use allhops::{Dist, Error, Graph, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, Records};

#[derive(Parser)]
#[command(name = "allhops", version, about = "Hop-constrained shortest distances")]
struct Cli {
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true, env = "ALLHOPS_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a random graph in edge-list format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Weights are drawn from [-M, M].
        #[arg(long = "max-weight", short = 'M', default_value_t = 10)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the no-negative-cycle construction.
        #[arg(long)]
        allow_negative_cycles: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report whether the graph has a negative cycle.
    Check {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Bellman-Ford table from one source.
    Bf {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        max_hop: Option<usize>,
    },
    SinglePair {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        solve: SolveOpts,
    },
    SingleSource {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        /// Last level built by pair queries; defaults to ceil(k/2).
        #[arg(long)]
        split: Option<usize>,
        #[command(flatten)]
        solve: SolveOpts,
    },
    AllPairs {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        solve: SolveOpts,
    },
    #[command(subcommand)]
    Oracle(OracleCmd),
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Run the equivalence suites at reduced sizes.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct SolveOpts {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oversampling constant.
    #[arg(long, short = 'C', default_value_t = 4.0)]
    c: f64,
    /// Number of sample levels; defaults to ceil(log2 n).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Strategy::Fast)]
    strategy: Strategy,
    #[arg(long)]
    max_hop: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Naive,
    Fast,
    Polynomial,
}

impl Strategy {
    fn conv(self) -> ConvStrategy {
        match self {
            Strategy::Naive => ConvStrategy::naive(),
            Strategy::Fast => ConvStrategy::fast(),
            Strategy::Polynomial => ConvStrategy::polynomial(),
        }
    }
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Preprocess a graph and write a snapshot.
    Build {
        #[arg(long)]
        kind: OracleKind,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short = 'C', default_value_t = 4.0)]
        c: f64,
        /// Hop budget of the full-table kinds.
        #[arg(long)]
        max_hop: Option<usize>,
        /// Cell cap for the full-table kinds, in bytes.
        #[arg(long, default_value_t = DEFAULT_MEM_CAP)]
        mem_cap: u128,
        /// Crossover level of the bounded kind.
        #[arg(long)]
        crossover: Option<usize>,
    },
    /// Answer `u v h` triples.
    Query {
        #[arg(long)]
        oracle: PathBuf,
        /// Triples file; stdin when absent.
        #[arg(long)]
        queries: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GadgetOut {
    /// Build the gadget and check its decoding against a direct evaluation.
    #[arg(long)]
    verify: bool,
    /// Edge-list destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Name map destination.
    #[arg(long)]
    names: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GadgetCmd {
    Tree {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        reversed: bool,
        #[command(flatten)]
        out: GadgetOut,
    },
    /// Input: `I J K`, then `ij a b`, `jk a b`, `ki a b` lines.
    Triangle {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: GadgetOut,
    },
    /// Matrices are whitespace-separated rows of integers.
    Mpp {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        x: i64,
        #[command(flatten)]
        out: GadgetOut,
    },
    Conv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        out: GadgetOut,
    },
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(io::stdout().lock().write_all(text.as_bytes())?),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_text(path)?)
}

fn parse_matrix(path: &Path) -> Result<Vec<Vec<i64>>> {
    let text = read_text(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("`{t}` is not an integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn stdout_records(format: Format, fields: &'static [&'static str], header: bool) -> Result<Records<impl Write>> {
    Ok(Records::new(BufWriter::new(io::stdout().lock()), format, fields, header)?)
}

/// Solvers stop at `n - 1` hops; beyond that `d_{<=h}` is constant when
/// there is no negative cycle.
fn padded(series: &[Dist], h: usize) -> Dist {
    series.get(h).or(series.last()).copied().unwrap_or(Dist::INF)
}

fn write_table(table: &AllHopsTable, max_hop: usize, format: Format) -> Result<()> {
    let mut out = stdout_records(format, &["u", "v", "h"], true)?;
    for row in &table.rows {
        for v in 0..table.n {
            let series: Vec<Dist> = (0..=row.max_hop).map(|h| row.le(h, v)).collect();
            for h in 1..=max_hop {
                out.write(&[row.source, v, h], padded(&series, h))?;
            }
        }
    }
    Ok(out.finish()?)
}

fn plan(seed: u64, c: f64) -> SamplePlan {
    SamplePlan::new(c, seed)
}

fn emit_gadget(g: &GadgetGraph, out: &GadgetOut) -> Result<()> {
    write_text(out.out.as_deref(), &render_graph(&g.graph))?;
    if let Some(p) = &out.names {
        write_text(Some(p), &g.render_names())?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let format = cli.format;
    match cli.cmd {
        Cmd::Gen {
            n,
            m,
            max_weight,
            seed,
            allow_negative_cycles,
            out,
        } => {
            let g = gen_random_graph(n, m, max_weight, seed, !allow_negative_cycles)?;
            write_text(out.as_deref(), &render_graph(&g))
        }
        Cmd::Check { graph } => {
            load_graph(&graph)?.require_no_negative_cycle()?;
            write_text(None, "no negative cycle\n")
        }
        Cmd::Bf { graph, s, max_hop } => {
            let g = load_graph(&graph)?;
            let hops = max_hop.unwrap_or(default_max_hop(g.n()));
            let row = bellman_ford_allhops(&g, s, hops)?;
            let table = AllHopsTable { n: g.n(), max_hop: hops, rows: vec![row] };
            write_table(&table, hops, format)
        }
        Cmd::SinglePair { graph, s, t, solve } => {
            let g = load_graph(&graph)?;
            let k = solve.k.unwrap_or(default_levels(g.n()));
            let mut series = vec![if s == t { Dist::ZERO } else { Dist::INF }];
            series.extend(single_pair_allhops_with(&g, s, t, k, &plan(solve.seed, solve.c), solve.strategy.conv())?);
            let mut out = stdout_records(format, &["h"], false)?;
            for h in 1..=solve.max_hop.unwrap_or(default_max_hop(g.n())) {
                out.write(&[h], padded(&series, h))?;
            }
            Ok(out.finish()?)
        }
        Cmd::SingleSource { graph, s, split, solve } => {
            let g = load_graph(&graph)?;
            let k = solve.k.unwrap_or(default_levels(g.n()));
            let split = split.unwrap_or(default_split(k));
            let row = single_source_allhops_with(&g, s, k, &plan(solve.seed, solve.c), split, solve.strategy.conv())?;
            let hops = solve.max_hop.unwrap_or(default_max_hop(g.n()));
            write_table(&AllHopsTable { n: g.n(), max_hop: row.max_hop, rows: vec![row] }, hops, format)
        }
        Cmd::AllPairs { graph, solve } => {
            let g = load_graph(&graph)?;
            let hops = solve.max_hop.unwrap_or(default_max_hop(g.n()));
            let table = all_pairs_allhops_with(&g, &plan(solve.seed, solve.c), hops.min(default_max_hop(g.n())))?;
            write_table(&table, hops, format)
        }
        Cmd::Oracle(OracleCmd::Build {
            kind,
            graph,
            out,
            seed,
            c,
            max_hop,
            mem_cap,
            crossover,
        }) => {
            let g = load_graph(&graph)?;
            let hops = max_hop.unwrap_or(default_max_hop(g.n()));
            let p = plan(seed, c);
            let oracle = match kind {
                OracleKind::Powers => build_oracle_powers_capped(&g, hops, mem_cap)?,
                OracleKind::Bf => build_oracle_bf_capped(&g, hops, mem_cap)?,
                OracleKind::Mn => build_oracle_mn(&g, &p)?,
                OracleKind::Mpp => build_oracle_mpp(&g, &p)?,
                OracleKind::Bounded => build_oracle_bounded(&g, &p, crossover)?,
            };
            oracle.save(&out)
        }
        Cmd::Oracle(OracleCmd::Query { oracle, queries }) => {
            let oracle = Oracle::load(&oracle)?;
            let text = match queries {
                Some(p) => read_text(&p)?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let mut out = stdout_records(format, &["u", "v", "h"], false)?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let nums: Vec<usize> = line
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse { line: i + 1, message: "expected `u v h`".into() })?;
                let [u, v, h] = nums[..] else {
                    return Err(Error::Parse { line: i + 1, message: "expected `u v h`".into() });
                };
                out.write(&[u, v, h], oracle.query(u, v, h)?)?;
            }
            Ok(out.finish()?)
        }
        Cmd::Gadget(cmd) => gadget(cmd),
        Cmd::Selftest { seed } => {
            if selftest::run(seed, &mut io::stdout().lock())? {
                Ok(())
            } else {
                Err(Error::Verification("selftest failed".into()))
            }
        }
    }
}

fn gadget(cmd: GadgetCmd) -> Result<()> {
    let ok = || write_text(None, "verified\n");
    match cmd {
        GadgetCmd::Tree { ell, reversed, out } => {
            if out.verify {
                verify_tree(ell)?;
                return ok();
            }
            emit_gadget(&build_tree_gadget(ell, reversed)?, &out)
        }
        GadgetCmd::Triangle { input, out } => {
            let h = parse_tripartite(&read_text(&input)?)?;
            if out.verify {
                let found = verify_triangle(&h)?;
                return write_text(None, &format!("verified\ttriangle={found}\n"));
            }
            emit_gadget(&build_triangle_gadget(&h)?, &out)
        }
        GadgetCmd::Mpp { a, b, x, out } => {
            let (a, b) = (parse_matrix(&a)?, parse_matrix(&b)?);
            if out.verify {
                verify_mpp(&a, &b, x)?;
                return ok();
            }
            emit_gadget(&reduce_mpp_to_exact_hops(&a, &b, x)?, &out)
        }
        GadgetCmd::Conv { a, b, out } => {
            let (a, b) = (parse_matrix(&a)?, parse_matrix(&b)?);
            if out.verify {
                verify_convolution(&a, &b)?;
                return ok();
            }
            emit_gadget(&reduce_convolution_to_hops(&a, &b)?, &out)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NegativeCycle | Error::Precondition(_) | Error::MemoryCap { .. } | Error::RetryBudget(_) => 2,
        Error::Verification(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(msg)) if msg.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
