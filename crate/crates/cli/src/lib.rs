//! Command-line front end: `solve`, `reduce`, `check` and `analyze`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use mcis_core::check::{run_check, CheckConfig, Suite};
use mcis_core::graph::{graph_stats, Graph, VertexMapping};
use mcis_core::io::parse_graph;
use mcis_core::params::{min_feedback_vertex_set, min_vertex_cover};
use mcis_core::reductions::{
    clique_to_incidence_isi, cross_compose, isi_to_mccis, three_partition_to_forest_isi, write_output,
    CliqueInstance, ReductionOutput, ThreePartitionInstance,
};
use mcis_core::solvers::{
    configuration_bound, isi_backtracking, mcis_bruteforce_bounded, mcis_vc_fpt, mcis_via_isi, SolveQuery,
    SolveResult, SolveStats, DEFAULT_ORACLE_BOUND,
};
use mcis_core::Error;

pub const ORACLE_BOUND_VAR: &str = "MCIS_ORACLE_BOUND";
/// `auto` uses the vertex-cover algorithm up to this cover size.
pub const VC_CUTOFF: usize = 8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mcis", version, about = "Common induced subgraph solvers, reductions and checks")]
pub struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve MCIS, MCCIS or induced subgraph isomorphism on two graph files.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long, value_enum, default_value = "auto")]
        algo: Algo,
        /// Decision threshold.
        #[arg(short, long)]
        k: Option<usize>,
        g1: PathBuf,
        g2: PathBuf,
    },
    /// Build a reduction instance and write it to a directory.
    Reduce {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        outdir: PathBuf,
        /// Clique size for clique-incidence.
        #[arg(short, long)]
        k: Option<usize>,
        /// Clique size for cross-compose.
        #[arg(short, long)]
        l: Option<usize>,
        /// 3-Partition items, comma separated.
        #[arg(long, value_delimiter = ',')]
        items: Vec<usize>,
        /// 3-Partition group count.
        #[arg(long)]
        groups: Option<usize>,
        /// 3-Partition target sum B.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        host_len: Option<usize>,
        inputs: Vec<PathBuf>,
    },
    /// Seeded cross-validation against the brute-force oracles.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Structural summary of one graph.
    Analyze { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Mcis,
    Mccis,
    Isi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Brute,
    VcFpt,
    Backtracking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    CliqueIncidence,
    CrossCompose,
    Universal,
    #[value(name = "3partition")]
    ThreePartition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Oracle,
    Reductions,
    All,
}

#[derive(Serialize, Debug)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub result: Value,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SolveStats>,
}

/// Failure with its exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub report: Option<Box<(RunReport, Vec<String>)>>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            report: None,
        }
    }

    fn refused(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_REFUSED,
            message: message.into(),
            report: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleBound { .. } | Error::ThresholdTooLarge { .. } => Failure::refused(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

/// Output of one command: the report and the text lines shown without
/// `--json`.
struct Outcome {
    report: RunReport,
    lines: Vec<String>,
}

struct Env {
    oracle_bound: usize,
    command: Vec<String>,
}

fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

fn load(path: &Path) -> Result<(Graph, Vec<u8>), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8_lossy(&bytes);
    let g = parse_graph(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((g, bytes))
}

fn format_mapping(m: &VertexMapping) -> String {
    m.pairs().iter().map(|(u, v)| format!("{u}->{v}")).collect::<Vec<_>>().join(" ")
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn solve(env: &Env, problem: Problem, algo: Algo, k: Option<usize>, p1: &Path, p2: &Path) -> Result<Outcome, Failure> {
    let (g1, b1) = load(p1)?;
    let (g2, b2) = load(p2)?;
    let inputs_digest = digest(&[&b1, &b2]);
    let start = Instant::now();
    let mut lines = Vec::new();
    let connected = problem == Problem::Mccis;
    let (result, stats) = if problem == Problem::Isi {
        let target = g1.n();
        let found = match algo {
            Algo::Auto | Algo::Backtracking => isi_backtracking(&g1, &g2),
            Algo::Brute | Algo::VcFpt => {
                let q = SolveQuery::mcis(g1.clone(), g2.clone());
                let r = run_optimizer(env, &q, algo)?;
                (r.size == target).then_some(r.witness)
            }
        };
        lines.push(if found.is_some() { "yes" } else { "no" }.to_string());
        if let Some(m) = &found {
            lines.push(format!("witness {}", format_mapping(m)));
        }
        (
            json!({ "problem": "isi", "answer": found.is_some(), "witness": found.as_ref().map(|m| m.pairs().to_vec()) }),
            None,
        )
    } else {
        let q = SolveQuery::new(g1.clone(), g2.clone(), connected);
        let tag = if connected { "mccis" } else { "mcis" };
        if algo == Algo::Backtracking {
            let k = k.ok_or_else(|| Failure::usage("--algo backtracking for mcis/mccis needs -k"))?;
            let answer = mcis_via_isi(&q.with_threshold(k))?;
            lines.push(if answer { "yes" } else { "no" }.to_string());
            (json!({ "problem": tag, "k": k, "answer": answer }), None)
        } else {
            let r = run_optimizer(env, &q, algo)?;
            lines.push(format!("size {}", r.size));
            lines.push(format!("witness {}", format_mapping(&r.witness)));
            lines.push(format!("method {}", r.method));
            let mut result = json!({
                "problem": tag,
                "size": r.size,
                "witness": r.witness.pairs(),
                "method": r.method,
            });
            if let Some(k) = k {
                let answer = r.size >= k;
                lines.push(format!("k {k}: {}", if answer { "yes" } else { "no" }));
                result["k"] = json!(k);
                result["answer"] = json!(answer);
            }
            (result, Some(r.stats))
        }
    };
    let mut timings_ms = BTreeMap::new();
    timings_ms.insert("solve".into(), ms(start));
    Ok(Outcome {
        report: RunReport {
            command: env.command.clone(),
            inputs_digest,
            result,
            timings_ms,
            stats,
        },
        lines,
    })
}

fn run_optimizer(env: &Env, q: &SolveQuery, algo: Algo) -> Result<SolveResult, Failure> {
    match algo {
        Algo::Brute => Ok(mcis_bruteforce_bounded(q, env.oracle_bound)?),
        Algo::VcFpt => Ok(mcis_vc_fpt(q)),
        _ => {
            let (k1, k2) = (min_vertex_cover(&q.g1).size(), min_vertex_cover(&q.g2).size());
            let largest = q.g1.n().max(q.g2.n());
            if k1.max(k2) <= VC_CUTOFF {
                Ok(mcis_vc_fpt(q))
            } else if largest <= env.oracle_bound {
                Ok(mcis_bruteforce_bounded(q, env.oracle_bound)?)
            } else {
                Err(Failure::refused(format!(
                    "refusing: cover sizes {k1}/{k2} exceed the cutoff {VC_CUTOFF} (up to {} configurations) \
                     and {largest} vertices exceed the oracle bound {} (2^{} subsets)",
                    configuration_bound(k1, k2),
                    env.oracle_bound,
                    q.g1.n().min(q.g2.n())
                )))
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn reduce(
    env: &Env,
    which: Which,
    outdir: &Path,
    k: Option<usize>,
    l: Option<usize>,
    items: Vec<usize>,
    groups: Option<usize>,
    bound: Option<usize>,
    host_len: Option<usize>,
    inputs: &[PathBuf],
) -> Result<Outcome, Failure> {
    let mut graphs = Vec::new();
    let mut blobs = Vec::new();
    for p in inputs {
        let (g, b) = load(p)?;
        graphs.push(g);
        blobs.push(b);
    }
    let flags = format!("{which:?} {k:?} {l:?} {items:?} {groups:?} {bound:?} {host_len:?}");
    let mut parts: Vec<&[u8]> = blobs.iter().map(Vec::as_slice).collect();
    parts.push(flags.as_bytes());
    let inputs_digest = digest(&parts);
    let start = Instant::now();
    let expect_inputs = |want: usize| {
        if graphs.len() == want {
            Ok(())
        } else {
            Err(Failure::usage(format!("{which:?} takes {want} graph file(s), got {}", graphs.len())))
        }
    };
    let out: ReductionOutput = match which {
        Which::CliqueIncidence => {
            expect_inputs(1)?;
            let k = k.ok_or_else(|| Failure::usage("clique-incidence needs -k"))?;
            clique_to_incidence_isi(&graphs[0], k)?
        }
        Which::CrossCompose => {
            let l = l.ok_or_else(|| Failure::usage("cross-compose needs -l"))?;
            let insts = graphs
                .iter()
                .map(|g| CliqueInstance::new(g.clone(), l))
                .collect::<Result<Vec<_>, _>>()?;
            cross_compose(&insts)?
        }
        Which::Universal => {
            expect_inputs(2)?;
            isi_to_mccis(&graphs[0], &graphs[1])
        }
        Which::ThreePartition => {
            expect_inputs(0)?;
            let groups = groups.unwrap_or(items.len() / 3);
            let bound = bound.ok_or_else(|| Failure::usage("3partition needs --bound"))?;
            let inst = ThreePartitionInstance::new(items, groups, bound)?;
            three_partition_to_forest_isi(&inst, host_len)?
        }
    };
    write_output(&out, outdir)?;
    let mut lines = vec![
        format!("target {}", out.target),
        format!("g1 n={} m={}", out.g1.n(), out.g1.edge_count()),
        format!("g2 n={} m={}", out.g2.n(), out.g2.edge_count()),
    ];
    lines.extend(out.parameters.iter().map(|(k, v)| format!("{k} {v}")));
    lines.push(format!("certificates {}", out.certificates.len()));
    lines.push(format!("wrote {}", outdir.display()));
    let mut timings_ms = BTreeMap::new();
    timings_ms.insert("reduce".into(), ms(start));
    Ok(Outcome {
        report: RunReport {
            command: env.command.clone(),
            inputs_digest,
            result: json!({
                "target": out.target,
                "parameters": out.parameters,
                "certificates": out.certificates,
            }),
            timings_ms,
            stats: None,
        },
        lines,
    })
}

fn check(env: &Env, suite: SuiteArg, seed: u64, count: usize, max_n: usize) -> Result<Outcome, Failure> {
    let suite = match suite {
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Reductions => Suite::Reductions,
        SuiteArg::All => Suite::All,
    };
    let cfg = CheckConfig {
        suite,
        seed,
        count,
        max_n,
        oracle_bound: env.oracle_bound,
    };
    let flags = format!("{suite:?} {seed} {count} {max_n} {}", env.oracle_bound);
    let start = Instant::now();
    let report = run_check(&cfg)?;
    let mut timings_ms = BTreeMap::new();
    timings_ms.insert("check".into(), ms(start));
    let failed: Vec<_> = report.failures().collect();
    let mut lines = Vec::new();
    for f in &failed {
        lines.push(format!("FAIL {} #{}: {}", f.suite, f.index, f.summary));
        lines.extend(f.problems.iter().map(|p| format!("  {p}")));
        for (i, g) in f.replay.iter().enumerate() {
            lines.push(format!("  input {}:", i + 1));
            lines.extend(g.lines().map(|l| format!("    {l}")));
        }
    }
    lines.push(format!(
        "{} instances, {} passed, {} failed",
        report.len(),
        report.len() - failed.len(),
        failed.len()
    ));
    let configurations: u64 = report.outcomes.iter().map(|o| o.configurations).sum();
    let run_report = RunReport {
        command: env.command.clone(),
        inputs_digest: digest(&[flags.as_bytes()]),
        result: json!({
            "instances": report.len(),
            "failed": failed.len(),
            "failures": failed,
        }),
        timings_ms,
        stats: Some(SolveStats {
            configurations,
            ..SolveStats::default()
        }),
    };
    if failed.is_empty() {
        lines.push("all passed".into());
        Ok(Outcome {
            report: run_report,
            lines,
        })
    } else {
        Err(Failure {
            code: EXIT_CHECK_FAILED,
            message: format!("{} check instance(s) failed", failed.len()),
            report: Some(Box::new((run_report, lines))),
        })
    }
}

fn analyze(env: &Env, file: &Path) -> Result<Outcome, Failure> {
    let (g, bytes) = load(file)?;
    let start = Instant::now();
    let stats = graph_stats(&g);
    let vc = min_vertex_cover(&g).size();
    let fvs = (g.n() <= env.oracle_bound).then(|| min_feedback_vertex_set(&g).size);
    let mut lines = vec![
        format!("n {}", g.n()),
        format!("m {}", g.edge_count()),
        format!("connected {}", stats.connected),
        format!("girth {}", stats.girth),
        format!("bipartite {}", stats.bipartite),
        format!("c4_free {}", stats.c4_free),
        format!("vc {vc}"),
    ];
    lines.push(match fvs {
        Some(f) => format!("fvs {f}"),
        None => format!("fvs skipped (n > oracle bound {})", env.oracle_bound),
    });
    let mut timings_ms = BTreeMap::new();
    timings_ms.insert("analyze".into(), ms(start));
    Ok(Outcome {
        report: RunReport {
            command: env.command.clone(),
            inputs_digest: digest(&[&bytes]),
            result: json!({
                "n": g.n(),
                "m": g.edge_count(),
                "connected": stats.connected,
                "girth": stats.girth.to_string(),
                "bipartite": stats.bipartite,
                "c4_free": stats.c4_free,
                "vc": vc,
                "fvs": fvs,
            }),
            timings_ms,
            stats: None,
        },
        lines,
    })
}

fn emit(out: &mut dyn Write, json: bool, report: &RunReport, lines: &[String]) {
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
    }
}

fn oracle_bound_from(value: Option<String>) -> Result<usize, Failure> {
    match value {
        None => Ok(DEFAULT_ORACLE_BOUND),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{ORACLE_BOUND_VAR} must be a non-negative integer, got {s:?}"))),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. The oracle bound is read from [`ORACLE_BOUND_VAR`].
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_bound(args, std::env::var(ORACLE_BOUND_VAR).ok(), out, err)
}

pub fn run_with_bound<I, T>(args: I, bound: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let oracle_bound = match oracle_bound_from(bound) {
        Ok(b) => b,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let env = Env {
        oracle_bound,
        command: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
    };
    let result = match cli.command {
        Command::Solve {
            problem,
            algo,
            k,
            g1,
            g2,
        } => solve(&env, problem, algo, k, &g1, &g2),
        Command::Reduce {
            which,
            outdir,
            k,
            l,
            items,
            groups,
            bound,
            host_len,
            inputs,
        } => reduce(&env, which, &outdir, k, l, items, groups, bound, host_len, &inputs),
        Command::Check {
            suite,
            seed,
            count,
            max_n,
        } => check(&env, suite, seed, count, max_n),
        Command::Analyze { file } => analyze(&env, &file),
    };
    match result {
        Ok(o) => {
            emit(out, cli.json, &o.report, &o.lines);
            EXIT_OK
        }
        Err(f) => {
            if let Some(boxed) = &f.report {
                let (report, lines) = boxed.as_ref();
                emit(out, cli.json, report, lines);
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
