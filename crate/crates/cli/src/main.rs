mod input;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sqfpow::forest_engine::{cycle_question, profile, Ambient, ForestEngine, ProfileReport, CYCLE_N_MAX};
use sqfpow::resolution::{betti_table, HomologicalInvariants};
use sqfpow::splittings::EK_EXHAUSTIVE_LIMIT;
use sqfpow::{FieldSpec, Graph, MonomialIdeal};

use input::{read_graph_file, FamilySpec};
use suites::{run_on_graph, run_path_suite, Failure, GraphOutcome, Suite};

/// Exact invariants of squarefree powers of edge ideals.
#[derive(Parser)]
#[command(name = "sqfpow", version)]
struct Cli {
    /// Coefficient field: gf2, gf3 (any gfP) or q.
    #[arg(long, global = true, env = "SQFPOW_FIELD", default_value = "gf2")]
    field: FieldSpec,
    /// Output format; `betti` defaults to json, everything else to table.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args, Clone)]
struct Source {
    /// Edge-list file: optional `n <count>` line, then `u v` per line.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    /// path:n, cycle:n, star:n or random-forest[:n].
    #[arg(long)]
    family: Option<FamilySpec>,
    /// Seed for random families; trial i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// d_k, depth, g, reg and aim for every k.
    Profile {
        #[command(flatten)]
        source: Source,
        /// Only this k.
        #[arg(long)]
        k: Option<usize>,
        /// Drop isolated vertices from the ambient ring.
        #[arg(long)]
        covered_only: bool,
    },
    /// Run a verification suite; exit 1 on a counterexample.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        source: Source,
        /// Number of random graphs for random families.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Largest n for the path suite.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Generator count up to which EK maps are checked on every subset.
        #[arg(long, default_value_t = EK_EXHAUSTIVE_LIMIT, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=40))]
        ek_limit: usize,
    },
    /// Graded Betti table of I(G)^[power].
    Betti {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// g of paths and cycles side by side.
    ExploreCycles {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

enum Outcome {
    Ok,
    Counterexample,
}

struct UsageError(String);

impl From<sqfpow::Error> for UsageError {
    fn from(e: sqfpow::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<String> for UsageError {
    fn from(e: String) -> Self {
        UsageError(e)
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Profile { ref source, k, covered_only } => cmd_profile(&cli, source, k, covered_only),
        Command::Verify { suite, ref source, trials, n_max, ek_limit } => {
            cmd_verify(&cli, suite, source, trials, n_max, ek_limit)
        }
        Command::Betti { ref source, power } => cmd_betti(&cli, source, power),
        Command::ExploreCycles { n_max } => cmd_explore_cycles(&cli, n_max),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn one_graph(source: &Source) -> Result<Graph, UsageError> {
    match (&source.graph, &source.family) {
        (Some(path), None) => Ok(read_graph_file(path)?),
        (None, Some(family)) => Ok(family.build(source.seed)?),
        _ => Err(UsageError("give exactly one of --graph FILE or --family SPEC".into())),
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("report types serialize"));
}

fn cmd_profile(cli: &Cli, source: &Source, k: Option<usize>, covered_only: bool) -> CmdResult {
    let g = one_graph(source)?;
    let engine = ForestEngine::new(cli.field);
    let ambient = if covered_only { Ambient::CoveredVertices } else { Ambient::AllVertices };
    let mut report = profile(&engine, &g, ambient)?;
    if let Some(k) = k {
        let nu = report.rows.len();
        if k == 0 || k > nu {
            return Err(UsageError(format!("--k must lie in 1..={nu} for this graph; got {k}")));
        }
        report.rows.retain(|r| r.k == k);
    }
    match cli.format.unwrap_or(Format::Table) {
        Format::Json => print_json(&profile_json(&report, cli.field)),
        Format::Table => print_profile(&report, cli.field),
    }
    Ok(Outcome::Ok)
}

fn profile_json(report: &ProfileReport, field: FieldSpec) -> serde_json::Value {
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k, "d_k": r.d_k, "depth": r.depth, "g": r.g, "reg": r.reg,
                "aim": r.aim, "aim_plus_k": r.aim.map(|a| a + r.k), "source": r.source,
            })
        })
        .collect();
    json!({
        "graph": report.graph,
        "field": field.to_string(),
        "ambient": report.ambient,
        "variables": report.variables,
        "rows": rows,
    })
}

fn print_profile(report: &ProfileReport, field: FieldSpec) {
    let ambient = match report.ambient {
        Ambient::AllVertices => "all vertices",
        Ambient::CoveredVertices => "covered vertices",
    };
    println!("graph: {}", report.graph);
    println!("ring: {} variables ({ambient}), field {field}", report.variables);
    println!("{:>3} {:>4} {:>6} {:>4} {:>4} {:>4} {:>6}  source", "k", "d_k", "depth", "g", "reg", "aim", "aim+k");
    for r in &report.rows {
        let aim = r.aim.map_or("-".to_string(), |a| a.to_string());
        let aim_k = r.aim.map_or("-".to_string(), |a| (a + r.k).to_string());
        let source = serde_json::to_value(r.source).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        println!("{:>3} {:>4} {:>6} {:>4} {:>4} {:>4} {:>6}  {source}", r.k, r.d_k, r.depth, r.g, r.reg, aim, aim_k);
    }
}

/// The `betti` JSON document; entries sorted by `(i, j)`.
#[derive(Serialize)]
struct BettiDoc {
    n: usize,
    ideal: String,
    field: String,
    betti: Vec<BettiEntry>,
    projdim: usize,
    reg: usize,
    depth_quotient: usize,
}

#[derive(Serialize)]
struct BettiEntry {
    i: usize,
    j: usize,
    beta: u64,
}

fn cmd_betti(cli: &Cli, source: &Source, power: usize) -> CmdResult {
    let g = one_graph(source)?;
    if power == 0 {
        return Err(UsageError("--power must be at least 1".into()));
    }
    let ideal = MonomialIdeal::edge_ideal(&g).squarefree_power(power)?;
    if ideal.is_zero() {
        return Err(UsageError(format!("I(G)^[{power}] is the zero ideal: the graph has no {power}-matching")));
    }
    let table = betti_table(&ideal, cli.field)?;
    let (projdim, depth, reg) = match HomologicalInvariants::from_table(&table)? {
        HomologicalInvariants::Ideal { projdim, depth_quotient, reg } => (projdim, depth_quotient, reg),
        HomologicalInvariants::ZeroIdeal { .. } => unreachable!("nonzero ideal"),
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let doc = BettiDoc {
                n: g.n(),
                ideal: ideal.to_string(),
                field: cli.field.to_string(),
                betti: table.entries().map(|((i, j), beta)| BettiEntry { i, j, beta }).collect(),
                projdim,
                reg,
                depth_quotient: depth,
            };
            println!("{}", serde_json::to_string(&doc).expect("json values serialize"));
        }
        Format::Table => {
            println!("ideal: {ideal}");
            print!("{table}");
            println!("projdim {projdim}, reg {reg}, depth S/I {depth}");
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_verify(cli: &Cli, suite: Suite, source: &Source, trials: u64, n_max: usize, ek_limit: usize) -> CmdResult {
    let format = cli.format.unwrap_or(Format::Table);
    if suite == Suite::Path {
        if source.graph.is_some() || source.family.is_some() {
            return Err(UsageError("the path suite takes --n-max, not a graph".into()));
        }
        let (checks, failure) = run_path_suite(n_max, cli.field)?;
        return Ok(report_verify(format, suite, 1, checks, Vec::new(), Vec::new(), failure));
    }
    let graphs: Vec<Graph> = match &source.family {
        Some(f) if f.is_random() => {
            (0..trials).map(|i| f.build(source.seed.wrapping_add(i))).collect::<Result<_, _>>()?
        }
        _ => vec![one_graph(source)?],
    };
    let engine = ForestEngine::new(cli.field);
    let (mut checks, mut skipped, mut notes, mut failures) = (0, Vec::new(), Vec::new(), Vec::new());
    for g in &graphs {
        match run_on_graph(suite, g, &engine, ek_limit)? {
            GraphOutcome::NotApplicable(why) => skipped.push(format!("{g}: {why}")),
            GraphOutcome::Checked { checks: c, failure, notes: n } => {
                checks += c;
                notes.extend(n.into_iter().map(|s| format!("{g}: {s}")));
                failures.extend(failure);
            }
        }
    }
    if graphs.len() == 1 && skipped.len() == 1 {
        return Err(UsageError(skipped.remove(0)));
    }
    // Report the smallest counterexample.
    let failure = failures
        .into_iter()
        .min_by_key(|f| f.graph.as_ref().map(|g| (g.n(), g.edge_count())));
    Ok(report_verify(format, suite, graphs.len(), checks, skipped, notes, failure))
}

fn report_verify(
    format: Format,
    suite: Suite,
    graphs: usize,
    checks: usize,
    skipped: Vec<String>,
    notes: Vec<String>,
    failure: Option<Failure>,
) -> Outcome {
    match format {
        Format::Json => print_json(&json!({
            "suite": suite,
            "graphs": graphs,
            "checks": checks,
            "skipped": skipped,
            "notes": notes,
            "passed": failure.is_none(),
            "counterexample": failure,
        })),
        Format::Table => {
            let name = serde_json::to_value(suite).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
            for s in &skipped {
                println!("skipped {s}");
            }
            for n in &notes {
                println!("note {n}");
            }
            match &failure {
                None if checks == 0 => println!("suite {name}: comparison only, nothing asserted"),
                None => println!("suite {name}: {checks} checks on {graphs} graph(s), all hold"),
                Some(f) => {
                    println!("suite {name}: counterexample");
                    if let Some(g) = &f.graph {
                        println!("  graph: {g}");
                    }
                    if let Some(k) = f.k {
                        println!("  k: {k}");
                    }
                    println!("  check: {}", f.check);
                    println!("  expected: {}", f.expected);
                    println!("  got: {}", f.got);
                }
            }
        }
    }
    if failure.is_some() { Outcome::Counterexample } else { Outcome::Ok }
}

fn cmd_explore_cycles(cli: &Cli, n_max: usize) -> CmdResult {
    if n_max > CYCLE_N_MAX {
        return Err(UsageError(format!("--n-max is capped at {CYCLE_N_MAX}; got {n_max}")));
    }
    let rows = cycle_question(n_max, cli.field)?;
    match cli.format.unwrap_or(Format::Table) {
        Format::Json => print_json(&rows),
        Format::Table => {
            println!("{:>3} {:>3} {:>7} {:>8}  same", "n", "k", "g(P_n)", "g(C_n)");
            for r in &rows {
                println!("{:>3} {:>3} {:>7} {:>8}  {}", r.n, r.k, r.g_path, r.g_cycle, if r.equal() { "yes" } else { "no" });
            }
        }
    }
    Ok(Outcome::Ok)
}
