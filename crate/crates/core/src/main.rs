use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use satlab::cache::{Cache, CacheKey};
use satlab::constructions::{self as cons, ConstructionError};
use satlab::io::{self, graph6, Input};
use satlab::report::{self, Table};
use satlab::saturation::{is_saturated, is_tsat_witness, is_twin_free_saturated, saturation_report};
use satlab::search::{self, EnumerationBudget, ExtremalRecord, Kind, Params};
use satlab::systems::{check_maximal, check_system, SystemInstance};
use satlab::Graph;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_NONEXISTENT: u8 = 4;

#[derive(Parser)]
#[command(name = "satlab", version, about = "Twin-free saturated graphs, host/family systems and exhaustive oracles")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and print it as graph6 or system JSON.
    Construct(ConstructArgs),
    /// Check a graph6/sparse6 graph or a system JSON document.
    Verify(VerifyArgs),
    /// Run an exhaustive oracle and print its record as one JSON line.
    Search(SearchArgs),
    /// Print a comparison table of searched values, closed forms and constructions.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ehm,
    Twinfree,
    Named,
    Shattering,
    System,
    Lifted,
    TsatUpper,
    E34,
    E35,
    TsatMinDeg,
}

#[derive(Args)]
struct ConstructArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Sporadic graph name for `named`.
    #[arg(long)]
    name: Option<String>,
    /// Shattering set size for `shattering`.
    #[arg(long)]
    size: Option<usize>,
    /// Re-run the matching predicate before printing.
    #[arg(long)]
    verify: bool,
    /// Emit graphs as sparse6.
    #[arg(long)]
    sparse6: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input file; standard input when absent or `-`.
    input: Option<String>,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long)]
    twin_free: bool,
    /// Minimum degree and twin condition for the degree-constrained variant.
    #[arg(long)]
    t: Option<usize>,
    /// Require maximality of a system.
    #[arg(long)]
    maximal: bool,
}

#[derive(Args)]
struct SearchArgs {
    kind: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    no_cache: bool,
    /// Cache file; defaults to $SATLAB_CACHE.
    #[arg(long)]
    cache: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    budget_vertices: Option<usize>,
    #[arg(long)]
    budget_filtered_vertices: Option<usize>,
    #[arg(long)]
    budget_edges: Option<usize>,
    #[arg(long)]
    budget_candidates: Option<u64>,
    #[arg(long)]
    budget_seconds: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> EnumerationBudget {
        let d = EnumerationBudget::default();
        EnumerationBudget {
            max_vertices: self.budget_vertices.unwrap_or(d.max_vertices),
            max_vertices_filtered: self.budget_filtered_vertices.unwrap_or(d.max_vertices_filtered),
            max_edges: self.budget_edges.unwrap_or(d.max_edges),
            max_candidates: self.budget_candidates.unwrap_or(d.max_candidates),
            wall_time_secs: self.budget_seconds.unwrap_or(d.wall_time_secs),
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    table: String,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, default_value_t = 3)]
    t: usize,
    /// Largest n (existence), m (s_rt) or s (e_rt).
    #[arg(long)]
    max: Option<usize>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

/// Failure carrying its exit code.
struct Fail(u8, String);

impl From<ConstructionError> for Fail {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Nonexistent { .. } => Fail(EXIT_NONEXISTENT, e.to_string()),
            _ => Fail(EXIT_USAGE, e.to_string()),
        }
    }
}

impl From<search::SearchError> for Fail {
    fn from(e: search::SearchError) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

impl From<satlab::systems::SystemError> for Fail {
    fn from(e: satlab::systems::SystemError) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

fn need(v: Option<usize>, name: &str) -> Result<usize, Fail> {
    v.ok_or_else(|| Fail(EXIT_USAGE, format!("missing --{name}")))
}

enum Built {
    Graph(Graph),
    System(SystemInstance),
    Lines(Vec<String>),
}

fn construct(a: &ConstructArgs) -> Result<String, Fail> {
    let (built, ok) = match a.family {
        Family::Ehm => {
            let r = need(a.r, "r")?;
            let g = cons::ehm_graph(need(a.n, "n")?, r)?;
            let ok = !a.verify || is_saturated(&g, r);
            (Built::Graph(g), ok)
        }
        Family::Twinfree => {
            let r = need(a.r, "r")?;
            let g = cons::twin_free_saturated(need(a.n, "n")?, r)?;
            let ok = !a.verify || is_twin_free_saturated(&g, r);
            (Built::Graph(g), ok)
        }
        Family::Named => {
            let name = a.name.as_deref().ok_or_else(|| Fail(EXIT_USAGE, "missing --name".into()))?;
            let which: cons::NamedGraph = name.parse()?;
            let g = which.graph();
            let ok = !a.verify || is_twin_free_saturated(&g, which.saturated_r());
            (Built::Graph(g), ok)
        }
        Family::Shattering => {
            let s = cons::shattering_set(need(a.k, "k")?, a.size)?;
            let ok = !a.verify || s.shatters_all_pairs();
            (Built::Lines(s.sequences.iter().map(|&x| s.render(x)).collect()), ok)
        }
        Family::System | Family::Lifted => {
            let (t, l) = (need(a.t, "t")?, need(a.l, "l")?);
            let inst = match a.family {
                Family::System => cons::system_family(t, l)?,
                _ => cons::lifted_family(t, l)?,
            };
            let ok = !a.verify || system_holds(&inst)?;
            (Built::System(inst), ok)
        }
        Family::TsatUpper => {
            let w = cons::tsat_upper_witness(need(a.n, "n")?)?;
            let ok = !a.verify || (is_twin_free_saturated(&w.graph, 3) && w.graph.min_degree() == Some(6));
            (Built::Graph(w.graph), ok)
        }
        Family::E34 | Family::E35 => {
            let s = need(a.s, "s")?;
            let w = match a.family {
                Family::E34 => cons::e34_upper_witness(s)?,
                _ => cons::e35_upper_witness(s)?,
            };
            let ok = !a.verify || system_holds(&w.system)?;
            (Built::System(w.system), ok)
        }
        Family::TsatMinDeg => {
            let (n, r, t) = (need(a.n, "n")?, need(a.r, "r")?, need(a.t, "t")?);
            let w = cons::tsat_min_deg_upper_witness(n, r, t)?;
            let ok = !a.verify || is_tsat_witness(&w.graph, r, t);
            (Built::Graph(w.graph), ok)
        }
    };
    if !ok {
        return Err(Fail(EXIT_VERIFY, "construction failed its own verification".into()));
    }
    Ok(match built {
        Built::Graph(g) if a.sparse6 => graph6::encode_sparse6(&g),
        Built::Graph(g) => graph6::encode(&g),
        Built::System(s) => io::system_to_json(&s),
        Built::Lines(l) => l.join("\n"),
    })
}

/// Valid, and maximal whenever the system claims it.
fn system_holds(inst: &SystemInstance) -> Result<bool, Fail> {
    let rep = check_system(inst)?;
    Ok(rep.is_valid() && (!inst.maximal || check_maximal(inst)?.0))
}

fn read_input(path: Option<&str>) -> Result<String, Fail> {
    let mut text = String::new();
    let res = match path {
        None | Some("-") => std::io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(p) => std::fs::read_to_string(p).map(|s| text = s),
    };
    res.map_err(|e| Fail(EXIT_USAGE, format!("cannot read input: {e}")))?;
    Ok(text)
}

fn verify(a: &VerifyArgs) -> Result<(String, bool), Fail> {
    let text = read_input(a.input.as_deref())?;
    let input = io::parse_input(&text).map_err(|e| Fail(EXIT_PARSE, format!("parse error: {e}")))?;
    let (report, pass) = match input {
        Input::Graph(g) => {
            let sat = saturation_report(&g, a.r).map_err(|e| Fail(EXIT_USAGE, e.to_string()))?;
            let twins: Vec<Vec<usize>> = g.twin_partition().twin_classes().cloned().collect();
            let mut pass = sat.is_saturated;
            let mut report = json!({
                "kind": "graph",
                "n": g.n(),
                "edges": g.edge_count(),
                "r": a.r,
                "saturation": sat,
                "twin_classes": twins,
            });
            if a.twin_free {
                pass &= twins.is_empty();
                report["twin_free"] = json!(twins.is_empty());
            }
            if let Some(t) = a.t {
                let ok = is_tsat_witness(&g, a.r, t);
                pass &= ok;
                report["tsat_witness"] = json!({ "t": t, "passed": ok, "min_degree": g.min_degree() });
            }
            (report, pass)
        }
        Input::System(inst) => {
            let rep = check_system(&inst)?;
            let mut pass = rep.is_valid();
            let mut report = json!({
                "kind": "system",
                "m": inst.m(),
                "sets": inst.family.total(),
                "r": inst.r,
                "t": inst.t,
                "primed": inst.primed,
                "check": rep,
            });
            if a.maximal {
                let (ok, edge) = if pass { check_maximal(&inst)? } else { (false, None) };
                pass &= ok;
                report["maximal"] = json!({ "passed": ok, "violating_edge": edge });
            }
            (report, pass)
        }
    };
    let mut report = report;
    report["pass"] = json!(pass);
    Ok((report.to_string(), pass))
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    #[serde(flatten)]
    record: &'a ExtremalRecord,
    cached: bool,
}

fn run_search(a: &SearchArgs) -> Result<String, Fail> {
    let kind: Kind = a.kind.parse()?;
    let params = Params { n: a.n, m: a.m, s: a.s, r: a.r, t: a.t, k: a.k };
    let budget = a.budget.budget();
    budget.validate()?;
    let key = CacheKey::new(kind, params, &budget);
    let mut cache = if a.no_cache {
        None
    } else {
        let path = a.cache.clone().map(Into::into).unwrap_or_else(Cache::default_path);
        match Cache::open(&path) {
            Ok(c) => Some(c),
            Err(e) => {
                log::warn!("{e}; continuing without cache");
                None
            }
        }
    };
    if let Some(rec) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(serde_json::to_string(&SearchOutput { record: rec, cached: true }).expect("serializes"));
    }
    let rec = search::run(kind, &params, &budget)?;
    if let Some(c) = cache.as_mut() {
        if let Err(e) = c.insert(key, rec.clone()) {
            log::warn!("{e}");
        }
    }
    Ok(serde_json::to_string(&SearchOutput { record: &rec, cached: false }).expect("serializes"))
}

fn run_report(a: &ReportArgs) -> Result<String, Fail> {
    let table: Table = a.table.parse()?;
    let budget = a.budget.budget();
    let rep = match table {
        Table::Existence => report::existence_table(a.r, a.max.unwrap_or(8), &budget)?,
        Table::SRt => report::s_table(a.t, 3..=a.max.unwrap_or(7), &budget)?,
        Table::ERt => report::e_table(1..=a.max.unwrap_or(3), &budget)?,
    };
    Ok(if a.json { serde_json::to_string(&rep).expect("serializes") } else { rep.render() })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.cmd {
        Command::Construct(a) => construct(a).map(|s| (s, true)),
        Command::Verify(a) => verify(a),
        Command::Search(a) => run_search(a).map(|s| (s, true)),
        Command::Report(a) => run_report(a).map(|s| (s, true)),
    };
    match result {
        Ok((out, pass)) => {
            println!("{}", out.trim_end());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
