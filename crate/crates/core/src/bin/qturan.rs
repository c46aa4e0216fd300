//! Command-line front end.
//!
//! Every run prints `{"config": ..., "result": ...}` where `config` is the
//! fully resolved configuration. Exit status: 0 success, 1 a verification
//! finding, 2 a usage or input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qturan::constructions::{blowup_free_construction, kk_plus_free_construction, DEFAULT_ATTEMPTS};
use qturan::graph::{read_edge_list, Graph};
use qturan::graph6::{read_graph6, write_graph6};
use qturan::hypergraph::{
    check_shadow_bound, contains_expansion, expansion, q_hyper, random_linear, shadow, transversal_design,
    HyperOptions, Hypergraph, LinearHypergraph,
};
use qturan::rational::{parse_rational, Rational};
use qturan::reduction::{check_lemma_min, check_lemma_sdf, reduce_with, Algorithm, ReductionParams};
use qturan::spectral::{q_lower_bounds, q_multipartite_exact, radius, Matrix, DEFAULT_TOL};
use qturan::substructure::{
    chromatic_number, count_cliques, edit_distance_to_turan, generalized_book_size, joint_size, joint_witness,
    max_blowup, max_kk_plus,
};
use qturan::verify::{
    run_suites, stability_probe, standard_battery, supersaturation_search, SearchMode, Suite, SuiteParams,
    SuiteRun, VerificationReport, DEFAULT_VERIFY_TOL,
};
use qturan::{Error, Family};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "qturan", version, about = "Signless Laplacian spectral extremal graph toolkit")]
struct Cli {
    /// Eigensolver residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Master seed; the SEL_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for `verify` (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Spectral radius of Q or A, with lower bounds and lemma checks.
    Spectral(SpectralArgs),
    /// Perron-vector vertex deletion (algorithm 1 or 2).
    Reduce(ReduceArgs),
    /// Substructure search.
    Find(FindArgs),
    /// Randomized constructions.
    Construct(ConstructArgs),
    /// Linear hypergraph operations.
    Hyper(HyperArgs),
    /// Verification suites.
    Verify(VerifyArgs),
    /// Edit distance to the Turán graph and the stability probe.
    Distance(DistanceArgs),
}

#[derive(Args, Debug, Serialize)]
struct GraphInput {
    /// Graph in graph6.
    #[arg(long, group = "input")]
    graph6: Option<String>,
    /// File with an edge list (`n m` header, one `u v` pair per line).
    #[arg(long, group = "input")]
    edges: Option<String>,
    /// Named family: kk-plus:k,t | split:n,k | book:k,t | turan-plus-edge:n,k | bipartite-plus-edge:n,s
    #[arg(long, group = "input")]
    family: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph, Error> {
        if let Some(s) = &self.graph6 {
            read_graph6(s)
        } else if let Some(path) = &self.edges {
            read_edge_list(&read_file(path)?)
        } else if let Some(f) = &self.family {
            f.parse::<Family>()?.build()
        } else {
            Err(usage("a graph is required: --graph6, --edges or --family"))
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct SpectralArgs {
    #[command(flatten)]
    input: GraphInput,
    /// q (signless Laplacian) or a/lambda (adjacency).
    #[arg(long, default_value = "q")]
    matrix: String,
    /// Also report q's lower bounds.
    #[arg(long)]
    bounds: bool,
    /// Also evaluate the minimum-coordinate and deletion bounds.
    #[arg(long)]
    lemmas: bool,
    /// Closed form for a complete multipartite graph, e.g. `3,2,2`; no graph needed.
    #[arg(long, conflicts_with = "input")]
    parts: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct ReduceArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, default_value = "1")]
    alg: String,
    #[arg(long)]
    gamma: String,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    /// Degree-square parameter of the monotone statistic.
    #[arg(long, default_value = "0")]
    s: String,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FindWhat {
    Blowup,
    KkPlus,
    Joint,
    Book,
    Cliques,
    Chromatic,
}

#[derive(Args, Debug, Serialize)]
struct FindArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum)]
    what: FindWhat,
    /// Parts for blowup, k for kk-plus and book, r for joint and cliques.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ConstructKind {
    BlowupFree,
    KkPlusFree,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: ConstructKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Needed for blowup-free.
    #[arg(long)]
    eps: Option<String>,
    #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
    attempts: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum HyperAction {
    /// Spectral radius q(H).
    Q,
    /// s-shadow (`--s`).
    Shadow,
    /// (r−1) q(H) against q of the 2-shadow.
    Bound,
    /// Print the hypergraph itself.
    Show,
    /// Search for the expansion of `--pattern`.
    Contains,
}

#[derive(Args, Debug, Serialize)]
struct HyperArgs {
    #[arg(value_enum)]
    action: HyperAction,
    /// Hypergraph text file (`n r m` header).
    #[arg(long, group = "hsource")]
    file: Option<String>,
    /// Transversal design `m,r`.
    #[arg(long, group = "hsource")]
    design: Option<String>,
    /// Random linear hypergraph `n,r,draws` (uses --seed).
    #[arg(long, group = "hsource")]
    random: Option<String>,
    /// Expansion of a graph6 graph to uniformity `--r`.
    #[arg(long, group = "hsource")]
    expand: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Pattern graph (graph6) for `contains`.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// Suite name, `all` for the standard battery, or `supersaturation`.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// Violation tolerance.
    #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
    violation_tol: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Supersaturation: sample instead of enumerating.
    #[arg(long)]
    sampled: bool,
}

#[derive(Args, Debug, Serialize)]
struct DistanceArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    k: usize,
    /// With --eps, run the stability probe.
    #[arg(long, requires = "eps")]
    sigma: Option<String>,
    #[arg(long, requires = "sigma")]
    eps: Option<String>,
    /// Probe forbids K_r; without it every graph counts as free.
    #[arg(long)]
    forbid_clique: Option<usize>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
}

fn rational(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

fn list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("`{s}` is not a comma-separated list"))))
        .collect()
}

/// Result of a subcommand: JSON value, optional graph for graph6 output,
/// CSV rows, and whether a finding should set exit status 1.
struct Outcome {
    result: Value,
    graph: Option<Graph>,
    csv: Option<Vec<String>>,
    finding: bool,
}

impl Outcome {
    fn value(v: impl Serialize) -> Result<Self, Error> {
        Ok(Outcome {
            result: serde_json::to_value(v).map_err(|e| usage(e.to_string()))?,
            graph: None,
            csv: None,
            finding: false,
        })
    }
}

fn run(cli: &Cli, seed: u64) -> Result<Outcome, Error> {
    let tol = cli.tol;
    match &cli.command {
        Command::Spectral(a) => {
            if let Some(p) = &a.parts {
                let sizes = list(p)?;
                return Outcome::value(json!({ "parts": sizes, "value": q_multipartite_exact(&sizes)? }));
            }
            let g = a.input.load()?;
            let matrix: Matrix = a.matrix.parse()?;
            let res = radius(&g, matrix, tol)?;
            let mut v = serde_json::to_value(&res).map_err(|e| usage(e.to_string()))?;
            if a.bounds {
                v["lower_bounds"] = json!(q_lower_bounds(&g, tol)?);
            }
            if a.lemmas {
                v["lemma_min"] = json!(check_lemma_min(&g, tol)?);
                v["lemma_sdf"] = if g.order() >= 3 { json!(check_lemma_sdf(&g, tol)?) } else { Value::Null };
            }
            Outcome::value(v)
        }
        Command::Reduce(a) => {
            let g = a.input.load()?;
            let alg: Algorithm = a.alg.parse()?;
            let mut p = ReductionParams::new(rational(&a.gamma)?, rational(&a.alpha)?, rational(&a.beta)?);
            p.s = rational(&a.s)?;
            p.tol = tol;
            let trace = reduce_with(&g, &p, alg)?;
            let mut out = Outcome::value(&trace)?;
            out.graph = Some(trace.final_graph.clone());
            Ok(out)
        }
        Command::Find(a) => {
            let g = a.input.load()?;
            let need = |what: &str| a.k.ok_or_else(|| usage(format!("--k is required for {what}")));
            let v = match a.what {
                FindWhat::Blowup => {
                    let (t, w) = max_blowup(&g, need("blowup")?)?;
                    json!({ "t": t, "witness": w })
                }
                FindWhat::KkPlus => {
                    let (t, w) = max_kk_plus(&g, need("kk-plus")?)?;
                    json!({ "t": t, "witness": w })
                }
                FindWhat::Joint => {
                    let r = need("joint")?;
                    let (size, edge) = joint_size(&g, r)?;
                    json!({ "size": size, "edge": edge, "witness": joint_witness(&g, r)? })
                }
                FindWhat::Book => {
                    let (t, w) = generalized_book_size(&g, need("book")?)?;
                    json!({ "t": t, "witness": w })
                }
                FindWhat::Cliques => json!({ "count": count_cliques(&g, need("cliques")?) }),
                FindWhat::Chromatic => json!({ "chromatic_number": chromatic_number(&g) }),
            };
            Outcome::value(v)
        }
        Command::Construct(a) => {
            let rep = match a.kind {
                ConstructKind::BlowupFree => {
                    let eps = a.eps.as_deref().ok_or_else(|| usage("--eps is required for blowup-free"))?;
                    blowup_free_construction(a.n, a.k, rational(eps)?, seed, a.attempts)?
                }
                ConstructKind::KkPlusFree => kk_plus_free_construction(a.n, a.k, seed, a.attempts)?,
            };
            let mut out = Outcome::value(&rep)?;
            out.graph = Some(rep.graph.clone());
            out.finding = !rep.pass;
            Ok(out)
        }
        Command::Hyper(a) => run_hyper(a, tol, seed),
        Command::Verify(a) => run_verify(a, tol, seed, cli.jobs),
        Command::Distance(a) => {
            let g = a.input.load()?;
            let distance = edit_distance_to_turan(&g, a.k)?;
            let (Some(sigma), Some(eps)) = (&a.sigma, &a.eps) else {
                return Outcome::value(json!({ "k": a.k, "edit_distance": distance }));
            };
            let forbid = a.forbid_clique;
            let free = move |h: &Graph| forbid.is_none_or(|r| count_cliques(h, r) == 0);
            let probe = stability_probe(&g, a.k, rational(sigma)?, rational(eps)?, &free)?;
            Outcome::value(json!({ "k": a.k, "edit_distance": distance, "probe": probe }))
        }
    }
}

fn load_hyper(a: &HyperArgs, seed: u64) -> Result<Hypergraph, Error> {
    if let Some(path) = &a.file {
        Hypergraph::from_text(&read_file(path)?)
    } else if let Some(d) = &a.design {
        let v = list(d)?;
        let [m, r] = v[..] else { return Err(usage("--design takes m,r")) };
        Ok(transversal_design(m, r)?.inner().clone())
    } else if let Some(s) = &a.random {
        let v = list(s)?;
        let [n, r, draws] = v[..] else { return Err(usage("--random takes n,r,draws")) };
        Ok(random_linear(n, r, draws, seed)?.inner().clone())
    } else if let Some(g6) = &a.expand {
        let r = a.r.ok_or_else(|| usage("--expand needs --r"))?;
        Ok(expansion(&read_graph6(g6)?, r)?.inner().clone())
    } else {
        Err(usage("a hypergraph is required: --file, --design, --random or --expand"))
    }
}

fn run_hyper(a: &HyperArgs, tol: f64, seed: u64) -> Result<Outcome, Error> {
    let h = load_hyper(a, seed)?;
    let text = h.to_text();
    match a.action {
        HyperAction::Q => {
            let opts = HyperOptions { tol, restarts: a.restarts, seed, ..Default::default() };
            Outcome::value(json!({ "linear": h.is_linear(), "q": q_hyper(&h, &opts)? }))
        }
        HyperAction::Shadow => {
            let s = shadow(&h, a.s)?;
            Outcome::value(json!({ "s": a.s, "edges": s.edge_count(), "hypergraph": s.to_text() }))
        }
        HyperAction::Bound => {
            let lin = LinearHypergraph::try_from(h)?;
            let b = check_shadow_bound(&lin, DEFAULT_VERIFY_TOL)?;
            let mut out = Outcome::value(&b)?;
            out.finding = !b.holds;
            Ok(out)
        }
        HyperAction::Show => Outcome::value(json!({
            "n": h.order(), "r": h.uniformity(), "edges": h.edge_count(), "linear": h.is_linear(), "hypergraph": text
        })),
        HyperAction::Contains => {
            let f = read_graph6(a.pattern.as_deref().ok_or_else(|| usage("contains needs --pattern"))?)?;
            let w = contains_expansion(&h, &f)?;
            Outcome::value(json!({ "found": w.is_some(), "witness": w }))
        }
    }
}

fn run_verify(a: &VerifyArgs, _tol: f64, seed: u64, jobs: usize) -> Result<Outcome, Error> {
    let params = SuiteParams {
        k: a.k,
        tol: a.violation_tol,
        seed,
        samples: a.samples,
        jobs,
        ..Default::default()
    };
    let reports: Vec<VerificationReport> = match a.suite.as_str() {
        "all" => run_suites(&standard_battery(&params), jobs)?,
        "supersaturation" => {
            let k = a.k.ok_or_else(|| usage("supersaturation needs --k"))?;
            let mode = if a.sampled { SearchMode::Sampled } else { SearchMode::Exhaustive };
            vec![supersaturation_search(a.nmax, k, mode, &params)?]
        }
        name => {
            let suite: Suite = name.parse()?;
            run_suites(&[SuiteRun::new(suite, a.nmax, params)], jobs)?
        }
    };
    let finding = reports.iter().any(|r| !r.pass);
    let mut rows = vec![VerificationReport::CSV_HEADER.to_string()];
    rows.extend(reports.iter().map(|r| r.csv_row()));
    let mut out = if reports.len() == 1 { Outcome::value(&reports[0])? } else { Outcome::value(&reports)? };
    out.csv = Some(rows);
    out.finding = finding;
    Ok(out)
}

fn render(cli: &Cli, seed: u64, seed_source: &str, out: &Outcome) -> Result<String, Error> {
    match cli.format {
        Format::Json => {
            let config = json!({
                "command": cli.command,
                "tol": cli.tol,
                "seed": seed,
                "seed_source": seed_source,
                "format": cli.format,
                "output": cli.output,
                "jobs": cli.jobs,
            });
            let doc = json!({ "config": config, "result": out.result });
            Ok(serde_json::to_string_pretty(&doc).map_err(|e| usage(e.to_string()))? + "\n")
        }
        Format::Graph6 => match &out.graph {
            Some(g) => Ok(write_graph6(g) + "\n"),
            None => Err(usage("graph6 output is only available for construct and reduce")),
        },
        Format::Csv => {
            let rows = out.csv.clone().unwrap_or_else(|| flatten_csv(&out.result));
            Ok(rows.join("\n") + "\n")
        }
    }
}

/// Top-level scalars as `key,value` rows.
fn flatten_csv(v: &Value) -> Vec<String> {
    let mut rows = vec!["key,value".to_string()];
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::Object(_) | Value::Array(_) => {}
                Value::String(s) if s.contains(['\n', ',']) => {}
                other => rows.push(format!("{k},{}", other.as_str().map(str::to_string).unwrap_or(other.to_string()))),
            }
        }
    }
    rows
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (seed, seed_source) = match std::env::var("SEL_SEED") {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) => (v, "env"),
            Err(_) => {
                eprintln!("error: SEL_SEED=`{s}` is not a 64-bit unsigned integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => (cli.seed, "flag"),
    };
    let out = match run(&cli, seed).and_then(|o| render(&cli, seed, seed_source, &o).map(|s| (o.finding, s))) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (finding, text) = out;
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if finding { 1 } else { 0 })
}
