//! Exhaustive and sampled checks of the spectral inequalities.
//!
//! Graph suites stream every labeled graph on `n ≤ 7` vertices (all
//! edge-subset masks). Several suites can share one enumeration, in which
//! case spectral solves and clique counts are computed at most once per
//! graph. Reports are deterministic apart from `runtime_seconds`.

use crate::error::{invalid, Error, Result};
use crate::graph::{turan, turan_part_sizes, Graph};
use crate::graph6::{read_graph6, write_graph6};
use crate::hypergraph::{check_shadow_bound, random_linear, transversal_design, LinearHypergraph};
use crate::rational::{serde_opt_rational, to_f64, Rational};
use crate::reduction::{lemma_min_with, lemma_sdf_with};
use crate::rng::{derive_seed, SplitMix64};
use crate::spectral::{lambda_radius, q_multipartite_exact, q_radius, SpectralResult, DEFAULT_TOL};
use crate::substructure::{count_cliques, edit_distance_to_turan, EDIT_DISTANCE_MAX_N};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

/// Violations must exceed this to count.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-8;

/// Spectral equality is decided within this tolerance.
pub const EQUALITY_TOL: f64 = 1e-9;

/// Largest order enumerated without a filter.
pub const FULL_ENUMERATION_MAX_N: usize = 7;

/// At most this many failure records are kept; `failure_count` has the total.
pub const MAX_FAILURE_RECORDS: usize = 1000;

const ISOMORPHISM_MAX_N: usize = 8;
const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `K_{k+1}`-free graphs have `q ≤ q(T_{n,k})`. Equality only at `T_{n,k}`
    /// for `k ≥ 3`; for `k = 2` every `K_{s,n−s}` has `q = n` and attains it.
    QTuran,
    /// `#K_{k+1} ≥ (λ/n − 1 + 1/k)·k(k−1)/(k+1)·(n/k)^{k+1}`.
    Counting,
    /// `K_{k+1}`-free graphs have `Σd² ≤ 2(1 − 1/k)mn`.
    DegreePower,
    /// `q ≥ Σd²/m`.
    QDegree,
    /// `λ² ≥ Σd²/n`.
    Hofmeister,
    /// Minimum Perron coordinate bound, connected graphs.
    LemmaMin,
    /// Vertex deletion bound, connected graphs on at least 3 vertices.
    LemmaSdf,
    /// `4m/n ≤ 2λ ≤ q ≤ 2Δ`.
    Bounds,
    /// `(r − 1) q(H) ≤ q(∂H)` on transversal designs and random linear 3-graphs.
    Shadow,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::QTuran,
        Suite::Counting,
        Suite::DegreePower,
        Suite::QDegree,
        Suite::Hofmeister,
        Suite::LemmaMin,
        Suite::LemmaSdf,
        Suite::Bounds,
        Suite::Shadow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::QTuran => "q-turan",
            Suite::Counting => "counting",
            Suite::DegreePower => "degree-power",
            Suite::QDegree => "q-degree",
            Suite::Hofmeister => "hofmeister",
            Suite::LemmaMin => "lemma-min",
            Suite::LemmaSdf => "lemma-sdf",
            Suite::Bounds => "bounds",
            Suite::Shadow => "shadow",
        }
    }

    pub fn needs_k(self) -> bool {
        matches!(self, Suite::QTuran | Suite::Counting | Suite::DegreePower)
    }

    fn min_order(self) -> usize {
        match self {
            Suite::LemmaMin => 2,
            Suite::LemmaSdf => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub k: Option<usize>,
    #[serde(with = "serde_opt_rational", default)]
    pub eps: Option<Rational>,
    #[serde(with = "serde_opt_rational", default)]
    pub sigma: Option<Rational>,
    pub tol: f64,
    pub equality_tol: f64,
    pub seed: u64,
    /// Random instances for sampled suites.
    pub samples: usize,
    /// Worker threads; 0 lets rayon decide. Not part of the report.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            k: None,
            eps: None,
            sigma: None,
            tol: DEFAULT_VERIFY_TOL,
            equality_tol: EQUALITY_TOL,
            seed: 0,
            samples: 100,
            jobs: 0,
        }
    }
}

impl SuiteParams {
    pub fn with_k(k: usize) -> Self {
        SuiteParams { k: Some(k), ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceFormat {
    Graph6,
    /// Text with an `n r m` header.
    Hypergraph,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub instance: String,
    pub format: InstanceFormat,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// Positive when the inequality holds with room.
    pub slack: f64,
    /// Set when the instance is a failure.
    pub detail: Option<String>,
}

impl Evaluation {
    fn key(&self) -> (f64, &str) {
        (self.slack, &self.instance)
    }

    fn tighter_than(&self, other: &Evaluation) -> bool {
        let (a, b) = (self.key(), other.key());
        a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub n_min: usize,
    pub n_max: usize,
    pub params: SuiteParams,
    /// Instances streamed through the suite's filter.
    pub instances: u64,
    /// Instances where the inequality has content (filters passed, not vacuous).
    pub applicable: u64,
    pub failure_count: u64,
    /// Sorted by instance string.
    pub failures: Vec<Evaluation>,
    /// Applicable instance of smallest slack, ties to the smallest string.
    pub extremal: Option<Evaluation>,
    /// Suite-specific statistic, see the producing function.
    pub statistic: Option<f64>,
    pub runtime_seconds: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub const CSV_HEADER: &'static str = "suite,n_min,n_max,k,instances,applicable,failures,min_slack,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.suite,
            self.n_min,
            self.n_max,
            self.params.k.map(|k| k.to_string()).unwrap_or_default(),
            self.instances,
            self.applicable,
            self.failure_count,
            self.extremal.as_ref().map(|e| e.slack.to_string()).unwrap_or_default(),
            self.pass
        )
    }
}

/// Partial tallies; `merge` is associative so chunks can be combined in any
/// grouping.
#[derive(Clone, Debug, Default)]
struct Tally {
    instances: u64,
    applicable: u64,
    failure_count: u64,
    failures: Vec<Evaluation>,
    extremal: Option<Evaluation>,
}

impl Tally {
    fn record(&mut self, e: Option<Evaluation>) {
        self.instances += 1;
        let Some(e) = e else { return };
        self.applicable += 1;
        if e.detail.is_some() {
            self.failure_count += 1;
            self.failures.push(e.clone());
            self.trim();
        }
        if self.extremal.as_ref().is_none_or(|x| e.tighter_than(x)) {
            self.extremal = Some(e);
        }
    }

    fn trim(&mut self) {
        if self.failures.len() > MAX_FAILURE_RECORDS {
            self.failures.sort_by(|a, b| a.instance.cmp(&b.instance));
            self.failures.truncate(MAX_FAILURE_RECORDS);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.applicable += other.applicable;
        self.failure_count += other.failure_count;
        self.failures.extend(other.failures);
        self.trim();
        self.extremal = match (self.extremal, other.extremal) {
            (Some(a), Some(b)) => Some(if b.tighter_than(&a) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    fn into_report(mut self, suite: Suite, n_min: usize, n_max: usize, params: &SuiteParams, secs: f64) -> VerificationReport {
        self.failures.sort_by(|a, b| a.instance.cmp(&b.instance));
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.name().to_string(),
            n_min,
            n_max,
            params: params.clone(),
            instances: self.instances,
            applicable: self.applicable,
            pass: self.failure_count == 0,
            failure_count: self.failure_count,
            failures: self.failures,
            extremal: self.extremal,
            statistic: None,
            runtime_seconds: secs,
        }
    }
}

/// Every labeled graph on `n` vertices, optionally filtered. `n ≤ 7`
/// enumerates freely; `n = 8` needs a filter.
pub fn enumerate_graphs<'a>(
    n: usize,
    filter: Option<&'a (dyn Fn(&Graph) -> bool + Sync)>,
) -> Result<impl Iterator<Item = Graph> + 'a> {
    check_profile(n, filter.is_some())?;
    let total = 1u64 << (n * n.saturating_sub(1) / 2);
    Ok((0..total).filter_map(move |mask| {
        let g = Graph::from_pair_mask(n, mask).expect("mask within range");
        filter.is_none_or(|f| f(&g)).then_some(g)
    }))
}

fn check_profile(n: usize, filtered: bool) -> Result<()> {
    if n <= FULL_ENUMERATION_MAX_N || (n == FULL_ENUMERATION_MAX_N + 1 && filtered) {
        Ok(())
    } else {
        Err(Error::ProfileLimit {
            what: format!("enumeration of all graphs on {n} vertices"),
            limit: format!("n <= {FULL_ENUMERATION_MAX_N}, or n = 8 with a filter"),
        })
    }
}

/// Solves and counts shared by every suite looking at the same graph.
struct Cached<'a> {
    g: &'a Graph,
    q: OnceCell<Result<SpectralResult>>,
    lambda: OnceCell<Result<SpectralResult>>,
    connected: OnceCell<bool>,
    cliques: [OnceCell<u64>; 8],
}

impl<'a> Cached<'a> {
    fn new(g: &'a Graph) -> Self {
        Cached {
            g,
            q: OnceCell::new(),
            lambda: OnceCell::new(),
            connected: OnceCell::new(),
            cliques: Default::default(),
        }
    }

    fn q(&self) -> std::result::Result<&SpectralResult, String> {
        self.q.get_or_init(|| q_radius(self.g, DEFAULT_TOL)).as_ref().map_err(|e| e.to_string())
    }

    fn lambda(&self) -> std::result::Result<&SpectralResult, String> {
        self.lambda
            .get_or_init(|| lambda_radius(self.g, DEFAULT_TOL))
            .as_ref()
            .map_err(|e| e.to_string())
    }

    fn connected(&self) -> bool {
        *self.connected.get_or_init(|| self.g.is_connected())
    }

    fn cliques(&self, r: usize) -> u64 {
        match self.cliques.get(r) {
            Some(cell) => *cell.get_or_init(|| count_cliques(self.g, r)),
            None => count_cliques(self.g, r),
        }
    }
}

/// Per-order data a suite needs once.
#[derive(Clone, Debug)]
struct OrderData {
    turan_q: Option<f64>,
    turan: Option<Graph>,
}

fn order_data(suite: Suite, n: usize, params: &SuiteParams) -> Result<OrderData> {
    if suite != Suite::QTuran {
        return Ok(OrderData { turan_q: None, turan: None });
    }
    let k = params.k.expect("checked");
    let sizes: Vec<usize> = turan_part_sizes(n, k).into_iter().filter(|&s| s > 0).collect();
    Ok(OrderData {
        turan_q: Some(if n == 0 { 0.0 } else { q_multipartite_exact(&sizes)? }),
        turan: Some(turan(n, k)?.graph),
    })
}

fn eval(g: &Graph, lhs: f64, rhs: f64, slack: f64, detail: Option<String>) -> Option<Evaluation> {
    Some(Evaluation {
        instance: write_graph6(g),
        format: InstanceFormat::Graph6,
        n: g.order(),
        lhs,
        rhs,
        slack,
        detail,
    })
}

fn solver_failure(g: &Graph, msg: String) -> Option<Evaluation> {
    eval(g, f64::NAN, f64::NAN, f64::NEG_INFINITY, Some(format!("solver: {msg}")))
}

macro_rules! solve {
    ($g:expr, $e:expr) => {
        match $e {
            Ok(r) => r,
            Err(msg) => return (true, solver_failure($g, msg)),
        }
    };
}

/// Evaluates one graph. Returns whether the graph passed the suite's
/// filter and the evaluation when the inequality applies.
fn evaluate_graph(suite: Suite, c: &Cached, params: &SuiteParams, data: &OrderData) -> (bool, Option<Evaluation>) {
    let g = c.g;
    let (n, m) = (g.order(), g.edge_count());
    let tol = params.tol;
    let fail_if = |bad: bool, what: &str| bad.then(|| what.to_string());
    match suite {
        Suite::QTuran => {
            let k = params.k.expect("checked");
            if c.cliques(k + 1) > 0 {
                return (false, None);
            }
            let q = solve!(g, c.q()).value;
            let qt = data.turan_q.expect("q-turan data");
            let slack = qt - q;
            let mut detail = fail_if(q > qt + params.equality_tol, "q exceeds q(T_{n,k})");
            if detail.is_none() && slack.abs() <= params.equality_tol {
                let t = data.turan.as_ref().expect("q-turan data");
                if !is_extremal_shape(g, t, params.k.unwrap()) {
                    detail = Some("equality at a graph outside the extremal family".into());
                }
            }
            (true, eval(g, q, qt, slack, detail))
        }
        Suite::Counting => {
            let k = params.k.expect("checked") as f64;
            let lambda = solve!(g, c.lambda()).value;
            let coeff = lambda / n as f64 - 1.0 + 1.0 / k;
            if coeff <= 0.0 {
                return (true, None);
            }
            let bound = coeff * (k * (k - 1.0) / (k + 1.0)) * (n as f64 / k).powi(k as i32 + 1);
            let count = c.cliques(params.k.unwrap() + 1) as f64;
            let slack = count - bound;
            (true, eval(g, count, bound, slack, fail_if(slack < -tol, "clique count below the bound")))
        }
        Suite::DegreePower => {
            let k = params.k.expect("checked");
            if c.cliques(k + 1) > 0 {
                return (false, None);
            }
            let s = g.degree_square_sum() as u128;
            let exact_rhs = 2 * (k as u128 - 1) * m as u128 * n as u128;
            let rhs = exact_rhs as f64 / k as f64;
            let bad = k as u128 * s > exact_rhs;
            (true, eval(g, s as f64, rhs, rhs - s as f64, fail_if(bad, "degree square sum above the bound")))
        }
        Suite::QDegree => {
            if m == 0 {
                return (true, None);
            }
            let q = solve!(g, c.q()).value;
            let rhs = g.degree_square_sum() as f64 / m as f64;
            let slack = q - rhs;
            (true, eval(g, q, rhs, slack, fail_if(slack < -tol, "q below the degree square average")))
        }
        Suite::Hofmeister => {
            let l = solve!(g, c.lambda()).value;
            let rhs = g.degree_square_sum() as f64 / n as f64;
            let slack = l * l - rhs;
            (true, eval(g, l * l, rhs, slack, fail_if(slack < -tol, "lambda^2 below the degree square mean")))
        }
        Suite::LemmaMin => {
            if n < 2 || !c.connected() {
                return (false, None);
            }
            let res = solve!(g, c.q());
            let chk = lemma_min_with(g, res);
            (true, eval(g, chk.lhs, chk.rhs, chk.slack, fail_if(chk.slack < -tol, "minimum coordinate bound violated")))
        }
        Suite::LemmaSdf => {
            if n < 3 || !c.connected() {
                return (false, None);
            }
            let res = solve!(g, c.q());
            let u = crate::spectral::perron_min_vertex(res);
            let sub = g.delete_vertex(u).expect("vertex in range");
            let q_minus = solve!(g, q_radius(&sub, DEFAULT_TOL).map_err(|e| e.to_string())).value;
            let chk = solve!(g, lemma_sdf_with(g, res, q_minus).map_err(|e| e.to_string()));
            (true, eval(g, chk.lhs, chk.rhs, chk.slack, fail_if(chk.slack < -tol, "deletion bound violated")))
        }
        Suite::Bounds => {
            let q = solve!(g, c.q()).value;
            let l = solve!(g, c.lambda()).value;
            let chain = [4.0 * m as f64 / n as f64, 2.0 * l, q, 2.0 * g.max_degree() as f64];
            let (i, slack) = chain
                .windows(2)
                .map(|w| w[1] - w[0])
                .enumerate()
                .fold((0, f64::INFINITY), |acc, (i, s)| if s < acc.1 { (i, s) } else { acc });
            let names = ["4m/n <= 2 lambda", "2 lambda <= q", "q <= 2 max degree"];
            (true, eval(g, chain[i], chain[i + 1], slack, fail_if(slack < -tol, names[i])))
        }
        Suite::Shadow => unreachable!("shadow is not a graph suite"),
    }
}

/// `T_{n,k}` itself, or for `k = 2` any complete bipartite `K_{s,n−s}`.
pub fn is_extremal_shape(g: &Graph, turan_graph: &Graph, k: usize) -> bool {
    if is_isomorphic(g, turan_graph).unwrap_or(false) {
        return true;
    }
    let n = g.order();
    k == 2
        && (1..=n / 2).any(|s| {
            s * (n - s) == g.edge_count()
                && is_isomorphic(g, &Graph::complete_bipartite(s, n - s).expect("small")).unwrap_or(false)
        })
}

/// A suite together with its order range and parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteRun {
    pub suite: Suite,
    pub n_max: usize,
    pub params: SuiteParams,
}

impl SuiteRun {
    pub fn new(suite: Suite, n_max: usize, params: SuiteParams) -> Self {
        SuiteRun { suite, n_max, params }
    }

    fn validate(&self) -> Result<()> {
        if self.suite.needs_k() && self.params.k.is_none_or(|k| k < 1) {
            return Err(invalid(format!("suite {} needs k >= 1", self.suite)));
        }
        if self.suite == Suite::Counting && self.params.k.is_some_and(|k| k < 2) {
            return Err(invalid("counting suite needs k >= 2"));
        }
        if self.suite == Suite::Shadow {
            if self.n_max < 3 || self.n_max > crate::graph::MAX_VERTICES {
                return Err(invalid("shadow suite needs 3 <= n_max <= vertex limit"));
            }
            return Ok(());
        }
        check_profile(self.n_max, false)
    }
}

pub fn run_suite(suite: Suite, n_max: usize, params: &SuiteParams) -> Result<VerificationReport> {
    let mut reports = run_suites(&[SuiteRun::new(suite, n_max, params.clone())], params.jobs)?;
    Ok(reports.remove(0))
}

/// Runs several suites over one shared enumeration. Reports come back in
/// input order.
pub fn run_suites(runs: &[SuiteRun], jobs: usize) -> Result<Vec<VerificationReport>> {
    for r in runs {
        r.validate()?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let graph_runs: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].suite != Suite::Shadow).collect();
    let n_top = graph_runs.iter().map(|&i| runs[i].n_max).max().unwrap_or(0);

    let mut tallies: Vec<Tally> = vec![Tally::default(); runs.len()];
    for n in 1..=n_top {
        let active: Vec<usize> = graph_runs
            .iter()
            .copied()
            .filter(|&i| runs[i].n_max >= n && n >= runs[i].suite.min_order())
            .collect();
        if active.is_empty() {
            continue;
        }
        let data = active
            .iter()
            .map(|&i| order_data(runs[i].suite, n, &runs[i].params))
            .collect::<Result<Vec<_>>>()?;
        let total = 1u64 << (n * (n - 1) / 2);
        let chunks = total.div_ceil(CHUNK);
        let part = pool.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut local: Vec<Tally> = vec![Tally::default(); active.len()];
                    for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                        let g = Graph::from_pair_mask(n, mask).expect("mask within range");
                        let cache = Cached::new(&g);
                        for (j, &i) in active.iter().enumerate() {
                            let (passed, e) = evaluate_graph(runs[i].suite, &cache, &runs[i].params, &data[j]);
                            if passed {
                                local[j].record(e);
                            }
                        }
                    }
                    local
                })
                .reduce(
                    || vec![Tally::default(); active.len()],
                    |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
                )
        });
        for (j, t) in part.into_iter().enumerate() {
            let i = active[j];
            tallies[i] = std::mem::take(&mut tallies[i]).merge(t);
        }
    }
    let graph_secs = start.elapsed().as_secs_f64();

    let mut out = Vec::with_capacity(runs.len());
    for (i, r) in runs.iter().enumerate() {
        if r.suite == Suite::Shadow {
            out.push(run_shadow(r.n_max, &r.params)?);
        } else {
            let t = std::mem::take(&mut tallies[i]);
            out.push(t.into_report(r.suite, r.suite.min_order(), r.n_max, &r.params, graph_secs));
        }
    }
    Ok(out)
}

fn shadow_eval(h: &LinearHypergraph, design: bool, params: &SuiteParams) -> Result<Evaluation> {
    let b = check_shadow_bound(h, params.tol)?;
    let slack = b.rhs - b.lhs;
    let detail = if !b.holds {
        Some("(r-1) q(H) exceeds q of the shadow".to_string())
    } else if design && slack.abs() > 1e-6 {
        Some("transversal design is not tight".to_string())
    } else if !b.hyper_converged || !b.shadow_converged {
        Some("solver did not converge".to_string())
    } else {
        None
    };
    Ok(Evaluation {
        instance: h.to_text(),
        format: InstanceFormat::Hypergraph,
        n: h.order(),
        lhs: b.lhs,
        rhs: b.rhs,
        slack,
        detail,
    })
}

/// Designs with `m ∈ {2, 3, 5, 7}` and every `r ≤ m + 1`, then
/// `params.samples` random linear 3-graphs on 6 to `n_max` vertices.
/// `statistic` is the largest `|slack|` over the designs.
fn run_shadow(n_max: usize, params: &SuiteParams) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut worst_design = 0.0f64;
    for m in [2usize, 3, 5, 7] {
        for r in 2..=m + 1 {
            let e = shadow_eval(&transversal_design(m, r)?, true, params)?;
            worst_design = worst_design.max(e.slack.abs());
            t.record(Some(e));
        }
    }
    let lo = 6.min(n_max);
    for i in 0..params.samples {
        let n = lo + i % (n_max - lo + 1);
        let h = random_linear(n, 3, 3 * n, derive_seed(params.seed, i as u64))?;
        t.record(Some(shadow_eval(&h, false, params)?));
    }
    let mut rep = t.into_report(Suite::Shadow, lo, n_max, params, start.elapsed().as_secs_f64());
    rep.statistic = Some(worst_design);
    Ok(rep)
}

/// Re-evaluates one recorded instance from its string form.
pub fn replay(suite: Suite, params: &SuiteParams, record: &Evaluation) -> Result<Option<Evaluation>> {
    match record.format {
        InstanceFormat::Graph6 => {
            let g = read_graph6(&record.instance)?;
            SuiteRun::new(suite, g.order().max(suite.min_order()).min(FULL_ENUMERATION_MAX_N), params.clone())
                .validate()?;
            let data = order_data(suite, g.order(), params)?;
            Ok(evaluate_graph(suite, &Cached::new(&g), params, &data).1)
        }
        InstanceFormat::Hypergraph => {
            let h = LinearHypergraph::from_text(&record.instance)?;
            let design = [2usize, 3, 5, 7].iter().any(|&m| {
                (2..=m + 1).any(|r| transversal_design(m, r).is_ok_and(|d| d == h))
            });
            Ok(Some(shadow_eval(&h, design, params)?))
        }
    }
}

/// Brute-force isomorphism with a degree filter, `n ≤ 8`. Different orders
/// are simply not isomorphic.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    let n = g1.order();
    if n != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    if n > ISOMORPHISM_MAX_N {
        return Err(Error::ProfileLimit {
            what: format!("isomorphism test on {n} vertices"),
            limit: format!("n <= {ISOMORPHISM_MAX_N}"),
        });
    }
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let (mut s1, mut s2) = (d1.clone(), d2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(false);
    }
    fn extend(g1: &Graph, g2: &Graph, d1: &[usize], d2: &[usize], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == g1.order() {
            return true;
        }
        for w in 0..g2.order() {
            if used[w] || d1[v] != d2[w] {
                continue;
            }
            if (0..v).all(|u| g1.has_edge(u, v) == g2.has_edge(map[u], w)) {
                map.push(w);
                used[w] = true;
                if extend(g1, g2, d1, d2, map, used) {
                    return true;
                }
                used[w] = false;
                map.pop();
            }
        }
        false
    }
    Ok(extend(g1, g2, &d1, &d2, &mut Vec::new(), &mut vec![false; n]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Sampled,
}

/// Clique supersaturation search: among graphs with `q > 2(1 − 1/k)n`,
/// the smallest `#K_{k+1} / (n/k)^{k−1}` is the report's `statistic` and
/// its extremal instance. The report has `applicable` qualifying graphs.
/// No lower-order constant is known, so only a qualifying graph with no
/// `K_{k+1}` at all is recorded as a failure.
///
/// Exhaustive mode covers every graph on `n ≤ 7` vertices; sampled mode
/// draws `params.samples` graphs on `n ≤ 24` vertices with edge density
/// uniform in `[1 − 1/k, 1)`.
pub fn supersaturation_search(n: usize, k: usize, mode: SearchMode, params: &SuiteParams) -> Result<VerificationReport> {
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    let start = Instant::now();
    let threshold = 2.0 * (1.0 - 1.0 / k as f64) * n as f64;
    let scale = (n as f64 / k as f64).powi(k as i32 - 1);
    let check = |g: &Graph| -> Option<Evaluation> {
        let q = match q_radius(g, DEFAULT_TOL) {
            Ok(r) => r.value,
            Err(e) => return solver_failure(g, e.to_string()),
        };
        if q <= threshold + params.tol {
            return None;
        }
        let count = count_cliques(g, k + 1);
        let detail = (count == 0).then(|| format!("q = {q} above the threshold with no K_{}", k + 1));
        eval(g, count as f64, scale, count as f64 / scale, detail)
    };
    let mut t = Tally::default();
    match mode {
        SearchMode::Exhaustive => {
            for g in enumerate_graphs(n, None)? {
                t.record(check(&g));
            }
        }
        SearchMode::Sampled => {
            if n > 24 {
                return Err(Error::ProfileLimit { what: format!("sampled search on {n} vertices"), limit: "n <= 24".into() });
            }
            let low = 1.0 - 1.0 / k as f64;
            for i in 0..params.samples {
                let mut rng = SplitMix64::new(derive_seed(params.seed, i as u64));
                let p = low + (1.0 - low) * rng.next_f64();
                let mut g = Graph::empty(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.next_f64() < p {
                            g.add_edge(u, v);
                        }
                    }
                }
                t.record(check(&g));
            }
        }
    }
    let mut params = params.clone();
    params.k = Some(k);
    let mut rep = t.into_report(Suite::Counting, n, n, &params, start.elapsed().as_secs_f64());
    rep.suite = "supersaturation".into();
    rep.statistic = rep.extremal.as_ref().map(|e| e.slack);
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityProbe {
    pub q: f64,
    /// `2(1 − 1/k − σ)n`.
    pub q_threshold: f64,
    pub f_free: bool,
    /// F-free and `q ≥ q_threshold`.
    pub hypothesis: bool,
    pub q_gap: f64,
    pub edit_distance: usize,
    /// `εn²`.
    #[serde(with = "crate::rational::serde_rational")]
    pub distance_bound: Rational,
    pub conclusion: bool,
    /// Not (hypothesis and not conclusion). A false value is an observation
    /// at finite `n`.
    pub consistent: bool,
}

/// Compares the spectral hypothesis with the edit distance to `T(n,k)`.
/// `f_free` decides freeness of the forbidden graph.
pub fn stability_probe(
    g: &Graph,
    k: usize,
    sigma: Rational,
    eps: Rational,
    f_free: &dyn Fn(&Graph) -> bool,
) -> Result<StabilityProbe> {
    let n = g.order();
    if n > EDIT_DISTANCE_MAX_N {
        return Err(Error::ProfileLimit {
            what: format!("stability probe on {n} vertices"),
            limit: format!("n <= {EDIT_DISTANCE_MAX_N}"),
        });
    }
    if k < 1 {
        return Err(invalid("k must be at least 1"));
    }
    let q = q_radius(g, DEFAULT_TOL)?.value;
    let nr = Rational::from_integer(n as i64);
    let one = Rational::from_integer(1);
    let q_threshold = to_f64((one - one / Rational::from_integer(k as i64) - sigma) * nr * 2);
    let free = f_free(g);
    let hypothesis = free && q >= q_threshold;
    let edit_distance = edit_distance_to_turan(g, k)?;
    let distance_bound = eps * nr * nr;
    let conclusion = Rational::from_integer(edit_distance as i64) <= distance_bound;
    Ok(StabilityProbe {
        q,
        q_threshold,
        f_free: free,
        hypothesis,
        q_gap: q - q_threshold,
        edit_distance,
        distance_bound,
        conclusion,
        consistent: !(hypothesis && !conclusion),
    })
}

/// Orders of the standard battery: every graph suite at its usual range,
/// `k ∈ {2, 3}` where needed, and the shadow suite.
pub fn standard_battery(params: &SuiteParams) -> Vec<SuiteRun> {
    let with = |k: Option<usize>| SuiteParams { k, ..params.clone() };
    let mut v = Vec::new();
    for k in [2, 3] {
        v.push(SuiteRun::new(Suite::QTuran, 6, with(Some(k))));
        v.push(SuiteRun::new(Suite::Counting, 7, with(Some(k))));
        v.push(SuiteRun::new(Suite::DegreePower, 7, with(Some(k))));
    }
    for s in [Suite::QDegree, Suite::Hofmeister, Suite::LemmaMin, Suite::LemmaSdf, Suite::Bounds] {
        v.push(SuiteRun::new(s, 7, with(None)));
    }
    v.push(SuiteRun::new(Suite::Shadow, 12, with(None)));
    v
}
