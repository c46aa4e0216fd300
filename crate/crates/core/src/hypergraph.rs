//! Uniform and linear hypergraphs: shadows, expansions, transversal
//! designs and the signless Laplacian spectral radius
//!
//! ```text
//! q(H) = max over x ≥ 0, ‖x‖_r = 1 of  Σ_v d(v) x_v^r + r Σ_e Π_{v∈e} x_v
//! ```
//!
//! computed by a fixed-point iteration with restarts.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::rng::{derive_seed, SplitMix64};
use crate::spectral::{q_radius, DEFAULT_TOL};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt::Write as _;

fn hyper_err(msg: impl Into<String>) -> Error {
    Error::Hypergraph(msg.into())
}

/// An `r`-uniform hypergraph with sorted edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validates uniformity and vertex range, sorts each edge and rejects
    /// repeated edges.
    pub fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(hyper_err(format!("uniformity must be at least 2, got {r}")));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(hyper_err(format!("edge {e:?} has size {} instead of {r}", e.len())));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(hyper_err(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !seen.insert(e.clone()) {
                return Err(hyper_err(format!("edge {e:?} appears twice")));
            }
            out.push(e);
        }
        Ok(Hypergraph { n, r, edges: out })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    pub fn is_linear(&self) -> bool {
        let mut pairs = HashSet::new();
        self.edges.iter().all(|e| pair_iter(e).all(|p| pairs.insert(p)))
    }

    /// Edge indices through each vertex.
    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Header `n r m`, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.r, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| hyper_err("missing `n r m` header"))?;
        let nums = parse_usizes(header)?;
        let [n, r, m] = nums[..] else {
            return Err(hyper_err(format!("header `{header}` must hold three integers")));
        };
        let edges = lines.map(parse_usizes).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(hyper_err(format!("header promises {m} edges, found {}", edges.len())));
        }
        Hypergraph::new(n, r, edges)
    }
}

fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| hyper_err(format!("`{t}` is not a vertex index"))))
        .collect()
}

fn pair_iter(e: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    e.iter().enumerate().flat_map(move |(i, &a)| e[i + 1..].iter().map(move |&b| (a, b)))
}

/// A hypergraph whose edges pairwise share at most one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearHypergraph(Hypergraph);

impl LinearHypergraph {
    pub fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::try_from(Hypergraph::new(n, r, edges)?)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::try_from(Hypergraph::from_text(text)?)
    }

    pub fn inner(&self) -> &Hypergraph {
        &self.0
    }
}

impl TryFrom<Hypergraph> for LinearHypergraph {
    type Error = Error;

    fn try_from(h: Hypergraph) -> Result<Self> {
        if h.is_linear() {
            Ok(LinearHypergraph(h))
        } else {
            Err(hyper_err("two edges share more than one vertex"))
        }
    }
}

impl std::ops::Deref for LinearHypergraph {
    type Target = Hypergraph;

    fn deref(&self) -> &Hypergraph {
        &self.0
    }
}

/// Linearity of a raw edge list; malformed edges are errors.
pub fn is_linear(edges: &[Vec<usize>], n: usize, r: usize) -> Result<bool> {
    Ok(Hypergraph::new(n, r, edges.to_vec())?.is_linear())
}

/// All `s`-subsets of edges, `2 ≤ s ≤ r`.
pub fn shadow(h: &Hypergraph, s: usize) -> Result<Hypergraph> {
    if s < 2 || s > h.r {
        return Err(hyper_err(format!("shadow size {s} outside 2..={}", h.r)));
    }
    let mut set = HashSet::new();
    let mut out = Vec::new();
    for e in &h.edges {
        for sub in subsets(e, s) {
            if set.insert(sub.clone()) {
                out.push(sub);
            }
        }
    }
    out.sort();
    Hypergraph::new(h.n, s, out)
}

/// The 2-shadow as a graph.
pub fn shadow_graph(h: &Hypergraph) -> Result<Graph> {
    let mut g = Graph::empty(h.n)?;
    for e in &h.edges {
        for (a, b) in pair_iter(e) {
            g.add_edge(a, b);
        }
    }
    Ok(g)
}

fn subsets(e: &[usize], s: usize) -> Vec<Vec<usize>> {
    fn go(e: &[usize], s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..e.len() {
            if e.len() - i < s - cur.len() {
                break;
            }
            cur.push(e[i]);
            go(e, s, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, s, 0, &mut Vec::new(), &mut out);
    out
}

/// `F` with each edge enlarged by `r − 2` new vertices. Edge `i` of
/// `F.edges()` gets vertices `n + i(r−2) ..`.
pub fn expansion(f: &Graph, r: usize) -> Result<LinearHypergraph> {
    if r < 2 {
        return Err(hyper_err(format!("uniformity must be at least 2, got {r}")));
    }
    let n = f.order();
    let extra = r - 2;
    let edges: Vec<Vec<usize>> = f
        .edges()
        .enumerate()
        .map(|(i, (u, v))| {
            let mut e = vec![u, v];
            e.extend(n + i * extra..n + (i + 1) * extra);
            e
        })
        .collect();
    LinearHypergraph::new(n + extra * edges.len(), r, edges)
}

/// Embedding of an expansion: images of the vertices of `F`, and the host
/// edge used for each edge of `F` (in `F.edges()` order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionWitness {
    pub vertex_map: Vec<usize>,
    pub edges: Vec<Vec<usize>>,
}

impl ExpansionWitness {
    /// Independent check against the host.
    pub fn validate(&self, h: &Hypergraph, f: &Graph) -> bool {
        let fe: Vec<_> = f.edges().collect();
        if self.vertex_map.len() != f.order() || self.edges.len() != fe.len() {
            return false;
        }
        let mut used = HashSet::new();
        if !self.vertex_map.iter().all(|&v| v < h.n && used.insert(v)) {
            return false;
        }
        let host: HashSet<&Vec<usize>> = h.edges.iter().collect();
        for (&(a, b), e) in fe.iter().zip(&self.edges) {
            let (x, y) = (self.vertex_map[a], self.vertex_map[b]);
            if !host.contains(e) || !e.contains(&x) || !e.contains(&y) {
                return false;
            }
            if !e.iter().filter(|&&v| v != x && v != y).all(|&v| used.insert(v)) {
                return false;
            }
        }
        true
    }
}

/// Searches `h` for an `r`-expansion of `f` by backtracking over vertex
/// images. Expansion vertices are kept disjoint from every image and from
/// each other.
pub fn contains_expansion(h: &Hypergraph, f: &Graph) -> Result<Option<ExpansionWitness>> {
    let fe: Vec<(usize, usize)> = f.edges().collect();
    if f.order() > h.n {
        return Ok(None);
    }
    // pair -> edge index; unique when linear, otherwise try every option
    let mut through: std::collections::HashMap<(usize, usize), Vec<usize>> = Default::default();
    for (i, e) in h.edges.iter().enumerate() {
        for p in pair_iter(e) {
            through.entry(p).or_default().push(i);
        }
    }
    // edges of F that close when vertex v is placed
    let mut closing = vec![Vec::new(); f.order()];
    for (i, &(a, b)) in fe.iter().enumerate() {
        closing[a.max(b)].push(i);
    }
    let mut st = Search {
        h,
        fe: &fe,
        closing: &closing,
        through: &through,
        image: vec![usize::MAX; f.order()],
        chosen: vec![usize::MAX; fe.len()],
        used: vec![false; h.n],
    };
    if st.place(0) {
        Ok(Some(ExpansionWitness {
            vertex_map: st.image,
            edges: st.chosen.iter().map(|&i| h.edges[i].clone()).collect(),
        }))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    fe: &'a [(usize, usize)],
    closing: &'a [Vec<usize>],
    through: &'a std::collections::HashMap<(usize, usize), Vec<usize>>,
    image: Vec<usize>,
    chosen: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn place(&mut self, v: usize) -> bool {
        if v == self.image.len() {
            return true;
        }
        for x in 0..self.h.n {
            if self.used[x] {
                continue;
            }
            self.image[v] = x;
            self.used[x] = true;
            if self.close(v, 0) {
                return true;
            }
            self.used[x] = false;
        }
        self.image[v] = usize::MAX;
        false
    }

    /// Picks host edges for the `j`-th and later edges closed by `v`.
    fn close(&mut self, v: usize, j: usize) -> bool {
        let Some(&fi) = self.closing[v].get(j) else {
            return self.place(v + 1);
        };
        let (a, b) = self.fe[fi];
        let (x, y) = (self.image[a], self.image[b]);
        let key = (x.min(y), x.max(y));
        let Some(options) = self.through.get(&key) else {
            return false;
        };
        for &ei in options {
            let e = &self.h.edges[ei];
            let extras: Vec<usize> = e.iter().copied().filter(|&w| w != x && w != y).collect();
            if extras.iter().any(|&w| self.used[w]) {
                continue;
            }
            for &w in &extras {
                self.used[w] = true;
            }
            self.chosen[fi] = ei;
            if self.close(v, j + 1) {
                return true;
            }
            for &w in &extras {
                self.used[w] = false;
            }
        }
        self.chosen[fi] = usize::MAX;
        false
    }
}

pub fn is_prime(m: usize) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// Transversal design on `r` groups of `m` points, `m` prime, `r ≤ m + 1`.
/// Point `x` of group `i` is vertex `i·m + x`. Block `(a, b)` meets group
/// `i < m` in `a + i·b mod m`; when `r = m + 1`, it meets the last group in
/// `b`.
pub fn transversal_design(m: usize, r: usize) -> Result<LinearHypergraph> {
    if !is_prime(m) {
        return Err(hyper_err(format!("group size {m} is not prime")));
    }
    if r < 2 || r > m + 1 {
        return Err(hyper_err(format!("need 2 <= r <= m + 1, got r = {r}, m = {m}")));
    }
    let mut blocks = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let block = (0..r)
                .map(|i| {
                    let x = if i < m { (a + i * b) % m } else { b };
                    i * m + x
                })
                .collect();
            blocks.push(block);
        }
    }
    LinearHypergraph::new(r * m, r, blocks)
}

/// Checks the design axioms for `groups` groups of `m` consecutive
/// vertices: the order is `m · groups`, blocks meet each group at most once,
/// and every pair from distinct groups lies in exactly one block.
pub fn audit_design(h: &Hypergraph, m: usize, groups: usize) -> bool {
    if h.n != m * groups {
        return false;
    }
    let mut count = vec![0u32; h.n * h.n];
    for e in &h.edges {
        let mut seen = vec![false; groups];
        for &v in e {
            if std::mem::replace(&mut seen[v / m], true) {
                return false;
            }
        }
        for (a, b) in pair_iter(e) {
            count[a * h.n + b] += 1;
        }
    }
    (0..h.n).all(|a| (a + 1..h.n).all(|b| a / m == b / m || count[a * h.n + b] == 1))
}

/// Random linear `r`-graph: `draws` uniformly random `r`-sets, each kept
/// when it covers no pair already covered.
pub fn random_linear(n: usize, r: usize, draws: usize, seed: u64) -> Result<LinearHypergraph> {
    if r < 2 || r > n {
        return Err(hyper_err(format!("need 2 <= r <= n, got r = {r}, n = {n}")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut covered = vec![false; n * n];
    let mut edges = Vec::new();
    for _ in 0..draws {
        // partial Fisher-Yates
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..r {
            let j = i + rng.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut e = pool[..r].to_vec();
        e.sort_unstable();
        if pair_iter(&e).all(|(a, b)| !covered[a * n + b]) {
            for (a, b) in pair_iter(&e) {
                covered[a * n + b] = true;
            }
            edges.push(e);
        }
    }
    LinearHypergraph::new(n, r, edges)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperSpectralResult {
    pub value: f64,
    /// Nonnegative with unit `r`-norm.
    pub vector: Vec<f64>,
    /// Largest stationarity violation `|d_v x_v^{r-1} + Σ_{e∋v} x^{e∖v} − q x_v^{r-1}|`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// The objective never dropped by more than `1e-12` between sweeps.
    pub monotone: bool,
    /// Restart that produced the reported maximizer (0 is the uniform start).
    pub restart: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperOptions {
    pub tol: f64,
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for HyperOptions {
    fn default() -> Self {
        HyperOptions { tol: DEFAULT_TOL, max_iterations: 20_000, restarts: 8, seed: 0 }
    }
}

impl HyperOptions {
    pub fn with_tol(tol: f64) -> Self {
        HyperOptions { tol, ..Default::default() }
    }
}

struct HyperEval<'a> {
    h: &'a Hypergraph,
    deg: Vec<f64>,
    inc: Vec<Vec<usize>>,
}

impl HyperEval<'_> {
    fn pow(&self, x: f64, e: usize) -> f64 {
        x.powi(e as i32)
    }

    fn objective(&self, x: &[f64]) -> f64 {
        let r = self.h.r;
        let diag: f64 = x.iter().zip(&self.deg).map(|(&v, &d)| d * self.pow(v, r)).sum();
        let prod: f64 = self.h.edges.iter().map(|e| e.iter().map(|&v| x[v]).product::<f64>()).sum();
        diag + r as f64 * prod
    }

    /// `Σ_{e∋v} Π_{w∈e∖v} x_w` for every `v`.
    fn partials(&self, x: &[f64]) -> Vec<f64> {
        (0..self.h.n)
            .map(|v| {
                self.inc[v]
                    .iter()
                    .map(|&ei| self.h.edges[ei].iter().filter(|&&w| w != v).map(|&w| x[w]).product::<f64>())
                    .sum()
            })
            .collect()
    }

    fn residual(&self, x: &[f64], theta: f64) -> f64 {
        let s = self.partials(x);
        (0..self.h.n)
            .map(|v| {
                let p = self.pow(x[v], self.h.r - 1);
                (self.deg[v] * p + s[v] - theta * p).abs()
            })
            .fold(0.0, f64::max)
    }

    fn normalize(&self, x: &mut [f64]) {
        let r = self.h.r;
        let norm = x.iter().map(|&v| self.pow(v, r)).sum::<f64>().powf(1.0 / r as f64);
        if norm > 0.0 {
            x.iter_mut().for_each(|v| *v /= norm);
        }
    }

    /// Fixed-point image `((d_v x_v^{r-1} + S_v) / θ)^{1/(r-1)}`, normalized.
    fn step(&self, x: &[f64], theta: f64) -> Vec<f64> {
        let r = self.h.r;
        let s = self.partials(x);
        let mut y: Vec<f64> = (0..self.h.n)
            .map(|v| {
                let t = (self.deg[v] * self.pow(x[v], r - 1) + s[v]) / theta;
                if r == 2 {
                    t
                } else {
                    t.max(0.0).powf(1.0 / (r - 1) as f64)
                }
            })
            .collect();
        self.normalize(&mut y);
        y
    }

    fn solve_from(&self, mut x: Vec<f64>, opts: &HyperOptions) -> HyperSpectralResult {
        self.normalize(&mut x);
        let mut theta = self.objective(&x);
        let mut monotone = true;
        let mut iterations = 0;
        let mut residual = self.residual(&x, theta);
        let tol = |theta: f64| opts.tol * theta.max(1.0);
        while residual > tol(theta) && iterations < opts.max_iterations {
            iterations += 1;
            let slack = 1e-12 * theta.max(1.0);
            let mut next = self.step(&x, theta);
            let mut next_theta = self.objective(&next);
            if next_theta < theta - slack {
                // halve the step toward the fixed point until the objective holds
                let mut t = 0.5;
                while t > 1e-12 {
                    let mut z: Vec<f64> = x.iter().zip(&next).map(|(&a, &b)| a + t * (b - a)).collect();
                    self.normalize(&mut z);
                    let val = self.objective(&z);
                    if val >= theta - slack {
                        next_theta = val;
                        next = z;
                        break;
                    }
                    t *= 0.5;
                }
                if next_theta < theta - slack {
                    monotone = false;
                    break;
                }
            }
            x = next;
            theta = next_theta;
            residual = self.residual(&x, theta);
        }
        HyperSpectralResult {
            value: theta,
            vector: x,
            residual,
            iterations,
            converged: residual <= tol(theta),
            monotone,
            restart: 0,
        }
    }
}

/// `q(H)` by the fixed-point iteration from the uniform vector and
/// `restarts − 1` seeded random positive vectors. The best objective wins,
/// values within a relative 1e-10 counting as ties that go to the lower
/// restart index. Convergence means residual ≤ tol · max(1, q).
pub fn q_hyper(h: &Hypergraph, opts: &HyperOptions) -> Result<HyperSpectralResult> {
    if h.n == 0 {
        return Err(hyper_err("hypergraph has no vertices"));
    }
    let n = h.n;
    let uniform = vec![1.0; n];
    if h.edges.is_empty() {
        let eval = HyperEval { h, deg: vec![0.0; n], inc: vec![Vec::new(); n] };
        let mut x = uniform;
        eval.normalize(&mut x);
        return Ok(HyperSpectralResult {
            value: 0.0,
            vector: x,
            residual: 0.0,
            iterations: 0,
            converged: true,
            monotone: true,
            restart: 0,
        });
    }
    let eval = HyperEval { h, deg: h.degrees().into_iter().map(|d| d as f64).collect(), inc: h.incidence() };
    let mut best: Option<HyperSpectralResult> = None;
    for restart in 0..opts.restarts.max(1) {
        let start = if restart == 0 {
            uniform.clone()
        } else {
            let mut rng = SplitMix64::new(derive_seed(opts.seed, restart as u64));
            (0..n).map(|_| 0.05 + rng.next_f64()).collect()
        };
        let mut res = eval.solve_from(start, opts);
        res.restart = restart;
        if best.as_ref().is_none_or(|b| res.value > b.value + 1e-10 * b.value.max(1.0)) {
            best = Some(res);
        }
    }
    Ok(best.expect("at least one restart"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShadowBound {
    /// `(r − 1) q(H)`.
    pub lhs: f64,
    /// `q` of the 2-shadow.
    pub rhs: f64,
    pub holds: bool,
    pub hyper_converged: bool,
    pub shadow_converged: bool,
}

/// `(r − 1) q(H) ≤ q(∂H)`, up to `tol`.
pub fn check_shadow_bound(h: &LinearHypergraph, tol: f64) -> Result<ShadowBound> {
    if h.n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n: h.n, max: MAX_VERTICES });
    }
    let hq = q_hyper(h, &HyperOptions::with_tol(tol.min(DEFAULT_TOL)))?;
    let sq = q_radius(&shadow_graph(h)?, DEFAULT_TOL)?;
    let lhs = (h.r - 1) as f64 * hq.value;
    Ok(ShadowBound {
        lhs,
        rhs: sq.value,
        holds: lhs <= sq.value + tol,
        hyper_converged: hq.converged,
        shadow_converged: sq.converged,
    })
}
