//! Perron-vector vertex deletion: repeatedly remove the vertex with the
//! smallest coordinate of the signless Laplacian eigenvector while the
//! minimum degree stays at or below `(γ − α)·order`.
//!
//! [`reduce_algorithm1`] runs until the degree condition fails or the graph
//! empties; [`reduce_algorithm2`] additionally stops after `⌊βn⌋`
//! deletions.

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rational::{serde_rational, to_f64, Rational};
use crate::spectral::{perron_min_vertex, q_radius, SpectralResult};
use serde::{Deserialize, Serialize};

/// Tolerance for the lemma inequalities.
pub const LEMMA_TOL: f64 = 1e-8;

/// Relative slack allowed on the per-step growth statistic.
pub const MONOTONE_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    One,
    Two,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Algorithm::One),
            "2" => Ok(Algorithm::Two),
            _ => Err(invalid(format!("algorithm must be 1 or 2, got `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionParams {
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    pub tol: f64,
}

impl ReductionParams {
    pub fn new(gamma: Rational, alpha: Rational, beta: Rational) -> Self {
        ReductionParams {
            gamma,
            alpha,
            beta,
            s: Rational::from_integer(0),
            tol: crate::spectral::DEFAULT_TOL,
        }
    }

    /// Checks the parameter profile of the given algorithm.
    ///
    /// One: `0<α≤2/3, 0<β<1/2, α<γ, 1/2+β≤γ<1`.
    /// Two: `0<α≤2/3, 0<β<1, α<γ, 31/48≤γ<1`.
    pub fn validate(&self, alg: Algorithm) -> Result<()> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        let (g, a, b) = (self.gamma, self.alpha, self.beta);
        let mut bad = Vec::new();
        if !(a > zero && a <= Rational::new(2, 3)) {
            bad.push("0 < alpha <= 2/3");
        }
        if a >= g {
            bad.push("alpha < gamma");
        }
        if g >= one {
            bad.push("gamma < 1");
        }
        if self.s < zero {
            bad.push("s >= 0");
        }
        match alg {
            Algorithm::One => {
                if !(b > zero && b < Rational::new(1, 2)) {
                    bad.push("0 < beta < 1/2");
                }
                if Rational::new(1, 2) + b > g {
                    bad.push("1/2 + beta <= gamma");
                }
            }
            Algorithm::Two => {
                if !(b > zero && b < one) {
                    bad.push("0 < beta < 1");
                }
                if g < Rational::new(31, 48) {
                    bad.push("31/48 <= gamma");
                }
            }
        }
        if !(self.tol > 0.0) {
            bad.push("tol > 0");
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(invalid(format!("parameter profile violated: {}", bad.join(", "))))
        }
    }

    /// `⌈cn⌉` with `c = 6^(−3/(αβ))`, evaluated in log space.
    pub fn size_floor(&self, n: usize) -> u64 {
        if n == 0 {
            return 0;
        }
        let ab = to_f64(self.alpha * self.beta);
        let log_cn = (n as f64).ln() - 3.0 * 6f64.ln() / ab;
        if log_cn <= 0.0 {
            1
        } else {
            log_cn.exp().ceil() as u64
        }
    }

    fn degree_threshold(&self, order: usize) -> Rational {
        (self.gamma - self.alpha) * Rational::from_integer(order as i64)
    }

    fn beta_cap(&self, n: usize) -> usize {
        (self.beta * Rational::from_integer(n as i64)).floor().to_integer() as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    /// Original id of the deleted vertex.
    pub deleted: usize,
    /// Its eigenvector coordinate.
    pub min_coord: f64,
    /// `q` of the graph before the deletion.
    pub q: f64,
    /// Minimum degree of the graph before the deletion.
    pub min_degree: usize,
    /// Order of the graph before the deletion.
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    MinDegreeExit,
    BetaCapExit,
    Exhausted,
    SolverFailure,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    /// `q(H) > 2γ|H|`.
    pub q_above_2gamma: bool,
    /// `δ(H) > (γ−α)|H|`, exact.
    pub min_degree_above: bool,
    /// `|H| > ⌈cn⌉`.
    pub order_above_cn: bool,
    /// Second algorithm only: `q(H) > 2γ(1+αβ/8)|H|`.
    pub case_i: Option<bool>,
    /// Second algorithm only: `q(H) > 2γ|H|` and `δ(H) > (γ−α)|H|`.
    pub case_ii: Option<bool>,
}

/// Per-step growth `q(G_{i+1}) ≥ q(G_i)(1 − (1−αβ/3)/|G_{i+1}|)`,
/// tracked on steps where the step hypotheses hold.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MonotoneStat {
    /// Steps where `q(G_i) > 2γm − s/m` and `δ(G_i) ≤ (γ−α)m`.
    pub hypothesis_steps: usize,
    /// Of those, steps where the finite-order side conditions also hold
    /// (`m ≥ 3`, `βm² > s`, `γαm² ≥ 2(γ+α)s`); only these are asserted.
    pub asserted_steps: usize,
    /// Smallest observed `q(G_{i+1}) / (q(G_i)(1 − (1−αβ/3)/(m−1)))`.
    pub min_ratio: Option<f64>,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub algorithm: Algorithm,
    pub params: ReductionParams,
    pub n: usize,
    pub steps: Vec<Step>,
    #[serde(with = "crate::graph6::serde_graph6")]
    pub final_graph: Graph,
    /// Original ids of the surviving vertices.
    pub final_ids: Vec<usize>,
    pub final_q: Option<f64>,
    pub outcome: Outcome,
    /// `⌈cn⌉`.
    pub size_floor: u64,
    pub certified: Certified,
    /// Present for the first algorithm.
    pub monotone: Option<MonotoneStat>,
    pub solver_note: Option<String>,
}

pub fn reduce_algorithm1(g: &Graph, p: &ReductionParams) -> Result<ReductionTrace> {
    p.validate(Algorithm::One)?;
    Ok(reduce(g, p, Algorithm::One))
}

pub fn reduce_algorithm2(g: &Graph, p: &ReductionParams) -> Result<ReductionTrace> {
    p.validate(Algorithm::Two)?;
    Ok(reduce(g, p, Algorithm::Two))
}

pub fn reduce_with(g: &Graph, p: &ReductionParams, alg: Algorithm) -> Result<ReductionTrace> {
    match alg {
        Algorithm::One => reduce_algorithm1(g, p),
        Algorithm::Two => reduce_algorithm2(g, p),
    }
}

fn reduce(g: &Graph, p: &ReductionParams, alg: Algorithm) -> ReductionTrace {
    let n = g.order();
    let cap = p.beta_cap(n);
    let mut cur = g.clone();
    let mut ids: Vec<usize> = (0..n).collect();
    let mut steps = Vec::new();
    let mut solver_note = None;
    let outcome = loop {
        let m = cur.order();
        if m == 0 {
            break Outcome::Exhausted;
        }
        if alg == Algorithm::Two && steps.len() == cap {
            break Outcome::BetaCapExit;
        }
        let delta = cur.min_degree();
        if Rational::from_integer(delta as i64) > p.degree_threshold(m) {
            break Outcome::MinDegreeExit;
        }
        let res = match q_radius(&cur, p.tol) {
            Ok(r) if r.converged => r,
            Ok(r) => {
                solver_note = Some(format!("order {m}: residual {} above tolerance", r.residual));
                break Outcome::SolverFailure;
            }
            Err(e) => {
                solver_note = Some(format!("order {m}: {e}"));
                break Outcome::SolverFailure;
            }
        };
        let u = perron_min_vertex(&res);
        steps.push(Step {
            deleted: ids[u],
            min_coord: res.vector[u],
            q: res.value,
            min_degree: delta,
            order: m,
        });
        cur = cur.delete_vertex(u).expect("u is a vertex of cur");
        ids.remove(u);
    };

    let final_q = if cur.order() > 0 && outcome != Outcome::SolverFailure {
        match q_radius(&cur, p.tol) {
            Ok(r) if r.converged => Some(r.value),
            Ok(r) => {
                solver_note = Some(format!("final graph: residual {} above tolerance", r.residual));
                None
            }
            Err(e) => {
                solver_note = Some(format!("final graph: {e}"));
                None
            }
        }
    } else {
        None
    };

    let h = cur.order();
    let size_floor = p.size_floor(n);
    let mut certified = Certified::default();
    if h > 0 {
        let hf = h as f64;
        let gamma = to_f64(p.gamma);
        certified.min_degree_above =
            Rational::from_integer(cur.min_degree() as i64) > p.degree_threshold(h);
        certified.order_above_cn = h as u64 > size_floor;
        if let Some(q) = final_q {
            certified.q_above_2gamma = q > 2.0 * gamma * hf + p.tol;
        }
    }
    if alg == Algorithm::Two {
        let case_i = final_q.map_or(false, |q| {
            let ab8 = to_f64(p.alpha * p.beta) / 8.0;
            q > 2.0 * to_f64(p.gamma) * (1.0 + ab8) * h as f64 + p.tol
        });
        certified.case_i = Some(case_i);
        certified.case_ii = Some(certified.q_above_2gamma && certified.min_degree_above);
    }

    let monotone = (alg == Algorithm::One).then(|| monotone_stat(&steps, final_q, p));

    ReductionTrace {
        algorithm: alg,
        params: p.clone(),
        n,
        steps,
        final_graph: cur,
        final_ids: ids,
        final_q,
        outcome,
        size_floor,
        certified,
        monotone,
        solver_note,
    }
}

fn monotone_stat(steps: &[Step], final_q: Option<f64>, p: &ReductionParams) -> MonotoneStat {
    let gamma = p.gamma;
    let (alpha, beta, s) = (p.alpha, p.beta, p.s);
    let factor = 1.0 - to_f64(Rational::from_integer(1) - alpha * beta / 3);
    let mut stat = MonotoneStat::default();
    for (i, step) in steps.iter().enumerate() {
        let next_q = match steps.get(i + 1) {
            Some(nx) => nx.q,
            None => match final_q {
                Some(q) => q,
                None => continue,
            },
        };
        let m = step.order;
        if m < 2 {
            continue;
        }
        let mr = Rational::from_integer(m as i64);
        let q_thresh = to_f64(gamma * 2 * mr - s / mr);
        let hyp = step.q > q_thresh && Rational::from_integer(step.min_degree as i64) <= p.degree_threshold(m);
        if !hyp {
            continue;
        }
        stat.hypothesis_steps += 1;
        let bound = step.q * (1.0 - (1.0 - factor) / (m - 1) as f64);
        let ratio = if bound > 0.0 { next_q / bound } else { f64::INFINITY };
        stat.min_ratio = Some(stat.min_ratio.map_or(ratio, |r: f64| r.min(ratio)));
        let m2 = mr * mr;
        let side = m >= 3 && beta * m2 > s && gamma * alpha * m2 >= (gamma + alpha) * s * 2;
        if side {
            stat.asserted_steps += 1;
            if ratio < 1.0 - MONOTONE_SLACK {
                stat.violations += 1;
            }
        }
    }
    stat
}

/// Both sides of an inequality together with the verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Signed margin in the direction of the inequality; negative means
    /// violated before tolerance.
    pub slack: f64,
    pub holds: bool,
    pub vertex: usize,
}

/// `x_u²` for the minimum vertex, rescaled by the largest coordinate first so
/// equal coordinates give exact ratios.
fn min_coord_sq(res: &SpectralResult) -> (usize, f64) {
    let u = perron_min_vertex(res);
    let top = res.vector.iter().copied().fold(0.0f64, f64::max);
    let norm2: f64 = res.vector.iter().map(|x| (x / top).powi(2)).sum();
    (u, (res.vector[u] / top).powi(2) / norm2)
}

/// Minimum-coordinate bound `x_u²(q² − 2qδ + nδ) ≤ δ`.
pub fn check_lemma_min(g: &Graph, tol: f64) -> Result<LemmaCheck> {
    let res = solved(g, tol)?;
    Ok(lemma_min_with(g, &res))
}

/// As [`check_lemma_min`] with a precomputed `q` solve.
pub fn lemma_min_with(g: &Graph, res: &SpectralResult) -> LemmaCheck {
    let (u, x2) = min_coord_sq(res);
    let (q, d, n) = (res.value, g.min_degree() as f64, g.order() as f64);
    let lhs = x2 * (q * q - 2.0 * q * d + n * d);
    let slack = d - lhs;
    LemmaCheck {
        lhs,
        rhs: d,
        slack,
        holds: slack >= -LEMMA_TOL,
        vertex: u,
    }
}

/// Deletion bound
/// `q(G−u)/(n−2) ≥ q/(n−1)·(1+D) − D`, `D = (1−nx_u²)/((n−2)(1−x_u²))`.
pub fn check_lemma_sdf(g: &Graph, tol: f64) -> Result<LemmaCheck> {
    if g.order() < 3 {
        return Err(invalid("deletion bound needs at least 3 vertices"));
    }
    let res = solved(g, tol)?;
    let u = perron_min_vertex(&res);
    let sub = solved(&g.delete_vertex(u)?, tol)?;
    lemma_sdf_with(g, &res, sub.value)
}

/// As [`check_lemma_sdf`] given `q(G)` and `q(G−u)` for the minimum vertex.
pub fn lemma_sdf_with(g: &Graph, res: &SpectralResult, q_minus: f64) -> Result<LemmaCheck> {
    let n = g.order() as f64;
    if g.order() < 3 {
        return Err(invalid("deletion bound needs at least 3 vertices"));
    }
    let (u, x2) = min_coord_sq(res);
    if 1.0 - x2 <= 0.0 {
        return Err(Error::Solver("minimum coordinate equals 1".into()));
    }
    let d = (1.0 - n * x2) / ((n - 2.0) * (1.0 - x2));
    let lhs = q_minus / (n - 2.0);
    let rhs = res.value / (n - 1.0) * (1.0 + d) - d;
    let slack = lhs - rhs;
    Ok(LemmaCheck {
        lhs,
        rhs,
        slack,
        holds: slack >= -LEMMA_TOL,
        vertex: u,
    })
}

fn solved(g: &Graph, tol: f64) -> Result<SpectralResult> {
    let r = q_radius(g, tol)?;
    if r.converged {
        Ok(r)
    } else {
        Err(Error::Solver(format!("residual {} above tolerance {tol}", r.residual)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::turan;
    use crate::rational::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn params(g: &str, a: &str, b: &str) -> ReductionParams {
        ReductionParams::new(r(g), r(a), r(b))
    }

    /// Straight-line reference: recompute q from scratch with a dense solve,
    /// take the smallest coordinate (lowest index on ties), delete, repeat.
    fn reference_deletions(g: &Graph, p: &ReductionParams, cap: Option<usize>) -> Vec<usize> {
        let mut cur = g.clone();
        let mut ids: Vec<usize> = (0..g.order()).collect();
        let mut out = Vec::new();
        let thr = |m: usize| to_f64(p.gamma - p.alpha) * m as f64;
        while cur.order() > 0 && (cur.min_degree() as f64) <= thr(cur.order()) + 1e-12 {
            if cap == Some(out.len()) {
                break;
            }
            let n = cur.order();
            let mut q = nalgebra::DMatrix::<f64>::zeros(n, n);
            for (i, j) in cur.edges() {
                q[(i, j)] = 1.0;
                q[(j, i)] = 1.0;
            }
            for v in 0..n {
                q[(v, v)] = cur.degree(v) as f64;
            }
            let eig = q.symmetric_eigen();
            let top = (0..n).max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b])).unwrap();
            let x: Vec<f64> = (0..n).map(|v| eig.eigenvectors[(v, top)].abs()).collect();
            let min = x.iter().copied().fold(f64::INFINITY, f64::min);
            let u = x.iter().position(|&c| c <= min + 1e-9).unwrap();
            out.push(ids.remove(u));
            cur = cur.delete_vertex(u).unwrap();
        }
        out
    }

    #[test]
    fn profiles() {
        assert!(params("7/10", "1/10", "1/20").validate(Algorithm::One).is_ok());
        assert!(params("1/2", "1/10", "1/20").validate(Algorithm::One).is_err());
        assert!(params("31/48", "1/10", "1/5").validate(Algorithm::Two).is_ok());
        assert!(params("3/5", "1/10", "1/5").validate(Algorithm::Two).is_err());
        assert!(params("7/10", "3/4", "1/20").validate(Algorithm::One).is_err());
        assert!(params("7/10", "1/10", "1/2").validate(Algorithm::One).is_err());
    }

    #[test]
    fn complete_graph_no_deletions() {
        let t = reduce_algorithm1(&Graph::complete(6).unwrap(), &params("7/10", "1/10", "1/20")).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.outcome, Outcome::MinDegreeExit);
        assert_eq!(t.final_graph, Graph::complete(6).unwrap());
        assert!(t.certified.min_degree_above);
        assert!(t.certified.q_above_2gamma);
    }

    #[test]
    fn star_deletes_leaves() {
        let g = Graph::star(5).unwrap();
        let p = params("11/20", "1/5", "1/20");
        let t = reduce_algorithm1(&g, &p).unwrap();
        assert_eq!(t.outcome, Outcome::MinDegreeExit);
        assert_eq!(t.final_graph, Graph::complete(2).unwrap());
        assert_eq!(t.final_ids, vec![0, 5]);
        let deleted: Vec<usize> = t.steps.iter().map(|s| s.deleted).collect();
        assert_eq!(deleted, vec![1, 2, 3, 4]);
        assert_eq!(deleted, reference_deletions(&g, &p, None));
        assert!(t.certified.min_degree_above);
    }

    #[test]
    fn turan_no_deletions() {
        let t = reduce_algorithm1(&turan(9, 3).unwrap().graph, &params("2/3", "1/10", "1/20")).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.outcome, Outcome::MinDegreeExit);
    }

    #[test]
    fn algorithm2_examples() {
        let t = reduce_algorithm2(&Graph::complete(6).unwrap(), &params("31/48", "1/10", "1/5")).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.outcome, Outcome::MinDegreeExit);
        assert!((t.final_q.unwrap() - 10.0).abs() < 1e-9);
        assert_eq!(t.certified.case_ii, Some(true));

        let g = Graph::star(9).unwrap();
        let p = params("31/48", "3/10", "3/10");
        let t = reduce_algorithm2(&g, &p).unwrap();
        assert_eq!(t.steps.len(), 3);
        assert_eq!(t.outcome, Outcome::BetaCapExit);
        let deleted: Vec<usize> = t.steps.iter().map(|s| s.deleted).collect();
        assert_eq!(deleted, reference_deletions(&g, &p, Some(3)));
        assert_eq!(deleted, vec![1, 2, 3]);
        assert!(t.certified.case_i.is_some());
    }

    #[test]
    fn algorithm2_cap_of_one() {
        let p = params("31/48", "1/10", "1/10");
        for mask in (0..1u64 << 45).step_by(1 << 40).take(32) {
            let g = Graph::from_pair_mask(10, mask).unwrap();
            let t = reduce_algorithm2(&g, &p).unwrap();
            assert!(t.steps.len() <= 1);
        }
        let t = reduce_algorithm2(&Graph::empty(10).unwrap(), &p).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.outcome, Outcome::BetaCapExit);
    }

    #[test]
    fn exhausted_when_everything_goes() {
        let t = reduce_algorithm1(&Graph::empty(3).unwrap(), &params("7/10", "1/10", "1/20")).unwrap();
        assert_eq!(t.outcome, Outcome::Exhausted);
        assert_eq!(t.steps.len(), 3);
        assert_eq!(t.final_graph.order(), 0);
        assert_eq!(t.steps.len() + t.final_graph.order(), 3);
    }

    #[test]
    fn size_floor_log_space() {
        let p = params("7/10", "1/10", "1/20");
        assert_eq!(p.size_floor(1000), 1);
        let p = params("7/10", "2/3", "49/100");
        // c = 6^(-3/(2/3·49/100)) ≈ 7.18e-8
        assert_eq!(p.size_floor(100_000_000), 8);
    }

    #[test]
    fn lemma_min_examples() {
        let c = check_lemma_min(&Graph::complete(2).unwrap(), 1e-10).unwrap();
        assert_eq!(c.lhs, 1.0);
        assert_eq!(c.rhs, 1.0);
        assert_eq!(c.slack, 0.0);
        for n in 2..10 {
            // regular graphs meet the bound with equality
            let c = check_lemma_min(&Graph::complete(n).unwrap(), 1e-10).unwrap();
            assert!(c.holds && c.slack.abs() < 1e-9, "n={n}: {c:?}");
            assert_eq!(c.vertex, 0);
        }
        // star K_{1,4}: centre 4l, leaves l, l² = 1/20, so lhs = (25 − 10 + 5)/20 = 1
        let c = check_lemma_min(&Graph::star(4).unwrap(), 1e-10).unwrap();
        assert_eq!(c.vertex, 1);
        assert!(c.holds && (c.lhs - 1.0).abs() < 1e-9);
        let c = check_lemma_min(&Graph::path(4).unwrap(), 1e-10).unwrap();
        assert!(c.holds && c.slack > 0.1);
    }

    #[test]
    fn lemma_sdf_examples() {
        let c = check_lemma_sdf(&Graph::complete(4).unwrap(), 1e-10).unwrap();
        assert!((c.lhs - 2.0).abs() < 1e-9);
        // x_u = 1/2: D = 0, rhs = q/3 = 2
        assert!((c.rhs - 2.0).abs() < 1e-9 && c.holds);
        let c = check_lemma_sdf(&Graph::path(3).unwrap(), 1e-10).unwrap();
        assert_eq!(c.vertex, 0);
        assert!((c.lhs - 2.0).abs() < 1e-9 && c.holds);
        let c = check_lemma_sdf(&Graph::cycle(4).unwrap(), 1e-10).unwrap();
        assert!((c.lhs - 1.5).abs() < 1e-9 && c.holds);
        assert!(check_lemma_sdf(&Graph::complete(2).unwrap(), 1e-10).is_err());
    }

    #[test]
    fn trace_serializes() {
        let t = reduce_algorithm1(&Graph::star(5).unwrap(), &params("11/20", "1/5", "1/20")).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"gamma\":\"11/20\""));
        let back: ReductionTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
