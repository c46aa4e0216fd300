//! Randomized dense graphs avoiding large blowups.
//!
//! * [`blowup_free_construction`]: `T(n,k)` with random edges planted in
//!   one part at density `p = 2εk²`, then every `K_{t,t}` inside that part
//!   broken. The result has no `K_{k+1}[t]`.
//! * [`kk_plus_free_construction`]: a random graph `G(2n/k, 2/3)` with every
//!   `K_{t,t}` broken, joined to `T(n − 2n/k, k−2)`. The result has no
//!   `K_k^+[t]`.
//!
//! Attempts draw from independent SplitMix64 streams; the first attempt
//! whose certificates all pass is kept. Certificates are recomputed from
//! the final graph alone.

use crate::error::{invalid, Result};
use crate::graph::{bit, join, low_mask, turan, Bits, Graph, Row};
use crate::graph6::serde_graph6;
use crate::rational::{serde_rational, to_f64, Rational};
use crate::rng::{derive_seed, SplitMix64};
use crate::spectral::{q_radius, DEFAULT_TOL};
use crate::substructure::{find_multipartite, max_blowup, max_kk_plus, Witness};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// Default number of attempts.
pub const DEFAULT_ATTEMPTS: usize = 64;

/// Independent freeness re-checks by full blowup search run up to this order.
pub const FULL_SEARCH_MAX_N: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    BlowupFree,
    KkPlusFree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeCheck {
    pub edges: usize,
    /// Exact threshold the count must exceed.
    #[serde(with = "serde_rational")]
    pub threshold: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QBoundCheck {
    /// `4m/n`, a lower bound on `q`.
    pub four_m_over_n: f64,
    pub q: f64,
    pub target: f64,
    /// `4m/n > target`, decided exactly.
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreenessCheck {
    pub pattern: String,
    /// `K_{t,t}` search inside the planted vertex set found nothing.
    pub local_pass: bool,
    /// Full search over the whole graph, run when `n` is small enough.
    pub full_search: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub kind: ConstructionKind,
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::rational::serde_opt_rational", default)]
    pub eps: Option<Rational>,
    #[serde(with = "serde_rational")]
    pub p: Rational,
    pub t: usize,
    pub seed: u64,
    /// Index of the reported attempt and the seed of its stream.
    pub attempt: usize,
    pub stream_seed: u64,
    pub attempts_tried: usize,
    pub attempt_cap: usize,
    /// Edges deleted while breaking `K_{t,t}` copies.
    pub deletions: usize,
    /// Vertices of the random part.
    pub planted: Vec<usize>,
    #[serde(with = "serde_graph6")]
    pub graph: Graph,
    pub edge_count: usize,
    /// For the blowup-free graph: whether `n ≥ 2k/ε` (reported only).
    pub size_precondition: Option<bool>,
    /// Edges inside the random part against their own threshold (the
    /// second construction needs `e(G') > (n/k)²`).
    pub planted_edge_check: Option<EdgeCheck>,
    pub edge_check: EdgeCheck,
    pub q_bound_check: QBoundCheck,
    pub freeness_check: FreenessCheck,
    pub pass: bool,
}

/// Smallest `t ≥ 1` with `(den/num)^t ≥ (a/b)²`, where `p = num/den < 1`.
pub fn exact_t(p: Rational, a: u64, b: u64) -> usize {
    let (num, den) = (*p.numer() as u64, *p.denom() as u64);
    let lhs_base = BigUint::from(den);
    let rhs_base = BigUint::from(num);
    let target_a = BigUint::from(a).pow(2);
    let target_b = BigUint::from(b).pow(2);
    let mut t = 1u32;
    // (den/num)^t · b² ≥ a² ⇔ den^t · b² ≥ num^t · a²
    while lhs_base.pow(t) * &target_b < rhs_base.pow(t) * &target_a {
        t += 1;
    }
    t as usize
}

/// One `K_{t,t}` (as a subgraph) inside `within`.
pub fn find_ktt(g: &Graph, within: &[usize], t: usize) -> Result<Option<Witness>> {
    if t == 0 {
        return Err(invalid("K_{t,t} search needs t >= 1"));
    }
    for &v in within {
        g.check_vertex(v)?;
    }
    let mask = within.iter().fold(0 as Row, |m, &v| m | bit(v));
    Ok(find_multipartite(g, mask, 2, t).map(|classes| Witness::Blowup { classes }))
}

/// Deletes the lexicographically smallest cross edge of each `K_{t,t}`
/// found inside `within` until none is left; returns the deletion count.
fn break_ktt(g: &mut Graph, within: Row, t: usize) -> usize {
    let mut deletions = 0;
    while let Some(classes) = find_multipartite(g, within, 2, t) {
        let (u, v) = classes[0]
            .iter()
            .flat_map(|&a| classes[1].iter().map(move |&b| (a.min(b), a.max(b))))
            .min()
            .expect("classes are nonempty");
        g.remove_edge(u, v);
        deletions += 1;
    }
    deletions
}

fn planted_random(g: &mut Graph, vertices: Row, p: Rational, rng: &mut SplitMix64) {
    let vs: Vec<usize> = Bits::new(vertices).collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if rng.bernoulli(p) {
                g.add_edge(u, v);
            }
        }
    }
}

fn q_check(g: &Graph, target: Rational) -> QBoundCheck {
    let (n, m) = (g.order() as i64, g.edge_count() as i64);
    let bound = Rational::new(4 * m, n.max(1));
    let q = q_radius(g, DEFAULT_TOL).map(|r| r.value).unwrap_or(0.0);
    QBoundCheck {
        four_m_over_n: to_f64(bound),
        q,
        target: to_f64(target),
        pass: bound > target,
    }
}

fn edge_check(edges: usize, threshold: Rational) -> EdgeCheck {
    EdgeCheck {
        edges,
        threshold,
        pass: Rational::from_integer(edges as i64) > threshold,
    }
}

fn check_divisible(n: usize, k: usize) -> Result<()> {
    if k == 0 || n % k != 0 {
        return Err(invalid(format!("k = {k} must divide n = {n}")));
    }
    Ok(())
}

/// Dense `K_{k+1}[t]`-free graph built from `T(n,k)` with random edges in
/// its first part, `p = 2εk²`, `t = ⌈2 log(n/k) / log(1/p)⌉` (computed
/// exactly).
pub fn blowup_free_construction(
    n: usize,
    k: usize,
    eps: Rational,
    seed: u64,
    attempt_cap: usize,
) -> Result<ConstructionReport> {
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    check_divisible(n, k)?;
    let zero = Rational::from_integer(0);
    let kk = Rational::from_integer((k * k) as i64);
    if eps <= zero {
        return Err(invalid("eps must be positive"));
    }
    let p = eps * kk * 2;
    if p >= Rational::from_integer(1) {
        return Err(invalid(format!("p = 2 eps k^2 = {p} must be below 1")));
    }
    if attempt_cap == 0 {
        return Err(invalid("attempt cap must be positive"));
    }
    let part = n / k;
    let t = exact_t(p, part as u64, 1);
    let base = turan(n, k)?.graph;
    let planted = low_mask(part);
    let (nr, kr) = (Rational::from_integer(n as i64), Rational::from_integer(k as i64));
    let one = Rational::from_integer(1);
    let threshold = (one - one / kr) * nr * nr / 2 + eps * nr * nr / 2;
    let q_target = (one - one / kr + eps) * nr * 2;
    let size_ok = nr >= kr * 2 / eps;

    let mut last = None;
    for attempt in 0..attempt_cap {
        let stream_seed = derive_seed(seed, attempt as u64);
        let mut rng = SplitMix64::new(stream_seed);
        let mut g = base.clone();
        planted_random(&mut g, planted, p, &mut rng);
        let deletions = break_ktt(&mut g, planted, t);

        let freeness = blowup_freeness(&g, planted, k, t);
        let edges = edge_check(g.edge_count(), threshold);
        let pass = freeness.pass && edges.pass;
        let report = ConstructionReport {
            kind: ConstructionKind::BlowupFree,
            n,
            k,
            eps: Some(eps),
            p,
            t,
            seed,
            attempt,
            stream_seed,
            attempts_tried: attempt + 1,
            attempt_cap,
            deletions,
            planted: Bits::new(planted).collect(),
            edge_count: g.edge_count(),
            size_precondition: Some(size_ok),
            planted_edge_check: None,
            edge_check: edges,
            q_bound_check: q_check(&g, q_target),
            freeness_check: freeness,
            graph: g,
            pass,
        };
        if pass {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one attempt"))
}

fn blowup_freeness(g: &Graph, planted: Row, k: usize, t: usize) -> FreenessCheck {
    let local_pass = find_multipartite(g, planted, 2, t).is_none();
    let full_search = (g.order() <= FULL_SEARCH_MAX_N).then(|| {
        max_blowup(g, k + 1).map(|(found, _)| found < t).unwrap_or(false)
    });
    FreenessCheck {
        pattern: format!("K_{}[{}]", k + 1, t),
        local_pass,
        full_search,
        pass: local_pass && full_search.unwrap_or(true),
    }
}

/// Graph with more edges than `T(n,k)` but no `K_k^+[t]`,
/// `t = ⌈2 log(2n/k) / log(3/2)⌉` (computed exactly): `G(2n/k, 2/3)` with
/// every `K_{t,t}` broken, joined to `T(n − 2n/k, k − 2)`.
pub fn kk_plus_free_construction(n: usize, k: usize, seed: u64, attempt_cap: usize) -> Result<ConstructionReport> {
    if k < 2 {
        return Err(invalid("k must be at least 2"));
    }
    check_divisible(n, k)?;
    if n <= 3 * k {
        return Err(invalid(format!("need n > 3k, got n = {n}, k = {k}")));
    }
    if attempt_cap == 0 {
        return Err(invalid("attempt cap must be positive"));
    }
    let a = 2 * n / k;
    let p = Rational::new(2, 3);
    let t = exact_t(p, a as u64, 1);
    let rest = turan(n - a, k - 2)?.graph;
    let planted = low_mask(a);
    let (nr, kr) = (Rational::from_integer(n as i64), Rational::from_integer(k as i64));
    let one = Rational::from_integer(1);
    let threshold = (one - one / kr) * nr * nr / 2;
    let planted_threshold = (nr / kr) * (nr / kr);
    let q_target = (one - one / kr) * nr * 2;

    let mut last = None;
    for attempt in 0..attempt_cap {
        let stream_seed = derive_seed(seed, attempt as u64);
        let mut rng = SplitMix64::new(stream_seed);
        let mut gp = Graph::empty(a)?;
        planted_random(&mut gp, planted, p, &mut rng);
        let deletions = break_ktt(&mut gp, planted, t);
        let g = join(&gp, &rest)?;

        let planted_edges = g.induced(planted).0.edge_count();
        let planted_check = edge_check(planted_edges, planted_threshold);
        let edges = edge_check(g.edge_count(), threshold);
        let freeness = kk_plus_freeness(&g, planted, k, t);
        let pass = freeness.pass && edges.pass && planted_check.pass;
        let report = ConstructionReport {
            kind: ConstructionKind::KkPlusFree,
            n,
            k,
            eps: None,
            p,
            t,
            seed,
            attempt,
            stream_seed,
            attempts_tried: attempt + 1,
            attempt_cap,
            deletions,
            planted: Bits::new(planted).collect(),
            edge_count: g.edge_count(),
            size_precondition: None,
            planted_edge_check: Some(planted_check),
            edge_check: edges,
            q_bound_check: q_check(&g, q_target),
            freeness_check: freeness,
            graph: g,
            pass,
        };
        if pass {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one attempt"))
}

fn kk_plus_freeness(g: &Graph, planted: Row, k: usize, t: usize) -> FreenessCheck {
    let local_pass = find_multipartite(g, planted, 2, t).is_none();
    let full_search = (g.order() <= FULL_SEARCH_MAX_N).then(|| {
        max_kk_plus(g, k).map(|(found, _)| found < t).unwrap_or(false)
    });
    FreenessCheck {
        pattern: format!("K_{}^+[{}]", k, t),
        local_pass,
        full_search,
        pass: local_pass && full_search.unwrap_or(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::write_graph6;

    #[test]
    fn exact_t_values() {
        // 2^t ≥ 36
        assert_eq!(exact_t(Rational::new(1, 2), 6, 1), 6);
        // 4^t ≥ 64, where a float ceil can land on 4
        assert_eq!(exact_t(Rational::new(1, 4), 8, 1), 3);
        // (3/2)^t ≥ 64
        assert_eq!(exact_t(Rational::new(2, 3), 8, 1), 11);
        // (3/2)^t ≥ 100
        assert_eq!(exact_t(Rational::new(2, 3), 10, 1), 12);
        assert_eq!(exact_t(Rational::new(1, 2), 1, 1), 1);
    }

    #[test]
    fn ktt_examples() {
        let all = |n: usize| (0..n).collect::<Vec<_>>();
        let g = Graph::complete_bipartite(3, 3).unwrap();
        assert!(find_ktt(&g, &all(6), 3).unwrap().unwrap().validate(&g));
        assert!(find_ktt(&Graph::cycle(5).unwrap(), &all(5), 2).unwrap().is_none());
        let k4 = Graph::complete(4).unwrap();
        assert!(find_ktt(&k4, &all(4), 2).unwrap().unwrap().validate(&k4));
        assert!(find_ktt(&k4, &[0, 1, 2], 2).unwrap().is_none());
        assert!(find_ktt(&k4, &[0, 9], 1).is_err());
        assert!(find_ktt(&k4, &all(4), 0).is_err());
    }

    #[test]
    fn blowup_free_small_case() {
        // p = 1/2, t = 6 exceeds half of |U| = 6, so nothing is ever deleted
        let r = blowup_free_construction(12, 2, Rational::new(1, 16), 7, 64).unwrap();
        assert_eq!(r.p, Rational::new(1, 2));
        assert_eq!(r.t, 6);
        assert_eq!(r.deletions, 0);
        assert!(r.freeness_check.pass);
        assert_eq!(r.size_precondition, Some(false));
    }

    #[test]
    fn blowup_free_rejections() {
        assert!(blowup_free_construction(12, 2, Rational::new(1, 8), 1, 64).is_err());
        assert!(blowup_free_construction(13, 2, Rational::new(1, 32), 1, 64).is_err());
        assert!(blowup_free_construction(12, 2, Rational::from_integer(0), 1, 64).is_err());
    }

    #[test]
    fn blowup_free_is_deterministic() {
        let a = blowup_free_construction(16, 2, Rational::new(1, 32), 99, 64).unwrap();
        let b = blowup_free_construction(16, 2, Rational::new(1, 32), 99, 64).unwrap();
        assert_eq!(write_graph6(&a.graph), write_graph6(&b.graph));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.t, 3);
        assert!(a.pass);
        // certificates depend on the graph only
        assert_eq!(blowup_freeness(&a.graph, low_mask(8), 2, 3), a.freeness_check);
        // the other parts are untouched
        let (rest, _) = a.graph.induced(a.graph.vertex_mask() & !low_mask(8));
        assert_eq!(rest.edge_count(), 0);
    }

    #[test]
    fn kk_plus_free_cases() {
        let r = kk_plus_free_construction(12, 3, 5, 64).unwrap();
        assert_eq!(r.t, 11);
        assert_eq!(r.planted.len(), 8);
        assert_eq!(r.deletions, 0);
        assert_eq!(r.planted_edge_check.as_ref().unwrap().threshold, Rational::from_integer(16));

        let r = kk_plus_free_construction(8, 2, 5, 64).unwrap();
        assert_eq!(r.graph.order(), 8);
        assert_eq!(r.planted.len(), 8);

        assert!(kk_plus_free_construction(9, 3, 1, 64).is_err());
        assert!(kk_plus_free_construction(14, 3, 1, 64).is_err());
    }
}
