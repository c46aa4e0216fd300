//! Spectral radii of the signless Laplacian `Q = D + A` and the adjacency
//! matrix `A`, computed per connected component by shifted power iteration
//! and certified by the residual `‖Mx − value·x‖₂`.

use crate::error::{invalid, Error, Result};
use crate::graph::{Bits, Graph, Row};
use serde::{Deserialize, Serialize};

/// Default residual tolerance for eigen-solves.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Two component radii closer than this count as tied.
const COMPONENT_TIE: f64 = 1e-9;

/// Coordinates closer than this count as tied in [`perron_min_vertex`].
pub const COORD_TIE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Matrix {
    /// Signless Laplacian `D + A`.
    Q,
    /// Adjacency matrix `A`.
    A,
}

impl std::str::FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(Matrix::Q),
            "a" | "A" | "lambda" => Ok(Matrix::A),
            _ => Err(invalid(format!("unknown matrix `{s}` (expected q or a)"))),
        }
    }
}

/// Largest eigenvalue with a nonnegative unit eigenvector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Iteration cap `100·n·ln(n+2)`.
pub fn max_iterations(n: usize) -> usize {
    (100.0 * n as f64 * ((n + 2) as f64).ln()).ceil() as usize
}

/// Signless Laplacian spectral radius `q(G)`.
pub fn q_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    radius(g, Matrix::Q, tol)
}

/// Adjacency spectral radius `λ(G)`.
pub fn lambda_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    radius(g, Matrix::A, tol)
}

/// Spectral radius of `matrix` for `g`.
///
/// Each connected component is solved on its own; the reported vector is
/// supported on the first component (by lowest vertex) whose radius is not
/// beaten by more than `1e-9`, and is zero elsewhere.
pub fn radius(g: &Graph, matrix: Matrix, tol: f64) -> Result<SpectralResult> {
    let n = g.order();
    if n == 0 {
        return Err(invalid("spectral radius of the null graph is undefined"));
    }
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let mut best: Option<(f64, Row, Vec<f64>, usize, bool)> = None;
    let mut iterations = 0;
    let mut converged = true;
    for comp in g.components() {
        let (value, x, iters, ok) = solve_component(g, comp, matrix, tol);
        iterations += iters;
        converged &= ok;
        let better = match &best {
            None => true,
            Some((bv, ..)) => value > bv + COMPONENT_TIE,
        };
        if better {
            best = Some((value, comp, x, iters, ok));
        }
    }
    let (_, _, mut vector, _, _) = best.expect("n >= 1 gives a component");
    normalize(&mut vector);
    let value = rayleigh(g, matrix, &vector);
    let residual = residual(g, matrix, &vector, value);
    Ok(SpectralResult {
        value,
        vector,
        residual,
        iterations,
        converged: converged && residual <= tol,
    })
}

/// Power iteration on `M + I` restricted to `comp`, from the all-ones start.
/// Returns the Rayleigh value, the iterate (zero off `comp`), iteration
/// count, and whether the residual reached `tol`. Falls back to a dense
/// Jacobi eigensolve when the iteration cap is hit.
fn solve_component(g: &Graph, comp: Row, matrix: Matrix, tol: f64) -> (f64, Vec<f64>, usize, bool) {
    let n = g.order();
    let size = comp.count_ones() as usize;
    let mut x = vec![0.0; n];
    if size == 1 {
        x[comp.trailing_zeros() as usize] = 1.0;
        return (0.0, x, 0, true);
    }
    for v in Bits::new(comp) {
        x[v] = 1.0;
    }
    let cap = max_iterations(n);
    let mut y = vec![0.0; n];
    for it in 1..=cap {
        apply(g, comp, matrix, &x, &mut y);
        // y = (M + I)x; rescale by the largest entry to keep regular graphs exact
        let mut top = 0.0f64;
        for v in Bits::new(comp) {
            y[v] += x[v];
            top = top.max(y[v]);
        }
        for v in Bits::new(comp) {
            x[v] = y[v] / top;
        }
        if it % 4 == 0 || it < 4 {
            let value = rayleigh(g, matrix, &x);
            if scaled_residual(g, comp, matrix, &x, value, &mut y) <= tol {
                return (value, x, it, true);
            }
        }
    }
    let (value, v) = jacobi_top(g, comp, matrix);
    let ok = scaled_residual(g, comp, matrix, &v, value, &mut y) <= tol;
    (value, v, cap, ok)
}

#[inline]
fn apply(g: &Graph, comp: Row, matrix: Matrix, x: &[f64], y: &mut [f64]) {
    for v in Bits::new(comp) {
        let mut s = 0.0;
        for w in g.neighbors(v) {
            s += x[w];
        }
        if matrix == Matrix::Q {
            s += g.degree(v) as f64 * x[v];
        }
        y[v] = s;
    }
}

/// Rayleigh quotient `xᵀMx / xᵀx` evaluated edge by edge.
pub fn rayleigh(g: &Graph, matrix: Matrix, x: &[f64]) -> f64 {
    let norm2: f64 = x.iter().map(|v| v * v).sum();
    if norm2 == 0.0 {
        return 0.0;
    }
    let num: f64 = g
        .edges()
        .map(|(i, j)| match matrix {
            Matrix::Q => (x[i] + x[j]).powi(2),
            Matrix::A => 2.0 * x[i] * x[j],
        })
        .sum();
    num / norm2
}

/// `‖Mx − value·x‖₂` for a unit vector `x`.
pub fn residual(g: &Graph, matrix: Matrix, x: &[f64], value: f64) -> f64 {
    let mut y = vec![0.0; g.order()];
    apply(g, g.vertex_mask(), matrix, x, &mut y);
    y.iter()
        .zip(x)
        .map(|(a, b)| (a - value * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn scaled_residual(g: &Graph, comp: Row, matrix: Matrix, x: &[f64], value: f64, y: &mut [f64]) -> f64 {
    apply(g, comp, matrix, x, y);
    let mut r2 = 0.0;
    let mut n2 = 0.0;
    for v in Bits::new(comp) {
        r2 += (y[v] - value * x[v]).powi(2);
        n2 += x[v] * x[v];
    }
    (r2 / n2).sqrt()
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

/// Cyclic Jacobi eigensolve of the dense component matrix; returns the top
/// eigenvalue and an entrywise-nonnegative eigenvector scattered to `n`.
fn jacobi_top(g: &Graph, comp: Row, matrix: Matrix) -> (f64, Vec<f64>) {
    let ids: Vec<usize> = Bits::new(comp).collect();
    let k = ids.len();
    let mut a = vec![0.0; k * k];
    for (i, &u) in ids.iter().enumerate() {
        for (j, &v) in ids.iter().enumerate() {
            if g.has_edge(u, v) {
                a[i * k + j] = 1.0;
            }
        }
        if matrix == Matrix::Q {
            a[i * k + i] = g.degree(u) as f64;
        }
    }
    let mut vecs = vec![0.0; k * k];
    for i in 0..k {
        vecs[i * k + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * k + j].powi(2))
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                let apq = a[p * k + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * k + q] - a[p * k + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..k {
                    let (arp, arq) = (a[r * k + p], a[r * k + q]);
                    a[r * k + p] = c * arp - s * arq;
                    a[r * k + q] = s * arp + c * arq;
                }
                for r in 0..k {
                    let (apr, aqr) = (a[p * k + r], a[q * k + r]);
                    a[p * k + r] = c * apr - s * aqr;
                    a[q * k + r] = s * apr + c * aqr;
                }
                for r in 0..k {
                    let (vrp, vrq) = (vecs[r * k + p], vecs[r * k + q]);
                    vecs[r * k + p] = c * vrp - s * vrq;
                    vecs[r * k + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let top = (0..k)
        .max_by(|&i, &j| a[i * k + i].total_cmp(&a[j * k + j]))
        .expect("component is nonempty");
    let mut x = vec![0.0; g.order()];
    for (i, &u) in ids.iter().enumerate() {
        x[u] = vecs[i * k + top].abs();
    }
    normalize(&mut x);
    (rayleigh(g, matrix, &x), x)
}

/// Vertex with the smallest eigenvector coordinate; coordinates within
/// `1e-9` of the minimum tie and the lowest index wins.
pub fn perron_min_vertex(res: &SpectralResult) -> usize {
    let min = res.vector.iter().copied().fold(f64::INFINITY, f64::min);
    res.vector
        .iter()
        .position(|&x| x <= min + COORD_TIE)
        .unwrap_or(0)
}

/// `q` of the complete multipartite graph with the given part sizes.
///
/// The quotient matrix is `diag(n − 2s_a) + 1·sᵀ`, so its largest
/// eigenvalue is the root above `n − 2·min s` of
/// `Σ s_a / (μ − n + 2s_a) = 1`, found by bisection.
pub fn q_multipartite_exact(part_sizes: &[usize]) -> Result<f64> {
    if part_sizes.is_empty() {
        return Err(invalid("part size list is empty"));
    }
    if part_sizes.contains(&0) {
        return Err(invalid("part sizes must be at least 1"));
    }
    let n: usize = part_sizes.iter().sum();
    let nf = n as f64;
    let smin = *part_sizes.iter().min().unwrap() as f64;
    let f = |mu: f64| -> f64 {
        part_sizes
            .iter()
            .map(|&s| s as f64 / (mu - nf + 2.0 * s as f64))
            .sum::<f64>()
            - 1.0
    };
    let (mut lo, mut hi) = (nf - 2.0 * smin, 2.0 * nf);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The three lower bounds `4m/n ≤ 2λ ≤ q` and `Σd²/m ≤ q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBounds {
    pub four_e_over_n: f64,
    /// Absent when the graph has no edges.
    pub degree_power_over_m: Option<f64>,
    pub twice_lambda: f64,
}

pub fn q_lower_bounds(g: &Graph, tol: f64) -> Result<LowerBounds> {
    let n = g.order();
    if n == 0 {
        return Err(invalid("bounds need at least one vertex"));
    }
    let m = g.edge_count();
    let lambda = lambda_radius(g, tol)?;
    if !lambda.converged {
        return Err(Error::Solver(format!("adjacency radius residual {}", lambda.residual)));
    }
    Ok(LowerBounds {
        four_e_over_n: 4.0 * m as f64 / n as f64,
        degree_power_over_m: (m > 0).then(|| g.degree_square_sum() as f64 / m as f64),
        twice_lambda: 2.0 * lambda.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_multipartite, turan};

    const TOL: f64 = DEFAULT_TOL;

    fn q(g: &Graph) -> f64 {
        let r = q_radius(g, TOL).unwrap();
        assert!(r.converged, "{g:?}");
        r.value
    }

    fn lam(g: &Graph) -> f64 {
        let r = lambda_radius(g, TOL).unwrap();
        assert!(r.converged, "{g:?}");
        r.value
    }

    #[test]
    fn q_examples() {
        for n in 2..10 {
            assert!((q(&Graph::complete(n).unwrap()) - 2.0 * (n - 1) as f64).abs() < 1e-9);
        }
        assert!((q(&Graph::star(4).unwrap()) - 5.0).abs() < 1e-9);
        assert!((q(&Graph::path(3).unwrap()) - 3.0).abs() < 1e-9);
        assert_eq!(q(&Graph::complete(2).unwrap()), 2.0);
    }

    #[test]
    fn lambda_examples() {
        assert!((lam(&Graph::complete(5).unwrap()) - 4.0).abs() < 1e-9);
        assert!((lam(&Graph::complete_bipartite(2, 2).unwrap()) - 2.0).abs() < 1e-9);
        assert!((lam(&Graph::path(3).unwrap()) - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn null_graph_rejected() {
        assert!(q_radius(&Graph::empty(0).unwrap(), TOL).is_err());
        let r = q_radius(&Graph::empty(3).unwrap(), TOL).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.vector, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn disconnected_vector_on_winning_component() {
        // K_2 + K_3: K_3 wins
        let g = Graph::complete(2).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        let r = q_radius(&g, TOL).unwrap();
        assert!((r.value - 4.0).abs() < 1e-9);
        assert_eq!(&r.vector[..2], &[0.0, 0.0]);
        // two K_3: tie goes to the lowest component
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        let r = q_radius(&g, TOL).unwrap();
        assert!(r.vector[0] > 0.5 && r.vector[3] == 0.0);
    }

    #[test]
    fn result_invariants() {
        let g = Graph::petersen().with_edge(0, 2).unwrap();
        for m in [Matrix::Q, Matrix::A] {
            let r = radius(&g, m, TOL).unwrap();
            assert!(r.converged && r.residual <= TOL);
            assert!(r.vector.iter().all(|&x| x >= 0.0));
            let norm: f64 = r.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() <= 1e-12);
            assert!((rayleigh(&g, m, &r.vector) - r.value).abs() <= 2.0 * r.residual + 1e-12);
        }
    }

    #[test]
    fn jacobi_fallback_agrees() {
        let g = Graph::petersen().with_edge(0, 2).unwrap();
        for m in [Matrix::Q, Matrix::A] {
            let (value, x) = jacobi_top(&g, g.vertex_mask(), m);
            let r = radius(&g, m, TOL).unwrap();
            assert!((value - r.value).abs() < 1e-9);
            assert!(residual(&g, m, &x, value) < 1e-9);
        }
    }

    #[test]
    fn perron_min_examples() {
        let r = q_radius(&Graph::star(4).unwrap(), TOL).unwrap();
        assert_eq!(perron_min_vertex(&r), 1);
        let r = q_radius(&Graph::complete(6).unwrap(), TOL).unwrap();
        assert_eq!(perron_min_vertex(&r), 0);
        let r = q_radius(&Graph::path(3).unwrap(), TOL).unwrap();
        assert_eq!(perron_min_vertex(&r), 0);
    }

    #[test]
    fn multipartite_examples() {
        for k in 1..6 {
            let v = q_multipartite_exact(&vec![3; k]).unwrap();
            let n = 3.0 * k as f64;
            assert!((v - 2.0 * (n - n / k as f64)).abs() < 1e-9);
        }
        assert!((q_multipartite_exact(&[3, 2]).unwrap() - 5.0).abs() < 1e-12);
        let t = turan(7, 3).unwrap();
        assert!((q_multipartite_exact(&[3, 2, 2]).unwrap() - q(&t.graph)).abs() < 1e-9);
        assert!(q_multipartite_exact(&[]).is_err());
        assert!(q_multipartite_exact(&[2, 0]).is_err());
    }

    #[test]
    fn multipartite_agrees_with_power_iteration() {
        for sizes in [vec![1, 1, 5], vec![7, 1], vec![4, 4, 3, 2, 1], vec![10, 9, 1, 1, 1, 1]] {
            let g = complete_multipartite(&sizes).unwrap().graph;
            assert!((q_multipartite_exact(&sizes).unwrap() - q(&g)).abs() < 1e-9);
        }
    }

    #[test]
    fn lower_bound_examples() {
        let b = q_lower_bounds(&Graph::complete(4).unwrap(), TOL).unwrap();
        assert!((b.four_e_over_n - 6.0).abs() < 1e-12);
        assert!((b.degree_power_over_m.unwrap() - 6.0).abs() < 1e-12);
        assert!((b.twice_lambda - 6.0).abs() < 1e-9);

        let b = q_lower_bounds(&Graph::path(3).unwrap(), TOL).unwrap();
        assert!((b.four_e_over_n - 8.0 / 3.0).abs() < 1e-12);
        assert_eq!(b.degree_power_over_m, Some(3.0));
        assert!((b.twice_lambda - 2.0 * 2f64.sqrt()).abs() < 1e-9);

        let b = q_lower_bounds(&Graph::star(4).unwrap(), TOL).unwrap();
        assert_eq!(b.degree_power_over_m, Some(5.0));

        let b = q_lower_bounds(&Graph::empty(3).unwrap(), TOL).unwrap();
        assert_eq!(b.degree_power_over_m, None);
    }
}
