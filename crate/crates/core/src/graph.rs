//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Each adjacency row is a single [`Row`] bit vector, so neighbourhood
//! intersections and degree counts are word operations. The `wide` feature
//! swaps the row type for a 128-bit integer.

use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[cfg(not(feature = "wide"))]
pub type Row = u64;
#[cfg(feature = "wide")]
pub type Row = u128;

/// Largest vertex count representable in one adjacency row.
pub const MAX_VERTICES: usize = Row::BITS as usize;

#[inline]
pub(crate) fn bit(v: usize) -> Row {
    (1 as Row) << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> Row {
    if n >= MAX_VERTICES {
        Row::MAX
    } else {
        bit(n) - 1
    }
}

/// Iterates over the set bits of a row in increasing order.
#[derive(Clone, Copy)]
pub struct Bits(Row);

impl Bits {
    pub fn new(row: Row) -> Self {
        Bits(row)
    }
}

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Converts a vertex list into a row mask.
pub fn mask_of(vertices: &[usize]) -> Row {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

/// Simple undirected graph with bit-vector adjacency rows.
///
/// Rows are symmetric with an empty diagonal; every constructor upholds this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Row>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let full = low_mask(n);
        Ok(Graph {
            n,
            adj: (0..n).map(|v| full & !bit(v)).collect(),
        })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges)
    }

    /// Star `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Ok(complete_multipartite(&[a, b])?.graph)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are valid")
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(invalid(format!("duplicate edge {u}-{v}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, validating symmetry and the diagonal.
    pub fn from_rows(rows: Vec<Row>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let outside = !low_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & outside != 0 {
                return Err(invalid(format!("row {u} has bits beyond vertex {n}")));
            }
            if row & bit(u) != 0 {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            for v in Bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(invalid(format!("asymmetric adjacency at {u}-{v}")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Graph whose edges are the set bits of `mask`, with bit `i` standing
    /// for the `i`-th pair in column-major upper-triangle order
    /// `(0,1), (0,2), (1,2), (0,3), ...` (the graph6 bit order).
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Self> {
        check_order(n)?;
        let mut g = Graph { n, adj: vec![0; n] };
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if idx < 64 && mask >> idx & 1 == 1 {
                    g.add_edge(i, j);
                }
                idx += 1;
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn row(&self, v: usize) -> Row {
        self.adj[v]
    }

    pub fn rows(&self) -> &[Row] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Minimum degree; 0 for the empty graph on zero vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Sum of squared degrees.
    pub fn degree_square_sum(&self) -> u64 {
        (0..self.n).map(|v| (self.degree(v) as u64).pow(2)).sum()
    }

    /// All vertices as a mask.
    pub fn vertex_mask(&self) -> Row {
        low_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Copy of the graph with edge `uv` added (no-op if present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(invalid(format!("self-loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.add_edge(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.remove_edge(u, v);
        Ok(g)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `G - v`: vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let low = low_mask(v);
        let adj = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| {
                let row = self.adj[u];
                (row & low) | ((row >> 1) & !low & low_mask(self.n - 1))
            })
            .collect();
        Ok(Graph { n: self.n - 1, adj })
    }

    /// Subgraph induced by `keep`, relabelled in increasing order.
    /// Returns the graph and the original id of each new vertex.
    pub fn induced(&self, keep: Row) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = Bits(keep & self.vertex_mask()).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            pos[v] = i;
        }
        let adj = ids
            .iter()
            .map(|&v| Bits(self.adj[v] & keep).fold(0, |r, w| r | bit(pos[w])))
            .collect();
        (Graph { n: ids.len(), adj }, ids)
    }

    /// Connected components as masks, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<Row> {
        let mut seen: Row = 0;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = bit(s);
            while frontier != 0 {
                let mut next = 0;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| full & !self.adj[v] & !bit(v)).collect(),
        }
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_order(n)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices { n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

/// A graph together with a partition of its vertex set into classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionedGraph {
    #[serde(with = "crate::graph6::serde_graph6")]
    pub graph: Graph,
    pub parts: Vec<Vec<usize>>,
}

impl PartitionedGraph {
    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// True when the parts are disjoint and cover every vertex.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.graph.order()];
        for &v in self.parts.iter().flatten() {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// Complete multipartite graph with consecutive index blocks as parts.
pub fn complete_multipartite(sizes: &[usize]) -> Result<PartitionedGraph> {
    let n: usize = sizes.iter().sum();
    check_order(n)?;
    let full = low_mask(n);
    let mut adj = vec![0; n];
    let mut parts = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &s in sizes {
        let block = low_mask(start + s) & !low_mask(start);
        for row in &mut adj[start..start + s] {
            *row = full & !block;
        }
        parts.push((start..start + s).collect());
        start += s;
    }
    Ok(PartitionedGraph {
        graph: Graph { n, adj },
        parts,
    })
}

/// Part sizes of the Turán graph `T(n,k)`: the first `n mod k` parts get
/// `ceil(n/k)` vertices, the rest `floor(n/k)`.
pub fn turan_part_sizes(n: usize, k: usize) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    let (q, r) = (n / k, n % k);
    (0..k).map(|i| q + usize::from(i < r)).collect()
}

/// Turán graph `T(n,k)` with parts assigned by ascending vertex index.
///
/// `turan(0, 0)` is the empty graph with no parts; `k = 0` with `n > 0`
/// is rejected.
pub fn turan(n: usize, k: usize) -> Result<PartitionedGraph> {
    if k == 0 && n > 0 {
        return Err(invalid("turan graph needs k >= 1 when n > 0"));
    }
    complete_multipartite(&turan_part_sizes(n, k))
}

/// Exact edge count of `T(n,k)`, `(n^2 - sum s_i^2) / 2`.
pub fn turan_edge_count(n: usize, k: usize) -> usize {
    let sq: usize = turan_part_sizes(n, k).iter().map(|s| s * s).sum();
    (n * n - sq) / 2
}

/// `t`-blowup of `h`: vertex `v` becomes the class `v*t .. v*t + t`.
pub fn blowup(h: &Graph, t: usize) -> Result<PartitionedGraph> {
    if t == 0 {
        return Err(invalid("blowup needs t >= 1"));
    }
    let n = h.order() * t;
    check_order(n)?;
    let class = |v: usize| low_mask((v + 1) * t) & !low_mask(v * t);
    let mut adj = vec![0; n];
    for v in 0..h.order() {
        let row = h.neighbors(v).fold(0, |r, w| r | class(w));
        for r in &mut adj[v * t..(v + 1) * t] {
            *r = row;
        }
    }
    Ok(PartitionedGraph {
        graph: Graph { n, adj },
        parts: (0..h.order()).map(|v| (v * t..(v + 1) * t).collect()).collect(),
    })
}

/// Join `g1 ∨ g2`: disjoint union plus every edge between the two sides.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let mut g = g1.disjoint_union(g2)?;
    let (n1, n) = (g1.order(), g.order());
    let right = low_mask(n) & !low_mask(n1);
    let left = low_mask(n1);
    for v in 0..n1 {
        g.adj[v] |= right;
    }
    for v in n1..n {
        g.adj[v] |= left;
    }
    Ok(g)
}

/// Named graph families used throughout the extremal constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `K_k[t]` plus one edge between vertices 0 and 1 of the first class.
    KkPlusBlowup { k: usize, t: usize },
    /// `S_{n,k} = K_k ∨ I_{n-k}`, clique on vertices `0..k`.
    SplitGraph { n: usize, k: usize },
    /// `B_{k,t} = K_k ∨ I_t`.
    GeneralizedBook { k: usize, t: usize },
    /// `T(n,k)` plus the edge between the two lowest vertices of part 1.
    TuranPlusEdge { n: usize, k: usize },
    /// `K_{n-s,s}` (larger side first when `n - s >= s`) plus an edge
    /// between the two lowest vertices of the larger side.
    CompleteBipartitePlusEdge { n: usize, s: usize },
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::KkPlusBlowup { k, t } => {
                if k == 0 || t < 2 {
                    return Err(invalid(format!(
                        "K_k^+[t] needs k >= 1 and t >= 2 (got k={k}, t={t})"
                    )));
                }
                complete_multipartite(&vec![t; k])?.graph.with_edge(0, 1)
            }
            Family::SplitGraph { n, k } => {
                if k == 0 || k > n {
                    return Err(invalid(format!("S_(n,k) needs 1 <= k <= n (got n={n}, k={k})")));
                }
                join(&Graph::complete(k)?, &Graph::empty(n - k)?)
            }
            Family::GeneralizedBook { k, t } => {
                if k < 2 || t == 0 {
                    return Err(invalid(format!("B_(k,t) needs k >= 2, t >= 1 (got k={k}, t={t})")));
                }
                join(&Graph::complete(k)?, &Graph::empty(t)?)
            }
            Family::TuranPlusEdge { n, k } => {
                if k == 0 || n <= k {
                    return Err(invalid(format!(
                        "T(n,k) plus an edge needs 1 <= k < n (got n={n}, k={k})"
                    )));
                }
                turan(n, k)?.graph.with_edge(0, 1)
            }
            Family::CompleteBipartitePlusEdge { n, s } => {
                if s == 0 || s >= n || (n - s).max(s) < 2 {
                    return Err(invalid(format!("K_(n-s,s)^+ needs 1 <= s < n (got n={n}, s={s})")));
                }
                let (a, b) = (n - s, s);
                let base = Graph::complete_bipartite(a, b)?;
                if a >= b {
                    base.with_edge(0, 1)
                } else {
                    base.with_edge(a, a + 1)
                }
            }
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    /// Parses `name:a,b`, e.g. `turan-plus-edge:12,3` or `split:12,2`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("family `{s}` must look like name:a,b")))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| invalid(format!("family arguments `{args}`: {e}")))?;
        let [a, b] = nums[..] else {
            return Err(invalid(format!("family `{s}` needs exactly two arguments")));
        };
        match name {
            "kk-plus" => Ok(Family::KkPlusBlowup { k: a, t: b }),
            "split" => Ok(Family::SplitGraph { n: a, k: b }),
            "book" => Ok(Family::GeneralizedBook { k: a, t: b }),
            "turan-plus-edge" => Ok(Family::TuranPlusEdge { n: a, k: b }),
            "bipartite-plus-edge" => Ok(Family::CompleteBipartitePlusEdge { n: a, s: b }),
            _ => Err(invalid(format!("unknown family `{name}`"))),
        }
    }
}

/// Plain edge-list text: `n m` header then one `u v` pair per line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::EdgeList("missing header".into()))?;
    let (n, m) = parse_pair(header)?;
    let edges = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
    if edges.len() != m {
        return Err(Error::EdgeList(format!("header promises {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::EdgeList(e.to_string()))
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::EdgeList(format!("bad line `{line}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_count_edges(g: &Graph) -> usize {
        let mut m = 0;
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                if g.has_edge(u, v) {
                    m += 1;
                }
            }
        }
        m
    }

    fn assert_simple(g: &Graph) {
        for u in 0..g.order() {
            assert!(!g.has_edge(u, u));
            for v in 0..g.order() {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn turan_examples() {
        let t = turan(4, 2).unwrap();
        assert_eq!(t.graph, Graph::complete_bipartite(2, 2).unwrap());
        assert_eq!(t.graph.edge_count(), 4);

        let t = turan(5, 5).unwrap();
        assert_eq!(t.graph, Graph::complete(5).unwrap());
        assert_eq!(t.graph.edge_count(), 10);

        let t = turan(7, 3).unwrap();
        assert_eq!(t.part_sizes(), vec![3, 2, 2]);
        assert_eq!(t.parts[0], vec![0, 1, 2]);
        assert_eq!(pair_count_edges(&t.graph), 16);
        assert_eq!(t.graph.edge_count(), 16);
        assert!(t.is_partition());
    }

    #[test]
    fn turan_degenerate_inputs() {
        let t = turan(0, 0).unwrap();
        assert_eq!(t.graph.order(), 0);
        assert!(t.parts.is_empty());
        assert!(turan(3, 0).is_err());
        // k > n yields K_n with empty trailing parts
        let t = turan(2, 4).unwrap();
        assert_eq!(t.part_sizes(), vec![1, 1, 0, 0]);
        assert_eq!(t.graph.edge_count(), 1);
    }

    #[test]
    fn turan_edge_lower_bound() {
        for n in 1..=MAX_VERTICES {
            for k in 1..=n {
                let g = turan(n, k).unwrap();
                assert_eq!(g.graph.edge_count(), turan_edge_count(n, k));
                let (nf, kf) = (n as f64, k as f64);
                let bound = (1.0 - 1.0 / kf) * nf * nf / 2.0 - kf / 8.0;
                assert!(g.graph.edge_count() as f64 >= bound - 1e-9, "n={n} k={k}");
                let sizes = g.part_sizes();
                assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            }
        }
    }

    #[test]
    fn blowup_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(blowup(&k3, 1).unwrap().graph, k3);
        let b = blowup(&Graph::complete(2).unwrap(), 2).unwrap();
        assert_eq!(b.graph, Graph::complete_bipartite(2, 2).unwrap());
        let b = blowup(&k3, 2).unwrap();
        assert_eq!(pair_count_edges(&b.graph), 12);
        assert_eq!(b.parts, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(blowup(&k3, 0).is_err());
    }

    #[test]
    fn blowup_edge_count_identity() {
        for mask in 0..64u64 {
            let h = Graph::from_pair_mask(4, mask).unwrap();
            for t in 1..=4 {
                let b = blowup(&h, t).unwrap();
                assert_simple(&b.graph);
                assert_eq!(b.graph.edge_count(), t * t * h.edge_count());
            }
        }
    }

    #[test]
    fn join_examples() {
        let star = join(&Graph::empty(1).unwrap(), &Graph::empty(4).unwrap()).unwrap();
        assert_eq!(star, Graph::star(4).unwrap());
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(join(&k3, &k3).unwrap(), Graph::complete(6).unwrap());
        let book = join(&Graph::complete(2).unwrap(), &Graph::empty(3).unwrap()).unwrap();
        assert_eq!(pair_count_edges(&book), 7);
        assert_eq!(book, Family::GeneralizedBook { k: 2, t: 3 }.build().unwrap());
    }

    #[test]
    fn join_edge_count_identity() {
        for a in 0..16u64 {
            for b in [0u64, 5, 63] {
                let g1 = Graph::from_pair_mask(3, a).unwrap();
                let g2 = Graph::from_pair_mask(4, b).unwrap();
                let j = join(&g1, &g2).unwrap();
                assert_simple(&j);
                assert_eq!(j.edge_count(), g1.edge_count() + g2.edge_count() + 12);
            }
        }
    }

    #[test]
    fn named_families() {
        assert_eq!(Family::SplitGraph { n: 5, k: 1 }.build().unwrap(), Graph::star(4).unwrap());
        let g = Family::KkPlusBlowup { k: 2, t: 2 }.build().unwrap();
        assert_eq!(pair_count_edges(&g), 5);
        let g = Family::TuranPlusEdge { n: 12, k: 3 }.build().unwrap();
        assert_eq!(turan_edge_count(12, 3), 48);
        assert_eq!(pair_count_edges(&g), 49);
        assert!(g.has_edge(0, 1));
        let g = Family::CompleteBipartitePlusEdge { n: 6, s: 2 }.build().unwrap();
        assert_eq!(g.edge_count(), 9);
        assert!(g.has_edge(0, 1));
        let g = Family::CompleteBipartitePlusEdge { n: 6, s: 4 }.build().unwrap();
        assert!(g.has_edge(2, 3));

        assert!(Family::KkPlusBlowup { k: 2, t: 0 }.build().is_err());
        assert!(Family::KkPlusBlowup { k: 2, t: 1 }.build().is_err());
        assert!(Family::SplitGraph { n: 3, k: 4 }.build().is_err());
        assert!(Family::TuranPlusEdge { n: 3, k: 3 }.build().is_err());
        assert!(Family::GeneralizedBook { k: 2, t: 0 }.build().is_err());
    }

    #[test]
    fn family_parsing() {
        let f: Family = "turan-plus-edge:12,3".parse().unwrap();
        assert_eq!(f, Family::TuranPlusEdge { n: 12, k: 3 });
        assert!("nope:1,2".parse::<Family>().is_err());
        assert!("split:1".parse::<Family>().is_err());
    }

    #[test]
    fn delete_vertex_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.delete_vertex(0).unwrap(), Graph::complete(2).unwrap());
        let star = Graph::star(4).unwrap();
        assert_eq!(star.delete_vertex(0).unwrap(), Graph::empty(4).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        let p = c5.delete_vertex(2).unwrap();
        // remaining path 3-4-0-1 relabelled to 2-3-0-1
        assert_eq!(p.edge_count(), 3);
        assert!(p.has_edge(2, 3) && p.has_edge(3, 0) && p.has_edge(0, 1));
        assert!(!p.has_edge(1, 2));
        assert!(k3.delete_vertex(3).is_err());
    }

    #[test]
    fn delete_vertex_matches_induced() {
        for mask in (0..1u64 << 10).step_by(7) {
            let g = Graph::from_pair_mask(5, mask).unwrap();
            for v in 0..5 {
                let (h, _) = g.induced(g.vertex_mask() & !bit(v));
                assert_eq!(g.delete_vertex(v).unwrap(), h);
            }
        }
    }

    #[test]
    fn components_and_rows() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![0b11, 0b11100, 0b100000]);
        assert!(!g.is_connected());
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert_eq!(Graph::from_rows(vec![0b10, 0b01]).unwrap(), Graph::complete(2).unwrap());
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::petersen();
        let text = write_edge_list(&g);
        assert!(text.starts_with("10 15\n"));
        assert_eq!(read_edge_list(&text).unwrap(), g);
        assert!(read_edge_list("3 2\n0 1\n").is_err());
        assert!(read_edge_list("3 1\n0 3\n").is_err());
        assert!(read_edge_list("3 1\n1 1\n").is_err());
    }
}
