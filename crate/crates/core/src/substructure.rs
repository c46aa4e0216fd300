//! Exact search for cliques, complete multipartite blowups, `K_k^+[t]`,
//! joints, generalized books, chromatic number and edit distance to the
//! Turán graph.

use crate::error::{invalid, Error, Result};
use crate::graph::{bit, low_mask, turan_edge_count, turan_part_sizes, Bits, Graph, Row};
use serde::{Deserialize, Serialize};

/// Largest order accepted by [`edit_distance_to_turan`].
pub const EDIT_DISTANCE_MAX_N: usize = 14;

/// A located substructure, checkable against the host graph with
/// [`Witness::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Classes of a complete multipartite subgraph.
    Blowup { classes: Vec<Vec<usize>> },
    /// Classes of a complete multipartite subgraph; `edge` lies inside
    /// `classes[0]`.
    KkPlus { classes: Vec<Vec<usize>>, edge: (usize, usize) },
    /// Cliques sharing `edge`, each listed in full.
    Joint { edge: (usize, usize), cliques: Vec<Vec<usize>> },
    /// A clique and vertices adjacent to all of it.
    Book { clique: Vec<usize>, apexes: Vec<usize> },
}

impl Witness {
    /// Re-checks every demanded edge in `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let in_range = |vs: &[usize]| vs.iter().all(|&v| v < g.order());
        let distinct = |vs: &[usize]| {
            let mut s = vs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        let is_clique = |vs: &[usize]| {
            vs.iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        };
        let multipartite = |classes: &[Vec<usize>]| {
            let t = classes.first().map_or(0, Vec::len);
            let all: Vec<usize> = classes.iter().flatten().copied().collect();
            t > 0
                && classes.iter().all(|c| c.len() == t)
                && in_range(&all)
                && distinct(&all)
                && classes.iter().enumerate().all(|(i, a)| {
                    classes[i + 1..]
                        .iter()
                        .all(|b| a.iter().all(|&x| b.iter().all(|&y| g.has_edge(x, y))))
                })
        };
        match self {
            Witness::Blowup { classes } => multipartite(classes),
            Witness::KkPlus { classes, edge } => {
                let (u, v) = *edge;
                multipartite(classes)
                    && classes[0].contains(&u)
                    && classes[0].contains(&v)
                    && u != v
                    && g.has_edge(u, v)
            }
            Witness::Joint { edge, cliques } => {
                let (u, v) = *edge;
                let r = cliques.first().map_or(0, Vec::len);
                let mut sorted: Vec<Vec<usize>> = cliques
                    .iter()
                    .map(|c| {
                        let mut c = c.clone();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                sorted.sort();
                sorted.dedup();
                sorted.len() == cliques.len()
                    && cliques.iter().all(|c| {
                        c.len() == r
                            && in_range(c)
                            && distinct(c)
                            && c.contains(&u)
                            && c.contains(&v)
                            && is_clique(c)
                    })
            }
            Witness::Book { clique, apexes } => {
                let mut all = clique.clone();
                all.extend(apexes);
                in_range(&all)
                    && distinct(&all)
                    && is_clique(clique)
                    && apexes.iter().all(|&a| clique.iter().all(|&c| g.has_edge(a, c)))
            }
        }
    }
}

#[inline]
fn above(v: usize) -> Row {
    !low_mask(v + 1)
}

/// Number of `r`-vertex cliques (`r = 0` counts the empty clique once).
pub fn count_cliques(g: &Graph, r: usize) -> u64 {
    count_cliques_in(g, g.vertex_mask(), r)
}

/// Number of `r`-cliques inside the vertex set `within`.
pub fn count_cliques_in(g: &Graph, within: Row, r: usize) -> u64 {
    fn rec(g: &Graph, cand: Row, r: usize) -> u64 {
        match r {
            0 => 1,
            1 => cand.count_ones() as u64,
            2 => Bits::new(cand)
                .map(|v| (g.row(v) & cand & above(v)).count_ones() as u64)
                .sum(),
            _ => Bits::new(cand)
                .map(|v| {
                    let next = g.row(v) & cand & above(v);
                    if (next.count_ones() as usize) < r - 1 {
                        0
                    } else {
                        rec(g, next, r - 1)
                    }
                })
                .sum(),
        }
    }
    rec(g, within & g.vertex_mask(), r)
}

/// Lists `r`-cliques inside `within` in lexicographic order.
fn list_cliques_in(g: &Graph, within: Row, r: usize) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, cand: Row, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 0 {
            out.push(cur.clone());
            return;
        }
        for v in Bits::new(cand) {
            let next = g.row(v) & cand & above(v);
            if (next.count_ones() as usize) + 1 < r {
                continue;
            }
            cur.push(v);
            rec(g, next, r - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, within & g.vertex_mask(), r, &mut Vec::new(), &mut out);
    out
}

/// Peels vertices with fewer than `need` neighbours inside `set`.
fn core(g: &Graph, mut set: Row, need: usize) -> Row {
    loop {
        let drop = Bits::new(set).fold(0, |d, v| {
            if ((g.row(v) & set).count_ones() as usize) < need {
                d | bit(v)
            } else {
                d
            }
        });
        if drop == 0 {
            return set;
        }
        set &= !drop;
    }
}

/// Finds `p` disjoint classes of size `t` inside `allowed`, all cross
/// pairs adjacent. Classes are ordered by their smallest vertex.
pub(crate) fn find_multipartite(g: &Graph, allowed: Row, p: usize, t: usize) -> Option<Vec<Vec<usize>>> {
    if p == 0 {
        return Some(Vec::new());
    }
    if t == 0 {
        return Some(vec![Vec::new(); p]);
    }
    let allowed = core(g, allowed & g.vertex_mask(), (p - 1) * t);
    let mut classes = Vec::with_capacity(p);
    if place_classes(g, allowed, p, t, 0, &mut classes) {
        Some(classes)
    } else {
        None
    }
}

/// Places the remaining `p` classes inside `allowed`, each class's minimum
/// above `floor`.
fn place_classes(g: &Graph, allowed: Row, p: usize, t: usize, floor: Row, classes: &mut Vec<Vec<usize>>) -> bool {
    if p == 0 {
        return true;
    }
    let pool = allowed & !floor;
    if ((pool.count_ones()) as usize) < p * t {
        return false;
    }
    let mut cur = Vec::with_capacity(t);
    pick_class(g, allowed, pool, p, t, &mut cur, classes)
}

/// Extends `cur` to a class of size `t` from `pool` (increasing order), then
/// recurses on the common neighbourhood for the remaining classes.
fn pick_class(
    g: &Graph,
    common: Row,
    pool: Row,
    p: usize,
    t: usize,
    cur: &mut Vec<usize>,
    classes: &mut Vec<Vec<usize>>,
) -> bool {
    if cur.len() == t {
        let floor = low_mask(cur[0] + 1);
        classes.push(cur.clone());
        if place_classes(g, common, p - 1, t, floor, classes) {
            return true;
        }
        classes.pop();
        return false;
    }
    let rest_needed = (p - 1) * t;
    let need_here = t - cur.len();
    for v in Bits::new(pool) {
        let later = pool & above(v);
        if (later.count_ones() as usize) + 1 < need_here {
            break;
        }
        let next_common = common & g.row(v);
        if (next_common.count_ones() as usize) < rest_needed {
            continue;
        }
        cur.push(v);
        // later classes must avoid this class, which the neighbourhood
        // restriction already guarantees
        if pick_class(g, next_common, later & !bit(v), p, t, cur, classes) {
            return true;
        }
        cur.pop();
        if cur.is_empty() && rest_needed == 0 {
            // a single class of size t from pool: first failure is final
            return false;
        }
    }
    false
}

/// Largest `t` with `K_parts[t] ⊆ g` as a subgraph (intra-class edges are
/// allowed). `t = 0` when `g` has no `K_parts`.
pub fn max_blowup(g: &Graph, parts: usize) -> Result<(usize, Option<Witness>)> {
    if parts < 2 {
        return Err(invalid("blowup search needs at least 2 classes"));
    }
    let mut best = (0, None);
    for t in 1..=g.order() / parts {
        match find_multipartite(g, g.vertex_mask(), parts, t) {
            Some(classes) => best = (t, Some(Witness::Blowup { classes })),
            None => break,
        }
    }
    Ok(best)
}

/// Largest `t ≥ 2` with `K_k[t] ⊆ g` and a host edge inside one class;
/// 0 when even `t = 2` fails.
pub fn max_kk_plus(g: &Graph, k: usize) -> Result<(usize, Option<Witness>)> {
    if k < 2 {
        return Err(invalid("K_k^+[t] search needs k >= 2"));
    }
    let mut best = (0, None);
    for t in 2..=g.order() / k {
        match find_kk_plus(g, k, t) {
            Some(w) => best = (t, Some(w)),
            None => break,
        }
    }
    Ok(best)
}

fn find_kk_plus(g: &Graph, k: usize, t: usize) -> Option<Witness> {
    let rest = (k - 1) * t;
    for (u, v) in g.edges() {
        let common = g.row(u) & g.row(v);
        if (common.count_ones() as usize) < rest {
            continue;
        }
        let others = g.vertex_mask() & !bit(u) & !bit(v);
        let mut extra = Vec::with_capacity(t - 2);
        if let Some(mut classes) = extend_special(g, common, others, k, t, &mut extra) {
            let mut first = vec![u, v];
            first.extend(extra);
            first.sort_unstable();
            classes.insert(0, first);
            return Some(Witness::KkPlus { classes, edge: (u, v) });
        }
    }
    None
}

/// Adds `t − 2` more vertices to the edge-hosting class, then places the
/// other `k − 1` classes in the common neighbourhood.
fn extend_special(
    g: &Graph,
    common: Row,
    pool: Row,
    k: usize,
    t: usize,
    extra: &mut Vec<usize>,
) -> Option<Vec<Vec<usize>>> {
    if extra.len() == t - 2 {
        return find_multipartite(g, common, k - 1, t);
    }
    for w in Bits::new(pool) {
        let next = common & g.row(w);
        if (next.count_ones() as usize) < (k - 1) * t {
            continue;
        }
        extra.push(w);
        if let Some(c) = extend_special(g, next, pool & above(w), k, t, extra) {
            return Some(c);
        }
        extra.pop();
    }
    None
}

/// `js_r(G)`: the most `r`-cliques sharing one edge, and the first edge
/// (lexicographically) attaining it. The edge is `None` when the maximum
/// is 0.
pub fn joint_size(g: &Graph, r: usize) -> Result<(u64, Option<(usize, usize)>)> {
    if r < 3 {
        return Err(invalid("joint size needs r >= 3"));
    }
    let mut best = (0, None);
    for (u, v) in g.edges() {
        let c = count_cliques_in(g, g.row(u) & g.row(v), r - 2);
        if c > best.0 {
            best = (c, Some((u, v)));
        }
    }
    Ok(best)
}

/// The cliques behind [`joint_size`], as a witness.
pub fn joint_witness(g: &Graph, r: usize) -> Result<Option<Witness>> {
    let (_, edge) = joint_size(g, r)?;
    Ok(edge.map(|(u, v)| Witness::Joint {
        edge: (u, v),
        cliques: list_cliques_in(g, g.row(u) & g.row(v), r - 2)
            .into_iter()
            .map(|mut c| {
                c.push(u);
                c.push(v);
                c.sort_unstable();
                c
            })
            .collect(),
    }))
}

/// Largest `t` with `B_{k,t} = K_k ∨ I_t ⊆ g`; the witness is the first
/// maximizing `k`-clique in lexicographic order with its common
/// neighbourhood. `(0, None)` when `g` has no `K_k`.
pub fn generalized_book_size(g: &Graph, k: usize) -> Result<(usize, Option<Witness>)> {
    if k < 2 {
        return Err(invalid("generalized book needs k >= 2"));
    }
    let mut best: Option<(usize, Vec<usize>, Row)> = None;
    for clique in list_cliques_in(g, g.vertex_mask(), k) {
        let common = clique.iter().fold(g.vertex_mask(), |m, &v| m & g.row(v));
        let t = common.count_ones() as usize;
        if best.as_ref().map_or(true, |b| t > b.0) {
            best = Some((t, clique, common));
        }
    }
    Ok(match best {
        None => (0, None),
        Some((t, clique, common)) => (
            t,
            Some(Witness::Book {
                clique,
                apexes: Bits::new(common).collect(),
            }),
        ),
    })
}

/// Exact chromatic number by backtracking colouring (0 for the null graph).
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let lower = clique_number_lower(g);
    (lower.max(2)..=n)
        .find(|&k| colourable(g, &order, k))
        .unwrap_or(n)
}

/// Greedy clique size, a cheap lower bound on χ.
fn clique_number_lower(g: &Graph) -> usize {
    (0..g.order())
        .map(|s| {
            let mut cand = g.row(s);
            let mut size = 1;
            while cand != 0 {
                let v = Bits::new(cand)
                    .max_by_key(|&v| (g.row(v) & cand).count_ones())
                    .unwrap();
                cand &= g.row(v);
                size += 1;
            }
            size
        })
        .max()
        .unwrap_or(0)
}

fn colourable(g: &Graph, order: &[usize], k: usize) -> bool {
    fn rec(g: &Graph, order: &[usize], i: usize, k: usize, classes: &mut Vec<Row>) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let used = classes.len();
        for c in 0..used {
            if classes[c] & g.row(v) == 0 {
                classes[c] |= bit(v);
                if rec(g, order, i + 1, k, classes) {
                    return true;
                }
                classes[c] &= !bit(v);
            }
        }
        if used < k {
            classes.push(bit(v));
            if rec(g, order, i + 1, k, classes) {
                return true;
            }
            classes.pop();
        }
        false
    }
    rec(g, order, 0, k, &mut Vec::with_capacity(k))
}

/// Fewest edge additions plus deletions turning `g` into a complete
/// `k`-partite graph with part sizes differing by at most one.
///
/// For a balanced target the edit count is `2·(edges inside parts) +
/// e(T(n,k)) − e(G)`, so the search minimizes intra-part edges over
/// canonical balanced partitions with branch and bound.
pub fn edit_distance_to_turan(g: &Graph, k: usize) -> Result<usize> {
    let n = g.order();
    if k < 2 {
        return Err(invalid("edit distance needs k >= 2"));
    }
    if n > EDIT_DISTANCE_MAX_N {
        return Err(Error::ProfileLimit {
            what: format!("edit distance on {n} vertices"),
            limit: format!("n <= {EDIT_DISTANCE_MAX_N}"),
        });
    }
    let intra = min_intra_edges(g, k);
    Ok(2 * intra + turan_edge_count(n, k) - g.edge_count())
}

fn min_intra_edges(g: &Graph, k: usize) -> usize {
    let n = g.order();
    let sizes: Vec<usize> = turan_part_sizes(n, k).into_iter().filter(|&s| s > 0).collect();
    let big = sizes[..].first().copied().unwrap_or(0);
    let n_big = sizes.iter().filter(|&&s| s == big).count();
    let small_exists = sizes.iter().any(|&s| s < big);
    struct Search<'a> {
        g: &'a Graph,
        parts: usize,
        big: usize,
        n_big: usize,
        uneven: bool,
        best: usize,
    }
    impl Search<'_> {
        fn rec(&mut self, v: usize, masks: &mut Vec<Row>, full: usize, cost: usize) {
            if cost >= self.best {
                return;
            }
            let n = self.g.order();
            if v == n {
                self.best = cost;
                return;
            }
            let limit = if self.uneven && full >= self.n_big { self.big - 1 } else { self.big };
            for p in 0..masks.len() {
                let size = masks[p].count_ones() as usize;
                if size >= limit {
                    continue;
                }
                let add = (self.g.row(v) & masks[p]).count_ones() as usize;
                masks[p] |= bit(v);
                let nf = full + usize::from(size + 1 == self.big);
                self.rec(v + 1, masks, nf, cost + add);
                masks[p] &= !bit(v);
            }
            if masks.len() < self.parts {
                masks.push(bit(v));
                let nf = full + usize::from(self.big == 1);
                self.rec(v + 1, masks, nf, cost);
                masks.pop();
            }
        }
    }
    if n == 0 {
        return 0;
    }
    let mut s = Search {
        g,
        parts: sizes.len(),
        big,
        n_big,
        uneven: small_exists,
        best: usize::MAX,
    };
    s.rec(0, &mut Vec::with_capacity(sizes.len()), 0, 0);
    s.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blowup, turan, Family};

    fn brute_cliques(g: &Graph, r: usize) -> u64 {
        let n = g.order();
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == r)
            .filter(|&s| {
                let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
                vs.iter().all(|&a| vs.iter().all(|&b| a == b || g.has_edge(a, b)))
            })
            .count() as u64
    }

    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.order();
        for k in 1..=n {
            let total = (k as u64).pow(n as u32);
            for code in 0..total {
                let mut c = vec![0; n];
                let mut x = code;
                for slot in c.iter_mut() {
                    *slot = (x % k as u64) as usize;
                    x /= k as u64;
                }
                if g.edges().all(|(u, v)| c[u] != c[v]) {
                    return k;
                }
            }
        }
        0
    }

    /// Labelled balanced assignments, symmetric difference counted edge by edge.
    fn brute_edit(g: &Graph, k: usize) -> usize {
        let n = g.order();
        let want = {
            let mut s = turan_part_sizes(n, k);
            s.sort_unstable();
            s
        };
        let mut best = usize::MAX;
        for code in 0..(k as u64).pow(n as u32) {
            let mut lab = vec![0; n];
            let mut x = code;
            for slot in lab.iter_mut() {
                *slot = (x % k as u64) as usize;
                x /= k as u64;
            }
            let mut sizes = vec![0; k];
            for &l in &lab {
                sizes[l] += 1;
            }
            sizes.sort_unstable();
            if sizes != want {
                continue;
            }
            let mut d = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) != (lab[u] != lab[v]) {
                        d += 1;
                    }
                }
            }
            best = best.min(d);
        }
        best
    }

    #[test]
    fn clique_examples() {
        assert_eq!(count_cliques(&Graph::complete(4).unwrap(), 3), 4);
        assert_eq!(count_cliques(&Graph::cycle(5).unwrap(), 3), 0);
        assert_eq!(count_cliques(&turan(6, 3).unwrap().graph, 3), 8);
        assert_eq!(count_cliques(&Graph::complete(3).unwrap(), 5), 0);
        assert_eq!(count_cliques(&Graph::petersen(), 1), 10);
        assert_eq!(count_cliques(&Graph::petersen(), 2), 15);
    }

    #[test]
    fn clique_counts_match_brute_force() {
        for mask in (0..1u64 << 21).step_by(997) {
            let g = Graph::from_pair_mask(7, mask).unwrap();
            for r in 1..=5 {
                assert_eq!(count_cliques(&g, r), brute_cliques(&g, r));
            }
        }
    }

    #[test]
    fn blowup_examples() {
        let (t, w) = max_blowup(&Graph::complete_bipartite(3, 3).unwrap(), 2).unwrap();
        assert_eq!(t, 3);
        assert!(w.unwrap().validate(&Graph::complete_bipartite(3, 3).unwrap()));
        let g = turan(6, 3).unwrap().graph;
        let (t, w) = max_blowup(&g, 3).unwrap();
        assert_eq!(t, 2);
        assert!(w.unwrap().validate(&g));
        assert_eq!(max_blowup(&Graph::complete(4).unwrap(), 4).unwrap().0, 1);
        assert_eq!(max_blowup(&Graph::cycle(5).unwrap(), 3).unwrap(), (0, None));
        // K_6 contains K_{3,3} as a subgraph
        assert_eq!(max_blowup(&Graph::complete(6).unwrap(), 2).unwrap().0, 3);
        assert!(max_blowup(&g, 1).is_err());
    }

    #[test]
    fn blowup_round_trip() {
        for k in 2..=4 {
            for t in 1..=3 {
                let g = blowup(&Graph::complete(k).unwrap(), t).unwrap().graph;
                let (found, w) = max_blowup(&g, k).unwrap();
                assert_eq!(found, t, "k={k} t={t}");
                assert!(w.unwrap().validate(&g));
            }
        }
    }

    #[test]
    fn kk_plus_examples() {
        let g = Family::TuranPlusEdge { n: 8, k: 2 }.build().unwrap();
        let (t, w) = max_kk_plus(&g, 2).unwrap();
        assert_eq!(t, 4);
        let w = w.unwrap();
        assert!(w.validate(&g));
        assert_eq!(
            w,
            Witness::KkPlus {
                classes: vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
                edge: (0, 1)
            }
        );
        assert_eq!(max_kk_plus(&turan(6, 3).unwrap().graph, 3).unwrap(), (0, None));
        assert_eq!(max_kk_plus(&Graph::complete(5).unwrap(), 3).unwrap(), (0, None));
        let g = Family::KkPlusBlowup { k: 3, t: 3 }.build().unwrap();
        assert_eq!(max_kk_plus(&g, 3).unwrap().0, 3);
        assert_eq!(max_kk_plus(&Graph::complete(6).unwrap(), 3).unwrap().0, 2);
    }

    #[test]
    fn joint_examples() {
        assert_eq!(joint_size(&Graph::complete(4).unwrap(), 3).unwrap(), (2, Some((0, 1))));
        let g = Family::TuranPlusEdge { n: 12, k: 3 }.build().unwrap();
        assert_eq!(joint_size(&g, 4).unwrap(), (16, Some((0, 1))));
        let w = joint_witness(&g, 4).unwrap().unwrap();
        assert!(w.validate(&g));
        assert_eq!(joint_size(&Graph::cycle(5).unwrap(), 3).unwrap(), (0, None));
        assert!(joint_size(&g, 2).is_err());
    }

    #[test]
    fn book_examples() {
        let (t, w) = generalized_book_size(&Graph::complete(4).unwrap(), 2).unwrap();
        assert_eq!(t, 2);
        assert_eq!(w, Some(Witness::Book { clique: vec![0, 1], apexes: vec![2, 3] }));
        let g = Family::TuranPlusEdge { n: 8, k: 2 }.build().unwrap();
        assert_eq!(generalized_book_size(&g, 2).unwrap().0, 4);
        let g = Family::TuranPlusEdge { n: 12, k: 3 }.build().unwrap();
        let (t, w) = generalized_book_size(&g, 3).unwrap();
        assert_eq!(t, 4);
        assert!(w.unwrap().validate(&g));
        assert_eq!(generalized_book_size(&Graph::cycle(5).unwrap(), 3).unwrap(), (0, None));
    }

    #[test]
    fn joint_equals_book_exhaustive_n6() {
        for n in 1..=6usize {
            for mask in 0..1u64 << (n * (n - 1) / 2) {
                let g = Graph::from_pair_mask(n, mask).unwrap();
                let js = joint_size(&g, 3).unwrap().0;
                let bk = generalized_book_size(&g, 2).unwrap().0;
                assert_eq!(js, bk as u64);
            }
        }
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::complete(4).unwrap()), 4);
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()), 3);
        assert_eq!(chromatic_number(&Graph::petersen()), 3);
        assert_eq!(brute_chromatic(&Graph::petersen()), 3);
        assert_eq!(chromatic_number(&Graph::empty(3).unwrap()), 1);
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()), 0);
        for mask in (0..1u64 << 15).step_by(61) {
            let g = Graph::from_pair_mask(6, mask).unwrap();
            assert_eq!(chromatic_number(&g), brute_chromatic(&g));
        }
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance_to_turan(&turan(6, 2).unwrap().graph, 2).unwrap(), 0);
        assert_eq!(edit_distance_to_turan(&Graph::complete(6).unwrap(), 2).unwrap(), 6);
        assert_eq!(edit_distance_to_turan(&Graph::cycle(5).unwrap(), 2).unwrap(), 3);
        assert_eq!(edit_distance_to_turan(&turan(12, 3).unwrap().graph, 3).unwrap(), 0);
        assert!(edit_distance_to_turan(&Graph::empty(15).unwrap(), 2).is_err());
        assert!(edit_distance_to_turan(&Graph::empty(5).unwrap(), 1).is_err());
        // k > n: the target is K_n
        assert_eq!(edit_distance_to_turan(&Graph::empty(3).unwrap(), 5).unwrap(), 3);
    }

    #[test]
    fn edit_distance_matches_labelled_brute_force() {
        for mask in (0..1u64 << 15).step_by(127) {
            let g = Graph::from_pair_mask(6, mask).unwrap();
            for k in 2..=4 {
                assert_eq!(edit_distance_to_turan(&g, k).unwrap(), brute_edit(&g, k), "{g:?} k={k}");
            }
        }
        for mask in (0..1u64 << 21).step_by(40_961) {
            let g = Graph::from_pair_mask(7, mask).unwrap();
            assert_eq!(edit_distance_to_turan(&g, 3).unwrap(), brute_edit(&g, 3));
        }
    }

    #[test]
    fn witness_rejects_bad_claims() {
        let g = Graph::cycle(5).unwrap();
        assert!(!Witness::Blowup { classes: vec![vec![0], vec![2]] }.validate(&g));
        assert!(!Witness::Book { clique: vec![0, 1], apexes: vec![2] }.validate(&g));
        assert!(!Witness::Blowup { classes: vec![vec![0, 0], vec![1, 1]] }.validate(&g));
        let json = serde_json::to_string(&Witness::Book { clique: vec![0, 1], apexes: vec![] }).unwrap();
        assert_eq!(json, r#"{"kind":"book","clique":[0,1],"apexes":[]}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn graph(n: usize) -> impl Strategy<Value = Graph> {
            any::<u64>().prop_map(move |m| Graph::from_pair_mask(n, m).unwrap())
        }

        proptest! {
            #[test]
            fn witnesses_validate(g in (5usize..=11).prop_flat_map(graph)) {
                for p in 2..=3 {
                    if let (_, Some(w)) = max_blowup(&g, p).unwrap() {
                        prop_assert!(w.validate(&g));
                    }
                }
                if let (_, Some(w)) = max_kk_plus(&g, 2).unwrap() {
                    prop_assert!(w.validate(&g));
                }
                if let Some(w) = joint_witness(&g, 3).unwrap() {
                    prop_assert!(w.validate(&g));
                }
                if let (_, Some(w)) = generalized_book_size(&g, 3).unwrap() {
                    prop_assert!(w.validate(&g));
                }
            }

            #[test]
            fn joint_equals_book(g in graph(7)) {
                prop_assert_eq!(joint_size(&g, 3).unwrap().0, generalized_book_size(&g, 2).unwrap().0 as u64);
            }
        }
    }
}
