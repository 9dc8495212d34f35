//! Directed weighted graphs, the edge-list text format, and generators.
//!
//! Edge-list format: the first non-comment line is `n m`, optionally
//! followed by `M` (declare the bound as the largest |w| read) or `M=<v>`
//! (declare an explicit bound). Then exactly `m` lines `u v w`. Lines that
//! start with `#` are ignored, as are blank lines.

use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::matrix::DistMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    declared_m: Option<u64>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            for v in [e.tail, e.head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        Ok(Graph {
            n,
            edges,
            declared_m: None,
        })
    }

    /// Builds from `(tail, head, weight)` triples.
    pub fn from_triples(n: usize, triples: &[(usize, usize, i64)]) -> Result<Self> {
        let edges = triples
            .iter()
            .map(|&(tail, head, weight)| Edge { tail, head, weight })
            .collect();
        Self::new(n, edges)
    }

    /// Attaches a weight bound; fails if some |w| exceeds it.
    pub fn with_declared_m(mut self, m: u64) -> Result<Self> {
        if let Some(e) = self.edges.iter().find(|e| e.weight.unsigned_abs() > m) {
            return Err(Error::BoundExceeded {
                value: e.weight,
                bound: m.min(i64::MAX as u64) as i64,
            });
        }
        self.declared_m = Some(m);
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn declared_m(&self) -> Option<u64> {
        self.declared_m
    }

    pub fn max_abs_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight.unsigned_abs()).max().unwrap_or(0)
    }

    /// Every edge flipped; `n` and the bound are kept.
    pub fn reverse(&self) -> Graph {
        Graph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    tail: e.head,
                    head: e.tail,
                    weight: e.weight,
                })
                .collect(),
            declared_m: self.declared_m,
        }
    }

    /// The `n x n` weighted adjacency matrix. No implicit zero diagonal.
    pub fn weight_matrix(&self) -> DistMatrix {
        let n = self.n;
        let mut w = DistMatrix::infinite((0..n).collect(), (0..n).collect());
        for e in &self.edges {
            let cur = w.get(e.tail, e.head);
            w.set(e.tail, e.head, cur.min(Dist::new(e.weight)));
        }
        w
    }

    /// Parallel edges collapsed to their minimum, grouped by head:
    /// `in_edges[v]` lists `(tail, weight)`.
    pub fn in_adjacency(&self) -> Vec<Vec<(usize, i64)>> {
        let mut best = std::collections::BTreeMap::new();
        for e in &self.edges {
            best.entry((e.head, e.tail))
                .and_modify(|w: &mut i64| *w = (*w).min(e.weight))
                .or_insert(e.weight);
        }
        let mut adj = vec![Vec::new(); self.n];
        for ((head, tail), w) in best {
            adj[head].push((tail, w));
        }
        adj
    }

    /// Whether some directed cycle has negative total weight.
    ///
    /// Bellman-Ford from a virtual source joined to every vertex by a
    /// 0-weight edge; if the n-th round still relaxes something, a negative
    /// cycle exists.
    pub fn has_negative_cycle(&self) -> bool {
        let mut dist = vec![0i128; self.n];
        for _ in 0..self.n {
            let mut changed = false;
            for e in &self.edges {
                let cand = dist[e.tail] + e.weight as i128;
                if cand < dist[e.head] {
                    dist[e.head] = cand;
                    changed = true;
                }
            }
            if !changed {
                return false;
            }
        }
        self.n > 0
    }

    pub fn require_no_negative_cycle(&self) -> Result<()> {
        if self.has_negative_cycle() {
            Err(Error::NegativeCycle)
        } else {
            Ok(())
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Same graph with `extra` appended to the edge list.
    pub(crate) fn with_extra_edges(&self, extra: impl IntoIterator<Item = Edge>) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(extra);
        Graph {
            n: self.n,
            edges,
            declared_m: self.declared_m,
        }
    }

    pub(crate) fn map_weights(&self, f: impl Fn(i64) -> i64) -> Graph {
        Graph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    weight: f(e.weight),
                    ..*e
                })
                .collect(),
            declared_m: None,
        }
    }
}

/// Convenience wrapper matching the free-function style used by the solvers.
pub fn detect_negative_cycle(g: &Graph) -> bool {
    g.has_negative_cycle()
}

pub fn reverse(g: &Graph) -> Graph {
    g.reverse()
}

pub fn weight_matrix(g: &Graph) -> DistMatrix {
    g.weight_matrix()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let mut toks = header.split_whitespace();
    let n: usize = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "bad vertex count"))?;
    let m: usize = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "bad edge count"))?;
    enum Bound {
        None,
        FromWeights,
        Explicit(u64),
    }
    let bound = match toks.next() {
        None => Bound::None,
        Some("M") => Bound::FromWeights,
        Some(t) => match t.strip_prefix("M=").and_then(|v| v.parse().ok()) {
            Some(v) => Bound::Explicit(v),
            None => return Err(parse_err(hline, format!("unexpected header token `{t}`"))),
        },
    };
    if toks.next().is_some() {
        return Err(parse_err(hline, "trailing tokens in header"));
    }

    let mut edges = Vec::with_capacity(m.min(1 << 24));
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(parse_err(lineno, format!("more than {m} edge lines")));
        }
        let mut t = line.split_whitespace();
        let mut vertex = |what: &str| -> Result<usize> {
            let v: usize = t
                .next()
                .ok_or_else(|| parse_err(lineno, format!("missing {what}")))?
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad {what}")))?;
            if v >= n {
                return Err(parse_err(lineno, format!("{what} {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let tail = vertex("tail")?;
        let head = vertex("head")?;
        let weight: i64 = t
            .next()
            .ok_or_else(|| parse_err(lineno, "missing weight"))?
            .parse()
            .map_err(|_| parse_err(lineno, "weight is not a 64-bit integer"))?;
        if t.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens"));
        }
        edges.push(Edge { tail, head, weight });
    }
    if edges.len() != m {
        return Err(parse_err(
            text.split('\n').count(),
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    let g = Graph::new(n, edges)?;
    match bound {
        Bound::None => Ok(g),
        Bound::FromWeights => {
            let mx = g.max_abs_weight();
            g.with_declared_m(mx)
        }
        Bound::Explicit(v) => g
            .with_declared_m(v)
            .map_err(|e| parse_err(hline, e.to_string())),
    }
}

/// Canonical rendering; edges in stored order.
pub fn render_graph(g: &Graph) -> String {
    let mut out = String::new();
    match g.declared_m {
        Some(mv) => writeln!(out, "{} {} M={}", g.n, g.m(), mv).unwrap(),
        None => writeln!(out, "{} {}", g.n, g.m()).unwrap(),
    }
    for e in &g.edges {
        writeln!(out, "{} {} {}", e.tail, e.head, e.weight).unwrap();
    }
    out
}

/// Per-edge retry budget of the no-negative-cycle generator.
const EDGE_RETRIES: usize = 2000;

/// Random graph with `m` distinct ordered pairs (no self-loops) and weights
/// uniform in `{-max_w, ..., max_w}`.
///
/// With `require_no_neg_cycle` the graph is grown edge by edge. Each new
/// edge's weight is drawn from the part of the range that closes no negative
/// cycle; pairs where that part is empty are redrawn. Deterministic for
/// fixed arguments.
pub fn gen_random_graph(
    n: usize,
    m: usize,
    max_w: u64,
    seed: u64,
    require_no_neg_cycle: bool,
) -> Result<Graph> {
    let pairs = n.saturating_mul(n.saturating_sub(1));
    if m > pairs {
        return Err(Error::Precondition(format!(
            "m = {m} exceeds the {pairs} ordered pairs of an n = {n} graph"
        )));
    }
    if max_w > i64::MAX as u64 / 2 {
        return Err(Error::Precondition("weight bound too large".into()));
    }
    let mw = max_w as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair_of = |idx: usize| {
        let tail = idx / (n - 1);
        let mut head = idx % (n - 1);
        if head >= tail {
            head += 1;
        }
        (tail, head)
    };

    let edges = if !require_no_neg_cycle {
        index::sample(&mut rng, pairs.max(1), m)
            .into_iter()
            .map(|idx| {
                let (tail, head) = pair_of(idx);
                Edge {
                    tail,
                    head,
                    weight: rng.gen_range(-mw..=mw),
                }
            })
            .collect()
    } else {
        let mut free: Vec<usize> = (0..pairs).collect();
        let mut edges: Vec<Edge> = Vec::with_capacity(m);
        for _ in 0..m {
            let mut placed = false;
            // pairs found infeasible for this edge are parked past `live`
            let mut live = free.len();
            for _ in 0..EDGE_RETRIES.min(free.len()) {
                let slot = rng.gen_range(0..live);
                let (tail, head) = pair_of(free[slot]);
                // closing a negative cycle means dist(head -> tail) + w < 0
                let floor = match shortest_from(n, &edges, head)[tail] {
                    Some(back) => (-back).max(-mw as i128),
                    None => -mw as i128,
                };
                if floor > mw as i128 {
                    live -= 1;
                    free.swap(slot, live);
                    continue;
                }
                let weight = rng.gen_range(floor as i64..=mw);
                free.swap_remove(slot);
                edges.push(Edge { tail, head, weight });
                placed = true;
                break;
            }
            if !placed {
                return Err(Error::RetryBudget(format!(
                    "could not place edge {} of {m} without a negative cycle",
                    edges.len() + 1
                )));
            }
        }
        edges
    };
    Graph::new(n, edges)?.with_declared_m(max_w)
}

/// Plain Bellman-Ford on an edge list assumed free of negative cycles.
fn shortest_from(n: usize, edges: &[Edge], src: usize) -> Vec<Option<i128>> {
    let mut dist: Vec<Option<i128>> = vec![None; n];
    dist[src] = Some(0);
    for _ in 0..n {
        let mut changed = false;
        for e in edges {
            if let Some(du) = dist[e.tail] {
                let cand = du + e.weight as i128;
                if dist[e.head].is_none_or(|dv| cand < dv) {
                    dist[e.head] = Some(cand);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::d;
    use crate::fixtures;
    use proptest::prelude::*;

    fn edge_multiset(g: &Graph) -> Vec<Edge> {
        let mut e = g.edges().to_vec();
        e.sort();
        e
    }

    #[test]
    fn parse_fixtures() {
        let f1 = parse_graph("3 3\n0 1 1\n1 2 1\n0 2 10\n").unwrap();
        assert_eq!(f1, fixtures::f1());
        let f2 = parse_graph("2 2\n0 1 -2\n1 0 3\n").unwrap();
        assert_eq!(f2, fixtures::f2());
        let single = parse_graph("1 0\n").unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.m(), 0);
        assert_eq!(single.declared_m(), None);
    }

    #[test]
    fn parse_comments_and_bound() {
        let g = parse_graph("# hello\n3 2 M\n# mid\n0 1 -4\n2 1 3\n").unwrap();
        assert_eq!(g.declared_m(), Some(4));
        let g = parse_graph("2 1 M=9\n0 1 -4\n").unwrap();
        assert_eq!(g.declared_m(), Some(9));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_graph("3 2\n0 1 1\n0 7 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_graph("3 1\n0 x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("3 1\n0 1 99999999999999999999\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("3 2\n0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_graph("2 1 M=1\n0 1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn reverse_examples() {
        let r = fixtures::f1().reverse();
        assert_eq!(
            edge_multiset(&r),
            edge_multiset(&Graph::from_triples(3, &[(1, 0, 1), (2, 1, 1), (2, 0, 10)]).unwrap())
        );
        assert_eq!(edge_multiset(&r.reverse()), edge_multiset(&fixtures::f1()));
        let empty = Graph::new(0, vec![]).unwrap();
        assert_eq!(empty.reverse(), empty);
    }

    #[test]
    fn weight_matrix_examples() {
        let inf = Dist::INF;
        let w = fixtures::f1().weight_matrix();
        assert_eq!(
            w,
            DistMatrix::from_rows(&[
                vec![inf, d(1), d(10)],
                vec![inf, inf, d(1)],
                vec![inf, inf, inf]
            ])
            .unwrap()
        );
        let w = fixtures::f2().weight_matrix();
        assert_eq!(w, DistMatrix::from_rows(&[vec![inf, d(-2)], vec![d(3), inf]]).unwrap());
        let par = Graph::from_triples(2, &[(0, 1, 5), (0, 1, 3)]).unwrap();
        assert_eq!(par.weight_matrix().get(0, 1), d(3));
    }

    #[test]
    fn negative_cycle_examples() {
        assert!(!fixtures::f1().has_negative_cycle());
        assert!(!fixtures::f2().has_negative_cycle());
        assert!(fixtures::f3().has_negative_cycle());
        assert!(Graph::from_triples(1, &[(0, 0, -1)]).unwrap().has_negative_cycle());
        assert!(!Graph::new(0, vec![]).unwrap().has_negative_cycle());
    }

    #[test]
    fn generator_examples() {
        let g = gen_random_graph(5, 0, 3, 1, false).unwrap();
        assert_eq!((g.n(), g.m()), (5, 0));
        let g = gen_random_graph(2, 2, 0, 7, false).unwrap();
        assert_eq!(
            edge_multiset(&g),
            vec![
                Edge { tail: 0, head: 1, weight: 0 },
                Edge { tail: 1, head: 0, weight: 0 }
            ]
        );
        let g = gen_random_graph(40, 160, 5, 42, true).unwrap();
        assert_eq!(g.m(), 160);
        assert!(!g.has_negative_cycle());
        assert!(gen_random_graph(3, 7, 1, 0, false).is_err());
    }

    #[test]
    fn generator_is_deterministic_and_distinct() {
        let a = gen_random_graph(12, 40, 9, 3, true).unwrap();
        let b = gen_random_graph(12, 40, 9, 3, true).unwrap();
        assert_eq!(a, b);
        let mut pairs: Vec<_> = a.edges().iter().map(|e| (e.tail, e.head)).collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 40);
        assert!(a.edges().iter().all(|e| e.tail != e.head && e.weight.abs() <= 9));
    }

    /// Minimum weight of a simple cycle, by exhaustive DFS from each
    /// cycle's smallest vertex.
    fn min_simple_cycle(g: &Graph) -> Option<i64> {
        let n = g.n();
        let w = g.weight_matrix();
        fn dfs(w: &DistMatrix, start: usize, at: usize, sum: i64, seen: &mut Vec<bool>, best: &mut Option<i64>) {
            for next in start..w.nrows() {
                let Some(c) = w.get(at, next).finite() else { continue };
                if next == start {
                    *best = Some(best.map_or(sum + c, |b| b.min(sum + c)));
                } else if !seen[next] {
                    seen[next] = true;
                    dfs(w, start, next, sum + c, seen, best);
                    seen[next] = false;
                }
            }
        }
        let mut best = None;
        for start in 0..n {
            let mut seen = vec![false; n];
            seen[start] = true;
            dfs(&w, start, start, 0, &mut seen, &mut best);
        }
        best
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, -8i64..=8), 0..3 * n)
                .prop_map(move |t| Graph::from_triples(n, &t).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn negative_cycle_matches_cycle_enumeration(g in arb_graph(6)) {
            prop_assert_eq!(g.has_negative_cycle(), min_simple_cycle(&g).is_some_and(|c| c < 0));
        }

        #[test]
        fn render_parse_round_trip(g in arb_graph(8), declare in any::<bool>()) {
            let g = if declare { let m = g.max_abs_weight(); g.with_declared_m(m).unwrap() } else { g };
            prop_assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
        }

        #[test]
        fn reverse_matrix_is_transpose(g in arb_graph(8)) {
            prop_assert_eq!(g.reverse().weight_matrix(), g.weight_matrix().transpose());
            prop_assert_eq!(edge_multiset(&g.reverse().reverse()), edge_multiset(&g));
        }
    }
}
