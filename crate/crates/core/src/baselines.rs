//! Exact reference algorithms. Everything else in the crate is checked
//! against these.

use rayon::prelude::*;

use crate::dist::Dist;
use crate::error::Result;
use crate::graph::Graph;
use crate::kernels::minplus_product;

/// `d_{<=h}(source, v)` and optionally `d_h(source, v)` for `h in 0..=max_hop`,
/// stored hop-major: entry `h * n + v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AllHopsRow {
    pub source: usize,
    pub max_hop: usize,
    pub n: usize,
    pub le: Vec<Dist>,
    pub ex: Option<Vec<Dist>>,
}

impl AllHopsRow {
    #[inline]
    pub fn le(&self, h: usize, v: usize) -> Dist {
        self.le[h * self.n + v]
    }

    /// Exact-hop value; panics if the row was built without exact tables.
    #[inline]
    pub fn ex(&self, h: usize, v: usize) -> Dist {
        self.ex.as_ref().expect("row has no exact-hop table")[h * self.n + v]
    }

    /// `d_{<=h}(source, v)` for `h = 1..=max_hop`.
    pub fn le_series(&self, v: usize) -> Vec<Dist> {
        (1..=self.max_hop).map(|h| self.le(h, v)).collect()
    }

    pub fn le_hop(&self, h: usize) -> &[Dist] {
        &self.le[h * self.n..(h + 1) * self.n]
    }
}

/// One [`AllHopsRow`] per source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AllHopsTable {
    pub n: usize,
    pub max_hop: usize,
    pub rows: Vec<AllHopsRow>,
}

impl AllHopsTable {
    pub fn row(&self, source: usize) -> Option<&AllHopsRow> {
        self.rows
            .get(source)
            .filter(|r| r.source == source)
            .or_else(|| self.rows.iter().find(|r| r.source == source))
    }

    /// `d_{<=h}(u, v)`; panics if `u` has no row.
    pub fn le(&self, u: usize, h: usize, v: usize) -> Dist {
        self.row(u).expect("source not in table").le(h, v)
    }

    pub fn ex(&self, u: usize, h: usize, v: usize) -> Dist {
        self.row(u).expect("source not in table").ex(h, v)
    }
}

/// Bellman-Ford over a pre-collapsed in-adjacency, reused across sources.
pub(crate) struct HopDp {
    n: usize,
    in_adj: Vec<Vec<(usize, i64)>>,
    edges: usize,
}

impl HopDp {
    pub fn new(g: &Graph) -> Self {
        let in_adj = g.in_adjacency();
        let edges = in_adj.iter().map(Vec::len).sum();
        HopDp { n: g.n(), in_adj, edges }
    }

    /// Returns the row and the number of edge relaxations performed.
    pub fn run(&self, s: usize, hops: usize, keep_exact: bool) -> (AllHopsRow, u64) {
        let n = self.n;
        let mut le = vec![Dist::INF; (hops + 1) * n];
        let mut ex = vec![Dist::INF; (hops + 1) * n];
        le[s] = Dist::ZERO;
        ex[s] = Dist::ZERO;
        let mut relax = 0u64;
        for h in 1..=hops {
            let (prev, cur) = ex.split_at_mut(h * n);
            let prev = &prev[(h - 1) * n..];
            let cur = &mut cur[..n];
            for v in 0..n {
                let mut best = Dist::INF;
                for &(u, w) in &self.in_adj[v] {
                    let c = prev[u] + Dist::new(w);
                    if c < best {
                        best = c;
                    }
                }
                cur[v] = best;
            }
            relax += self.edges as u64;
            let (lprev, lcur) = le.split_at_mut(h * n);
            let lprev = &lprev[(h - 1) * n..];
            for v in 0..n {
                lcur[v] = lprev[v].min(cur[v]);
            }
        }
        let row = AllHopsRow {
            source: s,
            max_hop: hops,
            n,
            le,
            ex: keep_exact.then_some(ex),
        };
        (row, relax)
    }
}

/// `d_h(s, v)` and `d_{<=h}(s, v)` for `h in 0..=hops` in `O(m * hops)`.
/// Negative cycles are allowed: bounded-hop values stay well defined.
pub fn bellman_ford_allhops(g: &Graph, s: usize, hops: usize) -> Result<AllHopsRow> {
    g.check_vertex(s)?;
    Ok(HopDp::new(g).run(s, hops, true).0)
}

/// Bellman-Ford from every vertex.
pub fn apah_brute(g: &Graph, hops: usize) -> AllHopsTable {
    let dp = HopDp::new(g);
    let rows = (0..g.n())
        .into_par_iter()
        .map(|s| dp.run(s, hops, true).0)
        .collect();
    AllHopsTable {
        n: g.n(),
        max_hop: hops,
        rows,
    }
}

/// Exact-hop tables as `W, W^2, ..., W^hops` by iterated products, at-most
/// tables by running minima. Must agree with [`apah_brute`] exactly.
pub fn allhops_from_powers(g: &Graph, hops: usize) -> Result<AllHopsTable> {
    let n = g.n();
    let w = g.weight_matrix();
    let mut ex: Vec<Vec<Dist>> = (0..n)
        .map(|s| {
            let mut v = vec![Dist::INF; (hops + 1) * n];
            v[s] = Dist::ZERO;
            v
        })
        .collect();
    let mut power = w.clone();
    for h in 1..=hops {
        if h > 1 {
            power = minplus_product(&power, &w)?;
        }
        for (s, row) in ex.iter_mut().enumerate() {
            row[h * n..(h + 1) * n].copy_from_slice(power.row(s));
        }
    }
    let rows = ex
        .into_iter()
        .enumerate()
        .map(|(s, ex)| {
            let mut le = ex.clone();
            for h in 1..=hops {
                for v in 0..n {
                    le[h * n + v] = le[(h - 1) * n + v].min(ex[h * n + v]);
                }
            }
            AllHopsRow {
                source: s,
                max_hop: hops,
                n,
                le,
                ex: Some(ex),
            }
        })
        .collect();
    Ok(AllHopsTable { n, max_hop: hops, rows })
}

/// Default hop budget `max(n - 1, 0)`.
pub fn default_max_hop(n: usize) -> usize {
    n.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::d;
    use crate::fixtures;
    use crate::graph::gen_random_graph;
    use proptest::prelude::*;

    const INF: Dist = Dist::INF;

    #[test]
    fn bf_examples() {
        let r = bellman_ford_allhops(&fixtures::f1(), 0, 2).unwrap();
        assert_eq!(r.le_hop(1), &[d(0), d(1), d(10)]);
        assert_eq!(r.le_hop(2), &[d(0), d(1), d(2)]);
        assert_eq!(r.ex(2, 2), d(2));

        let r = bellman_ford_allhops(&fixtures::f2(), 0, 3).unwrap();
        assert_eq!(r.ex(2, 0), d(1));
        assert_eq!(r.le(3, 0), d(0));

        let single = Graph::new(1, vec![]).unwrap();
        let r = bellman_ford_allhops(&single, 0, 1).unwrap();
        assert_eq!(r.le_hop(1), &[d(0)]);
        assert!(bellman_ford_allhops(&single, 1, 1).is_err());
    }

    #[test]
    fn brute_examples() {
        let t = apah_brute(&fixtures::f1(), 2);
        assert_eq!(t.le(0, 2, 2), d(2));
        assert_eq!(t.le(1, 2, 0), INF);

        let t = apah_brute(&fixtures::f2(), 4);
        assert_eq!(t.le(0, 1, 1), d(-2));
        assert_eq!(t.le(1, 3, 0), d(3));

        let t = apah_brute(&Graph::new(4, vec![]).unwrap(), 3);
        for u in 0..4 {
            for h in 0..=3 {
                for v in 0..4 {
                    assert_eq!(t.le(u, h, v), if u == v { d(0) } else { INF });
                }
            }
        }
    }

    #[test]
    fn powers_examples() {
        let f1 = fixtures::f1();
        assert_eq!(allhops_from_powers(&f1, 2).unwrap(), apah_brute(&f1, 2));
        let t = allhops_from_powers(&fixtures::f2(), 2).unwrap();
        assert_eq!((t.ex(0, 2, 0), t.ex(0, 2, 1), t.ex(1, 2, 0), t.ex(1, 2, 1)), (d(1), INF, INF, d(1)));
        let t = allhops_from_powers(&f1, 1).unwrap();
        let w = f1.weight_matrix();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(t.ex(u, 1, v), w.get(u, v));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn oracles_agree_even_with_negative_cycles(seed in any::<u64>(), n in 1usize..20, dens in 0usize..4) {
            let m = (dens * n).min(n * (n - 1) / 2);
            let g = gen_random_graph(n, m, 6, seed, false).unwrap();
            let h = n + 2;
            prop_assert_eq!(apah_brute(&g, h), allhops_from_powers(&g, h).unwrap());
        }

        #[test]
        fn stabilizes_without_negative_cycles(seed in any::<u64>(), n in 1usize..16) {
            let g = gen_random_graph(n, (2 * n).min(n * (n - 1) / 2), 6, seed, true).unwrap();
            let t = apah_brute(&g, n + 3);
            for u in 0..n {
                let r = t.row(u).unwrap();
                for h in 0..=n + 3 {
                    prop_assert_eq!(r.le(h, u), d(0));
                    for v in 0..n {
                        if h >= n.saturating_sub(1) {
                            prop_assert_eq!(r.le(h, v), r.le(n - 1, v));
                        }
                        if h > 0 {
                            prop_assert!(r.le(h, v) <= r.le(h - 1, v));
                        }
                        prop_assert_eq!(r.le(h, v), (0..=h).map(|k| r.ex(k, v)).min().unwrap());
                    }
                }
            }
        }

        #[test]
        fn triangle_inequality_across_hops(seed in any::<u64>(), n in 2usize..14,
                                           u in 0usize..14, v in 0usize..14, w in 0usize..14,
                                           h1 in 0usize..8, h2 in 0usize..8) {
            let (u, v, w) = (u % n, v % n, w % n);
            let g = gen_random_graph(n, (2 * n).min(n * (n - 1) / 2), 6, seed, true).unwrap();
            let t = apah_brute(&g, 16);
            prop_assert!(t.le(u, h1 + h2, w) <= t.le(u, h1, v) + t.le(v, h2, w));
        }
    }
}
