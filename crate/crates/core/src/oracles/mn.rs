use rayon::prelude::*;

use crate::baselines::HopDp;
use crate::error::Result;
use crate::graph::Graph;
use crate::sampling::{floor_log2, uniform_subset, SamplePlan};

use super::{flatten, BuildStats, Oracle, OracleKind, OracleLevel};

/// Levels `i = 0..=floor(log2 n)`: an independent sample of
/// `min(n, ceil(C n ln n / 2^i))` vertices with forward and backward
/// Bellman-Ford tables up to `min(2^{i+1}, n-1)` hops.
pub fn build_oracle_mn(g: &Graph, plan: &SamplePlan) -> Result<Oracle> {
    build_oracle_mn_with_stats(g, plan).map(|(o, _)| o)
}

pub fn build_oracle_mn_with_stats(g: &Graph, plan: &SamplePlan) -> Result<(Oracle, BuildStats)> {
    g.require_no_negative_cycle()?;
    plan.validate(g.n())?;
    let n = g.n();
    let fwd = HopDp::new(g);
    let bwd = HopDp::new(&g.reverse());
    let top = if n == 0 { 0 } else { floor_log2(n) as usize };
    let mut stats = BuildStats::default();
    let mut levels = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let size = plan.size(n, n as f64 / (1u64 << i) as f64);
        let samples = uniform_subset(n, size, &plan.pinned, &mut plan.rng(i as u64));
        let hops = (1usize << (i + 1)).min(n.saturating_sub(1));
        let mut tables = Vec::with_capacity(2);
        for dp in [&fwd, &bwd] {
            let runs: Vec<_> = samples.par_iter().map(|&s| dp.run(s, hops, false)).collect();
            stats.relaxations += runs.iter().map(|(_, r)| r).sum::<u64>();
            let rows: Vec<_> = runs.into_iter().map(|(row, _)| row.le).collect();
            tables.push(flatten(&rows, hops, n));
        }
        levels.push(OracleLevel { samples, hops, tables });
    }
    let oracle = Oracle {
        kind: OracleKind::Mn,
        n,
        seed: plan.seed,
        c: plan.c,
        aux: 0,
        levels,
    };
    Ok((oracle, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{apah_brute, bellman_ford_allhops};
    use crate::dist::d;
    use crate::fixtures;
    use crate::graph::gen_random_graph;

    #[test]
    fn examples() {
        let o = build_oracle_mn(&fixtures::f1(), &SamplePlan::new(4.0, 0)).unwrap();
        assert_eq!(o.levels[0].samples, vec![0, 1, 2]);
        assert_eq!(o.query(0, 2, 1).unwrap(), d(10));
        assert_eq!(o.query(0, 2, 2).unwrap(), d(2));
        assert!(build_oracle_mn(&fixtures::f3(), &SamplePlan::default()).is_err());

        let one = build_oracle_mn(&Graph::new(1, vec![]).unwrap(), &SamplePlan::default()).unwrap();
        assert_eq!(one.levels.len(), 1);
        assert!(one.query(0, 0, 1).is_err());
    }

    #[test]
    fn stored_tables_are_bellman_ford_rows() {
        let g = gen_random_graph(30, 90, 5, 7, true).unwrap();
        let o = build_oracle_mn(&g, &SamplePlan::new(1.0, 3)).unwrap();
        let rev = g.reverse();
        for level in &o.levels {
            for (si, &s) in level.samples.iter().enumerate() {
                let f = bellman_ford_allhops(&g, s, level.hops).unwrap();
                let b = bellman_ford_allhops(&rev, s, level.hops).unwrap();
                for h in 1..=level.hops {
                    for v in 0..30 {
                        assert_eq!(level.at(0, si, h, v, 30), f.le(h, v));
                        assert_eq!(level.at(1, si, h, v, 30), b.le(h, v));
                    }
                }
            }
        }
    }

    #[test]
    fn exhaustive_small() {
        let g = gen_random_graph(20, 50, 5, 2, true).unwrap();
        let o = build_oracle_mn(&g, &SamplePlan::new(2.0, 9)).unwrap();
        let t = apah_brute(&g, 19);
        for u in 0..20 {
            for v in 0..20 {
                for h in 1..20 {
                    assert_eq!(o.query(u, v, h).unwrap(), t.le(u, h, v), "{u} {v} {h}");
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let g = gen_random_graph(40, 100, 5, 2, true).unwrap();
        let plan = SamplePlan::new(1.0, 12);
        assert_eq!(build_oracle_mn(&g, &plan).unwrap(), build_oracle_mn(&g, &plan).unwrap());
    }
}
