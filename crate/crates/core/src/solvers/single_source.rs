use std::collections::BTreeMap;

use crate::baselines::AllHopsRow;
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::{minplus_product, ConvStrategy};
use crate::matrix::DistMatrix;
use crate::sampling::{ceil_root_pow, SampleHierarchy, SamplePlan};

use super::{exact_hop_blocks, single_pair};

/// Levels `r <= split` use repeated single-pair calls, the rest use the
/// matrix-power combination. Default `ceil(k / 2)`.
pub fn default_split(k: usize) -> usize {
    k.div_ceil(2)
}

/// `d_{<=h}(s, v)` for every `v` and `h = 0..=n-1`.
pub fn single_source_allhops(g: &Graph, s: usize, k: usize, plan: &SamplePlan) -> Result<AllHopsRow> {
    single_source_allhops_with(g, s, k, plan, default_split(k), ConvStrategy::fast())
}

pub fn single_source_allhops_with(
    g: &Graph,
    s: usize,
    k: usize,
    plan: &SamplePlan,
    split: usize,
    strategy: ConvStrategy,
) -> Result<AllHopsRow> {
    g.check_vertex(s)?;
    g.require_no_negative_cycle()?;
    if k == 0 {
        return Err(Error::Precondition("level count k must be >= 1".into()));
    }
    let n = g.n();
    let hops = n - 1;
    let plan = plan.clone().pin(s);
    let hierarchy = SampleHierarchy::growing(n, k, &plan, 0)?;

    // per-target series d_{<=h}(s, v), h = 0..=hops
    let mut known: BTreeMap<usize, Vec<Dist>> = BTreeMap::new();
    let mut powers: Vec<DistMatrix> = Vec::new();
    for r in 0..=k {
        let level = hierarchy.level(r);
        if r == 0 || r <= split {
            let fresh: Vec<usize> = level.iter().copied().filter(|v| !known.contains_key(v)).collect();
            if fresh.is_empty() {
                continue;
            }
            // one run with the whole batch pinned answers every (s, t)
            let mut pins = vec![s];
            pins.extend(&fresh);
            let trace = single_pair::run(g, &pins, k, &plan, 1 + r as u64, strategy)?;
            for t in fresh {
                let mut series = vec![if s == t { Dist::ZERO } else { Dist::INF }];
                series.extend(trace.read(s, t));
                known.insert(t, series);
            }
        } else {
            let prev = hierarchy.level(r - 1);
            let fresh: Vec<usize> = level.iter().copied().filter(|v| !known.contains_key(v)).collect();
            if fresh.is_empty() {
                continue;
            }
            let reach = ceil_root_pow(n, k + 1 - r, k).clamp(1, hops.max(1));
            for (v, series) in combine(g, s, prev, &fresh, &known, reach, &mut powers)? {
                known.insert(v, series);
            }
        }
    }

    let mut le = vec![Dist::INF; (hops + 1) * n];
    for (v, series) in known {
        for (h, x) in series.into_iter().enumerate() {
            le[h * n + v] = x;
        }
    }
    Ok(AllHopsRow {
        source: s,
        max_hop: hops,
        n,
        le,
        ex: None,
    })
}

/// Series for every `v` in `fresh` from the series of the previous level:
/// the last sampled vertex `u` on an optimal path is followed by at most
/// `reach` hops.
fn combine(
    g: &Graph,
    s: usize,
    prev: &[usize],
    fresh: &[usize],
    known: &BTreeMap<usize, Vec<Dist>>,
    reach: usize,
    powers: &mut Vec<DistMatrix>,
) -> Result<Vec<(usize, Vec<Dist>)>> {
    let n = g.n();
    let hops = n - 1;
    let blocks = exact_hop_blocks(g, prev, reach, powers)?;
    let ps = prev.binary_search(&s).expect("source pinned");

    // A[h, u] = d_{<=h}(s, u); B[u, (v, h')] = d_{h'}(u, v)
    let mut a = Vec::with_capacity((hops + 1) * prev.len());
    for h in 0..=hops {
        a.extend(prev.iter().map(|u| known[u][h]));
    }
    let a = DistMatrix::from_cells((0..=hops).collect(), prev.to_vec(), a)?;
    let mut b = Vec::with_capacity(prev.len() * fresh.len() * reach);
    for pu in 0..prev.len() {
        for &v in fresh {
            b.extend(blocks.iter().map(|blk| blk.get(pu, v)));
        }
    }
    let b = DistMatrix::from_cells(prev.to_vec(), (0..fresh.len() * reach).collect(), b)?;
    let c = minplus_product(&a, &b)?;

    let out = fresh
        .iter()
        .enumerate()
        .map(|(fi, &v)| {
            let mut series = vec![Dist::INF; hops + 1];
            let mut short = if v == s { Dist::ZERO } else { Dist::INF };
            for (h, slot) in series.iter_mut().enumerate() {
                if h >= 1 && h <= reach {
                    short = short.min(blocks[h - 1].get(ps, v));
                }
                let mut best = short;
                if h > reach {
                    for hp in 1..=reach {
                        best = best.min(c.get(h - hp, fi * reach + hp - 1));
                    }
                }
                *slot = best;
            }
            (v, series)
        })
        .collect();
    Ok(out)
}
