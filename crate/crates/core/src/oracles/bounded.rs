use rayon::prelude::*;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::min_conv_into;
use crate::matrix::DistMatrix;
use crate::sampling::{ceil_root_pow, ceil_three_halves, nested_subsets, SamplePlan};
use crate::solvers::{exact_hop_blocks, one_hop};

use super::{Oracle, OracleKind, OracleLevel};

/// `ceil(n^{2/3} / max(1, M)^{1/3})`.
pub fn default_crossover(n: usize, m: u64) -> usize {
    // smallest x with x^3 * M >= n^2
    let (n2, m) = ((n as u128).pow(2), m.max(1) as u128);
    let mut x = (ceil_root_pow(n, 2, 3) as f64 / (m as f64).cbrt()).floor().max(0.0) as u128;
    while x > 0 && (x - 1).pow(3) * m >= n2 {
        x -= 1;
    }
    while x.pow(3) * m < n2 {
        x += 1;
    }
    x as usize
}

/// Levels `K_k = min(ceil((3/2)^k), n-1)` with nested samples of size
/// `min(n, ceil(C n ln n / K_k))`. Levels with `K_k <= crossover` are built
/// from matrix powers; later ones extend the previous level by scalar
/// convolutions through the sample. `crossover = None` uses
/// [`default_crossover`].
pub fn build_oracle_bounded(g: &Graph, plan: &SamplePlan, crossover: Option<usize>) -> Result<Oracle> {
    let m = g
        .declared_m()
        .ok_or_else(|| Error::Precondition("bounded oracle needs a declared weight bound M".into()))?;
    g.require_no_negative_cycle()?;
    plan.validate(g.n())?;
    let n = g.n();
    let kstar = crossover.unwrap_or_else(|| default_crossover(n, m));
    let cap = n.saturating_sub(1);
    let mut caps = Vec::new();
    for k in 0.. {
        let kk = ceil_three_halves(k).min(cap);
        caps.push(kk);
        if kk >= cap {
            break;
        }
    }
    let sizes: Vec<usize> = caps.iter().map(|&k| plan.size(n, n as f64 / k.max(1) as f64)).collect();
    let samples = nested_subsets(n, &sizes, plan, 0);

    let rev = g.reverse();
    let mut levels: Vec<OracleLevel> = Vec::with_capacity(caps.len());
    for (k, (&hops, sample)) in caps.iter().zip(&samples).enumerate() {
        let tables = if k == 0 {
            vec![from_one_hop(g, sample, hops), from_one_hop(&rev, sample, hops)]
        } else if hops <= kstar {
            vec![stacked(g, sample, hops)?, stacked(&rev, sample, hops)?]
        } else {
            extend(&levels[k - 1], sample, hops, n)
        };
        levels.push(OracleLevel {
            samples: sample.clone(),
            hops,
            tables,
        });
    }
    Ok(Oracle {
        kind: OracleKind::Bounded,
        n,
        seed: plan.seed,
        c: plan.c,
        aux: kstar as u64,
        levels,
    })
}

fn from_one_hop(g: &Graph, sample: &[usize], hops: usize) -> Vec<Dist> {
    if hops == 0 {
        return Vec::new();
    }
    let w = one_hop(g);
    sample.iter().flat_map(|&s| w.row(s).to_vec()).collect()
}

/// `d_{<=h}(S, V)` as running minima of the exact-hop blocks.
fn stacked(g: &Graph, sample: &[usize], hops: usize) -> Result<Vec<Dist>> {
    let n = g.n();
    let blocks = exact_hop_blocks(g, sample, hops, &mut Vec::<DistMatrix>::new())?;
    let mut out = Vec::with_capacity(sample.len() * hops * n);
    for (si, &s) in sample.iter().enumerate() {
        let mut best: Vec<Dist> = (0..n).map(|v| if v == s { Dist::ZERO } else { Dist::INF }).collect();
        for blk in &blocks {
            for (b, &x) in best.iter_mut().zip(blk.row(si)) {
                *b = (*b).min(x);
            }
            out.extend_from_slice(&best);
        }
    }
    Ok(out)
}

/// Both directions of level `k` from level `k - 1`: for `s in S_k`,
/// `d_{<=h}(s, v) = min(d_{<=K'}(s, v), min_x conv(d(s, x), d(x, v))[h])`
/// over `x in S_k`, and symmetrically for `d_{<=h}(v, s)`.
fn extend(prev: &OracleLevel, sample: &[usize], hops: usize, n: usize) -> Vec<Vec<Dist>> {
    let kp = prev.hops;
    let pos: Vec<usize> = sample.iter().map(|v| prev.samples.binary_search(v).expect("nested")).collect();
    // series over h = 1..=kp
    let series = |t: usize, si: usize, v: usize| -> Vec<Dist> { (1..=kp).map(|h| prev.at(t, si, h, v, n)).collect() };
    let fresh = hops - kp;

    let dir = |t: usize| -> Vec<Dist> {
        let other = 1 - t;
        let rows: Vec<Vec<Dist>> = pos
            .par_iter()
            .map(|&ps| {
                let mut row = Vec::with_capacity(hops * n);
                for h in 1..=kp {
                    row.extend((0..n).map(|v| prev.at(t, ps, h, v, n)));
                }
                let mut ext = vec![Dist::INF; fresh * n];
                // first halves: s -> x (forward) or x -> s (backward)
                let firsts: Vec<(usize, Vec<Dist>)> = pos
                    .iter()
                    .map(|&px| (px, series(other, px, prev.samples[ps])))
                    .collect();
                for v in 0..n {
                    let stag = prev.at(t, ps, kp, v, n);
                    let mut out = vec![stag; fresh];
                    for (px, a) in &firsts {
                        let a_last = a[kp - 1];
                        if a_last.is_inf() {
                            continue;
                        }
                        let b = series(t, *px, v);
                        let b_last = b[kp - 1];
                        if b_last.is_inf() || a_last + b_last >= stag {
                            continue;
                        }
                        min_conv_into(a, &b, &mut out, kp - 1);
                    }
                    for (hi, x) in out.into_iter().enumerate() {
                        ext[hi * n + v] = x;
                    }
                }
                row.extend(ext);
                row
            })
            .collect();
        rows.concat()
    };
    vec![dir(0), dir(1)]
}
