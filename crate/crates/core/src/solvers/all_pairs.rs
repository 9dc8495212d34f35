use rayon::prelude::*;

use crate::baselines::{AllHopsRow, AllHopsTable};
use crate::dist::Dist;
use crate::error::Result;
use crate::graph::Graph;
use crate::kernels::min_conv_into;
use crate::sampling::{ceil_three_halves, uniform_subset, SamplePlan};

use super::one_hop;

/// `d_{<=h}(u, v)` for every pair and `h = 0..=n-1`.
pub fn all_pairs_allhops(g: &Graph, plan: &SamplePlan) -> Result<AllHopsTable> {
    all_pairs_allhops_with(g, plan, g.n().saturating_sub(1))
}

/// Same, stopping once hop budget `max_hop` is covered.
pub fn all_pairs_allhops_with(g: &Graph, plan: &SamplePlan, max_hop: usize) -> Result<AllHopsTable> {
    g.require_no_negative_cycle()?;
    plan.validate(g.n())?;
    let n = g.n();
    let span = max_hop + 1;
    let w = one_hop(g);

    // pair-major: data[u][v * span + h]
    let mut data: Vec<Vec<Dist>> = (0..n)
        .map(|u| {
            let mut row = vec![Dist::INF; n * span];
            for v in 0..n {
                row[v * span] = if u == v { Dist::ZERO } else { Dist::INF };
                if span > 1 {
                    row[v * span + 1] = w.get(u, v);
                }
            }
            row
        })
        .collect();

    let mut known = 1usize;
    let mut round = 1u32;
    while known < max_hop {
        let next = ceil_three_halves(round).min(max_hop);
        let size = plan.size(n, n as f64 / known as f64);
        let sample = uniform_subset(n, size, &[], &mut plan.rng(round as u64));
        let width = next - known;
        let updates: Vec<Vec<Dist>> = (0..n)
            .into_par_iter()
            .map(|u| extend_row(&data, u, n, span, known, width, &sample))
            .collect();
        for (row, upd) in data.iter_mut().zip(updates) {
            for v in 0..n {
                row[v * span + known + 1..v * span + next + 1].copy_from_slice(&upd[v * width..(v + 1) * width]);
            }
        }
        known = next;
        round += 1;
    }

    let rows = data
        .into_iter()
        .enumerate()
        .map(|(u, pairs)| {
            let mut le = vec![Dist::INF; span * n];
            for v in 0..n {
                for h in 0..span {
                    le[h * n + v] = pairs[v * span + h];
                }
            }
            AllHopsRow {
                source: u,
                max_hop,
                n,
                le,
                ex: None,
            }
        })
        .collect();
    Ok(AllHopsTable { n, max_hop, rows })
}

/// Hops `known+1..=known+width` of every pair `(u, .)`.
fn extend_row(data: &[Vec<Dist>], u: usize, n: usize, span: usize, known: usize, width: usize, sample: &[usize]) -> Vec<Dist> {
    let row_u = &data[u];
    let mut out = vec![Dist::INF; n * width];
    for v in 0..n {
        let stag = row_u[v * span + known];
        out[v * width..(v + 1) * width].fill(stag);
    }
    for &x in sample {
        let a = &row_u[x * span + 1..x * span + known + 1];
        let a_last = a[known - 1];
        if a_last.is_inf() {
            continue;
        }
        let row_x = &data[x];
        for v in 0..n {
            let b = &row_x[v * span + 1..v * span + known + 1];
            let b_last = b[known - 1];
            // both inputs are non-increasing, so nothing beats a_K + b_K
            if b_last.is_inf() || a_last + b_last >= row_u[v * span + known] {
                continue;
            }
            // positions x + y = h - 2 for h in known+1..
            min_conv_into(a, b, &mut out[v * width..(v + 1) * width], known - 1);
        }
    }
    out
}
