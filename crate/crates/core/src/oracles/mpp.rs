use crate::dist::Dist;
use crate::error::Result;
use crate::graph::Graph;
use crate::kernels::minplus_product;
use crate::matrix::DistMatrix;
use crate::sampling::{ceil_three_halves, nested_subsets, SamplePlan};
use crate::solvers::one_hop;

use super::{Oracle, OracleKind, OracleLevel};

/// Level caps `K_i = min(ceil((3/2)^i), n-1)` for `i = 0, 1, ...` up to the
/// first one reaching `n - 1`.
pub(crate) fn three_halves_caps(n: usize) -> Vec<usize> {
    let cap = n.saturating_sub(1);
    let mut caps = Vec::new();
    for i in 0.. {
        let k = ceil_three_halves(i).min(cap);
        caps.push(k);
        if k >= cap {
            break;
        }
    }
    caps
}

/// Nested samples: `S_0 = V`, `S_i ⊆ S_{i-1}` of size
/// `min(n, ceil(C n ln n / (3/2)^i))`; `A_{i,h}` for `h <= K_i` assembled
/// from level `i - 1` by one rectangular min-plus product per direction.
pub fn build_oracle_mpp(g: &Graph, plan: &SamplePlan) -> Result<Oracle> {
    g.require_no_negative_cycle()?;
    plan.validate(g.n())?;
    let n = g.n();
    let caps = three_halves_caps(n);
    let sizes: Vec<usize> = (0..caps.len())
        .map(|i| plan.size(n, n as f64 / 1.5f64.powi(i as i32)))
        .collect();
    let samples = nested_subsets(n, &sizes, plan, 0);
    let fwd = tables(g, &samples, &caps)?;
    let bwd = tables(&g.reverse(), &samples, &caps)?;
    let levels = samples
        .into_iter()
        .zip(caps)
        .zip(fwd.into_iter().zip(bwd))
        .map(|((samples, hops), (f, b))| OracleLevel {
            samples,
            hops,
            tables: vec![f, b],
        })
        .collect();
    Ok(Oracle {
        kind: OracleKind::Mpp,
        n,
        seed: plan.seed,
        c: plan.c,
        aux: 0,
        levels,
    })
}

/// `d_{<=h}(s, v)` for `s in S_i`, `h in 1..=K_i`, laid out `[s][h-1][v]`.
fn tables(g: &Graph, samples: &[Vec<usize>], caps: &[usize]) -> Result<Vec<Vec<Dist>>> {
    let n = g.n();
    let mut out: Vec<Vec<Dist>> = Vec::with_capacity(caps.len());
    let base = if caps[0] >= 1 { one_hop(g).cells().to_vec() } else { Vec::new() };
    out.push(base);
    for i in 1..caps.len() {
        let (kp, k) = (caps[i - 1], caps[i]);
        let (prev_s, cur_s) = (&samples[i - 1], &samples[i]);
        let prev = &out[i - 1];
        let at = |si: usize, h: usize, v: usize| prev[(si * kp + h - 1) * n + v];
        let pos: Vec<usize> = cur_s.iter().map(|v| prev_s.binary_search(v).expect("nested")).collect();
        let m = cur_s.len();
        let fresh = k - kp;

        // B[(s, h), (s', h')] = A_{i-1, h-h'}[s, s'] when h - h' <= K_{i-1}
        let mut b = vec![Dist::INF; m * fresh * m * kp];
        for (a, &ps) in pos.iter().enumerate() {
            for hi in 0..fresh {
                let h = kp + 1 + hi;
                let row = &mut b[(a * fresh + hi) * m * kp..(a * fresh + hi + 1) * m * kp];
                for (c, &s2) in cur_s.iter().enumerate() {
                    for hp in (h - kp).max(1)..=kp {
                        row[c * kp + hp - 1] = at(ps, h - hp, s2);
                    }
                }
            }
        }
        // C[(s', h'), v] = A_{i-1, h'}[s', v]
        let mut cm = Vec::with_capacity(m * kp * n);
        for &ps in &pos {
            cm.extend_from_slice(&prev[ps * kp * n..(ps + 1) * kp * n]);
        }
        let inner: Vec<usize> = (0..m * kp).collect();
        let bm = DistMatrix::from_cells((0..m * fresh).collect(), inner.clone(), b)?;
        let cm = DistMatrix::from_cells(inner, (0..n).collect(), cm)?;
        let dm = minplus_product(&bm, &cm)?;

        let mut table = Vec::with_capacity(m * k * n);
        for (a, &ps) in pos.iter().enumerate() {
            table.extend_from_slice(&prev[ps * kp * n..(ps + 1) * kp * n]);
            let stag = &prev[(ps * kp + kp - 1) * n..(ps * kp + kp) * n];
            for hi in 0..fresh {
                let d = dm.row(a * fresh + hi);
                table.extend(stag.iter().zip(d).map(|(&x, &y)| x.min(y)));
            }
        }
        out.push(table);
    }
    Ok(out)
}
