use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::{matseq_convolution_range, ConvStrategy, MatrixSeq};
use crate::matrix::DistMatrix;
use crate::sampling::{ceil_root_pow, floor_log2, SampleHierarchy, SamplePlan};

use super::{one_hop, positions};

/// Level tables of one single-pair run: `levels[r]` holds
/// `d_{<=j}(S_r, S_r)` for `j = 0..=H_r`.
#[derive(Clone, Debug)]
pub struct SinglePairTrace {
    pub n: usize,
    pub hierarchy: SampleHierarchy,
    pub levels: Vec<MatrixSeq>,
}

impl SinglePairTrace {
    /// `d_{<=h}(s, t)` for `h = 1..=H_k` read off the last level.
    pub fn read(&self, s: usize, t: usize) -> Vec<Dist> {
        let top = self.levels.last().expect("at least level 0");
        let ps = top.rows().binary_search(&s).expect("s pinned");
        let pt = top.cols().binary_search(&t).expect("t pinned");
        top.mats()[1..]
            .iter()
            .take(self.n.saturating_sub(1))
            .map(|m| m.get(ps, pt))
            .collect()
    }
}

/// `d_{<=h}(s, t)` for `h = 1..=n-1` using `k` sample levels.
pub fn single_pair_allhops(g: &Graph, s: usize, t: usize, k: usize, plan: &SamplePlan) -> Result<Vec<Dist>> {
    single_pair_allhops_with(g, s, t, k, plan, ConvStrategy::fast())
}

pub fn single_pair_allhops_with(
    g: &Graph,
    s: usize,
    t: usize,
    k: usize,
    plan: &SamplePlan,
    strategy: ConvStrategy,
) -> Result<Vec<Dist>> {
    g.require_no_negative_cycle()?;
    Ok(run(g, &[s, t], k, plan, 0, strategy)?.read(s, t))
}

/// Same computation, keeping every level table.
pub fn single_pair_trace(
    g: &Graph,
    s: usize,
    t: usize,
    k: usize,
    plan: &SamplePlan,
    strategy: ConvStrategy,
) -> Result<SinglePairTrace> {
    g.require_no_negative_cycle()?;
    run(g, &[s, t], k, plan, 0, strategy)
}

/// Every vertex of `pins` is kept in all levels, so the last level answers
/// every pinned pair. The single-source solver pins a whole batch of targets
/// and has already checked for negative cycles.
pub(crate) fn run(
    g: &Graph,
    pins: &[usize],
    k: usize,
    plan: &SamplePlan,
    stream: u64,
    strategy: ConvStrategy,
) -> Result<SinglePairTrace> {
    if k == 0 {
        return Err(Error::Precondition("level count k must be >= 1".into()));
    }
    let n = g.n();
    let mut plan = plan.clone();
    for &v in pins {
        g.check_vertex(v)?;
        plan = plan.pin(v);
    }
    let hierarchy = SampleHierarchy::shrinking(n, k, &plan, stream)?;
    let all: Vec<usize> = (0..n).collect();
    let mut level = MatrixSeq::new(
        0,
        all.clone(),
        all.clone(),
        vec![DistMatrix::identity(all.clone(), all), one_hop(g)],
    )?;
    let mut levels = vec![level.clone()];
    let cap = n.saturating_sub(1).max(1);
    for r in 1..=k {
        let target = ceil_root_pow(n, r, k).clamp(1, cap);
        level = extend(&level, hierarchy.level(r), target, strategy)?;
        levels.push(level.clone());
    }
    Ok(SinglePairTrace { n, hierarchy, levels })
}

/// One level step: from `d_{<=j}(S', S')` for `j <= H` to
/// `d_{<=j}(S_r, S_r)` for `j <= target`.
fn extend(prev: &MatrixSeq, next: &[usize], target: usize, strategy: ConvStrategy) -> Result<MatrixSeq> {
    let h = prev.len() - 1;
    let (a, b) = (h.div_ceil(2) as i64, (h / 2) as i64);
    let keep = positions(prev.rows(), next);
    let all_cols: Vec<usize> = (0..prev.cols().len()).collect();

    // prefix d_{<=j}(S_r, S') for j <= known
    let mut q: Vec<DistMatrix> = prev.mats().iter().map(|m| m.select(&keep, &all_cols)).collect();
    let mut known = h;
    q.truncate(target.min(h) + 1);

    // window sequences D_i over [2^i - a, 2^i + b]; the first one is read
    // straight from the previous level
    let window = |i: u32| (((1usize << i) as i64) - a, ((1usize << i) as i64) + b);
    let mut i0 = 0u32;
    while ((1usize << (i0 + 1)) as i64) + b <= h as i64 {
        i0 += 1;
    }
    let (lo, hi) = window(i0);
    let mut d = vec![prev.window(lo, hi)];

    while known < target {
        let i = floor_log2(known);
        while i0 + (d.len() as u32) <= i {
            let last = d.last().expect("non-empty");
            let (lo, hi) = window(i0 + d.len() as u32);
            d.push(matseq_convolution_range(last, last, lo, hi, strategy.matseq)?);
        }
        let di = &d[(i - i0) as usize];
        let p = 1usize << i;
        let prefix = MatrixSeq::from_mats(0, q[..=p].to_vec())?;
        let win = di.window(p as i64, p as i64 + b);
        let upto = (2 * p).min(target);
        let conv = matseq_convolution_range(&prefix, &win, known as i64 + 1, upto as i64, strategy.matseq)?;
        for m in conv.mats() {
            let mut next = q[known].clone();
            next.min_assign(m)?;
            q.push(next);
            known += 1;
        }
    }

    let cols = positions(prev.cols(), next);
    let rows: Vec<usize> = (0..next.len()).collect();
    let mats = q.iter().map(|m| m.select(&rows, &cols)).collect();
    MatrixSeq::new(0, next.to_vec(), next.to_vec(), mats)
}
