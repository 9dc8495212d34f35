use crate::dist::Dist;
use crate::error::{Error, Result};

/// A finite run of distances; element `p` stands for index `offset + p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistSeq {
    pub offset: i64,
    pub vals: Vec<Dist>,
}

impl DistSeq {
    pub fn new(offset: i64, vals: Vec<Dist>) -> Self {
        DistSeq { offset, vals }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    /// Value at absolute index `i`; `+inf` outside the stored range.
    pub fn at(&self, i: i64) -> Dist {
        let p = i - self.offset;
        if p < 0 {
            return Dist::INF;
        }
        self.vals.get(p as usize).copied().unwrap_or(Dist::INF)
    }

    pub fn end(&self) -> i64 {
        self.offset + self.vals.len() as i64
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScalarConvStrategy {
    #[default]
    Naive,
    /// Both inputs must be non-increasing. Evaluated with the naive loop;
    /// the variant exists so a subquadratic monotone kernel can slot in.
    Monotone,
}

pub fn is_non_increasing(vals: &[Dist]) -> bool {
    vals.windows(2).all(|w| w[1] <= w[0])
}

/// `out[z - out_start] = min(out[..], min_{x+y=z} a[x] + b[y])` over
/// positions (not absolute indices).
pub(crate) fn min_conv_into(a: &[Dist], b: &[Dist], out: &mut [Dist], out_start: usize) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    for (zi, o) in out.iter_mut().enumerate() {
        let z = out_start + zi;
        // x in [z - (|b|-1), z] intersected with [0, |a|-1]
        let x_lo = z.saturating_sub(b.len() - 1);
        let x_hi = z.min(a.len() - 1);
        let mut best = *o;
        if x_lo > x_hi {
            continue;
        }
        for x in x_lo..=x_hi {
            let s = a[x] + b[z - x];
            if s < best {
                best = s;
            }
        }
        *o = best;
    }
}

fn check(strategy: ScalarConvStrategy, a: &DistSeq, b: &DistSeq) -> Result<()> {
    if strategy == ScalarConvStrategy::Monotone
        && !(is_non_increasing(&a.vals) && is_non_increasing(&b.vals))
    {
        return Err(Error::Precondition(
            "monotone convolution needs non-increasing inputs".into(),
        ));
    }
    Ok(())
}

/// Full min-plus convolution: offset `a.offset + b.offset`, length
/// `|a| + |b| - 1` (empty if either input is empty).
pub fn seq_convolution(a: &DistSeq, b: &DistSeq, strategy: ScalarConvStrategy) -> Result<DistSeq> {
    if a.is_empty() || b.is_empty() {
        check(strategy, a, b)?;
        return Ok(DistSeq::new(a.offset + b.offset, Vec::new()));
    }
    let lo = a.offset + b.offset;
    let hi = lo + (a.len() + b.len() - 2) as i64;
    seq_convolution_range(a, b, lo, hi, strategy)
}

/// The convolution restricted to absolute output indices `lo..=hi`.
/// Indices the inputs cannot reach come back as `+inf`.
pub fn seq_convolution_range(
    a: &DistSeq,
    b: &DistSeq,
    lo: i64,
    hi: i64,
    strategy: ScalarConvStrategy,
) -> Result<DistSeq> {
    check(strategy, a, b)?;
    if hi < lo {
        return Ok(DistSeq::new(lo, Vec::new()));
    }
    let mut out = vec![Dist::INF; (hi - lo + 1) as usize];
    let base = a.offset + b.offset;
    // clip to the reachable window, positions relative to `base`
    let reach_hi = base + (a.len() + b.len()).saturating_sub(2) as i64;
    let from = lo.max(base);
    let to = hi.min(reach_hi);
    if !a.is_empty() && !b.is_empty() && from <= to {
        let dst = &mut out[(from - lo) as usize..=(to - lo) as usize];
        min_conv_into(&a.vals, &b.vals, dst, (from - base) as usize);
    }
    Ok(DistSeq::new(lo, out))
}
