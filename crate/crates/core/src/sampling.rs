//! Hitting-set sample plans and the integer rounding helpers shared by the
//! sampling-based algorithms.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Oversampling constant, randomness source and vertices that every sample
/// must contain.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan {
    pub c: f64,
    pub seed: u64,
    pub pinned: Vec<usize>,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            c: 4.0,
            seed: 0,
            pinned: Vec::new(),
        }
    }
}

impl SamplePlan {
    pub fn new(c: f64, seed: u64) -> Self {
        SamplePlan {
            c,
            seed,
            pinned: Vec::new(),
        }
    }

    pub fn pin(mut self, v: usize) -> Self {
        if !self.pinned.contains(&v) {
            self.pinned.push(v);
        }
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !self.c.is_finite() || self.c < 1.0 {
            return Err(Error::Precondition(format!("oversampling constant C = {} must be >= 1", self.c)));
        }
        if let Some(&v) = self.pinned.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        Ok(())
    }

    /// Independent random stream number `stream` of this plan.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    /// `ceil(C * numer * ln n)` capped at `n`.
    pub fn size(&self, n: usize, numer: f64) -> usize {
        let s = (self.c * numer * ln(n)).ceil();
        if s >= n as f64 {
            n
        } else {
            s.max(0.0) as usize
        }
    }
}

pub fn ln(n: usize) -> f64 {
    (n.max(1) as f64).ln()
}

/// `ceil(n^(r/k))`, exact in integer arithmetic when it fits.
pub fn ceil_root_pow(n: usize, r: usize, k: usize) -> usize {
    assert!(k >= 1);
    if r == 0 || n <= 1 {
        return 1;
    }
    if r.is_multiple_of(k) {
        return n.checked_pow((r / k) as u32).unwrap_or(usize::MAX);
    }
    let target = (n as u128).checked_pow(r as u32);
    let est = (n as f64).powf(r as f64 / k as f64).ceil() as usize;
    let Some(target) = target else { return est };
    // smallest x with x^k >= n^r, searched around the float estimate
    let ge = |x: usize| (x as u128).checked_pow(k as u32).is_none_or(|p| p >= target);
    let mut x = est.max(1);
    while x > 1 && ge(x - 1) {
        x -= 1;
    }
    while !ge(x) {
        x += 1;
    }
    x
}

/// `ceil((3/2)^k)`.
pub fn ceil_three_halves(k: u32) -> usize {
    match (3u128.checked_pow(k), 2u128.checked_pow(k)) {
        (Some(num), Some(den)) => {
            let q = num.div_ceil(den);
            usize::try_from(q).unwrap_or(usize::MAX)
        }
        _ => usize::MAX,
    }
}

/// `floor(log2 x)` for `x >= 1`.
pub fn floor_log2(x: usize) -> u32 {
    assert!(x >= 1);
    usize::BITS - 1 - x.leading_zeros()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `S_0 = V ⊇ S_1 ⊇ ... ⊇ S_k`.
    Shrinking,
    /// `S_0 ⊆ S_1 ⊆ ... ⊆ S_k = V`.
    Growing,
}

/// Nested samples `S_0..S_k`, each sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleHierarchy {
    pub levels: Vec<Vec<usize>>,
    pub direction: Direction,
}

impl SampleHierarchy {
    /// `|S_r| = min(n, ceil(C n^{1-r/k} ln n))`, `S_0 = V`.
    pub fn shrinking(n: usize, k: usize, plan: &SamplePlan, stream: u64) -> Result<Self> {
        plan.validate(n)?;
        let sizes: Vec<usize> = (0..=k)
            .map(|r| {
                if r == 0 {
                    n
                } else {
                    plan.size(n, (n as f64).powf(1.0 - r as f64 / k as f64))
                }
            })
            .collect();
        Ok(SampleHierarchy {
            levels: nested_subsets(n, &sizes, plan, stream),
            direction: Direction::Shrinking,
        })
    }

    /// `|S_r| = min(n, ceil(C n^{r/k} ln n))`, `S_k = V`.
    pub fn growing(n: usize, k: usize, plan: &SamplePlan, stream: u64) -> Result<Self> {
        plan.validate(n)?;
        let mut rng = plan.rng(stream);
        let mut pinned = plan.pinned.clone();
        pinned.sort_unstable();
        let mut current = pinned.clone();
        let mut levels = Vec::with_capacity(k + 1);
        for r in 0..=k {
            let want = if r == k {
                n
            } else {
                plan.size(n, (n as f64).powf(r as f64 / k as f64))
            };
            let want = want.max(current.len());
            if current.len() < want {
                let mut rest: Vec<usize> = (0..n).filter(|v| current.binary_search(v).is_err()).collect();
                rest.shuffle(&mut rng);
                current.extend_from_slice(&rest[..want - current.len()]);
                current.sort_unstable();
            }
            levels.push(current.clone());
        }
        Ok(SampleHierarchy {
            levels,
            direction: Direction::Growing,
        })
    }

    pub fn level(&self, r: usize) -> &[usize] {
        &self.levels[r]
    }
}

/// `S_0 = V ⊇ S_1 ⊇ ...` with `|S_r| = max(|pinned|, min(|S_{r-1}|, sizes[r]))`.
/// Pinned vertices go in first; the rest is drawn uniformly without
/// replacement from the parent level.
pub(crate) fn nested_subsets(n: usize, sizes: &[usize], plan: &SamplePlan, stream: u64) -> Vec<Vec<usize>> {
    let mut rng = plan.rng(stream);
    let mut pinned: Vec<usize> = plan.pinned.clone();
    pinned.sort_unstable();
    let mut levels = Vec::with_capacity(sizes.len());
    let mut parent: Vec<usize> = (0..n).collect();
    for (r, &size) in sizes.iter().enumerate() {
        if r == 0 {
            levels.push(parent.clone());
            continue;
        }
        let want = size.min(parent.len()).max(pinned.len());
        let mut chosen = pinned.clone();
        let mut rest: Vec<usize> = parent.iter().copied().filter(|v| pinned.binary_search(v).is_err()).collect();
        rest.shuffle(&mut rng);
        chosen.extend_from_slice(&rest[..want - pinned.len()]);
        chosen.sort_unstable();
        parent = chosen.clone();
        levels.push(chosen);
    }
    levels
}

/// A uniform sample of `size` vertices (plus the pinned ones), sorted.
pub(crate) fn uniform_subset(n: usize, size: usize, pinned: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut chosen: Vec<usize> = pinned.to_vec();
    chosen.sort_unstable();
    chosen.dedup();
    let want = size.min(n).max(chosen.len());
    let mut rest: Vec<usize> = (0..n).filter(|v| chosen.binary_search(v).is_err()).collect();
    rest.shuffle(rng);
    let extra = want - chosen.len();
    chosen.extend_from_slice(&rest[..extra]);
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_helpers() {
        assert_eq!(ceil_root_pow(64, 1, 2), 8);
        assert_eq!(ceil_root_pow(60, 1, 2), 8);
        assert_eq!(ceil_root_pow(60, 2, 3), 16);
        assert_eq!(ceil_root_pow(1000, 1, 3), 10);
        assert_eq!(ceil_root_pow(1001, 1, 3), 11);
        assert_eq!(ceil_root_pow(17, 0, 3), 1);
        assert_eq!(ceil_root_pow(17, 3, 3), 17);
        let k: Vec<usize> = (0..10).map(ceil_three_halves).collect();
        assert_eq!(k, vec![1, 2, 3, 4, 6, 8, 12, 18, 26, 39]);
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(8), 3);
        assert_eq!(floor_log2(9), 3);
    }

    #[test]
    fn shrinking_nests_and_pins() {
        let plan = SamplePlan::new(1.0, 5).pin(3).pin(17);
        let h = SampleHierarchy::shrinking(200, 3, &plan, 0).unwrap();
        assert_eq!(h.level(0).len(), 200);
        for r in 1..=3 {
            let (parent, child) = (h.level(r - 1), h.level(r));
            assert!(child.iter().all(|v| parent.binary_search(v).is_ok()));
            assert!(child.contains(&3) && child.contains(&17));
            let want = (200f64.powf(1.0 - r as f64 / 3.0) * 200f64.ln()).ceil() as usize;
            assert_eq!(child.len(), want.min(parent.len()));
        }
    }

    #[test]
    fn growing_nests_and_ends_at_v() {
        let plan = SamplePlan::new(1.0, 9).pin(0);
        let h = SampleHierarchy::growing(300, 4, &plan, 0).unwrap();
        assert_eq!(h.level(4).len(), 300);
        for r in 1..=4 {
            let (small, big) = (h.level(r - 1), h.level(r));
            assert!(small.iter().all(|v| big.binary_search(v).is_ok()));
        }
        assert!(h.levels.iter().all(|l| l.contains(&0)));
        assert_eq!(h.level(0).len(), (300f64.ln()).ceil() as usize);
    }

    #[test]
    fn plan_validation() {
        assert!(SamplePlan::new(0.5, 0).validate(3).is_err());
        assert!(SamplePlan::new(2.0, 0).pin(3).validate(3).is_err());
        assert!(SamplePlan::new(2.0, 0).pin(2).validate(3).is_ok());
    }

    #[test]
    fn deterministic() {
        let plan = SamplePlan::new(1.5, 77);
        let a = SampleHierarchy::shrinking(90, 2, &plan, 4).unwrap();
        let b = SampleHierarchy::shrinking(90, 2, &plan, 4).unwrap();
        assert_eq!(a, b);
    }
}
