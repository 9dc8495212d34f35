//! Extended integer distances: a finite `i64` or `+inf`.
//!
//! `+inf` is encoded as `i64::MAX`, so a [`Dist`] is exactly eight bytes and
//! the kernels can work on plain slices. Addition saturates: anything that
//! would overflow upwards becomes `+inf`, anything that would overflow
//! downwards clamps to `i64::MIN`. Every clamp bumps a process-wide counter
//! that callers can inspect with [`saturation_events`].

use std::fmt;
use std::ops::Add;
use std::sync::atomic::{AtomicU64, Ordering};

static SATURATIONS: AtomicU64 = AtomicU64::new(0);

/// Number of finite additions that had to saturate since process start.
pub fn saturation_events() -> u64 {
    SATURATIONS.load(Ordering::Relaxed)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Dist(i64);

impl Dist {
    pub const INF: Dist = Dist(i64::MAX);
    pub const ZERO: Dist = Dist(0);

    /// A finite value. `i64::MAX` is reserved for `+inf` and maps onto it.
    #[inline]
    pub const fn new(v: i64) -> Dist {
        Dist(v)
    }

    #[inline]
    pub const fn is_inf(self) -> bool {
        self.0 == i64::MAX
    }

    #[inline]
    pub const fn is_finite(self) -> bool {
        self.0 != i64::MAX
    }

    /// `None` for `+inf`.
    #[inline]
    pub const fn finite(self) -> Option<i64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    /// Raw encoding, `i64::MAX` for `+inf`.
    #[inline]
    pub const fn raw(self) -> i64 {
        self.0
    }

    #[inline]
    pub const fn from_raw(v: i64) -> Dist {
        Dist(v)
    }

    #[inline]
    pub fn min(self, other: Dist) -> Dist {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    /// Adds a finite offset, leaving `+inf` untouched.
    #[inline]
    pub fn shift(self, by: i64) -> Dist {
        self + Dist(by)
    }
}

impl Add for Dist {
    type Output = Dist;

    #[inline]
    fn add(self, rhs: Dist) -> Dist {
        if self.is_inf() || rhs.is_inf() {
            return Dist::INF;
        }
        match self.0.checked_add(rhs.0) {
            Some(s) => {
                if s == i64::MAX {
                    SATURATIONS.fetch_add(1, Ordering::Relaxed);
                }
                Dist(s)
            }
            None => {
                SATURATIONS.fetch_add(1, Ordering::Relaxed);
                if self.0 > 0 {
                    Dist::INF
                } else {
                    Dist(i64::MIN)
                }
            }
        }
    }
}

impl From<i64> for Dist {
    fn from(v: i64) -> Self {
        Dist(v)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand used throughout the tests: `d(3)` is a finite distance.
#[inline]
pub const fn d(v: i64) -> Dist {
    Dist(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inf_absorbs() {
        assert_eq!(Dist::INF + d(-5), Dist::INF);
        assert_eq!(d(-5) + Dist::INF, Dist::INF);
        assert_eq!(Dist::INF.min(d(3)), d(3));
        assert_eq!(d(3).min(Dist::INF), d(3));
    }

    #[test]
    fn saturation_clamps_and_counts() {
        let before = saturation_events();
        assert_eq!(d(i64::MAX - 1) + d(5), Dist::INF);
        assert_eq!(d(i64::MIN + 1) + d(-5), d(i64::MIN));
        assert!(saturation_events() >= before + 2);
    }

    #[test]
    fn display() {
        assert_eq!(d(-7).to_string(), "-7");
        assert_eq!(Dist::INF.to_string(), "inf");
    }
}
