//! Preprocess/query structures for `d_{<=h}(u, v)`.
//!
//! Every kind is stored the same way: a list of levels, each holding a vertex
//! sample, a hop cap `L` and tables indexed `[sample][h - 1][v]`. Full-table
//! oracles have one level whose sample is every vertex. Sampled oracles keep a
//! forward table `d_{<=h}(s, v)` and a backward table `d_{<=h}(v, s)`.

mod bounded;
mod full;
mod mn;
mod mpp;
mod snapshot;

pub use bounded::{build_oracle_bounded, default_crossover};
pub use full::{build_oracle_bf, build_oracle_powers, build_oracle_powers_capped, build_oracle_bf_capped, DEFAULT_MEM_CAP};
pub use mn::{build_oracle_mn, build_oracle_mn_with_stats};
pub use mpp::build_oracle_mpp;

use std::fmt;
use std::str::FromStr;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::sampling::floor_log2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleKind {
    Powers,
    Bf,
    Mn,
    Mpp,
    Bounded,
}

impl OracleKind {
    pub const ALL: [OracleKind; 5] = [
        OracleKind::Powers,
        OracleKind::Bf,
        OracleKind::Mn,
        OracleKind::Mpp,
        OracleKind::Bounded,
    ];

    pub fn code(self) -> u8 {
        match self {
            OracleKind::Powers => 0,
            OracleKind::Bf => 1,
            OracleKind::Mn => 2,
            OracleKind::Mpp => 3,
            OracleKind::Bounded => 4,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.code() == c)
    }

    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Powers => "powers",
            OracleKind::Bf => "bf",
            OracleKind::Mn => "mn",
            OracleKind::Mpp => "mpp",
            OracleKind::Bounded => "bounded",
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown oracle kind `{s}`")))
    }
}

/// One level: `tables[t][(si * hops + h - 1) * n + v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleLevel {
    pub samples: Vec<usize>,
    pub hops: usize,
    pub tables: Vec<Vec<Dist>>,
}

impl OracleLevel {
    #[inline]
    fn at(&self, table: usize, si: usize, h: usize, v: usize, n: usize) -> Dist {
        self.tables[table][(si * self.hops + h - 1) * n + v]
    }

    pub fn cells(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }
}

/// A built oracle of any kind. Immutable after construction; queries take
/// `&self` and are safe to run concurrently.
#[derive(Clone, Debug, PartialEq)]
pub struct Oracle {
    pub kind: OracleKind,
    pub n: usize,
    pub seed: u64,
    pub c: f64,
    /// Kind-specific header value: the crossover `K*` for bounded oracles.
    pub aux: u64,
    pub levels: Vec<OracleLevel>,
}

/// Preprocessing effort reported by builders that count it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub relaxations: u64,
}

impl Oracle {
    /// Largest hop budget the oracle answers.
    pub fn max_hop(&self) -> usize {
        match self.kind {
            OracleKind::Powers | OracleKind::Bf => self.levels.first().map_or(0, |l| l.hops),
            _ => self.n.saturating_sub(1),
        }
    }

    /// Total stored table cells.
    pub fn cells(&self) -> usize {
        self.levels.iter().map(OracleLevel::cells).sum()
    }

    pub fn query(&self, u: usize, v: usize, h: usize) -> Result<Dist> {
        self.query_with_work(u, v, h).map(|(d, _)| d)
    }

    /// The answer and the number of `⊕` evaluations spent on it.
    pub fn query_with_work(&self, u: usize, v: usize, h: usize) -> Result<(Dist, u64)> {
        let n = self.n;
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        let max = self.max_hop();
        if h == 0 || h > max {
            return Err(Error::HopOutOfRange { h, max });
        }
        if u == v {
            return Ok((Dist::ZERO, 0));
        }
        match self.kind {
            OracleKind::Powers | OracleKind::Bf => Ok((self.levels[0].at(0, u, h, v, n), 0)),
            OracleKind::Mn => {
                let top = (floor_log2(h) as usize).min(self.levels.len() - 1);
                Ok(self.scan(u, v, h, top))
            }
            OracleKind::Mpp | OracleKind::Bounded => {
                let top = self
                    .levels
                    .iter()
                    .position(|l| l.hops >= h)
                    .unwrap_or(self.levels.len() - 1);
                Ok(self.scan(u, v, h, top))
            }
        }
    }

    /// `min over i <= top, s in S_i, h' in [0, min(h, L_i)] of
    /// d_{<=h'}(u, s) + d_{<=min(h - h', L_i)}(s, v)`, with the zero-hop
    /// terms read as the identity.
    fn scan(&self, u: usize, v: usize, h: usize, top: usize) -> (Dist, u64) {
        let n = self.n;
        let mut best = Dist::INF;
        let mut work = 0u64;
        for level in &self.levels[..=top] {
            let cap = level.hops;
            for (si, &s) in level.samples.iter().enumerate() {
                for hp in 0..=h.min(cap) {
                    work += 1;
                    let left = if hp == 0 {
                        if u == s { Dist::ZERO } else { continue }
                    } else {
                        level.at(1, si, hp, u, n)
                    };
                    if left.is_inf() {
                        continue;
                    }
                    let rest = (h - hp).min(cap);
                    let right = if rest == 0 {
                        if s == v { Dist::ZERO } else { continue }
                    } else {
                        level.at(0, si, rest, v, n)
                    };
                    best = best.min(left + right);
                }
            }
        }
        (best, work)
    }
}

/// Flattens per-sample rows `rows[si][h][v]` (`h = 0..=hops`, row 0 unused)
/// into the table layout.
pub(crate) fn flatten(rows: &[Vec<Dist>], hops: usize, n: usize) -> Vec<Dist> {
    let mut out = Vec::with_capacity(rows.len() * hops * n);
    for r in rows {
        out.extend_from_slice(&r[n..(hops + 1) * n]);
    }
    out
}
