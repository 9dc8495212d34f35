use crate::baselines::{allhops_from_powers, apah_brute, AllHopsTable};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{flatten, Oracle, OracleKind, OracleLevel};

/// Default table budget for the full oracles: 1 GiB.
pub const DEFAULT_MEM_CAP: u128 = 1 << 30;

fn check_cap(g: &Graph, hops: usize, cap: u128) -> Result<()> {
    // the build holds an exact and an at-most table side by side
    let needed = 2 * (g.n() as u128).pow(2) * (hops as u128 + 1) * 8;
    if needed > cap {
        return Err(Error::MemoryCap { needed, cap });
    }
    Ok(())
}

fn wrap(kind: OracleKind, t: AllHopsTable) -> Oracle {
    let n = t.n;
    let rows: Vec<_> = t.rows.into_iter().map(|r| r.le).collect();
    Oracle {
        kind,
        n,
        seed: 0,
        c: 0.0,
        aux: 0,
        levels: vec![OracleLevel {
            samples: (0..n).collect(),
            hops: t.max_hop,
            tables: vec![flatten(&rows, t.max_hop, n)],
        }],
    }
}

/// Full table from `W, W^2, ..., W^H`.
pub fn build_oracle_powers(g: &Graph, hops: usize) -> Result<Oracle> {
    build_oracle_powers_capped(g, hops, DEFAULT_MEM_CAP)
}

pub fn build_oracle_powers_capped(g: &Graph, hops: usize, cap: u128) -> Result<Oracle> {
    check_cap(g, hops, cap)?;
    Ok(wrap(OracleKind::Powers, allhops_from_powers(g, hops)?))
}

/// Full table from one hop-bounded Bellman-Ford run per source.
pub fn build_oracle_bf(g: &Graph, hops: usize) -> Result<Oracle> {
    build_oracle_bf_capped(g, hops, DEFAULT_MEM_CAP)
}

pub fn build_oracle_bf_capped(g: &Graph, hops: usize, cap: u128) -> Result<Oracle> {
    check_cap(g, hops, cap)?;
    Ok(wrap(OracleKind::Bf, apah_brute(g, hops)))
}
