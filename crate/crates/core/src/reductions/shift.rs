use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Turns at-most-`h` distances on the shifted graph back into exact-`h`
/// distances on the original.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftRecovery {
    /// Amount subtracted from every edge, `2 * max(M, 1) * n`.
    pub shift: i64,
    pub bound: i64,
    pub max_hop: usize,
}

impl ShiftRecovery {
    /// `d_h(u, v)` from `d'_{<=h}(u, v)`; `None` when there is no walk with
    /// exactly `h` edges. Valid for `1 <= h <= n`.
    pub fn recover(&self, shifted: Dist, h: usize) -> Result<Option<i64>> {
        if h == 0 || h > self.max_hop {
            return Err(Error::HopOutOfRange { h, max: self.max_hop });
        }
        let Some(v) = shifted.finite() else {
            return Ok(None);
        };
        let v = v + self.shift * h as i64;
        Ok((v <= self.bound * h as i64).then_some(v))
    }
}

/// Subtracts `2 * max(M, 1) * n` from every edge so that among walks of at
/// most `h <= n` edges the lightest one uses exactly `h` whenever such a
/// walk exists. Needs a declared bound `M`.
pub fn exact_to_atmost_shift(g: &Graph) -> Result<(Graph, ShiftRecovery)> {
    let m = g
        .declared_m()
        .ok_or_else(|| Error::Precondition("shift needs a declared weight bound".into()))?
        .max(1);
    let n = g.n().max(1) as u128;
    let shift = 2 * m as u128 * n;
    // |w'| <= M + shift per edge and at most n edges per walk
    let worst = (m as u128 + shift) * n + shift * n;
    if worst > i64::MAX as u128 / 2 {
        return Err(Error::BoundExceeded {
            value: worst.min(i64::MAX as u128) as i64,
            bound: i64::MAX / 2,
        });
    }
    let shift = shift as i64;
    let shifted = g
        .map_weights(|w| w - shift)
        .with_declared_m(m + shift as u64)?;
    let rec = ShiftRecovery {
        shift,
        bound: m as i64,
        max_hop: g.n(),
    };
    Ok((shifted, rec))
}

/// Adds a weight-0 self-loop at every vertex, so `d'_h = d_{<=h}`.
pub fn atmost_to_exact_selfloops(g: &Graph) -> Graph {
    g.with_extra_edges((0..g.n()).map(|v| Edge {
        tail: v,
        head: v,
        weight: 0,
    }))
}
