use std::collections::BTreeMap;

use crate::baselines::{bellman_ford_allhops, AllHopsRow};
use crate::error::{Error, Result};

use super::tree::{tree_into, Root};
use super::{is_acyclic, Builder, GadgetGraph};

fn shape(m: &[Vec<i64>], what: &str) -> Result<(usize, usize)> {
    let cols = m.first().map_or(0, Vec::len);
    if m.is_empty() || cols == 0 {
        return Err(Error::DimensionMismatch(format!("{what} is empty")));
    }
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!("{what} rows have unequal length")));
    }
    Ok((m.len(), cols))
}

/// Exact-hop gadget for `A ⋆ B` with `A` of shape `n1 × p`, `B` of shape
/// `p × n2` and entries in `[1, x]`, `x` a power of two.
///
/// Vertices `a1..a{n1}` form a weight-1 chain. For each `k` a tree gadget
/// with leaves `c{k}_{v}` and its reversed copy with leaves `cp{k}_{v}`
/// share the sink `sink{k}`. Links `a{i} -> c{k}_{A[i][k]}` and
/// `cp{k}_{B[k][j]} -> b{j}` have weight 1.
pub fn reduce_mpp_to_exact_hops(a: &[Vec<i64>], b: &[Vec<i64>], x: i64) -> Result<GadgetGraph> {
    if x < 1 || x.count_ones() != 1 {
        return Err(Error::Precondition(format!("x = {x} is not a power of two")));
    }
    let (n1, p) = shape(a, "A")?;
    let (p2, n2) = shape(b, "B")?;
    if p != p2 {
        return Err(Error::DimensionMismatch(format!("A is {n1}x{p} but B is {p2}x{n2}")));
    }
    if let Some(&v) = a.iter().chain(b).flatten().find(|&&v| v < 1 || v > x) {
        return Err(Error::Precondition(format!("entry {v} is outside [1, {x}]")));
    }
    let ell = x.trailing_zeros();
    let mut g = Builder::default();
    let av: Vec<usize> = (1..=n1).map(|i| g.named(format!("a{i}"))).collect();
    let bv: Vec<usize> = (1..=n2).map(|j| g.named(format!("b{j}"))).collect();
    for w in av.windows(2) {
        g.edge(w[0], w[1], 1);
    }
    for k in 0..p {
        let kk = k + 1;
        let (c, sink) = tree_into(&mut g, ell, false, |v| format!("c{kk}_{v}"), Root::New(format!("sink{kk}")))?;
        let (cp, _) = tree_into(&mut g, ell, true, |v| format!("cp{kk}_{v}"), Root::Shared(sink))?;
        for (i, row) in a.iter().enumerate() {
            g.edge(av[i], c[row[k] as usize - 1], 1);
        }
        for (j, &bj) in bv.iter().enumerate() {
            g.edge(cp[b[k][j] as usize - 1], bj, 1);
        }
    }
    let params = BTreeMap::from([
        ("n1".to_string(), n1 as i64),
        ("p".to_string(), p as i64),
        ("n2".to_string(), n2 as i64),
        ("x".to_string(), x),
    ]);
    g.finish(params)
}

/// Largest hop count the decoder reads, `n1 - 1 + 2x`.
pub fn mpp_hops(gadget: &GadgetGraph) -> Result<usize> {
    Ok((gadget.param("n1")? - 1 + 2 * gadget.param("x")?) as usize)
}

/// `C[i][j] = d_{i-1+2x}(a1, b_j) - (i-3+2x)` (1-based `i`) from an
/// exact-hop row rooted at `a1`.
pub fn decode_mpp(gadget: &GadgetGraph, row: &AllHopsRow) -> Result<Vec<Vec<i64>>> {
    let (n1, n2, x) = (gadget.param("n1")?, gadget.param("n2")?, gadget.param("x")?);
    if row.source != gadget.vertex("a1")? {
        return Err(Error::Precondition("decoder needs the row of a1".into()));
    }
    let need = mpp_hops(gadget)?;
    if row.max_hop < need {
        return Err(Error::HopOutOfRange { h: need, max: row.max_hop });
    }
    let mut c = vec![vec![0; n2 as usize]; n1 as usize];
    for i in 1..=n1 {
        let hops = (i - 1 + 2 * x) as usize;
        for j in 1..=n2 {
            let v = gadget.vertex(&format!("b{j}"))?;
            let d = row.ex(hops, v).finite().ok_or_else(|| {
                Error::Verification(format!("no {hops}-hop path from a1 to b{j}"))
            })?;
            c[(i - 1) as usize][(j - 1) as usize] = d - (i - 3 + 2 * x);
        }
    }
    Ok(c)
}

pub fn minplus_brute(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n2 = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n2)
                .map(|j| row.iter().zip(b).map(|(&x, bk)| x + bk[j]).min().unwrap_or(i64::MAX))
                .collect()
        })
        .collect()
}

/// Builds the gadget, checks it is a DAG, decodes from Bellman-Ford rows
/// and compares with the direct product. Returns the decoded product.
pub fn verify_mpp(a: &[Vec<i64>], b: &[Vec<i64>], x: i64) -> Result<Vec<Vec<i64>>> {
    let gadget = reduce_mpp_to_exact_hops(a, b, x)?;
    if !is_acyclic(&gadget.graph) {
        return Err(Error::Verification("mpp gadget has a cycle".into()));
    }
    let row = bellman_ford_allhops(&gadget.graph, gadget.vertex("a1")?, mpp_hops(&gadget)?)?;
    let got = decode_mpp(&gadget, &row)?;
    let want = minplus_brute(a, b);
    if got != want {
        return Err(Error::Verification(format!("decoded {got:?}, direct product {want:?}")));
    }
    Ok(got)
}
