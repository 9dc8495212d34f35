use std::collections::BTreeMap;

use crate::baselines::{apah_brute, AllHopsTable};
use crate::dist::Dist;
use crate::error::{Error, Result};

use super::{Builder, GadgetGraph};

fn square(m: &[Vec<i64>], what: &str) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("{what} must be a non-empty square matrix")));
    }
    Ok(n)
}

/// Five-layer gadget: `i{i} -> x{x}` with weight `A[i][x]`, a zero chain
/// `x{x} -> x{x-1}`, `x1 -> s -> y1`, a zero chain `y{y-1} -> y{y}`, and
/// `y{y} -> j{j}` with weight `B[j][y]`. Indices are 1-based.
pub fn reduce_convolution_to_hops(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<GadgetGraph> {
    let n = square(a, "A")?;
    if square(b, "B")? != n {
        return Err(Error::DimensionMismatch("A and B differ in size".into()));
    }
    let mut g = Builder::default();
    let layer = |g: &mut Builder, tag: &str| -> Vec<usize> {
        (1..=n).map(|k| g.named(format!("{tag}{k}"))).collect()
    };
    let is = layer(&mut g, "i");
    let xs = layer(&mut g, "x");
    let s = g.named("s".into());
    let ys = layer(&mut g, "y");
    let js = layer(&mut g, "j");
    for i in 0..n {
        for x in 0..n {
            g.edge(is[i], xs[x], a[i][x]);
        }
    }
    for x in 1..n {
        g.edge(xs[x], xs[x - 1], 0);
        g.edge(ys[x - 1], ys[x], 0);
    }
    g.edge(xs[0], s, 0);
    g.edge(s, ys[0], 0);
    for j in 0..n {
        for y in 0..n {
            g.edge(ys[y], js[j], b[j][y]);
        }
    }
    g.finish(BTreeMap::from([("n".to_string(), n as i64)]))
}

/// `d_{ℓ+2}(i, j)` for 1-based `i`, `j` and `ℓ in 2..=2n`.
pub fn decode_convolution(
    gadget: &GadgetGraph,
    table: &AllHopsTable,
    i: usize,
    j: usize,
    ell: usize,
) -> Result<Dist> {
    let n = gadget.param("n")? as usize;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::Precondition(format!("indices ({i}, {j}) outside [1, {n}]")));
    }
    if !(2..=2 * n).contains(&ell) {
        return Err(Error::HopOutOfRange { h: ell, max: 2 * n });
    }
    if table.max_hop < ell + 2 {
        return Err(Error::HopOutOfRange { h: ell + 2, max: table.max_hop });
    }
    let u = gadget.vertex(&format!("i{i}"))?;
    let v = gadget.vertex(&format!("j{j}"))?;
    let row = table
        .row(u)
        .ok_or_else(|| Error::Precondition(format!("table has no row for i{i}")))?;
    Ok(row.ex(ell + 2, v))
}

/// `min over x + y = ℓ of A[i][x] + B[j][y]`, 1-based.
pub fn conv_brute(a: &[Vec<i64>], b: &[Vec<i64>], i: usize, j: usize, ell: usize) -> Dist {
    let n = a.len();
    (1..=n)
        .filter(|&x| ell > x && ell - x <= n)
        .map(|x| Dist::new(a[i - 1][x - 1] + b[j - 1][ell - x - 1]))
        .min()
        .unwrap_or(Dist::INF)
}

/// Decodes every `(i, j, ℓ)` from Bellman-Ford tables and compares with
/// [`conv_brute`].
pub fn verify_convolution(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<()> {
    let gadget = reduce_convolution_to_hops(a, b)?;
    let n = a.len();
    let table = apah_brute(&gadget.graph, 2 * n + 2);
    for i in 1..=n {
        for j in 1..=n {
            for ell in 2..=2 * n {
                let got = decode_convolution(&gadget, &table, i, j, ell)?;
                let want = conv_brute(a, b, i, j, ell);
                if got != want {
                    return Err(Error::Verification(format!(
                        "(i={i}, j={j}, ℓ={ell}): decoded {got}, direct {want}"
                    )));
                }
            }
        }
    }
    Ok(())
}
