//! Sampling-hierarchy solvers for single-pair, single-source and all-pairs
//! all-hops distances.

mod all_pairs;
mod single_pair;
mod single_source;

pub use all_pairs::{all_pairs_allhops, all_pairs_allhops_with};
pub use single_pair::{single_pair_allhops, single_pair_allhops_with, single_pair_trace, SinglePairTrace};
pub use single_source::{default_split, single_source_allhops, single_source_allhops_with};

use crate::dist::Dist;
use crate::error::Result;
use crate::graph::Graph;
use crate::kernels::minplus_product;
use crate::matrix::DistMatrix;

/// Default level count `max(1, ceil(log2 n))`.
pub fn default_levels(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `d_{<=1}` over all vertices: the weight matrix with a zero diagonal.
pub(crate) fn one_hop(g: &Graph) -> DistMatrix {
    let mut w = g.weight_matrix();
    for v in 0..g.n() {
        let x = w.get(v, v).min(Dist::ZERO);
        w.set(v, v, x);
    }
    w
}

/// Positions of `sub` inside the sorted `sup`.
pub(crate) fn positions(sup: &[usize], sub: &[usize]) -> Vec<usize> {
    sub.iter()
        .map(|v| sup.binary_search(v).expect("subset of parent level"))
        .collect()
}

/// `W, W^2, W^4, ...` grown on demand.
fn power_of_two<'a>(g: &Graph, powers: &'a mut Vec<DistMatrix>, i: usize) -> Result<&'a DistMatrix> {
    if powers.is_empty() {
        powers.push(g.weight_matrix());
    }
    while powers.len() <= i {
        let last = powers.last().expect("non-empty");
        let sq = minplus_product(last, last)?;
        powers.push(sq);
    }
    Ok(&powers[i])
}

/// Exact-hop blocks `d_h(rows, V)` for `h = 1..=reach`, built by stacking:
/// with blocks for `h <= 2^i` known, one product with `W^{2^i}` gives the
/// blocks for `2^i < h <= 2^{i+1}`.
pub(crate) fn exact_hop_blocks(g: &Graph, rows: &[usize], reach: usize, powers: &mut Vec<DistMatrix>) -> Result<Vec<DistMatrix>> {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    let w = g.weight_matrix();
    let first = w.select(rows, &all);
    let mut blocks = vec![first];
    let mut i = 0;
    while blocks.len() < reach {
        let step = 1usize << i;
        let cells: Vec<Dist> = blocks.iter().flat_map(|b| b.cells().iter().copied()).collect();
        let stacked = DistMatrix::from_cells((0..blocks.len() * rows.len()).collect(), all.clone(), cells)?;
        let next = minplus_product(&stacked, power_of_two(g, powers, i)?)?;
        let take = blocks.len().min(reach - blocks.len());
        let block = rows.len() * n;
        for b in 0..take {
            let cells = next.cells()[b * block..(b + 1) * block].to_vec();
            blocks.push(DistMatrix::from_cells(rows.to_vec(), all.clone(), cells)?);
        }
        debug_assert!(blocks.len() <= 2 * step);
        i += 1;
    }
    Ok(blocks)
}
