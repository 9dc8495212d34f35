use std::collections::BTreeMap;

use crate::baselines::bellman_ford_allhops;
use crate::error::{Error, Result};

use super::{Builder, GadgetGraph};

/// Largest supported `ℓ`; the gadget has `Θ(ℓ 2^ℓ)` vertices.
const MAX_ELL: u32 = 20;

/// Vertices of the tree gadget for `ℓ`: `2^{ℓ+1} - 1` tree nodes plus
/// `2^i - 1` chain-interior nodes on each of the `2^{ℓ-i}` edges above
/// height `i`.
pub fn tree_vertex_count(ell: u32) -> usize {
    let tree = (1usize << (ell + 1)) - 1;
    let chains: usize = (0..ell).map(|i| (1usize << (ell - i)) * ((1usize << i) - 1)).sum();
    tree + chains
}

/// Complete binary tree with leaves `u1..u{2^ℓ}` and root `v`, every edge
/// from height `i` to `i + 1` stretched into a chain of `2^i` edges of
/// weight 1 (left child) or 2 (right child). Edges point toward the root,
/// or away from it when `reversed`.
pub fn build_tree_gadget(ell: u32, reversed: bool) -> Result<GadgetGraph> {
    if ell == 0 {
        return Err(Error::Precondition("tree gadget needs ℓ >= 1".into()));
    }
    let mut b = Builder::default();
    tree_into(&mut b, ell, reversed, |i| format!("u{i}"), Root::New("v".into()))?;
    let params = BTreeMap::from([("ell".to_string(), ell as i64)]);
    b.finish(params)
}

pub(super) enum Root {
    New(String),
    Shared(usize),
}

/// Adds one gadget to `b` and returns `(leaves, root)`. `ℓ = 0` is the
/// single-vertex tree whose leaf is the root.
pub(super) fn tree_into(
    b: &mut Builder,
    ell: u32,
    reversed: bool,
    leaf_name: impl Fn(usize) -> String,
    root: Root,
) -> Result<(Vec<usize>, usize)> {
    if ell > MAX_ELL {
        return Err(Error::MemoryCap {
            needed: tree_vertex_count(ell.min(40)) as u128,
            cap: tree_vertex_count(MAX_ELL) as u128,
        });
    }
    if ell == 0 {
        let v = match root {
            Root::New(name) => b.named(name),
            Root::Shared(v) => v,
        };
        b.names.insert(leaf_name(1), v);
        return Ok((vec![v], v));
    }
    let mut root = Some(root);
    let mut level: Vec<usize> = (1..=1usize << ell).map(|i| b.named(leaf_name(i))).collect();
    let leaves = level.clone();
    for height in 0..ell {
        let parents = level.len() / 2;
        let mut next = Vec::with_capacity(parents);
        for p in 0..parents {
            let parent = match root.take_if(|_| parents == 1) {
                Some(Root::New(name)) => b.named(name),
                Some(Root::Shared(v)) => v,
                None => b.vertex(),
            };
            for (side, &child) in level[2 * p..2 * p + 2].iter().enumerate() {
                let w = if side == 0 { 1 } else { 2 };
                let mut at = child;
                for step in 0..1usize << height {
                    let to = if step + 1 == 1 << height { parent } else { b.vertex() };
                    if reversed {
                        b.edge(to, at, w);
                    } else {
                        b.edge(at, to, w);
                    }
                    at = to;
                }
            }
            next.push(parent);
        }
        level = next;
    }
    Ok((leaves, level[0]))
}

/// Checks every leaf-to-root path: exactly `2^ℓ - 1` hops and weight
/// `i + 2^ℓ - 2`, with no shorter-hop route.
pub fn verify_tree(ell: u32) -> Result<()> {
    let g = build_tree_gadget(ell, false)?;
    let v = g.vertex("v")?;
    let hops = (1usize << ell) - 1;
    for i in 1..=1usize << ell {
        let u = g.vertex(&format!("u{i}"))?;
        let row = bellman_ford_allhops(&g.graph, u, hops)?;
        let want = (i + (1 << ell) - 2) as i64;
        let exact = row.ex(hops, v).finite();
        let early = (0..hops).any(|h| row.ex(h, v).is_finite());
        if exact != Some(want) || early {
            return Err(Error::Verification(format!(
                "tree ℓ={ell}: u{i} -> v gave {:?} at {hops} hops, expected {want}",
                exact
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::bellman_ford_allhops;
    use crate::dist::d;

    #[test]
    fn ell_two_distances() {
        let g = build_tree_gadget(2, false).unwrap();
        let v = g.vertex("v").unwrap();
        for i in 1..=4 {
            let row = bellman_ford_allhops(&g.graph, g.vertex(&format!("u{i}")).unwrap(), 6).unwrap();
            assert_eq!(row.le(6, v), d(2 + i as i64));
            assert_eq!(row.ex(3, v), d(2 + i as i64));
            assert!(row.le(2, v).is_inf());
        }
    }

    #[test]
    fn ell_one() {
        let g = build_tree_gadget(1, false).unwrap();
        assert_eq!(g.graph.n(), 3);
        let v = g.vertex("v").unwrap();
        let w: Vec<_> = g.graph.edges().iter().map(|e| (e.tail, e.head, e.weight)).collect();
        assert!(w.contains(&(g.vertex("u1").unwrap(), v, 1)));
        assert!(w.contains(&(g.vertex("u2").unwrap(), v, 2)));
    }

    #[test]
    fn closed_forms_and_size() {
        for ell in 1..=6 {
            verify_tree(ell).unwrap();
            let g = build_tree_gadget(ell, false).unwrap();
            assert_eq!(g.graph.n(), tree_vertex_count(ell));
            assert!(g.graph.n() <= 2 * (ell as usize + 1) * (1 << ell));
            assert!(super::super::is_acyclic(&g.graph));
        }
    }

    #[test]
    fn reversed_flips_edges() {
        let f = build_tree_gadget(3, false).unwrap();
        let r = build_tree_gadget(3, true).unwrap();
        assert_eq!(f.names, r.names);
        assert_eq!(f.graph.reverse().edges(), r.graph.edges());
    }

    #[test]
    fn rejects_bad_ell() {
        assert!(build_tree_gadget(0, false).is_err());
        assert!(matches!(build_tree_gadget(30, false), Err(Error::MemoryCap { .. })));
    }
}
