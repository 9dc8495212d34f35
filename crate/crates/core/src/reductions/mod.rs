//! Builders and decoders for the reduction gadgets, each with a verifier
//! that checks the decoding identity against a direct evaluation.

mod conv;
mod mpp;
mod shift;
mod tree;
mod triangle;

pub use conv::{conv_brute, decode_convolution, reduce_convolution_to_hops, verify_convolution};
pub use mpp::{decode_mpp, reduce_mpp_to_exact_hops, verify_mpp};
pub use shift::{atmost_to_exact_selfloops, exact_to_atmost_shift, ShiftRecovery};
pub use tree::{build_tree_gadget, tree_vertex_count, verify_tree};
pub use triangle::{
    build_triangle_gadget, decide_triangle, has_triangle_brute, parse_tripartite, render_tripartite,
    verify_triangle, Tripartite,
};

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A gadget graph with named vertices and the constants its decoder needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub names: BTreeMap<String, usize>,
    pub params: BTreeMap<String, i64>,
}

impl GadgetGraph {
    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("gadget has no vertex named `{name}`")))
    }

    pub fn param(&self, name: &str) -> Result<i64> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("gadget has no parameter `{name}`")))
    }

    /// Side-car name map: one `name vertex-index` line per named vertex,
    /// ordered by vertex index.
    pub fn render_names(&self) -> String {
        let mut pairs: Vec<(&String, &usize)> = self.names.iter().collect();
        pairs.sort_by_key(|&(name, &v)| (v, name.clone()));
        let mut out = String::new();
        for (name, v) in pairs {
            writeln!(out, "{name} {v}").expect("string write");
        }
        out
    }

    fn check(&self) -> Result<()> {
        match self.names.values().find(|&&v| v >= self.graph.n()) {
            Some(&v) => Err(Error::VertexOutOfRange { vertex: v, n: self.graph.n() }),
            None => Ok(()),
        }
    }
}

/// Inverse of [`GadgetGraph::render_names`].
pub fn parse_names(text: &str) -> Result<BTreeMap<String, usize>> {
    let mut names = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: &str| Error::Parse {
            line: i + 1,
            message: message.into(),
        };
        let mut it = line.split_whitespace();
        let (Some(name), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err("expected `name vertex-index`"));
        };
        let v: usize = v.parse().map_err(|_| parse_err("vertex index is not a number"))?;
        if names.insert(name.to_string(), v).is_some() {
            return Err(parse_err("duplicate name"));
        }
    }
    Ok(names)
}

/// Incremental edge-list builder used by all gadgets.
#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(usize, usize, i64)>,
    names: BTreeMap<String, usize>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn named(&mut self, name: String) -> usize {
        let v = self.vertex();
        self.names.insert(name, v);
        v
    }

    fn edge(&mut self, a: usize, b: usize, w: i64) {
        self.edges.push((a, b, w));
    }

    fn finish(self, params: BTreeMap<String, i64>) -> Result<GadgetGraph> {
        let g = GadgetGraph {
            graph: Graph::from_triples(self.n, &self.edges)?,
            names: self.names,
            params,
        };
        g.check()?;
        Ok(g)
    }
}

/// Kahn's algorithm; `true` when the graph has no directed cycle.
pub fn is_acyclic(g: &Graph) -> bool {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        indeg[e.head] += 1;
        out[e.tail].push(e.head);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let g = build_tree_gadget(2, false).unwrap();
        let text = g.render_names();
        assert_eq!(parse_names(&text).unwrap(), g.names);
        assert!(text.lines().count() == 5);
        assert!(parse_names("a 1\na 2\n").is_err());
        assert!(parse_names("a x\n").is_err());
        assert!(parse_names("a 1 2\n").is_err());
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(&crate::fixtures::f1()));
        assert!(!is_acyclic(&crate::fixtures::f2()));
    }
}
