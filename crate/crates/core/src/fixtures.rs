//! Small named graphs shared by unit tests, integration tests and the CLI
//! self-test.

use crate::graph::Graph;

/// `0->1 (1)`, `1->2 (1)`, `0->2 (10)`.
pub fn f1() -> Graph {
    Graph::from_triples(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 10)]).unwrap()
}

/// Two-cycle of weight 1: `0->1 (-2)`, `1->0 (3)`.
pub fn f2() -> Graph {
    Graph::from_triples(2, &[(0, 1, -2), (1, 0, 3)]).unwrap()
}

/// Negative two-cycle: `0->1 (-2)`, `1->0 (1)`.
pub fn f3() -> Graph {
    Graph::from_triples(2, &[(0, 1, -2), (1, 0, 1)]).unwrap()
}

/// Diamond where the cheaper route goes through a negative edge.
pub fn f4() -> Graph {
    Graph::from_triples(4, &[(0, 1, 1), (1, 3, 1), (0, 2, 5), (2, 3, -4)]).unwrap()
}
