//! Small named graphs used as fixtures and test inputs.
//!
//! Vertices are labelled `v1..vn`. Unless stated otherwise every edge is
//! oriented from the lower-numbered to the higher-numbered endpoint.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::Graph;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

fn from_index_pairs(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let names = labels(n);
    Graph::from_labels(&names, pairs.iter().map(|&(a, b)| (&names[a], &names[b])))
        .expect("family graphs are simple by construction")
}

/// Two triangles `{v1, v2, v4}` and `{v3, v5, v6}` joined by the bridge
/// `v4 → v5`. Edge order and orientation:
///
/// ```text
/// e1: v1 → v2   e2: v1 → v4   e3: v2 → v4   e4: v4 → v5
/// e5: v5 → v6   e6: v6 → v3   e7: v3 → v5
/// ```
pub fn bridged_triangles() -> Graph {
    from_index_pairs(6, &[(0, 1), (0, 3), (1, 3), (3, 4), (4, 5), (5, 2), (2, 4)])
}

/// Path on `n ≥ 1` vertices.
pub fn path(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_index_pairs(n, &pairs)
}

/// Cycle on `n ≥ 3` vertices; the closing edge is `vn → v1`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least three vertices");
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_index_pairs(n, &pairs)
}

/// Star with centre `v1` and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    from_index_pairs(leaves + 1, &pairs)
}

/// Complete graph on `n ≥ 1` vertices, edges in lexicographic order.
pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    from_index_pairs(n, &pairs)
}

#[cfg(test)]
pub(crate) fn sample_graph() -> Graph {
    bridged_triangles()
}
