//! Oriented simple graphs and the matrices built from them.
//!
//! A [`Graph`] stores vertices and edges in the order they were supplied.
//! That order is the row/column order of every matrix derived from the
//! graph, so `v1` is row 0 when the vertices were given as `v1, v2, ...`.
//!
//! Edges are 2-element subsets of the vertex set: self-loops and parallel
//! edges are rejected. Every edge additionally carries an orientation
//! (tail → head). The orientation only matters for the incidence matrix and
//! the odd Laplacian; the adjacency matrix and the even Laplacian ignore it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::sign::Sign;

/// Sign of a vertex inside an oriented edge: negative at the tail, positive
/// at the head.
pub type IncidenceSign = Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex labels must be non-empty")]
    EmptyLabel,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertexInEdge(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("parallel edge between `{0}` and `{1}`")]
    ParallelEdge(String, String),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("vertex `{vertex}` is not an endpoint of edge `{edge}`")]
    NotIncident { vertex: String, edge: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedEdge {
    label: String,
    tail: VertexId,
    head: VertexId,
}

impl OrientedEdge {
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Vertex the edge starts at.
    pub fn tail(&self) -> VertexId {
        self.tail
    }

    /// Vertex the edge ends at.
    pub fn head(&self) -> VertexId {
        self.head
    }

    /// Endpoints ordered by vertex index.
    pub fn endpoints(&self) -> [VertexId; 2] {
        if self.tail <= self.head {
            [self.tail, self.head]
        } else {
            [self.head, self.tail]
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    pub fn opposite(&self, v: VertexId) -> VertexId {
        debug_assert!(self.touches(v));
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// Incremental, validating graph construction.
///
/// Parsers use this directly so they can attach source positions to the
/// first error; [`Graph::from_labels`] is the one-shot entry point.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    lookup: BTreeMap<String, VertexId>,
    edges: Vec<OrientedEdge>,
    pairs: BTreeSet<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<VertexId, GraphError> {
        if label.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        if self.lookup.contains_key(label) {
            return Err(GraphError::DuplicateVertex(label.to_string()));
        }
        let id = VertexId(self.labels.len());
        self.labels.push(label.to_string());
        self.lookup.insert(label.to_string(), id);
        Ok(id)
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.lookup.get(label).copied()
    }

    /// Adds the vertex unless it already exists.
    pub fn ensure_vertex(&mut self, label: &str) -> Result<VertexId, GraphError> {
        match self.vertex(label) {
            Some(id) => Ok(id),
            None => self.add_vertex(label),
        }
    }

    /// Adds the edge `tail → head`; both endpoints must already exist.
    pub fn add_edge(&mut self, tail: &str, head: &str) -> Result<EdgeId, GraphError> {
        let t = self
            .vertex(tail)
            .ok_or_else(|| GraphError::UnknownVertexInEdge(tail.to_string()))?;
        let h = self
            .vertex(head)
            .ok_or_else(|| GraphError::UnknownVertexInEdge(head.to_string()))?;
        if t == h {
            return Err(GraphError::SelfLoop(tail.to_string()));
        }
        let key = if t < h { (t, h) } else { (h, t) };
        if !self.pairs.insert(key) {
            return Err(GraphError::ParallelEdge(tail.to_string(), head.to_string()));
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(OrientedEdge {
            label: format!("e{}", id.0 + 1),
            tail: t,
            head: h,
        });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        if self.labels.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        Ok(Graph::assemble(self.labels, self.lookup, self.edges))
    }
}

/// An immutable oriented simple graph.
///
/// Edge labels are positional: the `n`-th edge (1-based) is labelled `en`.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    lookup: BTreeMap<String, VertexId>,
    edges: Vec<OrientedEdge>,
    incident: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from vertex labels and `(tail, head)` label pairs,
    /// preserving both orders exactly.
    pub fn from_labels<V, E, A, B>(vertices: V, edges: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator,
        V::Item: AsRef<str>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut builder = GraphBuilder::new();
        for label in vertices {
            builder.add_vertex(label.as_ref())?;
        }
        if builder.vertex_count() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        for (tail, head) in edges {
            builder.add_edge(tail.as_ref(), head.as_ref())?;
        }
        builder.build()
    }

    fn assemble(
        labels: Vec<String>,
        lookup: BTreeMap<String, VertexId>,
        edges: Vec<OrientedEdge>,
    ) -> Graph {
        let mut incident = alloc::vec![Vec::new(); labels.len()];
        for (idx, e) in edges.iter().enumerate() {
            incident[e.tail.0].push(EdgeId(idx));
            incident[e.head.0].push(EdgeId(idx));
        }
        Graph {
            labels,
            lookup,
            edges,
            incident,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &OrientedEdge {
        &self.edges[e.0]
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edges[e.0].label
    }

    pub fn vertex_id(&self, label: &str) -> Option<VertexId> {
        self.lookup.get(label).copied()
    }

    pub fn edge_id(&self, label: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.label == label).map(EdgeId)
    }

    /// Edges incident to `v`, in edge order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    /// Number of neighbours of `v` (its degree; the graph is simple).
    pub fn valence(&self, v: VertexId) -> usize {
        self.incident[v.0].len()
    }

    pub fn max_valence(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.incident[u.0]
            .iter()
            .any(|&e| self.edges[e.0].opposite(u) == v)
    }

    /// `-1` if `e` starts at `v`, `+1` if it ends there.
    pub fn sign_of(&self, v: VertexId, e: EdgeId) -> Result<IncidenceSign, GraphError> {
        let edge = self.edges.get(e.0).ok_or(GraphError::UnknownEdge(e.0))?;
        if edge.tail == v {
            Ok(Sign::Negative)
        } else if edge.head == v {
            Ok(Sign::Positive)
        } else {
            Err(GraphError::NotIncident {
                vertex: self
                    .labels
                    .get(v.0)
                    .cloned()
                    .unwrap_or_else(|| format!("#{}", v.0)),
                edge: edge.label.clone(),
            })
        }
    }

    /// A copy of the graph with the orientation of `e` reversed.
    pub fn flip_edge(&self, e: EdgeId) -> Result<Graph, GraphError> {
        if e.0 >= self.edges.len() {
            return Err(GraphError::UnknownEdge(e.0));
        }
        let mut flipped = self.clone();
        let edge = &mut flipped.edges[e.0];
        core::mem::swap(&mut edge.tail, &mut edge.head);
        Ok(flipped)
    }

    /// `|V| × |V|` 0/1 matrix with `A(i, j) = 1` iff `i` and `j` are adjacent.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n, n);
        for e in &self.edges {
            a.set(e.tail.0, e.head.0, BigInt::from(1));
            a.set(e.head.0, e.tail.0, BigInt::from(1));
        }
        a
    }

    /// `|V| × |E|` matrix with `+1` where an edge ends, `-1` where it starts.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertex_count(), self.edge_count());
        for (j, e) in self.edges.iter().enumerate() {
            m.set(e.head.0, j, BigInt::from(1));
            m.set(e.tail.0, j, BigInt::from(-1));
        }
        m
    }

    /// The even Laplacian `I Iᵗ`.
    pub fn even_laplacian(&self) -> IntMatrix {
        let inc = self.incidence_matrix();
        let lap = inc
            .mul(&inc.transpose())
            .expect("incidence times its transpose is always conformable");
        debug_assert_eq!(lap, self.valence_minus_adjacency());
        lap
    }

    /// The even Laplacian assembled entrywise as `diag(valence) - A`.
    pub fn valence_minus_adjacency(&self) -> IntMatrix {
        let mut m = self.adjacency_matrix().negated();
        for v in self.vertices() {
            m.set(v.0, v.0, BigInt::from(self.valence(v)));
        }
        m
    }

    /// The odd Laplacian `Iᵗ I`.
    pub fn odd_laplacian(&self) -> IntMatrix {
        let inc = self.incidence_matrix();
        inc.transpose()
            .mul(&inc)
            .expect("transpose times incidence is always conformable")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph with {} vertices and {} edges",
            self.vertex_count(),
            self.edge_count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use alloc::vec;

    fn fig1() -> Graph {
        families::sample_graph()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn builds_the_bridged_triangles() {
        let g = fig1();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.edge_label(EdgeId(6)), "e7");
        let e7 = g.edge(EdgeId(6));
        assert_eq!(g.vertex_label(e7.tail()), "v3");
        assert_eq!(g.vertex_label(e7.head()), "v5");
    }

    #[test]
    fn single_isolated_vertex() {
        let g = Graph::from_labels(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.valence(VertexId(0)), 0);
        assert_eq!(g.adjacency_matrix(), m(&[&[0]]));
        assert_eq!(g.even_laplacian(), m(&[&[0]]));
        assert_eq!(g.odd_laplacian().rows(), 0);
    }

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(
            Graph::from_labels(["a", "b"], [("a", "a")]),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert_eq!(
            Graph::from_labels(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(GraphError::ParallelEdge("b".into(), "a".into()))
        );
        assert_eq!(
            Graph::from_labels(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(GraphError::DuplicateVertex("a".into()))
        );
        assert_eq!(
            Graph::from_labels(["a"], [("a", "z")]),
            Err(GraphError::UnknownVertexInEdge("z".into()))
        );
        assert_eq!(
            Graph::from_labels(Vec::<&str>::new(), Vec::<(&str, &str)>::new()),
            Err(GraphError::EmptyGraph)
        );
        assert_eq!(
            Graph::from_labels([""], Vec::<(&str, &str)>::new()),
            Err(GraphError::EmptyLabel)
        );
    }

    #[test]
    fn valences_of_bridged_triangles() {
        let g = fig1();
        let v = |l: &str| g.vertex_id(l).unwrap();
        assert_eq!(g.valence(v("v4")), 3);
        assert_eq!(g.valence(v("v1")), 2);
        assert_eq!(g.valence(v("v5")), 3);
        assert_eq!(g.max_valence(), 3);
    }

    #[test]
    fn adjacency_entries() {
        let g = fig1();
        let a = g.adjacency_matrix();
        assert_eq!(a.get(0, 1), &BigInt::from(1));
        assert_eq!(a.get(0, 2), &BigInt::from(0));
        assert_eq!(a.get(0, 0), &BigInt::from(0));
        assert!(a.is_symmetric());

        let single = Graph::from_labels(["a", "b"], [("a", "b")]).unwrap();
        assert_eq!(single.adjacency_matrix(), m(&[&[0, 1], &[1, 0]]));

        let edgeless = Graph::from_labels(["a", "b", "c"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(edgeless.adjacency_matrix(), IntMatrix::zeros(3, 3));
        assert_eq!(edgeless.even_laplacian(), IntMatrix::zeros(3, 3));
    }

    #[test]
    fn incidence_columns() {
        let g = fig1();
        let inc = g.incidence_matrix();
        // e1: v1 -> v2
        assert_eq!(inc.get(0, 0), &BigInt::from(-1));
        assert_eq!(inc.get(1, 0), &BigInt::from(1));
        // e7: v3 -> v5
        assert_eq!(inc.get(2, 6), &BigInt::from(-1));
        assert_eq!(inc.get(4, 6), &BigInt::from(1));
        for j in 0..inc.cols() {
            let column: Vec<&BigInt> = (0..inc.rows()).map(|i| inc.get(i, j)).collect();
            let sum: BigInt = column.iter().copied().sum();
            assert_eq!(sum, BigInt::from(0));
            assert_eq!(column.iter().filter(|x| ***x != BigInt::from(0)).count(), 2);
        }
    }

    #[test]
    fn even_laplacian_entries() {
        let g = fig1();
        let lap = g.even_laplacian();
        assert_eq!(lap.get(0, 0), &BigInt::from(2));
        assert_eq!(lap.get(3, 3), &BigInt::from(3));
        assert_eq!(lap.get(0, 1), &BigInt::from(-1));
        assert_eq!(lap.get(0, 2), &BigInt::from(0));
        assert_eq!(lap, g.valence_minus_adjacency());
    }

    #[test]
    fn odd_laplacian_entries() {
        let g = fig1();
        let lap = g.odd_laplacian();
        for e in 0..7 {
            assert_eq!(lap.get(e, e), &BigInt::from(2));
        }
        // e1, e2 both start at v1
        assert_eq!(lap.get(0, 1), &BigInt::from(1));
        // e1 ends at v2, e3 starts at v2
        assert_eq!(lap.get(0, 2), &BigInt::from(-1));
        assert_eq!(lap.get(0, 3), &BigInt::from(0));
        assert_eq!(lap.trace().unwrap(), BigInt::from(14));
    }

    #[test]
    fn signs_of_vertices_in_edges() {
        let g = fig1();
        let v5 = g.vertex_id("v5").unwrap();
        assert_eq!(g.sign_of(v5, EdgeId(3)), Ok(Sign::Positive));
        assert_eq!(g.sign_of(v5, EdgeId(4)), Ok(Sign::Negative));
        assert_eq!(g.sign_of(v5, EdgeId(6)), Ok(Sign::Positive));
        assert!(matches!(
            g.sign_of(VertexId(0), EdgeId(3)),
            Err(GraphError::NotIncident { .. })
        ));
        assert_eq!(g.sign_of(v5, EdgeId(99)), Err(GraphError::UnknownEdge(99)));
        for e in g.edge_ids() {
            let edge = g.edge(e);
            let prod = g.sign_of(edge.tail(), e).unwrap() * g.sign_of(edge.head(), e).unwrap();
            assert_eq!(prod, Sign::Negative);
        }
    }

    #[test]
    fn flipping_edges() {
        let g = fig1();
        let flipped = g.flip_edge(EdgeId(0)).unwrap();
        assert_ne!(flipped, g);
        assert_eq!(flipped.flip_edge(EdgeId(0)).unwrap(), g);
        assert_eq!(g.flip_edge(EdgeId(7)), Err(GraphError::UnknownEdge(7)));

        let before = g.incidence_matrix();
        let after = flipped.incidence_matrix();
        for i in 0..6 {
            assert_eq!(after.get(i, 0), &-before.get(i, 0).clone());
            for j in 1..7 {
                assert_eq!(after.get(i, j), before.get(i, j));
            }
        }
        assert_eq!(flipped.even_laplacian(), g.even_laplacian());
    }

    #[test]
    fn orientation_changes_odd_laplacian_by_conjugation() {
        let g = fig1();
        for e in g.edge_ids() {
            let flipped = g.flip_edge(e).unwrap();
            let mut signs = vec![1i64; g.edge_count()];
            signs[e.0] = -1;
            let d = IntMatrix::diagonal(&signs);
            let expected = d.mul(&g.odd_laplacian()).unwrap().mul(&d).unwrap();
            assert_eq!(flipped.odd_laplacian(), expected);
        }
    }

    #[test]
    fn laplacian_invariants() {
        for g in [
            fig1(),
            families::complete(4),
            families::star(4),
            families::cycle(5),
        ] {
            let even = g.even_laplacian();
            let odd = g.odd_laplacian();
            for i in 0..even.rows() {
                let s: BigInt = even.row(i).iter().sum();
                assert_eq!(s, BigInt::from(0));
            }
            let two_e = BigInt::from(2 * g.edge_count());
            assert_eq!(even.trace().unwrap(), two_e);
            assert_eq!(odd.trace().unwrap(), two_e);
            assert!(even.is_symmetric() && odd.is_symmetric());
            assert!(g.adjacency_matrix().is_symmetric());
        }
    }
}
