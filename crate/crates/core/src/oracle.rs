//! Brute-force enumeration of walks, super-walks and edge super-walks.
//!
//! This module never touches a matrix. It expands single steps depth-first
//! and multiplies step signs, which makes it an independent check on the
//! matrix powers computed in [`crate::counting`].
//!
//! Step rules:
//!
//! * walk: from `u`, move along any incident edge to its other endpoint.
//! * super-walk: from `u`, for every incident edge either *move* to the other
//!   endpoint (sign `-1`) or *stay*, heading along the edge and returning
//!   (sign `+1`).
//! * edge super-walk: from edge `e`, through either endpoint `v`, go to any
//!   edge `f` containing `v`. If `f = e` the step is `+1`; otherwise it is
//!   `+1` when `v` has the same incidence sign in `e` and `f`, `-1` if not.
//!
//! A walk's sign is the product of its step signs. The length-0 walk from a
//! site to itself is the single empty walk with sign `+1`.
//!
//! Listings are produced depth-first with the steps of each site taken in
//! the order returned by [`walk_steps`], [`super_steps`] and
//! [`edge_super_steps`], so the output is lexicographic in step order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::sign::Sign;

/// Longest walk length for which full listings are produced by default.
pub const DEFAULT_LISTING_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("listing walks of length {requested} exceeds the enumeration cap of {cap}")]
    LengthCapExceeded { requested: usize, cap: usize },
    #[error("vertex index {0} is out of range")]
    UnknownVertex(usize),
    #[error("edge index {0} is out of range")]
    UnknownEdge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Walk,
    Super,
    EdgeSuper,
}

impl WalkKind {
    pub const ALL: [WalkKind; 3] = [WalkKind::Walk, WalkKind::Super, WalkKind::EdgeSuper];

    pub fn name(self) -> &'static str {
        match self {
            WalkKind::Walk => "walk",
            WalkKind::Super => "super",
            WalkKind::EdgeSuper => "edge-super",
        }
    }

    /// Whether walks of this kind live on edges rather than vertices.
    pub fn on_edges(self) -> bool {
        self == WalkKind::EdgeSuper
    }
}

impl fmt::Display for WalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A vertex or an edge: where a walk of some kind can stand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl Site {
    pub fn index(self) -> usize {
        match self {
            Site::Vertex(v) => v.0,
            Site::Edge(e) => e.0,
        }
    }

    pub fn label(self, g: &Graph) -> &str {
        match self {
            Site::Vertex(v) => g.vertex_label(v),
            Site::Edge(e) => g.edge_label(e),
        }
    }
}

/// One step of an ordinary walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlainStep {
    pub via_edge: EdgeId,
    pub destination: VertexId,
}

/// One step of a super-walk: a move (destination is the neighbour, `-1`) or
/// a stay (destination is the origin, `+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuperStep {
    pub via_edge: EdgeId,
    pub destination: VertexId,
    pub sign: Sign,
}

/// One step of an edge super-walk through the shared vertex `via_vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSuperStep {
    pub via_vertex: VertexId,
    pub destination: EdgeId,
    pub sign: Sign,
}

/// Kind-independent view of a step, used for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepSummary {
    pub via: Site,
    pub to: Site,
    pub sign: Sign,
}

/// One enumerated walk. Its sign is the product of its step signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkRecord {
    Walk {
        start: VertexId,
        steps: Vec<PlainStep>,
    },
    Super {
        start: VertexId,
        steps: Vec<SuperStep>,
    },
    EdgeSuper {
        start: EdgeId,
        steps: Vec<EdgeSuperStep>,
    },
}

impl WalkRecord {
    pub fn kind(&self) -> WalkKind {
        match self {
            WalkRecord::Walk { .. } => WalkKind::Walk,
            WalkRecord::Super { .. } => WalkKind::Super,
            WalkRecord::EdgeSuper { .. } => WalkKind::EdgeSuper,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            WalkRecord::Walk { steps, .. } => steps.len(),
            WalkRecord::Super { steps, .. } => steps.len(),
            WalkRecord::EdgeSuper { steps, .. } => steps.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> Site {
        match self {
            WalkRecord::Walk { start, .. } | WalkRecord::Super { start, .. } => {
                Site::Vertex(*start)
            }
            WalkRecord::EdgeSuper { start, .. } => Site::Edge(*start),
        }
    }

    pub fn end(&self) -> Site {
        self.steps().last().map_or(self.start(), |s| s.to)
    }

    pub fn steps(&self) -> Vec<StepSummary> {
        match self {
            WalkRecord::Walk { steps, .. } => steps
                .iter()
                .map(|s| StepSummary {
                    via: Site::Edge(s.via_edge),
                    to: Site::Vertex(s.destination),
                    sign: Sign::Positive,
                })
                .collect(),
            WalkRecord::Super { steps, .. } => steps
                .iter()
                .map(|s| StepSummary {
                    via: Site::Edge(s.via_edge),
                    to: Site::Vertex(s.destination),
                    sign: s.sign,
                })
                .collect(),
            WalkRecord::EdgeSuper { steps, .. } => steps
                .iter()
                .map(|s| StepSummary {
                    via: Site::Vertex(s.via_vertex),
                    to: Site::Edge(s.destination),
                    sign: s.sign,
                })
                .collect(),
        }
    }

    pub fn sign(&self) -> Sign {
        Sign::product(self.steps().iter().map(|s| s.sign))
    }

    /// Compact rendering such as `v1 -e2-> v4 -e3-> v2 (+1)`.
    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        DisplayRecord {
            record: self,
            graph: g,
        }
    }
}

struct DisplayRecord<'a> {
    record: &'a WalkRecord,
    graph: &'a Graph,
}

impl fmt::Display for DisplayRecord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.record.start().label(self.graph))?;
        for s in self.record.steps() {
            write!(
                f,
                " -{}-> {}",
                s.via.label(self.graph),
                s.to.label(self.graph)
            )?;
        }
        write!(f, " ({})", self.record.sign())
    }
}

/// Σ sgn(γ) over a set of walks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedCount(pub BigInt);

impl SignedCount {
    pub fn of(records: &[WalkRecord]) -> SignedCount {
        SignedCount(BigInt::from(
            records.iter().map(|r| r.sign().value() as i64).sum::<i64>(),
        ))
    }
}

impl fmt::Display for SignedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for SignedCount {
    fn from(x: i64) -> Self {
        SignedCount(BigInt::from(x))
    }
}

/// Ordinary walk steps out of `u`, in edge order.
pub fn walk_steps(g: &Graph, u: VertexId) -> Vec<PlainStep> {
    g.incident_edges(u)
        .iter()
        .map(|&e| PlainStep {
            via_edge: e,
            destination: g.edge(e).opposite(u),
        })
        .collect()
}

/// The `2·valence(u)` super-walk steps out of `u`: all moves in edge order,
/// then all stays in edge order.
pub fn super_steps(g: &Graph, u: VertexId) -> Vec<SuperStep> {
    let incident = g.incident_edges(u);
    let moves = incident.iter().map(|&e| SuperStep {
        via_edge: e,
        destination: g.edge(e).opposite(u),
        sign: Sign::Negative,
    });
    let stays = incident.iter().map(|&e| SuperStep {
        via_edge: e,
        destination: u,
        sign: Sign::Positive,
    });
    moves.chain(stays).collect()
}

/// Edge super-walk steps out of `e`, ordered by the vertex passed through
/// and then by destination edge. Each endpoint contributes one step back to
/// `e` itself and one step to every other edge at that endpoint.
pub fn edge_super_steps(g: &Graph, e: EdgeId) -> Vec<EdgeSuperStep> {
    let mut steps = Vec::new();
    for v in g.edge(e).endpoints() {
        let own = g.sign_of(v, e).expect("endpoint of its own edge");
        for &f in g.incident_edges(v) {
            let sign = if f == e {
                Sign::Positive
            } else {
                own * g.sign_of(v, f).expect("incident edge contains v")
            };
            steps.push(EdgeSuperStep {
                via_vertex: v,
                destination: f,
                sign,
            });
        }
    }
    steps
}

/// A step rule: how to leave a site and what each step contributes.
trait StepRule {
    type Step: Copy;

    fn site_count(&self) -> usize;
    fn steps_from(&self, site: usize) -> Vec<Self::Step>;
    fn destination(step: &Self::Step) -> usize;
    fn sign(step: &Self::Step) -> Sign;
}

struct WalkRule<'g>(&'g Graph);
struct SuperRule<'g>(&'g Graph);
struct EdgeSuperRule<'g>(&'g Graph);

impl StepRule for WalkRule<'_> {
    type Step = PlainStep;

    fn site_count(&self) -> usize {
        self.0.vertex_count()
    }
    fn steps_from(&self, site: usize) -> Vec<PlainStep> {
        walk_steps(self.0, VertexId(site))
    }
    fn destination(step: &PlainStep) -> usize {
        step.destination.0
    }
    fn sign(_: &PlainStep) -> Sign {
        Sign::Positive
    }
}

impl StepRule for SuperRule<'_> {
    type Step = SuperStep;

    fn site_count(&self) -> usize {
        self.0.vertex_count()
    }
    fn steps_from(&self, site: usize) -> Vec<SuperStep> {
        super_steps(self.0, VertexId(site))
    }
    fn destination(step: &SuperStep) -> usize {
        step.destination.0
    }
    fn sign(step: &SuperStep) -> Sign {
        step.sign
    }
}

impl StepRule for EdgeSuperRule<'_> {
    type Step = EdgeSuperStep;

    fn site_count(&self) -> usize {
        self.0.edge_count()
    }
    fn steps_from(&self, site: usize) -> Vec<EdgeSuperStep> {
        edge_super_steps(self.0, EdgeId(site))
    }
    fn destination(step: &EdgeSuperStep) -> usize {
        step.destination.0
    }
    fn sign(step: &EdgeSuperStep) -> Sign {
        step.sign
    }
}

/// Depth-first walker over one step rule, with every site's step list
/// computed once up front.
struct Dfs<R: StepRule> {
    table: Vec<Vec<R::Step>>,
}

impl<R: StepRule> Dfs<R> {
    fn new(rule: &R) -> Self {
        Dfs {
            table: (0..rule.site_count()).map(|s| rule.steps_from(s)).collect(),
        }
    }

    fn list(&self, start: usize, target: usize, len: usize) -> Vec<Vec<R::Step>> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(len);
        self.list_from(start, target, len, &mut path, &mut out);
        out
    }

    fn list_from(
        &self,
        at: usize,
        target: usize,
        remaining: usize,
        path: &mut Vec<R::Step>,
        out: &mut Vec<Vec<R::Step>>,
    ) {
        if remaining == 0 {
            if at == target {
                out.push(path.clone());
            }
            return;
        }
        for step in &self.table[at] {
            path.push(*step);
            self.list_from(R::destination(step), target, remaining - 1, path, out);
            path.pop();
        }
    }

    /// `sums[k][j]` = Σ sgn over all walks of length `k` from `start` to `j`,
    /// for `k = 0..=max_len`, from a single depth-first sweep.
    fn sums_by_length(&self, start: usize, max_len: usize) -> Vec<Vec<i128>> {
        let mut sums = vec![vec![0i128; self.table.len()]; max_len + 1];
        self.accumulate(start, 0, max_len, 1, &mut sums);
        sums
    }

    fn accumulate(
        &self,
        at: usize,
        depth: usize,
        max_len: usize,
        sign: i128,
        sums: &mut [Vec<i128>],
    ) {
        sums[depth][at] += sign;
        if depth == max_len {
            return;
        }
        for step in &self.table[at] {
            let s = sign * R::sign(step).value() as i128;
            self.accumulate(R::destination(step), depth + 1, max_len, s, sums);
        }
    }
}

/// Enumerator bound to one graph, with a cap on the length of full listings.
///
/// Counting-only methods ([`Oracle::signed_count`], [`Oracle::sums_by_length`])
/// are not capped.
#[derive(Debug, Clone, Copy)]
pub struct Oracle<'g> {
    graph: &'g Graph,
    listing_cap: usize,
}

impl<'g> Oracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Oracle {
            graph,
            listing_cap: DEFAULT_LISTING_CAP,
        }
    }

    pub fn with_listing_cap(mut self, cap: usize) -> Self {
        self.listing_cap = cap;
        self
    }

    pub fn listing_cap(&self) -> usize {
        self.listing_cap
    }

    fn check_cap(&self, len: usize) -> Result<(), OracleError> {
        if len > self.listing_cap {
            Err(OracleError::LengthCapExceeded {
                requested: len,
                cap: self.listing_cap,
            })
        } else {
            Ok(())
        }
    }

    fn check_sites(&self, kind: WalkKind, sites: &[usize]) -> Result<(), OracleError> {
        for &s in sites {
            if kind.on_edges() {
                if s >= self.graph.edge_count() {
                    return Err(OracleError::UnknownEdge(s));
                }
            } else if s >= self.graph.vertex_count() {
                return Err(OracleError::UnknownVertex(s));
            }
        }
        Ok(())
    }

    /// All ordinary walks of length `len` from `from` to `to`.
    pub fn walks(
        &self,
        from: VertexId,
        to: VertexId,
        len: usize,
    ) -> Result<Vec<WalkRecord>, OracleError> {
        self.check_sites(WalkKind::Walk, &[from.0, to.0])?;
        self.check_cap(len)?;
        Ok(Dfs::new(&WalkRule(self.graph))
            .list(from.0, to.0, len)
            .into_iter()
            .map(|steps| WalkRecord::Walk { start: from, steps })
            .collect())
    }

    /// All super-walks of length `len` from `from` to `to`, and their signed sum.
    pub fn super_walks(
        &self,
        from: VertexId,
        to: VertexId,
        len: usize,
    ) -> Result<(Vec<WalkRecord>, SignedCount), OracleError> {
        self.check_sites(WalkKind::Super, &[from.0, to.0])?;
        self.check_cap(len)?;
        let records: Vec<_> = Dfs::new(&SuperRule(self.graph))
            .list(from.0, to.0, len)
            .into_iter()
            .map(|steps| WalkRecord::Super { start: from, steps })
            .collect();
        let count = SignedCount::of(&records);
        Ok((records, count))
    }

    /// All edge super-walks of length `len` from `from` to `to`, and their signed sum.
    pub fn edge_super_walks(
        &self,
        from: EdgeId,
        to: EdgeId,
        len: usize,
    ) -> Result<(Vec<WalkRecord>, SignedCount), OracleError> {
        self.check_sites(WalkKind::EdgeSuper, &[from.0, to.0])?;
        self.check_cap(len)?;
        let records: Vec<_> = Dfs::new(&EdgeSuperRule(self.graph))
            .list(from.0, to.0, len)
            .into_iter()
            .map(|steps| WalkRecord::EdgeSuper { start: from, steps })
            .collect();
        let count = SignedCount::of(&records);
        Ok((records, count))
    }

    /// Full listing for any kind; site indices are vertex or edge indices
    /// depending on `kind`.
    pub fn list(
        &self,
        kind: WalkKind,
        from: usize,
        to: usize,
        len: usize,
    ) -> Result<Vec<WalkRecord>, OracleError> {
        match kind {
            WalkKind::Walk => self.walks(VertexId(from), VertexId(to), len),
            WalkKind::Super => self
                .super_walks(VertexId(from), VertexId(to), len)
                .map(|r| r.0),
            WalkKind::EdgeSuper => self
                .edge_super_walks(EdgeId(from), EdgeId(to), len)
                .map(|r| r.0),
        }
    }

    /// Signed sum over all walks of `kind` and length `len` from `from` to
    /// `to`, enumerated without storing them.
    pub fn signed_count(
        &self,
        kind: WalkKind,
        from: usize,
        to: usize,
        len: usize,
    ) -> Result<SignedCount, OracleError> {
        self.check_sites(kind, &[from, to])?;
        let sums = self.sums_by_length(kind, from, len)?;
        Ok(SignedCount(sums[len][to].clone()))
    }

    /// `result[k][j]`: signed sum over all walks of `kind` with length `k`
    /// from `start` to site `j`, for every `k` in `0..=max_len`.
    pub fn sums_by_length(
        &self,
        kind: WalkKind,
        start: usize,
        max_len: usize,
    ) -> Result<Vec<Vec<BigInt>>, OracleError> {
        self.check_sites(kind, &[start])?;
        let raw = match kind {
            WalkKind::Walk => Dfs::new(&WalkRule(self.graph)).sums_by_length(start, max_len),
            WalkKind::Super => Dfs::new(&SuperRule(self.graph)).sums_by_length(start, max_len),
            WalkKind::EdgeSuper => {
                Dfs::new(&EdgeSuperRule(self.graph)).sums_by_length(start, max_len)
            }
        };
        Ok(raw
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect())
    }
}

/// All ordinary walks of length `len`, default listing cap.
pub fn enumerate_walks(
    g: &Graph,
    from: VertexId,
    to: VertexId,
    len: usize,
) -> Result<Vec<WalkRecord>, OracleError> {
    Oracle::new(g).walks(from, to, len)
}

/// All super-walks of length `len` with their signed sum, default listing cap.
pub fn signed_super_walks(
    g: &Graph,
    from: VertexId,
    to: VertexId,
    len: usize,
) -> Result<(Vec<WalkRecord>, SignedCount), OracleError> {
    Oracle::new(g).super_walks(from, to, len)
}

/// All edge super-walks of length `len` with their signed sum, default listing cap.
pub fn signed_edge_super_walks(
    g: &Graph,
    from: EdgeId,
    to: EdgeId,
    len: usize,
) -> Result<(Vec<WalkRecord>, SignedCount), OracleError> {
    Oracle::new(g).edge_super_walks(from, to, len)
}
