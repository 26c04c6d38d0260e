//! Counting matrices and the matrix-versus-enumeration verifier.
//!
//! * `A^k(i, j)` is the number of walks of length `k` from `i` to `j`.
//! * `(I Iᵗ)^k(i, j)` is the signed number of super-walks.
//! * `(Iᵗ I)^k(i, j)` is the signed number of edge super-walks.
//!
//! [`verify`] checks all three identities entrywise against
//! [`crate::oracle`] for every length `1..=K`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::graph::{EdgeId, Graph};
use crate::matrix::IntMatrix;
use crate::oracle::{Oracle, OracleError, SignedCount, WalkKind};

/// `A^k`.
pub fn walk_count_matrix(g: &Graph, k: u64) -> IntMatrix {
    g.adjacency_matrix()
        .pow(k)
        .expect("adjacency matrix is square")
}

/// `(I Iᵗ)^k`.
pub fn super_walk_matrix(g: &Graph, k: u64) -> IntMatrix {
    g.even_laplacian().pow(k).expect("even Laplacian is square")
}

/// `(Iᵗ I)^k`.
pub fn edge_super_walk_matrix(g: &Graph, k: u64) -> IntMatrix {
    g.odd_laplacian().pow(k).expect("odd Laplacian is square")
}

/// Counting matrix of `kind` raised to `k`.
pub fn count_matrix(g: &Graph, kind: WalkKind, k: u64) -> IntMatrix {
    match kind {
        WalkKind::Walk => walk_count_matrix(g, k),
        WalkKind::Super => super_walk_matrix(g, k),
        WalkKind::EdgeSuper => edge_super_walk_matrix(g, k),
    }
}

/// Single entry of the counting matrix, computed by iterating a
/// matrix-vector product from the unit vector at `to`. No power is
/// materialized, so there is no length cap.
pub fn signed_count_by_matrix(
    g: &Graph,
    kind: WalkKind,
    from: usize,
    to: usize,
    k: u64,
) -> Result<SignedCount, OracleError> {
    let base = match kind {
        WalkKind::Walk => g.adjacency_matrix(),
        WalkKind::Super => g.even_laplacian(),
        WalkKind::EdgeSuper => g.odd_laplacian(),
    };
    let n = base.rows();
    let (bad_from, bad_to) = (from >= n, to >= n);
    if bad_from || bad_to {
        let idx = if bad_from { from } else { to };
        return Err(if kind.on_edges() {
            OracleError::UnknownEdge(idx)
        } else {
            OracleError::UnknownVertex(idx)
        });
    }
    // M^k e_to is column `to` of M^k.
    let mut v = alloc::vec![BigInt::from(0); n];
    v[to] = BigInt::from(1);
    for _ in 0..k {
        v = base.mul_vec(&v).expect("square base matrix");
    }
    Ok(SignedCount(v.swap_remove(from)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Walk counts equal adjacency powers.
    Walks,
    /// Signed super-walk counts equal even Laplacian powers.
    SuperWalks,
    /// Signed edge super-walk counts equal odd Laplacian powers.
    EdgeSuperWalks,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::Walks, Theorem::SuperWalks, Theorem::EdgeSuperWalks];

    pub fn kind(self) -> WalkKind {
        match self {
            Theorem::Walks => WalkKind::Walk,
            Theorem::SuperWalks => WalkKind::Super,
            Theorem::EdgeSuperWalks => WalkKind::EdgeSuper,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Walks => "walks",
            Theorem::SuperWalks => "super-walks",
            Theorem::EdgeSuperWalks => "edge-super-walks",
        }
    }

    pub fn matrix_name(self) -> &'static str {
        match self {
            Theorem::Walks => "adjacency",
            Theorem::SuperWalks => "even-laplacian",
            Theorem::EdgeSuperWalks => "odd-laplacian",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The three base matrices whose powers are checked.
///
/// [`verify_with`] accepts these explicitly so a deliberately corrupted
/// matrix can be injected to exercise the failure path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremMatrices {
    pub adjacency: IntMatrix,
    pub even_laplacian: IntMatrix,
    pub odd_laplacian: IntMatrix,
}

impl TheoremMatrices {
    pub fn of(g: &Graph) -> Self {
        TheoremMatrices {
            adjacency: g.adjacency_matrix(),
            even_laplacian: g.even_laplacian(),
            odd_laplacian: g.odd_laplacian(),
        }
    }

    pub fn base(&self, kind: WalkKind) -> &IntMatrix {
        match kind {
            WalkKind::Walk => &self.adjacency,
            WalkKind::Super => &self.even_laplacian,
            WalkKind::EdgeSuper => &self.odd_laplacian,
        }
    }
}

/// First disagreement between a matrix power and enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub theorem: Theorem,
    pub from: String,
    pub to: String,
    pub length: usize,
    pub matrix_value: BigInt,
    pub oracle_value: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mismatch at ({}, {}), length {}: matrix {} vs oracle {}",
            self.theorem, self.from, self.to, self.length, self.matrix_value, self.oracle_value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremOutcome {
    pub theorem: Theorem,
    pub entries_checked: usize,
    pub mismatch: Option<Mismatch>,
}

impl TheoremOutcome {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub vertices: usize,
    pub edges: usize,
    pub max_length: usize,
    /// Edge whose orientation was reversed before verifying, if any.
    pub flipped_edge: Option<String>,
    pub outcomes: Vec<TheoremOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(TheoremOutcome::passed)
    }

    pub fn outcome(&self, theorem: Theorem) -> Option<&TheoremOutcome> {
        self.outcomes.iter().find(|o| o.theorem == theorem)
    }

    /// First mismatch in theorem order.
    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.outcomes.iter().find_map(|o| o.mismatch.as_ref())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph: {} vertices, {} edges; lengths 1..={}",
            self.vertices, self.edges, self.max_length
        )?;
        if let Some(e) = &self.flipped_edge {
            write!(f, "; flipped {e}")?;
        }
        f.write_str("\n")?;
        for o in &self.outcomes {
            match &o.mismatch {
                None => writeln!(
                    f,
                    "  {:<17} pass ({} entries)",
                    o.theorem.name(),
                    o.entries_checked
                )?,
                Some(m) => writeln!(f, "  {:<17} FAIL: {}", o.theorem.name(), m)?,
            }
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Verifies all three counting identities for lengths `1..=max_length`.
pub fn verify(g: &Graph, max_length: usize) -> VerificationReport {
    verify_with(g, max_length, &TheoremMatrices::of(g))
}

/// Like [`verify`], but powers the supplied base matrices instead of the
/// ones derived from `g`. Enumeration always runs on `g`.
pub fn verify_with(g: &Graph, max_length: usize, matrices: &TheoremMatrices) -> VerificationReport {
    let oracle = Oracle::new(g);
    let outcomes = Theorem::ALL
        .iter()
        .map(|&t| check_theorem(g, &oracle, t, matrices.base(t.kind()), max_length))
        .collect();
    VerificationReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_length,
        flipped_edge: None,
        outcomes,
    }
}

/// [`verify`] on `g` and on every single-edge reorientation of `g`.
pub fn verify_flip_sweep(g: &Graph, max_length: usize) -> Vec<VerificationReport> {
    verify_flip_sweep_with(g, max_length, |_| {})
}

/// [`verify_flip_sweep`] with `adjust` applied to each graph's base matrices
/// before powering them.
pub fn verify_flip_sweep_with<F>(g: &Graph, max_length: usize, adjust: F) -> Vec<VerificationReport>
where
    F: Fn(&mut TheoremMatrices),
{
    let run = |graph: &Graph| {
        let mut matrices = TheoremMatrices::of(graph);
        adjust(&mut matrices);
        verify_with(graph, max_length, &matrices)
    };
    let mut reports = alloc::vec![run(g)];
    for e in g.edge_ids() {
        let flipped = g.flip_edge(e).expect("edge id comes from the graph");
        let mut report = run(&flipped);
        report.flipped_edge = Some(String::from(g.edge_label(e)));
        reports.push(report);
    }
    reports
}

fn check_theorem(
    g: &Graph,
    oracle: &Oracle<'_>,
    theorem: Theorem,
    base: &IntMatrix,
    max_length: usize,
) -> TheoremOutcome {
    let kind = theorem.kind();
    let sites = if kind.on_edges() {
        g.edge_count()
    } else {
        g.vertex_count()
    };
    let label = |i: usize| -> String {
        if kind.on_edges() {
            String::from(g.edge_label(EdgeId(i)))
        } else {
            String::from(g.vertex_label(crate::graph::VertexId(i)))
        }
    };

    // oracle[i][k][j]
    let sweeps: Vec<Vec<Vec<BigInt>>> = (0..sites)
        .map(|i| {
            oracle
                .sums_by_length(kind, i, max_length)
                .expect("site index in range")
        })
        .collect();

    let mut checked = 0;
    for k in 1..=max_length {
        let power = match base.pow(k as u64) {
            Ok(p) if p.rows() == sites => p,
            // A base matrix of the wrong shape disagrees everywhere.
            _ => {
                return TheoremOutcome {
                    theorem,
                    entries_checked: checked,
                    mismatch: Some(Mismatch {
                        theorem,
                        from: String::from("-"),
                        to: String::from("-"),
                        length: k,
                        matrix_value: BigInt::from(0),
                        oracle_value: BigInt::from(0),
                    }),
                };
            }
        };
        for (i, sweep) in sweeps.iter().enumerate() {
            for (j, expected) in sweep[k].iter().enumerate() {
                checked += 1;
                if power.get(i, j) != expected {
                    return TheoremOutcome {
                        theorem,
                        entries_checked: checked,
                        mismatch: Some(Mismatch {
                            theorem,
                            from: label(i),
                            to: label(j),
                            length: k,
                            matrix_value: power.get(i, j).clone(),
                            oracle_value: expected.clone(),
                        }),
                    };
                }
            }
        }
    }
    TheoremOutcome {
        theorem,
        entries_checked: checked,
        mismatch: None,
    }
}
