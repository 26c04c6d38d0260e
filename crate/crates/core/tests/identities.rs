use proptest::prelude::*;
use superwalk_core::counting::{self, verify};
use superwalk_core::oracle::{Oracle, WalkKind};
use superwalk_core::spectral::HeatEngine;
use superwalk_core::{families, BigInt, Graph, IntMatrix};

/// A simple graph on `n` vertices: `mask` picks edges among the lexicographic
/// pairs and `flips` reverses some of them.
fn masked_graph(n: usize, mask: u32, flips: u32) -> Graph {
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                if flips >> bit & 1 == 1 {
                    edges.push((&labels[j], &labels[i]));
                } else {
                    edges.push((&labels[i], &labels[j]));
                }
            }
            bit += 1;
        }
    }
    Graph::from_labels(&labels, edges).unwrap()
}

fn graphs() -> impl Strategy<Value = Graph> {
    (1usize..=6, any::<u32>(), any::<u32>()).prop_map(|(n, m, f)| masked_graph(n, m, f))
}

#[test]
fn families_verify() {
    for g in [
        families::bridged_triangles(),
        families::path(4),
        families::cycle(5),
        families::star(4),
        families::complete(4),
    ] {
        let report = verify(&g, 4);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn walk_count_on_a_cycle() {
    // Closed walks of length 4 on C5 from a vertex: all C(4,2) = 6 back-and-forth
    // patterns, since a 5-cycle cannot be wound in 4 steps.
    let g = families::cycle(5);
    assert_eq!(
        counting::walk_count_matrix(&g, 4).get(0, 0),
        &BigInt::from(6)
    );
    let oracle = Oracle::new(&g);
    assert_eq!(
        oracle.signed_count(WalkKind::Walk, 0, 0, 4).unwrap().0,
        BigInt::from(6)
    );
}

#[test]
fn star_laplacians() {
    let g = families::star(4);
    assert_eq!(
        g.even_laplacian(),
        IntMatrix::from_i64_rows(&[
            &[4, -1, -1, -1, -1],
            &[-1, 1, 0, 0, 0],
            &[-1, 0, 1, 0, 0],
            &[-1, 0, 0, 1, 0],
            &[-1, 0, 0, 0, 1],
        ])
        .unwrap()
    );
    // All edges leave the centre, so every pair shares the same incidence sign.
    let ones =
        IntMatrix::from_i64_rows(&[&[2, 1, 1, 1], &[1, 2, 1, 1], &[1, 1, 2, 1], &[1, 1, 1, 2]])
            .unwrap();
    assert_eq!(g.odd_laplacian(), ones);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_powers_match_enumeration(g in graphs()) {
        let report = verify(&g, 3);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn even_laplacian_is_valence_minus_adjacency(g in graphs()) {
        prop_assert_eq!(g.even_laplacian(), g.valence_minus_adjacency());
        let row_sums: Vec<BigInt> = (0..g.vertex_count())
            .map(|i| g.even_laplacian().row(i).iter().sum())
            .collect();
        prop_assert!(row_sums.iter().all(|s| *s == BigInt::from(0)));
    }

    #[test]
    fn odd_laplacian_diagonal_is_two(g in graphs()) {
        let m = g.odd_laplacian();
        for e in 0..g.edge_count() {
            prop_assert_eq!(m.get(e, e), &BigInt::from(2));
        }
    }

    #[test]
    fn supertrace_is_euler_characteristic(g in graphs(), t in 0.0f64..2.0) {
        let s = HeatEngine::default().supertrace(&g, t, 1e-12).unwrap();
        let chi = g.vertex_count() as f64 - g.edge_count() as f64;
        prop_assert!((s - chi).abs() < 1e-9, "supertrace {} vs {}", s, chi);
    }
}
