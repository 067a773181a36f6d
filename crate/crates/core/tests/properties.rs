mod common;

use common::*;
use fuzzytopo::graph::Violation;
use fuzzytopo::io::{parse_graph_str, write_graph};
use fuzzytopo::{indices, Edge, FuzzyGraph, IndexKind};
use proptest::prelude::*;
use proptest::sample::Index;

const KINDS: [IndexKind; 6] = [
    IndexKind::Sombor,
    IndexKind::SomborAlpha(1.5),
    IndexKind::ZagrebM1,
    IndexKind::ZagrebM2,
    IndexKind::Randic,
    IndexKind::Nirmala,
];

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || a == b
}

/// Vertex memberships in [0.05, 1]; each pair becomes an edge with
/// probability 1/2 and μ = frac·min(ν).
fn fuzzy_graph(max_n: usize) -> impl Strategy<Value = FuzzyGraph> {
    (2usize..=max_n)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.05f64..=1.0, n),
                prop::collection::vec(prop::option::of(0.01f64..=1.0), n * (n - 1) / 2),
            )
        })
        .prop_map(|(nu, fracs)| {
            let n = nu.len();
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if let Some(f) = fracs[k] {
                        edges.push(Edge::new(u, v, f * nu[u].min(nu[v])));
                    }
                    k += 1;
                }
            }
            FuzzyGraph::new(nu, edges).unwrap()
        })
}

fn with_edges(max_n: usize) -> impl Strategy<Value = FuzzyGraph> {
    fuzzy_graph(max_n).prop_filter("needs an edge", |g| g.edge_count() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn handshake(g in fuzzy_graph(12)) {
        let total: f64 = g.degrees().iter().sum();
        prop_assert!((total - 2.0 * g.size()).abs() <= 1e-9);
        for (a, b) in g.degrees().iter().zip(naive_degrees(&g)) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn indices_match_direct_summation(g in with_edges(12)) {
        for kind in KINDS {
            let lib = indices::evaluate(&g, kind);
            let direct = naive_index(&g, kind);
            prop_assert!(rel_close(lib, direct, 1e-12), "{kind}: {lib} vs {direct}");
        }
    }

    #[test]
    fn relabeling_invariance(
        (g, perm) in with_edges(10).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let h = g.permuted(&perm);
        prop_assert!(h.validate().is_empty());
        for kind in KINDS {
            prop_assert!(rel_close(indices::evaluate(&g, kind), indices::evaluate(&h, kind), 1e-12));
        }
    }

    #[test]
    fn homogeneity(g in with_edges(12), t in prop::sample::select(vec![0.1, 0.5, 0.9])) {
        let h = g.scale_memberships(t).unwrap();
        let t2 = t * t;
        for (kind, factor) in [
            (IndexKind::Sombor, t2),
            (IndexKind::ZagrebM1, t2),
            (IndexKind::ZagrebM2, t2),
            (IndexKind::SomborAlpha(1.5), t2.powf(1.5)),
            (IndexKind::SomborAlpha(2.0), t2.powf(2.0)),
            (IndexKind::Randic, 1.0),
            (IndexKind::Nirmala, 1.0),
        ] {
            let scaled = indices::evaluate(&h, kind);
            let expected = factor * indices::evaluate(&g, kind);
            prop_assert!(rel_close(scaled, expected, 1e-9), "{kind} at t = {t}");
        }
    }

    #[test]
    fn scaling_composes(g in with_edges(8), s in 0.05f64..=1.0, t in 0.05f64..=1.0, ks in 0u32..6, kt in 0u32..6) {
        // powers of two scale exactly
        let (ps, pt) = (0.5f64.powi(ks as i32), 0.5f64.powi(kt as i32));
        let once = g.scale_memberships(ps * pt).unwrap();
        let twice = g.scale_memberships(pt).unwrap().scale_memberships(ps).unwrap();
        prop_assert_eq!(&once, &twice);
        // general factors agree to rounding
        let once = g.scale_memberships(s * t).unwrap();
        let twice = g.scale_memberships(t).unwrap().scale_memberships(s).unwrap();
        for (a, b) in once.memberships().iter().zip(twice.memberships()) {
            prop_assert!((a - b).abs() <= 4.0 * f64::EPSILON * a.abs());
        }
    }

    #[test]
    fn crisp_reduction(g in fuzzy_graph(12)) {
        let crisp = g.crisp_support();
        let classical = classical_sombor(g.order(), &g.pairs());
        let fuzzy = indices::sombor(&crisp).value;
        prop_assert!((fuzzy - classical).abs() <= 1e-12 * classical.max(1.0));
    }

    #[test]
    fn sombor_monotone_in_edge_membership(g in with_edges(12), pick in any::<Index>(), frac in 0.0f64..1.0) {
        let i = pick.index(g.edge_count());
        let e = g.edges()[i];
        let cap = g.nu()[e.u].min(g.nu()[e.v]);
        let mut edges = g.edges().to_vec();
        edges[i].mu = e.mu + frac * (cap - e.mu);
        let h = FuzzyGraph::new(g.nu().to_vec(), edges).unwrap();
        prop_assert!(indices::sombor(&h).value >= indices::sombor(&g).value);
    }

    #[test]
    fn gradient_matches_finite_differences(g in with_edges(10)) {
        let analytic = indices::sombor_gradient(&g);
        let numeric = fd_sombor_gradient(&g, 1e-6);
        for (((pair, a), f), e) in analytic.iter().zip(&numeric).zip(g.edges()) {
            prop_assert_eq!(*pair, e.pair());
            prop_assert!((a - f).abs() <= 1e-5 * a.abs().max(1e-3), "{a} vs {f}");
        }
    }

    #[test]
    fn alpha_one_is_sombor(g in fuzzy_graph(12)) {
        prop_assert_eq!(indices::sombor_alpha(&g, 1.0).unwrap().value, indices::sombor(&g).value);
    }

    #[test]
    fn text_round_trip(g in fuzzy_graph(12)) {
        let text = write_graph(&g);
        prop_assert_eq!(parse_graph_str(&text).unwrap(), g);
    }

    #[test]
    fn axiom_violation_detected(g in with_edges(8), pick in any::<Index>()) {
        let i = pick.index(g.edge_count());
        let e = g.edges()[i];
        let cap = g.nu()[e.u].min(g.nu()[e.v]);
        prop_assume!(cap < 1.0);
        let mut edges = g.edges().to_vec();
        edges[i].mu = (cap + 1.0) / 2.0;
        let bad = FuzzyGraph::from_raw(g.nu().to_vec(), edges);
        let flagged = bad.validate().iter().any(|v| matches!(v, Violation::AxiomViolated { .. }));
        prop_assert!(flagged);
        prop_assert!(FuzzyGraph::new(g.nu().to_vec(), bad.edges().to_vec()).is_err());
    }
}
