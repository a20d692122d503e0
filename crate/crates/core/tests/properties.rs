mod common;

use common::{factorial, subsets};
use flagvec::enumeration::optional_cycle;
use flagvec::flag::quotient_basis;
use flagvec::linalg::{hull_vertex_test, solve, Solution};
use flagvec::rational::q;
use flagvec::{expand_optional, Cell, FlagEngine, FormalSum, Hypergraph, Limits, OptionalSpec, QMatrix, ShellingEngine, Q};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

const SEED: u64 = 0xf1a6_5eed;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn graph(arity: usize, max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (arity..=max_n.max(arity)).prop_flat_map(move |n| {
        let cells = subsets(n, arity);
        proptest::collection::vec(any::<bool>(), cells.len()).prop_map(move |keep| {
            let chosen: Vec<Vec<usize>> = cells.iter().zip(&keep).filter(|(_, &k)| k).map(|(c, _)| c.clone()).collect();
            Hypergraph::new(arity, n, chosen).unwrap()
        })
    })
}

fn graph_any_arity() -> impl Strategy<Value = Hypergraph> {
    prop_oneof![graph(1, 6), graph(2, 6), graph(3, 6)]
}

fn graph_with_perm() -> impl Strategy<Value = (Hypergraph, Vec<usize>)> {
    graph_any_arity().prop_flat_map(|g| {
        let n = g.nvertices();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn engine() -> FlagEngine<'static, flagvec::ClosedForm> {
    FlagEngine::closed_form(Limits::default())
}

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn flag_vector_is_label_invariant((g, perm) in graph_with_perm()) {
        let e = engine();
        prop_assert_eq!(e.flag_vector(&g).unwrap(), e.flag_vector(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn shelling_vector_is_label_invariant((g, perm) in graph_with_perm()) {
        prop_assume!(g.nvertices() <= 5);
        let e = ShellingEngine::new(Limits::default());
        prop_assert_eq!(e.shelling_vector(&g).unwrap(), e.shelling_vector(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn flag_vector_is_linear(
        (a, b) in (1usize..=3, 3usize..=6).prop_flat_map(|(i, n)| (graph(i, n).prop_filter("n", move |g| g.nvertices() == n), graph(i, n).prop_filter("n", move |g| g.nvertices() == n))),
        l1 in small_q(),
        l2 in small_q(),
    ) {
        let e = engine();
        let mut s = FormalSum::zero(a.arity());
        s.add_term(&a, l1.clone()).unwrap();
        s.add_term(&b, l2.clone()).unwrap();
        let mut expected = e.flag_vector(&a).unwrap().scale(&l1);
        expected.add_scaled(&l2, &e.flag_vector(&b).unwrap()).unwrap();
        // A cancelled sum has no vertex count, so compare coefficients.
        let got = e.flag_of_sum(&s).unwrap();
        prop_assert!(got.terms().eq(expected.terms()), "{} vs {}", got, expected);
    }

    #[test]
    fn words_end_in_a(g in prop_oneof![graph(2, 6), graph(3, 6)]) {
        prop_assume!(g.nvertices() > 0);
        let f = engine().flag_vector(&g).unwrap();
        prop_assert!(f.terms().all(|(w, _)| w.last() == Some(&0)));
    }

    #[test]
    fn shelling_mass_is_factorial(g in graph_any_arity()) {
        prop_assume!(g.nvertices() <= 5);
        let s = ShellingEngine::new(Limits::default()).shelling_vector(&g).unwrap();
        prop_assert_eq!(s.mass(), q(factorial(g.nvertices())));
    }

    #[test]
    fn cone_then_link_at_apex_is_identity(g in graph_any_arity()) {
        let c = g.cone().unwrap();
        prop_assert_eq!(c.nvertices(), g.nvertices() + 1);
        prop_assert_eq!(c.link(g.nvertices()).unwrap(), g.clone());
        prop_assert_eq!(c.delete_vertex(g.nvertices()).unwrap(), Hypergraph::empty(g.arity() + 1, g.nvertices()));
    }

    #[test]
    fn delete_and_link_split_the_cells(g in graph_any_arity(), v in 0usize..6) {
        prop_assume!(v < g.nvertices());
        let d = g.delete_vertex(v).unwrap();
        let l = g.link(v).unwrap();
        prop_assert_eq!(d.ncells() + l.ncells(), g.ncells());
        prop_assert_eq!(l.ncells(), g.degree(v));
        prop_assert_eq!((d.nvertices(), l.nvertices()), (g.nvertices() - 1, g.nvertices() - 1));
    }

    #[test]
    fn optional_expansion_counts(g in graph(2, 6), picks in proptest::collection::vec(any::<bool>(), 15)) {
        let free: Vec<Cell> = subsets(g.nvertices(), 2)
            .iter()
            .map(|c| Cell::from_vertices(c))
            .filter(|&c| !g.has_cell(c))
            .zip(&picks)
            .filter(|(_, &p)| p)
            .map(|(c, _)| c)
            .take(5)
            .collect();
        let spec = OptionalSpec::new(&g, &free).unwrap();
        prop_assert_eq!(spec.signed_terms().len(), 1 << free.len());
        let sum = expand_optional(&spec).unwrap();
        let expected = if free.is_empty() { q(1) } else { q(0) };
        prop_assert_eq!(sum.coefficient_sum(), expected);
    }

    #[test]
    fn optional_cycles_vanish(n in 3usize..=6, len in 3usize..=5, seed in any::<u64>()) {
        prop_assume!(len <= n);
        let mut order: Vec<usize> = (0..n).collect();
        // A deterministic shuffle from the drawn seed.
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(k, (s >> 33) as usize % (k + 1));
        }
        let f = engine().flag_of_sum(&optional_cycle(n, &order[..len]).unwrap()).unwrap();
        prop_assert!(f.is_zero());
    }
}

fn matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
            .prop_map(move |rows| QMatrix::from_rows(c, rows.into_iter().map(|row| row.into_iter().map(q).collect())).unwrap())
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn rank_nullity(m in matrix()) {
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), m.ncols());
        for k in &kernel {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(Zero::is_zero));
        }
        let left = m.left_kernel();
        prop_assert_eq!(m.rank() + left.len(), m.nrows());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_round_trip(m in matrix(), x in proptest::collection::vec(-4i64..=4, 6)) {
        let x: Vec<Q> = x.into_iter().take(m.ncols()).map(q).collect();
        let b = m.mul_vec(&x).unwrap();
        match solve(&m, &b).unwrap() {
            Solution::Feasible(y) => prop_assert_eq!(m.mul_vec(&y).unwrap(), b),
            Solution::Infeasible { .. } => prop_assert!(false, "consistent system reported infeasible"),
        }
    }

    #[test]
    fn infeasible_certificates_are_valid(m in matrix(), b in proptest::collection::vec(-4i64..=4, 5)) {
        let b: Vec<Q> = b.into_iter().take(m.nrows()).map(q).collect();
        prop_assume!(b.len() == m.nrows());
        if let Solution::Infeasible { certificate } = solve(&m, &b).unwrap() {
            let yt_a = m.transpose().mul_vec(&certificate).unwrap();
            prop_assert!(yt_a.iter().all(Zero::is_zero));
            let yb: Q = certificate.iter().zip(&b).fold(Q::zero(), |a, (y, bi)| a + y * bi);
            prop_assert!(!yb.is_zero());
        }
    }

    #[test]
    fn hull_test_matches_caratheodory(
        d in 1usize..=3,
        pts in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 2..=6),
    ) {
        let pts: Vec<Vec<Q>> = pts.into_iter().map(|p| p.into_iter().take(d).map(q).collect()).collect();
        for i in 0..pts.len() {
            let others: Vec<Vec<Q>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            prop_assert_eq!(hull_vertex_test(&pts[i], &others).unwrap(), !in_hull_by_subsets(&pts[i], &others));
        }
    }
}

/// `p` lies in the hull iff it is a convex combination of some affinely
/// independent subset of at most `d + 1` points.
fn in_hull_by_subsets(p: &[Q], others: &[Vec<Q>]) -> bool {
    let d = p.len();
    for mask in 1u32..1 << others.len() {
        let chosen: Vec<&Vec<Q>> = others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, x)| x).collect();
        if chosen.len() > d + 1 {
            continue;
        }
        // Columns are the chosen points with a trailing 1.
        let rows = (0..=d).map(|r| {
            chosen.iter().map(|x| if r < d { x[r].clone() } else { q(1) }).collect::<Vec<Q>>()
        });
        let a = QMatrix::from_rows(chosen.len(), rows).unwrap();
        if a.rank() != chosen.len() {
            continue;
        }
        let mut b: Vec<Q> = p.to_vec();
        b.push(q(1));
        if let Solution::Feasible(lambda) = solve(&a, &b).unwrap() {
            if lambda.iter().all(|l| !l.is_negative()) {
                return true;
            }
        }
    }
    false
}

#[test]
fn disjoint_pair_relations_die_in_the_quotient() {
    let e = engine();
    for (arity, k) in [(1, 2), (1, 4), (2, 4), (2, 5)] {
        let basis = quotient_basis(arity, k, &e).unwrap();
        let cells: Vec<Cell> = subsets(k, arity).iter().map(|c| Cell::from_vertices(c)).collect();
        for (i, &c1) in cells.iter().enumerate() {
            for &c2 in &cells[i + 1..] {
                if !c1.is_disjoint(c2) {
                    continue;
                }
                let rest: Vec<Cell> = cells.iter().copied().filter(|&c| c != c1 && c != c2).collect();
                for mask in (0u32..1 << rest.len()).step_by(97) {
                    let base = Hypergraph::new(
                        arity,
                        k,
                        rest.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, c)| c.to_vec()),
                    )
                    .unwrap();
                    let sum = expand_optional(&OptionalSpec::new(&base, &[c1, c2]).unwrap()).unwrap();
                    let proj = basis.project(&e.flag_of_sum(&sum).unwrap()).unwrap();
                    assert!(proj.iter().all(Zero::is_zero), "{base} + {c1:?}, {c2:?}");
                }
            }
        }
    }
}
