use homlie::catalog;
use homlie::format::{export_algebra, parse_algebra};
use homlie::forms::{check_form, killing_form, BilinearForm, SignConvention};
use homlie::grading::is_simple;
use homlie::ratlin::{int, Matrix, Scalar, Subspace};
use homlie::repth::{largest_invariant_in, spin_subspace};
use homlie::structure::{derived_and_center, ideal_closure};
use homlie::HomLieSuperalgebra;
use proptest::prelude::*;

fn rows(n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max_rows)
}

fn to_scalars(rows: &[Vec<i64>]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn span(n: usize, rows: &[Vec<i64>]) -> Subspace {
    Subspace::span(n, to_scalars(rows)).unwrap()
}

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |e| Matrix::from_i64(n, n, &e))
}

fn algebra() -> impl Strategy<Value = HomLieSuperalgebra> {
    let corpus = catalog::corpus();
    (0..corpus.len()).prop_map(move |i| corpus[i].clone())
}

fn shuffled(g: &HomLieSuperalgebra, keys: &[u32]) -> HomLieSuperalgebra {
    let mut order: Vec<usize> = (0..g.dim()).collect();
    order.sort_by_key(|&i| (keys[i % keys.len()].wrapping_mul(i as u32 + 7), i));
    g.permuted(&order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rref_basis_ignores_row_order(r in rows(4, 5), rot in 0usize..5) {
        let mut rotated = r.clone();
        if !rotated.is_empty() {
            let k = rot % rotated.len();
            rotated.rotate_left(k);
        }
        prop_assert_eq!(span(4, &r), span(4, &rotated));
    }

    #[test]
    fn sum_and_intersection_dimensions(a in rows(5, 4), b in rows(5, 4)) {
        let (u, v) = (span(5, &a), span(5, &b));
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains(&u).unwrap() && s.contains(&v).unwrap());
        prop_assert!(u.contains(&i).unwrap() && v.contains(&i).unwrap());
    }

    #[test]
    fn annihilator_is_an_involution(a in rows(5, 4)) {
        let u = span(5, &a);
        prop_assert_eq!(u.annihilator().dim() + u.dim(), 5);
        prop_assert_eq!(u.annihilator().annihilator(), u);
    }

    #[test]
    fn spin_is_invariant_and_idempotent(m1 in square(4), m2 in square(4), seed in rows(4, 2)) {
        let ops = [m1, m2];
        let u = span(4, &seed);
        let s = spin_subspace(&ops, &u).unwrap();
        prop_assert!(s.contains(&u).unwrap());
        for m in &ops {
            prop_assert!(s.is_invariant_under(m).unwrap());
        }
        prop_assert_eq!(spin_subspace(&ops, &s).unwrap(), s);
    }

    #[test]
    fn largest_invariant_is_invariant_and_contained(m1 in square(4), m2 in square(4), a in rows(4, 3)) {
        let ops = [m1, m2];
        let u = span(4, &a);
        let w = largest_invariant_in(&ops, &u).unwrap();
        prop_assert!(u.contains(&w).unwrap());
        for m in &ops {
            prop_assert!(w.is_invariant_under(m).unwrap());
        }
    }

    #[test]
    fn ideal_closure_is_idempotent(g in algebra(), pick in prop::collection::vec(0usize..16, 1..3)) {
        let gens: Vec<Vec<Scalar>> = pick.iter().map(|&i| g.basis_vector(i % g.dim())).collect();
        let c = ideal_closure(&g, &gens).unwrap();
        prop_assert_eq!(ideal_closure(&g, &c.basis_vectors()).unwrap(), c.clone());
        for v in &gens {
            prop_assert!(c.contains_vector(v));
        }
    }

    #[test]
    fn export_parse_round_trip(g in algebra()) {
        let back = parse_algebra(&export_algebra(&g)).unwrap();
        prop_assert_eq!(back.names(), g.names());
        prop_assert_eq!(back.structure(), g.structure());
        prop_assert_eq!(back.alpha(), g.alpha());
        prop_assert_eq!(back.parities(), g.parities());
        prop_assert_eq!(back.zdegrees(), g.zdegrees());
    }

    #[test]
    fn form_flags_ignore_basis_order(g in algebra(), keys in prop::collection::vec(any::<u32>(), 1..6)) {
        let h = shuffled(&g, &keys);
        for conv in [SignConvention::Classical, SignConvention::Skew] {
            let a = check_form(&g, &killing_form(&g), conv).unwrap();
            let b = check_form(&h, &killing_form(&h), conv).unwrap();
            prop_assert_eq!(a.consistent.passed(), b.consistent.passed());
            prop_assert_eq!(a.supersymmetric.passed(), b.supersymmetric.passed());
            prop_assert_eq!(a.invariant.passed(), b.invariant.passed());
            prop_assert_eq!(a.alpha_invariant.passed(), b.alpha_invariant.passed());
            prop_assert_eq!(a.radical.dim(), b.radical.dim());
        }
    }

    #[test]
    fn zero_form_is_invariant(g in algebra()) {
        let r = check_form(&g, &BilinearForm::zero(g.dim()), SignConvention::Classical).unwrap();
        prop_assert!(r.is_invariant_form());
        prop_assert_eq!(r.radical.dim(), g.dim());
    }

    #[test]
    fn simple_algebras_are_perfect_and_centerless(g in algebra(), keys in prop::collection::vec(any::<u32>(), 1..6)) {
        let verdict = is_simple(&g).simple();
        prop_assert_eq!(is_simple(&shuffled(&g, &keys)).simple(), verdict);
        if verdict == Some(true) {
            let (derived, center) = derived_and_center(&g);
            prop_assert!(center.is_zero());
            prop_assert!(derived.is_full());
        }
    }
}
