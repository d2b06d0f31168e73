use lck_core::exterior::{primitive_decompose, primitive_test, Form, HermitianFrame};
use lck_core::identities::CATALOG;
use lck_core::jet::{verify_identity, Jet, MetricChart, DEFAULT_ORDER};
use lck_core::linalg::{Matrix, Subspace};
use lck_core::Gq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gq() -> impl Strategy<Value = Gq> {
    (-4i64..=4, -4i64..=4).prop_map(|(re, im)| Gq::complex(re, im))
}

/// A homogeneous `k`-form on `ℂⁿ`, `n ∈ {2, 3}`.
fn homogeneous() -> impl Strategy<Value = (usize, usize, Vec<Gq>)> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), 0..=2 * n))
        .prop_flat_map(|(n, k)| {
            let len = HermitianFrame::new(n).unwrap().algebra().degree_range(k).len();
            (Just(n), Just(k), prop::collection::vec(gq(), len))
        })
}

fn build(n: usize, k: usize, coeffs: &[Gq]) -> Form {
    let frame = HermitianFrame::new(n).unwrap();
    let alg = frame.algebra();
    let terms: Vec<_> = alg.degree_range(k).zip(coeffs).map(|(i, c)| (alg.mask(i), c.clone())).collect();
    Form::from_terms(&frame, terms)
}

fn inner(a: &[Gq], b: &[Gq]) -> Gq {
    a.iter().zip(b).fold(Gq::from_int(0), |acc, (x, y)| acc + x.clone() * y.conj())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_is_conjugated_lefschetz((n, k, c) in homogeneous()) {
        let a = build(n, k, &c);
        let via_star = a.hodge_star().unwrap().lefschetz_l().hodge_star_inverse().unwrap();
        prop_assert_eq!(a.lefschetz_lambda(), via_star);
    }

    #[test]
    fn lefschetz_pair_is_adjoint((n, k, c) in homogeneous(), d in prop::collection::vec(gq(), 64)) {
        let a = build(n, k, &c);
        let frame = a.frame().clone();
        let len = frame.algebra().degree_range(k + 2).len();
        if len > 0 {
            let b = build(n, k + 2, &d[..len]);
            let lhs = inner(&a.lefschetz_l().to_vector(), &b.to_vector());
            let rhs = inner(&a.to_vector(), &b.lefschetz_lambda().to_vector());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sl2_commutator((n, k, c) in homogeneous()) {
        let a = build(n, k, &c);
        let lhs = &a.lefschetz_lambda().lefschetz_l() - &a.lefschetz_l().lefschetz_lambda();
        prop_assert_eq!(lhs, a.scale(&Gq::from_int(k as i64 - n as i64)));
    }

    #[test]
    fn hard_lefschetz_is_injective((n, k, c) in homogeneous()) {
        let a = build(n, k, &c);
        prop_assume!(k <= n && !a.is_zero());
        let lifted = (0..n - k).fold(a, |x, _| x.lefschetz_l());
        prop_assert!(!lifted.is_zero());
    }

    #[test]
    fn primitive_decomposition_reassembles((n, k, c) in homogeneous()) {
        let a = build(n, k, &c);
        let parts = primitive_decompose(&a).unwrap();
        let mut sum = Form::zero(a.frame());
        for p in &parts {
            prop_assert!(primitive_test(&p.primitive).unwrap());
            if let Some(d) = p.primitive.homogeneous_degree().unwrap() {
                prop_assert_eq!(d + 2 * p.power, k);
            }
            sum = &sum + &p.expand();
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn subspace_dimension_formula(
        a in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..4),
        b in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..4),
    ) {
        let lift = |vs: &Vec<Vec<i64>>| vs.iter().map(|v| v.iter().map(|&x| Gq::from_int(x)).collect()).collect::<Vec<Vec<Gq>>>();
        let (u, w) = (Subspace::span(5, lift(&a)), Subspace::span(5, lift(&b)));
        let (s, i) = (u.sum(&w), u.intersect(&w));
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_space(&u) && s.contains_space(&w));
        prop_assert!(u.contains_space(&i) && w.contains_space(&i));
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(gq(), 4), 1..5)) {
        let m = Matrix::from_rows(&rows);
        let kernel = Subspace::kernel(&m);
        prop_assert_eq!(m.rank() + kernel.dim(), 4);
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Gq::from_int(0)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// `e^f ω_flat` for a random real jet `f`.
    #[test]
    fn identities_hold_on_random_conformal_charts(seed in any::<u64>()) {
        let n = 2;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Jet::random(n, DEFAULT_ORDER, &mut rng);
        let f = f.sub(&Jet::constant(n, DEFAULT_ORDER, f.value()));
        let phi = f.add(&f.conj()).exp_nilpotent();
        let chart = MetricChart::conformal("random-conformal", n, &phi).unwrap();
        let ops = chart.operators().unwrap();
        for id in CATALOG.iter() {
            let r = verify_identity(&chart, &ops, id, 4, seed).unwrap();
            prop_assert!(r.is_zero(), "{} residual {:?}", id.id, r.operator);
        }
    }
}
