use num_traits::Signed;
use proptest::prelude::*;

use abel_trig::abel::{
    cofactor_identity_residual, degree_identity, from_invariant, is_invariant_line, verify_rational_solution,
};
use abel_trig::construction::{construct_three_curves, construct_two_curves, recover_params};
use abel_trig::darboux::dependence_kernel;
use abel_trig::factorization::{divides_exact, factor, gcd_zero_free, is_zero_free, is_zero_free_exact};
use abel_trig::{linalg, random, rat, ExactPoly, InvariantLine, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn exact_poly(max_degree: usize) -> impl Strategy<Value = ExactPoly> {
    (0..=max_degree).prop_flat_map(|n| {
        (
            prop::collection::vec(small_rational(), n + 1),
            prop::collection::vec(small_rational(), n),
        )
            .prop_map(|(cos, sin)| ExactPoly::new(cos, sin))
    })
}

/// Product of `1..=n` random zero-free linear factors.
fn zero_free_product(n: usize) -> impl Strategy<Value = ExactPoly> {
    (any::<u64>(), 1..=n).prop_map(|(seed, k)| {
        let mut rng = random::seeded(seed);
        (0..k).fold(ExactPoly::one(), |acc, _| {
            &acc * &random::zero_free_factor(&mut rng).to_trig()
        })
    })
}

fn close(x: f64, y: f64, scale: f64) -> bool {
    (x - y).abs() <= 1e-9 * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in exact_poly(3), q in exact_poly(3), r in exact_poly(2)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &ExactPoly::one(), p.clone());
        prop_assert_eq!(-(-&p), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in exact_poly(3), q in exact_poly(3), t in -10.0f64..10.0) {
        let (pv, qv) = (p.eval(t), q.eval(t));
        let scale = p.max_abs_coeff() * q.max_abs_coeff() * 16.0;
        prop_assert!(close((&p * &q).eval(t), pv * qv, scale));
        prop_assert!(close((&p + &q).eval(t), pv + qv, scale));
        prop_assert!(close(p.to_f64().eval(t), pv, scale));
    }

    #[test]
    fn degree_is_additive(p in exact_poly(4), q in exact_poly(4)) {
        match (p.degree(), q.degree()) {
            (Some(m), Some(n)) => prop_assert_eq!((&p * &q).degree(), Some(m + n)),
            _ => prop_assert!((&p * &q).is_zero()),
        }
    }

    #[test]
    fn derivative_is_a_derivation(p in exact_poly(3), q in exact_poly(3)) {
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(p.derivative().mean_integral().is_zero());
    }

    #[test]
    fn laurent_embedding_round_trips(p in exact_poly(4), q in exact_poly(3)) {
        prop_assert_eq!(p.to_laurent().to_trig().unwrap(), p.clone());
        prop_assert_eq!(p.to_laurent().mul(&q.to_laurent()).to_trig().unwrap(), &p * &q);
    }

    #[test]
    fn products_of_zero_free_factors_are_zero_free(p in zero_free_product(4)) {
        prop_assert!(is_zero_free_exact(&p));
        prop_assert!(is_zero_free(&p, 1e-9).unwrap());
        let f = factor(&p, 1e-9).unwrap();
        prop_assert_eq!(f.factors.len(), p.degree().unwrap());
        prop_assert!(f.residual <= 1e-9 * p.max_abs_coeff().max(1.0));
    }

    #[test]
    fn exact_division_and_gcd(g in zero_free_product(2), u in zero_free_product(2), v in zero_free_product(2)) {
        let (gu, gv) = (&g * &u, &g * &v);
        prop_assert_eq!(divides_exact(&g, &gu), Some(u.clone()));
        let d = gcd_zero_free(&gu, &gv).unwrap();
        prop_assert!(divides_exact(&g, &d).is_some());
        prop_assert!(divides_exact(&d, &gu).is_some() && divides_exact(&d, &gv).is_some());
    }

    #[test]
    fn from_invariant_round_trips(p in zero_free_product(2), r in exact_poly(2), bump in exact_poly(1)) {
        let line = InvariantLine::new(p.clone()).unwrap();
        let eq = from_invariant(&line, &r);
        prop_assert!(is_invariant_line(&eq, &p).unwrap());
        prop_assert!(cofactor_identity_residual(&eq, &p).is_zero());
        prop_assert!(verify_rational_solution(&eq, &ExactPoly::one(), &p).unwrap());

        let mut bent = eq.clone();
        bent.b = &bent.b + &bump;
        prop_assert_eq!(
            verify_rational_solution(&bent, &ExactPoly::one(), &p).unwrap(),
            is_invariant_line(&bent, &p).unwrap()
        );
        prop_assert_eq!(bump.is_zero(), is_invariant_line(&bent, &p).unwrap());
    }

    #[test]
    fn kernel_vectors_resubstitute(
        rows in prop::collection::vec(prop::collection::vec(small_rational(), 5), 1..6)
    ) {
        let kernel = linalg::nullspace(&rows, 5);
        prop_assert_eq!(linalg::rank(&rows, 5) + kernel.len(), 5);
        for v in &kernel {
            prop_assert!(linalg::mat_vec(&rows, v).iter().all(|x| *x == rat(0, 1)));
        }
    }

    #[test]
    fn too_many_ratios_are_dependent(ratios in prop::collection::vec(exact_poly(2), 6..8)) {
        // at most 2·2 + 1 coefficients each, so 6 or more ratios are dependent
        prop_assert!(!dependence_kernel(&ratios).is_empty());
    }

    #[test]
    fn three_line_family(seed in any::<u64>(), k3 in small_rational(), margin in 1i64..4) {
        prop_assume!(k3 != rat(0, 1));
        let mut rng = random::seeded(seed);
        let f = random::zero_free_factor(&mut rng);
        let h = f.to_trig();
        // k2/(2k3) above max H keeps k2 - 2k3·H zero-free
        let top = f.c.clone() + f.a.abs() + f.b.abs() + rat(margin, 1);
        let k2 = rat(2, 1) * &k3 * top;
        let c = construct_three_curves(&h, &k2, &k3).unwrap();
        let deg_a = c.eq.a.degree().unwrap();
        for p in &c.lines {
            prop_assert!(c.eq.invariance_residual(p).is_zero());
            prop_assert_eq!(2 * p.degree().unwrap(), deg_a);
        }
        prop_assert!(c.eq.b.mean_integral().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn construction_round_trips(seed in any::<u64>()) {
        let p = random::param_tuple(&mut random::seeded(seed));
        let c = construct_two_curves(&p).unwrap();
        prop_assert!(is_invariant_line(&c.eq, &c.p1).unwrap());
        prop_assert!(is_invariant_line(&c.eq, &c.p2).unwrap());
        prop_assert!(degree_identity(&c.eq, &c.p1, &c.p2).unwrap());
        let r = recover_params(&c.p1, &c.p2, &c.eq).unwrap();
        prop_assert_eq!(r.g.constant_term(), rat(1, 1));
        prop_assert_eq!(construct_two_curves(&r).unwrap(), c);
    }
}
