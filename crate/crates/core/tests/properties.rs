use cm_atlas::cmcheck::{cm_verify, theorem1_predicate, Family, Tri};
use cm_atlas::families::{
    capital_lambda, delta, divided_diff_psi, kernel_g, ln_h, theta, GridSpec, ParamTriple, Spacing,
};
use cm_atlas::inequalities::check_qi_psi_bounds;
use cm_atlas::specfun::{polygamma, polygamma_oracle};
use proptest::prelude::*;

/// `(s, t)` with `s < t`; callers sample `y = x + s > 0`.
fn st() -> impl Strategy<Value = (f64, f64)> {
    (-0.9f64..3.0, 0.05f64..3.0).prop_map(|(s, g)| (s, s + g))
}

proptest! {
    #[test]
    fn families_symmetric_in_s_t((s, t) in st(), lambda in -2.0f64..4.0, y in 1e-3f64..50.0) {
        let x = y - s;
        let p = ParamTriple::new(s, t, lambda).unwrap();
        let q = ParamTriple::new(t, s, lambda).unwrap();
        prop_assert_eq!(delta(&p, x).unwrap().to_bits(), delta(&q, x).unwrap().to_bits());
        prop_assert_eq!(theta(&p, x).unwrap().to_bits(), theta(&q, x).unwrap().to_bits());
        prop_assert_eq!(ln_h(&p, x).unwrap().to_bits(), ln_h(&q, x).unwrap().to_bits());
    }

    #[test]
    fn delta_and_theta_affine_in_lambda((s, t) in st(), l0 in -2.0f64..2.0, l1 in 2.0f64..4.0, y in 0.01f64..20.0) {
        let x = y - s;
        let lm = 0.5 * (l0 + l1);
        for f in [delta, theta] {
            let at = |l| f(&ParamTriple::new(s, t, l).unwrap(), x).unwrap();
            let (a, b, m) = (at(l0), at(l1), at(lm));
            let scale = a.abs() + b.abs() + m.abs();
            prop_assert!((m - 0.5 * (a + b)).abs() <= 1e-12 * scale, "{a} {b} {m}");
        }
    }

    #[test]
    fn polygamma_recurrence(k in 0usize..10, x in 1e-3f64..1e3) {
        // ψ^(k)(x+1) − ψ^(k)(x) = (−1)^k k! / x^{k+1}
        let lhs = polygamma(k, x + 1.0).unwrap().value - polygamma(k, x).unwrap().value;
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = sign * fact / x.powi(k as i32 + 1);
        let scale = polygamma(k, x).unwrap().value.abs() + rhs.abs();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "k={k} x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn polygamma_matches_oracle(k in 0usize..=12, x in 1e-2f64..1e2) {
        let fast = polygamma(k, x).unwrap();
        let slow = polygamma_oracle(k, x).unwrap();
        let tol = fast.abs_err_est + slow.abs_err_est + 100.0 * f64::EPSILON * (1.0 + fast.value.abs());
        prop_assert!((fast.value - slow.value).abs() <= tol, "k={k} x={x}");
    }

    #[test]
    fn qi_sandwich_holds(k in 1usize..=8, x in 1e-3f64..1e4) {
        let v = check_qi_psi_bounds(k, x).unwrap();
        prop_assert!(v.holds && v.worst_margin > 0.0, "k={k} x={x}: {}", v.worst_margin);
    }

    #[test]
    fn kernel_between_one_and_inverse_gap(h in 0.05f64..4.0, u in 1e-3f64..60.0, du in 0.01f64..5.0) {
        prop_assume!(h != 1.0);
        let g = kernel_g(0.0, h, u).unwrap();
        let (lo, hi) = if h < 1.0 { (1.0, 1.0 / h) } else { (1.0 / h, 1.0) };
        prop_assert!(g >= lo * (1.0 - 1e-15) && g <= hi * (1.0 + 1e-15), "h={h} u={u}: {g}");
        // increasing for gaps below one, decreasing above
        let g2 = kernel_g(0.0, h, u + du).unwrap();
        if h < 1.0 {
            prop_assert!(g2 >= g * (1.0 - 1e-15));
        } else {
            prop_assert!(g2 <= g * (1.0 + 1e-15));
        }
    }

    #[test]
    fn theta_sign_follows_capital_lambda((s, t) in st(), lambda in 0.0f64..3.0, y in 0.05f64..30.0) {
        let x = y - s;
        prop_assume!((t - s - 1.0).abs() > 1e-3);
        let cap = capital_lambda(s, t, x).unwrap();
        prop_assume!((cap - lambda).abs() > 1e-6 * cap.abs());
        let th = theta(&ParamTriple::new(s, t, lambda).unwrap(), x).unwrap();
        prop_assert_eq!(th > 0.0, cap > lambda, "Λ={} λ={} θ={}", cap, lambda, th);
    }

    #[test]
    fn divided_difference_confluent_limit(k in 0usize..6, s in -0.5f64..2.0, y in 0.1f64..20.0) {
        let x = y - s;
        // a gap-h quotient equals ψ^(k+1) at the midpoint up to O(h²)
        let h = 1e-6;
        let mid = polygamma(k + 1, x + s + 0.5 * h).unwrap().value;
        let near = divided_diff_psi(k, s, s + h, x).unwrap();
        prop_assert!((near - mid).abs() <= 1e-9 * mid.abs(), "{near} vs {mid}");
        let confluent = divided_diff_psi(k, s, s, x).unwrap();
        prop_assert_eq!(confluent, polygamma(k + 1, x + s).unwrap().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cm_verify_symmetric_in_s_t((s, t) in st(), lambda in 0.0f64..3.0) {
        let grid = GridSpec::new(1e-2, 100.0, 60, Spacing::Log);
        let p = ParamTriple::new(s, t, lambda).unwrap();
        let q = ParamTriple::new(t, s, lambda).unwrap();
        for family in [Family::Delta, Family::Theta] {
            let a = cm_verify(family, &p, 4, &grid);
            let b = cm_verify(family, &q, 4, &grid);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.verdict, b.verdict);
                    prop_assert_eq!(a.predicted, b.predicted);
                }
                (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
            }
        }
    }

    #[test]
    fn predicate_is_monotone_in_lambda((s, t) in st(), l0 in 0.0f64..3.0, dl in 0.0f64..2.0) {
        // CM for some λ stays CM for every smaller λ, and negCM persists upward
        let lo = theorem1_predicate(&ParamTriple::new(s, t, l0).unwrap());
        let hi = theorem1_predicate(&ParamTriple::new(s, t, l0 + dl).unwrap());
        if hi.delta_cm == Tri::Yes {
            prop_assert_eq!(lo.delta_cm, Tri::Yes);
        }
        if lo.neg_delta_cm == Tri::Yes {
            prop_assert_eq!(hi.neg_delta_cm, Tri::Yes);
        }
    }
}
