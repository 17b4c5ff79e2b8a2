use std::f64::consts::PI;

use courant_core::bounds::{beta_s, bl_g_threshold, f_omega, fk_necessary, g_omega, safarov_constants};
use courant_core::geometry::{collar_area, invariants_of, CurvatureConvention, DomainSpec};
use courant_core::specfun::bessel_j;
use courant_core::spectra::{counting_exact, counting_lower_rectangle, explicit_spectrum, lambda2, Lambda2Mode};
use proptest::prelude::*;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs()
}

fn c2_domain() -> impl Strategy<Value = DomainSpec> {
    prop_oneof![
        (0.2f64..5.0).prop_map(|r| DomainSpec::Disk { radius: r }),
        (0.1f64..0.9, 0.5f64..3.0).prop_map(|(q, r)| DomainSpec::Annulus { inner: q * r, outer: r }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bessel_three_term_recurrence(nu in 1.0f64..9.0, x in 0.5f64..99.0) {
        let lhs = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
        let rhs = 2.0 * nu / x * bessel_j(nu, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn rectangle_bound_strictly_below_count(a in 0.5f64..3.0, b in 0.5f64..3.0, t in 0.0f64..1.0) {
        let cb = counting_lower_rectangle(a, b).unwrap();
        let lam = cb.validity_from * (2000.0 / cb.validity_from).powf(t);
        let n = counting_exact(&DomainSpec::Rectangle { a, b }, lam).unwrap() as f64;
        prop_assert!(cb.evaluate(lam).unwrap() < n);
    }

    #[test]
    fn rescaled_bound_is_bound_at_scaled_lambda(s in 0.3f64..3.0, lam in 1.0f64..1e4) {
        let cb = counting_lower_rectangle(1.0, 2.0).unwrap();
        let r = cb.rescaled(s);
        prop_assume!(lam >= r.validity_from);
        prop_assert!(rel_close(r.evaluate(lam).unwrap(), cb.evaluate(s * s * lam).unwrap(), 1e-10)
            || (r.evaluate(lam).unwrap() - cb.evaluate(s * s * lam).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn spectrum_and_counting_agree(a in 0.5f64..2.0, b in 0.5f64..2.0, lam in 5.0f64..500.0) {
        let d = DomainSpec::Rectangle { a, b };
        let list = explicit_spectrum(&d, lam).unwrap();
        prop_assert!(list.values.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(list.values.len() as u64, counting_exact(&d, lam).unwrap());
    }

    #[test]
    fn fk_condition_monotone_in_lambda(n in 1usize..200, lam in 1.0f64..1e4, k in 1.0f64..3.0) {
        if fk_necessary(n, lam, PI * PI, 2).unwrap() {
            prop_assert!(fk_necessary(n, lam * k, PI * PI, 2).unwrap());
        }
    }

    #[test]
    fn collar_area_monotone(domain in c2_domain(), e1 in 0.001f64..2.0, k in 1.0f64..3.0) {
        let a1 = collar_area(&domain, e1).unwrap();
        let a2 = collar_area(&domain, e1 * k).unwrap();
        prop_assert!(a1 <= a2 + 1e-12);
        prop_assert!(a2 <= invariants_of(&domain).unwrap().area * (1.0 + 1e-12));
    }

    #[test]
    fn thresholds_are_dilation_invariant(domain in c2_domain(), t in 0.3f64..4.0) {
        let go = |d: &DomainSpec| {
            let inv = invariants_of(d).unwrap();
            let l2 = lambda2(d, Lambda2Mode::FaberKrahn).unwrap();
            let c = safarov_constants(&inv, l2, 5.0, CurvatureConvention::LiteralAbs).unwrap();
            (inv.area * beta_s(&inv, &c).threshold, inv.area * bl_g_threshold(&inv, l2).unwrap().threshold)
        };
        let (s0, b0) = go(&domain);
        let (s1, b1) = go(&domain.scaled(t));
        prop_assert!(rel_close(s1, s0, 1e-8), "{} vs {}", s1, s0);
        prop_assert!(rel_close(b1, b0, 1e-8), "{} vs {}", b1, b0);
    }

    #[test]
    fn beta_s_monotone_in_remainder_constants(domain in c2_domain(), k3 in 1.0f64..3.0, k4 in 1.0f64..3.0) {
        let inv = invariants_of(&domain).unwrap();
        let l2 = lambda2(&domain, Lambda2Mode::FaberKrahn).unwrap();
        let c = safarov_constants(&inv, l2, 5.0, CurvatureConvention::Signed).unwrap();
        let mut bigger = c;
        bigger.beta3 *= k3;
        bigger.beta4 *= k4;
        prop_assert!(beta_s(&inv, &bigger).threshold >= beta_s(&inv, &c).threshold);
    }

    #[test]
    fn largest_zero_certified_on_grid(domain in c2_domain()) {
        let inv = invariants_of(&domain).unwrap();
        let l2 = lambda2(&domain, Lambda2Mode::FaberKrahn).unwrap();
        let c = safarov_constants(&inv, l2, 5.0, CurvatureConvention::LiteralAbs).unwrap();
        let s = beta_s(&inv, &c).threshold;
        let b = bl_g_threshold(&inv, l2).unwrap().threshold;
        for k in 0..1000 {
            let r = 1.01 * 1000f64.powf(k as f64 / 999.0);
            prop_assert!(f_omega(&inv, &c, s * r) > 0.0);
            prop_assert!(g_omega(&inv, b * r) > 0.0);
        }
    }
}
