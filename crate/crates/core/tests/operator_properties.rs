use std::f64::consts::PI;

use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use reverse_bernstein::constants::constants;
use reverse_bernstein::fourier::normalize_angle;
use reverse_bernstein::numeric::adaptive_simpson;
use reverse_bernstein::verify::{check_reverse_bernstein, random_tail_sample, truncated_extremal_trial};
use reverse_bernstein::waves::{make_extremal, make_j};
use reverse_bernstein::{Error, TrigSeries};

fn dyadic_series(band: usize, raw: &[(i32, i32)]) -> TrigSeries {
    let positive: Vec<Complex64> =
        raw.iter().take(band).map(|&(a, b)| Complex64::new(a as f64 / 1048576.0, b as f64 / 1048576.0)).collect();
    TrigSeries::real_from_nonnegative(0.0, &positive)
}

fn coefficients() -> impl Strategy<Value = Vec<(i32, i32)>> {
    prop::collection::vec((-(1 << 30)..(1 << 30), -(1 << 30)..(1 << 30)), 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antiderivative_inverts_derivative_exactly(raw in coefficients()) {
        let f = dyadic_series(raw.len(), &raw);
        prop_assert_eq!(f.derivative().antiderivative().unwrap(), f.clone());
        // the other order divides first, so it is exact only up to rounding
        let back = f.antiderivative().unwrap().derivative();
        for j in 1..=f.band() as i64 {
            prop_assert!((back.coeff(j) - f.coeff(j)).norm() <= 2.0 * f64::EPSILON * f.coeff(j).norm());
        }
    }

    #[test]
    fn antiderivative_inverts_derivative_to_rounding(seed in any::<u64>(), band in 1usize..200) {
        let f = random_tail_sample(1, band, seed).unwrap();
        let back = f.derivative().antiderivative().unwrap();
        for j in 1..=band as i64 {
            let (a, b) = (f.coeff(j), back.coeff(j));
            prop_assert!((a - b).norm() <= 2.0 * f64::EPSILON * a.norm());
        }
    }

    #[test]
    fn antiderivative_is_anti_self_adjoint(seed in any::<u64>(), band in 1usize..64) {
        let a = random_tail_sample(1, band, seed).unwrap();
        let b = random_tail_sample(1, band, seed.wrapping_add(1)).unwrap();
        let lhs = a.antiderivative().unwrap().inner_product(&b);
        let rhs = a.inner_product(&b.antiderivative().unwrap());
        prop_assert!((lhs + rhs).norm() <= 1e-12);
    }

    #[test]
    fn evaluation_is_translation_covariant(seed in any::<u64>(), x in -PI..PI, x0 in -PI..PI) {
        let f = random_tail_sample(1, 12, seed).unwrap();
        let g = f.shift(x0);
        prop_assert!((g.evaluate(x) - f.evaluate(normalize_angle(x + x0))).norm() <= 1e-11);
    }

    #[test]
    fn sup_estimate_is_bracketed(seed in any::<u64>(), band in 1usize..128) {
        let f = random_tail_sample(1, band, seed).unwrap();
        let est = f.sup_norm_estimate(1e-7);
        prop_assert!(est <= f.weighted_abs_sum(0) * (1.0 + 1e-12));
        // the mean square never exceeds the square of the maximum
        let l2 = f.inner_product(&f).re.sqrt();
        prop_assert!(est >= l2 * (1.0 - 1e-12));
    }

    #[test]
    fn random_samples_satisfy_the_inequality(seed in any::<u64>(), k in 1usize..6, m in 1usize..5, extra in 0usize..40) {
        let f = random_tail_sample(k, k + extra, seed).unwrap();
        let r = check_reverse_bernstein(&f, k, m, 1e-6).unwrap();
        prop_assert!(r.passed, "margin {}", r.margin);
    }
}

#[test]
fn primitive_at_pi_is_a_kernel_pairing() {
    for seed in 0..20 {
        let phi = random_tail_sample(1, 16, seed).unwrap();
        for m in 1..=5 {
            let at_pi = phi.iterated_antiderivative(m).unwrap().evaluate(PI);
            // quadrature of φ·J_m against the exact kernel
            let kernel = make_j(m).unwrap();
            let integrand = |x: f64| phi.evaluate_real(x) * kernel.evaluate(x);
            let pairing = adaptive_simpson(&integrand, -PI, PI, 1e-12) / (2.0 * PI);
            let err = (at_pi.norm() - pairing.abs()).abs();
            assert!(err < 1e-10, "seed {seed}, m {m}: {} vs {pairing}", at_pi.norm());
        }
    }
}

#[test]
fn low_frequencies_are_rejected() {
    let f = TrigSeries::from_terms(&[(2, Complex64::new(1.0, 0.0)), (5, Complex64::new(1.0, 0.0))]);
    assert!(matches!(check_reverse_bernstein(&f, 3, 1, 1e-6), Err(Error::NotInTail { k: 3, frequency: 2 })));
    assert!(matches!(TrigSeries::constant(1.0).antiderivative(), Err(Error::NonZeroMean { .. })));
}

#[test]
fn truncated_extremals_approach_the_extremal_norm() {
    for (k, m) in [(1, 2), (2, 2), (1, 3), (3, 3)] {
        let band = 64 * k;
        let r = truncated_extremal_trial(k, m, band, 1e-6).unwrap();
        let c = constants(k, m).unwrap().c_km;
        assert!(r.passed);
        assert_relative_eq!(c * r.f_sup, 1.0, max_relative = 1e-3);
        let exact = make_extremal(k, m).unwrap().sup_norm_exact().to_f64();
        assert_relative_eq!(r.f_sup, exact, max_relative = 1e-3);
    }
}

#[test]
fn truncated_square_waves_show_the_gibbs_overshoot() {
    // S_N c_k' overshoots ‖c_k'‖ = 1 by about 18% however large N is
    let r = truncated_extremal_trial(1, 2, 64, 1e-6).unwrap();
    assert!(r.fm_sup > 1.17 && r.fm_sup < 1.19, "{}", r.fm_sup);
    assert!(r.margin > 0.15);
}
