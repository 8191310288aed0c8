// oracle values are kept as printed by the external tool
#![allow(clippy::approx_constant)]

use std::f64::consts::PI;

use reverse_bernstein::constants::constants;
use reverse_bernstein::interpolation::{
    interpolate_j, lagrange_even, residual_l1, verify_zero_structure, NodeSet, Parity, Residual,
};
use reverse_bernstein::verify::random_tail_sample;
use reverse_bernstein::waves::{make_c_prime, make_s_prime};

/// `‖J_m - p‖₁` from an independent linear-solve interpolation and adaptive
/// Gauss-Kronrod quadrature (scipy).
const L1_ORACLE: [(usize, usize, f64); 9] = [
    (1, 1, 1.5707963267948966),
    (1, 2, 1.2337005501361697),
    (2, 2, 0.3084251375340423),
    (2, 3, 0.16149102437656138),
    (3, 1, 0.5235987755982985),
    (3, 2, 0.13707783890401887),
    (3, 4, 0.015658611598830127),
    (4, 3, 0.020186378047070075),
    (5, 5, 0.0004080262463803509),
];

fn sine_coefficient(p: &reverse_bernstein::TrigSeries, j: i64) -> f64 {
    -2.0 * p.coeff(j).im
}

fn cosine_coefficient(p: &reverse_bernstein::TrigSeries, j: i64) -> f64 {
    if j == 0 {
        p.coeff(0).re
    } else {
        2.0 * p.coeff(j).re
    }
}

#[test]
fn residual_l1_matches_oracle() {
    for (k, m, expected) in L1_ORACLE {
        let got = residual_l1(k, m).unwrap();
        assert!((got - expected).abs() < 1e-9, "({k},{m}): {got} vs {expected}");
    }
}

#[test]
fn interpolant_coefficients_match_oracle() {
    let p = interpolate_j(2, 1).unwrap();
    assert!((sine_coefficient(&p, 1) - PI / 2.0).abs() < 1e-13);
    let p = interpolate_j(2, 3).unwrap();
    assert!((sine_coefficient(&p, 1) + 1.9378922925187385).abs() < 1e-13);
    assert!((sine_coefficient(&p, 1) + PI.powi(3) / 16.0).abs() < 1e-13);
    let p = interpolate_j(3, 1).unwrap();
    assert!((sine_coefficient(&p, 1) - 1.8137993642342176).abs() < 1e-13);
    assert!((sine_coefficient(&p, 2) + 0.6045997880780726).abs() < 1e-13);
    let p = interpolate_j(2, 2).unwrap();
    assert!((cosine_coefficient(&p, 0) + 0.10280837917801375).abs() < 1e-13);
    assert!((cosine_coefficient(&p, 1) + 1.7447160499097198).abs() < 1e-13);
}

#[test]
fn interpolants_have_degree_below_k_and_the_kernel_parity() {
    for k in 1..=8 {
        for m in 1..=6 {
            let p = interpolate_j(k, m).unwrap();
            assert!(p.band() < k.max(1), "({k},{m}) band {}", p.band());
            for i in 0..50 {
                let x = -PI + 2.0 * PI * i as f64 / 50.0;
                let (a, b) = (p.evaluate_real(x), p.evaluate_real(-x));
                let defect = if m % 2 == 1 { a + b } else { a - b };
                assert!(defect.abs() < 1e-12);
            }
        }
    }
}

#[test]
fn zero_structure_holds_beyond_the_acceptance_range() {
    for k in 1..=12 {
        for m in 1..=7 {
            let r = verify_zero_structure(k, m).unwrap();
            assert!(r.passed, "({k},{m}): {:?}", r.failures);
            assert_eq!(r.zero_count, 2 * k);
        }
    }
}

#[test]
fn sign_pattern_follows_the_square_wave_on_a_fine_grid() {
    for k in 1..=5 {
        for m in 1..=5 {
            let residual = Residual::for_kernel(k, m).unwrap();
            let square = if m % 2 == 1 { make_c_prime(k) } else { make_s_prime(k) }.unwrap();
            let zeros = NodeSet::for_kernel(k, m).unwrap().zero_angles();
            let mut relative = 0.0f64;
            for i in 0..4000 {
                let x = -PI + 2.0 * PI * (i as f64 + 0.37) / 4000.0;
                if zeros.iter().any(|z| (x - z).abs() < 1e-3 || (x - z).abs() > 2.0 * PI - 1e-3) {
                    continue;
                }
                let s = residual.evaluate(x).signum() * square.evaluate(x).signum();
                if relative == 0.0 {
                    relative = s;
                }
                assert_eq!(s, relative, "({k},{m}) at {x}");
            }
        }
    }
}

#[test]
fn perturbing_a_node_value_changes_the_interpolant() {
    let set = NodeSet::new(4, Parity::Even).unwrap();
    let nodes = set.node_angles();
    let values = vec![0.3, -1.2, 0.7, 2.0];
    let base = lagrange_even(&nodes, &values).unwrap();
    for i in 0..nodes.len() {
        let mut bumped = values.clone();
        bumped[i] += 1e-3;
        let other = lagrange_even(&nodes, &bumped).unwrap();
        assert!((other.evaluate_real(nodes[i]) - base.evaluate_real(nodes[i]) - 1e-3).abs() < 1e-12);
        assert!(base.sub(&other).weighted_abs_sum(0) > 1e-4);
    }
}

#[test]
fn hoelder_chain_and_operator_bound() {
    for k in 1..=4 {
        for m in 1..=4 {
            let l1 = residual_l1(k, m).unwrap();
            let d = constants(k, m).unwrap().d_km;
            for seed in 0..20 {
                let phi = random_tail_sample(k, 4 * k, seed).unwrap();
                let phi_sup = phi.sup_norm_estimate(1e-9);
                let lifted = phi.iterated_antiderivative(m).unwrap().sup_norm_estimate(1e-9);
                assert!(lifted <= phi_sup * l1 + 1e-9, "({k},{m}) seed {seed}");
                assert!(lifted <= phi_sup * d + 1e-9);
            }
        }
    }
}
