//! Exact sharp constants.
//!
//! The polynomials `P_m` on `[0, 1]` are built by alternately integrating
//! from the left and from the right:
//!
//! ```text
//! P_0 = 1,   P_{m+1}(x) = ∫_0^x P_m   (m even),   ∫_x^1 P_m   (m odd),
//! ```
//!
//! and `B_m` is `P_m(0)` for even `m`, `P_m(1)` for odd `m`. Then
//! `D_{k,m} = (π/2k)^m · B_m` and `C_{k,m} = 1/D_{k,m}`, and `B_m · m!` are
//! the Euler up/down numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{rational_to_f64, RationalPoly};
use crate::scaled::PiScaled;
use crate::waves::{half_period_power, make_c_prime, make_extremal, make_j, make_s_prime};

/// `P_0, …, P_m`.
pub fn poly_p_sequence(m: usize) -> Vec<RationalPoly> {
    let mut out = Vec::with_capacity(m + 1);
    let mut p = RationalPoly::one();
    out.push(p.clone());
    for step in 0..m {
        let prim = p.antiderivative();
        p = if step % 2 == 0 {
            prim
        } else {
            // ∫_x^1 P = F(1) − F(x)
            &RationalPoly::constant(prim.eval(&BigRational::one())) - &prim
        };
        out.push(p.clone());
    }
    out
}

pub fn poly_p(m: usize) -> RationalPoly {
    poly_p_sequence(m).pop().expect("sequence is nonempty")
}

/// `B_m`.
pub fn b_constant(m: usize) -> BigRational {
    let p = poly_p(m);
    if m.is_multiple_of(2) {
        p.eval(&BigRational::zero())
    } else {
        p.eval(&BigRational::one())
    }
}

pub fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `B_m · m!`.
pub fn euler_number(m: usize) -> BigInt {
    let scaled = b_constant(m) * BigRational::from_integer(factorial(m));
    debug_assert!(scaled.is_integer());
    scaled.to_integer()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsRecord {
    pub k: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_fraction")]
    pub b_m: BigRational,
    #[serde(serialize_with = "ser_bigint")]
    pub euler_number: BigInt,
    /// `C_{k,m} = (2k)^m / B_m · π^{-m}`.
    pub c_exact: PiScaled,
    /// `D_{k,m} = B_m / (2k)^m · π^m`.
    pub d_exact: PiScaled,
    pub c_km: f64,
    pub d_km: f64,
}

fn ser_fraction<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_bigint<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// The record for `(k, m)`, both at least 1.
pub fn constants(k: usize, m: usize) -> Result<ConstantsRecord> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("k and m must be at least 1 (got k={k}, m={m})")));
    }
    let b_m = b_constant(m);
    let d_mantissa = &b_m * half_period_power(k, m);
    let c_mantissa = d_mantissa.recip();
    let c_exact = PiScaled::exact(c_mantissa, -(m as i32));
    let d_exact = PiScaled::exact(d_mantissa, m as i32);
    Ok(ConstantsRecord {
        k,
        m,
        euler_number: euler_number(m),
        c_km: c_exact.to_f64(),
        d_km: d_exact.to_f64(),
        b_m,
        c_exact,
        d_exact,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub k: usize,
    pub m: usize,
    pub tol: f64,
    /// `‖I^{m-1} c_k‖_∞` from the exact piecewise extremal.
    pub d_sup_norm: PiScaled,
    /// `(π/2k)^m · B_m`.
    pub d_recursion: PiScaled,
    /// `|⟨J_m, c_k'⟩|` for odd `m`, `|⟨J_m, s_k'⟩|` for even `m`.
    pub d_resonance: PiScaled,
    pub sup_norm_rel_error: f64,
    pub resonance_rel_error: f64,
    /// All three values are equal as exact rationals times `π^m`.
    pub exact_agreement: bool,
    pub passed: bool,
    pub message: Option<String>,
}

fn rel_error(a: &PiScaled, b: &PiScaled) -> f64 {
    if let (Some(x), Some(y)) = (a.as_exact(), b.as_exact()) {
        if a.pi_power == b.pi_power {
            if y.is_zero() {
                return if x.is_zero() { 0.0 } else { f64::INFINITY };
            }
            return rational_to_f64(&((x - y) / y).abs());
        }
    }
    let (x, y) = (a.to_f64(), b.to_f64());
    ((x - y) / y).abs()
}

/// Computes `D_{k,m}` from the extremal function, from the recursion, and
/// from the resonance inner product, and checks they agree to `tol`
/// (relative).
pub fn cross_validate(k: usize, m: usize, tol: f64) -> Result<CrossValidation> {
    let record = constants(k, m)?;
    let d_sup_norm = make_extremal(k, m)?.sup_norm_exact();
    let kernel = make_j(m)?;
    let square = if m % 2 == 1 { make_c_prime(k)? } else { make_s_prime(k)? };
    let ip = kernel.inner_product(&square);
    let d_resonance = match ip.as_exact() {
        Some(r) => PiScaled::exact(r.abs(), ip.pi_power),
        None => PiScaled::approx(ip.mantissa.to_f64().abs(), ip.pi_power),
    };
    let d_recursion = record.d_exact;
    let sup_norm_rel_error = rel_error(&d_sup_norm, &d_recursion);
    let resonance_rel_error = rel_error(&d_resonance, &d_recursion);
    let exact_agreement = d_sup_norm == d_recursion && d_resonance == d_recursion;
    let passed = sup_norm_rel_error <= tol && resonance_rel_error <= tol;
    let message = (!passed).then(|| {
        format!(
            "D_{{{k},{m}}} mismatch: sup-norm {} vs recursion {} vs resonance {}",
            d_sup_norm.to_f64(),
            d_recursion.to_f64(),
            d_resonance.to_f64()
        )
    });
    Ok(CrossValidation {
        k,
        m,
        tol,
        d_sup_norm,
        d_recursion,
        d_resonance,
        sup_norm_rel_error,
        resonance_rel_error,
        exact_agreement,
        passed,
        message,
    })
}
