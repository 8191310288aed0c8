//! The triangular waves `c_k`, `s_k`, the kernels `J_m` and the extremal
//! functions `I^{m-1} c_k`, built exactly as [`CirclePiecewisePoly`]s.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::piecewise::CirclePiecewisePoly;
use crate::poly::{int, rat, RationalPoly};

fn check_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// Triangular cosine `c_k(x) = c(kx)/k` with `c(x) = π/2 − d(x, 0)`.
///
/// Peaks `π/(2k)` at even multiples of `π/k`, troughs at odd ones, slopes
/// `±1` in between. The breakpoints are the `2k` corners `jπ/k`.
pub fn make_c(k: usize) -> Result<CirclePiecewisePoly> {
    check_positive("k", k)?;
    let ki = k as i64;
    let half_height = rat(1, 2 * ki);
    let mut breakpoints = Vec::with_capacity(2 * k);
    let mut pieces = Vec::with_capacity(2 * k);
    for j in (1 - ki)..=ki {
        breakpoints.push(rat(j, ki));
        // descending from a peak at even j, ascending from a trough at odd j
        let piece = if j.rem_euclid(2) == 0 {
            RationalPoly::new(vec![half_height.clone(), int(-1)])
        } else {
            RationalPoly::new(vec![-half_height.clone(), int(1)])
        };
        pieces.push(piece);
    }
    CirclePiecewisePoly::new(1, breakpoints, pieces, 0)
}

/// Triangular sine `s_k(x) = s(kx)/k` with `s(x) = c(π/2 − x)`, so that
/// `s_k(x) = c_k(π/(2k) − x)`.
pub fn make_s(k: usize) -> Result<CirclePiecewisePoly> {
    let c = make_c(k)?;
    Ok(c.reflect().shift(&-rat(1, 2 * k as i64)))
}

/// The square wave `c_k'` (values `±1`, right-continuous).
pub fn make_c_prime(k: usize) -> Result<CirclePiecewisePoly> {
    Ok(make_c(k)?.derivative())
}

/// The square wave `s_k'`.
pub fn make_s_prime(k: usize) -> Result<CirclePiecewisePoly> {
    Ok(make_s(k)?.derivative())
}

/// Sawtooth `J_1(x) = x` on `(−π, π)` with `J_1(π) = 0`.
pub fn make_j1() -> CirclePiecewisePoly {
    // one arc starting at t = 1; u ∈ [0, 2) covers x = π(u − 1)
    let piece = RationalPoly::new(vec![int(-1), int(1)]);
    CirclePiecewisePoly::new(1, vec![BigRational::one()], vec![piece], -1)
        .and_then(|f| f.with_point_value(&BigRational::one(), BigRational::zero()))
        .expect("sawtooth layout is valid")
}

/// `J_m = I^{m-1} J_1`; its parity equals the parity of `m`.
pub fn make_j(m: usize) -> Result<CirclePiecewisePoly> {
    check_positive("m", m)?;
    make_j1().iterated_antiderivative(m - 1)
}

/// `K` with `J_m(πt) = π^m · K(t)` for `t ∈ [−1, 1]` (one-sided limits at
/// the ends).
pub fn kernel_polynomial(m: usize) -> Result<RationalPoly> {
    let j = make_j(m)?;
    Ok(j.pieces()[0].shift(&BigRational::one()))
}

/// The extremal function `I^m c_k' = I^{m-1} c_k`.
pub fn make_extremal(k: usize, m: usize) -> Result<CirclePiecewisePoly> {
    check_positive("m", m)?;
    make_c(k)?.iterated_antiderivative(m - 1)
}

/// `(π/2k)^m`, the scale factor of the extremal sup-norm, as a mantissa of `π^m`.
pub(crate) fn half_period_power(k: usize, m: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2 * k).pow(m as u32))
}
