//! Finite trigonometric series on the circle `ℝ/2πℤ`.
//!
//! A [`TrigSeries`] stores the complex Fourier coefficients `c_j` for
//! `-band ≤ j ≤ band` in a dense array. Inner products and norms use the
//! normalised measure `dx/2π`, so `e^{ijx}` is an orthonormal basis.
//!
//! Calculus is spectral: the derivative multiplies `c_j` by `ij` and the
//! zero-average antiderivative divides by it.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{adaptive_simpson, bisect, maximize_brent};

/// Grid oversampling factor for sup and L¹ estimates.
pub const GRID_FACTOR: usize = 16;

/// Default absolute error target of [`TrigSeries::l1_norm_estimate`].
pub const L1_TOLERANCE: f64 = 1e-10;

/// Grid maxima below this fraction of the grid maximum are not refined.
///
/// With `16·(band+1)` samples the grid underestimates any peak of `|s|` by
/// less than 8%, so no discarded candidate can hold the true maximum.
const REFINE_FRACTION: f64 = 0.9;

/// Reduces an angle to `(-π, π]`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = (x + PI).rem_euclid(2.0 * PI) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrigSeries {
    band: usize,
    /// `coeffs[j + band]` holds `c_j`.
    coeffs: Vec<Complex64>,
    real: bool,
}

impl TrigSeries {
    pub fn zero(band: usize) -> Self {
        Self { band, coeffs: vec![Complex64::new(0.0, 0.0); 2 * band + 1], real: true }
    }

    pub fn constant(c: f64) -> Self {
        Self { band: 0, coeffs: vec![Complex64::new(c, 0.0)], real: true }
    }

    /// `e^{ijx}`.
    pub fn exponential(j: i64) -> Self {
        Self::from_terms(&[(j, Complex64::new(1.0, 0.0))])
    }

    /// Builds a series from a dense coefficient array of length `2·band+1`.
    /// The real tag is set when the array is exactly conjugate-symmetric.
    pub fn new(band: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * band + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for band {band}, got {}",
                2 * band + 1,
                coeffs.len()
            )));
        }
        let mut s = Self { band, coeffs, real: false };
        s.real = s.is_conjugate_symmetric();
        Ok(s)
    }

    /// Builds a series from `(frequency, coefficient)` pairs; repeated
    /// frequencies are summed.
    pub fn from_terms(terms: &[(i64, Complex64)]) -> Self {
        let band = terms.iter().map(|(j, _)| j.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * band + 1];
        for &(j, c) in terms {
            coeffs[(j + band as i64) as usize] += c;
        }
        let mut s = Self { band, coeffs, real: false };
        s.real = s.is_conjugate_symmetric();
        s
    }

    /// A real series from `c_0` and `c_1, …, c_band`; negative frequencies are
    /// filled in by conjugation.
    pub fn real_from_nonnegative(mean: f64, positive: &[Complex64]) -> Self {
        let band = positive.len();
        Self::from_fn(band, true, |j| if j == 0 { Complex64::new(mean, 0.0) } else { positive[j as usize - 1] })
    }

    /// For real series only `j ≥ 0` is evaluated and mirrored, so the
    /// conjugate symmetry holds bit for bit.
    fn from_fn(band: usize, real: bool, f: impl Fn(i64) -> Complex64) -> Self {
        let b = band as i64;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * band + 1];
        if real {
            for j in 0..=b {
                let mut c = f(j);
                if j == 0 {
                    c.im = 0.0;
                }
                coeffs[(j + b) as usize] = c;
                coeffs[(b - j) as usize] = c.conj();
            }
        } else {
            for j in -b..=b {
                coeffs[(j + b) as usize] = f(j);
            }
        }
        Self { band, coeffs, real }
    }

    fn is_conjugate_symmetric(&self) -> bool {
        let b = self.band as i64;
        (0..=b).all(|j| self.coeff(-j) == self.coeff(j).conj())
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn coeff(&self, j: i64) -> Complex64 {
        if j.unsigned_abs() as usize > self.band {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(j + self.band as i64) as usize]
        }
    }

    /// `(j, c_j)` for every stored frequency.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let b = self.band as i64;
        self.coeffs.iter().enumerate().map(move |(i, c)| (i as i64 - b, *c))
    }

    pub fn mean(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Smallest `|j|` with a nonzero coefficient.
    pub fn lowest_frequency(&self) -> Option<usize> {
        (0..=self.band as i64)
            .find(|&j| self.coeff(j) != Complex64::new(0.0, 0.0) || self.coeff(-j) != Complex64::new(0.0, 0.0))
            .map(|j| j as usize)
    }

    /// Membership in the tail space: every `c_j` with `|j| < k` is exactly zero.
    pub fn check_tail(&self, k: usize) -> Result<()> {
        match self.lowest_frequency() {
            Some(j) if j < k => Err(Error::NotInTail { k, frequency: j as i64 }),
            _ => Ok(()),
        }
    }

    pub fn is_in_tail(&self, k: usize) -> bool {
        self.check_tail(k).is_ok()
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        let x = normalize_angle(x);
        let w = Complex64::from_polar(1.0, x);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * w + c;
        }
        acc * Complex64::from_polar(1.0, -(self.band as f64) * x)
    }

    /// Real part of [`evaluate`](Self::evaluate).
    pub fn evaluate_real(&self, x: f64) -> f64 {
        self.evaluate(x).re
    }

    pub fn derivative(&self) -> Self {
        Self::from_fn(self.band, self.real, |j| {
            let (c, j) = (self.coeff(j), j as f64);
            Complex64::new(-j * c.im, j * c.re)
        })
    }

    pub fn nth_derivative(&self, m: usize) -> Self {
        (0..m).fold(self.clone(), |s, _| s.derivative())
    }

    /// The zero-average primitive: `c_j ↦ c_j / (ij)`.
    pub fn antiderivative(&self) -> Result<Self> {
        let mean = self.mean();
        if mean != Complex64::new(0.0, 0.0) {
            return Err(Error::NonZeroMean { mean: mean.norm() });
        }
        Ok(Self::from_fn(self.band, self.real, |j| {
            if j == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                let (c, j) = (self.coeff(j), j as f64);
                Complex64::new(c.im / j, -c.re / j)
            }
        }))
    }

    /// `m` applications of [`antiderivative`](Self::antiderivative).
    pub fn iterated_antiderivative(&self, m: usize) -> Result<Self> {
        (0..m).try_fold(self.clone(), |s, _| s.antiderivative())
    }

    /// `⟨a, b⟩ = Σ a_j · conj(b_j)`.
    pub fn inner_product(&self, other: &Self) -> Complex64 {
        let b = self.band.min(other.band) as i64;
        (-b..=b).map(|j| self.coeff(j) * other.coeff(j).conj()).sum()
    }

    /// Zeroes every coefficient with `|j| < k`.
    pub fn project_tail(&self, k: usize) -> Self {
        let k = k as i64;
        Self::from_fn(self.band, self.real, |j| if j.abs() < k { Complex64::new(0.0, 0.0) } else { self.coeff(j) })
    }

    /// `x ↦ s(-x)`.
    pub fn reflect(&self) -> Self {
        Self::from_fn(self.band, self.real, |j| self.coeff(-j))
    }

    /// `x ↦ s(x + x0)`.
    pub fn shift(&self, x0: f64) -> Self {
        Self::from_fn(self.band, self.real, |j| self.coeff(j) * Complex64::from_polar(1.0, j as f64 * x0))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_fn(self.band, self.real, |j| self.coeff(j) * factor)
    }

    pub fn add(&self, other: &Self) -> Self {
        let band = self.band.max(other.band);
        Self::from_fn(band, self.real && other.real, |j| self.coeff(j) + other.coeff(j))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Drops (or zero-pads) coefficients to the given band.
    pub fn with_band(&self, band: usize) -> Self {
        Self::from_fn(band, self.real, |j| self.coeff(j))
    }

    /// `Σ |j|^power · |c_j|`, a bound for `‖s^(power)‖_∞`.
    pub fn weighted_abs_sum(&self, power: i32) -> f64 {
        self.terms().map(|(j, c)| (j.abs() as f64).powi(power) * c.norm()).sum()
    }

    /// Largest deviation from conjugate symmetry, `max |c_{-j} - conj(c_j)| / 2`.
    pub fn realness_defect(&self) -> f64 {
        let b = self.band as i64;
        (0..=b).map(|j| (self.coeff(-j) - self.coeff(j).conj()).norm() * 0.5).fold(0.0, f64::max)
    }

    /// Projects onto real series, rejecting inputs further than `tol`
    /// (relative to the largest coefficient) from being real.
    pub fn to_real(&self, tol: f64) -> Result<Self> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        if self.realness_defect() > tol * scale {
            return Err(Error::NotReal);
        }
        Ok(Self::from_fn(self.band, true, |j| 0.5 * (self.coeff(j) + self.coeff(-j).conj())))
    }

    /// Estimate of `max_x |s(x)|` from below.
    ///
    /// Samples `16·(band+1)` equispaced points, then refines each grid peak
    /// with Brent's parabolic search until the abscissa is resolved to about
    /// `sqrt(refinement)` of a grid step. Every candidate is an actual
    /// evaluation of `|s|`, so the result never exceeds the true supremum and
    /// never falls below the largest sampled value; it converges to the true
    /// supremum as `refinement` decreases.
    pub fn sup_norm_estimate(&self, refinement: f64) -> f64 {
        if self.band == 0 {
            return self.coeff(0).norm();
        }
        let n = GRID_FACTOR * (self.band + 1);
        let h = 2.0 * PI / n as f64;
        let values: Vec<f64> = (0..n).map(|i| self.evaluate(-PI + i as f64 * h).norm()).collect();
        let grid_max = values.iter().copied().fold(0.0, f64::max);
        if grid_max == 0.0 {
            return 0.0;
        }
        let xtol = (refinement.max(f64::EPSILON).sqrt() * h * 0.1).max(1e-13);
        let modulus_sq = |x: f64| self.evaluate(x).norm_sqr();
        let mut best = grid_max;
        for i in 0..n {
            let v = values[i];
            if v < REFINE_FRACTION * grid_max || v < values[(i + n - 1) % n] || v < values[(i + 1) % n] {
                continue;
            }
            let x = -PI + i as f64 * h;
            let (_, peak) = maximize_brent(&modulus_sq, x - h, x + h, xtol);
            best = best.max(peak.sqrt());
        }
        best
    }

    /// `(1/2π)∫|s|` with the default absolute error target.
    pub fn l1_norm_estimate(&self) -> Result<f64> {
        self.l1_norm_estimate_with(L1_TOLERANCE)
    }

    /// `(1/2π)∫|s|` by adaptive Simpson quadrature between the sign changes
    /// detected on the oversampled grid. Real-tagged series only.
    pub fn l1_norm_estimate_with(&self, tol: f64) -> Result<f64> {
        if !self.real {
            return Err(Error::NotReal);
        }
        if self.band == 0 {
            return Ok(self.coeff(0).re.abs());
        }
        let f = |x: f64| self.evaluate_real(x);
        let n = GRID_FACTOR * (self.band + 1);
        let h = 2.0 * PI / n as f64;
        let mut cuts = vec![-PI];
        let mut prev_x = -PI;
        let mut prev_f = f(prev_x);
        for i in 1..=n {
            let x = if i == n { PI } else { -PI + i as f64 * h };
            let fx = f(x);
            if prev_f != 0.0 && fx != 0.0 && (prev_f > 0.0) != (fx > 0.0) {
                cuts.push(bisect(&f, prev_x, x, prev_f));
            }
            prev_x = x;
            prev_f = fx;
        }
        cuts.push(PI);
        let abs_f = |x: f64| f(x).abs();
        let total: f64 =
            cuts.windows(2).map(|w| adaptive_simpson(&abs_f, w[0], w[1], tol * (w[1] - w[0]) / (2.0 * PI))).sum();
        Ok(total / (2.0 * PI))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    band: usize,
    coeffs: Vec<(i64, f64, f64)>,
}

impl Serialize for TrigSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs =
            self.terms().filter(|(_, c)| *c != Complex64::new(0.0, 0.0)).map(|(j, c)| (j, c.re, c.im)).collect();
        SeriesJson { band: self.band, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TrigSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * raw.band + 1];
        for (j, re, im) in raw.coeffs {
            if j.unsigned_abs() as usize > raw.band {
                return Err(serde::de::Error::custom(format!("frequency {j} exceeds band {}", raw.band)));
            }
            coeffs[(j + raw.band as i64) as usize] += Complex64::new(re, im);
        }
        TrigSeries::new(raw.band, coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(TrigSeries::constant(1.0).evaluate(1.3), c(1.0, 0.0));
        let two_cos = TrigSeries::from_terms(&[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        assert!(two_cos.is_real());
        assert!((two_cos.evaluate(0.0) - c(2.0, 0.0)).norm() < 1e-15);
        let v = two_cos.evaluate(0.7);
        assert!((v.re - 2.0 * 0.7f64.cos()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let d = TrigSeries::exponential(1).derivative();
        assert_eq!(d.coeff(1), c(0.0, 1.0));
        let d = TrigSeries::constant(5.0).derivative();
        assert_eq!(d.lowest_frequency(), None);
        let s = TrigSeries::from_terms(&[(2, c(1.0, 0.0)), (-2, c(1.0, 0.0))]).derivative();
        assert_eq!(s.coeff(2), c(0.0, 2.0));
        assert_eq!(s.coeff(-2), c(0.0, -2.0));
    }

    #[test]
    fn antiderivative_examples() {
        let s = TrigSeries::exponential(1).antiderivative().unwrap();
        assert_eq!(s.coeff(1), c(0.0, -1.0));
        let s = TrigSeries::from_terms(&[(3, c(2.0, 1.0)), (-3, c(2.0, -1.0))]);
        let round = s.derivative().antiderivative().unwrap();
        for j in -3..=3 {
            assert!((round.coeff(j) - s.coeff(j)).norm() < 1e-15);
        }
        assert!(matches!(TrigSeries::constant(1.0).antiderivative(), Err(Error::NonZeroMean { .. })));
    }

    #[test]
    fn inner_product_and_projection() {
        let e1 = TrigSeries::exponential(1);
        let e2 = TrigSeries::exponential(2);
        assert_eq!(e1.inner_product(&e1), c(1.0, 0.0));
        assert_eq!(e1.inner_product(&e2), c(0.0, 0.0));
        let s = TrigSeries::from_terms(&[(0, c(1.0, 0.0)), (1, c(1.0, 0.0)), (5, c(2.0, 0.0))]);
        let p = s.project_tail(2);
        assert_eq!(p.lowest_frequency(), Some(5));
        assert_eq!(p.coeff(5), c(2.0, 0.0));
        assert_eq!(s.project_tail(1).mean(), c(0.0, 0.0));
        assert_eq!(s.project_tail(1).coeff(1), c(1.0, 0.0));
    }

    #[test]
    fn sup_norm_examples() {
        let two_cos = TrigSeries::from_terms(&[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        assert!((two_cos.sup_norm_estimate(1e-12) - 2.0).abs() < 1e-10);
        assert_eq!(TrigSeries::constant(3.0).sup_norm_estimate(1e-12), 3.0);
        // peak placed between grid points
        let shifted = two_cos.shift(0.0123);
        assert!((shifted.sup_norm_estimate(1e-12) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn l1_norm_examples() {
        let two_cos = TrigSeries::from_terms(&[(1, c(1.0, 0.0)), (-1, c(1.0, 0.0))]);
        assert!((two_cos.l1_norm_estimate().unwrap() - 4.0 / PI).abs() < 1e-8);
        assert_eq!(TrigSeries::constant(2.0).l1_norm_estimate().unwrap(), 2.0);
        assert_eq!(TrigSeries::zero(3).l1_norm_estimate().unwrap(), 0.0);
        assert_eq!(TrigSeries::exponential(1).l1_norm_estimate(), Err(Error::NotReal));
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(normalize_angle(0.5), 0.5);
    }

    #[test]
    fn json_layout() {
        let s = TrigSeries::from_terms(&[(1, c(1.0, 0.5)), (-1, c(1.0, -0.5))]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"band":1,"coeffs":[[-1,1.0,-0.5],[1,1.0,0.5]]}"#);
        let back: TrigSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<TrigSeries>(r#"{"band":1,"coeffs":[[2,1.0,0.0]]}"#).is_err());
    }
}
