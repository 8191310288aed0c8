//! Trigonometric interpolation of the kernels `J_m` at the zeros of the
//! square waves, and certification of the residual's zero structure.
//!
//! For odd `m` the interpolant is odd of degree `k-1` and matches `J_m` on
//! `{jπ/k}` (which includes `0` and `π`); for even `m` it is even of degree
//! `k-1` and matches on `{(j+½)π/k}`. In both cases `J_m - p` has exactly
//! `2k` simple zeros, sharing the sign pattern of `c_k'` or `s_k'`, which
//! makes `p` the best `L¹` approximation with error `D_{k,m}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fourier::{normalize_angle, TrigSeries};
use crate::numeric::adaptive_simpson;
use crate::poly::{rat, rational_to_f64};
use crate::waves::{kernel_polynomial, make_c_prime, make_j, make_s_prime};

/// Two nodes closer than this (mod `2π`) are duplicates.
const NODE_SEPARATION: f64 = 1e-12;

/// `|J_m - p|` at a prescribed zero must be below this.
pub const ZERO_TOLERANCE: f64 = 1e-9;

/// `|(J_m - p)'|` at a zero must exceed this for the zero to count as simple.
pub const SIMPLE_TOLERANCE: f64 = 1e-8;

/// Absolute target for `∫|J_m - p| dx`.
pub const RESIDUAL_QUADRATURE_TOLERANCE: f64 = 1e-11;

const MAX_CELL_DEPTH: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(m: usize) -> Self {
        if m % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// The interpolation nodes in `(0, π)` and the full zero set on the circle,
/// both stored as `t` with angle `πt`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    pub k: usize,
    pub parity: Parity,
    nodes: Vec<BigRational>,
    full_zero_set: Vec<BigRational>,
}

impl NodeSet {
    pub fn new(k: usize, parity: Parity) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        let ki = k as i64;
        let nodes: Vec<BigRational> = match parity {
            Parity::Odd => (1..ki).map(|j| rat(j, ki)).collect(),
            Parity::Even => (0..ki).map(|j| rat(2 * j + 1, 2 * ki)).collect(),
        };
        let mut full: Vec<BigRational> = nodes.iter().map(|t| -t).collect();
        full.extend(nodes.iter().cloned());
        if parity == Parity::Odd {
            full.push(rat(0, 1));
            full.push(rat(1, 1));
        }
        full.sort();
        Ok(Self { k, parity, nodes, full_zero_set: full })
    }

    pub fn for_kernel(k: usize, m: usize) -> Result<Self> {
        Self::new(k, Parity::of(m))
    }

    pub fn nodes(&self) -> &[BigRational] {
        &self.nodes
    }

    /// Sorted in `(-1, 1]`.
    pub fn full_zero_set(&self) -> &[BigRational] {
        &self.full_zero_set
    }

    pub fn node_angles(&self) -> Vec<f64> {
        self.nodes.iter().map(|t| PI * rational_to_f64(t)).collect()
    }

    pub fn zero_angles(&self) -> Vec<f64> {
        self.full_zero_set.iter().map(|t| PI * rational_to_f64(t)).collect()
    }

    /// The points handed to the interpolation routine: `A ∪ -A ∪ {π}` for
    /// odd parity, `A` for even.
    pub fn interpolation_points(&self) -> Vec<BigRational> {
        match self.parity {
            Parity::Even => self.nodes.clone(),
            Parity::Odd => self.full_zero_set.iter().filter(|t| !num_traits::Zero::is_zero(*t)).cloned().collect(),
        }
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Layout {
            k: usize,
            parity: Parity,
            nodes: Vec<f64>,
            full_zero_set: Vec<f64>,
            full_zero_set_over_pi: Vec<String>,
        }
        Layout {
            k: self.k,
            parity: self.parity,
            nodes: self.node_angles(),
            full_zero_set: self.zero_angles(),
            full_zero_set_over_pi: self.full_zero_set.iter().map(|t| t.to_string()).collect(),
        }
        .serialize(s)
    }
}

/// Coefficients of `∏ factors` where each factor is a polynomial in `w`
/// (ascending coefficients).
fn expand(factors: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut acc = vec![Complex64::new(1.0, 0.0)];
    for f in factors {
        let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// `w^{-offset} · Σ coeffs[n] w^n` as a series of band `offset`.
fn laurent_to_series(coeffs: Vec<Complex64>, offset: usize) -> TrigSeries {
    debug_assert_eq!(coeffs.len(), 2 * offset + 1);
    TrigSeries::new(offset, coeffs).expect("length matches band")
}

fn check_values(points: usize, values: &[f64]) -> Result<()> {
    if points != values.len() {
        return Err(Error::InvalidArgument(format!("{points} nodes but {} values", values.len())));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("value {v} is not finite")));
    }
    Ok(())
}

fn angular_distance(a: f64, b: f64) -> f64 {
    normalize_angle(a - b).abs()
}

fn check_distinct(points: &[f64]) -> Result<()> {
    for (i, &a) in points.iter().enumerate() {
        if points[..i].iter().any(|&b| angular_distance(a, b) < NODE_SEPARATION) {
            return Err(Error::DuplicateNode(a));
        }
    }
    Ok(())
}

/// The even real polynomial of degree `≤ n-1` taking `values[i]` at
/// `±nodes[i]`, built from the basis `∏_{b≠a} (cos x - cos b)`.
pub fn lagrange_even(nodes: &[f64], values: &[f64]) -> Result<TrigSeries> {
    check_values(nodes.len(), values)?;
    if let Some(&a) = nodes.iter().find(|&&a| !(a > 0.0 && a < PI)) {
        return Err(Error::InvalidArgument(format!("even-parity node {a} is not in (0, π)")));
    }
    check_distinct(nodes)?;
    let n = nodes.len();
    if n == 0 {
        return Ok(TrigSeries::zero(0));
    }
    let band = n - 1;
    let mut total = vec![Complex64::new(0.0, 0.0); 2 * band + 1];
    for (i, &a) in nodes.iter().enumerate() {
        // cos x - cos b = w^{-1} (w²/2 - cos b · w + 1/2)
        let factors: Vec<Vec<Complex64>> = nodes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &b)| vec![Complex64::new(0.5, 0.0), Complex64::new(-b.cos(), 0.0), Complex64::new(0.5, 0.0)])
            .collect();
        let denom: f64 = nodes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| a.cos() - b.cos()).product();
        let weight = values[i] / denom;
        for (slot, c) in total.iter_mut().zip(expand(&factors)) {
            *slot += weight * c;
        }
    }
    let positive: Vec<Complex64> =
        (1..=band).map(|j| Complex64::new(0.5 * (total[band + j].re + total[band - j].re), 0.0)).collect();
    Ok(TrigSeries::real_from_nonnegative(total[band].re, &positive))
}

/// The interpolant on `Z' = A ∪ -A ∪ {π}` built from the basis
/// `e^{-i(n-1)x/2} ∏_{ζ≠z} (e^{ix} - e^{iζ})`, with `n = |Z'|`.
///
/// The values must be odd and vanish at `π`. The result is returned as
/// computed; it is real and odd up to rounding.
pub fn lagrange_odd(points: &[f64], values: &[f64]) -> Result<TrigSeries> {
    check_values(points.len(), values)?;
    check_distinct(points)?;
    let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let pi_index = points
        .iter()
        .position(|&z| angular_distance(z, PI) < NODE_SEPARATION)
        .ok_or_else(|| Error::InvalidArgument("odd-parity point set must contain π".into()))?;
    if values[pi_index].abs() > NODE_SEPARATION * scale {
        return Err(Error::InvalidArgument(format!(
            "odd interpolation forces p(π) = 0 but the value at π is {}",
            values[pi_index]
        )));
    }
    for (i, &z) in points.iter().enumerate() {
        if i == pi_index {
            continue;
        }
        if angular_distance(z, 0.0) < NODE_SEPARATION {
            return Err(Error::InvalidArgument("0 is implied by oddness and must not be listed".into()));
        }
        let mirror = points
            .iter()
            .position(|&y| angular_distance(y, -z) < NODE_SEPARATION)
            .ok_or_else(|| Error::InvalidArgument(format!("point {z} has no mirror image {}", -z)))?;
        if (values[mirror] + values[i]).abs() > NODE_SEPARATION * scale {
            return Err(Error::InvalidArgument(format!("values at ±{z} are not odd")));
        }
    }
    let n = points.len();
    let offset = (n - 1) / 2;
    let roots: Vec<Complex64> = points.iter().map(|&z| Complex64::from_polar(1.0, z)).collect();
    let mut total = vec![Complex64::new(0.0, 0.0); 2 * offset + 1];
    for (i, &z) in points.iter().enumerate() {
        if values[i] == 0.0 {
            continue;
        }
        let factors: Vec<Vec<Complex64>> = roots
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &r)| vec![-r, Complex64::new(1.0, 0.0)])
            .collect();
        let basis = laurent_to_series(expand(&factors), offset);
        let weight = values[i] / basis.evaluate(z);
        for (slot, (_, c)) in total.iter_mut().zip(basis.terms()) {
            *slot += weight * c;
        }
    }
    Ok(laurent_to_series(total, offset))
}

/// The parity-matched interpolant of `J_m` of degree `≤ k-1`.
pub fn interpolate_j(k: usize, m: usize) -> Result<TrigSeries> {
    let set = NodeSet::for_kernel(k, m)?;
    let kernel = make_j(m)?;
    let value = |t: &BigRational| kernel.evaluate_exact(t).to_f64();
    match set.parity {
        Parity::Even => {
            let values: Vec<f64> = set.nodes().iter().map(value).collect();
            lagrange_even(&set.node_angles(), &values)
        }
        Parity::Odd => {
            let points = set.interpolation_points();
            let values: Vec<f64> = points.iter().map(value).collect();
            let angles: Vec<f64> = points.iter().map(|t| PI * rational_to_f64(t)).collect();
            let raw = lagrange_odd(&angles, &values)?.to_real(1e-9)?;
            // odd and real: purely imaginary coefficients
            let positive: Vec<Complex64> =
                (1..=raw.band() as i64).map(|j| Complex64::new(0.0, raw.coeff(j).im)).collect();
            Ok(TrigSeries::real_from_nonnegative(0.0, &positive))
        }
    }
}

/// `r = J_m - p`, evaluated through the polynomial piece of `J_m` on
/// `[-π, π]` so that one-sided limits at `±π` are available.
#[derive(Clone, Debug)]
pub struct Residual {
    pub k: usize,
    pub m: usize,
    kernel: [Vec<f64>; 4],
    p: [TrigSeries; 4],
    /// Bounds for `|r'|`, `|r''|`, `|r'''|` on the open arc.
    lipschitz: [f64; 3],
}

impl Residual {
    pub fn new(k: usize, m: usize, p: TrigSeries) -> Result<Self> {
        let poly = kernel_polynomial(m)?;
        let d1 = poly.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        let pis = |e: i32| PI.powi(e);
        let abs_sum = |c: &[f64]| c.iter().map(|v| v.abs()).sum::<f64>();
        let kernel = [poly.to_f64_coeffs(), d1.to_f64_coeffs(), d2.to_f64_coeffs(), d3.to_f64_coeffs()];
        let lipschitz =
            [1, 2, 3].map(|n| pis(m as i32 - n as i32) * abs_sum(&kernel[n]) + p.weighted_abs_sum(n as i32));
        let p1 = p.derivative();
        let p2 = p1.derivative();
        let p3 = p2.derivative();
        Ok(Self { k, m, kernel, p: [p, p1, p2, p3], lipschitz })
    }

    pub fn for_kernel(k: usize, m: usize) -> Result<Self> {
        Self::new(k, m, interpolate_j(k, m)?)
    }

    pub fn polynomial(&self) -> &TrigSeries {
        &self.p[0]
    }

    /// `n`-th derivative (`n ≤ 3`) of the polynomial piece at `x ∈ [-π, π]`.
    pub fn piece_derivative(&self, n: usize, x: f64) -> f64 {
        let kernel = crate::poly::horner_f64(&self.kernel[n], x / PI) * PI.powi(self.m as i32 - n as i32);
        kernel - self.p[n].evaluate_real(x)
    }

    pub fn piece(&self, x: f64) -> f64 {
        self.piece_derivative(0, x)
    }

    /// `J_m(x) - p(x)` at any angle, using `J_1(π) = 0`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let x = normalize_angle(x);
        if self.m == 1 && x == PI {
            return -self.p[0].evaluate_real(PI);
        }
        self.piece(x)
    }

    /// Rounding error bound for [`Residual::piece`] near `x`.
    pub fn rounding_noise(&self, x: f64) -> f64 {
        let kernel = crate::poly::horner_f64(&self.kernel[0], x / PI).abs() * PI.powi(self.m as i32);
        64.0 * f64::EPSILON * (kernel + self.p[0].weighted_abs_sum(0))
    }

    /// Bounds for `|r'|`, `|r''|` and `|r'''|` on the open arc `(-π, π)`.
    pub fn lipschitz_bounds(&self) -> [f64; 3] {
        self.lipschitz
    }

    /// Largest `ρ` with `|r'| ≥ |r'(z)|/2` on `[z - ρ, z + ρ]`, from
    /// `|r'(x)| ≥ |r'(z)| - |r''(z)| ρ - sup|r'''| ρ²/2`.
    fn monotone_radius(&self, z: f64, cap: f64) -> f64 {
        let d1 = self.piece_derivative(1, z).abs();
        let d2 = self.piece_derivative(2, z).abs();
        let l3 = self.lipschitz[2];
        let radius = if l3 > 0.0 {
            (-d2 + (d2 * d2 + l3 * d1).sqrt()) / l3
        } else if d2 > 0.0 {
            0.5 * d1 / d2
        } else {
            cap
        };
        // r''(z) itself carries rounding error
        radius.min(cap) * (1.0 - 1e-6)
    }

    /// Certifies `r ≠ 0` on `[a, b] ⊂ [-π, π]`; returns a suspect point on
    /// failure.
    fn certify_nonvanishing(&self, a: f64, b: f64, initial_cells: usize) -> std::result::Result<(), f64> {
        let l3 = self.lipschitz[2];
        let width = (b - a) / initial_cells as f64;
        let mut stack: Vec<(f64, f64, u32)> = (0..initial_cells)
            .map(|i| (a + i as f64 * width, if i + 1 == initial_cells { b } else { a + (i + 1) as f64 * width }, 0))
            .collect();
        while let Some((lo, hi, depth)) = stack.pop() {
            let c = 0.5 * (lo + hi);
            let h = 0.5 * (hi - lo);
            // |r(x) - r(c)| ≤ |r'(c)| h + |r''(c)| h²/2 + sup|r'''| h³/6
            let v = self.piece(c).abs();
            let reach = self.piece_derivative(1, c).abs() * h
                + 0.5 * self.piece_derivative(2, c).abs() * h * h
                + l3 * h * h * h / 6.0;
            if v > reach * (1.0 + 1e-12) + f64::EPSILON * 8.0 {
                continue;
            }
            if depth >= MAX_CELL_DEPTH || h < 1e-14 {
                return Err(c);
            }
            stack.push((lo, c, depth + 1));
            stack.push((c, hi, depth + 1));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifiedZero {
    pub angle: f64,
    pub residual: f64,
    /// `None` where `r` jumps (the `m = 1` zero at `π`).
    pub derivative: Option<f64>,
    pub simple: bool,
    pub sign_change: bool,
    /// Radius of the certified neighbourhood holding exactly this zero.
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroStructureReport {
    pub k: usize,
    pub m: usize,
    pub expected_count: usize,
    pub zero_count: usize,
    pub zeros: Vec<CertifiedZero>,
    pub all_simple: bool,
    pub alternating: bool,
    /// `sign(r)·sign(square wave)` on the first arc; `0` if undetermined.
    pub relative_sign: i8,
    pub matches_square_wave: bool,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Certifies that `J_m - p` vanishes exactly on the full zero set, that all
/// zeros are simple sign changes, and that its signs follow the square
/// wave.
///
/// Each prescribed zero `z` gets a neighbourhood on which `|r'| ≥ |r'(z)|/2`,
/// so `r` is strictly monotone there; the remaining arcs are shown
/// zero-free by subdividing until the third-order Taylor bound keeps
/// `r(c)` away from zero on every cell. At `π` for `m = 1` the residual
/// jumps across zero, which counts as a simple zero.
pub fn verify_zero_structure(k: usize, m: usize) -> Result<ZeroStructureReport> {
    let set = NodeSet::for_kernel(k, m)?;
    let residual = Residual::for_kernel(k, m)?;
    Ok(certify(&set, &residual))
}

pub(crate) fn certify(set: &NodeSet, residual: &Residual) -> ZeroStructureReport {
    let (k, m) = (residual.k, residual.m);
    let zeros_at = set.zero_angles();
    let spacing = PI / (2 * k) as f64;
    let mut failures = Vec::new();
    let mut zeros = Vec::with_capacity(zeros_at.len());
    // excluded arcs inside [-π, π]
    let mut holes: Vec<(f64, f64)> = Vec::new();

    for &z in &zeros_at {
        let at_pi = z == PI;
        if at_pi && m == 1 {
            let value = residual.evaluate(PI);
            let sign_change = sign(residual.piece(PI)) * sign(residual.piece(-PI)) < 0;
            let simple = value.abs() <= ZERO_TOLERANCE && sign_change;
            if !simple {
                failures.push(format!("jump at π does not cross zero (r(π) = {value:e})"));
            }
            zeros.push(CertifiedZero { angle: z, residual: value, derivative: None, simple, sign_change, radius: 0.0 });
            continue;
        }
        let value = residual.piece(z);
        let derivative = residual.piece_derivative(1, z);
        let radius = residual.monotone_radius(z, spacing / 2.0);
        let (left, right) = if at_pi {
            (residual.piece(PI - radius), residual.piece(-PI + radius))
        } else {
            (residual.piece(z - radius), residual.piece(z + radius))
        };
        let sign_change = sign(left) * sign(right) < 0;
        let simple = derivative.abs() > SIMPLE_TOLERANCE && value.abs() <= ZERO_TOLERANCE && sign_change;
        if value.abs() > ZERO_TOLERANCE {
            failures.push(format!("r({z}) = {value:e} does not vanish"));
        }
        if derivative.abs() <= SIMPLE_TOLERANCE {
            failures.push(format!("zero at {z} is not simple (r' = {derivative:e})"));
        } else if !sign_change {
            if left.abs().max(right.abs()) <= residual.rounding_noise(z) {
                failures.push(format!("r near {z} is below double-precision resolution"));
            } else {
                failures.push(format!("r does not change sign at {z}"));
            }
        }
        if at_pi {
            holes.push((PI - radius, PI));
            holes.push((-PI, -PI + radius));
        } else {
            holes.push((z - radius, z + radius));
        }
        zeros.push(CertifiedZero {
            angle: z,
            residual: value,
            derivative: Some(derivative),
            simple,
            sign_change,
            radius,
        });
    }

    holes.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cursor = -PI;
    let mut arcs = Vec::new();
    for &(lo, hi) in &holes {
        if lo > cursor {
            arcs.push((cursor, lo));
        }
        cursor = cursor.max(hi);
    }
    if cursor < PI {
        arcs.push((cursor, PI));
    }
    let mut extra = 0;
    for (a, b) in arcs {
        let cells = ((b - a) / spacing * 8.0).ceil().max(1.0) as usize;
        if let Err(x) = residual.certify_nonvanishing(a, b, cells) {
            extra += 1;
            failures.push(format!("could not exclude a zero near {x}"));
        }
    }

    // signs on the arcs between consecutive zeros, cyclically
    let square = if m % 2 == 1 { make_c_prime(k) } else { make_s_prime(k) }.expect("k ≥ 1");
    let n = zeros_at.len();
    let mids: Vec<f64> = (0..n)
        .map(|i| {
            let next = if i + 1 < n { zeros_at[i + 1] } else { zeros_at[0] + 2.0 * PI };
            normalize_angle(0.5 * (zeros_at[i] + next))
        })
        .collect();
    let signs: Vec<i8> = mids.iter().map(|&x| sign(residual.evaluate(x))).collect();
    let alternating = n > 0 && (0..n).all(|i| signs[i] != 0 && signs[i] == -signs[(i + 1) % n]);
    if !alternating {
        failures.push(format!("signs between zeros do not alternate: {signs:?}"));
    }
    let relative: Vec<i8> = mids.iter().zip(&signs).map(|(&x, &s)| s * sign(square.evaluate(x))).collect();
    let relative_sign = relative.first().copied().unwrap_or(0);
    let matches_square_wave = relative_sign != 0 && relative.iter().all(|&s| s == relative_sign);
    if !matches_square_wave {
        failures.push("sign pattern differs from the square wave".into());
    }

    let all_simple = zeros.iter().all(|z| z.simple);
    let zero_count = zeros.iter().filter(|z| z.sign_change && z.residual.abs() <= ZERO_TOLERANCE).count() + extra;
    let expected_count = 2 * k;
    if zero_count != expected_count {
        failures.push(format!("found {zero_count} zeros, expected {expected_count}"));
    }
    ZeroStructureReport {
        k,
        m,
        expected_count,
        zero_count,
        zeros,
        all_simple,
        alternating,
        relative_sign,
        matches_square_wave,
        passed: failures.is_empty(),
        failures,
    }
}

/// `‖J_m - p‖₁ = (1/2π)∫|J_m - p|`, integrating between the prescribed
/// zeros where the residual has constant sign.
pub fn residual_l1(k: usize, m: usize) -> Result<f64> {
    let set = NodeSet::for_kernel(k, m)?;
    let residual = Residual::for_kernel(k, m)?;
    Ok(residual_l1_with(&set, &residual))
}

pub(crate) fn residual_l1_with(set: &NodeSet, residual: &Residual) -> f64 {
    let mut cuts = vec![-PI];
    cuts.extend(set.zero_angles().into_iter().filter(|&z| z > -PI && z < PI));
    cuts.push(PI);
    let tol = RESIDUAL_QUADRATURE_TOLERANCE / cuts.len() as f64;
    let f = |x: f64| residual.piece(x);
    let total: f64 = cuts.windows(2).map(|w| adaptive_simpson(&f, w[0], w[1], tol).abs()).sum();
    total / (2.0 * PI)
}
