//! Exact piecewise-polynomial functions on the circle.
//!
//! Angles are written as `x = π·t` with `t ∈ (-1, 1]`. A
//! [`CirclePiecewisePoly`] has breakpoints `t_0 < t_1 < … < t_{n-1}` (exact
//! rationals) and one polynomial per arc. Arc `i` runs from `t_i` to
//! `t_{i+1}` (the last one wraps around to `t_0 + 2`), and on it
//!
//! ```text
//! f(π·(t_i + u)) = π^p · Q_i(u),     0 ≤ u < len_i,
//! ```
//!
//! where `p` is a single power of π shared by the whole function and the
//! `Q_i` have rational coefficients. The triangular waves, the kernels
//! `J_m` and the extremal functions are all of this form, so their values,
//! means, norms and inner products come out as exact rationals times a
//! power of π.
//!
//! At a jump the function takes its right limit. Isolated point values
//! (such as `J₁(π) = 0`) may be attached to breakpoints; they only affect
//! pointwise evaluation and the zero set, never integrals or sup-norms.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fourier::TrigSeries;
use crate::poly::{horner_f64, int, rational_to_f64, RationalPoly};
use crate::roots::{real_roots_in, RealRoot};
use crate::scaled::{Mantissa, PiScaled};

#[derive(Clone, Debug)]
pub struct CirclePiecewisePoly {
    pi_power: i32,
    breakpoints: Vec<BigRational>,
    pieces: Vec<RationalPoly>,
    continuity: i32,
    point_values: Vec<(usize, BigRational)>,
    float_breaks: Vec<f64>,
    float_pieces: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    /// Sign change with nonvanishing derivative. A jump through zero whose
    /// attached point value is exactly zero also counts as simple.
    Simple,
    /// Higher-multiplicity root, or a zero at a corner.
    NonSimple,
    /// The function jumps across zero without taking the value zero.
    JumpCrossing,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleZero {
    /// `t = x/π ∈ (-1, 1]`.
    pub location: Mantissa,
    pub kind: ZeroKind,
    pub sign_change: bool,
}

impl CircleZero {
    pub fn angle(&self) -> f64 {
        self.location.to_f64() * PI
    }
}

/// Reduces `t` into `(-1, 1]`.
pub fn normalize_t(t: &BigRational) -> BigRational {
    let two = int(2);
    let shifted = (t + BigRational::one()) / &two;
    let r = t - &two * shifted.floor();
    if r == -BigRational::one() {
        BigRational::one()
    } else {
        r
    }
}

fn sign_of(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `q` just to the right of `u = 0`.
fn sign_right_of_zero(q: &RationalPoly) -> i8 {
    let mut d = q.clone();
    while !d.is_zero() {
        let s = sign_of(&d.eval(&BigRational::zero()));
        if s != 0 {
            return s;
        }
        d = d.derivative();
    }
    0
}

/// Sign of `q` just to the left of `u = len`.
fn sign_left_of(q: &RationalPoly, len: &BigRational) -> i8 {
    let mut d = q.clone();
    let mut n = 0;
    while !d.is_zero() {
        let s = sign_of(&d.eval(len));
        if s != 0 {
            return if n % 2 == 0 { s } else { -s };
        }
        d = d.derivative();
        n += 1;
    }
    0
}

impl CirclePiecewisePoly {
    /// Validates the layout and that the declared continuity class holds at
    /// every breakpoint.
    pub fn new(
        pi_power: i32,
        breakpoints: Vec<BigRational>,
        pieces: Vec<RationalPoly>,
        continuity: i32,
    ) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != pieces.len() {
            return Err(Error::InvalidArgument(format!(
                "need one piece per breakpoint, got {} breakpoints and {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        let one = BigRational::one();
        if breakpoints.iter().any(|b| b <= &-one.clone() || b > &one) {
            return Err(Error::InvalidArgument("breakpoints must lie in (-π, π]".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        if continuity < -1 {
            return Err(Error::InvalidArgument(format!("continuity class {continuity} < -1")));
        }
        let f = Self::assemble(pi_power, breakpoints, pieces, continuity, Vec::new());
        if f.actual_continuity() < continuity {
            return Err(Error::InvalidArgument(format!("pieces do not join with continuity class {continuity}")));
        }
        Ok(f)
    }

    fn assemble(
        pi_power: i32,
        breakpoints: Vec<BigRational>,
        pieces: Vec<RationalPoly>,
        continuity: i32,
        point_values: Vec<(usize, BigRational)>,
    ) -> Self {
        let float_breaks = breakpoints.iter().map(rational_to_f64).collect();
        let float_pieces = pieces.iter().map(RationalPoly::to_f64_coeffs).collect();
        Self { pi_power, breakpoints, pieces, continuity, point_values, float_breaks, float_pieces }
    }

    /// A single-piece constant function `value · π^pi_power`.
    pub fn constant(value: BigRational, pi_power: i32) -> Self {
        Self::assemble(pi_power, vec![BigRational::one()], vec![RationalPoly::constant(value)], i32::MAX, Vec::new())
    }

    pub fn zero() -> Self {
        Self::constant(BigRational::zero(), 0)
    }

    /// Attaches an isolated value `value · π^p` at breakpoint `t`.
    pub fn with_point_value(mut self, t: &BigRational, value: BigRational) -> Result<Self> {
        let t = normalize_t(t);
        let idx = self
            .breakpoints
            .iter()
            .position(|b| b == &t)
            .ok_or_else(|| Error::InvalidArgument(format!("{t} is not a breakpoint")))?;
        self.point_values.retain(|(i, _)| *i != idx);
        self.point_values.push((idx, value));
        Ok(self)
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[RationalPoly] {
        &self.pieces
    }

    pub fn continuity(&self) -> i32 {
        self.continuity
    }

    pub fn point_values(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.point_values.iter().map(|(i, v)| (&self.breakpoints[*i], v))
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Length of arc `i` in units of π.
    pub fn piece_len(&self, i: usize) -> BigRational {
        let n = self.breakpoints.len();
        if i + 1 < n {
            &self.breakpoints[i + 1] - &self.breakpoints[i]
        } else {
            &self.breakpoints[0] + int(2) - &self.breakpoints[n - 1]
        }
    }

    fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    /// Largest `c` such that derivatives `0..=c` agree at every breakpoint
    /// (`i32::MAX` when the function is a single polynomial across the circle).
    fn actual_continuity(&self) -> i32 {
        let mut class = i32::MAX;
        for i in 0..self.len() {
            let j = self.prev(i);
            let len = self.piece_len(j);
            let mut left = self.pieces[j].clone();
            let mut right = self.pieces[i].clone();
            let mut order = 0;
            loop {
                if left.is_zero() && right.is_zero() {
                    break;
                }
                if left.eval(&len) != right.eval(&BigRational::zero()) {
                    class = class.min(order - 1);
                    break;
                }
                left = left.derivative();
                right = right.derivative();
                order += 1;
            }
        }
        class
    }

    /// Locates `t` (any real multiple of π) as `(piece, offset)`.
    fn locate(&self, t: &BigRational) -> (usize, BigRational) {
        let b0 = &self.breakpoints[0];
        let two = int(2);
        let t = t - &two * ((t - b0) / &two).floor();
        let i = match self.breakpoints.binary_search(&t) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let u = &t - &self.breakpoints[i];
        (i, u)
    }

    fn locate_f64(&self, t: f64) -> (usize, f64) {
        let b0 = self.float_breaks[0];
        let t = b0 + (t - b0).rem_euclid(2.0);
        let i = match self.float_breaks.binary_search_by(|b| b.partial_cmp(&t).unwrap_or(Ordering::Less)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        (i, t - self.float_breaks[i])
    }

    /// Exact value at the angle `π·t`.
    pub fn evaluate_exact(&self, t: &BigRational) -> PiScaled {
        let tn = normalize_t(t);
        if let Some((_, v)) = self.point_values.iter().find(|(i, _)| self.breakpoints[*i] == tn) {
            return PiScaled::exact(v.clone(), self.pi_power);
        }
        let (i, u) = self.locate(t);
        PiScaled::exact(self.pieces[i].eval(&u), self.pi_power)
    }

    /// Floating-point value at the angle `x`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let t = x / PI;
        for (i, v) in &self.point_values {
            if (t - self.float_breaks[*i]).rem_euclid(2.0) == 0.0 {
                return rational_to_f64(v) * PI.powi(self.pi_power);
            }
        }
        let (i, u) = self.locate_f64(t);
        horner_f64(&self.float_pieces[i], u) * PI.powi(self.pi_power)
    }

    /// Almost-everywhere derivative.
    pub fn derivative(&self) -> Self {
        Self::assemble(
            self.pi_power - 1,
            self.breakpoints.clone(),
            self.pieces.iter().map(RationalPoly::derivative).collect(),
            (self.continuity.saturating_sub(1)).max(-1),
            Vec::new(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// `(1/2)·Σ ∫_0^{len_i} Q_i`, the mean divided by `π^p`.
    fn mean_mantissa(&self) -> BigRational {
        let total: BigRational =
            (0..self.len()).map(|i| self.pieces[i].integral(&BigRational::zero(), &self.piece_len(i))).sum();
        total / int(2)
    }

    /// `(1/2π)∫ f` over the circle.
    pub fn mean(&self) -> PiScaled {
        PiScaled::exact(self.mean_mantissa(), self.pi_power)
    }

    /// The continuous primitive with zero average.
    pub fn antiderivative_zero_mean(&self) -> Result<Self> {
        let mean = self.mean_mantissa();
        if !mean.is_zero() {
            return Err(Error::NonZeroMean { mean: PiScaled::exact(mean, self.pi_power).to_f64().abs() });
        }
        let mut pieces = Vec::with_capacity(self.len());
        let mut offset = BigRational::zero();
        for i in 0..self.len() {
            let prim = &self.pieces[i].antiderivative() + &RationalPoly::constant(offset.clone());
            offset = prim.eval(&self.piece_len(i));
            pieces.push(prim);
        }
        let f = Self::assemble(
            self.pi_power + 1,
            self.breakpoints.clone(),
            pieces,
            self.continuity.saturating_add(1),
            Vec::new(),
        );
        let shift = RationalPoly::constant(f.mean_mantissa());
        let pieces = f.pieces.iter().map(|q| q - &shift).collect();
        Ok(Self::assemble(f.pi_power, f.breakpoints, pieces, f.continuity, Vec::new()))
    }

    pub fn iterated_antiderivative(&self, times: usize) -> Result<Self> {
        (0..times).try_fold(self.clone(), |f, _| f.antiderivative_zero_mean())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let point_values = self.point_values.iter().map(|(i, v)| (*i, v * factor)).collect();
        Self::assemble(
            self.pi_power,
            self.breakpoints.clone(),
            self.pieces.iter().map(|q| q.scale(factor)).collect(),
            self.continuity,
            point_values,
        )
    }

    pub fn negate(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// Rebuilds the function from arcs `(start, len, poly)` listed in any
    /// rotation of circular order.
    fn from_arcs(
        pi_power: i32,
        mut arcs: Vec<(BigRational, RationalPoly)>,
        continuity: i32,
        points: Vec<(BigRational, BigRational)>,
    ) -> Self {
        for arc in &mut arcs {
            arc.0 = normalize_t(&arc.0);
        }
        arcs.sort_by(|a, b| a.0.cmp(&b.0));
        let (breakpoints, pieces): (Vec<_>, Vec<_>) = arcs.into_iter().unzip();
        let point_values = points
            .into_iter()
            .filter_map(|(t, v)| {
                let t = normalize_t(&t);
                breakpoints.iter().position(|b| b == &t).map(|i| (i, v))
            })
            .collect();
        Self::assemble(pi_power, breakpoints, pieces, continuity, point_values)
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> Self {
        let arcs = (0..self.len())
            .map(|i| {
                let len = self.piece_len(i);
                let start = -(&self.breakpoints[i] + &len);
                (start, self.pieces[i].compose_linear(&-BigRational::one(), &len))
            })
            .collect();
        let points = self.point_values.iter().map(|(i, v)| (-&self.breakpoints[*i], v.clone())).collect();
        Self::from_arcs(self.pi_power, arcs, self.continuity, points)
    }

    /// `x ↦ f(x + π·t0)`.
    pub fn shift(&self, t0: &BigRational) -> Self {
        let arcs = (0..self.len()).map(|i| (&self.breakpoints[i] - t0, self.pieces[i].clone())).collect();
        let points = self.point_values.iter().map(|(i, v)| (&self.breakpoints[*i] - t0, v.clone())).collect();
        Self::from_arcs(self.pi_power, arcs, self.continuity, points)
    }

    /// The same function with extra breakpoints inserted.
    pub fn refine(&self, extra: &[BigRational]) -> Self {
        let mut cuts: Vec<BigRational> = self.breakpoints.clone();
        cuts.extend(extra.iter().map(normalize_t));
        cuts.sort();
        cuts.dedup();
        let arcs = cuts
            .iter()
            .map(|c| {
                let (i, u) = self.locate(c);
                (c.clone(), self.pieces[i].shift(&u))
            })
            .collect();
        let points = self.point_values.iter().map(|(i, v)| (self.breakpoints[*i].clone(), v.clone())).collect();
        Self::from_arcs(self.pi_power, arcs, self.continuity, points)
    }

    fn common_refinement(&self, other: &Self) -> (Self, Self) {
        (self.refine(&other.breakpoints), other.refine(&self.breakpoints))
    }

    /// Almost-everywhere equality (point values are ignored).
    pub fn same_function(&self, other: &Self) -> bool {
        let (a, b) = self.common_refinement(other);
        let all_zero = |f: &Self| f.pieces.iter().all(RationalPoly::is_zero);
        if all_zero(&a) && all_zero(&b) {
            return true;
        }
        a.pi_power == b.pi_power && a.pieces == b.pieces
    }

    pub fn is_even(&self) -> bool {
        self.same_function(&self.reflect())
    }

    pub fn is_odd(&self) -> bool {
        self.same_function(&self.reflect().negate())
    }

    /// `⟨f, g⟩ = (1/2π)∫ f·g` for real functions, exactly.
    pub fn inner_product(&self, other: &Self) -> PiScaled {
        let (a, b) = self.common_refinement(other);
        let total: BigRational =
            (0..a.len()).map(|i| (&a.pieces[i] * &b.pieces[i]).integral(&BigRational::zero(), &a.piece_len(i))).sum();
        PiScaled::exact(total / int(2), a.pi_power + b.pi_power)
    }

    /// Critical-point candidates of piece `i`: values at both ends of the
    /// closed arc and at interior roots of `Q_i'`.
    fn piece_extrema(&self, i: usize) -> Vec<Mantissa> {
        let q = &self.pieces[i];
        let len = self.piece_len(i);
        let mut out = vec![Mantissa::Exact(q.eval(&BigRational::zero())), Mantissa::Exact(q.eval(&len))];
        let d = q.derivative();
        if d.degree().unwrap_or(0) >= 1 {
            for root in real_roots_in(&d, &BigRational::zero(), &len) {
                out.push(match root.exact() {
                    Some(r) => Mantissa::Exact(q.eval(r)),
                    None => Mantissa::Approx(rational_to_f64(&q.eval(&root.representative()))),
                });
            }
        }
        out
    }

    /// `sup |f|` over the closure of the pieces (point values excluded).
    ///
    /// Each piece is maximised over its endpoints and the real roots of its
    /// derivative. The result is exact whenever the maximiser is rational;
    /// otherwise the mantissa is the value at a certified root bracket of
    /// width below `1e-15`.
    pub fn sup_norm_exact(&self) -> PiScaled {
        let mut best = Mantissa::Exact(BigRational::zero());
        let mut best_f = 0.0f64;
        for i in 0..self.len() {
            for cand in self.piece_extrema(i) {
                let cand = match cand {
                    Mantissa::Exact(r) => Mantissa::Exact(r.abs()),
                    Mantissa::Approx(v) => Mantissa::Approx(v.abs()),
                };
                let better = match (&cand, &best) {
                    (Mantissa::Exact(a), Mantissa::Exact(b)) => a > b,
                    (Mantissa::Exact(_), Mantissa::Approx(_)) => cand.to_f64() >= best_f,
                    _ => cand.to_f64() > best_f,
                };
                if better {
                    best_f = cand.to_f64();
                    best = cand;
                }
            }
        }
        PiScaled { mantissa: best, pi_power: self.pi_power }
    }

    /// `(1/2π)∫|f|`, integrating each piece exactly between its real roots.
    pub fn l1_norm_exact(&self) -> PiScaled {
        let mut exact_total = BigRational::zero();
        let mut approx_total = 0.0;
        let mut all_exact = true;
        for i in 0..self.len() {
            let q = &self.pieces[i];
            if q.is_zero() {
                continue;
            }
            let len = self.piece_len(i);
            let prim = q.antiderivative();
            let mut cuts = vec![RealRootOrPoint::Exact(BigRational::zero())];
            for r in real_roots_in(q, &BigRational::zero(), &len) {
                match r.exact() {
                    Some(e) if e.is_zero() || e == &len => {}
                    Some(e) => cuts.push(RealRootOrPoint::Exact(e.clone())),
                    None => cuts.push(RealRootOrPoint::Approx(r)),
                }
            }
            cuts.push(RealRootOrPoint::Exact(len));
            for w in cuts.windows(2) {
                match (&w[0], &w[1]) {
                    (RealRootOrPoint::Exact(a), RealRootOrPoint::Exact(b)) => {
                        exact_total += (prim.eval(b) - prim.eval(a)).abs();
                    }
                    (a, b) => {
                        all_exact = false;
                        let va = rational_to_f64(&prim.eval(&a.point()));
                        let vb = rational_to_f64(&prim.eval(&b.point()));
                        approx_total += (vb - va).abs();
                    }
                }
            }
        }
        if all_exact {
            PiScaled::exact(exact_total / int(2), self.pi_power)
        } else {
            PiScaled::approx((rational_to_f64(&exact_total) + approx_total) / 2.0, self.pi_power)
        }
    }

    /// All zeros on the circle, sorted by angle, each flagged as simple,
    /// non-simple, or a jump crossing.
    ///
    /// At a breakpoint where the function is continuous, a zero is simple
    /// only if both one-sided derivatives agree and are nonzero, so a zero at
    /// a corner is never simple. At a jump whose one-sided limits have
    /// opposite signs, the crossing is simple when the attached point value
    /// is exactly zero and a [`ZeroKind::JumpCrossing`] otherwise.
    pub fn signed_zero_set(&self) -> Result<Vec<CircleZero>> {
        if let Some(i) = self.pieces.iter().position(RationalPoly::is_zero) {
            return Err(Error::IdenticallyZeroPiece(i));
        }
        let zero = BigRational::zero();
        let mut zeros = Vec::new();
        for i in 0..self.len() {
            let j = self.prev(i);
            let len_j = self.piece_len(j);
            let (ql, qr) = (&self.pieces[j], &self.pieces[i]);
            let left = ql.eval(&len_j);
            let right = qr.eval(&zero);
            let s_left = sign_left_of(ql, &len_j);
            let s_right = sign_right_of_zero(qr);
            let sign_change = s_left * s_right < 0;
            let point = self.point_values.iter().find(|(p, _)| *p == i).map(|(_, v)| v.clone());
            let location = Mantissa::Exact(self.breakpoints[i].clone());
            if left == right {
                if !left.is_zero() {
                    continue;
                }
                let dl = ql.derivative().eval(&len_j);
                let dr = qr.derivative().eval(&zero);
                let kind = if dl == dr && !dl.is_zero() { ZeroKind::Simple } else { ZeroKind::NonSimple };
                zeros.push(CircleZero { location, kind, sign_change });
            } else {
                let value = point.unwrap_or(right);
                if sign_change {
                    let kind = if value.is_zero() { ZeroKind::Simple } else { ZeroKind::JumpCrossing };
                    zeros.push(CircleZero { location, kind, sign_change });
                } else if value.is_zero() {
                    zeros.push(CircleZero { location, kind: ZeroKind::NonSimple, sign_change });
                }
            }
        }
        for i in 0..self.len() {
            let q = &self.pieces[i];
            let len = self.piece_len(i);
            for root in real_roots_in(q, &zero, &len) {
                if let Some(e) = root.exact() {
                    if e.is_zero() || e == &len {
                        continue;
                    }
                }
                let kind = if root.is_simple() { ZeroKind::Simple } else { ZeroKind::NonSimple };
                let sign_change = root.multiplicity % 2 == 1;
                let location = match root.exact() {
                    Some(e) => Mantissa::Exact(normalize_t(&(&self.breakpoints[i] + e))),
                    None => {
                        let t = rational_to_f64(&self.breakpoints[i]) + root.to_f64();
                        Mantissa::Approx(if t > 1.0 { t - 2.0 } else { t })
                    }
                };
                zeros.push(CircleZero { location, kind, sign_change });
            }
        }
        zeros.sort_by(|a, b| a.location.to_f64().partial_cmp(&b.location.to_f64()).unwrap_or(Ordering::Equal));
        Ok(zeros)
    }

    /// Fourier coefficients `|j| ≤ band` by exact integration by parts on
    /// each piece:
    /// `∫_0^L Q(u) e^{αu} du = Σ_n (-1)^n [Q^(n)(L) e^{αL} - Q^(n)(0)] / α^{n+1}`
    /// with `α = -iπj`.
    pub fn to_trig_series(&self, band: usize) -> TrigSeries {
        struct PieceData {
            start: BigRational,
            len: BigRational,
            at_start: Vec<f64>,
            at_end: Vec<f64>,
        }
        let data: Vec<PieceData> = (0..self.len())
            .map(|i| {
                let len = self.piece_len(i);
                let mut d = self.pieces[i].clone();
                let (mut at_start, mut at_end) = (Vec::new(), Vec::new());
                while !d.is_zero() {
                    at_start.push(rational_to_f64(&d.eval(&BigRational::zero())));
                    at_end.push(rational_to_f64(&d.eval(&len)));
                    d = d.derivative();
                }
                PieceData { start: self.breakpoints[i].clone(), len, at_start, at_end }
            })
            .collect();
        // e^{-iπ j t} with j·t reduced mod 2 exactly
        let phase = |j: i64, t: &BigRational| {
            let jt = t * BigInt::from(j);
            let r = &jt - int(2) * (&jt / int(2)).floor();
            Complex64::from_polar(1.0, -PI * rational_to_f64(&r))
        };
        let scale = PI.powi(self.pi_power) / 2.0;
        let mean = rational_to_f64(&self.mean_mantissa()) * PI.powi(self.pi_power);
        let positive: Vec<Complex64> = (1..=band as i64)
            .map(|j| {
                let alpha = Complex64::new(0.0, -PI * j as f64);
                let mut total = Complex64::new(0.0, 0.0);
                for p in &data {
                    let e_len = phase(j, &p.len);
                    let mut acc = Complex64::new(0.0, 0.0);
                    let mut alpha_pow = alpha;
                    for n in 0..p.at_start.len() {
                        let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
                        acc += sgn * (p.at_end[n] * e_len - p.at_start[n]) / alpha_pow;
                        alpha_pow *= alpha;
                    }
                    total += acc * phase(j, &p.start);
                }
                total * scale
            })
            .collect();
        TrigSeries::real_from_nonnegative(mean, &positive)
    }
}

enum RealRootOrPoint {
    Exact(BigRational),
    Approx(RealRoot),
}

impl RealRootOrPoint {
    fn point(&self) -> BigRational {
        match self {
            RealRootOrPoint::Exact(r) => r.clone(),
            RealRootOrPoint::Approx(r) => r.representative(),
        }
    }
}

/// JSON layout:
///
/// ```json
/// {"breakpoints": [["-1", "2", 1], ...],
///  "pieces": [[["1", "2", 1], ["-1", "1", 1]], ...],
///  "continuity": 0,
///  "point_values": [[["1", "1", 1], ["0", "1", 1]]]}
/// ```
///
/// A breakpoint `[num, den, 1]` is the angle `(num/den)·π`. Piece `i` lists
/// terms `[num, den, p]`; term `n` is the coefficient of `u^n`, where `u` is
/// the offset from the piece's breakpoint in units of π, so the piece value
/// is `Σ (num/den)·π^p·u^n`. Integers are decimal strings so that arbitrary
/// precision survives the round trip.
type Term = (String, String, i32);

#[derive(Serialize, Deserialize)]
struct PiecewiseJson {
    breakpoints: Vec<Term>,
    pieces: Vec<Vec<Term>>,
    continuity: i32,
    #[serde(default)]
    point_values: Vec<(Term, Term)>,
}

fn term(r: &BigRational, pi_power: i32) -> Term {
    (r.numer().to_string(), r.denom().to_string(), pi_power)
}

fn parse_term(t: &(String, String, i32)) -> std::result::Result<BigRational, String> {
    let n: BigInt = t.0.parse().map_err(|_| format!("bad integer {}", t.0))?;
    let d: BigInt = t.1.parse().map_err(|_| format!("bad integer {}", t.1))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for CirclePiecewisePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PiecewiseJson {
            breakpoints: self.breakpoints.iter().map(|b| term(b, 1)).collect(),
            pieces: self.pieces.iter().map(|q| q.coeffs().iter().map(|c| term(c, self.pi_power)).collect()).collect(),
            continuity: self.continuity.min(i32::MAX - 1),
            point_values: self
                .point_values
                .iter()
                .map(|(i, v)| (term(&self.breakpoints[*i], 1), term(v, self.pi_power)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CirclePiecewisePoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PiecewiseJson::deserialize(deserializer)?;
        let mut pi_power = None;
        let mut check_power = |p: i32| match pi_power {
            None => {
                pi_power = Some(p);
                Ok(())
            }
            Some(q) if q == p => Ok(()),
            Some(_) => Err(D::Error::custom("all coefficient terms must share one power of π")),
        };
        let mut breakpoints = Vec::new();
        for b in &raw.breakpoints {
            if b.2 != 1 {
                return Err(D::Error::custom("breakpoints must be rational multiples of π"));
            }
            breakpoints.push(parse_term(b).map_err(D::Error::custom)?);
        }
        let mut pieces = Vec::new();
        for piece in &raw.pieces {
            let mut coeffs = Vec::new();
            for t in piece {
                check_power(t.2)?;
                coeffs.push(parse_term(t).map_err(D::Error::custom)?);
            }
            pieces.push(RationalPoly::new(coeffs));
        }
        let mut points = Vec::new();
        for (t, v) in &raw.point_values {
            check_power(v.2)?;
            points.push((parse_term(t).map_err(D::Error::custom)?, parse_term(v).map_err(D::Error::custom)?));
        }
        let mut f = CirclePiecewisePoly::new(pi_power.unwrap_or(0), breakpoints, pieces, raw.continuity)
            .map_err(D::Error::custom)?;
        for (t, v) in points {
            f = f.with_point_value(&t, v).map_err(D::Error::custom)?;
        }
        Ok(f)
    }
}
