//! Certified real-root isolation for [`RationalPoly`].
//!
//! Roots are isolated with a Sturm sequence of the square-free part, so
//! every reported interval contains exactly one distinct root. Isolating
//! intervals are then shrunk by exact bisection. Roots that are rationals
//! with small denominators are recognised from the continued fraction of
//! the final interval and confirmed by exact evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{rational_to_f64, RationalPoly};

/// Bisection stops once an isolating interval is narrower than this.
pub const ROOT_WIDTH: f64 = 1e-15;

/// Largest denominator tried when recognising a rational root.
const MAX_RECOGNISED_DENOM: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Exact(BigRational),
    /// A single irrational (or large-denominator) root inside `[lo, hi]`.
    Bracketed {
        lo: BigRational,
        hi: BigRational,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub value: RootValue,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn to_f64(&self) -> f64 {
        match &self.value {
            RootValue::Exact(r) => rational_to_f64(r),
            RootValue::Bracketed { lo, hi } => rational_to_f64(&((lo + hi) / BigInt::from(2))),
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match &self.value {
            RootValue::Exact(r) => Some(r),
            RootValue::Bracketed { .. } => None,
        }
    }

    /// A representative rational: the root itself or its bracket midpoint.
    pub fn representative(&self) -> BigRational {
        match &self.value {
            RootValue::Exact(r) => r.clone(),
            RootValue::Bracketed { lo, hi } => (lo + hi) / BigInt::from(2),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity == 1
    }
}

struct Sturm {
    chain: Vec<RationalPoly>,
}

impl Sturm {
    fn new(sqf: &RationalPoly) -> Self {
        let mut chain = vec![sqf.clone(), sqf.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        Self { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = sign(&v);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in `(a, b)` when neither endpoint is a root.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// All real roots of `p` in the closed interval `[lo, hi]`, sorted.
///
/// Panics if `p` is the zero polynomial.
pub fn real_roots_in(p: &RationalPoly, lo: &BigRational, hi: &BigRational) -> Vec<RealRoot> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    if p.degree() == Some(0) || lo > hi {
        return Vec::new();
    }
    if lo == hi {
        return if p.eval(lo).is_zero() {
            vec![RealRoot { value: RootValue::Exact(lo.clone()), multiplicity: exact_multiplicity(p, lo) }]
        } else {
            Vec::new()
        };
    }
    let sqf = p.square_free();
    let mut exact: Vec<BigRational> = Vec::new();
    let mut brackets: Vec<(BigRational, BigRational)> = Vec::new();

    if sqf.degree() == Some(1) {
        let r = -sqf.coeff(0) / sqf.coeff(1);
        if &r >= lo && &r <= hi {
            exact.push(r);
        }
    } else {
        let sturm = Sturm::new(&sqf);
        let mut a = lo.clone();
        let mut b = hi.clone();
        if sqf.eval(lo).is_zero() {
            exact.push(lo.clone());
            a = step_off(&sturm, &sqf, lo, hi, 1);
        }
        if sqf.eval(hi).is_zero() {
            exact.push(hi.clone());
            b = step_off(&sturm, &sqf, hi, lo, -1);
        }
        if a < b {
            isolate(&sturm, &sqf, a, b, &mut brackets, &mut exact);
        }
    }

    let mut roots: Vec<RealRoot> = exact
        .into_iter()
        .map(|r| {
            let multiplicity = exact_multiplicity(p, &r);
            RealRoot { value: RootValue::Exact(r), multiplicity }
        })
        .collect();
    for (a, b) in brackets {
        let value = refine(&sqf, a, b);
        let multiplicity = match &value {
            RootValue::Exact(r) => exact_multiplicity(p, r),
            RootValue::Bracketed { lo, hi } => bracket_multiplicity(p, lo, hi),
        };
        roots.push(RealRoot { value, multiplicity });
    }
    roots.sort_by_key(RealRoot::representative);
    roots
}

/// Moves off the root `at` towards `toward` until exactly that one root
/// lies between the mirrored points, returning the inner point.
fn step_off(sturm: &Sturm, sqf: &RationalPoly, at: &BigRational, toward: &BigRational, dir: i32) -> BigRational {
    let mut d = (toward - at).abs() * half();
    loop {
        let inner = if dir > 0 { at + &d } else { at - &d };
        let outer = if dir > 0 { at - &d } else { at + &d };
        let (l, r) = if dir > 0 { (&outer, &inner) } else { (&inner, &outer) };
        if !sqf.eval(l).is_zero() && !sqf.eval(r).is_zero() && sturm.count(l, r) == 1 {
            return inner;
        }
        d *= half();
    }
}

fn isolate(
    sturm: &Sturm,
    sqf: &RationalPoly,
    a: BigRational,
    b: BigRational,
    brackets: &mut Vec<(BigRational, BigRational)>,
    exact: &mut Vec<BigRational>,
) {
    match sturm.count(&a, &b) {
        0 => {}
        1 => brackets.push((a, b)),
        _ => {
            let mid = (&a + &b) * half();
            if sqf.eval(&mid).is_zero() {
                exact.push(mid.clone());
                let mut d = (&b - &a) * half() * half();
                loop {
                    let l = &mid - &d;
                    let r = &mid + &d;
                    if !sqf.eval(&l).is_zero() && !sqf.eval(&r).is_zero() && sturm.count(&l, &r) == 1 {
                        isolate(sturm, sqf, a, l, brackets, exact);
                        isolate(sturm, sqf, r, b, brackets, exact);
                        return;
                    }
                    d *= half();
                }
            }
            isolate(sturm, sqf, a, mid.clone(), brackets, exact);
            isolate(sturm, sqf, mid, b, brackets, exact);
        }
    }
}

/// Bisects an isolating interval of a simple root of `sqf`.
fn refine(sqf: &RationalPoly, mut a: BigRational, mut b: BigRational) -> RootValue {
    let sa = sign(&sqf.eval(&a));
    while rational_to_f64(&(&b - &a)) > ROOT_WIDTH {
        let mid = (&a + &b) * half();
        let s = sign(&sqf.eval(&mid));
        if s == 0 {
            return RootValue::Exact(mid);
        }
        if s == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    if let Some(r) = recognise(sqf, &a, &b) {
        return RootValue::Exact(r);
    }
    RootValue::Bracketed { lo: a, hi: b }
}

/// Continued-fraction convergents of the bracket midpoint that fall in
/// `[a, b]` and are exact roots.
fn recognise(sqf: &RationalPoly, a: &BigRational, b: &BigRational) -> Option<BigRational> {
    let mid = (a + b) * half();
    let mut num = mid.numer().clone();
    let mut den = mid.denom().clone();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let limit = BigInt::from(MAX_RECOGNISED_DENOM);
    while !den.is_zero() {
        let (q, r) = num.div_mod_floor(&den);
        let h2 = &q * &h1 + &h0;
        let k2 = &q * &k1 + &k0;
        if k2 > limit {
            break;
        }
        let cand = BigRational::new(h2.clone(), k2.clone());
        if &cand >= a && &cand <= b && sqf.eval(&cand).is_zero() {
            return Some(cand);
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        num = std::mem::replace(&mut den, r);
    }
    None
}

fn exact_multiplicity(p: &RationalPoly, r: &BigRational) -> usize {
    let mut q = p.clone();
    let mut mult = 0;
    while !q.is_zero() && q.eval(r).is_zero() {
        mult += 1;
        q = q.derivative();
    }
    mult
}

/// Multiplicity of the single root of `p` inside `[lo, hi]`; the endpoints
/// are not roots of `p`.
fn bracket_multiplicity(p: &RationalPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let mut g = p.clone();
    let mut mult = 1;
    loop {
        g = g.gcd(&g.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return mult;
        }
        let sqf = g.square_free();
        let has_root = if sqf.degree() == Some(1) {
            let r = -sqf.coeff(0) / sqf.coeff(1);
            &r >= lo && &r <= hi
        } else {
            Sturm::new(&sqf).count(lo, hi) > 0
        };
        if !has_root {
            return mult;
        }
        mult += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn rational_and_irrational_roots() {
        // (2x - 1)(x^2 - 2) = 2x^3 - x^2 - 4x + 2
        let p = RationalPoly::from_ratios(&[(2, 1), (-4, 1), (-1, 1), (2, 1)]);
        let roots = real_roots_in(&p, &int(-2), &int(2));
        assert_eq!(roots.len(), 3);
        assert!((roots[0].to_f64() + 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(roots[1].exact(), Some(&rat(1, 2)));
        assert!((roots[2].to_f64() - 2f64.sqrt()).abs() < 1e-14);
        assert!(roots.iter().all(RealRoot::is_simple));
    }

    #[test]
    fn endpoint_roots_and_multiplicity() {
        // x^2 (x - 1)^3 on [0, 1]
        let x = RationalPoly::x();
        let xm1 = RationalPoly::from_ratios(&[(-1, 1), (1, 1)]);
        let p = &(&x * &x) * &(&(&xm1 * &xm1) * &xm1);
        let roots = real_roots_in(&p, &int(0), &int(1));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 2);
        assert_eq!(roots[1].multiplicity, 3);
    }

    #[test]
    fn double_irrational_root() {
        // (x^2 - 3)^2 has double roots at ±√3
        let q = RationalPoly::from_ratios(&[(-3, 1), (0, 1), (1, 1)]);
        let p = &q * &q;
        let roots = real_roots_in(&p, &int(0), &int(2));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[0].to_f64() - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn clustered_roots_are_separated() {
        // (x - 1/3)(x - 1/3 - 1/1000)(x + 5/7)
        let a = RationalPoly::new(vec![-rat(1, 3), int(1)]);
        let b = RationalPoly::new(vec![-rat(1003, 3000), int(1)]);
        let c = RationalPoly::new(vec![rat(5, 7), int(1)]);
        let p = &(&a * &b) * &c;
        let roots = real_roots_in(&p, &int(-1), &int(1));
        let got: Vec<_> = roots.iter().map(|r| r.exact().cloned().unwrap()).collect();
        assert_eq!(got, vec![rat(-5, 7), rat(1, 3), rat(1003, 3000)]);
    }
}
