//! Randomized and extremal checks of `‖f^(m)‖_∞ ≥ C_{k,m} ‖f‖_∞` on the
//! tail space, and of the forward inequality `‖p'‖_∞ ≤ k ‖p‖_∞`.
//!
//! Every trial is reproducible from `(seed, k, m, index)`; trials run in
//! parallel and reports are assembled in index order.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::constants::constants;
use crate::error::{Error, Result};
use crate::fourier::TrigSeries;
use crate::poly::rational_to_f64;
use crate::scaled::PiScaled;
use crate::waves::make_extremal;

/// Default relative pass tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Largest band accepted for random samples.
pub const MAX_BAND: usize = 1024;

/// Sup-norm refinement is this much tighter than the pass tolerance.
const REFINEMENT_RATIO: f64 = 0.1;

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A real series with independent complex Gaussian coefficients on
/// `k ≤ j ≤ band`, mirrored to negative frequencies.
pub fn random_tail_sample(k: usize, band: usize, seed: u64) -> Result<TrigSeries> {
    check_k(k)?;
    if band < k {
        return Err(Error::InvalidArgument(format!("band {band} is below k = {k}")));
    }
    if band > MAX_BAND {
        return Err(Error::BandTooLarge { band, max: MAX_BAND });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positive: Vec<Complex64> =
        (1..=band).map(|j| if j < k { Complex64::zero() } else { gaussian(&mut rng) }).collect();
    Ok(TrigSeries::real_from_nonnegative(0.0, &positive))
}

/// A real polynomial of degree `≤ k` with Gaussian coefficients, including
/// the mean.
pub fn random_polynomial(k: usize, seed: u64) -> TrigSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mean: f64 = rng.sample(StandardNormal);
    let positive: Vec<Complex64> = (0..k).map(|_| gaussian(&mut rng)).collect();
    TrigSeries::real_from_nonnegative(mean, &positive)
}

/// Seed of trial `index` in the run `(seed, k, m)`.
pub fn trial_seed(seed: u64, k: usize, m: usize, index: usize) -> u64 {
    let mut z = seed;
    for v in [k as u64, m as u64, index as u64] {
        z = splitmix(z ^ splitmix(v));
    }
    z
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub band: usize,
    pub f_sup: f64,
    pub fm_sup: f64,
    /// `C_{k,m} · ‖f‖_∞`.
    pub bound: f64,
    /// `‖f^(m)‖_∞ - bound`.
    pub margin: f64,
    pub relative_margin: f64,
    pub passed: bool,
}

/// One reverse-Bernstein check on `f ∈ 𝒯_k`. Passes iff
/// `‖f^(m)‖_∞ ≥ C_{k,m} ‖f‖_∞ (1 - tol)`.
pub fn check_reverse_bernstein(f: &TrigSeries, k: usize, m: usize, tol: f64) -> Result<TrialRecord> {
    check_k(k)?;
    f.check_tail(k)?;
    let c = constants(k, m)?.c_km;
    let refinement = tol * REFINEMENT_RATIO;
    let f_sup = f.sup_norm_estimate(refinement);
    let fm_sup = f.nth_derivative(m).sup_norm_estimate(refinement);
    let bound = c * f_sup;
    let margin = fm_sup - bound;
    let relative_margin = if bound > 0.0 { margin / bound } else { 0.0 };
    Ok(TrialRecord {
        index: 0,
        seed: 0,
        band: f.band(),
        f_sup,
        fm_sup,
        bound,
        margin,
        relative_margin,
        passed: fm_sup >= bound * (1.0 - tol),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationRecord {
    pub k: usize,
    pub m: usize,
    /// `‖f^(m)‖_∞ / ‖f‖_∞` for `f = I^m c_k'`.
    pub ratio: PiScaled,
    pub c_km: PiScaled,
    /// `|ratio - C_{k,m}| / C_{k,m}`.
    pub gap: f64,
}

/// The extremal ratio from exact piecewise norms, against `C_{k,m}`.
pub fn saturation_test(k: usize, m: usize) -> Result<SaturationRecord> {
    let c = constants(k, m)?.c_exact;
    let f = make_extremal(k, m)?;
    let top = f.nth_derivative(m).sup_norm_exact();
    let bottom = f.sup_norm_exact();
    let ratio = match (top.as_exact(), bottom.as_exact()) {
        (Some(a), Some(b)) if !b.is_zero() => PiScaled::exact(a / b, top.pi_power - bottom.pi_power),
        _ => PiScaled::approx(top.to_f64() / bottom.to_f64(), 0),
    };
    let gap = match (ratio.as_exact(), c.as_exact()) {
        (Some(r), Some(cc)) if ratio.pi_power == c.pi_power => rational_to_f64(&((r - cc) / cc).abs()),
        _ => ((ratio.to_f64() - c.to_f64()) / c.to_f64()).abs(),
    };
    Ok(SaturationRecord { k, m, ratio, c_km: c, gap })
}

/// The reverse check on the Fourier truncation of `I^m c_k'` at `band`.
///
/// Truncation smooths the corners, so `‖f^(m)‖_∞` overshoots 1 for `m = 1`
/// (Gibbs) while `‖f‖_∞` converges to `D_{k,m}`.
pub fn truncated_extremal_trial(k: usize, m: usize, band: usize, tol: f64) -> Result<TrialRecord> {
    if band > MAX_BAND * 64 {
        return Err(Error::BandTooLarge { band, max: MAX_BAND * 64 });
    }
    // frequencies below k vanish exactly; drop their rounding residue
    let f = make_extremal(k, m)?.to_trig_series(band).project_tail(k);
    check_reverse_bernstein(&f, k, m, tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub k: usize,
    pub m: usize,
    pub trials: usize,
    pub max_band: usize,
    pub seed: u64,
    pub tol: f64,
    pub c_km: f64,
    pub records: Vec<TrialRecord>,
    pub failures: usize,
    /// `None` when no trials ran.
    pub min_margin: Option<f64>,
    pub min_relative_margin: Option<f64>,
    pub saturation_gap: f64,
    pub passed: bool,
}

impl VerificationReport {
    fn assemble(
        k: usize,
        m: usize,
        max_band: usize,
        seed: u64,
        tol: f64,
        mut records: Vec<TrialRecord>,
    ) -> Result<Self> {
        records.sort_by_key(|r| r.index);
        let failures = records.iter().filter(|r| !r.passed).count();
        let min_margin = records.iter().map(|r| r.margin).reduce(f64::min);
        let min_relative_margin = records.iter().map(|r| r.relative_margin).reduce(f64::min);
        let saturation = saturation_test(k, m)?;
        Ok(Self {
            k,
            m,
            trials: records.len(),
            max_band,
            seed,
            tol,
            c_km: constants(k, m)?.c_km,
            failures,
            min_margin,
            min_relative_margin,
            passed: failures == 0 && saturation.gap <= 1e-12,
            saturation_gap: saturation.gap,
            records,
        })
    }
}

/// `trials` random tail samples with bands uniform in `k..=max_band`.
pub fn run_reverse_trials(
    k: usize,
    m: usize,
    trials: usize,
    max_band: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    check_k(k)?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if max_band < k {
        return Err(Error::InvalidArgument(format!("band {max_band} is below k = {k}")));
    }
    if max_band > MAX_BAND {
        return Err(Error::BandTooLarge { band: max_band, max: MAX_BAND });
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|index| {
            let s = trial_seed(seed, k, m, index);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            rng.set_stream(1);
            let band = rng.random_range(k..=max_band);
            let f = random_tail_sample(k, band, s)?;
            let mut record = check_reverse_bernstein(&f, k, m, tol)?;
            record.index = index;
            record.seed = s;
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;
    VerificationReport::assemble(k, m, max_band, seed, tol, records)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForwardRecord {
    pub index: usize,
    pub seed: u64,
    pub p_sup: f64,
    pub dp_sup: f64,
    /// `‖p'‖_∞ / (k ‖p‖_∞)`, at most `1 + tol` in a passing record.
    pub ratio: f64,
    pub passed: bool,
}

/// Checks `‖p'‖_∞ ≤ k ‖p‖_∞ (1 + tol)` for `band(p) ≤ k`.
pub fn check_forward_bernstein(p: &TrigSeries, k: usize, tol: f64) -> Result<ForwardRecord> {
    if p.band() > k {
        return Err(Error::BandTooLarge { band: p.band(), max: k });
    }
    let refinement = tol * REFINEMENT_RATIO;
    let p_sup = p.sup_norm_estimate(refinement);
    let dp_sup = p.derivative().sup_norm_estimate(refinement);
    let limit = k as f64 * p_sup;
    let ratio = if limit > 0.0 { dp_sup / limit } else { 0.0 };
    Ok(ForwardRecord { index: 0, seed: 0, p_sup, dp_sup, ratio, passed: dp_sup <= limit * (1.0 + tol) })
}

#[derive(Clone, Debug, Serialize)]
pub struct ForwardReport {
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub records: Vec<ForwardRecord>,
    pub failures: usize,
    pub max_ratio: Option<f64>,
    /// `|‖(e^{ikx})'‖_∞ / k - 1|`.
    pub saturation_gap: f64,
    pub passed: bool,
}

/// `trials` random real polynomials of degree `≤ k`.
pub fn run_forward_trials(k: usize, trials: usize, seed: u64, tol: f64) -> Result<ForwardReport> {
    check_k(k)?;
    let mut records = (0..trials)
        .into_par_iter()
        .map(|index| {
            let s = trial_seed(seed, k, 0, index);
            let mut record = check_forward_bernstein(&random_polynomial(k, s), k, tol)?;
            record.index = index;
            record.seed = s;
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| r.index);
    let saturation = check_forward_bernstein(&TrigSeries::exponential(k as i64), k, tol)?;
    let saturation_gap = (saturation.ratio - 1.0).abs();
    let failures = records.iter().filter(|r| !r.passed).count();
    Ok(ForwardReport {
        k,
        trials,
        seed,
        tol,
        max_ratio: records.iter().map(|r| r.ratio).reduce(f64::max),
        failures,
        passed: failures == 0 && saturation_gap <= 1e-12,
        saturation_gap,
        records,
    })
}
