//! The subcommands behind the `rbi` binary, as plain functions returning a
//! rendered [`CommandOutput`].
//!
//! CSV output uses a header row, `,` separators and shortest round-trip
//! floats; list-valued fields are joined with `;`. JSON output is an
//! [`OutputEnvelope`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constants::{constants, ConstantsRecord};
use crate::error::{Error, Result};
use crate::interpolation::{certify, residual_l1_with, NodeSet, Parity, Residual};
use crate::verify::{run_forward_trials, run_reverse_trials, saturation_test, MAX_BAND};
use crate::waves::make_extremal;

pub const MAX_K: usize = 64;
pub const MAX_M: usize = 30;

/// Sweeps may not exceed this many `(k, m)` cells times trials.
pub const MAX_SWEEP_WORK: usize = 2_000_000;

/// Samples per period in `extremal` CSV output.
const EXTREMAL_SAMPLES: usize = 512;

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_VERIFICATION_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub version: String,
}

impl OutputEnvelope {
    fn new(command: &str, parameters: Value, results: Value) -> Self {
        let parameters = match parameters {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Self { command: command.to_string(), parameters, results, version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub envelope: OutputEnvelope,
    pub csv: String,
    /// False when a verification failed; maps to exit status 1.
    pub success: bool,
}

impl CommandOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.envelope).expect("envelope serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.success {
            EXIT_SUCCESS
        } else {
            EXIT_VERIFICATION_FAILURE
        }
    }
}

/// Exit status for an error raised before any verification ran.
pub fn error_exit_code(_: &Error) -> i32 {
    EXIT_USAGE
}

fn usage(msg: String) -> Error {
    Error::InvalidArgument(msg)
}

fn check_range(name: &str, r: &RangeInclusive<usize>, max: usize) -> Result<()> {
    if r.is_empty() {
        return Err(usage(format!("{name} range {}..={} is empty", r.start(), r.end())));
    }
    if *r.start() == 0 {
        return Err(usage(format!("{name} must be at least 1")));
    }
    if *r.end() > max {
        return Err(usage(format!("{name} must be at most {max} (got {})", r.end())));
    }
    Ok(())
}

/// Shortest round-trip form, switching to exponent notation for very large
/// or small magnitudes; `-0` prints as `0`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&(v + 0.0)).expect("finite floats serialize")
    } else {
        v.to_string()
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

/// One row per `(k, m)`: `k,m,b_m,euler_number,c_km,d_km`.
pub fn cmd_constants(k_range: RangeInclusive<usize>, m_range: RangeInclusive<usize>) -> Result<CommandOutput> {
    check_range("k", &k_range, MAX_K)?;
    check_range("m", &m_range, MAX_M)?;
    let mut rows: Vec<ConstantsRecord> = Vec::new();
    for k in k_range.clone() {
        for m in m_range.clone() {
            rows.push(constants(k, m)?);
        }
    }
    let mut csv = String::from("k,m,b_m,euler_number,c_km,d_km\n");
    for r in &rows {
        writeln!(csv, "{},{},{},{},{},{}", r.k, r.m, r.b_m, r.euler_number, fmt_f64(r.c_km), fmt_f64(r.d_km)).unwrap();
    }
    let params = json!({
        "k": k_range.start(), "k_max": k_range.end(),
        "m": m_range.start(), "m_max": m_range.end(),
    });
    Ok(CommandOutput { envelope: OutputEnvelope::new("constants", params, to_value(&rows)), csv, success: true })
}

/// The extremal function `I^m c_k'` as exact pieces (JSON) or samples
/// `x,f,fm` over one period (CSV).
pub fn cmd_extremal(k: usize, m: usize) -> Result<CommandOutput> {
    check_range("k", &(k..=k), MAX_K)?;
    check_range("m", &(m..=m), MAX_M)?;
    let f = make_extremal(k, m)?;
    let fm = f.nth_derivative(m);
    let record = constants(k, m)?;
    let sup = f.sup_norm_exact();
    let mut csv = String::from("x,f,fm\n");
    for i in 0..=EXTREMAL_SAMPLES {
        let x = -PI + 2.0 * PI * i as f64 / EXTREMAL_SAMPLES as f64;
        writeln!(csv, "{},{},{}", fmt_f64(x), fmt_f64(f.evaluate(x)), fmt_f64(fm.evaluate(x))).unwrap();
    }
    let results = json!({
        "function": to_value(&f),
        "sup_norm": to_value(&sup),
        "d_km": record.d_km,
        "c_km": record.c_km,
        "zeros": f.signed_zero_set()?.iter().map(|z| z.angle()).collect::<Vec<_>>(),
    });
    Ok(CommandOutput {
        envelope: OutputEnvelope::new("extremal", json!({"k": k, "m": m}), results),
        csv,
        success: true,
    })
}

/// Interpolant of `J_m`, its zero structure, `‖J_m - p‖₁` and `D_{k,m}`.
pub fn cmd_interpolate(k: usize, m: usize) -> Result<CommandOutput> {
    check_range("k", &(k..=k), MAX_K)?;
    check_range("m", &(m..=m), MAX_M)?;
    let set = NodeSet::for_kernel(k, m)?;
    let residual = Residual::for_kernel(k, m)?;
    let report = certify(&set, &residual);
    let l1 = residual_l1_with(&set, &residual);
    let d = constants(k, m)?.d_km;
    let discrepancy = (l1 - d).abs();
    let p = residual.polynomial();
    let parity = match set.parity {
        Parity::Odd => "odd",
        Parity::Even => "even",
    };
    let zeros: Vec<String> = set.zero_angles().into_iter().map(fmt_f64).collect();
    let coeffs: Vec<String> = p
        .terms()
        .filter(|(j, c)| *j >= 0 && c.norm() != 0.0)
        .map(|(j, c)| format!("{j}:{}:{}", fmt_f64(c.re), fmt_f64(c.im)))
        .collect();
    let mut csv = String::from(
        "k,m,parity,band,residual_l1,d_km,discrepancy,zero_count,zero_structure_passed,zeros,coefficients\n",
    );
    writeln!(
        csv,
        "{k},{m},{parity},{},{},{},{},{},{},{},{}",
        p.band(),
        fmt_f64(l1),
        fmt_f64(d),
        fmt_f64(discrepancy),
        report.zero_count,
        report.passed,
        zeros.join(";"),
        coeffs.join(";")
    )
    .unwrap();
    let results = json!({
        "parity": parity,
        "nodes": to_value(&set),
        "coefficients": to_value(p),
        "zero_structure": to_value(&report),
        "residual_l1": l1,
        "d_km": d,
        "discrepancy": discrepancy,
    });
    Ok(CommandOutput {
        envelope: OutputEnvelope::new("interpolate", json!({"k": k, "m": m}), results),
        csv,
        success: report.passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub k: usize,
    pub m: usize,
    pub trials: usize,
    pub band: usize,
    pub seed: u64,
    pub tol: f64,
    /// Check `‖p'‖_∞ ≤ k‖p‖_∞` on degree-`k` polynomials instead.
    pub forward: bool,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
        return Err(usage(format!("tolerance must be in (0, 1), got {tol}")));
    }
    Ok(())
}

pub fn cmd_verify(o: VerifyOptions) -> Result<CommandOutput> {
    check_range("k", &(o.k..=o.k), MAX_K)?;
    check_tol(o.tol)?;
    if o.forward {
        let report = run_forward_trials(o.k, o.trials, o.seed, o.tol)?;
        let mut csv = String::from("index,seed,p_sup,dp_sup,ratio,passed\n");
        for r in &report.records {
            writeln!(
                csv,
                "{},{},{},{},{},{}",
                r.index,
                r.seed,
                fmt_f64(r.p_sup),
                fmt_f64(r.dp_sup),
                fmt_f64(r.ratio),
                r.passed
            )
            .unwrap();
        }
        let params = json!({"k": o.k, "trials": o.trials, "seed": o.seed, "tol": o.tol, "forward": true});
        return Ok(CommandOutput {
            success: report.passed,
            envelope: OutputEnvelope::new("verify", params, to_value(&report)),
            csv,
        });
    }
    check_range("m", &(o.m..=o.m), MAX_M)?;
    if o.band < o.k || o.band > MAX_BAND {
        return Err(usage(format!("band must be in {}..={MAX_BAND} (got {})", o.k, o.band)));
    }
    let report = run_reverse_trials(o.k, o.m, o.trials, o.band, o.seed, o.tol)?;
    let mut csv = String::from("index,seed,band,f_sup,fm_sup,bound,margin,relative_margin,passed\n");
    for r in &report.records {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            r.index,
            r.seed,
            r.band,
            fmt_f64(r.f_sup),
            fmt_f64(r.fm_sup),
            fmt_f64(r.bound),
            fmt_f64(r.margin),
            fmt_f64(r.relative_margin),
            r.passed
        )
        .unwrap();
    }
    let params =
        json!({"k": o.k, "m": o.m, "trials": o.trials, "band": o.band, "seed": o.seed, "tol": o.tol, "forward": false});
    Ok(CommandOutput {
        success: report.passed,
        envelope: OutputEnvelope::new("verify", params, to_value(&report)),
        csv,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub k: usize,
    pub m: usize,
    pub trials: usize,
    pub failures: usize,
    pub min_margin: Option<f64>,
    pub saturation_gap: f64,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub k_max: usize,
    pub m_max: usize,
    pub trials: usize,
    pub band: usize,
    pub seed: u64,
    pub tol: f64,
}

/// Every `(k, m)` with `k ≤ k_max`, `m ≤ m_max`; CSV columns
/// `k,m,min_margin,saturation_gap,failures` (`min_margin` empty when
/// `trials = 0`).
pub fn cmd_sweep(o: SweepOptions) -> Result<CommandOutput> {
    check_range("k", &(1..=o.k_max), MAX_K)?;
    check_range("m", &(1..=o.m_max), MAX_M)?;
    check_tol(o.tol)?;
    if o.band > MAX_BAND {
        return Err(usage(format!("band must be at most {MAX_BAND}")));
    }
    let work = o.k_max * o.m_max * o.trials.max(1);
    if work > MAX_SWEEP_WORK {
        return Err(usage(format!("sweep of {work} trials exceeds the limit {MAX_SWEEP_WORK}")));
    }
    let grid: Vec<(usize, usize)> = (1..=o.k_max).flat_map(|k| (1..=o.m_max).map(move |m| (k, m))).collect();
    let cells = grid
        .par_iter()
        .map(|&(k, m)| -> Result<SweepCell> {
            if o.trials == 0 {
                let gap = saturation_test(k, m)?.gap;
                return Ok(SweepCell {
                    k,
                    m,
                    trials: 0,
                    failures: 0,
                    min_margin: None,
                    saturation_gap: gap,
                    passed: gap <= 1e-12,
                });
            }
            let r = run_reverse_trials(k, m, o.trials, o.band.max(k), o.seed, o.tol)?;
            Ok(SweepCell {
                k,
                m,
                trials: r.trials,
                failures: r.failures,
                min_margin: r.min_margin,
                saturation_gap: r.saturation_gap,
                passed: r.passed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut csv = String::from("k,m,min_margin,saturation_gap,failures\n");
    for c in &cells {
        let margin = c.min_margin.map(fmt_f64).unwrap_or_default();
        writeln!(csv, "{},{},{},{},{}", c.k, c.m, margin, fmt_f64(c.saturation_gap), c.failures).unwrap();
    }
    let success = cells.iter().all(|c| c.passed);
    let params =
        json!({"k_max": o.k_max, "m_max": o.m_max, "trials": o.trials, "band": o.band, "seed": o.seed, "tol": o.tol});
    Ok(CommandOutput { envelope: OutputEnvelope::new("sweep", params, to_value(&cells)), csv, success })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_rows() {
        let out = cmd_constants(1..=1, 1..=2).unwrap();
        let lines: Vec<&str> = out.csv.lines().collect();
        assert_eq!(lines.len(), 3);
        let c11: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
        let c12: f64 = lines[2].split(',').nth(4).unwrap().parse().unwrap();
        assert!((c11 - 2.0 / PI).abs() < 1e-15);
        assert!((c12 - 8.0 / (PI * PI)).abs() < 1e-15);
        assert!(cmd_constants(1..=1, 0..=2).is_err());
        assert!(cmd_constants(1..=65, 1..=1).is_err());
        assert!(cmd_constants(1..=1, 1..=31).is_err());
    }

    #[test]
    fn envelope_round_trips() {
        let out = cmd_constants(1..=2, 1..=3).unwrap();
        let text = out.render(Format::Json);
        let back: OutputEnvelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out.envelope);
    }

    #[test]
    fn sweep_without_trials_is_saturation_only() {
        let out = cmd_sweep(SweepOptions { k_max: 2, m_max: 2, trials: 0, band: 8, seed: 1, tol: 1e-6 }).unwrap();
        assert!(out.success);
        assert_eq!(out.csv.lines().count(), 5);
        assert!(out.csv.lines().nth(1).unwrap().starts_with("1,1,,0.0,"));
    }
}
