//! Randomized check of `‖f^(m)‖∞ ≥ C_{k,m}‖f‖∞` on polynomials with
//! spectrum in `|j| ≥ k`, plus the forward inequality `‖p'‖∞ ≤ k‖p‖∞` for
//! degree `≤ k`.

use reverse_bernstein::verify::{run_forward_trials, run_reverse_trials, saturation_test, truncated_extremal_trial};

fn main() -> reverse_bernstein::Result<()> {
    let (k, m) = (3, 2);
    let report = run_reverse_trials(k, m, 500, 64, 7, 1e-6)?;
    println!(
        "reverse, k = {k}, m = {m}: {} trials, {} failures, min relative margin {:.3e}",
        report.trials,
        report.failures,
        report.min_relative_margin.unwrap_or(f64::NAN)
    );
    let worst =
        report.records.iter().min_by(|a, b| a.relative_margin.total_cmp(&b.relative_margin)).expect("trials > 0");
    println!(
        "  tightest trial #{}: band {}, ‖f^(m)‖∞ = {:.6}, C‖f‖∞ = {:.6}",
        worst.index, worst.band, worst.fm_sup, worst.bound
    );

    let s = saturation_test(k, m)?;
    println!("extremal function: ratio {:.15}, C = {:.15}, gap {:.1e}", s.ratio, s.c_km, s.gap);
    let t = truncated_extremal_trial(k, m, 256, 1e-6)?;
    println!("its Fourier truncation to band 256: ‖f‖∞ = {:.6}, ‖f^(m)‖∞ = {:.6}", t.f_sup, t.fm_sup);

    let fwd = run_forward_trials(k, 500, 7, 1e-9)?;
    println!(
        "forward, degree ≤ {k}: {} failures, max ‖p'‖∞ / k‖p‖∞ = {:.6}",
        fwd.failures,
        fwd.max_ratio.unwrap_or(f64::NAN)
    );
    Ok(())
}
