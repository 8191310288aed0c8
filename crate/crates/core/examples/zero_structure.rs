//! Certifies that `J_m - p` vanishes exactly on the prescribed set, with
//! simple zeros and the square-wave sign pattern.

use reverse_bernstein::interpolation::verify_zero_structure;

fn main() -> reverse_bernstein::Result<()> {
    let r = verify_zero_structure(4, 3)?;
    println!(
        "k = 4, m = 3: {} of {} zeros, all simple {}, alternating {}, passed {}",
        r.zero_count, r.expected_count, r.all_simple, r.alternating, r.passed
    );
    for z in &r.zeros {
        let d = z.derivative.map_or("jump".to_string(), |d| format!("{d:+.3e}"));
        println!("  x = {:+.6}  r = {:+.1e}  r' = {d}  certified radius {:.2e}", z.angle, z.residual, z.radius);
    }
    let mut failed = 0;
    for k in 1..=8 {
        for m in 1..=6 {
            if !verify_zero_structure(k, m)?.passed {
                failed += 1;
            }
        }
    }
    println!("k ≤ 8, m ≤ 6: {failed} of 48 cells failed");
    Ok(())
}
