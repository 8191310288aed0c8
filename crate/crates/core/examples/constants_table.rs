//! Sharp constants `C_{k,m}` and `D_{k,m}` for small `k` and `m`, exact and
//! in floating point.

use reverse_bernstein::constants::{constants, cross_validate};

fn main() -> reverse_bernstein::Result<()> {
    println!("{:>2} {:>2} {:>14} {:>22} {:>22}", "k", "m", "B_m", "C_km", "D_km");
    for k in 1..=3 {
        for m in 1..=5 {
            let r = constants(k, m)?;
            println!(
                "{k:>2} {m:>2} {:>14} {:>22.15e} {:>22.15e}   C = {}",
                r.b_m.to_string(),
                r.c_km,
                r.d_km,
                r.c_exact
            );
        }
    }
    // three independent routes to D agree as exact multiples of π^m
    let v = cross_validate(3, 4, 1e-12)?;
    println!(
        "\nD(3,4): extremal sup {}, recursion {}, resonance {}, exact agreement {}",
        v.d_sup_norm, v.d_recursion, v.d_resonance, v.exact_agreement
    );
    Ok(())
}
