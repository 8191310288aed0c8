//! Best `L¹` approximation of the kernel `J_m` by trigonometric polynomials
//! of degree below `k`: the interpolant, its error, and the constant it
//! attains.

use reverse_bernstein::constants::constants;
use reverse_bernstein::interpolation::{interpolate_j, residual_l1, NodeSet};

fn main() -> reverse_bernstein::Result<()> {
    for (k, m) in [(2, 1), (3, 2), (4, 3), (5, 5)] {
        let nodes = NodeSet::for_kernel(k, m)?;
        let p = interpolate_j(k, m)?;
        let l1 = residual_l1(k, m)?;
        let d = constants(k, m)?.d_km;
        let set: Vec<String> = nodes.full_zero_set().iter().map(|t| format!("{t}π")).collect();
        println!("k = {k}, m = {m} ({:?}): zeros of J_m - p at [{}]", nodes.parity, set.join(", "));
        for (j, c) in p.terms().filter(|&(j, _)| j >= 0) {
            println!("  ĉ({j}) = {:+.15e} {:+.15e}i", c.re, c.im);
        }
        println!("  ‖J_m - p‖₁ = {l1:.15e}, D = {d:.15e}, difference {:.1e}", (l1 - d).abs());
    }
    Ok(())
}
