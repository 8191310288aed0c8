//! The extremal functions: their exact sup norms, zero sets, and a few
//! sample values of `f` and `f^(m)`.

use reverse_bernstein::constants::constants;
use reverse_bernstein::waves::make_extremal;

fn main() -> reverse_bernstein::Result<()> {
    for (k, m) in [(1, 1), (2, 2), (2, 3), (3, 4)] {
        let f = make_extremal(k, m)?;
        let fm = f.nth_derivative(m);
        let sup = f.sup_norm_exact();
        println!("k = {k}, m = {m}: ‖f‖∞ = {sup} ≈ {:.12}, D = {:.12}", sup.to_f64(), constants(k, m)?.d_km);
        println!("  ‖f^(m)‖∞ = {}", fm.sup_norm_exact());
        let zeros: Vec<String> = f.signed_zero_set()?.iter().map(|z| format!("{:.4}", z.angle())).collect();
        println!("  zeros of f: [{}]", zeros.join(", "));
        for i in 0..4 {
            let x = -std::f64::consts::PI + (i as f64 + 0.5) * std::f64::consts::FRAC_PI_2;
            println!("  x = {x:+.4}: f = {:+.6e}, f^(m) = {:+.3}", f.evaluate(x), fm.evaluate(x));
        }
    }
    Ok(())
}
