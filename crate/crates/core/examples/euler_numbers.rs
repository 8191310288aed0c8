//! The zigzag numbers `B_m · m!` produced by the constant recursion.

use reverse_bernstein::constants::{b_constant, euler_number, poly_p};

fn main() {
    for m in 0..=15 {
        println!("m = {m:>2}  B_m = {:<24}  B_m·m! = {}", b_constant(m).to_string(), euler_number(m));
    }
    let p = poly_p(4);
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    println!("\nP_4(t) coefficients, ascending: [{}]", coeffs.join(", "));
}
