//! A parameter sweep through the library entry point behind `rbi sweep`,
//! rendered as CSV.

use reverse_bernstein::commands::{cmd_sweep, Format, SweepOptions};

fn main() -> reverse_bernstein::Result<()> {
    let out = cmd_sweep(SweepOptions { k_max: 3, m_max: 3, trials: 50, band: 32, seed: 1, tol: 1e-6 })?;
    print!("{}", out.render(Format::Csv));
    std::process::exit(out.exit_code());
}
