//! The reverse Bernstein inequality on the circle.
//!
//! For `f` with no Fourier frequencies below `k` and `m ≥ 1`,
//!
//! ```text
//! ‖f^(m)‖_∞ ≥ C_{k,m} ‖f‖_∞,    C_{k,m} = (2k/π)^m / B_m,
//! ```
//!
//! with equality for `I^{m-1} c_k`, where `c_k` is the triangular cosine of
//! period `2π/k` and `I` the zero-average antiderivative.
//!
//! - [`constants`]: exact `B_m`, Euler numbers, `C_{k,m}` and `D_{k,m} = 1/C_{k,m}`.
//! - [`waves`]: `c_k`, `s_k`, the kernels `J_m` and the extremal functions,
//!   as exact piecewise polynomials ([`piecewise`]).
//! - [`interpolation`]: the `L¹`-optimal interpolants of `J_m` and the
//!   certified zero structure of the residual.
//! - [`verify`]: randomized and extremal checks.
//! - [`fourier`]: finite trigonometric series with spectral calculus.
//!
//! ```
//! use reverse_bernstein::constants::constants;
//!
//! let c = constants(2, 2).unwrap();
//! assert!((c.c_km - 32.0 / std::f64::consts::PI.powi(2)).abs() < 1e-14);
//! ```

pub mod commands;
pub mod constants;
pub mod error;
pub mod fourier;
pub mod interpolation;
pub mod numeric;
pub mod piecewise;
pub mod poly;
pub mod roots;
pub mod scaled;
pub mod verify;
pub mod waves;

pub use error::{Error, Result};
pub use fourier::TrigSeries;
pub use piecewise::CirclePiecewisePoly;
pub use scaled::PiScaled;
