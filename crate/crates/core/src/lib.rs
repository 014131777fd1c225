//! Numerical laboratory for shifted convolution sums
//!
//! S_h(X) = Σ_{n ≤ X} λ_f(n + h) r_ℓ(n),
//!
//! where λ_f are normalized Hecke eigenvalues of a cusp form and r_ℓ(n) counts
//! representations of n as a sum of ℓ squares.
//!
//! The crate implements every object used in the analysis of such sums and
//! cross-checks them numerically:
//!
//! * [`arith`]: representation counts, Jacobi symbols, the unit ε_d, modulus factorizations.
//! * [`coeffs`]: Ramanujan τ via an eta-product expansion, coefficient files, Hecke checks.
//! * [`expsums`]: Gauss, Kloosterman and Salié sums and the twisted character sums.
//! * [`special`]: Bessel functions (real and imaginary order), Voronoi kernels,
//!   the Fresnel-type integral Φ₀, theta sums, and the adaptive quadrature engine.
//! * [`voronoi`]: smooth windows, Bessel transforms and two-sided Voronoi identity checks.
//! * [`circle`]: Jutila's approximation to the unit interval and Farey dissections.
//! * [`shifted`]: direct and smoothed shifted sums, circle-method reconstruction, exponent fits.
//! * [`cli`]: the command-line surface and CSV output.
//!
//! Throughout, `e(x)` means `exp(2πi x)`.

pub mod arith;
pub mod circle;
pub mod cli;
pub mod coeffs;
pub mod error;
pub mod expsums;
pub mod shifted;
pub mod special;
pub mod voronoi;

pub use error::{Error, Result};
pub use num_complex::Complex64;
