//! Multiprecision special functions shared by every other module.
//!
//! Reals and complexes are MPFR values (`rug::Float`, `rug::Complex`) carried
//! at the bit width of a [`PrecisionContext`]. Each function here returns a
//! value whose absolute error is below `10^-target_digits` when its inputs are
//! exact at working precision.

mod bernoulli;
mod delta;
mod gamma;
mod hurwitz;
mod incgamma;
mod precision;

pub use bernoulli::{bernoulli, even_bernoulli};
pub use delta::{delta_lattice, delta_lattice_with_cutoff, log_abs_delta, q_cutoff, Lattice};
pub use gamma::{beta, gamma_rational, gamma_real, log_beta, log_gamma, log_gamma_rational};
pub use hurwitz::{hurwitz_zeta, riemann_zeta};
pub use incgamma::{exp_integral_e1, upper_gamma};
pub use precision::{digits_from_error, digits_to_bits, PrecisionContext};

pub(crate) use gamma::{ln_two_pi, pi};

pub type BigReal = rug::Float;
pub type BigComplex = rug::Complex;
