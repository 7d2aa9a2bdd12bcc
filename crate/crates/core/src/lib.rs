//! High-precision numerics for imaginary quadratic fields.
//!
//! The crate evaluates and cross-checks the Chowla–Selberg formula together
//! with the identities that surround it: partial zeta jets at `s = 0`,
//! Dirichlet L-values, CM elliptic periods, Faltings heights of the curves
//! `A(p)`, ideal values of the Hecke character `ψ_M`, and period ratios of the
//! Fermat quotient Jacobians `C(r,s,t)`. Every "equal up to k*" statement is
//! discharged by [`relint`], which recognizes computed reals as rationals or
//! rational multiples of `√p`.
//!
//! All numeric operations take a [`PrecisionContext`] and are pure functions of
//! their inputs, so they can be fanned out across threads freely.

pub mod csperiods;
pub mod epstein;
pub mod error;
pub mod fermat;
pub mod heckechar;
pub mod lseries;
pub mod numkernel;
pub mod quadforms;
pub mod relint;

pub use error::{Error, Result};
pub use numkernel::{BigComplex, BigReal, Lattice, PrecisionContext};
pub use quadforms::{ClassGroup, Discriminant, QuadForm, QuadInteger};
