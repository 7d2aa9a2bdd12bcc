//! Imaginary quadratic fields through binary quadratic forms.

mod classgroup;
mod cornacchia;
mod discriminant;
pub mod factor;
mod form;
mod quadint;

pub use classgroup::{class_number_dirichlet, reduced_forms, ClassGroup};
pub use cornacchia::{cornacchia, cornacchia_all, sqrt_mod};
pub use discriminant::{
    epsilon_table, fundamental_range, is_fundamental, is_prime, kronecker_epsilon, kronecker_symbol, Discriminant,
};
pub use form::{dirichlet_compose, form_to_lattice, inverse_ideal_lattice, BigForm, QuadForm};
pub use quadint::QuadInteger;

pub(crate) fn ser_integer<S: serde::Serializer>(v: &rug::Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
