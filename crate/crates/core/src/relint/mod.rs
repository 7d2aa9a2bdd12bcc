//! Recognizing computed reals as rationals, rational multiples of `√p`, or
//! small integer relations.

mod pslq;
mod rational;

pub use pslq::{pslq, Relation};
pub use rational::{recognize_rational, recognize_sqrtp};
