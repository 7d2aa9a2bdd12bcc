//! `ζ(s)`, `L(ε, s)` and `ζ_k(s) = ζ(s)·L(ε, s)` near `s = 0`.

use crate::error::Result;
use crate::numkernel::{hurwitz_zeta, ln_two_pi, log_gamma_rational, PrecisionContext};
use crate::quadforms::{kronecker_epsilon, Discriminant};
use rug::{Float, Integer, Rational};
use serde::Serialize;

/// Value and first derivative at `s = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SZeroJet {
    pub value: Float,
    pub deriv: Float,
}

impl SZeroJet {
    /// `deriv / value`; `None` when the value vanishes.
    pub fn dlog(&self) -> Option<Float> {
        if self.value.is_zero() {
            None
        } else {
            Some(Float::with_val(self.value.prec(), &self.deriv / &self.value))
        }
    }

    /// Jet of the product of two functions.
    pub fn product(&self, other: &Self) -> Self {
        let bits = self.value.prec().max(other.value.prec());
        let value = Float::with_val(bits, &self.value * &other.value);
        let deriv =
            Float::with_val(bits, &self.deriv * &other.value) + Float::with_val(bits, &self.value * &other.deriv);
        Self { value, deriv }
    }

    pub fn scaled(&self, k: &Float) -> Self {
        Self {
            value: Float::with_val(self.value.prec(), &self.value * k),
            deriv: Float::with_val(self.deriv.prec(), &self.deriv * k),
        }
    }
}

impl Serialize for SZeroJet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SZeroJet", 2)?;
        st.serialize_field("value", &self.value.to_string_radix(10, None))?;
        st.serialize_field("deriv", &self.deriv.to_string_radix(10, None))?;
        st.end()
    }
}

/// `ζ(0) = -1/2`, `ζ'(0) = -½·log 2π`.
pub fn riemann_jet(ctx: &PrecisionContext) -> SZeroJet {
    let bits = ctx.bits();
    let value = Float::with_val(bits, -0.5f64);
    let deriv = ln_two_pi(bits) / -2i32;
    SZeroJet { value, deriv }
}

/// `L(ε, 0) = -Σ_{0<a<d} ε(a)·a/d`, exactly.
pub fn dirichlet_value_exact(disc: &Discriminant) -> Rational {
    let d = disc.d() as i64;
    let mut sum = Integer::new();
    for a in 1..d {
        sum += kronecker_epsilon(a, disc) as i64 * a;
    }
    -Rational::from((sum, Integer::from(d)))
}

/// Jet of `L(ε, s) = d^(-s)·Σ ε(a)·H(a/d, s)` from Lerch's
/// `H(x, 0) = ½ - x` and `∂_s H(x, 0) = log Γ(x) - ½·log 2π`.
pub fn dirichlet_jet(disc: &Discriminant, ctx: &PrecisionContext) -> Result<SZeroJet> {
    let bits = ctx.bits();
    let d = disc.d();
    let value = Float::with_val(bits, &dirichlet_value_exact(disc));
    let half_log = ln_two_pi(bits) / 2u32;
    let mut sum = Float::with_val(bits, 0);
    for a in 1..d {
        let e = kronecker_epsilon(a as i64, disc);
        if e == 0 {
            continue;
        }
        let term = log_gamma_rational(a, d, ctx)? - &half_log;
        if e > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let log_d = Float::with_val(bits, d).ln();
    let deriv = sum - Float::with_val(bits, &log_d * &value);
    Ok(SZeroJet { value, deriv })
}

/// Jet of `ζ_k(s) = ζ(s)·L(ε, s)`; its value is `-h/w`.
pub fn zetak_jet(disc: &Discriminant, ctx: &PrecisionContext) -> Result<SZeroJet> {
    Ok(riemann_jet(ctx).product(&dirichlet_jet(disc, ctx)?))
}

/// `dlog ζ_k` at 0 in closed form: `log 2π - log d + (w/2h)·Σ ε(a) log Γ(a/d)`,
/// with `h` from the Dirichlet sum.
pub fn zetak_dlog0(disc: &Discriminant, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let d = disc.d();
    // 2h/w = L(ε, 0)
    let two_h_over_w = dirichlet_value_exact(disc);
    let mut sum = Float::with_val(bits, 0);
    for a in 1..d {
        match kronecker_epsilon(a as i64, disc) {
            1 => sum += log_gamma_rational(a, d, ctx)?,
            -1 => sum -= log_gamma_rational(a, d, ctx)?,
            _ => {}
        }
    }
    let weight = Float::with_val(bits, two_h_over_w.recip());
    Ok(ln_two_pi(bits) - Float::with_val(bits, d).ln() + sum * weight)
}

/// `L(ε, s) = d^(-s)·Σ ε(a)·H(a/d, s)` for real `s ≠ 1`.
pub fn dirichlet_l(disc: &Discriminant, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let d = disc.d();
    let mut sum = Float::with_val(bits, 0);
    for a in 1..d {
        let e = kronecker_epsilon(a as i64, disc);
        if e == 0 {
            continue;
        }
        let x = Float::with_val(bits, a) / d;
        let h = hurwitz_zeta(&x, s, ctx)?;
        if e > 0 {
            sum += h;
        } else {
            sum -= h;
        }
    }
    let scale = Float::with_val(bits, d).ln() * Float::with_val(bits, -s);
    Ok(sum * scale.exp())
}
