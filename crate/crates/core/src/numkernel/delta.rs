use super::gamma::two_pi;
use super::PrecisionContext;
use crate::error::{domain, Result};
use rug::ops::Pow;
use rug::{Complex, Float};

/// The lattice `scale·(ℤ + ℤτ)` with `Im τ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    pub tau: Complex,
    pub scale: Complex,
}

impl Lattice {
    pub fn new(tau: Complex, scale: Complex) -> Result<Self> {
        if *tau.imag() <= 0 {
            return domain("lattice needs Im(tau) > 0");
        }
        if scale.is_zero() {
            return domain("lattice scale must be nonzero");
        }
        Ok(Self { tau, scale })
    }
}

/// Number of q-product factors needed so that `|q|^N < 10^-(wd+10)`.
pub fn q_cutoff(lattice: &Lattice, ctx: &PrecisionContext) -> u32 {
    let im = lattice.tau.imag().to_f64();
    let per_factor = 2.0 * std::f64::consts::PI * im / std::f64::consts::LN_10;
    let needed = (ctx.working_digits() + 10) as f64;
    ((needed / per_factor).floor() as u32 + 1).max(2)
}

/// The weight-12 cusp form on lattices:
/// `Δ(λ(ℤ+ℤτ)) = λ^(-12)·(2π)^12·q·∏(1-q^n)^24`, `q = e^(2πiτ)`.
pub fn delta_lattice(lattice: &Lattice, ctx: &PrecisionContext) -> Result<Complex> {
    delta_lattice_with_cutoff(lattice, q_cutoff(lattice, ctx), ctx)
}

/// [`delta_lattice`] with an explicit number of product factors.
pub fn delta_lattice_with_cutoff(lattice: &Lattice, cutoff: u32, ctx: &PrecisionContext) -> Result<Complex> {
    if *lattice.tau.imag() <= 0 {
        return domain("delta_lattice needs Im(tau) > 0");
    }
    if lattice.scale.is_zero() {
        return domain("delta_lattice needs a nonzero scale");
    }
    let bits = ctx.bits() + 32;
    let tp = two_pi(bits);
    let exponent = Complex::with_val(bits, &lattice.tau * Complex::with_val(bits, (0, &tp)));
    let q = exponent.exp();

    let mut product = Complex::with_val(bits, 1);
    let mut qn = q.clone();
    for _ in 0..cutoff {
        product *= Complex::with_val(bits, 1 - &qn);
        qn *= &q;
    }
    let mut delta = product.pow(24u32);
    delta *= &q;
    delta *= tp.pow(12u32);
    let scale12 = Complex::with_val(bits, (&lattice.scale).pow(12u32));
    delta /= scale12;
    Ok(Complex::with_val(ctx.bits(), delta))
}

/// `log|Δ(L)|`.
pub fn log_abs_delta(lattice: &Lattice, ctx: &PrecisionContext) -> Result<Float> {
    let d = delta_lattice(lattice, ctx)?;
    Ok(Float::with_val(ctx.bits(), d.abs_ref()).ln())
}
