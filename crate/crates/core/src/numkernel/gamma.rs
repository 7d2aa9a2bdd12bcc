use super::bernoulli::even_bernoulli;
use super::PrecisionContext;
use crate::error::{domain, Error, Result};
use rug::float::Constant;
use rug::{Float, Integer};

// Extra bits carried inside the kernel: the shifted Stirling terms are of
// size ~ wd·log(wd), so absolute accuracy needs a few bits beyond the context.
const KERNEL_GUARD_BITS: u32 = 64;

pub(crate) fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub(crate) fn two_pi(bits: u32) -> Float {
    pi(bits) * 2u32
}

pub(crate) fn ln_two_pi(bits: u32) -> Float {
    two_pi(bits).ln()
}

/// `log Γ(x)` for real `x > 0`.
///
/// The argument is shifted to `x + m` with `x + m ≥ 1.2·(working digits)` and
/// the Stirling series is summed until the first omitted term, which bounds
/// the remainder for real positive arguments, falls below the working budget.
pub fn log_gamma(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if x.is_nan() || *x <= 0 {
        return domain(format!("log_gamma needs x > 0, got {}", x.to_f64()));
    }
    let bits = ctx.bits() + KERNEL_GUARD_BITS;
    let x = Float::with_val(bits, x);
    let threshold = (1.2 * ctx.working_digits() as f64).ceil();
    let xf = x.to_f64();
    let shift = if xf >= threshold { 0u32 } else { (threshold - xf).ceil() as u32 };

    let mut prod = Float::with_val(bits, 1);
    for k in 0..shift {
        prod *= Float::with_val(bits, &x + k);
    }
    let y = Float::with_val(bits, &x + shift);
    let series = stirling(&y, bits, ctx)?;
    let out = series - prod.ln();
    Ok(Float::with_val(ctx.bits(), out))
}

fn stirling(y: &Float, bits: u32, ctx: &PrecisionContext) -> Result<Float> {
    let half = Float::with_val(bits, 0.5);
    let mut acc = Float::with_val(bits, y - &half) * y.clone().ln();
    acc -= y;
    acc += ln_two_pi(bits) / 2u32;

    let eps = ctx.epsilon() >> 8u32;
    let y2 = Float::with_val(bits, y * y);
    let mut ypow = y.clone();
    let mut count = 32usize;
    let mut table = even_bernoulli(count);
    let mut k = 1usize;
    loop {
        if k > count {
            count *= 2;
            table = even_bernoulli(count);
            if count > 8192 {
                return Err(Error::Precision {
                    achieved: 0,
                    requested: ctx.target_digits() as i64,
                    context: "Stirling series did not converge".into(),
                });
            }
        }
        let b = &table[k - 1];
        let two_k = 2 * k as u32;
        let mut term = Float::with_val(bits, b);
        term /= two_k * (two_k - 1);
        term /= &ypow;
        let small = Float::with_val(32, term.abs_ref()) < eps;
        if small {
            break;
        }
        acc += term;
        ypow *= &y2;
        k += 1;
    }
    Ok(acc)
}

fn check_rational_arg(a: u64, d: u64) -> Result<()> {
    if a == 0 || a >= d {
        return domain(format!("gamma_rational needs 0 < a < d, got a={a}, d={d}"));
    }
    if Integer::from(a).gcd(&Integer::from(d)) != 1 {
        return domain(format!("gamma_rational needs gcd(a, d) = 1, got a={a}, d={d}"));
    }
    Ok(())
}

/// `log Γ(a/d)` for `0 < a < d`, `gcd(a, d) = 1`.
pub fn log_gamma_rational(a: u64, d: u64, ctx: &PrecisionContext) -> Result<Float> {
    check_rational_arg(a, d)?;
    let x = Float::with_val(ctx.bits() + KERNEL_GUARD_BITS, a) / d;
    log_gamma(&x, ctx)
}

/// `Γ(a/d)` for `0 < a < d`, `gcd(a, d) = 1`.
pub fn gamma_rational(a: u64, d: u64, ctx: &PrecisionContext) -> Result<Float> {
    Ok(log_gamma_rational(a, d, ctx)?.exp())
}

/// Euler's beta function `B(u, v) = Γ(u)Γ(v)/Γ(u+v)` for `u, v > 0`.
pub fn beta(u: &Float, v: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(log_beta(u, v, ctx)?.exp())
}

pub fn log_beta(u: &Float, v: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *u <= 0 || *v <= 0 {
        return domain("beta needs positive arguments");
    }
    let sum = Float::with_val(ctx.bits() + KERNEL_GUARD_BITS, u + v);
    Ok(log_gamma(u, ctx)? + log_gamma(v, ctx)? - log_gamma(&sum, ctx)?)
}

/// `Γ(s)` for any real `s` that is not a non-positive integer, via the
/// recurrence down from `s + n > 0`.
pub fn gamma_real(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits() + KERNEL_GUARD_BITS;
    let mut shifted = Float::with_val(bits, s);
    let mut denom = Float::with_val(bits, 1);
    while shifted <= 0 {
        if shifted.is_integer() {
            return Err(Error::Pole(format!("gamma at {}", s.to_f64())));
        }
        denom *= &shifted;
        shifted += 1u32;
    }
    let g = log_gamma(&shifted, &ctx.raised(2))?.exp();
    Ok(Float::with_val(ctx.bits(), g / denom))
}
