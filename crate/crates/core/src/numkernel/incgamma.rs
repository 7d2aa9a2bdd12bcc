use super::gamma::gamma_real;
use super::PrecisionContext;
use crate::error::{domain, Error, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Upper incomplete gamma `Γ(s, x) = ∫_x^∞ t^(s-1) e^(-t) dt` for real `s` and
/// `x > 0`.
///
/// For `x` above a precision-dependent crossover the Legendre continued
/// fraction is used (modified Lentz). Below it, `Γ(s) − γ(s, x)` by the power
/// series, with extra digits for the cancellation (`x/ln 10` from the
/// alternating series, `log10(1/|s|)` from the pole of `Γ(s)` near the
/// non-positive integers). Non-positive integer `s` goes through `E1`.
pub fn upper_gamma(s: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 {
        return domain("upper_gamma needs x > 0");
    }
    let xf = x.to_f64();
    let sf = s.to_f64();
    if xf >= crossover(sf, ctx) {
        return continued_fraction(s, x, ctx);
    }
    if s.is_integer() && *s <= 0 {
        let n = (-sf).round() as u32;
        return negative_integer_order(n, x, ctx);
    }
    series(s, x, ctx)
}

/// Exponential integral `E1(x) = Γ(0, x)` for `x > 0`.
pub fn exp_integral_e1(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    upper_gamma(&Float::new(ctx.bits()), x, ctx)
}

fn crossover(s: f64, ctx: &PrecisionContext) -> f64 {
    (0.12 * ctx.working_digits() as f64).max(s + 2.0).max(4.0)
}

fn continued_fraction(s: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits() + 32;
    let eps = ctx.epsilon() >> 16u32;
    let tiny = Float::with_val(bits, Float::i_exp(1, -(bits as i32) * 4));
    let s = Float::with_val(bits, s);
    let x = Float::with_val(bits, x);

    let mut b = Float::with_val(bits, &x + 1u32) - &s;
    let mut c = Float::with_val(bits, 1) / &tiny;
    let mut d = Float::with_val(bits, 1) / &b;
    let mut h = d.clone();
    let max_iter = 200_000u32;
    for i in 1..max_iter {
        let an = -Float::with_val(bits, Float::with_val(bits, i - &s) * i);
        b += 2u32;
        d = Float::with_val(bits, &an * &d) + &b;
        if d.is_zero() {
            d = tiny.clone();
        }
        c = Float::with_val(bits, &an / &c) + &b;
        if c.is_zero() {
            c = tiny.clone();
        }
        d.recip_mut();
        let del = Float::with_val(bits, &d * &c);
        h *= &del;
        if Float::with_val(bits, del - 1u32).abs() < eps {
            let prefactor = Float::with_val(bits, -&x).exp() * x.pow(&s);
            return Ok(Float::with_val(ctx.bits(), prefactor * h));
        }
    }
    Err(Error::Precision {
        achieved: 0,
        requested: ctx.target_digits() as i64,
        context: "incomplete gamma continued fraction".into(),
    })
}

fn extra_digits(s: f64, x: f64) -> u32 {
    let from_series = x / std::f64::consts::LN_10;
    let nearest = s.round();
    let from_pole =
        if nearest <= 0.0 && (s - nearest).abs() > 0.0 { (-(s - nearest).abs().log10()).max(0.0) } else { 0.0 };
    (from_series + from_pole).ceil() as u32 + 10
}

// Γ(s, x) = Γ(s) - Σ_{k≥0} (-1)^k x^(s+k) / (k! (s+k))
fn series(s: &Float, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let inner = ctx.raised(extra_digits(s.to_f64(), x.to_f64()));
    let bits = inner.bits();
    let eps = inner.epsilon() >> 8u32;
    let s = Float::with_val(bits, s);
    let x = Float::with_val(bits, x);

    let xs = Float::with_val(bits, (&x).pow(&s));
    let mut power = Float::with_val(bits, 1); // (-x)^k / k!
    let mut sum = Float::with_val(bits, 0);
    let mut k = 0u32;
    loop {
        let term = Float::with_val(bits, &power / Float::with_val(bits, &s + k));
        let done = k > 0 && Float::with_val(32, term.abs_ref()) < eps;
        sum += term;
        if done {
            break;
        }
        k += 1;
        power *= &x;
        power /= k;
        power = -power;
        if k > 1_000_000 {
            return Err(Error::Precision {
                achieved: 0,
                requested: ctx.target_digits() as i64,
                context: "incomplete gamma series".into(),
            });
        }
    }
    let lower = sum * xs;
    let full = gamma_real(&s, &inner)?;
    Ok(Float::with_val(ctx.bits(), full - lower))
}

// E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k·k!)
fn e1_series(x: &Float, ctx: &PrecisionContext) -> Float {
    let inner = ctx.raised(extra_digits(1.0, x.to_f64()));
    let bits = inner.bits();
    let eps = inner.epsilon() >> 8u32;
    let x = Float::with_val(bits, x);
    let mut sum = Float::with_val(bits, 0);
    let mut power = Float::with_val(bits, 1);
    let mut k = 1u32;
    loop {
        power *= &x;
        power /= k;
        power = -power;
        let term = Float::with_val(bits, &power / k);
        let done = Float::with_val(32, term.abs_ref()) < eps;
        sum += term;
        if done {
            break;
        }
        k += 1;
    }
    let euler = Float::with_val(bits, Constant::Euler);
    let out = -euler - x.ln() - sum;
    Float::with_val(ctx.bits(), out)
}

// Γ(-n, x) = ((-1)^n / n!) [E1(x) - e^(-x) Σ_{k<n} (-1)^k k! / x^(k+1)]
fn negative_integer_order(n: u32, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let inner = ctx.raised(5 + 2 * n);
    let bits = inner.bits();
    let x = Float::with_val(bits, x);
    let e1 = e1_series(&x, &inner);
    if n == 0 {
        return Ok(Float::with_val(ctx.bits(), e1));
    }
    let mut corr = Float::with_val(bits, 0);
    let mut fact = Float::with_val(bits, 1);
    let mut xpow = x.clone();
    for k in 0..n {
        if k > 0 {
            fact *= k;
            xpow *= &x;
        }
        let term = Float::with_val(bits, &fact / &xpow);
        if k % 2 == 0 {
            corr += term;
        } else {
            corr -= term;
        }
    }
    corr *= Float::with_val(bits, -&x).exp();
    let mut nfact = Float::with_val(bits, 1);
    for k in 2..=n {
        nfact *= k;
    }
    let mut out = (e1 - corr) / nfact;
    if n % 2 == 1 {
        out = -out;
    }
    Ok(Float::with_val(ctx.bits(), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_target(60).unwrap()
    }

    fn close(a: &Float, b: &Float, c: &PrecisionContext) -> bool {
        let scale = Float::with_val(c.bits(), b.abs_ref()).max(&c.float(1e-300));
        Float::with_val(c.bits(), a - b).abs() / scale < c.tolerance(2)
    }

    #[test]
    fn order_one_is_exponential() {
        let c = ctx();
        for x in [0.3, 2.0, 9.5, 40.0] {
            let x = c.float(x);
            let v = upper_gamma(&c.float(1), &x, &c).unwrap();
            let expected = Float::with_val(c.bits(), -&x).exp();
            assert!(close(&v, &expected, &c), "x = {}", x.to_f64());
        }
    }

    #[test]
    fn e1_matches_mpfr_eint() {
        // E1(x) = -Ei(-x); MPFR's eint covers negative arguments as E1.
        let c = ctx();
        for x in [0.05, 0.49, 1.0, 3.7, 12.0, 30.0] {
            let x = c.float(x);
            let v = exp_integral_e1(&x, &c).unwrap();
            let neg = Float::with_val(c.bits(), -&x);
            let oracle = -neg.eint();
            assert!(close(&v, &oracle, &c), "x = {}", x.to_f64());
        }
    }

    #[test]
    fn recurrence_across_the_crossover() {
        // Γ(s+1, x) = s·Γ(s, x) + x^s e^(-x)
        let c = ctx();
        for s in [-2.0, -1.0, -0.3, 1e-20, 0.5, 2.0, 3.0] {
            for x in [0.2, 1.1, 5.0, 8.0, 25.0] {
                let s = c.float(s);
                let x = c.float(x);
                let lhs = upper_gamma(&Float::with_val(c.bits(), &s + 1u32), &x, &c).unwrap();
                let g = upper_gamma(&s, &x, &c).unwrap();
                let rhs = g * &s + Float::with_val(c.bits(), (&x).pow(&s)) * Float::with_val(c.bits(), -&x).exp();
                assert!(close(&lhs, &rhs, &c), "s = {}, x = {}", s.to_f64(), x.to_f64());
            }
        }
    }

    #[test]
    fn series_and_fraction_agree_at_the_crossover() {
        let c = ctx();
        let x = c.float(crossover(0.5, &c));
        let s = c.float(0.25);
        let a = series(&s, &x, &c).unwrap();
        let b = continued_fraction(&s, &x, &c).unwrap();
        assert!(close(&a, &b, &c));
    }
}
