use super::bernoulli::even_bernoulli;
use super::PrecisionContext;
use crate::error::{domain, Error, Result};
use rug::ops::Pow;
use rug::Float;

const GUARD_BITS: u32 = 32;

/// Hurwitz zeta `H(x, s) = Σ_{n≥0} (n + x)^(-s)` for `0 < x ≤ 1`, continued
/// to all real `s ≠ 1` by Euler–Maclaurin summation.
///
/// `N ≈ 1.3·wd` terms are summed directly; the Bernoulli correction is then
/// added until a term falls below the working budget (about `wd/3` terms).
pub fn hurwitz_zeta(x: &Float, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 || *x > 1 {
        return domain(format!("hurwitz_zeta needs 0 < x <= 1, got {}", x.to_f64()));
    }
    if *s == 1 {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    let bits = ctx.bits() + GUARD_BITS;
    let wd = ctx.working_digits() as usize;
    let n_direct = ((1.3 * wd as f64).ceil() as u32).max(16);
    let s = Float::with_val(bits, s);
    let neg_s = Float::with_val(bits, -&s);

    let mut acc = Float::with_val(bits, 0);
    for n in 0..n_direct {
        let base = Float::with_val(bits, x + n);
        acc += base.pow(&neg_s);
    }

    let big = Float::with_val(bits, x + n_direct);
    let big_pow = Float::with_val(bits, (&big).pow(&neg_s)); // (N+x)^(-s)
    acc += Float::with_val(bits, &big_pow * &big) / Float::with_val(bits, &s - 1u32);
    acc += Float::with_val(bits, &big_pow / 2u32);

    // term_k = B_2k/(2k)! · s(s+1)…(s+2k-2) · (N+x)^(-s-2k+1)
    let eps = ctx.epsilon() >> 8u32;
    let big_sq = Float::with_val(bits, &big * &big);
    let mut rising = s.clone(); // s(s+1)…(s+2k-2), starts at k = 1
    let mut power = Float::with_val(bits, &big_pow / &big); // (N+x)^(-s-1)
    let mut factorial = Float::with_val(bits, 2); // (2k)!
    let max_terms = wd.max(32);
    let table = even_bernoulli(max_terms);
    for k in 1..=max_terms {
        let mut term = Float::with_val(bits, &table[k - 1]);
        term *= &rising;
        term *= &power;
        term /= &factorial;
        if Float::with_val(32, term.abs_ref()) < eps {
            return Ok(Float::with_val(ctx.bits(), acc));
        }
        acc += term;
        let two_k = 2 * k as u32;
        rising *= Float::with_val(bits, &s + (two_k - 1));
        rising *= Float::with_val(bits, &s + two_k);
        power /= &big_sq;
        factorial *= (two_k + 1) * (two_k + 2);
    }
    Err(Error::Precision {
        achieved: 0,
        requested: ctx.target_digits() as i64,
        context: "Euler-Maclaurin correction did not converge".into(),
    })
}

/// Riemann zeta for real `s ≠ 1` as `H(1, s)`.
pub fn riemann_zeta(s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    hurwitz_zeta(&ctx.float(1), s, ctx)
}
