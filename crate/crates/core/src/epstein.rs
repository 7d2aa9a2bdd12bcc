//! Epstein zeta `Z_Q(s) = Σ' Q(x, y)^(-s)` of a positive binary form and its
//! continuation to `s = 0`.
//!
//! With `α = 2π/√d` the theta series of `Q` is self-dual at `t = α`, and
//! splitting its Mellin integral there gives
//!
//! ```text
//! Γ(s)·α^(-s)·Z(s) = 1/(s-1) - 1/s
//!     + Σ' [ (αQ)^(-s)·Γ(s, αQ) + (αQ)^(s-1)·Γ(1-s, αQ) ]
//! ```
//!
//! which converges like `e^(-αQ)` for every `s`. At `s = 0` this yields
//! `Z(0) = -1` and `Z'(0) = -1 - γ - log α + Σ' [E1(αQ) + e^(-αQ)/(αQ)]`.

use crate::error::{domain, Error, Result};
use crate::lseries::SZeroJet;
use crate::numkernel::{
    digits_from_error, even_bernoulli, exp_integral_e1, gamma_real, hurwitz_zeta, log_gamma, pi, riemann_zeta,
    upper_gamma, PrecisionContext,
};
use crate::quadforms::{ClassGroup, QuadForm};
use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};
use std::collections::BTreeMap;

/// Values `n = Q(x, y) ≤ n_max` over nonzero `(x, y)` with their multiplicities.
pub fn representation_counts(f: &QuadForm, n_max: u64) -> Vec<(u64, u64)> {
    let (a, b, c) = (f.a as i128, f.b as i128, f.c as i128);
    let d = -(f.discriminant() as i128);
    let n_max = n_max as i128;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    // 4a·Q = (2ax + by)² + d·y², so d·y² ≤ 4a·n_max
    let y_max = ((4 * a * n_max / d) as f64).sqrt() as i128 + 1;
    for y in -y_max..=y_max {
        let room = 4 * a * n_max - d * y * y;
        if room < 0 {
            continue;
        }
        let r = (room as f64).sqrt() as i128 + 1;
        // (2ax + by)² ≤ room
        let lo = (-b * y - r).div_euclid(2 * a) - 1;
        let hi = (-b * y + r).div_euclid(2 * a) + 1;
        for x in lo..=hi {
            if x == 0 && y == 0 {
                continue;
            }
            let q = a * x * x + b * x * y + c * y * y;
            if q <= n_max {
                *counts.entry(q as u64).or_insert(0) += 1;
            }
        }
    }
    counts.into_iter().collect()
}

/// The data shared by all evaluations of one form's continuation.
struct Continuation {
    ctx: PrecisionContext,
    alpha: Float,
    /// `(αn, r(n))` for every represented `n` below the cutoff.
    shells: Vec<(Float, u64)>,
}

impl Continuation {
    fn new(f: &QuadForm, ctx: &PrecisionContext) -> Result<Self> {
        if !f.is_reduced() {
            return domain(format!("{f} is not reduced"));
        }
        let bits = ctx.bits();
        let d = -f.discriminant();
        let alpha = pi(bits) * 2u32 / Float::with_val(bits, d).sqrt();
        // terms decay like r(n)·e^(-αn)/(αn); leave room for the shell counts
        let x_max = (ctx.working_digits() as f64 + 5.0) * std::f64::consts::LN_10 + 12.0;
        let n_max = (x_max / alpha.to_f64()).ceil() as u64 + 1;
        let shells =
            representation_counts(f, n_max).into_iter().map(|(n, r)| (Float::with_val(bits, &alpha * n), r)).collect();
        Ok(Self { ctx: *ctx, alpha, shells })
    }

    /// `Γ(s)·α^(-s)·Z(s)`.
    fn completed(&self, s: &Float) -> Result<Float> {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        let one_minus_s = Float::with_val(bits, 1 - s);
        let s_minus_one = Float::with_val(bits, s - 1u32);
        let neg_s = Float::with_val(bits, -s);
        let terms: Vec<Result<Float>> = self
            .shells
            .par_iter()
            .map(|(x, r)| {
                let first = upper_gamma(s, x, ctx)? * Float::with_val(bits, x.pow(&neg_s));
                let second = upper_gamma(&one_minus_s, x, ctx)? * Float::with_val(bits, x.pow(&s_minus_one));
                Ok((first + second) * *r)
            })
            .collect();
        let mut sum = Float::with_val(bits, 0);
        for t in terms {
            sum += t?;
        }
        let poles = Float::with_val(bits, s_minus_one.recip_ref()) - Float::with_val(bits, s.recip_ref());
        Ok(sum + poles)
    }

    fn z(&self, s: &Float) -> Result<Float> {
        let bits = self.ctx.bits();
        if *s == 1 {
            return Err(Error::Pole("Epstein zeta at s = 1".into()));
        }
        if s.is_integer() && *s <= 0 {
            // Z(0) = -1; Z(-n) = 0 from the zero of 1/Γ
            return Ok(Float::with_val(bits, if s.is_zero() { -1 } else { 0 }));
        }
        let lam = self.completed(s)?;
        let alpha_s = Float::with_val(bits, (&self.alpha).pow(s));
        Ok(lam * alpha_s / gamma_real(s, &self.ctx)?)
    }
}

/// `Z_Q(s)` for real `s` through the theta-split continuation.
pub fn epstein_continued(f: &QuadForm, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let inner = ctx.raised(10);
    let v = Continuation::new(f, &inner)?.z(s)?;
    Ok(Float::with_val(ctx.bits(), v))
}

/// Jet of `Z_Q` at `s = 0` by central differences.
///
/// Steps `h` and `2h` with `h = 10^(-⌈wd/4⌉)`, one Richardson step for both the
/// value and the derivative, evaluated with `wd/4 + 10` extra digits to absorb
/// the division by `h`. The value is compared with its exact limit `-1`, and a
/// shortfall below the target is reported as a precision failure.
pub fn epstein_jet(f: &QuadForm, ctx: &PrecisionContext) -> Result<SZeroJet> {
    let wd = ctx.working_digits();
    let quarter = wd.div_ceil(4);
    let inner = ctx.raised(quarter + 10);
    let cont = Continuation::new(f, &inner)?;
    let bits = inner.bits();
    let h = Float::with_val(bits, 10).pow(-(quarter as i32));
    let at = |k: i32| -> Result<Float> { cont.z(&Float::with_val(bits, &h * k)) };
    let (p1, m1, p2, m2) = (at(1)?, at(-1)?, at(2)?, at(-2)?);

    let d1 = Float::with_val(bits, &p1 - &m1) / Float::with_val(bits, &h * 2u32);
    let d2 = Float::with_val(bits, &p2 - &m2) / Float::with_val(bits, &h * 4u32);
    let deriv = (d1 * 4u32 - d2) / 3u32;
    let v1 = Float::with_val(bits, &p1 + &m1) / 2u32;
    let v2 = Float::with_val(bits, &p2 + &m2) / 2u32;
    let value = (v1 * 4u32 - v2) / 3u32;

    let err = Float::with_val(bits, &value + 1u32);
    let achieved = digits_from_error(&err, wd);
    if achieved < ctx.target_digits() as i64 {
        return Err(Error::Precision {
            achieved,
            requested: ctx.target_digits() as i64,
            context: format!("Epstein continuation for {f}"),
        });
    }
    Ok(SZeroJet { value: Float::with_val(ctx.bits(), value), deriv: Float::with_val(ctx.bits(), deriv) })
}

/// Jet of `Z_Q` at `s = 0` from the closed form of the continuation at 0.
pub fn epstein_jet_closed(f: &QuadForm, ctx: &PrecisionContext) -> Result<SZeroJet> {
    let inner = ctx.raised(10);
    let cont = Continuation::new(f, &inner)?;
    let bits = inner.bits();
    let terms: Vec<Result<Float>> = cont
        .shells
        .par_iter()
        .map(|(x, r)| {
            let tail = Float::with_val(bits, -x).exp() / x;
            Ok((exp_integral_e1(x, &inner)? + tail) * *r)
        })
        .collect();
    let mut sum = Float::with_val(bits, 0);
    for t in terms {
        sum += t?;
    }
    let euler = Float::with_val(bits, Constant::Euler);
    let deriv = sum - 1u32 - euler - Float::with_val(bits, cont.alpha.ln_ref());
    Ok(SZeroJet { value: Float::with_val(ctx.bits(), -1), deriv: Float::with_val(ctx.bits(), deriv) })
}

/// Jet of the partial zeta function `(1/w)·Z_Q`.
pub fn partial_zeta_jet(f: &QuadForm, w: u32, ctx: &PrecisionContext) -> Result<SZeroJet> {
    let jet = epstein_jet(f, ctx)?;
    Ok(jet.scaled(&Float::with_val(ctx.bits(), Rational::from((1, w)))))
}

/// Epstein jets of every class, in class order, computed in parallel.
pub fn class_jets(group: &ClassGroup, ctx: &PrecisionContext) -> Result<Vec<SZeroJet>> {
    group.forms.par_iter().map(|f| epstein_jet(f, ctx)).collect()
}

/// `Z_Q(s)` for `s > 1.1` by summing the lattice directly, row by row.
///
/// Row `y = 0` is `2a^(-s)·ζ(2s)`. For `1 ≤ y ≤ Y` the row sum over `x` is
/// taken directly for `|x| ≤ X` and the two tails by Euler–Maclaurin, whose
/// derivatives come from the Taylor recurrence of `(quadratic)^(-s)`. Rows with
/// `y > Y` are replaced by their integrals over `x`; the difference is a
/// Poisson remainder of size `e^(-π√d·y/a)`, below the budget by choice of `Y`.
pub fn epstein_direct(f: &QuadForm, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *s <= 1.1f64 {
        return domain(format!("epstein_direct needs s > 1.1, got {}", s.to_f64()));
    }
    if f.a <= 0 || f.discriminant() >= 0 {
        return domain(format!("{f} is not positive definite"));
    }
    let inner = ctx.raised(10);
    let bits = inner.bits();
    let wd = inner.working_digits() as f64;
    let s = Float::with_val(bits, s);
    let a = f.a as f64;
    let d = -(f.discriminant()) as f64;

    let two_s = Float::with_val(bits, &s * 2u32);
    let a_big = Float::with_val(bits, f.a);
    let a_neg_s = Float::with_val(bits, (&a_big).pow(&Float::with_val(bits, -&s)));
    let mut total = riemann_zeta(&two_s, &inner)? * &a_neg_s * 2u32;

    let y_cut = ((wd + 20.0) * std::f64::consts::LN_10 * a / (std::f64::consts::PI * d.sqrt())).ceil() as i64;
    let y_cut = y_cut.max(1);

    // rows 1..=Y, each counted twice for (x, y) ↦ (-x, -y)
    let rows: Vec<Result<Float>> = (1..=y_cut).into_par_iter().map(|y| row_sum(f, y, &s, &inner)).collect();
    for r in rows {
        total += r? * 2u32;
    }

    // rows y > Y by their integrals
    let half = Float::with_val(bits, 0.5f64);
    let s_half = Float::with_val(bits, &s - &half);
    let log_ratio = log_gamma(&s_half, &inner)? - log_gamma(&s, &inner)?;
    let sqrt_pi = pi(bits).sqrt();
    let d_over_4a = Float::with_val(bits, Rational::from((-f.discriminant(), 4 * f.a)));
    let exponent = Float::with_val(bits, &half - &s);
    let mut factor = log_ratio.exp() * sqrt_pi / a_big.sqrt();
    factor *= Float::with_val(bits, d_over_4a.pow(&exponent));
    let expo = Float::with_val(bits, &two_s - 1u32);
    // Σ_{y>Y} y^(1-2s) = H(1, 2s-1) - Σ_{y≤Y} y^(1-2s)
    let mut tail = hurwitz_zeta(&Float::with_val(bits, 1), &expo, &inner)?;
    let neg_expo = Float::with_val(bits, -&expo);
    for y in 1..=y_cut {
        tail -= Float::with_val(bits, y).pow(&neg_expo);
    }
    total += factor * tail * 2u32;
    Ok(Float::with_val(ctx.bits(), total))
}

/// `Σ_{x ∈ ℤ} Q(x, y)^(-s)` for one row `y ≥ 1`.
fn row_sum(f: &QuadForm, y: i64, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let wd = ctx.working_digits() as f64;
    let a = f.a as f64;
    let d = -(f.discriminant()) as f64;
    // Q = a(x + β)² + D with β = by/(2a), D = d·y²/(4a)
    let beta = f.b as f64 * y as f64 / (2.0 * a);
    let width = y as f64 * d.sqrt() / (2.0 * a); // √(D/a)
    let reach = (0.4 * wd + 10.0).max(2.0 * width);
    let x_cut = (beta.abs() + reach).ceil() as i64;

    let neg_s = Float::with_val(bits, -s);
    let mut sum = Float::with_val(bits, 0);
    for x in -x_cut..=x_cut {
        let q = f.eval(x, y);
        sum += Float::with_val(bits, q).pow(&neg_s);
    }
    // x > X: u = x + β runs over T+ + j, T+ = X + β; x < -X: u = X - β + j
    let two_a = 2 * f.a;
    let beta_num = f.b * y; // β = beta_num / 2a
    let t_plus = Rational::from((x_cut * two_a + beta_num, two_a));
    let t_minus = Rational::from((x_cut * two_a - beta_num, two_a));
    let big_d = Rational::from((-(f.discriminant()) * y * y, 4 * f.a));
    for t in [t_plus, t_minus] {
        sum += em_tail(f.a, &t, &big_d, s, ctx)?;
    }
    Ok(sum)
}

/// `Σ_{j ≥ 1} φ(T + j)` with `φ(u) = (a·u² + D)^(-s)`, by Euler–Maclaurin at `T`.
fn em_tail(a: i64, t: &Rational, big_d: &Rational, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let eps = ctx.epsilon() >> 8u32;
    let tf = Float::with_val(bits, t);
    let af = Float::with_val(bits, a);
    let df = Float::with_val(bits, big_d);

    // Taylor coefficients h_n of (q0 + q1·τ + q2·τ²)^(-s) at τ = 0,
    // from q·h' = -s·q'·h
    let q0 = Float::with_val(bits, &af * &tf) * &tf + &df;
    let q1 = Float::with_val(bits, &af * &tf) * 2u32;
    let q2 = af.clone();
    let neg_s = Float::with_val(bits, -s);
    let h0 = Float::with_val(bits, (&q0).pow(&neg_s));

    // ∫_T^∞ φ = a^(-s) Σ_k C(-s, k)·(D/a)^k·T^(1-2s-2k)/(2s+2k-1)
    let rho = Float::with_val(bits, &df / &af) / Float::with_val(bits, &tf * &tf);
    let lead = Float::with_val(bits, (&af).pow(&neg_s))
        * Float::with_val(bits, (&tf).pow(&Float::with_val(bits, 1 - Float::with_val(bits, s * 2u32))));
    let mut integral = Float::with_val(bits, 0);
    let mut binom = Float::with_val(bits, 1);
    let mut rho_k = Float::with_val(bits, 1);
    let mut converged = false;
    for k in 0..20_000u32 {
        let denom = Float::with_val(bits, s * 2u32) + (2 * k) - 1u32;
        let term = Float::with_val(bits, &binom * &rho_k) / denom;
        integral += &term;
        if k > 2 && term.abs() < eps {
            converged = true;
            break;
        }
        binom *= Float::with_val(bits, &neg_s - k) / (k + 1);
        rho_k *= &rho;
    }
    if !converged {
        return Err(Error::Precision {
            achieved: 0,
            requested: ctx.target_digits() as i64,
            context: "Epstein tail integral".into(),
        });
    }
    let mut total = integral * lead - Float::with_val(bits, &h0 / 2u32);

    // - Σ_k B_2k/(2k)·h_{2k-1}
    let mut h_prev = Float::with_val(bits, 0); // h_{-1}
    let mut h_cur = h0; // h_0
    let mut n = 0u32;
    let mut k = 1usize;
    // h_n ~ R^(-n) with R = |T ± i√(D/a)|, so the terms bottom out near k = πR
    let radius = (tf.to_f64().powi(2) + df.to_f64() / a as f64).sqrt();
    let k_limit = (std::f64::consts::PI * radius).ceil() as usize + 8;
    loop {
        // advance to h_{2k-1}
        while n < (2 * k - 1) as u32 {
            let c1 = Float::with_val(bits, &q1 * Float::with_val(bits, s + n)) * &h_cur;
            let c2 =
                Float::with_val(bits, &q2 * Float::with_val(bits, Float::with_val(bits, s * 2u32) + n) - &q2) * &h_prev;
            let next = -(c1 + c2) / (Float::with_val(bits, &q0 * (n + 1)));
            h_prev = std::mem::replace(&mut h_cur, next);
            n += 1;
        }
        let b2k = even_bernoulli(k).pop().expect("nonempty");
        let term = Float::with_val(bits, &b2k) * &h_cur / (2 * k as u32);
        let size = Float::with_val(bits, term.abs_ref());
        total -= term;
        if size < eps {
            return Ok(total);
        }
        if k > k_limit {
            return Err(Error::Precision {
                achieved: digits_from_error(&size, ctx.working_digits()),
                requested: ctx.target_digits() as i64,
                context: "Epstein row tail (Euler–Maclaurin)".into(),
            });
        }
        k += 1;
    }
}
