//! CM types and periods of the Fermat quotients `C(r,s,t): y^p = x^r (1-x)^s`
//! with `r + s + t = p`.
//!
//! Ratios that are equal "up to `k*`" are transcribed to the real line: a
//! positive real in `k*` is rational, and one carrying a single factor
//! `i^n` with `n` odd lies on the `√-p` line, so its real transcription is a
//! rational multiple of `√p`.

use crate::csperiods::m_invariant;
use crate::error::{domain, Result};
use crate::numkernel::{ln_two_pi, log_beta, log_gamma_rational, PrecisionContext};
use crate::quadforms::{kronecker_epsilon, reduced_forms, Discriminant};
use crate::relint::{recognize_rational, recognize_sqrtp};
use rug::{Float, Integer, Rational};
use serde::Serialize;

/// Denominator bound for recognizing certificate ratios.
pub const MAX_DENOMINATOR: u64 = 1_000_000_000_000;

/// `x - ⌊x⌋`.
pub fn frac(x: &Rational) -> Rational {
    let floor = Rational::from(x.floor_ref());
    x - floor
}

fn frac_of(a: u64, r: u64, p: u64) -> Rational {
    Rational::from(((a * r % p) as i64, p as i64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CMTypeRecord {
    pub p: u64,
    pub rst: (u64, u64, u64),
    /// Residues `a` with `⟨ar/p⟩ + ⟨as/p⟩ + ⟨at/p⟩ = 1`, ascending.
    pub phi: Vec<u64>,
    pub u: u32,
    pub v: u32,
}

fn check_triple(p: &Discriminant, r: u64, s: u64, t: u64) -> Result<()> {
    if !p.is_prime_3mod4() {
        return domain(format!("{} is not a prime p ≡ 3 (mod 4) with p > 3", p.d()));
    }
    let pd = p.d();
    if [r, s, t].iter().any(|&x| x == 0 || x >= pd) || r + s + t != pd {
        return domain(format!("({r},{s},{t}) is not a triple of positive residues summing to {pd}"));
    }
    Ok(())
}

pub fn cm_type(p: &Discriminant, r: u64, s: u64, t: u64) -> Result<CMTypeRecord> {
    check_triple(p, r, s, t)?;
    let pd = p.d();
    let mut phi = Vec::new();
    let (mut u, mut v) = (0, 0);
    for a in 1..pd {
        let total = frac_of(a, r, pd) + frac_of(a, s, pd) + frac_of(a, t, pd);
        if total == 1 {
            phi.push(a);
            match kronecker_epsilon(a as i64, p) {
                1 => u += 1,
                _ => v += 1,
            }
        }
    }
    Ok(CMTypeRecord { p: pd, rst: (r, s, t), phi, u, v })
}

/// `ε(r) + ε(s) + ε(t)`.
pub fn epsilon_rst(p: &Discriminant, r: u64, s: u64, t: u64) -> Result<i32> {
    check_triple(p, r, s, t)?;
    Ok([r, s, t].iter().map(|&x| kronecker_epsilon(x as i64, p)).sum())
}

fn residues(p: &Discriminant) -> impl Iterator<Item = u64> + '_ {
    (1..p.d()).filter(move |&a| kronecker_epsilon(a as i64, p) == 1)
}

/// `log ∏_{ε(a)=+1} B(⟨ar/p⟩, ⟨as/p⟩)`.
pub fn log_beta_period(p: &Discriminant, r: u64, s: u64, t: u64, ctx: &PrecisionContext) -> Result<Float> {
    check_triple(p, r, s, t)?;
    let bits = ctx.bits();
    let pd = p.d();
    let mut sum = Float::with_val(bits, 0);
    for a in residues(p) {
        let x = Float::with_val(bits, &frac_of(a, r, pd));
        let y = Float::with_val(bits, &frac_of(a, s, pd));
        sum += log_beta(&x, &y, ctx)?;
    }
    Ok(sum)
}

pub fn beta_period(p: &Discriminant, r: u64, s: u64, t: u64, ctx: &PrecisionContext) -> Result<Float> {
    Ok(log_beta_period(p, r, s, t, ctx)?.exp())
}

/// `log` of `(2π)^(-n)·∏_{ε(a)=+1} Γ(⟨ar/p⟩)Γ(⟨as/p⟩)Γ(⟨at/p⟩)`, `n = (p-1)/2`.
pub fn log_gamma_period(p: &Discriminant, r: u64, s: u64, t: u64, ctx: &PrecisionContext) -> Result<Float> {
    check_triple(p, r, s, t)?;
    let bits = ctx.bits();
    let pd = p.d();
    let mut sum = Float::with_val(bits, 0);
    for a in residues(p) {
        for x in [r, s, t] {
            sum += log_gamma_rational(a * x % pd, pd, ctx)?;
        }
    }
    Ok(sum - ln_two_pi(bits) * ((pd - 1) / 2))
}

pub fn gamma_period(p: &Discriminant, r: u64, s: u64, t: u64, ctx: &PrecisionContext) -> Result<Float> {
    Ok(log_gamma_period(p, r, s, t, ctx)?.exp())
}

/// `log ∏_{ε(a)=+1} Γ(a/p)`.
pub fn log_residue_gamma_product(p: &Discriminant, ctx: &PrecisionContext) -> Result<Float> {
    let mut sum = Float::with_val(ctx.bits(), 0);
    for a in residues(p) {
        sum += log_gamma_rational(a, p.d(), ctx)?;
    }
    Ok(sum)
}

/// Exact value a certificate ratio was recognized as.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognized {
    Rational(Rational),
    /// `q·√p`.
    SqrtP(Rational, u64),
}

impl Recognized {
    pub fn height(&self) -> Integer {
        let q = match self {
            Recognized::Rational(q) | Recognized::SqrtP(q, _) => q,
        };
        Integer::from(q.numer().abs_ref()).max(q.denom().clone())
    }

    pub fn value(&self, bits: u32) -> Float {
        match self {
            Recognized::Rational(q) => Float::with_val(bits, q),
            Recognized::SqrtP(q, p) => Float::with_val(bits, q) * Float::with_val(bits, *p).sqrt(),
        }
    }
}

impl std::fmt::Display for Recognized {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Recognized::Rational(q) => write!(f, "{q}"),
            Recognized::SqrtP(q, p) => write!(f, "{q}·√{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioCertificate {
    pub name: String,
    pub p: u64,
    pub rst: Vec<u64>,
    pub ratio: Float,
    pub recognized: Option<Recognized>,
    pub height: Option<Integer>,
    pub digits_agreed: i64,
    pub pass: bool,
}

impl Serialize for RatioCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let digits = (self.ratio.prec() as f64 / std::f64::consts::LOG2_10).floor() as usize;
        let mut st = s.serialize_struct("RatioCertificate", 8)?;
        st.serialize_field("check", &self.name)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("rst", &self.rst)?;
        st.serialize_field("ratio", &self.ratio.to_string_radix(10, Some(digits)))?;
        st.serialize_field("recognized", &self.recognized.as_ref().map(|r| r.to_string()))?;
        st.serialize_field("height", &self.height.as_ref().map(|h| h.to_string()))?;
        st.serialize_field("digits_agreed", &self.digits_agreed)?;
        st.serialize_field("pass", &self.pass)?;
        st.end()
    }
}

/// Recognize `exp(log_ratio)` as a rational or a rational multiple of `√p`.
/// Passes when the recognized value matches to `10^-(target-20)` relatively.
pub fn certify(name: &str, p: u64, rst: Vec<u64>, log_ratio: &Float, ctx: &PrecisionContext) -> RatioCertificate {
    let bits = ctx.bits();
    let ratio = Float::with_val(bits, log_ratio.exp_ref());
    let bound = Integer::from(MAX_DENOMINATOR);
    let tol = ctx.tolerance(crate::csperiods::PASS_SLACK);
    let candidates = [
        recognize_rational(&ratio, &bound, ctx).map(Recognized::Rational),
        recognize_sqrtp(&ratio, p, &bound, ctx).map(|q| Recognized::SqrtP(q, p)),
    ];
    let mut recognized = None;
    let mut digits_agreed = 0;
    let mut pass = false;
    // A rational convergent can sit inside the recognizer's window by
    // accident, so each candidate is checked at full precision.
    for candidate in candidates.into_iter().flatten() {
        let exact = candidate.value(bits);
        let rel = Float::with_val(bits, Float::with_val(bits, &ratio - &exact) / &ratio).abs();
        let digits = crate::numkernel::digits_from_error(&rel, ctx.working_digits());
        if recognized.is_none() || rel < tol {
            recognized = Some(candidate);
            digits_agreed = digits;
            pass = rel < tol;
        }
        if pass {
            break;
        }
    }
    RatioCertificate {
        name: name.to_string(),
        p,
        rst,
        height: recognized.as_ref().map(Recognized::height),
        ratio,
        recognized,
        digits_agreed,
        pass,
    }
}

/// `∏Γ(⟨ar/p⟩)/∏Γ(a/p)` over residues when `ε(r) = +1` (rational), and
/// `∏Γ(⟨ar/p⟩)·∏Γ(a/p)/(2π)^n` when `ε(r) = -1` (rational·√p).
pub fn residue_twist_certificate(p: &Discriminant, r: u64, ctx: &PrecisionContext) -> Result<RatioCertificate> {
    if !p.is_prime_3mod4() {
        return domain(format!("{} is not a prime p ≡ 3 (mod 4) with p > 3", p.d()));
    }
    let pd = p.d();
    if r == 0 || r >= pd {
        return domain(format!("r = {r} is not in (0, {pd})"));
    }
    let bits = ctx.bits();
    let mut twisted = Float::with_val(bits, 0);
    for a in residues(p) {
        twisted += log_gamma_rational(a * r % pd, pd, ctx)?;
    }
    let base = log_residue_gamma_product(p, ctx)?;
    let log_ratio = if kronecker_epsilon(r as i64, p) == 1 {
        twisted - base
    } else {
        twisted + base - ln_two_pi(bits) * ((pd - 1) / 2)
    };
    Ok(certify("residue-twist", pd, vec![r], &log_ratio, ctx))
}

/// `log` of the ratio `beta_period / ((2π)^m·|∫ω_B|)`, where `|∫ω_B|` is
/// `(2π)^(-m)·∏Γ(a/p)` for `ε(r,s,t) = +1` and `(2π)^(h+m)/∏Γ(a/p)` for
/// `ε(r,s,t) = -1`.
pub fn log_tate_twist_ratio(p: &Discriminant, r: u64, s: u64, t: u64, ctx: &PrecisionContext) -> Result<Float> {
    let eps = epsilon_rst(p, r, s, t)?;
    if eps.abs() != 1 {
        return domain(format!("ε({r},{s},{t}) = {eps}, not ±1"));
    }
    let bits = ctx.bits();
    let beta = log_beta_period(p, r, s, t, ctx)?;
    let gammas = log_residue_gamma_product(p, ctx)?;
    if eps == 1 {
        Ok(beta - gammas)
    } else {
        let m = m_invariant(p)?;
        let h = reduced_forms(p).h() as i64;
        let power = Rational::from(&m * 2) + h;
        Ok(beta + gammas - ln_two_pi(bits) * Float::with_val(bits, &power))
    }
}

pub fn tate_twist_certificate(
    p: &Discriminant,
    r: u64,
    s: u64,
    t: u64,
    ctx: &PrecisionContext,
) -> Result<RatioCertificate> {
    let log_ratio = log_tate_twist_ratio(p, r, s, t, ctx)?;
    Ok(certify("tate-twist", p.d(), vec![r, s, t], &log_ratio, ctx))
}

/// `beta_period·(2π)^m/∏Γ(a/p)` taken literally. It equals `∫ω_C/∫ω_B`,
/// which is `∼ (2πi)^m` and never rational; kept as a negative control.
pub fn log_literal_twist_ratio(p: &Discriminant, r: u64, s: u64, t: u64, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let m = m_invariant(p)?;
    let beta = log_beta_period(p, r, s, t, ctx)?;
    Ok(beta + ln_two_pi(bits) * Float::with_val(bits, &m) - log_residue_gamma_product(p, ctx)?)
}

/// `beta_period / gamma_period`, which is `√p·∏_{a ∈ QR∖Φ} 1/(1-⟨at/p⟩)`.
pub fn beta_gamma_certificate(
    p: &Discriminant,
    r: u64,
    s: u64,
    t: u64,
    ctx: &PrecisionContext,
) -> Result<RatioCertificate> {
    let log_ratio = log_beta_period(p, r, s, t, ctx)? - log_gamma_period(p, r, s, t, ctx)?;
    Ok(certify("beta-gamma", p.d(), vec![r, s, t], &log_ratio, ctx))
}

/// All ordered triples `(r, s, t)` of positive residues summing to `p`.
pub fn triples(p: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for r in 1..p {
        for s in 1..p - r {
            out.push((r, s, p - r - s));
        }
    }
    out
}
