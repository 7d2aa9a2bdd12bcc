//! Ideal-level values of the Hecke character `ψ_M` for `k = ℚ(√-p)`.
//!
//! A form `(a,b,c)` stands for the ideal `ℤa + ℤ(-b + √-p)/2` of norm `a`.
//! `ψ_M(𝔞)` is the generator of `𝔞^h` whose image in `O_k/(√-p) ≅ 𝔽_p` is a
//! nonzero square.

use crate::error::{domain, Error, Result};
use crate::quadforms::{
    cornacchia_all, dirichlet_compose, reduced_forms, BigForm, Discriminant, QuadForm, QuadInteger,
};
use rug::ops::Pow;
use rug::Integer;

/// The ideal `e·𝔞_F`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ideal {
    e: Integer,
    form: BigForm,
}

impl Ideal {
    fn mul(&self, other: &Self) -> Result<Self> {
        let (e, form) = dirichlet_compose(&self.form, &other.form)?;
        Ok(Self { e: e * &self.e * &other.e, form })
    }

    fn pow(&self, mut k: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        acc.ok_or_else(|| Error::Domain("zeroth ideal power".into()))
    }

    fn norm(&self) -> Integer {
        Integer::from(&self.e * &self.e) * &self.form.a
    }

    /// `(x + y√-p)/2 = e·(m·A + n·(-B + √-p)/2)` for integers `m, n`.
    fn contains(&self, z: &QuadInteger) -> bool {
        if !z.x.is_divisible(&self.e) || !z.y.is_divisible(&self.e) {
            return false;
        }
        let n = Integer::from(&z.y / &self.e);
        let x = Integer::from(&z.x / &self.e);
        let two_a = Integer::from(&self.form.a * 2);
        (x + n * &self.form.b).is_divisible(&two_a)
    }
}

fn check_prime(p: &Discriminant) -> Result<()> {
    if !p.is_prime_3mod4() {
        return domain(format!("{} is not a prime p ≡ 3 (mod 4) with p > 3", p.d()));
    }
    Ok(())
}

fn check_form(f: &BigForm, p: &Discriminant) -> Result<()> {
    if f.discriminant() != p.value() {
        return domain(format!("form ({},{},{}) does not have discriminant {p}", f.a, f.b, f.c));
    }
    if f.a <= 0 {
        return domain("form must be positive definite");
    }
    if f.a.is_divisible_u(p.d() as u32) {
        return domain(format!("the ideal of ({},{},{}) is not prime to {}", f.a, f.b, f.c, p.d()));
    }
    Ok(())
}

/// Whether `z` reduces to a nonzero square mod `√-p`.
pub fn is_square_mod_sqrt(z: &QuadInteger, p: &Discriminant) -> bool {
    let r = z.residue_mod_sqrt(p);
    r != 0 && r.legendre(&Integer::from(p.d())) == 1
}

/// Pick the sign of `z` that is a square mod `√-p`.
fn normalize_sign(z: QuadInteger, p: &Discriminant) -> Result<QuadInteger> {
    let neg = z.neg();
    match (is_square_mod_sqrt(&z, p), is_square_mod_sqrt(&neg, p)) {
        (true, false) => Ok(z),
        (false, true) => Ok(neg),
        _ => Err(Error::Consistency(format!("no unique square sign for {z}"))),
    }
}

fn psi_ideal(ideal: &Ideal, p: &Discriminant, h: u64) -> Result<QuadInteger> {
    let power = ideal.pow(h)?;
    if power.form.reduce() != BigForm::from(QuadForm::principal(p)) {
        return Err(Error::Consistency(format!(
            "({},{},{})^{h} is not principal",
            ideal.form.a, ideal.form.b, ideal.form.c
        )));
    }
    let norm = power.norm();
    let generator = cornacchia_all(p, &norm)
        .into_iter()
        .find(|z| power.contains(z))
        .ok_or_else(|| Error::Consistency(format!("no generator of norm {norm} in a principal ideal")))?;
    normalize_sign(generator, p)
}

/// `ψ_M` of the ideal of a positive definite form of discriminant `-p`.
pub fn psi_m_big(f: &BigForm, p: &Discriminant) -> Result<QuadInteger> {
    check_prime(p)?;
    check_form(f, p)?;
    let h = reduced_forms(p).h() as u64;
    psi_ideal(&Ideal { e: Integer::from(1), form: f.clone() }, p, h)
}

pub fn psi_m(f: &QuadForm, p: &Discriminant) -> Result<QuadInteger> {
    psi_m_big(&BigForm::from(*f), p)
}

/// `ψ_M((e))` for a rational integer `e` prime to `p`: `±e^h`.
pub fn psi_m_integer(e: &Integer, p: &Discriminant) -> Result<QuadInteger> {
    check_prime(p)?;
    if e.is_divisible_u(p.d() as u32) || *e == 0 {
        return domain(format!("({e}) is not prime to {}", p.d()));
    }
    let h = reduced_forms(p).h() as u32;
    let x = Integer::from(e.pow(h)) * 2;
    normalize_sign(QuadInteger { x, y: Integer::new() }, p)
}

/// `ψ_M(f)·ψ_M(g) = ψ_M((e))·ψ_M(F)` where `𝔞_f·𝔞_g = e·𝔞_F`.
pub fn psi_multiplicativity_check(p: &Discriminant, f: &BigForm, g: &BigForm) -> Result<bool> {
    let lhs = psi_m_big(f, p)?.mul(&psi_m_big(g, p)?, p);
    let (e, composed) = dirichlet_compose(f, g)?;
    let rhs = psi_m_integer(&e, p)?.mul(&psi_m_big(&composed, p)?, p);
    Ok(lhs == rhs)
}
