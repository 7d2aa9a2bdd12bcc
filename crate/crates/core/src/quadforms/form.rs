use super::discriminant::Discriminant;
use crate::error::{domain, Error, Result};
use crate::numkernel::{Lattice, PrecisionContext};
use rug::{Complex, Float, Integer};
use serde::Serialize;

/// Positive definite binary quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || c <= 0 {
            return domain(format!("({a},{b},{c}) is not positive definite"));
        }
        let f = Self { a, b, c };
        if f.disc_i128() >= 0 {
            return domain(format!("({a},{b},{c}) has non-negative discriminant"));
        }
        Ok(f)
    }

    fn disc_i128(&self) -> i128 {
        (self.b as i128).pow(2) - 4 * (self.a as i128) * (self.c as i128)
    }

    /// `b² - 4ac`.
    pub fn discriminant(&self) -> i64 {
        self.disc_i128() as i64
    }

    /// The principal form of discriminant `-d`.
    pub fn principal(disc: &Discriminant) -> Self {
        let d = disc.d() as i64;
        if d % 4 == 0 {
            Self { a: 1, b: 0, c: d / 4 }
        } else {
            Self { a: 1, b: 1, c: (d + 1) / 4 }
        }
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    pub fn is_primitive(&self) -> bool {
        Integer::from(self.a).gcd(&Integer::from(self.b)).gcd(&Integer::from(self.c)) == 1
    }

    /// `(a, -b, c)`: the inverse class before reduction.
    pub fn mirror(&self) -> Self {
        Self { a: self.a, b: -self.b, c: self.c }
    }

    pub fn reduce(&self) -> Self {
        BigForm::from(*self).reduce().to_small().expect("reduction shrinks coefficients")
    }

    pub fn inverse(&self) -> Self {
        self.mirror().reduce()
    }

    pub fn is_principal(&self) -> bool {
        self.reduce().a == 1
    }

    /// Reduced representative of the composed class.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.discriminant() != other.discriminant() {
            return domain(format!(
                "cannot compose forms of discriminants {} and {}",
                self.discriminant(),
                other.discriminant()
            ));
        }
        let (_, f) = dirichlet_compose(&BigForm::from(*self), &BigForm::from(*other))?;
        f.reduce().to_small()
    }

    /// Reduced representative of the `k`-th power class, `k ≥ 0`.
    pub fn pow(&self, k: u64) -> Result<Self> {
        let disc = Discriminant::new((-self.discriminant()) as u64)?;
        let mut acc = Self::principal(&disc);
        let mut base = self.reduce();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            base = base.compose(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Value `f(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A form with arbitrary-size coefficients. Read as the ideal
/// `ℤa + ℤ(-b + √D)/2` of norm `a`; powers of ideals outgrow `i64` quickly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigForm {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
}

impl From<QuadForm> for BigForm {
    fn from(f: QuadForm) -> Self {
        Self { a: Integer::from(f.a), b: Integer::from(f.b), c: Integer::from(f.c) }
    }
}

impl BigForm {
    pub fn discriminant(&self) -> Integer {
        Integer::from(&self.b * &self.b) - Integer::from(4) * &self.a * &self.c
    }

    pub fn to_small(&self) -> Result<QuadForm> {
        match (self.a.to_i64(), self.b.to_i64(), self.c.to_i64()) {
            (Some(a), Some(b), Some(c)) => Ok(QuadForm { a, b, c }),
            _ => Err(Error::Domain(format!(
                "form ({},{},{}) does not fit in 64-bit coefficients",
                self.a, self.b, self.c
            ))),
        }
    }

    /// Move `b` into `(-a, a]` without changing the class (or the ideal).
    pub fn normalize(&self) -> Self {
        let two_a = Integer::from(&self.a * 2);
        let r = Integer::from(&self.a - &self.b).div_rem_floor(two_a.clone()).0;
        let b = Integer::from(&self.b + &two_a * &r);
        let c = Integer::from(&self.a * &r) * &r + Integer::from(&self.b * &r) + &self.c;
        Self { a: self.a.clone(), b, c }
    }

    pub fn reduce(&self) -> Self {
        let mut f = self.normalize();
        loop {
            if f.a > f.c || (f.a == f.c && f.b < 0) {
                f = Self { a: f.c.clone(), b: Integer::from(-&f.b), c: f.a.clone() }.normalize();
            } else {
                return f;
            }
        }
    }
}

/// Extended gcd with `u·a + v·b = g`, `g ≥ 0`.
fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let (g, u, v) = a.clone().extended_gcd(b.clone(), Integer::new());
    (g, u, v)
}

/// Dirichlet composition of primitive forms with the same discriminant.
/// Returns `(e, F)` where, as ideals, `𝔞_f · 𝔞_g = e · 𝔞_F`; `F` has `b`
/// normalized into `(-A, A]` but is otherwise unreduced.
pub fn dirichlet_compose(f: &BigForm, g: &BigForm) -> Result<(Integer, BigForm)> {
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return domain("cannot compose forms of different discriminants");
    }
    let s = Integer::from(&f.b + &g.b) / 2;
    let (g1, u1, v1) = ext_gcd(&f.a, &g.a);
    let (e, u2, v2) = ext_gcd(&g1, &s);
    let mu = Integer::from(&u2 * &u1);
    let nu = Integer::from(&u2 * &v1);
    let rho = v2;
    let bb_plus_d = Integer::from(&f.b * &g.b) + &disc;
    let numer: Integer =
        Integer::from(&mu * &f.a) * &g.b + Integer::from(&nu * &g.a) * &f.b + Integer::from(&rho * &bb_plus_d) / 2;
    if !numer.is_divisible(&e) {
        return Err(Error::Consistency("composition numerator not divisible by e".into()));
    }
    let b = numer / &e;
    let e2 = Integer::from(&e * &e);
    let a = Integer::from(&f.a * &g.a) / &e2;
    let c_num = Integer::from(&b * &b) - &disc;
    let four_a = Integer::from(&a * 4);
    if !c_num.is_divisible(&four_a) {
        return Err(Error::Consistency("composition produced non-integral c".into()));
    }
    let c = c_num / four_a;
    Ok((e, BigForm { a, b, c }.normalize()))
}

/// Lattice `a·(ℤ + ℤτ)` with `τ = (-b + i√d)/(2a)` for the ideal of `f`.
pub fn form_to_lattice(f: &QuadForm, ctx: &PrecisionContext) -> Result<Lattice> {
    let bits = ctx.bits();
    let d = Float::with_val(bits, -f.discriminant()).sqrt();
    let two_a = Float::with_val(bits, 2 * f.a);
    let re = Float::with_val(bits, -f.b) / &two_a;
    let im = d / &two_a;
    Lattice::new(Complex::with_val(bits, (re, im)), Complex::with_val(bits, (f.a, 0)))
}

/// Lattice homothetic to the inverse ideal `𝔞⁻¹ = 𝔞̄ / N𝔞`: scale 1 and
/// `τ = (b + i√d)/(2a)`.
pub fn inverse_ideal_lattice(f: &QuadForm, ctx: &PrecisionContext) -> Result<Lattice> {
    let bits = ctx.bits();
    let d = Float::with_val(bits, -f.discriminant()).sqrt();
    let two_a = Float::with_val(bits, 2 * f.a);
    let re = Float::with_val(bits, f.b) / &two_a;
    let im = d / &two_a;
    Lattice::new(Complex::with_val(bits, (re, im)), Complex::with_val(bits, (1, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(form(3, 1, 2).reduce(), form(2, -1, 3));
        assert_eq!(form(6, 13, 8).reduce().discriminant(), 13 * 13 - 4 * 48);
        assert!(form(2, -1, 3).is_reduced());
        assert!(!form(2, -2, 3).is_reduced());
        assert!(!form(3, -1, 3).is_reduced());
    }

    #[test]
    fn composition_d23() {
        let g = form(2, 1, 3);
        assert_eq!(g.compose(&g).unwrap(), form(2, -1, 3));
        assert_eq!(g.compose(&g.inverse()).unwrap(), form(1, 1, 6));
        assert_eq!(g.pow(3).unwrap(), form(1, 1, 6));
    }

    #[test]
    fn composition_rejects_mismatch() {
        assert!(form(1, 1, 2).compose(&form(1, 1, 6)).is_err());
    }

    #[test]
    fn dirichlet_content_of_conjugate_product() {
        // 𝔞·𝔞̄ = (N𝔞)
        let f = BigForm::from(form(3, 1, 4));
        let fbar = BigForm::from(form(3, -1, 4));
        let (e, prod) = dirichlet_compose(&f, &fbar).unwrap();
        assert_eq!(e, 3);
        assert_eq!(prod.a, 1);
    }

    #[test]
    fn lattice_from_form() {
        let ctx = PrecisionContext::with_target(30).unwrap();
        let lat = form_to_lattice(&form(2, 1, 3), &ctx).unwrap();
        assert_eq!(lat.scale.real().to_f64(), 2.0);
        assert!((lat.tau.real().to_f64() + 0.25).abs() < 1e-15);
        assert!((lat.tau.imag().to_f64() - 23f64.sqrt() / 4.0).abs() < 1e-15);
    }
}
