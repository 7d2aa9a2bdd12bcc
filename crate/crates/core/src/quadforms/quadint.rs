use super::discriminant::Discriminant;
use crate::error::{domain, Result};
use rug::Integer;
use serde::Serialize;

/// `(x + y√-d)/2` in the ring of integers of `ℚ(√-d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadInteger {
    #[serde(serialize_with = "crate::quadforms::ser_integer")]
    pub x: Integer,
    #[serde(serialize_with = "crate::quadforms::ser_integer")]
    pub y: Integer,
}

impl QuadInteger {
    pub fn new(x: impl Into<Integer>, y: impl Into<Integer>, disc: &Discriminant) -> Result<Self> {
        let (x, y) = (x.into(), y.into());
        let parity = &x - Integer::from(&y * disc.d());
        if parity.is_odd() {
            return domain(format!("({x} + {y}√-{})/2 is not integral", disc.d()));
        }
        Ok(Self { x, y })
    }

    pub fn norm(&self, disc: &Discriminant) -> Integer {
        (Integer::from(&self.x * &self.x) + Integer::from(&self.y * &self.y) * disc.d()) / 4
    }

    pub fn neg(&self) -> Self {
        Self { x: Integer::from(-&self.x), y: Integer::from(-&self.y) }
    }

    pub fn conj(&self) -> Self {
        Self { x: self.x.clone(), y: Integer::from(-&self.y) }
    }

    /// `((x1x2 - d·y1y2) + (x1y2 + x2y1)√-d)/4`, halved back to the `/2` form.
    pub fn mul(&self, other: &Self, disc: &Discriminant) -> Self {
        let d = disc.d();
        let x = Integer::from(&self.x * &other.x) - Integer::from(&self.y * &other.y) * d;
        let y = Integer::from(&self.x * &other.y) + Integer::from(&other.x * &self.y);
        Self { x: x / 2, y: y / 2 }
    }

    /// Image under `O_k → O_k/(√-d) ≅ 𝔽_p`, i.e. `x/2 mod p`; `d` must be an odd prime.
    pub fn residue_mod_sqrt(&self, disc: &Discriminant) -> Integer {
        let p = Integer::from(disc.d());
        let inv2 = Integer::from(disc.d().div_ceil(2));
        (&self.x * inv2).modulo(&p)
    }
}

impl std::fmt::Display for QuadInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + {}·√-d)/2", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_is_multiplicative() {
        let disc = Discriminant::new(23).unwrap();
        let a = QuadInteger::new(3, 1, &disc).unwrap();
        let b = QuadInteger::new(-5, 3, &disc).unwrap();
        let ab = a.mul(&b, &disc);
        assert_eq!(ab.norm(&disc), a.norm(&disc) * b.norm(&disc));
        assert!(QuadInteger::new(1, 2, &disc).is_err());
    }

    #[test]
    fn residue_of_half_integers() {
        let disc = Discriminant::new(7).unwrap();
        // (1 + √-7)/2 ≡ 1/2 ≡ 4 mod √-7
        assert_eq!(QuadInteger::new(1, 1, &disc).unwrap().residue_mod_sqrt(&disc), 4);
    }
}
