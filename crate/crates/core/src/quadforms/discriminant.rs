use crate::error::{domain, Result};
use serde::Serialize;

/// `d > 0` with `-d` a fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Discriminant {
    d: u64,
    w: u32,
    is_prime_3mod4: bool,
}

impl Discriminant {
    pub fn new(d: u64) -> Result<Self> {
        if !is_fundamental(d) {
            return domain(format!("-{d} is not a fundamental discriminant"));
        }
        let w = match d {
            3 => 6,
            4 => 4,
            _ => 2,
        };
        Ok(Self { d, w, is_prime_3mod4: d > 3 && d % 4 == 3 && is_prime(d) })
    }

    /// A discriminant in the prime regime: `d = p` prime, `p ≡ 3 mod 4`, `p > 3`.
    pub fn prime(p: u64) -> Result<Self> {
        let disc = Self::new(p)?;
        if !disc.is_prime_3mod4 {
            return domain(format!("{p} is not a prime p ≡ 3 (mod 4) with p > 3"));
        }
        Ok(disc)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// The discriminant itself, `-d`.
    pub fn value(&self) -> i64 {
        -(self.d as i64)
    }

    /// Number of roots of unity in the field.
    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn is_prime_3mod4(&self) -> bool {
        self.is_prime_3mod4
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "-{}", self.d)
    }
}

pub fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Whether `-d` is a fundamental discriminant.
pub fn is_fundamental(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    match d % 4 {
        3 => is_squarefree(d),
        0 => {
            let m = d / 4;
            // -d = 4·(-m) with -m ≡ 2, 3 (mod 4)
            matches!(m % 4, 1 | 2) && is_squarefree(m)
        }
        _ => false,
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// All `d` in `[lo, hi]` with `-d` fundamental.
pub fn fundamental_range(lo: u64, hi: u64) -> Vec<Discriminant> {
    (lo..=hi).filter_map(|d| Discriminant::new(d).ok()).collect()
}

/// Kronecker symbol `(a | n)` for `n ≥ 0`.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= v;
    }
    // Jacobi symbol for odd n
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The quadratic character `ε` of `k = ℚ(√-d)`: the Kronecker symbol
/// `(-d | a)`, which is periodic modulo `d` and vanishes iff `gcd(a, d) > 1`.
pub fn kronecker_epsilon(a: i64, disc: &Discriminant) -> i32 {
    let d = disc.d() as i64;
    let r = a.rem_euclid(d);
    if r == 0 {
        return 0;
    }
    kronecker_symbol(-d, r)
}

/// `ε(a)` for `a = 0..d`, index `a`.
pub fn epsilon_table(disc: &Discriminant) -> Vec<i32> {
    (0..disc.d() as i64).map(|a| kronecker_epsilon(a, disc)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamentality() {
        for d in [3, 4, 7, 8, 11, 15, 20, 23, 24, 163] {
            assert!(is_fundamental(d), "{d}");
        }
        for d in [1, 2, 12, 16, 27, 28, 36, 44, 5, 6] {
            assert!(!is_fundamental(d), "{d}");
        }
        assert!(Discriminant::new(12).is_err());
    }

    #[test]
    fn unit_counts() {
        assert_eq!(Discriminant::new(3).unwrap().w(), 6);
        assert_eq!(Discriminant::new(4).unwrap().w(), 4);
        assert_eq!(Discriminant::new(23).unwrap().w(), 2);
    }

    #[test]
    fn prime_regime_flag() {
        assert!(Discriminant::new(7).unwrap().is_prime_3mod4());
        assert!(!Discriminant::new(3).unwrap().is_prime_3mod4());
        assert!(!Discriminant::new(15).unwrap().is_prime_3mod4());
        assert!(Discriminant::prime(15).is_err());
        assert!(Discriminant::prime(3).is_err());
    }

    #[test]
    fn epsilon_examples() {
        let seven = Discriminant::new(7).unwrap();
        assert_eq!(kronecker_epsilon(2, &seven), 1);
        assert_eq!(kronecker_epsilon(3, &seven), -1);
        assert_eq!(kronecker_epsilon(14, &seven), 0);
        let fifteen = Discriminant::new(15).unwrap();
        let sum: i32 = (1..15).map(|a| kronecker_epsilon(a, &fifteen)).sum();
        assert_eq!(sum, 0);
    }

    #[test]
    fn legendre_for_primes_by_euler_criterion() {
        for p in [7u64, 11, 19, 23, 31, 43, 47, 67, 163] {
            let disc = Discriminant::new(p).unwrap();
            for a in 1..p {
                let mut e = 1u64;
                for _ in 0..(p - 1) / 2 {
                    e = e * a % p;
                }
                let legendre = if e == 1 { 1 } else { -1 };
                assert_eq!(kronecker_epsilon(a as i64, &disc), legendre, "({a}|{p})");
            }
        }
    }

    #[test]
    fn matches_gmp_kronecker() {
        use rug::Integer;
        for a in -60i64..60 {
            for n in 0i64..60 {
                let expected = Integer::from(a).kronecker(&Integer::from(n));
                assert_eq!(kronecker_symbol(a, n), expected, "({a}|{n})");
            }
        }
    }
}
