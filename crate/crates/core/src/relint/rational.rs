use crate::numkernel::PrecisionContext;
use rug::{Float, Integer, Rational};

/// The rational `q` with denominator `≤ max_den` and `|x - q| < 1/(2·max_den²)`,
/// if there is one. Any such `q` is a convergent of `x`, so scanning the
/// convergents is exhaustive; two candidates would be `≥ 1/max_den²` apart, so
/// it is also unique.
pub fn recognize_rational(x: &Float, max_den: &Integer, ctx: &PrecisionContext) -> Option<Rational> {
    assert!(*max_den >= 1, "max_den must be positive");
    let exact = x.to_rational()?;
    let bits = ctx.bits().max(x.prec());
    let window = {
        let m2 = Float::with_val(bits, Integer::from(max_den * max_den)) * 2u32;
        Float::with_val(bits, m2.recip_ref())
    };
    let within = |q: &Rational| -> bool {
        let diff = Float::with_val(bits, q) - x;
        diff.abs() < window
    };

    // convergents p_k/q_k of the exact binary expansion
    let (mut p0, mut q0) = (Integer::from(1), Integer::new());
    let (mut p1, mut q1) = (exact.numer().clone().div_rem_floor(exact.denom().clone()).0, Integer::from(1));
    let mut rest = Rational::from(&exact - &p1);
    loop {
        if q1 > *max_den {
            return None;
        }
        let cand = Rational::from((p1.clone(), q1.clone()));
        if within(&cand) {
            return Some(cand);
        }
        if rest == 0 {
            return None;
        }
        let inv = rest.recip();
        let a = inv.numer().clone().div_rem_floor(inv.denom().clone()).0;
        rest = Rational::from(&inv - &a);
        let p2 = Integer::from(&a * &p1) + &p0;
        let q2 = Integer::from(&a * &q1) + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
}

/// Rational `b` with `x = b·√p`, recognized as [`recognize_rational`] of `x/√p`.
pub fn recognize_sqrtp(x: &Float, p: u64, max_den: &Integer, ctx: &PrecisionContext) -> Option<Rational> {
    let bits = ctx.bits().max(x.prec());
    let root = Float::with_val(bits, p).sqrt();
    let scaled = Float::with_val(bits, x / root);
    recognize_rational(&scaled, max_den, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_target(120).unwrap()
    }

    #[test]
    fn simple_fractions() {
        let c = ctx();
        let big = Integer::from(10u32.pow(6));
        assert_eq!(recognize_rational(&c.float(0.75), &big, &c), Some(Rational::from((3, 4))));
        // 22/7 + 10⁻¹⁰⁰
        let near = Float::with_val(c.bits(), Rational::from((22, 7))) + c.tolerance(20);
        assert_eq!(recognize_rational(&near, &big, &c), Some(Rational::from((22, 7))));
        let neg = Float::with_val(c.bits(), Rational::from((-5, 3)));
        assert_eq!(recognize_rational(&neg, &big, &c), Some(Rational::from((-5, 3))));
        assert_eq!(recognize_rational(&c.float(0.0), &big, &c), Some(Rational::new()));
    }

    #[test]
    fn pi_is_not_rational_at_height_a_million() {
        let c = ctx();
        let pi = Float::with_val(c.bits(), rug::float::Constant::Pi);
        assert_eq!(recognize_rational(&pi, &Integer::from(1_000_000), &c), None);
        // a convergent with denominator ≤ 10⁶ exists (355/113) but misses the window
        let err = Float::with_val(c.bits(), Float::with_val(c.bits(), Rational::from((355, 113))) - &pi);
        assert!(err.abs() > 5e-13);
    }

    #[test]
    fn sqrt_multiples() {
        let c = ctx();
        let big = Integer::from(1000);
        let r7 = Float::with_val(c.bits(), 7).sqrt();
        assert_eq!(recognize_sqrtp(&(r7.clone() * 3u32), 7, &big, &c), Some(Rational::from(3)));
        assert_eq!(recognize_sqrtp(&(r7 / 2u32), 7, &big, &c), Some(Rational::from((1, 2))));
        let r2 = Float::with_val(c.bits(), 2).sqrt();
        assert_eq!(recognize_sqrtp(&r2, 7, &Integer::from(1_000_000), &c), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn round_trip(a in -1_000_000i64..=1_000_000, b in 1i64..=1_000_000) {
            let c = ctx();
            let q = Rational::from((a, b));
            let x = Float::with_val(c.bits(), &q);
            prop_assert_eq!(recognize_rational(&x, &Integer::from(1_000_000), &c), Some(q));
        }
    }
}
