use crate::error::{domain, Result};
use rug::ops::Pow;
use rug::Float;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision: certified output digits plus guard digits.
///
/// Immutable; derive a raised context with [`PrecisionContext::raised`] when a
/// computation needs to absorb cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 20;
    pub const MIN_TARGET: u32 = 30;
    pub const MIN_GUARD: u32 = 10;

    pub fn new(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits < Self::MIN_TARGET {
            return domain(format!("target_digits must be at least {}, got {target_digits}", Self::MIN_TARGET));
        }
        if guard_digits < Self::MIN_GUARD {
            return domain(format!("guard_digits must be at least {}, got {guard_digits}", Self::MIN_GUARD));
        }
        Ok(Self { target_digits, guard_digits })
    }

    pub fn with_target(target_digits: u32) -> Result<Self> {
        Self::new(target_digits, Self::DEFAULT_GUARD)
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Mantissa bits for the working digits.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// Same target, with `extra` more guard digits.
    pub fn raised(&self, extra: u32) -> Self {
        Self { target_digits: self.target_digits, guard_digits: self.guard_digits + extra }
    }

    /// A context whose *target* is this context's working precision, so the
    /// result is certified to everything this context carries.
    pub fn for_working(&self) -> Self {
        Self { target_digits: self.working_digits(), guard_digits: self.guard_digits }
    }

    pub fn float(&self, value: impl Into<f64>) -> Float {
        Float::with_val(self.bits(), value.into())
    }

    /// `10^(-(target_digits - slack))`, the tolerance used by identity checks.
    pub fn tolerance(&self, slack: u32) -> Float {
        let exp = self.target_digits as i32 - slack as i32;
        pow10(self.bits(), -exp)
    }

    /// `10^(-working_digits)`, the truncation budget for series.
    pub fn epsilon(&self) -> Float {
        pow10(self.bits(), -(self.working_digits() as i32))
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 16
}

pub(crate) fn pow10(bits: u32, exp: i32) -> Float {
    let ten = Float::with_val(bits, 10);
    ten.pow(exp)
}

/// Decimal digits of agreement implied by an error estimate, capped at `cap`.
pub fn digits_from_error(err: &Float, cap: u32) -> i64 {
    if err.is_zero() {
        return cap as i64;
    }
    let d = -err.clone().abs().log10().to_f64();
    if !d.is_finite() {
        return cap as i64;
    }
    (d.floor() as i64).min(cap as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_targets_and_guards() {
        assert!(PrecisionContext::new(29, 20).is_err());
        assert!(PrecisionContext::new(30, 9).is_err());
        let ctx = PrecisionContext::new(30, 10).unwrap();
        assert_eq!(ctx.working_digits(), 40);
    }

    #[test]
    fn tolerance_is_a_power_of_ten() {
        let ctx = PrecisionContext::with_target(50).unwrap();
        let tol = ctx.tolerance(10);
        let expected = Float::with_val(ctx.bits(), 10).pow(-40);
        assert_eq!(tol, expected);
    }

    #[test]
    fn digits_from_error_caps_and_floors() {
        let e = Float::with_val(100, 3.2e-17);
        assert_eq!(digits_from_error(&e, 50), 16);
        assert_eq!(digits_from_error(&Float::new(100), 50), 50);
    }
}
