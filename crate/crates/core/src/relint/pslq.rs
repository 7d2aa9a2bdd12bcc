use crate::error::{domain, Error, Result};
use crate::numkernel::PrecisionContext;
use rug::{Float, Integer};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relation {
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: Vec<Integer>,
    #[serde(serialize_with = "ser_float")]
    pub residual: Float,
}

fn ser_coeffs<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn ser_float<S: serde::Serializer>(v: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string_radix(10, Some(6)))
}

/// Residual `|Σ cᵢxᵢ|` and the acceptance bound `10^(-target/2)·max|xᵢ|·max|cᵢ|`.
fn residual_and_bound(xs: &[Float], coeffs: &[Integer], ctx: &PrecisionContext) -> (Float, Float) {
    let bits = xs.iter().map(Float::prec).max().unwrap_or(ctx.bits()).max(ctx.bits());
    let mut sum = Float::with_val(bits, 0);
    for (x, c) in xs.iter().zip(coeffs) {
        sum += Float::with_val(bits, x * c);
    }
    let max_x = xs.iter().map(|x| Float::with_val(bits, x.abs_ref())).fold(Float::with_val(bits, 0), |a, b| a.max(&b));
    let max_c = coeffs.iter().map(|c| Integer::from(c.abs_ref())).max().unwrap_or_default();
    let half = -((ctx.target_digits() / 2) as i32);
    let bound = pow10(bits, half) * max_x * max_c;
    (sum.abs(), bound)
}

fn nint(x: &Float) -> Integer {
    x.clone().round().to_integer().expect("finite")
}

/// Integer relation among `xs` with all `|cᵢ| ≤ max_coeff`, by PSLQ.
///
/// Returns `Ok(None)` once the iteration proves no relation of norm
/// `≤ max_coeff` exists (or the iteration cap is hit), and a precision error if
/// the integer matrices outgrow the working precision first.
#[allow(clippy::needless_range_loop)] // rows of H are indexed against each other
pub fn pslq(xs: &[Float], max_coeff: &Integer, ctx: &PrecisionContext) -> Result<Option<Relation>> {
    let n = xs.len();
    if n < 2 {
        return domain("pslq needs at least two numbers");
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return domain("pslq inputs must be finite");
    }
    let bits = ctx.bits();
    let digits = ctx.target_digits();
    let zero = Float::with_val(bits, 0);
    let norm = xs.iter().fold(zero.clone(), |acc, x| acc + Float::with_val(bits, x * x)).sqrt();
    if norm.is_zero() {
        return domain("pslq inputs are all zero");
    }

    // a zero entry is its own relation
    for (i, x) in xs.iter().enumerate() {
        if Float::with_val(bits, x / &norm).abs() < pow10(bits, -(digits as i32) * 2 / 3) {
            let mut coeffs = vec![Integer::new(); n];
            coeffs[i] = Integer::from(1);
            let (residual, _) = residual_and_bound(xs, &coeffs, ctx);
            return Ok(Some(Relation { coeffs, residual }));
        }
    }

    let gamma = Float::with_val(bits, 4) / 3u32;
    let gamma = gamma.sqrt() + 0.01f64; // 2/√3 plus a margin
    let detect = pow10(bits, -((digits as i32) * 2 / 3 - 5));
    let max_entry = pow10(bits, (ctx.working_digits() as i32) - 5);

    let mut y: Vec<Float> = xs.iter().map(|x| Float::with_val(bits, x / &norm)).collect();
    let mut s = vec![zero.clone(); n];
    for k in (0..n).rev() {
        let tail = if k + 1 < n { Float::with_val(bits, &s[k + 1] * &s[k + 1]) } else { zero.clone() };
        s[k] = (tail + Float::with_val(bits, &y[k] * &y[k])).sqrt();
    }
    let mut a: Vec<Vec<Integer>> = (0..n).map(|i| (0..n).map(|j| Integer::from((i == j) as u8)).collect()).collect();
    let mut b = a.clone();
    let mut h = vec![vec![zero.clone(); n - 1]; n];
    for i in 0..n {
        for j in 0..(n - 1).min(i + 1) {
            if i == j {
                h[i][j] = Float::with_val(bits, &s[j + 1] / &s[j]);
            } else if i > j {
                let den = Float::with_val(bits, &s[j] * &s[j + 1]);
                h[i][j] = -Float::with_val(bits, &y[i] * &y[j]) / den;
            }
        }
    }

    let reduce = |h: &mut Vec<Vec<Float>>,
                  y: &mut Vec<Float>,
                  a: &mut Vec<Vec<Integer>>,
                  b: &mut Vec<Vec<Integer>>,
                  i: usize,
                  j: usize| {
        let t = nint(&Float::with_val(bits, &h[i][j] / &h[j][j]));
        if t == 0 {
            return;
        }
        let tf = Float::with_val(bits, &t);
        let yi = Float::with_val(bits, &y[i] * &tf);
        y[j] += yi;
        for k in 0..=j {
            let v = Float::with_val(bits, &h[j][k] * &tf);
            h[i][k] -= v;
        }
        for k in 0..n {
            let v = Integer::from(&a[j][k] * &t);
            a[i][k] -= v;
            let w = Integer::from(&b[k][i] * &t);
            b[k][j] += w;
        }
    };

    for i in 1..n {
        for j in (0..i).rev() {
            reduce(&mut h, &mut y, &mut a, &mut b, i, j);
        }
    }

    let max_iter = 40 * n * ctx.working_digits() as usize;
    for _ in 0..max_iter {
        // exchange step
        let mut m = 0;
        let mut best = zero.clone();
        let mut gp = Float::with_val(bits, 1);
        for i in 0..n - 1 {
            gp *= &gamma;
            let v = Float::with_val(bits, h[i][i].abs_ref()) * &gp;
            if v > best {
                best = v;
                m = i;
            }
        }
        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 1 < n - 1 {
            let t0 = Float::with_val(bits, &h[m][m] * &h[m][m]) + Float::with_val(bits, &h[m][m + 1] * &h[m][m + 1]);
            let t0 = t0.sqrt();
            let t1 = Float::with_val(bits, &h[m][m] / &t0);
            let t2 = Float::with_val(bits, &h[m][m + 1] / &t0);
            for row in h.iter_mut().skip(m) {
                let t3 = row[m].clone();
                let t4 = row[m + 1].clone();
                row[m] = Float::with_val(bits, &t1 * &t3) + Float::with_val(bits, &t2 * &t4);
                row[m + 1] = Float::with_val(bits, &t1 * &t4) - Float::with_val(bits, &t2 * &t3);
            }
        }
        for i in (m + 1)..n {
            for j in (0..(i).min(m + 2)).rev() {
                reduce(&mut h, &mut y, &mut a, &mut b, i, j);
            }
        }

        // termination tests
        let largest_a = a.iter().flatten().map(|v| Integer::from(v.abs_ref())).max().unwrap_or_default();
        if Float::with_val(bits, &largest_a) > max_entry {
            return Err(Error::Precision {
                achieved: ctx.working_digits() as i64,
                requested: digits as i64,
                context: "PSLQ integer matrix exceeded working precision".into(),
            });
        }
        for (j, yj) in y.iter().enumerate() {
            if Float::with_val(bits, yj.abs_ref()) < detect {
                let coeffs: Vec<Integer> = (0..n).map(|k| b[k][j].clone()).collect();
                if coeffs.iter().all(|c| c.is_zero()) {
                    continue;
                }
                if coeffs.iter().any(|c| Integer::from(c.abs_ref()) > *max_coeff) {
                    return Ok(None);
                }
                let (residual, bound) = residual_and_bound(xs, &coeffs, ctx);
                if residual < bound {
                    return Ok(Some(Relation { coeffs: canonical_sign(coeffs), residual }));
                }
                return Ok(None);
            }
        }
        // any relation has norm ≥ 1/max|H_jj|
        let max_diag =
            (0..n - 1).map(|j| Float::with_val(bits, h[j][j].abs_ref())).fold(zero.clone(), |a, b| a.max(&b));
        if max_diag.is_zero() {
            return Ok(None);
        }
        let lower = Float::with_val(bits, max_diag.recip_ref());
        if lower > Float::with_val(bits, max_coeff) * (n as u32) {
            return Ok(None);
        }
    }
    Ok(None)
}

/// First nonzero coefficient positive.
fn canonical_sign(mut coeffs: Vec<Integer>) -> Vec<Integer> {
    if coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| *c < 0) {
        for c in coeffs.iter_mut() {
            *c = Integer::from(-&*c);
        }
    }
    coeffs
}

fn pow10(bits: u32, exp: i32) -> Float {
    use rug::ops::Pow;
    Float::with_val(bits, 10).pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_target(120).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn sqrt_two() {
        let c = ctx();
        let r2 = Float::with_val(c.bits(), 2).sqrt();
        let xs = [c.float(1), r2, c.float(2)];
        let rel = pslq(&xs, &Integer::from(1000), &c).unwrap().unwrap();
        // 2·1 + 0·√2 - 1·2 or any multiple of the planted relation
        let (res, _) = residual_and_bound(&xs, &rel.coeffs, &c);
        assert!(res < c.tolerance(0));
        assert!(rel.coeffs[1].is_zero());
        assert_eq!(rel.coeffs[0], Integer::from(-2) * &rel.coeffs[2]);
    }

    #[test]
    fn golden_ratio() {
        let c = ctx();
        let phi = (Float::with_val(c.bits(), 5).sqrt() + 1u32) / 2u32;
        let phi2 = Float::with_val(c.bits(), &phi * &phi);
        let rel = pslq(&[c.float(1), phi, phi2], &Integer::from(1000), &c).unwrap().unwrap();
        assert_eq!(rel.coeffs, ints(&[1, 1, -1]));
    }

    #[test]
    fn no_small_relation_for_pi() {
        let c = ctx();
        let pi = Float::with_val(c.bits(), rug::float::Constant::Pi);
        assert!(pslq(&[c.float(1), pi.clone()], &Integer::from(1000), &c).unwrap().is_none());
        // exhaustive check that no relation with |a|, |b| ≤ 1000 is near zero
        for b in 1..=1000i64 {
            let a = Float::with_val(c.bits(), &pi * b).round();
            let r = Float::with_val(c.bits(), &pi * b) - a;
            assert!(r.abs() > 1e-8);
        }
    }

    #[test]
    fn planted_relations_on_four_vectors() {
        let c = ctx();
        let bits = c.bits();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..100 {
            let x: Vec<Float> = (0..3)
                .map(|_| {
                    Float::with_val(bits, rng.gen::<f64>()).sqrt() + Float::with_val(bits, rng.gen_range(1..50u32)).ln()
                })
                .collect();
            let planted: Vec<i64> = (0..3).map(|_| rng.gen_range(-1000..=1000)).collect();
            let last: i64 = rng.gen_range(1..=1000);
            // x₃ chosen so that planted·(x₀,x₁,x₂) + last·x₃ = 0
            let mut dot = Float::with_val(bits, 0);
            for (xi, ci) in x.iter().zip(&planted) {
                dot += Float::with_val(bits, xi * *ci);
            }
            let x3 = -dot / last;
            let mut xs = x.clone();
            xs.push(x3);
            let rel = pslq(&xs, &Integer::from(1000), &c).unwrap();
            let rel = rel.unwrap_or_else(|| panic!("trial {trial}: no relation found"));
            // re-evaluate at doubled precision
            let wide: Vec<Float> = xs.iter().map(|v| Float::with_val(2 * bits, v)).collect();
            let (res, bound) = residual_and_bound(&wide, &rel.coeffs, &c);
            assert!(res < bound, "trial {trial}");
            let mut expected = ints(&planted);
            expected.push(Integer::from(last));
            let expected = canonical_sign(expected);
            let g = expected.iter().fold(Integer::new(), |g, v| g.gcd(v));
            let expected: Vec<Integer> = expected.into_iter().map(|v| v / &g).collect();
            assert_eq!(rel.coeffs, expected, "trial {trial}");
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        let c = ctx();
        assert!(pslq(&[c.float(1)], &Integer::from(10), &c).is_err());
        assert!(pslq(&[c.float(0), c.float(0)], &Integer::from(10), &c).is_err());
    }
}
