use rug::integer::IsPrime;
use rug::Integer;

const TRIAL_BOUND: u32 = 1_000_000;

/// Prime factorization, ascending. Trial division up to 10⁶, then Pollard–Brent.
pub fn factor(n: &Integer) -> Vec<(Integer, u32)> {
    assert!(*n > 0, "factor expects a positive integer");
    let mut n = n.clone();
    let mut out: Vec<(Integer, u32)> = Vec::new();
    let push = |p: Integer, out: &mut Vec<(Integer, u32)>| {
        if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut p = 2u32;
    while p <= TRIAL_BOUND {
        if Integer::from(p) * p > n {
            break;
        }
        while n.is_divisible_u(p) {
            n /= p;
            push(Integer::from(p), &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if m.is_probably_prime(30) != IsPrime::No {
            push(m, &mut out);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(Integer::from(&m / &d));
        stack.push(d);
    }
    out.sort();
    out
}

/// A nontrivial factor of the composite `n` (no factor below the trial bound).
fn pollard_brent(n: &Integer) -> Integer {
    let (root, rem) = n.clone().sqrt_rem(Integer::new());
    if rem == 0 {
        return root;
    }
    let step = |v: &Integer, c: u32| -> Integer { (Integer::from(v * v) + c) % n };
    for c in 1u32.. {
        let mut y = Integer::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = Integer::from(1);
        let mut q = Integer::from(1);
        let mut r = 1u64;
        const BATCH: u64 = 64;
        while g == 1 {
            x = y.clone();
            for _ in 0..r {
                y = step(&y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = step(&y, c);
                    q = (q * Integer::from(&x - &y).abs()) % n;
                }
                g = q.clone().gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            // the batch overshot; redo it one step at a time
            loop {
                ys = step(&ys, c);
                g = Integer::from(&x - &ys).abs().gcd(n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!("some polynomial x² + c splits n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn product(f: &[(Integer, u32)]) -> Integer {
        f.iter().fold(Integer::from(1), |acc, (p, e)| acc * Integer::from(p.pow(*e)))
    }

    #[test]
    fn small_numbers() {
        for n in 1u32..2000 {
            let f = factor(&Integer::from(n));
            assert_eq!(product(&f), n);
            assert!(f.iter().all(|(p, _)| p.is_probably_prime(20) != IsPrime::No));
        }
    }

    #[test]
    fn beyond_trial_division() {
        let p = Integer::from(1_000_003u64);
        let q = Integer::from(998_244_353u64);
        let n = Integer::from(&p * &q) * &p;
        assert_eq!(factor(&n), vec![(p, 2), (q, 1)]);
        let big = Integer::from(4_294_967_291u64) * Integer::from(4_294_967_279u64);
        assert_eq!(factor(&big).len(), 2);
    }
}
