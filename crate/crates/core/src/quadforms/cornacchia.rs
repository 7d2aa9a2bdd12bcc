use super::discriminant::Discriminant;
use super::factor::factor;
use super::quadint::QuadInteger;
use rug::ops::Pow;
use rug::Integer;

/// Square roots of `c` modulo an odd prime `p ∤ c` (Tonelli–Shanks); `None` if `c` is a non-residue.
fn sqrt_mod_prime(c: &Integer, p: &Integer) -> Option<Integer> {
    let c = Integer::from(c.modulo_ref(p));
    if c.legendre(p) != 1 {
        return None;
    }
    let p1 = Integer::from(p - 1);
    let s = p1.find_one(0).unwrap();
    let q = Integer::from(&p1 >> s);
    let mut z = Integer::from(2);
    while z.legendre(p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut cc = z.pow_mod(&q, p).unwrap();
    let mut t = c.clone().pow_mod(&q, p).unwrap();
    let mut r = c.pow_mod(&(Integer::from(&q + 1) / 2), p).unwrap();
    while t != 1 {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != 1 {
            t2 = (Integer::from(&t2 * &t2)) % p;
            i += 1;
        }
        let b = cc.clone().pow_mod(&(Integer::from(1) << (m - i - 1)), p).unwrap();
        m = i;
        cc = Integer::from(&b * &b) % p;
        t = (t * &cc) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// All roots of `x² ≡ c (mod p^e)`.
fn sqrt_mod_prime_power(c: &Integer, p: &Integer, e: u32) -> Vec<Integer> {
    let pe = Integer::from(p.pow(e));
    let c = Integer::from(c.modulo_ref(&pe));
    if *p != 2 && !c.is_divisible(p) {
        // Newton lifting from a simple root mod p
        let Some(r0) = sqrt_mod_prime(&c, p) else { return Vec::new() };
        let mut r = r0;
        let mut k = 1;
        while k < e {
            k = (2 * k).min(e);
            let pk = Integer::from(p.pow(k));
            let inv = Integer::from(&r * 2).invert(&pk).expect("2r is a unit");
            let delta = (Integer::from(&r * &r) - &c) * inv;
            r = (r - delta).modulo(&pk);
        }
        let other = Integer::from(&pe - &r).modulo(&pe);
        let mut roots = vec![r, other];
        roots.sort();
        roots.dedup();
        return roots;
    }
    // p = 2 or p | c: lift one digit at a time (p is small here)
    let p_u = p.to_u64().expect("ramified primes are small");
    let mut roots: Vec<Integer> =
        (0..p_u).map(Integer::from).filter(|r| Integer::from(r * r - &c).is_divisible(p)).collect();
    let mut pk = p.clone();
    for _ in 1..e {
        let next = Integer::from(&pk * p);
        let mut lifted = Vec::new();
        for r in &roots {
            for j in 0..p_u {
                let cand = r + Integer::from(&pk * j);
                if Integer::from(&cand * &cand - &c).is_divisible(&next) {
                    lifted.push(cand);
                }
            }
        }
        roots = lifted;
        pk = next;
        if roots.is_empty() {
            break;
        }
    }
    roots
}

/// All `r ∈ [0, n)` with `r² ≡ c (mod n)`.
pub fn sqrt_mod(c: &Integer, n: &Integer) -> Vec<Integer> {
    let mut acc = vec![Integer::new()];
    let mut modulus = Integer::from(1);
    if *n == 1 {
        return acc;
    }
    for (p, e) in factor(n) {
        let pe = Integer::from((&p).pow(e));
        let local = sqrt_mod_prime_power(c, &p, e);
        if local.is_empty() {
            return Vec::new();
        }
        // CRT with the moduli coprime
        let inv = Integer::from(modulus.invert_ref(&pe).unwrap());
        let next_mod = Integer::from(&modulus * &pe);
        let mut merged = Vec::with_capacity(acc.len() * local.len());
        for a in &acc {
            for b in &local {
                let t = (Integer::from(b - a) * &inv).modulo(&pe);
                merged.push(a + Integer::from(&t * &modulus));
            }
        }
        acc = merged;
        modulus = next_mod;
    }
    acc.sort();
    acc.dedup();
    acc
}

/// Descent step: from a root `r` of `r² ≡ -d (mod m)`, run Euclid on `(m, r)`
/// until below `bound` and test whether the remainder completes to a solution of
/// `x² + d·y² = target`.
fn descend(m: &Integer, r: &Integer, bound: &Integer, target: &Integer, d: u64) -> Option<(Integer, Integer)> {
    let mut a = m.clone();
    let mut b = r.clone();
    while b > *bound {
        let rem = Integer::from(&a % &b);
        a = b;
        b = rem;
    }
    let rest = target - Integer::from(&b * &b);
    if rest < 0 || !rest.is_divisible_u(d as u32) {
        return None;
    }
    let y2 = rest / d;
    if y2.is_perfect_square() {
        Some((b, y2.sqrt()))
    } else {
        None
    }
}

fn canonical(x: Integer, y: Integer) -> QuadInteger {
    if y < 0 || (y == 0 && x < 0) {
        QuadInteger { x: -x, y: -y }
    } else {
        QuadInteger { x, y }
    }
}

/// Every `(x + y√-d)/2` of norm `n`, one per `±` pair (`y > 0`, or `y = 0` and `x > 0`).
/// Sorted with elements not divisible by a rational integer first.
pub fn cornacchia_all(disc: &Discriminant, n: &Integer) -> Vec<QuadInteger> {
    assert!(*n >= 1, "norm must be positive");
    assert!(disc.d() < 1 << 31, "d out of range for the descent");
    let d = disc.d();
    let mut found: Vec<(Integer, QuadInteger)> = Vec::new();
    let push = |g: &Integer, x: Integer, y: Integer, found: &mut Vec<(Integer, QuadInteger)>| {
        let (x, y) = (x * g, y * g);
        for (sx, sy) in [(x.clone(), y.clone()), (Integer::from(-&x), y.clone())] {
            let q = canonical(sx, sy);
            if !found.iter().any(|(_, f)| *f == q) {
                found.push((g.clone(), q));
            }
        }
    };
    for (g, m) in square_divisors(n) {
        let four_m = Integer::from(&m * 4);
        let two_m = Integer::from(&m * 2);
        // y = 0: x = 2√m
        if m.is_perfect_square() {
            push(&g, Integer::from(m.sqrt_ref()) * 2, Integer::new(), &mut found);
        }
        let bound = Integer::from(four_m.sqrt_ref());
        let minus_d = Integer::from(-(d as i64));
        for r in sqrt_mod(&minus_d, &four_m) {
            if r > two_m {
                continue;
            }
            if let Some((x, y)) = descend(&two_m, &r, &bound, &four_m, d) {
                push(&g, x, y, &mut found);
            }
        }
        // x, y both even with x/2 + (y/2)√-d primitive
        if d % 2 == 1 {
            let bound = Integer::from(m.sqrt_ref());
            for r in sqrt_mod(&minus_d, &m) {
                if let Some((x, y)) = descend(&m, &r, &bound, &m, d) {
                    push(&g, x * 2, y * 2, &mut found);
                }
            }
        }
    }
    // descent returns one element per root; the other associates come from the units
    if disc.w() > 2 {
        let unit = if d == 3 {
            QuadInteger { x: Integer::from(1), y: Integer::from(1) }
        } else {
            QuadInteger { x: Integer::new(), y: Integer::from(1) }
        };
        let mut i = 0;
        while i < found.len() {
            let (g, q) = found[i].clone();
            let mut v = q;
            for _ in 1..disc.w() {
                v = v.mul(&unit, disc);
                let c = canonical(v.x.clone(), v.y.clone());
                if !found.iter().any(|(_, f)| *f == c) {
                    found.push((g.clone(), c));
                }
            }
            i += 1;
        }
    }
    let n4 = Integer::from(n * 4);
    found.retain(|(_, q)| Integer::from(&q.x * &q.x) + Integer::from(&q.y * &q.y) * d == n4);
    found.sort_by(|(g1, q1), (g2, q2)| g1.cmp(g2).then(q1.y.cmp(&q2.y)).then(q2.x.cmp(&q1.x)));
    found.into_iter().map(|(_, q)| q).collect()
}

/// One element of norm `n`, preferring one not divisible by a rational integer.
pub fn cornacchia(disc: &Discriminant, n: &Integer) -> Option<QuadInteger> {
    cornacchia_all(disc, n).into_iter().next()
}

/// Pairs `(g, n/g²)` over `g ≥ 1` with `g² | n`.
fn square_divisors(n: &Integer) -> Vec<(Integer, Integer)> {
    let mut gs = vec![Integer::from(1)];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        for g in &gs {
            let mut pk = Integer::from(1);
            for _ in 0..=e / 2 {
                next.push(Integer::from(g * &pk));
                pk *= &p;
            }
        }
        gs = next;
    }
    gs.sort();
    gs.into_iter()
        .map(|g| {
            let m = n / Integer::from(&g * &g);
            (g, m)
        })
        .collect()
}
