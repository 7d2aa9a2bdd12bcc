use once_cell::sync::Lazy;
use rug::{Integer, Rational};
use std::sync::Mutex;

// B_0, B_1, ..., grown on demand.
static TABLE: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(vec![Rational::from(1), Rational::from((-1, 2))]));

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Rational {
    let mut table = TABLE.lock().expect("bernoulli table poisoned");
    extend(&mut table, n);
    table[n].clone()
}

/// `B_2, B_4, ..., B_{2k}` for `k = 1..=count`.
pub fn even_bernoulli(count: usize) -> Vec<Rational> {
    let mut table = TABLE.lock().expect("bernoulli table poisoned");
    extend(&mut table, 2 * count);
    (1..=count).map(|k| table[2 * k].clone()).collect()
}

fn extend(table: &mut Vec<Rational>, n: usize) {
    while table.len() <= n {
        let m = table.len();
        if m % 2 == 1 {
            table.push(Rational::new());
            continue;
        }
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from(&binom * b);
            }
            binom *= (m + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        acc /= (m + 1) as u32;
        table.push(-acc);
    }
}
