use super::discriminant::{kronecker_epsilon, Discriminant};
use super::form::QuadForm;
use crate::error::{domain, Error, Result};
use rug::{Integer, Rational};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassGroup {
    pub d: Discriminant,
    /// Reduced representatives, principal form first, then by `(a, b)`.
    pub forms: Vec<QuadForm>,
}

impl ClassGroup {
    pub fn for_d(d: u64) -> Result<Self> {
        Ok(reduced_forms(&Discriminant::new(d)?))
    }

    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn principal(&self) -> QuadForm {
        self.forms[0]
    }

    /// Index of the class of `f` among `forms`.
    pub fn index_of(&self, f: &QuadForm) -> Option<usize> {
        if f.discriminant() != self.d.value() {
            return None;
        }
        let r = f.reduce();
        self.forms.iter().position(|g| *g == r)
    }
}

/// All reduced forms of discriminant `-d`, using `|b| ≤ a ≤ √(d/3)`.
pub fn reduced_forms(disc: &Discriminant) -> ClassGroup {
    let d = disc.d() as i64;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in -a..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = QuadForm { a, b, c };
            if f.is_reduced() && f.is_primitive() {
                forms.push(f);
            }
        }
        a += 1;
    }
    // enumeration is already (a, b)-lexicographic, and (1, b0, c) comes first
    ClassGroup { d: *disc, forms }
}

/// `-(w/2)·Σ_{0<a<d} ε(a)·a/d` as an exact rational, checked integral and positive.
pub fn class_number_dirichlet(disc: &Discriminant) -> Result<Rational> {
    if disc.d() <= 4 {
        return domain("the Dirichlet sum formula needs d > 4");
    }
    let d = disc.d() as i64;
    let mut sum = Integer::new();
    for a in 1..d {
        match kronecker_epsilon(a, disc) {
            1 => sum += a,
            -1 => sum -= a,
            _ => {}
        }
    }
    let h = Rational::from((sum * -(disc.w() as i64), Integer::from(2 * d)));
    if *h.denom() != 1 || *h.numer() <= 0 {
        return Err(Error::Consistency(format!("Dirichlet class number for d = {d} came out as {h}")));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_groups() {
        let g7 = ClassGroup::for_d(7).unwrap();
        assert_eq!(g7.forms, vec![QuadForm { a: 1, b: 1, c: 2 }]);
        let g23 = ClassGroup::for_d(23).unwrap();
        assert_eq!(
            g23.forms,
            vec![QuadForm { a: 1, b: 1, c: 6 }, QuadForm { a: 2, b: -1, c: 3 }, QuadForm { a: 2, b: 1, c: 3 }]
        );
        assert_eq!(ClassGroup::for_d(163).unwrap().h(), 1);
        assert!(ClassGroup::for_d(12).is_err());
    }

    #[test]
    fn brute_force_scan_agrees() {
        // every reduced form satisfies a ≤ c, |b| ≤ a, so 3a² ≤ d; scan a box twice as wide
        for d in [15u64, 20, 23, 47, 56, 71, 84, 103] {
            let disc = Discriminant::new(d).unwrap();
            let mut brute = Vec::new();
            for a in 1..=(d as i64) {
                for b in -(d as i64)..=(d as i64) {
                    let n = b * b + d as i64;
                    if n % (4 * a) == 0 {
                        let f = QuadForm { a, b, c: n / (4 * a) };
                        if f.is_reduced() && f.is_primitive() {
                            brute.push(f);
                        }
                    }
                }
            }
            brute.sort();
            let mut ours = reduced_forms(&disc).forms;
            ours.sort();
            assert_eq!(ours, brute, "d = {d}");
        }
    }

    #[test]
    fn dirichlet_examples() {
        for (d, h) in [(7u64, 1), (23, 3), (15, 2), (47, 5), (20, 2), (163, 1)] {
            let disc = Discriminant::new(d).unwrap();
            assert_eq!(class_number_dirichlet(&disc).unwrap(), h, "d = {d}");
        }
        assert!(class_number_dirichlet(&Discriminant::new(4).unwrap()).is_err());
    }

    #[test]
    fn index_of_finds_classes() {
        let g = ClassGroup::for_d(23).unwrap();
        assert_eq!(g.index_of(&QuadForm { a: 3, b: 1, c: 2 }), Some(1));
        assert_eq!(g.index_of(&QuadForm { a: 1, b: 1, c: 2 }), None);
    }
}
