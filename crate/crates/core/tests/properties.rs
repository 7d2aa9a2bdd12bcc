use cmperiods::epstein::{epstein_continued, epstein_direct};
use cmperiods::fermat::{beta_gamma_certificate, cm_type, epsilon_rst, triples};
use cmperiods::heckechar::{is_square_mod_sqrt, psi_m_big, psi_multiplicativity_check};
use cmperiods::lseries::dirichlet_l;
use cmperiods::numkernel::{gamma_real, riemann_zeta};
use cmperiods::quadforms::{cornacchia_all, kronecker_epsilon, BigForm};
use cmperiods::relint::pslq;
use cmperiods::{ClassGroup, Discriminant, PrecisionContext, QuadForm};
use proptest::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::with_target(digits).unwrap()
}

fn rel(a: &Float, b: &Float) -> Float {
    let bits = a.prec().max(b.prec());
    Float::with_val(bits, Float::with_val(bits, a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_reflection(num in 1u64..10_000, extra in 1u64..10_000) {
        let c = ctx(80);
        let den = num + extra;
        let x = Float::with_val(c.bits(), num) / den;
        let pi = Float::with_val(c.bits(), Constant::Pi);
        let sin = Float::with_val(c.bits(), &pi * &x).sin();
        let lhs = gamma_real(&x, &c).unwrap() * gamma_real(&Float::with_val(c.bits(), 1 - &x), &c).unwrap() * sin;
        prop_assert!(Float::with_val(c.bits(), lhs - &pi).abs() < c.tolerance(5));
    }

    #[test]
    fn gamma_duplication(k in 1u64..1_000_000) {
        let c = ctx(80);
        let x = Float::with_val(c.bits(), k) / 2_000_000u64;
        let sqrt_pi = Float::with_val(c.bits(), Constant::Pi).sqrt();
        let lhs = gamma_real(&Float::with_val(c.bits(), &x * 2u32), &c).unwrap() * sqrt_pi;
        let rhs = Float::with_val(c.bits(), 2).pow(Float::with_val(c.bits(), &x * 2u32) - 1u32)
            * gamma_real(&x, &c).unwrap()
            * gamma_real(&Float::with_val(c.bits(), &x + 0.5), &c).unwrap();
        prop_assert!(rel(&lhs, &rhs) < c.tolerance(5));
    }
}

fn class_group(d: u64) -> Vec<QuadForm> {
    ClassGroup::for_d(d).unwrap().forms
}

proptest! {
    #[test]
    fn composition_is_an_abelian_group(
        d in prop::sample::select(vec![23u64, 47, 71]),
        i in 0usize..64, j in 0usize..64, k in 0usize..64,
    ) {
        let forms = class_group(d);
        let (f, g, h) = (forms[i % forms.len()], forms[j % forms.len()], forms[k % forms.len()]);
        let e = forms[0];
        prop_assert_eq!(f.compose(&g).unwrap(), g.compose(&f).unwrap());
        prop_assert_eq!(
            f.compose(&g).unwrap().compose(&h).unwrap(),
            f.compose(&g.compose(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.compose(&e).unwrap(), f);
        prop_assert!(f.compose(&f.inverse()).unwrap().is_principal());
    }

    #[test]
    fn cornacchia_solutions_have_the_right_norm(
        d in prop::sample::select(vec![3u64, 4, 7, 8, 15, 20, 23, 163, 427]),
        n in 1u64..200_000,
    ) {
        let disc = Discriminant::new(d).unwrap();
        for z in cornacchia_all(&disc, &Integer::from(n)) {
            prop_assert_eq!(z.norm(&disc), n);
        }
    }

    #[test]
    fn epsilon_is_completely_multiplicative(
        d in prop::sample::select(vec![7u64, 8, 20, 23, 24, 163, 1003]),
        a in -100_000i64..100_000, b in -100_000i64..100_000,
    ) {
        let disc = Discriminant::new(d).unwrap();
        prop_assert_eq!(
            kronecker_epsilon(a * b, &disc),
            kronecker_epsilon(a, &disc) * kronecker_epsilon(b, &disc)
        );
    }

    #[test]
    fn psi_m_is_multiplicative_and_square(p in prop::sample::select(vec![7u64, 23, 31, 47]), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let disc = Discriminant::prime(p).unwrap();
        let forms = class_group(p);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut random_form = || loop {
            let f = forms[rng.gen_range(0..forms.len())];
            let (x, y): (i64, i64) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
            if Integer::from(x).gcd(&Integer::from(y)) != 1 || f.eval(x, y) % p as i128 == 0 {
                continue;
            }
            let (_, v, u) = Integer::from(x).extended_gcd(Integer::from(y), Integer::new());
            let (u, v) = (-u.to_i64().unwrap(), v.to_i64().unwrap());
            let b = 2 * (f.a * x * u + f.c * y * v) + f.b * (x * v + y * u);
            return BigForm { a: Integer::from(f.eval(x, y)), b: Integer::from(b), c: Integer::from(f.eval(u, v)) };
        };
        let (f, g) = (random_form(), random_form());
        let beta = psi_m_big(&f, &disc).unwrap();
        prop_assert!(is_square_mod_sqrt(&beta, &disc));
        prop_assert!(psi_multiplicativity_check(&disc, &f, &g).unwrap());
    }
}

#[test]
fn fermat_certificates_are_permutation_symmetric() {
    let c = ctx(60);
    for p in [7u64, 11] {
        let disc = Discriminant::prime(p).unwrap();
        for (r, s, t) in triples(p) {
            let base = cm_type(&disc, r, s, t).unwrap();
            let eps = epsilon_rst(&disc, r, s, t).unwrap();
            for (a, b, e) in [(r, t, s), (s, r, t), (s, t, r), (t, r, s), (t, s, r)] {
                let rec = cm_type(&disc, a, b, e).unwrap();
                assert_eq!((rec.phi.clone(), rec.u, rec.v), (base.phi.clone(), base.u, base.v));
                assert_eq!(epsilon_rst(&disc, a, b, e).unwrap(), eps);
                let cert = beta_gamma_certificate(&disc, a, b, e, &c).unwrap();
                assert!(cert.pass, "p = {p} ({a},{b},{e})");
                assert!(cert.height.unwrap() < 100_000_000);
            }
        }
    }
}

#[test]
fn pslq_relations_hold_at_doubled_precision() {
    let c = ctx(60);
    let c2 = ctx(120);
    let consts = |c: &PrecisionContext| {
        let b = c.bits();
        let pi = Float::with_val(b, Constant::Pi);
        let log2 = Float::with_val(b, Constant::Log2);
        let log3 = Float::with_val(b, 3).ln();
        let log6 = Float::with_val(b, 6).ln();
        let mix = Float::with_val(b, &pi * 3u32) - Float::with_val(b, &log2 * 7u32);
        vec![pi, log2, log3, log6, mix]
    };
    let rel = pslq(&consts(&c), &Integer::from(1000), &c).unwrap().expect("relation exists");
    let mut residual = Float::with_val(c2.bits(), 0);
    for (k, x) in rel.coeffs.iter().zip(consts(&c2)) {
        residual += x * Float::with_val(c2.bits(), k);
    }
    assert!(residual.abs() < c2.tolerance(20));
}

#[test]
fn dedekind_zeta_factors_at_two() {
    let c = ctx(50);
    let two = Float::with_val(c.bits(), 2);
    for d in [7u64, 23, 47] {
        let disc = Discriminant::new(d).unwrap();
        let mut direct = Float::with_val(c.bits(), 0);
        let mut continued = Float::with_val(c.bits(), 0);
        for f in class_group(d) {
            direct += epstein_direct(&f, &two, &c).unwrap();
            continued += epstein_continued(&f, &two, &c).unwrap();
        }
        direct /= disc.w();
        continued /= disc.w();
        let product = riemann_zeta(&two, &c).unwrap() * dirichlet_l(&disc, &two, &c).unwrap();
        assert!(rel(&direct, &product) < c.tolerance(10), "d = {d}");
        assert!(rel(&continued, &product) < c.tolerance(10), "d = {d}");
    }
}
