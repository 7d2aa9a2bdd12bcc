use crate::report::Outcome;
use crate::Command;
use cmperiods::csperiods::{
    cs_verify, decimal, faltings_height_l, faltings_height_periods, faltings_height_zetak, faltings_verify,
    kronecker_verify, log_period_integral, m_invariant, period_product_verify, IdentityReport,
};
use cmperiods::fermat::{
    beta_gamma_certificate, cm_type, epsilon_rst, log_literal_twist_ratio, tate_twist_certificate, RatioCertificate,
    MAX_DENOMINATOR,
};
use cmperiods::heckechar::{is_square_mod_sqrt, psi_m_big};
use cmperiods::quadforms::{class_number_dirichlet, fundamental_range, is_prime, BigForm};
use cmperiods::relint::{recognize_rational, recognize_sqrtp};
use cmperiods::{ClassGroup, Discriminant, Error, PrecisionContext, QuadForm, Result};
use rayon::prelude::*;
use rug::{Float, Integer};
use std::collections::BTreeMap;

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn run(cmd: &Command, ctx: &PrecisionContext, out: &mut Outcome) -> Result<()> {
    match cmd {
        Command::Class { d } => class(*d, out),
        Command::VerifyCs { d } => {
            let disc = Discriminant::new(*d)?;
            out.check(&cs_verify(&disc, ctx)?);
            Ok(())
        }
        Command::Kronecker { d, class } => kronecker(*d, *class, ctx, out),
        Command::Periods { p } => periods(*p, ctx, out),
        Command::Faltings { p } => faltings(*p, ctx, out),
        Command::Fermat { p, rst } => fermat(*p, *rst, ctx, out),
        Command::Hecke { p, form } => hecke(*p, *form, out),
        Command::Recognize { value, sqrtp } => recognize(value, *sqrtp, ctx, out),
        Command::Suite { max_d } => suite(*max_d, ctx, out),
    }
}

fn class(d: u64, out: &mut Outcome) -> Result<()> {
    let disc = Discriminant::new(d)?;
    let group = ClassGroup::for_d(d)?;
    out.value("d", format!("-{d}"));
    out.value("h", group.h());
    out.value("w", disc.w());
    out.value("forms", group.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>());
    if d > 4 {
        let dirichlet = class_number_dirichlet(&disc)?;
        out.exact("class-number", inputs([("d", d.to_string())]), group.h().to_string(), dirichlet.to_string());
    }
    Ok(())
}

fn kronecker(d: u64, class: Option<usize>, ctx: &PrecisionContext, out: &mut Outcome) -> Result<()> {
    let disc = Discriminant::new(d)?;
    let group = ClassGroup::for_d(d)?;
    let forms: Vec<QuadForm> = match class {
        Some(i) if i < group.h() => vec![group.forms[i]],
        Some(i) => return Err(Error::Domain(format!("class index {i} out of range 0..{}", group.h()))),
        None => group.forms.clone(),
    };
    let reports: Vec<Result<Vec<IdentityReport>>> = forms.par_iter().map(|f| kronecker_verify(f, &disc, ctx)).collect();
    for r in reports {
        for report in r? {
            out.check(&report);
        }
    }
    Ok(())
}

fn periods(p: u64, ctx: &PrecisionContext, out: &mut Outcome) -> Result<()> {
    let disc = Discriminant::prime(p)?;
    let group = ClassGroup::for_d(p)?;
    let logs: Vec<Result<Float>> = group.forms.par_iter().map(|f| log_period_integral(f, &disc, ctx)).collect();
    let mut per_class = BTreeMap::new();
    for (f, l) in group.forms.iter().zip(logs) {
        per_class.insert(f.to_string(), decimal(&l?, ctx));
    }
    out.value("log_period_integrals", per_class);
    out.check(&period_product_verify(&disc, ctx)?);
    Ok(())
}

fn faltings(p: u64, ctx: &PrecisionContext, out: &mut Outcome) -> Result<()> {
    let disc = Discriminant::prime(p)?;
    out.value("height_periods", decimal(&faltings_height_periods(&disc, ctx)?, ctx));
    out.value("height_l", decimal(&faltings_height_l(&disc, ctx)?, ctx));
    out.value("height_zetak", decimal(&faltings_height_zetak(&disc, ctx)?, ctx));
    out.check(&faltings_verify(&disc, ctx)?);
    Ok(())
}

/// A certificate as a report row: `log ratio` against `log recognized`.
fn certificate_report(cert: &RatioCertificate, ctx: &PrecisionContext) -> IdentityReport {
    let bits = ctx.bits();
    let lhs = Float::with_val(bits, cert.ratio.abs_ref()).ln();
    let mut tag =
        inputs([("p", cert.p.to_string()), ("rst", cert.rst.iter().map(u64::to_string).collect::<Vec<_>>().join(","))]);
    match &cert.recognized {
        Some(r) => {
            tag.insert("recognized".into(), r.to_string());
            tag.insert("height".into(), r.height().to_string());
            let rhs = Float::with_val(bits, r.value(bits).abs_ref()).ln();
            let mut report = IdentityReport::compare(&cert.name, tag, lhs, rhs, ctx);
            report.pass = cert.pass;
            report
        }
        None => {
            tag.insert("recognized".into(), "none".into());
            let mut report = IdentityReport::compare(&cert.name, tag, lhs.clone(), lhs, ctx);
            report.digits_agreed = 0;
            report.pass = false;
            report
        }
    }
}

fn fermat(p: u64, (r, s, t): (u64, u64, u64), ctx: &PrecisionContext, out: &mut Outcome) -> Result<()> {
    let disc = Discriminant::prime(p)?;
    let rec = cm_type(&disc, r, s, t)?;
    let eps = epsilon_rst(&disc, r, s, t)?;
    let tate = tate_twist_certificate(&disc, r, s, t, ctx)?;
    let h = ClassGroup::for_d(p)?.h() as i64;
    out.value("phi", &rec.phi);
    out.value("u", rec.u);
    out.value("v", rec.v);
    out.value("epsilon", eps);
    out.value("m", m_invariant(&disc)?.to_string());
    out.value("ratio", decimal(&tate.ratio, ctx));
    let literal = log_literal_twist_ratio(&disc, r, s, t, ctx)?.exp();
    let bound = Integer::from(MAX_DENOMINATOR);
    let literal_recognized = recognize_rational(&literal, &bound, ctx).is_some_and(|q| {
        let diff = Float::with_val(ctx.bits(), &literal - Float::with_val(ctx.bits(), &q));
        diff.abs() < ctx.tolerance(20)
    });
    out.value("literal_ratio", decimal(&literal, ctx));
    out.value("literal_ratio_rational", literal_recognized);
    out.exact(
        "cm-type-counts",
        inputs([("p", p.to_string()), ("rst", format!("{r},{s},{t}"))]),
        format!("{}", rec.u as i64 - rec.v as i64),
        format!("{}", h * eps as i64),
    );
    out.check(&certificate_report(&tate, ctx));
    out.check(&certificate_report(&beta_gamma_certificate(&disc, r, s, t, ctx)?, ctx));
    Ok(())
}

fn hecke(p: u64, (a, b, c): (i64, i64, i64), out: &mut Outcome) -> Result<()> {
    let disc = Discriminant::prime(p)?;
    let form = QuadForm::new(a, b, c)?;
    let big = BigForm::from(form);
    let beta = psi_m_big(&big, &disc)?;
    let h = ClassGroup::for_d(p)?.h() as u32;
    let norm = beta.norm(&disc);
    let expected = Integer::from(Integer::u_pow_u(a.unsigned_abs() as u32, h));
    out.value("x", beta.x.to_string());
    out.value("y", beta.y.to_string());
    out.value("h", h);
    out.value("norm", norm.to_string());
    out.value("residue_mod_sqrt_p", beta.residue_mod_sqrt(&disc).to_string());
    let tag = || inputs([("p", p.to_string()), ("form", form.to_string())]);
    out.exact("hecke-norm-law", tag(), norm.to_string(), expected.to_string());
    let signs = format!("{},{}", is_square_mod_sqrt(&beta, &disc), is_square_mod_sqrt(&beta.neg(), &disc));
    out.exact("hecke-square-sign", tag(), signs, "true,false".into());
    Ok(())
}

fn recognize(value: &str, sqrtp: Option<u64>, ctx: &PrecisionContext, out: &mut Outcome) -> Result<()> {
    let parsed = Float::parse(value).map_err(|e| Error::Domain(format!("cannot parse {value:?}: {e}")))?;
    let x = Float::with_val(ctx.bits(), parsed);
    let bound = Integer::from(MAX_DENOMINATOR);
    let found = match sqrtp {
        Some(p) => recognize_sqrtp(&x, p, &bound, ctx).map(|q| format!("{q}·√{p}")),
        None => recognize_rational(&x, &bound, ctx).map(|q| q.to_string()),
    };
    match found {
        Some(q) => out.value("recognized", q),
        None => out.exact("recognize", inputs([("value", value.to_string())]), "none".into(), "rational".into()),
    }
    Ok(())
}

fn suite(max_d: u64, ctx: &PrecisionContext, out: &mut Outcome) -> Result<()> {
    let discs = fundamental_range(3, max_d);
    for disc in discs.iter().filter(|d| d.d() > 4) {
        let h = ClassGroup::for_d(disc.d())?.h();
        let dirichlet = class_number_dirichlet(disc)?;
        out.exact("class-number", inputs([("d", disc.d().to_string())]), h.to_string(), dirichlet.to_string());
    }
    let cs: Vec<Result<IdentityReport>> = discs.par_iter().map(|d| cs_verify(d, ctx)).collect();
    for r in cs {
        out.check(&r?);
    }

    let primes: Vec<Discriminant> =
        (7..=max_d).filter(|&p| p % 4 == 3 && is_prime(p)).map(Discriminant::prime).collect::<Result<_>>()?;
    for p in &primes {
        let m = m_invariant(p)?;
        let h = ClassGroup::for_d(p.d())?.h();
        let closed = rug::Rational::from((p.d() as i64 - 1, 4)) - rug::Rational::from((h as i64, 2));
        out.exact("m-invariant", inputs([("p", p.d().to_string())]), m.to_string(), closed.to_string());
    }
    let per_prime: Vec<Result<(IdentityReport, IdentityReport)>> =
        primes.par_iter().map(|p| Ok((period_product_verify(p, ctx)?, faltings_verify(p, ctx)?))).collect();
    for r in per_prime {
        let (periods, height) = r?;
        out.check(&periods);
        out.check(&height);
    }

    for p in [7u64, 11, 19, 23].into_iter().filter(|&p| p <= max_d) {
        let disc = Discriminant::prime(p)?;
        let h = ClassGroup::for_d(p)?.h() as i64;
        let mut ok = true;
        for (r, s, t) in cmperiods::fermat::triples(p) {
            let rec = cm_type(&disc, r, s, t)?;
            let eps = epsilon_rst(&disc, r, s, t)? as i64;
            ok &= (rec.u + rec.v) as u64 == (p - 1) / 2 && rec.u as i64 - rec.v as i64 == h * eps;
        }
        out.exact("cm-type-counts", inputs([("p", p.to_string())]), ok.to_string(), "true".into());
    }

    for p in [7u64, 23, 31, 47].into_iter().filter(|&p| p <= max_d) {
        let disc = Discriminant::prime(p)?;
        let group = ClassGroup::for_d(p)?;
        let h = group.h() as u32;
        let mut ok = true;
        for f in &group.forms {
            let beta = psi_m_big(&BigForm::from(*f), &disc)?;
            ok &= beta.norm(&disc) == Integer::from(Integer::u_pow_u(f.a as u32, h));
            ok &= is_square_mod_sqrt(&beta, &disc) && !is_square_mod_sqrt(&beta.neg(), &disc);
        }
        out.exact("hecke-norm-law", inputs([("p", p.to_string())]), ok.to_string(), "true".into());
    }
    Ok(())
}
