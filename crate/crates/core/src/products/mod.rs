//! Products of basic hypergeometric series: the Askey–Wilson generating
//! function and its extensions, nonterminating product transformations of
//! two `2φ1`, their classical limits, and the Cayley–Orr coefficient lemmas.
//!
//! Every product identity is checked by value at a point inside a safety
//! radius and, where the parameters stay rational, coefficient by
//! coefficient in exact arithmetic.

mod cayley_orr;
mod classical;
mod formulas;
mod generating;
mod power_series;

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::point_rng;
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::series::SAFETY_WINDOW;

pub use cayley_orr::{cayley_orr_an, cayley_orr_check, cayley_orr_weighted, CayleyOrr};
pub use classical::{classical_limit_check, sweep_classical, ClassicalLimit, CLASSICAL_EPS};
pub use generating::{awgf_coefficient_check, quad_cor13, triple_at_u_equals_t, triple_sum_32pf, Depths, TripleSumParams};
pub use power_series::PowerSeriesTrunc;

use formulas::{check_poles, eval_side, formula, side_coefficients, term_coefficients, Formula};

type X = ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProductId {
    Awgf,
    #[serde(rename = "TRIPLE_32PF")]
    Triple32pf,
    #[serde(rename = "QUAD_COR13")]
    QuadCor13,
    WdAppell,
    #[serde(rename = "SCHLOSSER_T4")]
    SchlosserT4,
    SrivJain,
    JacksonClausen,
    #[serde(rename = "NASSRALLAH_1")]
    Nassrallah1,
    #[serde(rename = "NASSRALLAH_2")]
    Nassrallah2,
    #[serde(rename = "THM21")]
    Thm21,
    #[serde(rename = "TRIVIAL_21_32")]
    Trivial2132,
    #[serde(rename = "SRIVASTAVA_313")]
    Srivastava313,
    T515,
    T516,
    T517,
    T518,
    CayleyOrrA,
    CayleyOrrB,
}

impl ProductId {
    pub const ALL: [ProductId; 18] = [
        ProductId::Awgf,
        ProductId::Triple32pf,
        ProductId::QuadCor13,
        ProductId::WdAppell,
        ProductId::SchlosserT4,
        ProductId::SrivJain,
        ProductId::JacksonClausen,
        ProductId::Nassrallah1,
        ProductId::Nassrallah2,
        ProductId::Thm21,
        ProductId::Trivial2132,
        ProductId::Srivastava313,
        ProductId::T515,
        ProductId::T516,
        ProductId::T517,
        ProductId::T518,
        ProductId::CayleyOrrA,
        ProductId::CayleyOrrB,
    ];

    pub fn name(&self) -> &'static str {
        use ProductId::*;
        match self {
            Awgf => "AWGF",
            Triple32pf => "TRIPLE_32PF",
            QuadCor13 => "QUAD_COR13",
            WdAppell => "WD_APPELL",
            SchlosserT4 => "SCHLOSSER_T4",
            SrivJain => "SRIV_JAIN",
            JacksonClausen => "JACKSON_CLAUSEN",
            Nassrallah1 => "NASSRALLAH_1",
            Nassrallah2 => "NASSRALLAH_2",
            Thm21 => "THM21",
            Trivial2132 => "TRIVIAL_21_32",
            Srivastava313 => "SRIVASTAVA_313",
            T515 => "T515",
            T516 => "T516",
            T517 => "T517",
            T518 => "T518",
            CayleyOrrA => "CAYLEY_ORR_A",
            CayleyOrrB => "CAYLEY_ORR_B",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Parameter names, the expansion variable last.
    pub fn params(&self) -> &'static [&'static str] {
        use ProductId::*;
        match self {
            Awgf | QuadCor13 => &["q", "a", "b", "c", "d", "w", "t"],
            Triple32pf => &["q", "a", "b", "c", "d", "w", "u", "t"],
            WdAppell => &["q", "a", "b", "d", "u", "t"],
            SchlosserT4 | SrivJain | JacksonClausen | Nassrallah1 | Nassrallah2 | Thm21 => &["q", "a", "b", "z"],
            Trivial2132 => &["q", "a", "z"],
            Srivastava313 => &["q", "a", "b", "t"],
            T515 | T516 | T517 | T518 => &["q", "a", "c", "t"],
            CayleyOrrA | CayleyOrrB => &["q", "a", "b", "c", "z"],
        }
    }

    pub fn variable(&self) -> &'static str {
        self.params().last().expect("nonempty")
    }

    /// Parameters that may be zero besides the expansion variable.
    fn zero_allowed(&self) -> &'static [&'static str] {
        match self {
            ProductId::Awgf => &["a", "b", "c", "d"],
            ProductId::Triple32pf => &["u"],
            _ => &[],
        }
    }

    /// Whether exact coefficient checks exist (no infinite products and no
    /// parameter-dependent argument).
    pub fn has_exact_coefficients(&self) -> bool {
        !matches!(self, ProductId::Triple32pf | ProductId::QuadCor13 | ProductId::WdAppell)
    }

    pub fn description(&self) -> &'static str {
        use ProductId::*;
        match self {
            Awgf => "Ismail–Wilson product generating function for Askey–Wilson polynomials",
            Triple32pf => "product of two 3phi2 as a triple sum over shifted Askey–Wilson polynomials",
            QuadCor13 => "quadruple sum with infinite-product closed form",
            WdAppell => "3phi2 at w = d as a multiple of a q-Appell function",
            SchlosserT4 => "Schlosser's product 2phi1(a, q/a; -q) 2phi1(b, q/b; -q) as two 4phi3 in base q^2",
            SrivJain => "Srivastava–Jain product 2phi1(±a; a²) 2phi1(±b; b²) as a 4phi3 in base q^2",
            JacksonClausen => "Jackson's q-analogue of Clausen's formula",
            Nassrallah1 => "Nassrallah's first product of 2phi1 in base q^2 as a 4phi3",
            Nassrallah2 => "Nassrallah's second product of 2phi1 in base q^2 as a 4phi3",
            Thm21 => "product of 2phi1(qa², qb²; qa²b²) and 2phi1(a²/q, b²/q; a²b²/q) as a 4phi3",
            Trivial2132 => "2phi1(q², a²; qa²; q², z) as a 3phi2 in base q",
            Srivastava313 => "Srivastava's product 2phi1(a, b; -ab; q, ±t) as a 4phi3 in base q^2",
            T515 => "product from the quadratic special value: 2phi1(-c, qc; qc²) 2phi1(±a; a²), two terms",
            T516 => "product from the quadratic special value: 2phi1(-a, -c; -ac) 2phi1(-a, -qc; -qac), two terms",
            T517 => "product from the esoteric special value: 2phi1(-c, q²c; q²c²) 2phi1(±a; a²), three terms",
            T518 => "product from the esoteric special value: 2phi1(-a, -c; -ac) 2phi1(-a, -q²c; -q²ac), three terms",
            CayleyOrrA => "Cayley–Orr lemma with auxiliary 2phi1(a/q, b/q; c; q, q²cz/(ab))",
            CayleyOrrB => "Cayley–Orr lemma with auxiliary 2phi1(a/q, b; c/q; q, cz/(ab))",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductOptions {
    pub prec: u32,
    pub eps: f64,
    /// Largest admissible modulus of the expansion variable.
    pub radius: f64,
}

impl Default for ProductOptions {
    fn default() -> Self {
        Self { prec: 256, eps: 1e-30, radius: 0.25 }
    }
}

/// Sum `term(0) + term(1) + ...` until [`SAFETY_WINDOW`] consecutive terms
/// fall below `eps` relative to the running sum.
pub(crate) fn sum_adaptive(mut term: impl FnMut(usize) -> Result<ApproxScalar>, eps: f64) -> Result<(ApproxScalar, usize)> {
    let mut sum: Option<ApproxScalar> = None;
    let mut quiet = 0;
    for n in 0..100_000 {
        let t = term(n)?;
        let s = match sum.take() {
            Some(s) => s + &t,
            None => t.clone(),
        };
        let scale = s.abs_f64().max(1.0);
        quiet = if t.abs_f64() <= eps * scale { quiet + 1 } else { 0 };
        sum = Some(s);
        if quiet >= SAFETY_WINDOW {
            return Ok((sum.expect("set above"), n + 1));
        }
    }
    Err(Error::NoConvergence("adaptive sum did not settle within 100000 terms".into()))
}

/// Checks names and zeros; the expansion variable may be absent when
/// `need_variable` is false.
fn validate(id: ProductId, params: &ParamMap, need_variable: bool) -> Result<()> {
    let var = id.variable();
    for name in id.params() {
        match params.get(*name) {
            None if *name == var && !need_variable => {}
            None => return Err(Error::MissingParameter(name.to_string())),
            Some(v) if v.is_zero() && *name != var && !id.zero_allowed().contains(name) => {
                return Err(Error::ConstraintViolation(format!("{}: parameter {name} must be nonzero", id.name())));
            }
            Some(_) => {}
        }
    }
    if let Some(extra) = params.keys().find(|k| !id.params().contains(&k.as_str())) {
        return Err(Error::ConstraintViolation(format!("{}: unknown parameter {extra}", id.name())));
    }
    Ok(())
}

fn vars(params: &ParamMap) -> BTreeMap<&str, X> {
    params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect()
}

fn exact_formula(id: ProductId, params: &ParamMap) -> Result<Formula<X>> {
    formula(id, &vars(params))?.ok_or_else(|| Error::ExactUnsupported(format!("{} has no single-series form", id.name())))
}

fn radius_ok(x: &X, radius: f64) -> bool {
    let r = num_rational::BigRational::from_float(radius).expect("finite radius");
    x.norm_sqr() <= &r * &r
}

/// Value check of one product identity at the given point.
pub fn verify_product(id: ProductId, params: &ParamMap, opts: &ProductOptions) -> Result<VerificationReport> {
    validate(id, params, true)?;
    let q = &params["q"];
    if !q.in_unit_disk() {
        return Err(Error::DivergenceError("|q| < 1 required".into()));
    }
    let x = &params[id.variable()];
    if !radius_ok(x, opts.radius) {
        return Err(Error::DivergenceError(format!("|{}| exceeds the safety radius {}", id.variable(), opts.radius)));
    }
    match id {
        ProductId::Awgf => generating::awgf_value(params, opts),
        ProductId::Triple32pf => triple_sum_32pf(&TripleSumParams::from_map(params)?, opts),
        ProductId::QuadCor13 => {
            let mut p = params.clone();
            p.insert("u".into(), X::from_i64(0));
            quad_cor13(&TripleSumParams::from_map(&p)?, opts)
        }
        ProductId::WdAppell => generating::wd_appell_value(params, opts),
        ProductId::CayleyOrrA => cayley_orr::cayley_orr_value(CayleyOrr::A, params, opts),
        ProductId::CayleyOrrB => cayley_orr::cayley_orr_value(CayleyOrr::B, params, opts),
        _ => {
            let f = exact_formula(id, params)?;
            check_poles(&f)?;
            let fa = f.map(|v| v.to_approx(opts.prec));
            let xa = x.to_approx(opts.prec);
            let (lhs, n1) = eval_side(&fa.lhs, &xa, opts.eps / 16.0)?;
            let (rhs, n2) = eval_side(&fa.rhs, &xa, opts.eps / 16.0)?;
            Ok(VerificationReport::approx(id.name(), None, params, &lhs, &rhs, opts.eps).with_terms(n1 + n2))
        }
    }
}

/// Left side of a single-series product identity: the product of the two
/// `2φ1` at the point.
pub fn product_lhs_value(id: ProductId, params: &ParamMap, prec: u32, eps: f64) -> Result<ApproxScalar> {
    validate(id, params, true)?;
    let x = &params[id.variable()];
    let f = exact_formula(id, &without_variable(id, params))?;
    check_poles(&f)?;
    let fa = f.map(|v| v.to_approx(prec));
    Ok(eval_side(&fa.lhs, &x.to_approx(prec), eps)?.0)
}

fn without_variable(id: ProductId, params: &ParamMap) -> ParamMap {
    let mut p = params.clone();
    p.remove(id.variable());
    p
}

/// Exact comparison of the coefficients of both sides through
/// `variable^order`; one report per coefficient.
pub fn product_coefficient_check(id: ProductId, params: &ParamMap, order: usize) -> Result<Vec<VerificationReport>> {
    validate(id, params, false)?;
    let p = without_variable(id, params);
    let g = |k: &str| p[k].clone();
    match id {
        ProductId::Awgf => awgf_coefficient_check(&g("a"), &g("b"), &g("c"), &g("d"), &g("w"), &g("q"), order),
        ProductId::CayleyOrrA => cayley_orr_check(CayleyOrr::A, &g("a"), &g("b"), &g("c"), &g("q"), order),
        ProductId::CayleyOrrB => cayley_orr_check(CayleyOrr::B, &g("a"), &g("b"), &g("c"), &g("q"), order),
        _ if !id.has_exact_coefficients() => {
            Err(Error::ExactUnsupported(format!("{} involves infinite products", id.name())))
        }
        _ => {
            let f = exact_formula(id, &p)?;
            let lhs = side_coefficients(&f.lhs, order)?;
            let rhs = side_coefficients(&f.rhs, order)?;
            Ok((0..=order)
                .map(|n| VerificationReport::exact(id.name(), Some(n as i64), &p, lhs.coeff(n), rhs.coeff(n)))
                .collect())
        }
    }
}

/// Coefficients of the right side through `variable^order`, exactly.
pub fn product_rhs_coefficients(id: ProductId, params: &ParamMap, order: usize) -> Result<Vec<X>> {
    validate(id, params, false)?;
    let p = without_variable(id, params);
    let f = exact_formula(id, &p)?;
    Ok(side_coefficients(&f.rhs, order)?.coeffs)
}

/// For identities whose right side splits by parity in the variable: the
/// even part of the left side against the even-shift terms, the odd part
/// against the odd-shift terms. Reports carry `n` and a parity note.
pub fn parity_split_check(id: ProductId, params: &ParamMap, order: usize) -> Result<Vec<VerificationReport>> {
    validate(id, params, false)?;
    let p = without_variable(id, params);
    let f = exact_formula(id, &p)?;
    if f.rhs.iter().any(|t| t.factors.iter().any(|x| x.power != 2)) {
        return Err(Error::DomainError(format!("{} has no parity split", id.name())));
    }
    let lhs = side_coefficients(&f.lhs, order)?;
    let like = X::from_i64(0);
    let mut even = PowerSeriesTrunc::new(vec![], order, &like);
    let mut odd = even.clone();
    for t in &f.rhs {
        let c = term_coefficients(t, order)?;
        if t.shift % 2 == 0 {
            even = &even + &c;
        } else {
            odd = &odd + &c;
        }
    }
    Ok((0..=order)
        .map(|n| {
            let (rhs, label) = if n % 2 == 0 { (even.coeff(n), "even part") } else { (odd.coeff(n), "odd part") };
            let wrong = if n % 2 == 0 { odd.coeff(n) } else { even.coeff(n) };
            let mut r = VerificationReport::exact(id.name(), Some(n as i64), &p, lhs.coeff(n), rhs).with_note(label);
            r.pass &= wrong.is_zero();
            r
        })
        .collect())
}

/// The left-side product evaluated two ways: series by series, and as the
/// truncated product of their power series summed at the variable.
pub fn lhs_truncated_product_check(id: ProductId, params: &ParamMap, opts: &ProductOptions) -> Result<VerificationReport> {
    validate(id, params, true)?;
    let x = &params[id.variable()];
    if !params["q"].in_unit_disk() || !radius_ok(x, opts.radius) {
        return Err(Error::DivergenceError("point outside the checked region".into()));
    }
    let f = exact_formula(id, &without_variable(id, params))?;
    check_poles(&f)?;
    let fa = f.map(|v| v.to_approx(opts.prec));
    let xa = x.to_approx(opts.prec);
    let (direct, _) = eval_side(&fa.lhs, &xa, opts.eps / 16.0)?;
    let mut order = 32;
    let mut prev: Option<ApproxScalar> = None;
    loop {
        let c = side_coefficients(&fa.lhs, order)?;
        let mut sum = xa.zero_like();
        for k in (0..=order).rev() {
            sum = sum * &xa + c.coeff(k);
        }
        if let Some(p) = prev {
            let scale = sum.abs_f64().max(1.0);
            if (sum.clone() - &p).abs_f64() <= opts.eps * scale / 16.0 {
                return Ok(VerificationReport::approx(id.name(), None, params, &direct, &sum, opts.eps)
                    .with_terms(order + 1)
                    .with_note("left side against its truncated power-series product"));
            }
        }
        if order >= 4096 {
            return Err(Error::NoConvergence("truncated product did not settle by order 4096".into()));
        }
        prev = Some(sum);
        order *= 2;
    }
}

/// THM21 and the first Cayley–Orr lemma at `(a, b, c) = (a², b², a²b²/q)`
/// predict the same coefficients.
pub fn thm21_matches_cayley_orr_a(q: &X, a: &X, b: &X, n_max: usize) -> Result<Vec<VerificationReport>> {
    let (aa, bb) = (a.clone() * a, b.clone() * b);
    let c = aa.clone() * &bb / q;
    let co = cayley_orr_weighted(CayleyOrr::A, &aa, &bb, &c, q, n_max)?;
    cross_coefficients(ProductId::Thm21, q, a, b, &co, "CAYLEY_ORR_A at c = ab/q")
}

/// The second Nassrallah product and the second Cayley–Orr lemma at
/// `(a, b, c) = (q b², a²/q, q a²b²)` predict the same coefficients.
pub fn nassrallah2_matches_cayley_orr_b(q: &X, a: &X, b: &X, n_max: usize) -> Result<Vec<VerificationReport>> {
    let (aa, bb) = (a.clone() * a, b.clone() * b);
    let co = cayley_orr_weighted(CayleyOrr::B, &(q.clone() * &bb), &(aa.clone() / q), &(q.clone() * &aa * &bb), q, n_max)?;
    cross_coefficients(ProductId::Nassrallah2, q, a, b, &co, "CAYLEY_ORR_B at c = qab")
}

fn cross_coefficients(id: ProductId, q: &X, a: &X, b: &X, co: &[X], note: &str) -> Result<Vec<VerificationReport>> {
    let p: ParamMap = [("q", q), ("a", a), ("b", b)].iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect();
    let ours = product_rhs_coefficients(id, &p, co.len() - 1)?;
    Ok(ours
        .iter()
        .zip(co)
        .enumerate()
        .map(|(n, (x, y))| VerificationReport::exact(id.name(), Some(n as i64), &p, x, y).with_note(note))
        .collect())
}

/// Gaussian rational with modulus in `[lo, hi]`.
fn draw_modulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> X {
    // Denominators reach 8/hi so that small bands are attainable.
    let max_den = ((8.0 / hi).ceil() as i64).max(9);
    loop {
        let re = X::ratio(rng.gen_range(-8..=8), rng.gen_range(2..=max_den));
        let im = if rng.gen_bool(0.5) { X::ratio(rng.gen_range(-8..=8), rng.gen_range(2..=max_den)) } else { X::from_i64(0) };
        let v = re + &(im * &X::i());
        let m = v.abs_f64();
        if m >= lo && m <= hi {
            return v;
        }
    }
}

/// Random point for `id` inside the region its value check requires.
pub fn sample_product_point(id: ProductId, rng: &mut ChaCha8Rng) -> ParamMap {
    let mut p = ParamMap::new();
    for &name in id.params() {
        let v = match name {
            "q" => draw_modulus(rng, 0.1, 0.5),
            "w" => draw_modulus(rng, 0.7, 1.0),
            "u" => draw_modulus(rng, 0.02, 0.1),
            "t" | "z" => draw_modulus(rng, 0.02, 0.2),
            _ => draw_modulus(rng, 0.3, 0.9),
        };
        p.insert(name.to_string(), v);
    }
    p
}

/// Deterministic value sweep: point `i` is drawn from its own stream and
/// redrawn while the point violates a constraint.
pub fn sweep_product(id: ProductId, trials: usize, seed: u64, opts: &ProductOptions) -> Result<Vec<VerificationReport>> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = point_rng(seed, i as u64);
            for _ in 0..crate::identities::MAX_REJECTIONS {
                let p = sample_product_point(id, &mut rng);
                match verify_product(id, &p, opts) {
                    Err(Error::ConstraintViolation(_)) | Err(Error::PoleError { .. }) | Err(Error::DivergenceError(_)) => continue,
                    other => return other,
                }
            }
            Err(Error::SamplerExhausted { id: id.name().to_string(), attempts: crate::identities::MAX_REJECTIONS })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn point(pairs: &[(&str, X)]) -> ParamMap {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    fn fixed_point(id: ProductId, var: X) -> ParamMap {
        let vals = [rat(1, 3), ExactScalar::gauss(1, 4, 1, 5), rat(-2, 5), rat(3, 7), rat(1, 5), rat(4, 5), rat(1, 12)];
        let mut p = ParamMap::new();
        for (i, name) in id.params().iter().enumerate() {
            let v = match *name {
                "q" => rat(1, 2),
                n if n == id.variable() => var.clone(),
                _ => vals[i % vals.len()].clone(),
            };
            p.insert(name.to_string(), v);
        }
        p
    }

    #[test]
    fn names_round_trip() {
        for id in ProductId::ALL {
            assert_eq!(ProductId::from_name(id.name()), Some(id));
            let s = serde_json::to_string(&id).unwrap();
            assert_eq!(s, format!("\"{}\"", id.name()));
        }
    }

    #[test]
    fn single_series_products_by_value() {
        for id in ProductId::ALL.into_iter().filter(|id| id.has_exact_coefficients()) {
            if matches!(id, ProductId::Awgf | ProductId::CayleyOrrA | ProductId::CayleyOrrB) {
                continue;
            }
            let r = verify_product(id, &fixed_point(id, rat(1, 6)), &ProductOptions::default()).unwrap();
            assert!(r.pass, "{}: {} vs {} ({:e})", id.name(), r.lhs, r.rhs, r.rel_err);
        }
    }

    #[test]
    fn exact_coefficients_through_nine() {
        for id in ProductId::ALL.into_iter().filter(|id| id.has_exact_coefficients()) {
            let mut p = fixed_point(id, rat(0, 1));
            p.remove(id.variable());
            let rs = product_coefficient_check(id, &p, 9).unwrap();
            assert_eq!(rs.len(), 10);
            assert!(VerificationReport::all_pass(&rs), "{}", id.name());
        }
    }

    #[test]
    fn zero_variable_gives_one() {
        for id in [ProductId::SchlosserT4, ProductId::T517, ProductId::CayleyOrrB, ProductId::Awgf] {
            let r = verify_product(id, &fixed_point(id, rat(0, 1)), &ProductOptions::default()).unwrap();
            assert!(r.pass && r.lhs.starts_with("1"), "{}: {}", id.name(), r.lhs);
        }
    }

    #[test]
    fn schlosser_parity_split() {
        let p = point(&[("q", rat(1, 3)), ("a", rat(2, 7)), ("b", ExactScalar::gauss(3, 11, 1, 2))]);
        let rs = parity_split_check(ProductId::SchlosserT4, &p, 9).unwrap();
        assert!(VerificationReport::all_pass(&rs));
    }

    #[test]
    fn cayley_orr_cross_checks() {
        let (q, a, b) = (rat(1, 3), rat(2, 5), ExactScalar::gauss(1, 3, 1, 4));
        assert!(VerificationReport::all_pass(&thm21_matches_cayley_orr_a(&q, &a, &b, 10).unwrap()));
        assert!(VerificationReport::all_pass(&nassrallah2_matches_cayley_orr_b(&q, &a, &b, 10).unwrap()));
    }

    #[test]
    fn radius_and_names_enforced() {
        let p = fixed_point(ProductId::SrivJain, rat(1, 2));
        assert!(matches!(verify_product(ProductId::SrivJain, &p, &ProductOptions::default()), Err(Error::DivergenceError(_))));
        let mut p = fixed_point(ProductId::SrivJain, rat(1, 5));
        p.insert("c".into(), rat(1, 2));
        assert!(matches!(verify_product(ProductId::SrivJain, &p, &ProductOptions::default()), Err(Error::ConstraintViolation(_))));
    }

    fn triple_point() -> TripleSumParams {
        let m = point(&[
            ("u", rat(1, 10)),
            ("t", rat(1, 8)),
            ("w", rat(9, 10)),
            ("a", rat(1, 2)),
            ("b", rat(1, 3)),
            ("c", rat(1, 2)),
            ("d", rat(1, 5)),
            ("q", rat(1, 3)),
        ]);
        TripleSumParams::from_map(&m).unwrap()
    }

    #[test]
    fn triple_sum_at_reference_point() {
        let r = triple_sum_32pf(&triple_point(), &ProductOptions::default()).unwrap();
        assert!(r.pass, "{} vs {} ({:e})", r.lhs, r.rhs, r.rel_err);
    }

    #[test]
    fn triple_sum_at_u_zero_is_the_generating_function() {
        let p = TripleSumParams { u: rat(0, 1), ..triple_point() };
        let r = triple_sum_32pf(&p, &ProductOptions::default()).unwrap();
        assert!(r.pass, "{} vs {}", r.lhs, r.rhs);
        let g = point(&[("q", p.q), ("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d), ("w", p.w), ("t", p.t)]);
        let aw = verify_product(ProductId::Awgf, &g, &ProductOptions::default()).unwrap();
        assert!(aw.pass);
        assert_eq!(&r.lhs[..30], &aw.lhs[..30]);
    }

    #[test]
    fn quadruple_sum_and_u_equals_t() {
        let opts = ProductOptions::default();
        let r = quad_cor13(&triple_point(), &opts).unwrap();
        assert!(r.pass, "{} vs {} ({:e})", r.lhs, r.rhs, r.rel_err);
        let r = triple_at_u_equals_t(&triple_point(), &ProductOptions { eps: 1e-28, ..opts }).unwrap();
        assert!(r.pass, "{} vs {} ({:e})", r.lhs, r.rhs, r.rel_err);
    }

    #[test]
    fn reference_points_for_single_series_products() {
        let p = point(&[("a", rat(1, 3)), ("b", rat(1, 4)), ("q", rat(1, 2)), ("z", rat(1, 5))]);
        let r = verify_product(ProductId::SrivJain, &p, &ProductOptions { eps: 1e-35, ..Default::default() }).unwrap();
        assert!(r.pass, "{:e}", r.rel_err);
        let p = point(&[("a", rat(1, 3)), ("c", rat(1, 5)), ("q", rat(1, 2)), ("t", rat(1, 6))]);
        assert!(verify_product(ProductId::T517, &p, &ProductOptions::default()).unwrap().pass);
    }

    #[test]
    fn every_product_at_sampled_points() {
        for id in ProductId::ALL {
            if matches!(id, ProductId::Triple32pf | ProductId::QuadCor13) {
                continue;
            }
            let rs = sweep_product(id, 3, 7, &ProductOptions::default()).unwrap();
            assert!(VerificationReport::all_pass(&rs), "{}: {:?}", id.name(), rs.iter().map(|r| r.rel_err).collect::<Vec<_>>());
        }
    }
}
