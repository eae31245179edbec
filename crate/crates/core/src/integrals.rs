//! Contour-integral representations of nonterminating products of two
//! `2φ1`, checked by periodic trapezoidal quadrature on `w = e^{iψ}`.
//!
//! All five representations are specializations of one Askey–Wilson-type
//! integral with parameters `(a, b, c, d)`, series variable `t` and
//! contour point `ζ`:
//!
//! ```text
//! (q, aζ^±, bζ^±, cζ^±; q)_∞ / (2π ϑ(f) ϑ(fζ²) (ab, ac, bc; q)_∞)
//!   × ∫ ϑ(fζσ/w) ϑ(fζw/σ) (abc w/σ; q)_∞ / (ζσ/w, σ/(ζw), (a, b, c) w/σ; q)_∞
//!       × 3φ2(ab, ac, dσ/w; ad, abc w/σ; q, t w/σ) dψ
//! ```
//!
//! with `ϑ(x; q) = (x, q/x; q)_∞`. The value does not depend on `σ > 0` or
//! `f` as long as every denominator argument stays inside the unit disk.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::identities::point_rng;
use crate::products::ProductId;
use crate::qkernel::{qpoch_infinite_list, Param, QBase};
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::series::{eval_phi_nonterminating, SeriesSpec};

type X = ExactScalar;

/// Argument of a modified theta function.
#[derive(Clone, Debug)]
pub struct ThetaParams {
    pub x: ApproxScalar,
    pub q: QBase<ApproxScalar>,
}

/// `ϑ(x; q) = (x; q)_∞ (q/x; q)_∞`, without a `(q; q)_∞` factor.
pub fn theta(x: &ApproxScalar, q: &ApproxScalar, eps: f64) -> Result<ApproxScalar> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    QBase::new(q.clone())?;
    let (v, _) = qpoch_infinite_list(&[Param::Plain(x.clone()), Param::Plain(q.clone() / x)], q, eps)?;
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Initial node count, a power of two and at least 16.
    pub nodes: usize,
    pub eps: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes: 16, eps: 1e-25, max_doublings: 14 }
    }
}

#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: ApproxScalar,
    /// Last inter-level difference relative to the value.
    pub achieved_eps: f64,
    pub nodes: usize,
    /// Inter-level differences, one per doubling.
    pub history: Vec<f64>,
}

/// Trapezoidal rule for `∫_{-π}^{π} f(e^{iψ}) dψ`, doubling the node count
/// until two levels agree within `eps` relative to the value, or within
/// rounding relative to the integrand's L1 norm.
///
/// Node values are computed in parallel and summed in index order.
pub fn integrate_periodic(
    f: impl Fn(&ApproxScalar) -> Result<ApproxScalar> + Sync,
    spec: &QuadratureSpec,
    prec: u32,
) -> Result<Quadrature> {
    if spec.nodes < 16 || !spec.nodes.is_power_of_two() {
        return Err(Error::DomainError("node count must be a power of two, at least 16".into()));
    }
    let two_pi = BigFloat::pi(prec + 16).mul_pow2(1);
    let node = |j: usize, n: usize| -> Result<(ApproxScalar, f64)> {
        let psi = two_pi.mul(&BigFloat::from_i64(j as i64, prec + 16)).div(&BigFloat::from_i64(n as i64, prec + 16));
        let w = ApproxScalar::cis(&psi).with_prec(prec);
        let v = f(&w).map_err(|e| match e {
            Error::PoleError { what, .. } => Error::PoleOnContour(what),
            other => other,
        })?;
        let m = v.abs_f64();
        if !m.is_finite() {
            return Err(Error::PoleOnContour(format!("integrand overflows at node {j} of {n}")));
        }
        Ok((v, m))
    };
    let sum_nodes = |idx: Vec<usize>, n: usize| -> Result<(ApproxScalar, f64)> {
        let vals: Result<Vec<_>> = idx.into_par_iter().map(|j| node(j, n)).collect();
        let mut s = ApproxScalar::from_f64(0.0, 0.0, prec);
        let mut l1 = 0.0;
        for (v, m) in vals? {
            s = s + &v;
            l1 += m;
        }
        Ok((s, l1))
    };
    let rounding = (-(prec as f64) + 16.0).exp2();
    let mut n = spec.nodes;
    let (mut sum, mut l1) = sum_nodes((0..n).collect(), n)?;
    let level = |s: &ApproxScalar, n: usize| s.clone().scale(&two_pi.div(&BigFloat::from_i64(n as i64, prec + 16)));
    let mut value = level(&sum, n);
    let mut history = Vec::new();
    for _ in 0..spec.max_doublings {
        let (odd, l1_odd) = sum_nodes((1..2 * n).step_by(2).collect(), 2 * n)?;
        sum = sum + &odd;
        l1 += l1_odd;
        n *= 2;
        let next = level(&sum, n);
        let diff = (next.clone() - &value).abs_f64();
        let mag = next.abs_f64();
        let norm = l1 * std::f64::consts::TAU / n as f64;
        history.push(if mag > 0.0 { diff / mag } else { diff });
        value = next;
        if diff <= spec.eps * mag || diff <= rounding * norm {
            let achieved = *history.last().expect("pushed above");
            return Ok(Quadrature { value, achieved_eps: achieved, nodes: n, history });
        }
    }
    Err(Error::NoConvergence(format!(
        "trapezoidal rule did not settle after {} doublings (last difference {:e})",
        spec.max_doublings,
        history.last().copied().unwrap_or(f64::NAN)
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IntegralRepId {
    IrSchlosser,
    #[serde(rename = "IR_NASSRALLAH_1")]
    IrNassrallah1,
    #[serde(rename = "IR_NASSRALLAH_2")]
    IrNassrallah2,
    IrSrivJain,
    #[serde(rename = "IR_THM21")]
    IrThm21,
}

impl IntegralRepId {
    pub const ALL: [IntegralRepId; 5] = [
        IntegralRepId::IrSchlosser,
        IntegralRepId::IrNassrallah1,
        IntegralRepId::IrNassrallah2,
        IntegralRepId::IrSrivJain,
        IntegralRepId::IrThm21,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IntegralRepId::IrSchlosser => "IR_SCHLOSSER",
            IntegralRepId::IrNassrallah1 => "IR_NASSRALLAH_1",
            IntegralRepId::IrNassrallah2 => "IR_NASSRALLAH_2",
            IntegralRepId::IrSrivJain => "IR_SRIV_JAIN",
            IntegralRepId::IrThm21 => "IR_THM21",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn params(&self) -> &'static [&'static str] {
        &["q", "a", "b", "z", "f", "sigma"]
    }

    /// The product identity whose value the integral reproduces.
    pub fn product(&self) -> ProductId {
        match self {
            IntegralRepId::IrSchlosser => ProductId::SchlosserT4,
            IntegralRepId::IrNassrallah1 => ProductId::Nassrallah1,
            IntegralRepId::IrNassrallah2 => ProductId::Nassrallah2,
            IntegralRepId::IrSrivJain => ProductId::SrivJain,
            IntegralRepId::IrThm21 => ProductId::Thm21,
        }
    }

    /// Whether the kernel runs in base `q²` with `ζ = q^{1/2}`.
    fn half_power(&self) -> bool {
        matches!(self, IntegralRepId::IrNassrallah1 | IntegralRepId::IrNassrallah2 | IntegralRepId::IrThm21)
    }

    pub fn description(&self) -> &'static str {
        match self {
            IntegralRepId::IrSchlosser => "integral for Schlosser's product, kernel at (-ia, ib, iq/b, -iq/a; t = iz, ζ = i)",
            IntegralRepId::IrNassrallah1 => {
                "integral for Nassrallah's first product, base q², kernel at (q^-1/2 a², q^1/2 a², q^1/2 b², q^-1/2 b²; ζ = q^1/2)"
            }
            IntegralRepId::IrNassrallah2 => {
                "integral for Nassrallah's second product, base q², kernel at (q^1/2 a², q^-1/2 a², q^3/2 b², q^1/2 b²; ζ = q^1/2)"
            }
            IntegralRepId::IrSrivJain => "integral for the Srivastava–Jain product, kernel at (-ia, ib, -ib, ia; t = iz, ζ = i)",
            IntegralRepId::IrThm21 => {
                "integral for the THM21 product, base q², kernel at (q^1/2 a², q^-1/2 a², q^-1/2 b², q^1/2 b²; ζ = q^1/2)"
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralOptions {
    pub prec: u32,
    pub eps: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        Self { prec: 256, eps: 1e-25, quadrature: QuadratureSpec::default() }
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Square root in the Gaussian rationals, with nonnegative real part.
pub fn gaussian_sqrt(x: &X) -> Option<X> {
    let r = rational_sqrt(&x.norm_sqr())?;
    let two = BigRational::from_integer(BigInt::from(2));
    let re = rational_sqrt(&((&x.re + &r) / &two))?;
    let im = if re.is_zero() { rational_sqrt(&(-x.re.clone()))? } else { &x.im / (&two * &re) };
    let root = X::new(re, im);
    (root.clone() * &root == *x).then_some(root)
}

/// Kernel parameters in exact arithmetic.
#[derive(Clone, Debug)]
struct Kernel {
    base: X,
    a: X,
    b: X,
    c: X,
    d: X,
    t: X,
    zeta: X,
}

fn get(params: &ParamMap, k: &str) -> Result<X> {
    params.get(k).cloned().ok_or_else(|| Error::MissingParameter(k.to_string()))
}

fn kernel(id: IntegralRepId, params: &ParamMap) -> Result<Kernel> {
    let (q, a, b, z) = (get(params, "q")?, get(params, "a")?, get(params, "b")?, get(params, "z")?);
    let i = X::i();
    let k = if id.half_power() {
        let p = gaussian_sqrt(&q)
            .ok_or_else(|| Error::DomainError("q must be the square of a Gaussian rational for a base q² kernel".into()))?;
        let (aa, bb) = (a.clone() * &a, b.clone() * &b);
        let p3 = p.clone() * &q;
        let (a_, b_, c_, d_) = match id {
            IntegralRepId::IrNassrallah1 => (aa.clone() / &p, p.clone() * &aa, p.clone() * &bb, bb.clone() / &p),
            IntegralRepId::IrNassrallah2 => (p.clone() * &aa, aa.clone() / &p, p3 * &bb, p.clone() * &bb),
            _ => (p.clone() * &aa, aa.clone() / &p, bb.clone() / &p, p.clone() * &bb),
        };
        Kernel { base: q.clone() * &q, a: a_, b: b_, c: c_, d: d_, t: p.clone() * &z, zeta: p }
    } else {
        let mi = -i.clone();
        let (c_, d_) = match id {
            IntegralRepId::IrSchlosser => (i.clone() * &q / &b, mi.clone() * &q / &a),
            _ => (mi.clone() * &b, i.clone() * &a),
        };
        Kernel { base: q.clone(), a: mi * &a, b: i.clone() * &b, c: c_, d: d_, t: i.clone() * &z, zeta: i }
    };
    Ok(k)
}

fn check_params(id: IntegralRepId, params: &ParamMap) -> Result<()> {
    for name in id.params() {
        let v = get(params, name)?;
        if v.is_zero() && *name != "z" {
            return Err(Error::ConstraintViolation(format!("{}: {name} must be nonzero", id.name())));
        }
    }
    if let Some(extra) = params.keys().find(|k| !id.params().contains(&k.as_str())) {
        return Err(Error::ConstraintViolation(format!("{}: unknown parameter {extra}", id.name())));
    }
    let sigma = &params["sigma"];
    if !sigma.is_real() || !sigma.re.is_positive() {
        return Err(Error::ConstraintViolation("sigma must be a positive real".into()));
    }
    if !params["q"].in_unit_disk() {
        return Err(Error::DivergenceError("|q| < 1 required".into()));
    }
    Ok(())
}

/// Moduli that must stay below one on the contour, by name.
fn denominator_moduli(k: &Kernel, sigma: f64, w: (f64, f64)) -> [(&'static str, f64); 6] {
    let m = |x: &X| x.abs_f64();
    let wm = (w.0 * w.0 + w.1 * w.1).sqrt();
    [
        ("ζσ/w", m(&k.zeta) * sigma / wm),
        ("σ/(ζw)", sigma / (m(&k.zeta) * wm)),
        ("a w/σ", m(&k.a) * wm / sigma),
        ("b w/σ", m(&k.b) * wm / sigma),
        ("c w/σ", m(&k.c) * wm / sigma),
        ("t w/σ (series argument)", m(&k.t) * wm / sigma),
    ]
}

/// Checks the modulus hypotheses on 64 coarse nodes before integrating.
fn prescan(id: IntegralRepId, k: &Kernel, sigma: f64) -> Result<()> {
    for j in 0..64 {
        let psi = std::f64::consts::TAU * j as f64 / 64.0;
        for (name, v) in denominator_moduli(k, sigma, (psi.cos(), psi.sin())) {
            if v >= 1.0 {
                return Err(Error::HypothesisViolation(format!("{}: |{name}| = {v:.6} is not below 1 at ψ = {psi:.4}", id.name())));
            }
        }
    }
    Ok(())
}

/// Open interval of admissible `σ` for the given parameters, if nonempty.
pub fn sigma_range(id: IntegralRepId, params: &ParamMap) -> Result<Option<(f64, f64)>> {
    let k = kernel(id, params)?;
    let lo = [&k.a, &k.b, &k.c, &k.t].iter().map(|x| x.abs_f64()).fold(0.0, f64::max);
    let z = k.zeta.abs_f64();
    let hi = z.min(1.0 / z);
    Ok((lo < hi).then_some((lo, hi)))
}

/// A rational `σ` at the geometric middle of the admissible window.
pub fn suggest_sigma(id: IntegralRepId, params: &ParamMap) -> Result<X> {
    match sigma_range(id, params)? {
        Some((lo, hi)) => Ok(rational_between(lo, hi, 0.5)),
        None => Err(Error::HypothesisViolation(format!("{}: no σ keeps every denominator argument inside the unit disk", id.name()))),
    }
}

/// Prefactor times the trapezoidal integral.
pub fn integral_value(id: IntegralRepId, params: &ParamMap, opts: &IntegralOptions) -> Result<(ApproxScalar, Quadrature)> {
    check_params(id, params)?;
    let k = kernel(id, params)?;
    let sigma_x = &params["sigma"];
    prescan(id, &k, sigma_x.abs_f64())?;
    let prec = opts.prec;
    let ap = |x: &X| x.to_approx(prec);
    let (q, a, b, c, d, t, zeta) = (ap(&k.base), ap(&k.a), ap(&k.b), ap(&k.c), ap(&k.d), ap(&k.t), ap(&k.zeta));
    let (f, sigma) = (ap(&params["f"]), ap(sigma_x));
    let eps = opts.eps / 64.0;
    let (ab, ac, bc, ad) = (a.clone() * &b, a.clone() * &c, b.clone() * &c, a.clone() * &d);
    let abc = ab.clone() * &c;
    let fz = f.clone() * &zeta;

    let num_params: Vec<_> = [q.clone(), a.clone() * &zeta, a.clone() / &zeta, b.clone() * &zeta, b.clone() / &zeta, c.clone() * &zeta, c.clone() / &zeta]
        .into_iter()
        .map(Param::Plain)
        .collect();
    let (num, _) = qpoch_infinite_list(&num_params, &q, eps)?;
    let (den, _) = qpoch_infinite_list(&[Param::Plain(ab.clone()), Param::Plain(ac.clone()), Param::Plain(bc)], &q, eps)?;
    let th = theta(&f, &q, eps)? * &theta(&(fz.clone() * &zeta), &q, eps)?;
    if den.is_zero() || th.is_zero() {
        return Err(Error::pole(0, "prefactor denominator vanishes"));
    }
    let two_pi = ApproxScalar::new(BigFloat::pi(prec).mul_pow2(1), BigFloat::zero(prec));
    let pre = num / &(den * &th * &two_pi);

    let integrand = |w: &ApproxScalar| -> Result<ApproxScalar> {
        let s_w = sigma.clone() / w;
        let w_s = w.clone() / &sigma;
        let top = theta(&(fz.clone() * &s_w), &q, eps)? * &theta(&(fz.clone() * &w_s), &q, eps)?;
        let ups = [Param::Plain(abc.clone() * &w_s)];
        let downs: Vec<_> = [zeta.clone() * &s_w, s_w.clone() / &zeta, a.clone() * &w_s, b.clone() * &w_s, c.clone() * &w_s]
            .into_iter()
            .map(Param::Plain)
            .collect();
        let (u, _) = qpoch_infinite_list(&ups, &q, eps)?;
        let (l, _) = qpoch_infinite_list(&downs, &q, eps)?;
        if l.is_zero() {
            return Err(Error::pole(0, "integrand denominator vanishes"));
        }
        let spec = SeriesSpec::plain(&[ab.clone(), ac.clone(), d.clone() * &s_w], &[ad.clone(), abc.clone() * &w_s], &q, &(t.clone() * &w_s));
        let (phi, _) = eval_phi_nonterminating(&spec, eps)?;
        Ok(top * &u / &l * &phi)
    };
    let quad = integrate_periodic(integrand, &QuadratureSpec { eps: opts.eps / 4.0, ..opts.quadrature }, prec)?;
    Ok((pre * &quad.value, quad))
}

fn product_point(params: &ParamMap) -> ParamMap {
    ["q", "a", "b", "z"].iter().map(|k| (k.to_string(), params[*k].clone())).collect()
}

/// The integral against the product's series value.
pub fn verify_integral_rep(id: IntegralRepId, params: &ParamMap, opts: &IntegralOptions) -> Result<VerificationReport> {
    let (value, quad) = integral_value(id, params, opts)?;
    let series_value = crate::products::product_lhs_value(id.product(), &product_point(params), opts.prec, opts.eps / 16.0)?;
    Ok(VerificationReport::approx(id.name(), None, params, &value, &series_value, opts.eps)
        .with_nodes(quad.nodes)
        .with_note(format!("quadrature difference {:.1e}", quad.achieved_eps)))
}

/// The integral at two values of one parameter (`sigma` or `f`), compared
/// within `2 eps`.
pub fn independence_check(id: IntegralRepId, params: &ParamMap, key: &str, other: &X, opts: &IntegralOptions) -> Result<VerificationReport> {
    if key != "sigma" && key != "f" {
        return Err(Error::DomainError(format!("independence is checked in sigma or f, not {key}")));
    }
    let (v1, q1) = integral_value(id, params, opts)?;
    let mut p2 = params.clone();
    p2.insert(key.to_string(), other.clone());
    let (v2, q2) = integral_value(id, &p2, opts)?;
    Ok(VerificationReport::approx(id.name(), None, params, &v1, &v2, 2.0 * opts.eps)
        .with_nodes(q1.nodes.max(q2.nodes))
        .with_note(format!("{key}-independence against {key} = {other}")))
}

fn draw(rng: &mut ChaCha8Rng, lo: f64, hi: f64, complex: bool) -> X {
    loop {
        let den = rng.gen_range(4..=40);
        let re = X::ratio(rng.gen_range(-40..=40), den);
        let im = if complex { X::ratio(rng.gen_range(-6..=6), rng.gen_range(10..=40)) } else { X::from_i64(0) };
        let v = re + &(im * &X::i());
        let m = v.abs_f64();
        if m > lo && m < hi {
            return v;
        }
    }
}

/// A rational inside `(lo, hi)`, at ratio `frac` in log scale.
fn rational_between(lo: f64, hi: f64, frac: f64) -> X {
    let target = (lo.ln() + frac * (hi.ln() - lo.ln())).exp();
    X::ratio((target * 1000.0).round() as i64, 1000)
}

/// A random admissible point: the `σ` window spans a factor of at least
/// 2.2 so the trapezoidal rule converges in a few hundred nodes. `sigma` is
/// placed at the geometric middle of the window.
pub fn sample_integral_point(id: IntegralRepId, rng: &mut ChaCha8Rng) -> Result<ParamMap> {
    // Ranges chosen so that a useful fraction of draws is admissible.
    let (q_range, a_range, b_range) = match id {
        IntegralRepId::IrSchlosser => ((0.05, 0.2), (0.1, 0.45), (0.25, 0.5)),
        IntegralRepId::IrSrivJain => ((0.2, 0.6), (0.1, 0.45), (0.1, 0.45)),
        _ => ((0.55, 0.85), (0.1, 0.5), (0.1, 0.5)),
    };
    for _ in 0..crate::identities::MAX_REJECTIONS {
        let mut p = ParamMap::new();
        let q = draw(rng, q_range.0, q_range.1, false);
        p.insert("q".into(), if id.half_power() { q.clone() * &q } else { q });
        p.insert("a".into(), draw(rng, a_range.0, a_range.1, true));
        p.insert("b".into(), draw(rng, b_range.0, b_range.1, true));
        p.insert("z".into(), draw(rng, 0.02, 0.15, true));
        let f = draw(rng, 1.1, 1.8, false);
        p.insert("f".into(), X::real(f.re.abs()));
        p.insert("sigma".into(), X::from_i64(1));
        if let Ok(Some((lo, hi))) = sigma_range(id, &p) {
            if hi / lo >= 2.2 {
                p.insert("sigma".into(), rational_between(lo, hi, 0.5));
                return Ok(p);
            }
        }
    }
    Err(Error::SamplerExhausted { id: id.name().to_string(), attempts: crate::identities::MAX_REJECTIONS })
}

/// Runs `trials` sampled points: the series check at each point plus `σ`-
/// and `f`-independence, three reports per point.
pub fn sweep_integral(id: IntegralRepId, trials: usize, seed: u64, opts: &IntegralOptions) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for i in 0..trials {
        let mut rng = point_rng(seed, i as u64);
        let p = sample_integral_point(id, &mut rng)?;
        let (lo, hi) = sigma_range(id, &p)?.expect("sampled inside the window");
        out.push(verify_integral_rep(id, &p, opts)?);
        out.push(independence_check(id, &p, "sigma", &rational_between(lo, hi, 0.35), opts)?);
        let f2 = p["f"].clone() + &X::ratio(1, 7);
        out.push(independence_check(id, &p, "f", &f2, opts)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn apx(x: &X) -> ApproxScalar {
        x.to_approx(256)
    }

    #[test]
    fn theta_zeros_and_symmetry() {
        let q = apx(&rat(1, 2));
        assert!(theta(&apx(&rat(1, 4)), &q, 1e-40).unwrap().is_zero());
        let x = apx(&ExactScalar::gauss(2, 3, 1, 5));
        let d = theta(&x, &q, 1e-40).unwrap().rel_diff(&theta(&(q.clone() / &x), &q, 1e-40).unwrap());
        assert!(d < 1e-38);
        assert!(matches!(theta(&apx(&rat(0, 1)), &q, 1e-40), Err(Error::ZeroArgument)));
    }

    #[test]
    fn theta_at_minus_one_against_long_product() {
        let q = rat(1, 2);
        let v = theta(&apx(&rat(-1, 1)), &apx(&q), 1e-60).unwrap();
        // 300 factors of each product at 512 bits.
        let (mut acc, one) = (rat(1, 1).to_approx(512), rat(1, 1).to_approx(512));
        let (x, qx) = (rat(-1, 1).to_approx(512), (q.clone() / &rat(-1, 1)).to_approx(512));
        let mut qk = one.clone();
        for _ in 0..300 {
            acc = acc * &(one.clone() - &(x.clone() * &qk)) * &(one.clone() - &(qx.clone() * &qk));
            qk = qk * &q.to_approx(512);
        }
        assert!(v.rel_diff(&acc.with_prec(256)) < 1e-60);
    }

    #[test]
    fn trapezoid_on_trigonometric_polynomials() {
        let spec = QuadratureSpec { eps: 1e-40, ..Default::default() };
        let one = integrate_periodic(|w| Ok(w.one_like()), &spec, 256).unwrap();
        let two_pi = ApproxScalar::new(BigFloat::pi(256).mul_pow2(1), BigFloat::zero(256));
        assert!(one.value.rel_diff(&two_pi) < 1e-70);
        for k in [1, 3, 7, -5] {
            let r = integrate_periodic(|w| Ok(w.powi(k)), &spec, 256).unwrap();
            assert!(r.value.abs_f64() < 1e-60, "k={k}: {}", r.value);
        }
    }

    #[test]
    fn gaussian_square_roots() {
        for x in [rat(9, 16), ExactScalar::gauss(3, 4, 2, 3), rat(-4, 9), ExactScalar::gauss(0, 1, 1, 2)] {
            let s = x.clone() * &x;
            assert_eq!(gaussian_sqrt(&s).unwrap().clone() * &gaussian_sqrt(&s).unwrap(), s);
        }
        assert!(gaussian_sqrt(&rat(1, 2)).is_none());
    }

    fn sj_point(sigma: X) -> ParamMap {
        [("q", rat(1, 2)), ("a", rat(1, 3)), ("b", rat(1, 4)), ("z", rat(1, 5)), ("f", rat(3, 2)), ("sigma", sigma)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    }

    #[test]
    fn srivastava_jain_integral_matches_series() {
        let r = verify_integral_rep(IntegralRepId::IrSrivJain, &sj_point(rat(1, 2)), &IntegralOptions::default()).unwrap();
        assert!(r.pass, "{} vs {} ({:e})", r.lhs, r.rhs, r.rel_err);
        let r = independence_check(IntegralRepId::IrSrivJain, &sj_point(rat(1, 2)), "sigma", &rat(3, 5), &IntegralOptions::default()).unwrap();
        assert!(r.pass, "{:e}", r.rel_err);
    }

    #[test]
    fn unit_sigma_touches_the_contour_poles() {
        let e = verify_integral_rep(IntegralRepId::IrSrivJain, &sj_point(rat(1, 1)), &IntegralOptions::default());
        assert!(matches!(e, Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn zero_z_gives_one() {
        let mut p = sj_point(rat(1, 2));
        p.insert("z".into(), rat(0, 1));
        let (v, _) = integral_value(IntegralRepId::IrSrivJain, &p, &IntegralOptions::default()).unwrap();
        assert!(v.rel_diff(&v.one_like()) < 1e-25);
    }

    #[test]
    fn every_representation_at_one_sampled_point() {
        for id in IntegralRepId::ALL {
            let mut rng = point_rng(11, 0);
            let p = sample_integral_point(id, &mut rng).unwrap();
            let r = verify_integral_rep(id, &p, &IntegralOptions::default()).unwrap();
            assert!(r.pass, "{}: {} vs {} ({:e})", id.name(), r.lhs, r.rhs, r.rel_err);
            let h = integral_value(id, &p, &IntegralOptions::default()).unwrap().1.history;
            // Geometric convergence once the differences are small.
            for w in h.windows(2).filter(|w| w[0] < 1e-5 && w[1] > 1e-60) {
                assert!(w[1] <= w[0] / 4.0, "{}: {h:?}", id.name());
            }
        }
    }
}
