//! Basic hypergeometric series `r phi s`, classical `r F s`, and the q-Appell
//! double series.
//!
//! Every series is summed by its term recurrence. Nonterminating sums stop
//! once the observed term ratio has stayed below `r* = (1+|z|)/2` for
//! [`SAFETY_WINDOW`] consecutive terms *and* a rigorous majorant of all later
//! ratios certifies the geometric tail.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qkernel::{qpoch, qpoch_infinite_exact_args, Param, QBase, TruncationCert};
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};

pub const SAFETY_WINDOW: usize = 8;
const MAX_TERMS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    None,
    At(usize),
}

#[derive(Clone, Debug)]
pub struct SeriesSpec<S> {
    pub upper: Vec<Param<S>>,
    pub lower: Vec<Param<S>>,
    pub q: S,
    pub z: S,
    pub termination: Termination,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BalanceClass {
    Balanced(i32),
    WellPoised,
    VeryWellPoised,
    None,
}

impl<S: Scalar> SeriesSpec<S> {
    pub fn new(upper: Vec<Param<S>>, lower: Vec<Param<S>>, q: S, z: S) -> Self {
        Self { upper, lower, q, z, termination: Termination::None }
    }

    pub fn terminating(upper: Vec<Param<S>>, lower: Vec<Param<S>>, q: S, z: S, n: usize) -> Self {
        Self { upper, lower, q, z, termination: Termination::At(n) }
    }

    /// Convenience constructor from plain parameter lists.
    pub fn plain(upper: &[S], lower: &[S], q: &S, z: &S) -> Self {
        let wrap = |v: &[S]| v.iter().cloned().map(Param::Plain).collect();
        Self::new(wrap(upper), wrap(lower), q.clone(), z.clone())
    }

    pub fn r(&self) -> usize {
        self.upper.iter().map(Param::count).sum()
    }

    pub fn s(&self) -> usize {
        self.lower.iter().map(Param::count).sum()
    }

    /// Exponent of `(-1)^k q^{k choose 2}` in the general term.
    pub fn sign_exponent(&self) -> i64 {
        1 + self.s() as i64 - self.r() as i64
    }

    pub fn with_z(&self, z: S) -> Self {
        Self { z, ..self.clone() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SeriesSpec<T> {
        SeriesSpec {
            upper: self.upper.iter().map(|p| p.map(&f)).collect(),
            lower: self.lower.iter().map(|p| p.map(&f)).collect(),
            q: f(&self.q),
            z: f(&self.z),
            termination: self.termination,
        }
    }

    /// `t_{k+1} / t_k`, given `q^k`.
    fn ratio(&self, k: usize, qk: &S) -> Result<S> {
        let one = qk.one_like();
        let mut num = self.z.clone();
        for p in &self.upper {
            num = num * &p.factor(qk);
        }
        let e = self.sign_exponent();
        if e != 0 {
            num = num * &(-qk.clone()).powi(e);
        }
        let mut den = one.clone() - &(qk.clone() * &self.q);
        for (i, p) in self.lower.iter().enumerate() {
            let f = p.factor(qk);
            if f.is_zero() {
                return Err(Error::pole(k + 1, format!("lower parameter #{i} vanishes")));
            }
            den = den * &f;
        }
        Ok(num / &den)
    }

    /// Coefficients `c_0..=c_order` of the series as a power series in `z`.
    pub fn coefficients(&self, order: usize) -> Result<Vec<S>> {
        let unit = self.with_z(self.z.one_like());
        let mut out = Vec::with_capacity(order + 1);
        let mut t = self.z.one_like();
        let mut qk = self.z.one_like();
        out.push(t.clone());
        for k in 0..order {
            if t.is_zero() {
                out.push(t.clone());
                continue;
            }
            t = t * &unit.ratio(k, &qk)?;
            qk = qk * &self.q;
            out.push(t.clone());
        }
        Ok(out)
    }

    /// The balance class read off the parameter products.
    pub fn balance_class(&self) -> BalanceClass {
        let prod = |ps: &[Param<S>]| ps.iter().fold(self.q.one_like(), |acc, p| acc * &p.product());
        if self.r() == self.s() + 1 {
            let (top, bottom) = (prod(&self.upper), prod(&self.lower));
            for k in -3..=6 {
                let lhs = top.clone() * &self.q.powi(k);
                if (lhs - &bottom).log2_abs() < bottom.log2_abs() - 40.0 {
                    return BalanceClass::Balanced(k as i32);
                }
            }
        }
        self.poised_class()
    }

    fn poised_class(&self) -> BalanceClass {
        let plain = |ps: &[Param<S>]| -> Option<Vec<S>> {
            ps.iter()
                .map(|p| match p {
                    Param::Plain(a) => Some(a.clone()),
                    _ => None,
                })
                .collect()
        };
        let (Some(up), Some(lo)) = (plain(&self.upper), plain(&self.lower)) else {
            return BalanceClass::None;
        };
        if up.len() != lo.len() + 1 || up.is_empty() {
            return BalanceClass::None;
        }
        let target = self.q.clone() * &up[0];
        let close = |x: &S, y: &S| (x.clone() - y).log2_abs() < y.log2_abs() - 40.0;
        if !up[1..].iter().zip(&lo).all(|(a, b)| close(&(a.clone() * b), &target)) {
            return BalanceClass::None;
        }
        // Very-well-poised: a pair q√a₁, -q√a₁ in the numerator.
        let qa = target.clone() * &self.q;
        let vwp = up[1..]
            .iter()
            .enumerate()
            .any(|(i, x)| up[1..].iter().skip(i + 1).any(|y| close(&(x.clone() + y), &x.zero_like()) && close(&(-(x.clone() * y)), &qa)));
        if vwp {
            BalanceClass::VeryWellPoised
        } else {
            BalanceClass::WellPoised
        }
    }
}

impl SeriesSpec<ExactScalar> {
    pub fn to_approx(&self, prec: u32) -> SeriesSpec<ApproxScalar> {
        self.map(|x| x.to_approx(prec))
    }

    /// Exact check that the declared termination index is genuine.
    pub fn check_termination(&self) -> Result<usize> {
        let Termination::At(n) = self.termination else {
            return Err(Error::DomainError("series is not declared terminating".into()));
        };
        let qn = self.q.powi(n as i64);
        if self.upper.iter().any(|p| p.factor(&qn).is_zero()) {
            Ok(n)
        } else {
            Err(Error::DomainError(format!("no upper parameter terminates the series at index {n}")))
        }
    }
}

/// Terminating sum of `n+1` terms in either domain.
pub fn sum_terminating<S: Scalar>(spec: &SeriesSpec<S>, n: usize) -> Result<S> {
    let mut sum = spec.z.one_like();
    let mut t = sum.clone();
    let mut qk = sum.clone();
    for k in 0..n {
        t = t * &spec.ratio(k, &qk)?;
        if t.is_zero() {
            break;
        }
        sum = sum + &t;
        qk = qk * &spec.q;
    }
    Ok(sum)
}

/// Exact value of a terminating series.
pub fn eval_phi_terminating(spec: &SeriesSpec<ExactScalar>) -> Result<ExactScalar> {
    let n = spec.check_termination()?;
    QBase::exact(spec.q.clone())?;
    sum_terminating(spec, n)
}

fn mag_bound(params: &[Param<ApproxScalar>], log2_q: f64, k: usize, upper: bool) -> Option<f64> {
    let mut acc = 1.0;
    for p in params {
        for (lc, m) in p.magnitudes() {
            let v = (lc + log2_q * (m as f64) * (k as f64)).exp2();
            if upper {
                acc *= 1.0 + v;
            } else {
                if v >= 1.0 {
                    return None;
                }
                acc /= 1.0 - v;
            }
        }
    }
    Some(acc)
}

/// Bound on `|t_{j+1}/t_j|` valid for every `j >= k`.
fn ratio_majorant(spec: &SeriesSpec<ApproxScalar>, k: usize) -> Option<f64> {
    let e = spec.sign_exponent();
    if e < 0 {
        return None;
    }
    let lq = spec.q.log2_abs();
    let up = mag_bound(&spec.upper, lq, k, true)?;
    let lo = mag_bound(&spec.lower, lq, k, false)?;
    let qfac = 1.0 - (lq * (k as f64 + 1.0)).exp2();
    Some(spec.z.abs_f64() * up * lo / qfac * (lq * (k * e as usize) as f64).exp2())
}

fn rounding_rel(prec: u32, ops: usize) -> f64 {
    8.0 * ops as f64 * (-(prec as f64)).exp2()
}

/// Sum `t_0 + t_1 + ...` with `t_{k+1} = t_k * ratio(k)`.
///
/// `majorant(k)` must bound `|ratio(j)|` for all `j >= k`. The result is
/// within `eps * max(1, |sum|)` of the true value.
pub fn sum_ratio_series(
    first: ApproxScalar,
    mut ratio: impl FnMut(usize) -> Result<ApproxScalar>,
    majorant: impl Fn(usize) -> Option<f64>,
    r_star: f64,
    ops_per_term: usize,
    eps: f64,
) -> Result<(ApproxScalar, TruncationCert)> {
    if !(eps > 0.0) {
        return Err(Error::DomainError("eps must be positive".into()));
    }
    let prec = first.prec();
    let mut sum = first.clone();
    let mut t = first;
    let mut abs_sum = t.abs_f64();
    let mut window = 0usize;
    for k in 0..MAX_TERMS {
        let r = ratio(k)?;
        t = t * &r;
        if t.is_zero() {
            let rounding = rounding_rel(prec, (k + 1) * ops_per_term) * abs_sum;
            let cert = TruncationCert { terms_used: k + 1, tail_bound: rounding, target_eps: eps, zero_factor: false };
            return Ok((sum, cert));
        }
        sum = sum + &t;
        let tk = t.abs_f64();
        abs_sum += tk;
        window = if r.abs_f64() < r_star { window + 1 } else { 0 };
        if window >= SAFETY_WINDOW {
            if let Some(rho) = majorant(k + 1).filter(|&rho| rho < 1.0) {
                let scale = sum.abs_f64().max(1.0);
                let tail = tk * rho / (1.0 - rho);
                let rounding = rounding_rel(prec, (k + 2) * ops_per_term) * abs_sum;
                if rounding > eps * scale / 2.0 {
                    return Err(Error::NoConvergence(format!("{prec} bits cannot reach eps {eps:e}")));
                }
                if tail + rounding <= eps * scale {
                    let cert = TruncationCert {
                        terms_used: k + 2,
                        tail_bound: (tail + rounding) / scale,
                        target_eps: eps,
                        zero_factor: false,
                    };
                    return Ok((sum, cert));
                }
            }
        }
    }
    Err(Error::NoConvergence(format!("no certified tail within {MAX_TERMS} terms")))
}

/// Certified value of a nonterminating series; a declared termination index
/// is honored by summing exactly that many terms.
pub fn eval_phi_nonterminating(spec: &SeriesSpec<ApproxScalar>, eps: f64) -> Result<(ApproxScalar, TruncationCert)> {
    QBase::new(spec.q.clone())?;
    if let Termination::At(n) = spec.termination {
        let v = sum_terminating(spec, n)?;
        let rounding = rounding_rel(spec.q.prec(), (n + 1) * (spec.r() + spec.s() + 4));
        return Ok((v, TruncationCert { terms_used: n + 1, tail_bound: rounding, target_eps: eps, zero_factor: false }));
    }
    let (r, s) = (spec.r(), spec.s());
    if r > s + 1 {
        return Err(Error::DivergenceError(format!("{r}phi{s} requires termination")));
    }
    let zabs = spec.z.abs_f64();
    if r == s + 1 && spec.z.log2_abs() >= 0.0 {
        return Err(Error::DivergenceError(format!("|z| = {zabs} >= 1")));
    }
    let r_star = if r == s + 1 { (1.0 + zabs) / 2.0 } else { 0.5 };
    let ops = r + s + 4;
    let q = spec.q.clone();
    let mut qk = spec.z.one_like();
    let ratio = |k: usize| -> Result<ApproxScalar> {
        let v = spec.ratio(k, &qk);
        qk = qk.clone() * &q;
        v
    };
    sum_ratio_series(spec.z.one_like(), ratio, |k| ratio_majorant(spec, k), r_star, ops, eps)
}

/// `(u/t;q)_k t^k` against its expansion `Σ_j [k j]_q (-1)^j q^{j choose 2} u^j t^{k-j}`.
pub fn qbinomial_terminating(u: &ExactScalar, t: &ExactScalar, q: &ExactScalar, k: usize) -> Result<(ExactScalar, ExactScalar)> {
    if t.is_zero() {
        return Err(Error::DomainError("t must be nonzero".into()));
    }
    let lhs = qpoch(&(u.clone() / t), q, k) * &t.powi(k as i64);
    let mut rhs = u.zero_like();
    for j in 0..=k {
        let binom = qpoch(q, q, k) / &(qpoch(q, q, j) * &qpoch(q, q, k - j));
        let sign = if j % 2 == 0 { u.one_like() } else { -u.one_like() };
        let term = binom * &sign * &q.powi((j * j.saturating_sub(1) / 2) as i64) * &u.powi(j as i64) * &t.powi((k - j) as i64);
        rhs = rhs + &term;
    }
    Ok((lhs, rhs))
}

pub enum QBinomialKind {
    Terminating { u: ExactScalar, t: ExactScalar, k: usize },
    Nonterminating { a: ExactScalar, z: ExactScalar },
}

/// Both q-binomial theorems as verification reports.
pub fn qbinomial_checks(kind: &QBinomialKind, q: &ExactScalar, prec: u32, eps: f64) -> Result<VerificationReport> {
    match kind {
        QBinomialKind::Terminating { u, t, k } => {
            let (l, r) = qbinomial_terminating(u, t, q, *k)?;
            let params = pmap(&[("u", u), ("t", t), ("q", q)]);
            Ok(VerificationReport::exact("QBINOMIAL_TERMINATING", Some(*k as i64), &params, &l, &r))
        }
        QBinomialKind::Nonterminating { a, z } => {
            let spec = SeriesSpec::plain(std::slice::from_ref(a), &[], q, z).to_approx(prec);
            let (l, cl) = eval_phi_nonterminating(&spec, eps / 4.0)?;
            let (num, _) = qpoch_infinite_exact_args(&(a.clone() * z), q, prec, eps / 4.0)?;
            let (den, _) = qpoch_infinite_exact_args(z, q, prec, eps / 4.0)?;
            let params = pmap(&[("a", a), ("z", z), ("q", q)]);
            Ok(VerificationReport::approx("QBINOMIAL_NONTERMINATING", None, &params, &l, &(num / &den), eps).with_terms(cl.terms_used))
        }
    }
}

pub(crate) fn pmap(pairs: &[(&str, &ExactScalar)]) -> ParamMap {
    pairs.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect::<BTreeMap<_, _>>()
}

/// `₂φ₂(a, c/b; c, az; q, bz)` against `(z;q)_∞/(az;q)_∞ ₂φ₁(a, b; c; q, z)`.
///
/// The left side is summed with the combined factor `(1 - (c/b) q^k) b = b - c q^k`,
/// which stays finite at `b = 0`.
pub fn jackson_22_to_21_check(
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    z: &ExactScalar,
    q: &ExactScalar,
    prec: u32,
    eps: f64,
) -> Result<VerificationReport> {
    QBase::exact(q.clone())?;
    if !z.in_unit_disk() {
        return Err(Error::DivergenceError("|z| < 1 required".into()));
    }
    let params = pmap(&[("a", a), ("b", b), ("c", c), ("z", z), ("q", q)]);
    let [ax, bx, cx, zx, qx] = [a, b, c, z, q].map(|v| v.to_approx(prec));
    let azx = ax.clone() * &zx;
    let one = qx.one_like();
    let lq = qx.log2_abs();
    let mut qk = one.clone();
    let ratio = |k: usize| -> Result<ApproxScalar> {
        let den1 = one.clone() - &(cx.clone() * &qk);
        let den2 = one.clone() - &(azx.clone() * &qk);
        if den1.is_zero() || den2.is_zero() {
            return Err(Error::pole(k + 1, "lower parameter of the 2phi2 vanishes"));
        }
        let num = (one.clone() - &(ax.clone() * &qk)) * &(bx.clone() - &(cx.clone() * &qk)) * &zx * &(-qk.clone());
        let den = den1 * &den2 * &(one.clone() - &(qk.clone() * &qx));
        qk = qk.clone() * &qx;
        Ok(num / &den)
    };
    let (la, lb, lc, laz, lz) = (ax.log2_abs(), bx.abs_f64(), cx.log2_abs(), azx.log2_abs(), zx.abs_f64());
    let majorant = |k: usize| -> Option<f64> {
        let qk = (lq * k as f64).exp2();
        let c = (lc + lq * k as f64).exp2();
        let az = (laz + lq * k as f64).exp2();
        if c >= 1.0 || az >= 1.0 {
            return None;
        }
        let a = (la + lq * k as f64).exp2();
        Some(lz * (1.0 + a) * (lb + c) * qk / ((1.0 - qk * lq.exp2()) * (1.0 - c) * (1.0 - az)))
    };
    let (lhs, cert) = sum_ratio_series(one.clone(), ratio, majorant, 0.5, 12, eps / 4.0)?;
    let spec21 = SeriesSpec::plain(&[a.clone(), b.clone()], std::slice::from_ref(c), q, z).to_approx(prec);
    let (phi, _) = eval_phi_nonterminating(&spec21, eps / 4.0)?;
    let (num, _) = qpoch_infinite_exact_args(z, q, prec, eps / 4.0)?;
    let (den, _) = qpoch_infinite_exact_args(&(a.clone() * z), q, prec, eps / 4.0)?;
    let rhs = num / &den * &phi;
    Ok(VerificationReport::approx("JACKSON_22_21", None, &params, &lhs, &rhs, eps).with_terms(cert.terms_used))
}

/// Classical `r F s(upper; lower; z)`.
pub fn eval_rfs(upper: &[ApproxScalar], lower: &[ApproxScalar], z: &ApproxScalar, eps: f64) -> Result<ApproxScalar> {
    let (r, s) = (upper.len(), lower.len());
    if r > s + 1 {
        return Err(Error::DivergenceError(format!("{r}F{s} diverges for z != 0")));
    }
    if r == s + 1 && z.log2_abs() >= 0.0 {
        return Err(Error::DivergenceError("|z| < 1 required".into()));
    }
    let one = z.one_like();
    let ratio = |k: usize| -> Result<ApproxScalar> {
        let kk = one.from_i64_like(k as i64);
        let mut num = z.clone();
        for a in upper {
            num = num * &(a.clone() + &kk);
        }
        let mut den = kk.clone() + &one;
        for (i, b) in lower.iter().enumerate() {
            let f = b.clone() + &kk;
            if f.is_zero() {
                return Err(Error::pole(k + 1, format!("lower parameter #{i} is a nonpositive integer")));
            }
            den = den * &f;
        }
        Ok(num / &den)
    };
    let ua: Vec<f64> = upper.iter().map(Scalar::abs_f64).collect();
    let la: Vec<f64> = lower.iter().map(Scalar::abs_f64).collect();
    let zabs = z.abs_f64();
    // Pair upper parameters with lower ones (the factorial counting as a
    // lower parameter with offset 1) and bound each quotient for k >= K.
    let majorant = |kk: usize| -> Option<f64> {
        let k = kk as f64;
        let mut offsets: Vec<f64> = la.iter().map(|b| -b).collect();
        offsets.push(1.0);
        let mut acc = zabs;
        for (i, off) in offsets.iter().enumerate() {
            if k + off <= 0.0 {
                return None;
            }
            match ua.get(i) {
                Some(&a) => acc *= ((k + a) / (k + off)).max(1.0),
                None => acc /= k + off,
            }
        }
        Some(acc)
    };
    let r_star = if r == s + 1 { (1.0 + zabs) / 2.0 } else { 0.5 };
    sum_ratio_series(one.clone(), ratio, majorant, r_star, r + s + 4, eps).map(|(v, _)| v)
}

/// Bound on `Σ_n |(α;q)_n (β;q)_n / ((q;q)_n (γ;q)_n)| y^n` with magnitudes
/// `α, β, γ, q, y`, all factors majorized termwise.
fn abs_21_bound(alpha: f64, beta: f64, gamma: f64, q: f64, y: f64) -> Option<f64> {
    if gamma >= 1.0 || y >= 1.0 {
        return None;
    }
    let (mut sum, mut t) = (1.0f64, 1.0f64);
    let mut qj = 1.0f64;
    for _ in 0..100_000 {
        let rho = (1.0 + alpha * qj) * (1.0 + beta * qj) / ((1.0 - qj * q) * (1.0 - gamma * qj)) * y;
        t *= rho;
        sum += t;
        qj *= q;
        if rho < 1.0 && t * rho / (1.0 - rho) < 1e-18 * sum {
            return Some((sum + t * rho / (1.0 - rho)) * 1.01);
        }
    }
    None
}

/// q-Appell `Φ⁽¹⁾(a; b, b'; c; q; x, y)` summed row by row in `x`.
#[allow(clippy::too_many_arguments)]
pub fn eval_qappell_phi1(
    a: &ApproxScalar,
    b: &ApproxScalar,
    bp: &ApproxScalar,
    c: &ApproxScalar,
    x: &ApproxScalar,
    y: &ApproxScalar,
    q: &ApproxScalar,
    eps: f64,
) -> Result<(ApproxScalar, TruncationCert)> {
    QBase::new(q.clone())?;
    if x.log2_abs() >= 0.0 || y.log2_abs() >= 0.0 {
        return Err(Error::DivergenceError("|x| < 1 and |y| < 1 required".into()));
    }
    let one = q.one_like();
    let (qa, la, lb, lbp, lc, lx, ly) = (q.abs_f64(), a.abs_f64(), b.abs_f64(), bp.abs_f64(), c.abs_f64(), x.abs_f64(), y.abs_f64());
    let row_eps = eps * 1e-6;
    let mut sum = one.zero_like();
    let mut coef = one.clone();
    let (mut aqm, mut cqm, mut qm) = (a.clone(), c.clone(), one.clone());
    let mut row_err = 0.0f64;
    let mut terms = 0usize;
    let mut window = 0usize;
    for m in 0..MAX_TERMS {
        let row = SeriesSpec::plain(&[aqm.clone(), bp.clone()], &[cqm.clone()], q, y);
        let (rv, rc) = eval_phi_nonterminating(&row, row_eps)?;
        terms += rc.terms_used;
        row_err += row_eps * rv.abs_f64().max(1.0) * coef.abs_f64();
        sum = sum + &(coef.clone() * &rv);
        // Advance the row coefficient (a;q)_m (b;q)_m x^m / ((q;q)_m (c;q)_m).
        let den = (one.clone() - &(qm.clone() * q)) * &(one.clone() - &cqm);
        if den.is_zero() {
            return Err(Error::pole(m + 1, "lower parameter c vanishes"));
        }
        let step = (one.clone() - &aqm) * &(one.clone() - &(b.clone() * &qm)) * x / &den;
        window = if step.abs_f64() < (1.0 + lx) / 2.0 { window + 1 } else { 0 };
        coef = coef * &step;
        aqm = aqm * q;
        cqm = cqm * q;
        qm = qm * q;
        if coef.is_zero() {
            break;
        }
        if window >= SAFETY_WINDOW {
            let m1 = (m + 1) as f64;
            let qpow = qa.powf(m1);
            let rho = lx * (1.0 + la * qpow) * (1.0 + lb * qpow) / ((1.0 - qpow * qa) * (1.0 - lc * qpow));
            if let (true, Some(rows)) = (rho < 1.0 && lc * qpow < 1.0, abs_21_bound(la * qpow, lbp, lc * qpow, qa, ly)) {
                let scale = sum.abs_f64().max(1.0);
                let tail = coef.abs_f64() * rows / (1.0 - rho);
                if tail + row_err <= eps * scale {
                    let cert = TruncationCert { terms_used: terms, tail_bound: (tail + row_err) / scale, target_eps: eps, zero_factor: false };
                    return Ok((sum, cert));
                }
            }
        }
    }
    let scale = sum.abs_f64().max(1.0);
    Ok((sum, TruncationCert { terms_used: terms, tail_bound: row_err / scale, target_eps: eps, zero_factor: false }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ex(v: &[(i64, i64)]) -> Vec<ExactScalar> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn unit_upper_parameter_truncates() {
        let q = rat(1, 3);
        let mut spec = SeriesSpec::plain(&ex(&[(1, 1), (1, 5)]), &ex(&[(1, 7)]), &q, &rat(1, 2));
        spec.termination = Termination::At(0);
        assert_eq!(eval_phi_terminating(&spec).unwrap(), rat(1, 1));
    }

    #[test]
    fn terminating_q_binomial() {
        // 1phi0(q^{-n};-;q,z) = (z q^{-n};q)_n
        let q = rat(2, 7);
        let z = rat(-3, 5);
        for n in 0..=6usize {
            let qn = q.powi(-(n as i64));
            let spec = SeriesSpec::terminating(vec![Param::Plain(qn.clone())], vec![], q.clone(), z.clone(), n);
            assert_eq!(eval_phi_terminating(&spec).unwrap(), qpoch(&(z.clone() * &qn), &q, n), "n={n}");
        }
    }

    #[test]
    fn pole_before_termination_is_an_error() {
        let q = rat(1, 2);
        // Lower parameter q^{-1} vanishes at k = 1.
        let spec = SeriesSpec::terminating(
            vec![Param::Plain(q.powi(-3))],
            vec![Param::Plain(q.powi(-1))],
            q.clone(),
            q.clone(),
            3,
        );
        assert!(matches!(eval_phi_terminating(&spec), Err(Error::PoleError { index: 2, .. })));
    }

    #[test]
    fn nonterminating_zero_argument() {
        let spec = SeriesSpec::plain(&ex(&[(1, 3), (1, 5)]), &ex(&[(1, 7)]), &rat(1, 2), &rat(0, 1)).to_approx(256);
        let (v, c) = eval_phi_nonterminating(&spec, 1e-40).unwrap();
        assert_eq!(v.to_c64(), (1.0, 0.0));
        assert_eq!(c.terms_used, 1);
    }

    #[test]
    fn divergent_argument_rejected() {
        let spec = SeriesSpec::plain(&ex(&[(1, 3), (1, 5)]), &ex(&[(1, 7)]), &rat(1, 2), &rat(1, 1)).to_approx(128);
        assert!(matches!(eval_phi_nonterminating(&spec, 1e-20), Err(Error::DivergenceError(_))));
    }

    #[test]
    fn balance_classes() {
        let q = rat(1, 2);
        // q * (q^{-2} * a * b * c) = d * e * f with d e f = a b c / q
        let (a, b, c) = (rat(1, 3), rat(1, 5), rat(2, 7));
        let up = vec![q.powi(-2), a.clone(), b.clone(), c.clone()];
        let lo = vec![rat(3, 4), rat(5, 9), a * b * c / q.clone() / rat(3, 4) / rat(5, 9)];
        let spec = SeriesSpec::plain(&up, &lo, &q, &q);
        assert_eq!(spec.balance_class(), BalanceClass::Balanced(1));
        let wp = SeriesSpec::plain(&ex(&[(1, 3), (1, 5), (1, 7)]), &[rat(1, 6) / rat(1, 5), rat(1, 6) / rat(1, 7)], &q, &q);
        assert_eq!(wp.balance_class(), BalanceClass::WellPoised);
    }

    #[test]
    fn rfs_logarithm() {
        let one = rat(1, 1).to_approx(128);
        let two = rat(2, 1).to_approx(128);
        let z = rat(1, 2).to_approx(128);
        let v = eval_rfs(&[one.clone(), one], &[two], &z, 1e-30).unwrap();
        assert!((v.to_c64().0 - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn qbinomial_terminating_example() {
        let (l, r) = qbinomial_terminating(&rat(1, 2), &rat(1, 3), &rat(1, 5), 4).unwrap();
        assert_eq!(l, r);
        let (l, r) = qbinomial_terminating(&rat(1, 2), &rat(1, 3), &rat(1, 5), 0).unwrap();
        assert_eq!((l, r), (rat(1, 1), rat(1, 1)));
    }

    #[test]
    fn jackson_b_zero_and_z_zero() {
        let q = rat(1, 2);
        let r = jackson_22_to_21_check(&rat(1, 3), &rat(0, 1), &rat(1, 5), &rat(1, 6), &q, 256, 1e-35).unwrap();
        assert!(r.pass, "{r:?}");
        let r = jackson_22_to_21_check(&rat(1, 3), &rat(1, 4), &rat(1, 5), &rat(0, 1), &q, 256, 1e-35).unwrap();
        assert!(r.pass);
    }
}
