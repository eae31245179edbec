//! q-Pochhammer symbols, finite and infinite.

use serde::{Deserialize, Serialize};

use crate::bigfloat::MIN_PREC;
use crate::error::{Error, Result};
use crate::scalar::{ApproxScalar, ExactScalar, Mode, Scalar, Value};

/// A base with `|q| < 1`.
#[derive(Clone, Debug)]
pub struct QBase<S> {
    value: S,
    modulus_bound: f64,
}

impl<S: Scalar> QBase<S> {
    pub fn new(value: S) -> Result<Self> {
        let l = value.log2_abs();
        if l >= 0.0 {
            return Err(Error::DomainError(format!("|q| < 1 required, got q = {value}")));
        }
        Ok(Self { value, modulus_bound: l.exp2() })
    }

    pub fn value(&self) -> &S {
        &self.value
    }

    pub fn modulus_bound(&self) -> f64 {
        self.modulus_bound
    }
}

impl QBase<ExactScalar> {
    /// Decided exactly, which matters for `|q|` just below 1.
    pub fn exact(value: ExactScalar) -> Result<Self> {
        if !value.in_unit_disk() {
            return Err(Error::DomainError(format!("|q| < 1 required, got q = {value}")));
        }
        let modulus_bound = value.abs_f64().min(1.0 - f64::EPSILON);
        Ok(Self { value, modulus_bound })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationCert {
    pub terms_used: usize,
    /// Bound on the relative truncation error.
    pub tail_bound: f64,
    pub target_eps: f64,
    /// The product contains an exactly vanishing factor; the value is 0.
    #[serde(default)]
    pub zero_factor: bool,
}

impl TruncationCert {
    pub fn trivial(eps: f64) -> Self {
        Self { terms_used: 0, tail_bound: 0.0, target_eps: eps, zero_factor: false }
    }

    /// Combine certificates of factors multiplied together.
    pub fn product(certs: &[TruncationCert], eps: f64) -> Self {
        let zero = certs.iter().any(|c| c.zero_factor);
        // (1+e1)(1+e2)... - 1 bounds the relative error of a product.
        let tail = if zero { 0.0 } else { certs.iter().fold(1.0, |acc, c| acc * (1.0 + c.tail_bound)) - 1.0 };
        Self {
            terms_used: certs.iter().map(|c| c.terms_used).sum(),
            tail_bound: tail,
            target_eps: eps,
            zero_factor: zero,
        }
    }
}

/// `(a;q)_n` for `n >= 0`.
pub fn qpoch<S: Scalar>(a: &S, q: &S, n: usize) -> S {
    let one = a.one_like();
    let mut acc = one.clone();
    let mut aqk = a.clone();
    for k in 0..n {
        acc = acc * &(one.clone() - &aqk);
        if k + 1 < n {
            aqk = aqk * q;
        }
    }
    acc
}

/// `(a;q)_n` over run-time values, rejecting mixed modes and negative `n`.
pub fn qpoch_finite(a: &Value, q: &Value, n: i64) -> Result<Value> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    match (a, q) {
        (Value::Exact(a), Value::Exact(q)) => Ok(Value::Exact(qpoch(a, q, n as usize))),
        (Value::Approx(a), Value::Approx(q)) => Ok(Value::Approx(qpoch(a, q, n as usize))),
        _ => Err(Error::ModeMismatch),
    }
}

/// A series parameter, possibly standing for a pair of values.
///
/// Pairs let exact arithmetic carry `±√s` without the square root: the two
/// factors `(1 - √s q^k)(1 + √s q^k)` combine to `1 - s q^{2k}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Param<S> {
    Plain(S),
    /// `±a`
    PlusMinus(S),
    /// `a w^{±1}`
    ScaledPm { a: S, w: S },
    /// `±√s`
    SqrtPm(S),
}

impl<S: Scalar> Param<S> {
    /// Number of scalar parameters represented.
    pub fn count(&self) -> usize {
        match self {
            Param::Plain(_) => 1,
            _ => 2,
        }
    }

    /// Product of the represented values.
    pub fn product(&self) -> S {
        match self {
            Param::Plain(a) => a.clone(),
            Param::PlusMinus(a) => -(a.clone() * a),
            Param::ScaledPm { a, .. } => a.clone() * a,
            Param::SqrtPm(s) => -s.clone(),
        }
    }

    /// Product of `1 - v q^k` over the represented values `v`, given `q^k`.
    pub fn factor(&self, qk: &S) -> S {
        let one = qk.one_like();
        match self {
            Param::Plain(a) => one - &(a.clone() * qk),
            Param::PlusMinus(a) => {
                let t = a.clone() * qk;
                one - &(t.clone() * &t)
            }
            Param::ScaledPm { a, w } => {
                let t = a.clone() * qk;
                let (x, y) = (t.clone() * w, t / w);
                (one.clone() - &x) * &(one - &y)
            }
            Param::SqrtPm(s) => one - &(s.clone() * qk * qk),
        }
    }

    /// `(p;q)_n`, expanding the pair shorthand.
    pub fn qpoch(&self, q: &S, n: usize) -> S {
        match self {
            Param::Plain(a) => qpoch(a, q, n),
            Param::PlusMinus(a) => qpoch(&(a.clone() * a), &(q.clone() * q), n),
            Param::ScaledPm { a, w } => qpoch(&(a.clone() * w), q, n) * qpoch(&(a.clone() / w), q, n),
            Param::SqrtPm(s) => qpoch(s, &(q.clone() * q), n),
        }
    }

    /// Magnitude descriptors `(log2 |c|, m)` such that the factors are
    /// `1 - c q^{m k}` (or bounded by them factorwise).
    pub fn magnitudes(&self) -> Vec<(f64, u32)> {
        match self {
            Param::Plain(a) => vec![(a.log2_abs(), 1)],
            Param::PlusMinus(a) => vec![(2.0 * a.log2_abs(), 2)],
            Param::ScaledPm { a, w } => {
                let (la, lw) = (a.log2_abs(), w.log2_abs());
                vec![(la + lw, 1), (la - lw, 1)]
            }
            Param::SqrtPm(s) => vec![(s.log2_abs(), 2)],
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Param<T> {
        match self {
            Param::Plain(a) => Param::Plain(f(a)),
            Param::PlusMinus(a) => Param::PlusMinus(f(a)),
            Param::ScaledPm { a, w } => Param::ScaledPm { a: f(a), w: f(w) },
            Param::SqrtPm(s) => Param::SqrtPm(f(s)),
        }
    }
}

impl<S: Scalar> From<S> for Param<S> {
    fn from(a: S) -> Self {
        Param::Plain(a)
    }
}

/// Product of `(p;q)_n` over a parameter list.
pub fn qpoch_list<S: Scalar>(params: &[Param<S>], q: &S, n: usize) -> S {
    let mut acc = q.one_like();
    for p in params {
        acc = acc * &p.qpoch(q, n);
    }
    acc
}

/// Relative-error bound `e^τ - 1` for dropping `∏_{k≥K} (1 - c q^{mk})`,
/// where `τ` majorizes the log of the tail. `None` until `|c||q|^{mK} < 1/2`.
fn tail_rel_bound(log2_c: f64, log2_q: f64, m: u32, k: usize) -> Option<f64> {
    if log2_c == f64::NEG_INFINITY {
        return Some(0.0);
    }
    let lead = (log2_c + log2_q * (m as f64) * (k as f64)).exp2();
    if lead >= 0.5 {
        return None;
    }
    let qm = (log2_q * m as f64).exp2();
    let tau = lead / ((1.0 - qm) * (1.0 - lead));
    Some(tau.exp_m1())
}

fn rounding_bound(prec: u32, ops: usize) -> f64 {
    // Each complex multiply contributes at most ~4 ulps of relative error.
    4.0 * (ops as f64 + 1.0) * (-(prec as f64)).exp2()
}

/// `(a;q)_∞` with a certified relative truncation bound.
pub fn qpoch_infinite(a: &ApproxScalar, q: &QBase<ApproxScalar>, eps: f64) -> Result<(ApproxScalar, TruncationCert)> {
    qpoch_infinite_stride(a, q.value(), 1, eps)
}

/// `(a; q^m)_∞` given `q`.
fn qpoch_infinite_stride(a: &ApproxScalar, q: &ApproxScalar, m: u32, eps: f64) -> Result<(ApproxScalar, TruncationCert)> {
    if !(eps > 0.0) {
        return Err(Error::DomainError("eps must be positive".into()));
    }
    let log2_q = q.log2_abs();
    if log2_q >= 0.0 {
        return Err(Error::DomainError(format!("|q| < 1 required, got q = {q}")));
    }
    let prec = a.prec().min(q.prec());
    if prec < MIN_PREC {
        return Err(Error::DomainError(format!("precision {prec} below {MIN_PREC} bits")));
    }
    let one = a.one_like();
    if a.is_zero() {
        return Ok((one, TruncationCert::trivial(eps)));
    }
    let log2_a = a.log2_abs();
    let step = q.powi(m as i64);
    let mut acc = one.clone();
    let mut aqk = a.clone();
    let mut k = 0usize;
    loop {
        if let Some(t) = tail_rel_bound(log2_a, log2_q, m, k) {
            let total = t + rounding_bound(prec, k);
            if total <= eps / 2.0 {
                let cert = TruncationCert { terms_used: k, tail_bound: total, target_eps: eps, zero_factor: false };
                return Ok((acc, cert));
            }
            if rounding_bound(prec, k) > eps / 2.0 {
                return Err(Error::NoConvergence(format!("{prec} bits cannot reach eps {eps:e}")));
            }
        }
        let f = one.clone() - &aqk;
        if f.is_zero() {
            let cert = TruncationCert { terms_used: k + 1, tail_bound: 0.0, target_eps: eps, zero_factor: true };
            return Ok((a.zero_like(), cert));
        }
        acc = acc * &f;
        aqk = aqk * &step;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::NoConvergence("infinite product did not settle".into()));
        }
    }
}

/// `(a;q)_∞` for exact inputs evaluated at `prec` bits. A factor that
/// vanishes exactly is detected in exact arithmetic rather than by rounding.
pub fn qpoch_infinite_exact_args(
    a: &ExactScalar,
    q: &ExactScalar,
    prec: u32,
    eps: f64,
) -> Result<(ApproxScalar, TruncationCert)> {
    let qb = QBase::exact(q.clone())?;
    if let Some(k) = vanishing_index(a, qb.value()) {
        let cert = TruncationCert { terms_used: k + 1, tail_bound: 0.0, target_eps: eps, zero_factor: true };
        return Ok((ApproxScalar::from_f64(0.0, 0.0, prec), cert));
    }
    qpoch_infinite_stride(&a.to_approx(prec), &q.to_approx(prec), 1, eps)
}

/// Least `k >= 0` with `a q^k = 1`, if any.
pub fn vanishing_index(a: &ExactScalar, q: &ExactScalar) -> Option<usize> {
    if a.is_zero() {
        return None;
    }
    let (la, lq) = (a.log2_abs(), q.log2_abs());
    // |a q^k| = 1 forces k = -log|a| / log|q|, so only one k is a candidate.
    let k = (-la / lq).round();
    if !(0.0..=1e6).contains(&k) {
        return None;
    }
    for k in [k as i64 - 1, k as i64, k as i64 + 1] {
        if k >= 0 && (a.clone() * q.powi(k)) == a.one_like() {
            return Some(k as usize);
        }
    }
    None
}

/// Infinite product over a parameter list, each pair expanded in base `q²`.
pub fn qpoch_infinite_list(params: &[Param<ApproxScalar>], q: &ApproxScalar, eps: f64) -> Result<(ApproxScalar, TruncationCert)> {
    let share = eps / (params.len().max(1) as f64 * 2.0);
    let mut acc = q.one_like();
    let mut certs = Vec::new();
    for p in params {
        let (v, c) = match p {
            Param::Plain(a) => qpoch_infinite_stride(a, q, 1, share)?,
            Param::PlusMinus(a) => qpoch_infinite_stride(&(a.clone() * a), q, 2, share)?,
            Param::SqrtPm(s) => qpoch_infinite_stride(s, q, 2, share)?,
            Param::ScaledPm { a, w } => {
                let (x, cx) = qpoch_infinite_stride(&(a.clone() * w), q, 1, share)?;
                let (y, cy) = qpoch_infinite_stride(&(a.clone() / w), q, 1, share)?;
                (x * y, TruncationCert::product(&[cx, cy], share))
            }
        };
        acc = acc * &v;
        certs.push(c);
    }
    Ok((acc, TruncationCert::product(&certs, eps)))
}

/// Exact-argument version of [`qpoch_infinite_list`].
pub fn qpoch_infinite_list_exact(params: &[Param<ExactScalar>], q: &ExactScalar, prec: u32, eps: f64) -> Result<(ApproxScalar, TruncationCert)> {
    let q2 = q.clone() * q;
    for p in params {
        let zero = match p {
            Param::Plain(a) => vanishing_index(a, q).is_some(),
            Param::PlusMinus(a) => vanishing_index(&(a.clone() * a), &q2).is_some(),
            Param::SqrtPm(s) => vanishing_index(s, &q2).is_some(),
            Param::ScaledPm { a, w } => {
                vanishing_index(&(a.clone() * w), q).is_some() || vanishing_index(&(a.clone() / w), q).is_some()
            }
        };
        if zero {
            let cert = TruncationCert { terms_used: 0, tail_bound: 0.0, target_eps: eps, zero_factor: true };
            return Ok((ApproxScalar::from_f64(0.0, 0.0, prec), cert));
        }
    }
    let approx: Vec<_> = params.iter().map(|p| p.map(|x| x.to_approx(prec))).collect();
    qpoch_infinite_list(&approx, &q.to_approx(prec), eps)
}

/// Mode of a list of run-time values, or `ModeMismatch`.
pub fn common_mode(values: &[&Value]) -> Result<Mode> {
    let first = values.first().map(|v| v.mode()).unwrap_or(Mode::Exact);
    if values.iter().all(|v| v.mode() == first) {
        Ok(first)
    } else {
        Err(Error::ModeMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn finite_examples() {
        let q = rat(1, 3);
        assert_eq!(qpoch(&rat(7, 5), &q, 0), rat(1, 1));
        assert_eq!(qpoch(&rat(0, 1), &rat(1, 2), 5), rat(1, 1));
        assert_eq!(qpoch(&rat(1, 2), &q, 2), rat(5, 12));
    }

    #[test]
    fn run_time_values() {
        let a = Value::Exact(rat(1, 2));
        let qa = Value::Approx(rat(1, 3).to_approx(128));
        assert_eq!(qpoch_finite(&a, &qa, 2).unwrap_err(), Error::ModeMismatch);
        assert_eq!(qpoch_finite(&a, &a, -1).unwrap_err(), Error::NegativeIndex(-1));
        assert!(matches!(qpoch_finite(&a, &Value::Exact(rat(1, 3)), 2).unwrap(), Value::Exact(x) if x == rat(5, 12)));
    }

    #[test]
    fn list_examples() {
        let q = rat(1, 2);
        let v = qpoch_list(&[Param::Plain(rat(1, 2)), Param::Plain(rat(1, 3))], &q, 1);
        assert_eq!(v, rat(1, 3));
        let a = rat(2, 7);
        for n in 0..6 {
            let pm = qpoch_list(&[Param::PlusMinus(a.clone())], &q, n);
            let split = qpoch_list(&[Param::Plain(a.clone()), Param::Plain(-a.clone())], &q, n);
            assert_eq!(pm, split);
            assert_eq!(pm, qpoch(&(a.clone() * &a), &(q.clone() * &q), n));
            let s = qpoch_list(&[Param::SqrtPm(a.clone() * &a)], &q, n);
            assert_eq!(s, pm);
        }
    }

    #[test]
    fn infinite_zero_parameter() {
        let q = QBase::new(rat(1, 2).to_approx(256)).unwrap();
        let (v, c) = qpoch_infinite(&rat(0, 1).to_approx(256), &q, 1e-30).unwrap();
        assert_eq!(v.to_c64(), (1.0, 0.0));
        assert_eq!(c.tail_bound, 0.0);
    }

    #[test]
    fn infinite_vanishing_factor() {
        let (v, c) = qpoch_infinite_exact_args(&rat(8, 1), &rat(1, 2), 256, 1e-30).unwrap();
        assert!(v.is_zero() && c.zero_factor);
        assert_eq!(vanishing_index(&rat(8, 1), &rat(1, 2)), Some(3));
        assert_eq!(vanishing_index(&rat(-8, 1), &rat(1, 2)), None);
        assert_eq!(vanishing_index(&rat(-8, 1), &rat(-1, 2)), Some(3));
    }

    #[test]
    fn infinite_rejects_bad_base() {
        assert!(QBase::new(rat(1, 1).to_approx(128)).is_err());
        assert!(QBase::exact(crate::scalar::ExactScalar::gauss(3, 5, 4, 5)).is_err());
    }
}
