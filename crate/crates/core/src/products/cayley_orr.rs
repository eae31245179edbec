//! Cayley–Orr type coefficient lemmas: a product of two `2φ1` in base `q²`
//! equals `Σ w_n a_n z^n`, where `a_n` are the coefficients of an auxiliary
//! base-`q` series times a ratio of infinite products.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qkernel::{qpoch, vanishing_index};
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::series::{eval_phi_nonterminating, SeriesSpec};

use super::formulas::lower_pole;
use super::power_series::PowerSeriesTrunc;
use super::{sum_adaptive, ProductOptions};

type X = ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CayleyOrr {
    /// `(q³cz/(ab); q²)_∞ / (z; q²)_∞ · 2φ1(a/q, b/q; c; q, q²cz/(ab))`.
    A,
    /// `(qcz/(ab); q²)_∞ / (z; q²)_∞ · 2φ1(a/q, b; c/q; q, cz/(ab))`.
    B,
}

impl CayleyOrr {
    pub fn id(&self) -> &'static str {
        match self {
            CayleyOrr::A => "CAYLEY_ORR_A",
            CayleyOrr::B => "CAYLEY_ORR_B",
        }
    }
}

/// Everything the lemma needs, in one base.
struct Setup<S> {
    /// `x` in `(x z; q²)_∞`.
    x: S,
    /// The auxiliary base-`q` series with unit argument, and its scale.
    aux: SeriesSpec<S>,
    y: S,
    /// The two base-`q²` factors of the product (unit arguments).
    first: SeriesSpec<S>,
    second: SeriesSpec<S>,
    /// `w_n = (u; q²)_n / (v; q²)_n`.
    wu: S,
    wv: S,
}

fn setup<S: Scalar>(which: CayleyOrr, a: &S, b: &S, c: &S, q: &S) -> Setup<S> {
    let one = q.one_like();
    let q2 = q.clone() * q;
    let ab = a.clone() * b;
    let plain = |up: &[S], lo: &[S], base: &S| SeriesSpec::plain(up, lo, base, &one);
    match which {
        CayleyOrr::A => {
            let y = q2.clone() * c / &ab;
            Setup {
                x: y.clone() * q,
                aux: plain(&[a.clone() / q, b.clone() / q], std::slice::from_ref(c), q),
                first: plain(&[q2.clone() * c / a, q2.clone() * c / b], &[q2.clone() * c], &q2),
                second: plain(&[a.clone() / q, b.clone() / q], std::slice::from_ref(c), &q2),
                y,
                wu: q.clone() * c,
                wv: q2 * c,
            }
        }
        CayleyOrr::B => {
            let y = c.clone() / &ab;
            Setup {
                x: y.clone() * q,
                aux: plain(&[a.clone() / q, b.clone()], &[c.clone() / q], q),
                first: plain(&[q.clone() * c / a, c.clone() / &(q.clone() * b)], std::slice::from_ref(c), &q2),
                second: plain(&[a.clone(), b.clone()], std::slice::from_ref(c), &q2),
                y,
                wu: c.clone() / q,
                wv: c.clone(),
            }
        }
    }
}

/// `(α t; p)_∞` as a power series by Euler's expansion.
fn euler_product<S: Scalar>(alpha: &S, p: &S, order: usize) -> Result<PowerSeriesTrunc<S>> {
    let one = p.one_like();
    let mut out = Vec::with_capacity(order + 1);
    let mut c = one.clone();
    let mut pk = one.clone();
    out.push(c.clone());
    for _ in 0..order {
        // c_{k+1} = -c_k α p^k / (1 - p^{k+1})
        let den = one.clone() - &(pk.clone() * p);
        if den.is_zero() {
            return Err(Error::pole(0, "base is a root of unity"));
        }
        c = -(c * alpha * &pk) / &den;
        pk = pk * p;
        out.push(c.clone());
    }
    Ok(PowerSeriesTrunc::new(out, order, &one))
}

fn check_args(a: &X, b: &X, c: &X, q: &X) -> Result<()> {
    if [a, b, c, q].iter().any(|x| x.is_zero()) {
        return Err(Error::DomainError("a, b, c, q must be nonzero".into()));
    }
    Ok(())
}

/// `a_0..=a_{n_max}`, by truncated-series division and multiplication.
pub fn cayley_orr_an(which: CayleyOrr, a: &X, b: &X, c: &X, q: &X, n_max: usize) -> Result<Vec<X>> {
    check_args(a, b, c, q)?;
    let s = setup(which, a, b, c, q);
    let q2 = q.clone() * q;
    let ratio = euler_product(&s.x, &q2, n_max)?.div(&euler_product(&q.one_like(), &q2, n_max)?)?;
    let aux = PowerSeriesTrunc::new(s.aux.coefficients(n_max)?, n_max, q).substitute(&s.y, 1);
    Ok((&ratio * &aux).coeffs)
}

fn weights(s: &Setup<X>, q2: &X, n_max: usize) -> Result<Vec<X>> {
    (0..=n_max)
        .map(|n| {
            let den = qpoch(&s.wv, q2, n);
            if den.is_zero() {
                return Err(Error::pole(n, "weight denominator vanishes"));
            }
            Ok(qpoch(&s.wu, q2, n) / &den)
        })
        .collect()
}

/// `w_n a_n` for `n <= n_max`: the coefficients the lemma predicts.
pub fn cayley_orr_weighted(which: CayleyOrr, a: &X, b: &X, c: &X, q: &X, n_max: usize) -> Result<Vec<X>> {
    let an = cayley_orr_an(which, a, b, c, q, n_max)?;
    let s = setup(which, a, b, c, q);
    let w = weights(&s, &(q.clone() * q), n_max)?;
    Ok(an.into_iter().zip(w).map(|(x, y)| x * &y).collect())
}

/// Coefficient-by-coefficient comparison of the product of two `2φ1` with
/// the weighted `a_n`, exactly.
pub fn cayley_orr_check(which: CayleyOrr, a: &X, b: &X, c: &X, q: &X, n_max: usize) -> Result<Vec<VerificationReport>> {
    let rhs = cayley_orr_weighted(which, a, b, c, q, n_max)?;
    let s = setup(which, a, b, c, q);
    let f1 = PowerSeriesTrunc::new(s.first.coefficients(n_max)?, n_max, q);
    let f2 = PowerSeriesTrunc::new(s.second.coefficients(n_max)?, n_max, q).substitute(&s.y, 1);
    let lhs = &f1 * &f2;
    let pm: ParamMap = [("a", a), ("b", b), ("c", c), ("q", q)].iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect();
    Ok((0..=n_max)
        .map(|n| VerificationReport::exact(which.id(), Some(n as i64), &pm, lhs.coeff(n), &rhs[n]))
        .collect())
}

/// Value form at `z`: the product of the two `2φ1` against `Σ w_n a_n z^n`,
/// with `a_n` from the q-binomial expansion of the product ratio.
pub(super) fn cayley_orr_value(which: CayleyOrr, p: &ParamMap, opts: &ProductOptions) -> Result<VerificationReport> {
    let g = |k: &str| p[k].clone();
    let (q, a, b, c, z) = (g("q"), g("a"), g("b"), g("c"), g("z"));
    check_args(&a, &b, &c, &q)?;
    let sx = setup(which, &a, &b, &c, &q);
    if !(sx.y.clone() * &z).in_unit_disk() {
        return Err(Error::DivergenceError("auxiliary argument must lie in the unit disk".into()));
    }
    let q2 = q.clone() * &q;
    if vanishing_index(&sx.wv, &q2).is_some() {
        return Err(Error::pole(0, "weight denominator vanishes"));
    }
    if let Some(k) = [&sx.aux, &sx.first, &sx.second].into_iter().filter_map(lower_pole).min() {
        return Err(Error::pole(k + 1, "lower parameter hits a pole"));
    }
    let prec = opts.prec;
    let s = setup(which, &a.to_approx(prec), &b.to_approx(prec), &c.to_approx(prec), &q.to_approx(prec));
    let za = z.to_approx(prec);
    let eps = opts.eps / 16.0;
    let (v1, c1) = eval_phi_nonterminating(&s.first.with_z(za.clone()), eps)?;
    let (v2, c2) = eval_phi_nonterminating(&s.second.with_z(s.y.clone() * &za), eps)?;
    let lhs = v1 * &v2;

    let qa = q.to_approx(prec);
    let q2a = qa.clone() * &qa;
    let one = qa.one_like();
    // e1_k = (x; q²)_k / (q²; q²)_k, e2_j = aux coefficient_j · y^j.
    let mut e1: Vec<ApproxScalar> = Vec::new();
    let mut e2: Vec<ApproxScalar> = Vec::new();
    let unit_aux = s.aux.clone();
    let (mut wn, mut zn, mut q2k, mut qk) = (one.clone(), one.clone(), one.clone(), one.clone());
    let (rhs, terms) = sum_adaptive(
        |n| {
            if n == 0 {
                e1.push(one.clone());
                e2.push(one.clone());
            } else {
                let prev = e1[n - 1].clone();
                let den = one.clone() - &(q2k.clone() * &q2a);
                e1.push(prev * &(one.clone() - &(s.x.clone() * &q2k)) / &den);
                let r = aux_ratio(&unit_aux, &qk)?;
                e2.push(e2[n - 1].clone() * &r * &s.y);
                wn = wn.clone() * &(one.clone() - &(s.wu.clone() * &q2k)) / &(one.clone() - &(s.wv.clone() * &q2k));
                q2k = q2k.clone() * &q2a;
                qk = qk.clone() * &qa;
                zn = zn.clone() * &za;
            }
            let mut an = one.zero_like();
            for k in 0..=n {
                an = an + &(e1[k].clone() * &e2[n - k]);
            }
            Ok(wn.clone() * &an * &zn)
        },
        eps,
    )?;
    let pm: ParamMap = [("q", &q), ("a", &a), ("b", &b), ("c", &c), ("z", &z)].iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect();
    Ok(VerificationReport::approx(which.id(), None, &pm, &lhs, &rhs, opts.eps).with_terms(c1.terms_used + c2.terms_used + terms))
}

/// Term ratio `c_{k+1}/c_k` of a unit-argument series, given `q^k`.
fn aux_ratio(spec: &SeriesSpec<ApproxScalar>, qk: &ApproxScalar) -> Result<ApproxScalar> {
    let one = qk.one_like();
    let mut num = one.clone();
    for p in &spec.upper {
        num = num * &p.factor(qk);
    }
    let mut den = one.clone() - &(qk.clone() * &spec.q);
    for p in &spec.lower {
        den = den * &p.factor(qk);
    }
    if den.is_zero() {
        return Err(Error::pole(0, "auxiliary series lower parameter vanishes"));
    }
    Ok(num / &den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn lemmas_hold_coefficientwise() {
        let (a, b, c, q) = (rat(2, 7), ExactScalar::gauss(3, 11, -1, 5), rat(5, 13), rat(1, 3));
        for which in [CayleyOrr::A, CayleyOrr::B] {
            let rs = cayley_orr_check(which, &a, &b, &c, &q, 9).unwrap();
            assert!(VerificationReport::all_pass(&rs), "{which:?}");
            assert_eq!(rs[0].lhs, "1");
        }
    }

    #[test]
    fn pfaff_saalschutz_coefficients() {
        // c = ab/q collapses a_n to (a, b; q)_n / (q, ab/q; q)_n.
        let (a, b, q) = (rat(2, 7), rat(-3, 5), rat(1, 2));
        let c = a.clone() * &b / &q;
        let an = cayley_orr_an(CayleyOrr::A, &a, &b, &c, &q, 8).unwrap();
        for (n, v) in an.iter().enumerate() {
            let want = qpoch(&a, &q, n) * &qpoch(&b, &q, n) / &(qpoch(&q, &q, n) * &qpoch(&c, &q, n));
            assert_eq!(v, &want, "n={n}");
        }
    }
}
