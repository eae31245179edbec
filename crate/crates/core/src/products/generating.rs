//! The Ismail–Wilson product generating function for Askey–Wilson
//! polynomials, its extension by an extra parameter `u` to a triple sum, the
//! quadruple-sum evaluation at `u = t`, and the `w = d` reduction to a q-Appell
//! function.

use rayon::prelude::*;

use crate::askey_wilson::{aw_hermite_degenerate, eval_aw, AWParams, AwSequence, Rep};
use crate::error::{Error, Result};
use crate::qkernel::{qpoch, qpoch_infinite_list_exact, Param};
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::series::{eval_phi_nonterminating, eval_qappell_phi1, SeriesSpec, SAFETY_WINDOW};

use super::power_series::PowerSeriesTrunc;
use super::{sum_adaptive, ProductOptions};

type X = ExactScalar;

fn params(pairs: &[(&str, &X)]) -> ParamMap {
    pairs.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

fn two_phi_one<S: Scalar>(u1: S, u2: S, l: S, q: &S) -> SeriesSpec<S> {
    SeriesSpec::plain(&[u1, u2], &[l], q, &q.one_like())
}

/// `p_n`, preferring the representation that tolerates tiny `a` and `c`;
/// the convolution form takes over at a zero parameter or a pole.
fn aw_value<S: Scalar>(p: &AWParams<S>) -> Result<S> {
    match eval_aw(p, Rep::R3) {
        Err(Error::PoleError { .. }) | Err(Error::DomainError(_)) => eval_aw(p, Rep::Conv),
        other => other,
    }
}

/// Compares the `t^n` coefficients of
/// `2φ1(aw, bw; ab; q, t/w) · 2φ1(c/w, d/w; cd; q, tw)` with
/// `p_n(x; a, b, c, d | q) / (q, ab, cd; q)_n` for `n <= n_max`.
///
/// The polynomial side uses the balanced `4φ3` form, or the continuous
/// q-Hermite value when `a = b = c = d = 0`.
#[allow(clippy::too_many_arguments)]
pub fn awgf_coefficient_check(a: &X, b: &X, c: &X, d: &X, w: &X, q: &X, n_max: usize) -> Result<Vec<VerificationReport>> {
    if w.is_zero() || q.is_zero() {
        return Err(Error::DomainError("w and q must be nonzero".into()));
    }
    let (ab, cd) = (a.clone() * b, c.clone() * d);
    for n in 1..=n_max {
        for (x, name) in [(q, "q"), (&ab, "ab"), (&cd, "cd")] {
            if qpoch(x, q, n).is_zero() {
                return Err(Error::pole(n, format!("({name};q)_{n} vanishes")));
            }
        }
    }
    let left = two_phi_one(a.clone() * w, b.clone() * w, ab.clone(), q);
    let right = two_phi_one(c.clone() / w, d.clone() / w, cd.clone(), q);
    let zero = q.zero_like();
    let lc = PowerSeriesTrunc::new(left.coefficients(n_max)?, n_max, &zero).substitute(&w.inv(), 1);
    let rc = PowerSeriesTrunc::new(right.coefficients(n_max)?, n_max, &zero).substitute(w, 1);
    let prod = &lc * &rc;
    let hermite = [a, b, c, d].iter().all(|x| x.is_zero());
    let pm = params(&[("a", a), ("b", b), ("c", c), ("d", d), ("w", w), ("q", q)]);
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let p = AWParams { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), q: q.clone(), w: w.clone(), n };
        let pn = if hermite {
            aw_hermite_degenerate(w, q, n)?
        } else if [a, b, c, d].iter().any(|x| x.is_zero()) {
            eval_aw(&p, Rep::Conv)?
        } else {
            eval_aw(&p, Rep::R1)?
        };
        let rhs = pn / &(qpoch(q, q, n) * &qpoch(&ab, q, n) * &qpoch(&cd, q, n));
        out.push(VerificationReport::exact("AWGF", Some(n as i64), &pm, prod.coeff(n), &rhs));
    }
    Ok(out)
}

fn lt(x: &X, y: &X) -> bool {
    x.norm_sqr() < y.norm_sqr()
}

/// `|t| < min(|w|, 1/|w|)`.
fn inside_annulus(t: &X, w: &X) -> bool {
    lt(t, w) && lt(&(t.clone() * w), &X::from_i64(1))
}

/// Value form of the generating function at `t`.
pub(super) fn awgf_value(p: &ParamMap, opts: &ProductOptions) -> Result<VerificationReport> {
    let g = |k: &str| p[k].clone();
    let (q, a, b, c, d, w, t) = (g("q"), g("a"), g("b"), g("c"), g("d"), g("w"), g("t"));
    if !inside_annulus(&t, &w) {
        return Err(Error::DivergenceError("|t| < min(|w|, 1/|w|) required".into()));
    }
    let prec = opts.prec;
    let ap = |x: &X| x.to_approx(prec);
    let (ab, cd) = (a.clone() * &b, c.clone() * &d);
    let f1 = two_phi_one(a.clone() * &w, b.clone() * &w, ab.clone(), &q).to_approx(prec);
    let f2 = two_phi_one(c.clone() / &w, d.clone() / &w, cd.clone(), &q).to_approx(prec);
    let eps = opts.eps / 16.0;
    let (l1, c1) = eval_phi_nonterminating(&f1.with_z(ap(&(t.clone() / &w))), eps)?;
    let (l2, c2) = eval_phi_nonterminating(&f2.with_z(ap(&(t.clone() * &w))), eps)?;
    let lhs = l1 * &l2;
    let (qa, aa, ba, ca, da, wa, ta) = (ap(&q), ap(&a), ap(&b), ap(&c), ap(&d), ap(&w), ap(&t));
    let (aba, cda) = (ap(&ab), ap(&cd));
    let mut norm = qa.one_like();
    let mut tn = qa.one_like();
    let (rhs, terms) = sum_adaptive(
        |n| {
            if n > 0 {
                let k = qa.powi(n as i64 - 1);
                let one = qa.one_like();
                norm = norm.clone()
                    * &(one.clone() - &(k.clone() * &qa))
                    * &(one.clone() - &(k.clone() * &aba))
                    * &(one - &(k * &cda));
                tn = tn.clone() * &ta;
            }
            let pn = aw_value(&AWParams { a: aa.clone(), b: ba.clone(), c: ca.clone(), d: da.clone(), q: qa.clone(), w: wa.clone(), n })?;
            Ok(pn * &tn / &norm)
        },
        eps,
    )?;
    let pm = params(&[("q", &q), ("a", &a), ("b", &b), ("c", &c), ("d", &d), ("w", &w), ("t", &t)]);
    Ok(VerificationReport::approx("AWGF", None, &pm, &lhs, &rhs, opts.eps).with_terms(c1.terms_used + c2.terms_used + terms))
}

/// Parameters of the triple-sum identity; `u = 0` recovers the generating
/// function and `u = t` the quadruple summation.
#[derive(Clone, Debug)]
pub struct TripleSumParams {
    pub u: X,
    pub w: X,
    pub t: X,
    pub a: X,
    pub b: X,
    pub c: X,
    pub d: X,
    pub q: X,
}

impl TripleSumParams {
    pub fn from_map(p: &ParamMap) -> Result<Self> {
        let g = |k: &str| p.get(k).cloned().ok_or_else(|| Error::MissingParameter(k.to_string()));
        Ok(Self { u: g("u")?, w: g("w")?, t: g("t")?, a: g("a")?, b: g("b")?, c: g("c")?, d: g("d")?, q: g("q")? })
    }

    fn map(&self, with_u: bool) -> ParamMap {
        let mut v = vec![("w", &self.w), ("t", &self.t), ("a", &self.a), ("b", &self.b), ("c", &self.c), ("d", &self.d), ("q", &self.q)];
        if with_u {
            v.push(("u", &self.u));
        }
        params(&v)
    }
}

/// Per-index truncation depths of a multiple sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Depths {
    pub n: usize,
    pub k: usize,
    pub l: usize,
}

impl Depths {
    fn note(&self) -> String {
        format!("depths n<{} k<{} l<{}", self.n, self.k, self.l)
    }
}

fn check_common(p: &TripleSumParams) -> Result<()> {
    if !p.q.in_unit_disk() || p.q.is_zero() {
        return Err(Error::DivergenceError("0 < |q| < 1 required".into()));
    }
    if p.a.is_zero() || p.c.is_zero() || p.w.is_zero() {
        return Err(Error::DomainError("a, c and w must be nonzero".into()));
    }
    if !inside_annulus(&p.t, &p.w) {
        return Err(Error::DivergenceError("|t| < min(|w|, 1/|w|) required".into()));
    }
    Ok(())
}

/// Row weights `u^k (a w^±; q)_k / (a^k (q, ab; q)_k)` for `k = 0, 1, ...`.
struct RowWeights {
    ratio_base: ApproxScalar,
    a: ApproxScalar,
    w: ApproxScalar,
    ab: ApproxScalar,
    q: ApproxScalar,
    cur: ApproxScalar,
    qk: ApproxScalar,
}

impl RowWeights {
    fn new(u: &ApproxScalar, a: &ApproxScalar, b: &ApproxScalar, w: &ApproxScalar, q: &ApproxScalar) -> Self {
        Self {
            ratio_base: u.clone() / a,
            a: a.clone(),
            w: w.clone(),
            ab: a.clone() * b,
            q: q.clone(),
            cur: q.one_like(),
            qk: q.one_like(),
        }
    }

    /// Current weight, then advance to the next index.
    fn next(&mut self) -> Result<ApproxScalar> {
        let out = self.cur.clone();
        let one = self.q.one_like();
        let aqk = self.a.clone() * &self.qk;
        let num = (one.clone() - &(aqk.clone() * &self.w)) * &(one.clone() - &(aqk / &self.w)) * &self.ratio_base;
        let den = (one.clone() - &(self.qk.clone() * &self.q)) * &(one - &(self.ab.clone() * &self.qk));
        if den.is_zero() {
            return Err(Error::pole(0, "(q, ab; q)_k vanishes"));
        }
        self.cur = self.cur.clone() * &num / &den;
        self.qk = self.qk.clone() * &self.q;
        Ok(out)
    }
}

/// Sum of `t^n p_n(x; q^k a, b, q^l c, d | q) / (q, q^k ab, q^l cd; q)_n`.
fn inner_n(p: &[ApproxScalar; 7], k: usize, l: usize, eps: f64) -> Result<(ApproxScalar, usize)> {
    let [q, a, b, c, d, w, t] = p;
    let ak = a.clone() * &q.powi(k as i64);
    let cl = c.clone() * &q.powi(l as i64);
    let (abk, cdl) = (ak.clone() * b, cl.clone() * d);
    let one = q.one_like();
    let mut norm = one.clone();
    let mut tn = one.clone();
    let mut qn = one.clone();
    let mut seq = AwSequence::new(&ak, b, &cl, d, q, w)?;
    sum_adaptive(
        |n| {
            if n > 0 {
                norm = norm.clone()
                    * &(one.clone() - &(qn.clone() * q))
                    * &(one.clone() - &(qn.clone() * &abk))
                    * &(one.clone() - &(qn.clone() * &cdl));
                qn = qn.clone() * q;
                tn = tn.clone() * t;
            }
            Ok(seq.next_value()? * &tn / &norm)
        },
        eps,
    )
}

/// Rows are evaluated in parallel batches; truncation is decided by
/// scanning the batch in index order, so the result is schedule-independent.
fn sum_rows(eps: f64, row: impl Fn(usize) -> Result<(ApproxScalar, usize)> + Sync, like: &ApproxScalar) -> Result<(ApproxScalar, usize, usize)> {
    let batch = SAFETY_WINDOW;
    let mut sum = like.zero_like();
    let mut quiet = 0;
    let mut inner_max = 0;
    for start in (0..).step_by(batch) {
        if start > 4000 {
            return Err(Error::NoConvergence("row index exceeded 4000".into()));
        }
        let rows: Result<Vec<_>> = (start..start + batch).into_par_iter().map(&row).collect();
        for (i, (v, depth)) in rows?.into_iter().enumerate() {
            inner_max = inner_max.max(depth);
            sum = sum + &v;
            let scale = sum.abs_f64().max(1.0);
            quiet = if v.abs_f64() <= eps * scale { quiet + 1 } else { 0 };
            if quiet >= SAFETY_WINDOW {
                return Ok((sum, start + i + 1, inner_max));
            }
        }
    }
    unreachable!()
}

/// Prefactor `(u/a, u/c; q)_∞ / (u w^±; q)_∞`.
fn triple_prefactor(p: &TripleSumParams, prec: u32, eps: f64) -> Result<ApproxScalar> {
    let num = [Param::Plain(p.u.clone() / &p.a), Param::Plain(p.u.clone() / &p.c)];
    let (n, _) = qpoch_infinite_list_exact(&num, &p.q, prec, eps)?;
    let (d, _) = qpoch_infinite_list_exact(&[Param::ScaledPm { a: p.u.clone(), w: p.w.clone() }], &p.q, prec, eps)?;
    if d.is_zero() {
        return Err(Error::pole(0, "(u w^±; q)_∞ vanishes"));
    }
    Ok(n / &d)
}

/// The triple sum, with per-index depths.
pub(super) fn triple_sum_rhs(p: &TripleSumParams, prec: u32, eps: f64) -> Result<(ApproxScalar, Depths)> {
    let ap = |x: &X| x.to_approx(prec);
    let pa = [ap(&p.q), ap(&p.a), ap(&p.b), ap(&p.c), ap(&p.d), ap(&p.w), ap(&p.t)];
    let ua = ap(&p.u);
    let inner_eps = eps / 64.0;
    // Row weights are cheap; precompute enough of them sequentially.
    let weights = |x: &ApproxScalar, y: &ApproxScalar, w: &ApproxScalar, count: usize| -> Result<Vec<ApproxScalar>> {
        let mut rw = RowWeights::new(&ua, x, y, w, &pa[0]);
        (0..count).map(|_| rw.next()).collect()
    };
    let cap = 4096;
    let wk = weights(&pa[1], &pa[2], &pa[5], cap)?;
    let wl = weights(&pa[3], &pa[4], &pa[5].inv(), cap)?;
    let depth_l = std::sync::atomic::AtomicUsize::new(0);
    let (sum, dk, dn) = sum_rows(
        inner_eps,
        |k| {
            let (row, dl, dn) = sum_rows(
                inner_eps,
                |l| {
                    let weight = wk[k].clone() * &wl[l];
                    if weight.is_zero() {
                        return Ok((weight, 0));
                    }
                    let (v, dn) = inner_n(&pa, k, l, inner_eps)?;
                    Ok((v * &weight, dn))
                },
                &pa[0],
            )?;
            depth_l.fetch_max(dl, std::sync::atomic::Ordering::Relaxed);
            Ok((row, dn))
        },
        &pa[0],
    )?;
    let pre = triple_prefactor(p, prec, eps / 4.0)?;
    let depths = Depths { n: dn, k: dk, l: depth_l.into_inner() };
    Ok((pre * &sum, depths))
}

/// Product of the two `3φ2` on the left of the triple-sum identity.
fn triple_lhs(p: &TripleSumParams, prec: u32, eps: f64) -> Result<(ApproxScalar, usize)> {
    let x = |v: X| v.to_approx(prec);
    let q = x(p.q.clone());
    let ut = if p.t.is_zero() { X::from_i64(0) } else { p.u.clone() / &p.t };
    let first = SeriesSpec::plain(
        &[x(ut.clone()), x(p.a.clone() * &p.w), x(p.b.clone() * &p.w)],
        &[x(p.a.clone() * &p.b), x(p.u.clone() * &p.w)],
        &q,
        &x(p.t.clone() / &p.w),
    );
    let second = SeriesSpec::plain(
        &[x(ut), x(p.c.clone() / &p.w), x(p.d.clone() / &p.w)],
        &[x(p.c.clone() * &p.d), x(p.u.clone() / &p.w)],
        &q,
        &x(p.t.clone() * &p.w),
    );
    let (v1, c1) = eval_phi_nonterminating(&first, eps)?;
    let (v2, c2) = eval_phi_nonterminating(&second, eps)?;
    Ok((v1 * &v2, c1.terms_used + c2.terms_used))
}

/// Product of two `3φ2` against the prefactored triple sum over `n, k, l`
/// whose summand carries `p_n(x; q^k a, b, q^l c, d | q)`.
pub fn triple_sum_32pf(p: &TripleSumParams, opts: &ProductOptions) -> Result<VerificationReport> {
    check_common(p)?;
    if !(lt(&p.u, &p.a) && lt(&p.u, &p.c)) {
        return Err(Error::DivergenceError("|u| < min(|a|, |c|) required".into()));
    }
    if p.t.is_zero() && !p.u.is_zero() {
        return Err(Error::DomainError("t = 0 makes u/t undefined".into()));
    }
    let (lhs, terms) = triple_lhs(p, opts.prec, opts.eps / 16.0)?;
    let (rhs, depths) = triple_sum_rhs(p, opts.prec, opts.eps)?;
    Ok(VerificationReport::approx("TRIPLE_32PF", None, &p.map(true), &lhs, &rhs, opts.eps)
        .with_terms(terms)
        .with_note(depths.note()))
}

/// `Σ_k u^k (a w^±)_k / (a^k (q, ab)_k) · 2φ1(q^k a w, b w; q^k ab; q, t/w)`.
fn half_quadruple(
    u: &ApproxScalar,
    a: &ApproxScalar,
    b: &ApproxScalar,
    w: &ApproxScalar,
    t: &ApproxScalar,
    q: &ApproxScalar,
    eps: f64,
) -> Result<(ApproxScalar, usize)> {
    let mut rw = RowWeights::new(u, a, b, w, q);
    let mut qk = q.one_like();
    let z = t.clone() / w;
    sum_adaptive(
        |_| {
            let weight = rw.next()?;
            let ak = a.clone() * &qk;
            qk = qk.clone() * q;
            if weight.is_zero() {
                return Ok(weight);
            }
            let spec = SeriesSpec::plain(&[ak.clone() * w, b.clone() * w], &[ak * b], q, &z);
            let (v, _) = eval_phi_nonterminating(&spec, eps)?;
            Ok(weight * &v)
        },
        eps,
    )
}

/// The quadruple sum at `u = t`, with the polynomial expanded by the
/// convolution formula. The `(n, k)` and `(m, l)` index pairs separate, so
/// the sum is the product of two double sums.
pub(super) fn quadruple_sum(p: &TripleSumParams, prec: u32, eps: f64) -> Result<(ApproxScalar, usize)> {
    let ap = |x: &X| x.to_approx(prec);
    let (q, a, b, c, d, w, t) = (ap(&p.q), ap(&p.a), ap(&p.b), ap(&p.c), ap(&p.d), ap(&p.w), ap(&p.t));
    let (l, dk) = half_quadruple(&t, &a, &b, &w, &t, &q, eps / 8.0)?;
    let (r, dl) = half_quadruple(&t, &c, &d, &w.inv(), &t, &q, eps / 8.0)?;
    Ok((l * &r, dk.max(dl)))
}

/// `(t w^±; q)_∞ / (t/a, t/c; q)_∞`.
fn quadruple_closed_form(p: &TripleSumParams, prec: u32, eps: f64) -> Result<ApproxScalar> {
    let (n, _) = qpoch_infinite_list_exact(&[Param::ScaledPm { a: p.t.clone(), w: p.w.clone() }], &p.q, prec, eps)?;
    let den = [Param::Plain(p.t.clone() / &p.a), Param::Plain(p.t.clone() / &p.c)];
    let (d, _) = qpoch_infinite_list_exact(&den, &p.q, prec, eps)?;
    if d.is_zero() {
        return Err(Error::pole(0, "(t/a, t/c; q)_∞ vanishes"));
    }
    Ok(n / &d)
}

/// The quadruple sum against its closed form; `p.u` is ignored.
pub fn quad_cor13(p: &TripleSumParams, opts: &ProductOptions) -> Result<VerificationReport> {
    check_common(p)?;
    if !(lt(&p.t, &p.a) && lt(&p.t, &p.c)) {
        return Err(Error::DivergenceError("|t| < min(|a|, |c|) required".into()));
    }
    let (lhs, depth) = quadruple_sum(p, opts.prec, opts.eps)?;
    let rhs = quadruple_closed_form(p, opts.prec, opts.eps / 8.0)?;
    Ok(VerificationReport::approx("QUAD_COR13", None, &p.map(false), &lhs, &rhs, opts.eps).with_terms(depth))
}

/// The triple sum at `u = t` against the quadruple sum.
pub fn triple_at_u_equals_t(p: &TripleSumParams, opts: &ProductOptions) -> Result<VerificationReport> {
    let pt = TripleSumParams { u: p.t.clone(), ..p.clone() };
    check_common(&pt)?;
    if !(lt(&pt.u, &pt.a) && lt(&pt.u, &pt.c)) {
        return Err(Error::DivergenceError("|t| < min(|a|, |c|) required".into()));
    }
    // The prefactor is nonzero inside the region, so dividing it out keeps
    // the comparison relative.
    let (triple, depths) = triple_sum_rhs(&pt, opts.prec, opts.eps)?;
    let triple = triple / &triple_prefactor(&pt, opts.prec, opts.eps / 8.0)?;
    let (quad, _) = quadruple_sum(&pt, opts.prec, opts.eps)?;
    Ok(VerificationReport::approx("TRIPLE_32PF", None, &pt.map(true), &triple, &quad, opts.eps)
        .with_note(format!("u = t against the quadruple sum; {}", depths.note())))
}

/// `3φ2(u/t, ad, bd; ab, du; q, t/d) = (u/a)_∞/(du)_∞ Φ1(ad; bd, a/d; ab; q; t/d, u/a)`.
pub(super) fn wd_appell_value(p: &ParamMap, opts: &ProductOptions) -> Result<VerificationReport> {
    let g = |k: &str| p[k].clone();
    let (q, a, b, d, u, t) = (g("q"), g("a"), g("b"), g("d"), g("u"), g("t"));
    if !lt(&t, &d) || !lt(&u, &a) || !q.in_unit_disk() {
        return Err(Error::DivergenceError("|t/d| < 1, |u/a| < 1 and |q| < 1 required".into()));
    }
    let prec = opts.prec;
    let ap = |x: X| x.to_approx(prec);
    let eps = opts.eps / 16.0;
    let (aq, x, y) = (ap(q.clone()), ap(t.clone() / &d), ap(u.clone() / &a));
    let lhs_spec = SeriesSpec::plain(
        &[ap(u.clone() / &t), ap(a.clone() * &d), ap(b.clone() * &d)],
        &[ap(a.clone() * &b), ap(d.clone() * &u)],
        &aq,
        &x,
    );
    let (lhs, c1) = eval_phi_nonterminating(&lhs_spec, eps)?;
    let (phi1, c2) = eval_qappell_phi1(&ap(a.clone() * &d), &ap(b.clone() * &d), &ap(a.clone() / &d), &ap(a.clone() * &b), &x, &y, &aq, eps)?;
    let (num, _) = qpoch_infinite_list_exact(&[Param::Plain(u.clone() / &a)], &q, prec, eps)?;
    let (den, _) = qpoch_infinite_list_exact(&[Param::Plain(d.clone() * &u)], &q, prec, eps)?;
    if den.is_zero() {
        return Err(Error::pole(0, "(du; q)_∞ vanishes"));
    }
    let rhs = num / &den * &phi1;
    let pm = params(&[("q", &q), ("a", &a), ("b", &b), ("d", &d), ("u", &u), ("t", &t)]);
    Ok(VerificationReport::approx("WD_APPELL", None, &pm, &lhs, &rhs, opts.eps).with_terms(c1.terms_used + c2.terms_used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn awgf_coefficients_exact() {
        let (a, b, c, d) = (rat(1, 3), ExactScalar::gauss(-2, 5, 1, 2), rat(3, 7), rat(-1, 4));
        let rs = awgf_coefficient_check(&a, &b, &c, &d, &rat(2, 3), &rat(1, 2), 10).unwrap();
        assert_eq!(rs.len(), 11);
        assert!(VerificationReport::all_pass(&rs));
        assert_eq!(rs[0].lhs, "1");
    }

    #[test]
    fn awgf_hermite_degeneration() {
        let z = rat(0, 1);
        let (w, q) = (ExactScalar::gauss(1, 2, 1, 3), rat(1, 3));
        let rs = awgf_coefficient_check(&z, &z, &z, &z, &w, &q, 8).unwrap();
        assert!(VerificationReport::all_pass(&rs));
        // Independent oracle: 2x H_n = H_{n+1} + (1 - q^n) H_{n-1}.
        let two_x = w.clone() + &w.inv();
        let h: Vec<_> = (0..=8).map(|n| aw_hermite_degenerate(&w, &q, n).unwrap()).collect();
        for n in 1..8 {
            let rhs = h[n + 1].clone() + &((rat(1, 1) - &q.powi(n as i64)) * &h[n - 1]);
            assert_eq!(two_x.clone() * &h[n], rhs, "n={n}");
        }
    }

    #[test]
    fn awgf_coefficient_symmetry() {
        // (a, b) <-> (c, d) with w -> 1/w leaves every coefficient fixed.
        let (a, b, c, d, w, q) = (rat(1, 3), rat(2, 5), rat(-3, 7), rat(1, 6), rat(3, 4), rat(1, 2));
        let x = awgf_coefficient_check(&a, &b, &c, &d, &w, &q, 6).unwrap();
        let y = awgf_coefficient_check(&c, &d, &a, &b, &w.inv(), &q, 6).unwrap();
        for (r, s) in x.iter().zip(&y) {
            assert_eq!(r.lhs, s.lhs);
        }
    }
}
