//! The terminating summation and transformation formulas.
//!
//! Each entry is a pair of functions: the left side as a terminating series
//! and the right side as a closed form (or a second terminating series).
//! `±√x` parameter pairs are carried as [`Param::SqrtPm`], so no record needs
//! square roots of its inputs.

use crate::error::{Error, Result};
use crate::qkernel::{qpoch, qpoch_infinite_list_exact, Param};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::series::{sum_terminating, BalanceClass, SeriesSpec};

use super::{Args, IdentityRecord, RhsKind, Side};

type X = ExactScalar;

fn int(v: i64) -> X {
    X::from_i64(v)
}

fn p(x: X) -> Param<X> {
    Param::Plain(x)
}

fn sq(x: X) -> Param<X> {
    Param::SqrtPm(x)
}

fn pm(x: X) -> Param<X> {
    Param::PlusMinus(x)
}

/// A quotient built factor by factor, so a vanishing denominator is reported
/// instead of dividing by zero.
struct Frac {
    num: X,
    den: X,
}

impl Frac {
    fn new(x: X) -> Self {
        Frac { num: x, den: int(1) }
    }

    fn mul(mut self, x: &X) -> Self {
        self.num = self.num * x;
        self
    }

    fn div(mut self, x: &X) -> Self {
        self.den = self.den * x;
        self
    }

    fn up(self, xs: &[X], q: &X, n: usize) -> Self {
        xs.iter().fold(self, |f, x| f.mul(&qpoch(x, q, n)))
    }

    fn down(self, xs: &[X], q: &X, n: usize) -> Self {
        xs.iter().fold(self, |f, x| f.div(&qpoch(x, q, n)))
    }

    fn done(self) -> Result<X> {
        if self.den.is_zero() {
            return Err(Error::pole(0, "closed form has a vanishing denominator"));
        }
        Ok(self.num / &self.den)
    }
}

fn one_minus(x: X) -> X {
    int(1) - &x
}

/// `4phi3(q^{-n}, up...; lo...; q, q)` terminating at `n`.
fn phi(q: &X, n: usize, up: Vec<Param<X>>, lo: Vec<Param<X>>) -> SeriesSpec<X> {
    let mut upper = vec![p(q.powi(-(n as i64)))];
    upper.extend(up);
    SeriesSpec::terminating(upper, lo, q.clone(), q.clone(), n)
}

fn sum(spec: &SeriesSpec<X>) -> Result<X> {
    let crate::series::Termination::At(n) = spec.termination else {
        return Err(Error::DomainError("series must terminate".into()));
    };
    sum_terminating(spec, n)
}

fn floor_half(n: usize) -> (usize, usize) {
    (n.div_ceil(2), n / 2)
}

fn sign(n: usize) -> X {
    int(if n % 2 == 0 { 1 } else { -1 })
}

/// `(num lists) / (den lists)` of infinite products, each list in its own base.
fn infinite_ratio(num: &[(&[X], &X)], den: &[(&[X], &X)], prec: u32, eps: f64) -> Result<ApproxScalar> {
    let share = eps / (2.0 * (num.len() + den.len()) as f64);
    let eval = |xs: &[X], q: &X| {
        let params: Vec<_> = xs.iter().cloned().map(Param::Plain).collect();
        qpoch_infinite_list_exact(&params, q, prec, share)
    };
    let mut acc = ApproxScalar::from_f64(1.0, 0.0, prec);
    for (xs, q) in den {
        let (v, cert) = eval(xs, q)?;
        if cert.zero_factor {
            return Err(Error::pole(cert.terms_used, "infinite product in the denominator vanishes"));
        }
        acc = acc / &v;
    }
    for (xs, q) in num {
        let (v, cert) = eval(xs, q)?;
        if cert.zero_factor {
            return Ok(ApproxScalar::from_f64(0.0, 0.0, prec));
        }
        acc = acc * &v;
    }
    Ok(acc)
}

// Andrews' q-analogue of Watson's sum, in its terminating form.
fn andrews_watson_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let qn = q.powi(n as i64);
    Ok(phi(&q, n, vec![p(qn * &aa), sq(c.clone())], vec![sq(q.clone() * &aa), p(c)]))
}

fn andrews_watson_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    if n % 2 == 1 {
        return Ok(Side::Exact(int(0)));
    }
    let (m, q2) = (n / 2, q.clone() * &q);
    let v = Frac::new(c.powi(m as i64))
        .up(&[q.clone(), q.clone() * &aa / &c], &q2, m)
        .down(&[q.clone() * &aa, q.clone() * &c], &q2, m)
        .done()?;
    Ok(Side::Exact(v))
}

// Gasper and Rahman's nonterminating Watson analogue, specialized to terminate.
fn grw_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, b, c] = a.take(["q", "b", "c"])?;
    let q2 = q.clone() * &q;
    let q1n = q.powi(1 - n as i64);
    let upper = vec![
        p(q2.powi(-(n as i64))),
        p(c.clone()),
        p(-(q1n.clone() / &b)),
        p(q1n.clone() * &b / &c),
    ];
    let lower = vec![p(q.powi(2 - 2 * n as i64) / &c), p(-(q1n.clone() * &b)), p(q1n * &c / &b)];
    Ok(SeriesSpec::terminating(upper, lower, q2.clone(), q2, n))
}

fn grw_rhs(a: &Args, n: usize, prec: u32, eps: f64) -> Result<Side> {
    let [q, b, c] = a.take(["q", "b", "c"])?;
    let ni = n as i64;
    let (q2, q4) = (q.powi(2), q.powi(4));
    let (b2, c2) = (b.clone() * &b, c.clone() * &c);
    let num2 = [q.powi(1 - ni) * &b, c2.clone(), q.powi(2 * ni) * &c, q.powi(1 + ni) * &c / &b];
    let num4 = [q.powi(2 - 2 * ni), q2.clone() * &b2, q.powi(2 * ni + 2) * &c2, q2.clone() * &c2 / &b2];
    let den2 = [q.powi(ni + 1) * &b, c.clone(), q.powi(2 * ni) * &c2, q.powi(1 - ni) * &c / &b];
    let den4 = [q2.clone(), q.powi(2 - 2 * ni) * &b2, q2.clone() * &c2, q.powi(2 * ni + 2) * &c2 / &b2];
    let v = infinite_ratio(&[(&num2, &q2), (&num4, &q4)], &[(&den2, &q2), (&den4, &q4)], prec, eps)?;
    Ok(Side::Approx(v))
}

// Bailey (1941): balanced 4phi3 vanishing for odd n.
fn bailey41_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let ab = aa.clone() * &b;
    let q1n = q.powi(1 - n as i64);
    Ok(phi(
        &q,
        n,
        vec![p(-(q1n.clone() / &ab)), p(aa.clone()), p(b.clone())],
        vec![p(-ab), p(q1n.clone() / &aa), p(q1n / &b)],
    ))
}

fn bailey41_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    if n % 2 == 1 {
        return Ok(Side::Exact(int(0)));
    }
    let (m, q2) = (n / 2, q.clone() * &q);
    let (a2, b2) = (aa.clone() * &aa, b.clone() * &b);
    let v = Frac::new(int(1))
        .up(&[q.clone(), a2.clone(), b2.clone()], &q2, m)
        .up(&[aa.clone() * &b], &q, n)
        .down(&[aa.clone(), b.clone()], &q, n)
        .down(&[a2 * &b2], &q2, m)
        .done()?;
    Ok(Side::Exact(v))
}

// Andrews' q-analogue of Whipple's sum: infinite-product form.
fn whipple_e_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, c, e] = a.take(["q", "c", "e"])?;
    Ok(phi(
        &q,
        n,
        vec![p(q.powi(n as i64 + 1)), pm(c.clone())],
        vec![p(-q.clone()), p(e.clone()), p(q.clone() * &c * &c / &e)],
    ))
}

fn whipple_e_rhs(a: &Args, n: usize, prec: u32, eps: f64) -> Result<Side> {
    let [q, c, e] = a.take(["q", "c", "e"])?;
    let ni = n as i64;
    let (q2, c2) = (q.clone() * &q, c.clone() * &c);
    let num = [q.powi(-ni) * &e, q.powi(ni + 1) * &e, q.powi(1 - ni) * &c2 / &e, q.powi(ni + 2) * &c2 / &e];
    let den = [e.clone(), q.clone() * &c2 / &e];
    let v = infinite_ratio(&[(&num, &q2)], &[(&den, &q)], prec, eps)?;
    let pre = q.powi(ni * (ni + 1) / 2).to_approx(prec);
    Ok(Side::Approx(pre * &v))
}

// The same sum, compact parity-split form.
fn whipple_c_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    Ok(phi(
        &q,
        n,
        vec![p(q.powi(n as i64 + 1)), pm(aa.clone())],
        vec![p(-q.clone()), p(b.clone()), p(q.clone() * &aa * &aa / &b)],
    ))
}

pub(super) fn whipple_c_value(q: &X, aa: &X, b: &X, n: usize) -> Result<X> {
    let q2 = q.clone() * q;
    let a2 = aa.clone() * aa;
    if n % 2 == 0 {
        let m = n / 2;
        Frac::new(aa.powi(n as i64))
            .up(&[q2.clone() / b, q.clone() * b / &a2], &q2, m)
            .down(&[q.clone() * b, q2.clone() * &a2 / b], &q2, m)
            .done()
    } else {
        let m = (n - 1) / 2;
        let q3 = q2.clone() * q;
        Frac::new(q.clone() * &one_minus(b.clone() / q) * &one_minus(a2.clone() / b) * &(-aa.clone()).powi(n as i64 - 1))
            .div(&(one_minus(b.clone()) * &one_minus(q.clone() * &a2 / b)))
            .up(&[q3.clone() / b, q2.clone() * b / &a2], &q2, m)
            .down(&[q2.clone() * b, q3 * &a2 / b], &q2, m)
            .done()
    }
}

fn whipple_c_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    Ok(Side::Exact(whipple_c_value(&q, &aa, &b, n)?))
}

// First q-analogue of Bailey's 4F3(1) sum, base q^2.
fn qbailey1_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let q2 = q.clone() * &q;
    Ok(phi(
        &q2,
        n,
        vec![p(q2.powi(n as i64) * &b * &b), p(aa.clone()), p(q.clone() * &aa)],
        vec![p(b.clone()), p(q.clone() * &b), p(q2.clone() * &aa * &aa)],
    ))
}

fn qbailey1_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let v = Frac::new(aa.powi(n as i64))
        .up(&[-q.clone(), b.clone() / &aa], &q, n)
        .down(&[-(q.clone() * &aa), b.clone()], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

// Second q-analogue of Bailey's 4F3(1) sum.
fn qbailey2_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let q2 = q.clone() * &q;
    Ok(phi(
        &q2,
        n,
        vec![p(q.powi(2 * n as i64 - 2) * &b * &b), p(aa.clone()), p(q.clone() * &aa)],
        vec![p(b.clone()), p(q.clone() * &b), p(aa.clone() * &aa)],
    ))
}

fn qbailey2_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let ni = n as i64;
    let v = Frac::new(aa.powi(ni) * &one_minus(b.clone() * &q.powi(ni - 1)))
        .div(&one_minus(b.clone() * &q.powi(2 * ni - 1)))
        .up(&[-q.clone(), b.clone() / &aa], &q, n)
        .down(&[-aa.clone(), b.clone()], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

// q-Pfaff–Saalschütz in the 3phi2 shape used for reductions.
fn pfaff_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b, c, d] = a.take(["q", "a", "b", "c", "d"])?;
    let qa = q.clone() * &aa;
    Ok(phi(
        &q,
        n,
        vec![p(q.powi(n as i64 + 1) * &aa * &aa / &(b.clone() * &c * &d)), p(d.clone())],
        vec![p(qa.clone() / &b), p(qa / &c)],
    ))
}

fn pfaff_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b, c, d] = a.take(["q", "a", "b", "c", "d"])?;
    let qa = q.clone() * &aa;
    let v = Frac::new(d.powi(n as i64))
        .up(&[qa.clone() / &(b.clone() * &d), qa.clone() / &(c.clone() * &d)], &q, n)
        .down(&[qa.clone() / &b, qa / &c], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

// Gasper–Rahman exercise 2.14(i).
fn gr214_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let a2 = aa.clone() * &aa;
    Ok(phi(
        &q,
        n,
        vec![p(b.clone()), p(a2.clone()), p(q.clone() * &aa)],
        vec![p(b.clone() * &b * &q.powi(1 - n as i64)), p(q.clone() * &a2 / &b), p(aa.clone())],
    ))
}

fn gr214_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let one = int(1);
    let a2 = aa.clone() * &aa;
    let v = Frac::new(one.clone() + &(aa.clone() / &b * &q.powi(n as i64)))
        .div(&(one.clone() + &(aa.clone() / &b)))
        .up(&[a2.clone() / &(b.clone() * &b), one.clone() / &b], &q, n)
        .down(&[q.clone() * &a2 / &b, one / &(b.clone() * &b)], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

// Gasper–Rahman (3.10.9) with a -> a^2.
fn gr3109_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let (qmn, q1n) = (q.powi(-(n as i64)), q.powi(1 - n as i64));
    Ok(phi(
        &q,
        n,
        vec![p(-(b.clone() * &qmn)), p(aa.clone() * &aa), p(q.clone() * &aa)],
        vec![p(aa.clone() * &b * &q1n), p(-(aa.clone() * &q1n)), p(aa.clone())],
    ))
}

fn gr3109_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let ni = n as i64;
    let one = int(1);
    let ab = aa.clone() / &b;
    let v = Frac::new((q.clone() * &aa * &aa).powi(-ni) * &one_minus(ab.clone() * &q.powi(2 * ni)))
        .div(&one_minus(ab * &q.powi(ni)))
        .up(&[q.clone() * &aa / &b, -aa.clone()], &q, n)
        .down(&[one.clone() / &(aa.clone() * &b), -(one / &aa)], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

// Gasper–Rahman (3.10.10) with a -> ab.
fn gr31010_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let ni = n as i64;
    Ok(phi(
        &q,
        n,
        vec![p(-(b.clone() * &q.powi(1 - ni))), p(aa.clone() * &b), p(b.clone())],
        vec![p(b.clone() * &b * &q.powi(1 - ni)), p(-(b.clone() * &q.powi(-ni))), p(q.clone() * &aa)],
    ))
}

fn gr31010_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let ni = n as i64;
    let one = int(1);
    let binv = one.clone() / &b;
    let v = Frac::new((one.clone() + &binv) * &one_minus(aa.clone() / &b * &q.powi(2 * ni)))
        .div(&((one.clone() + &(q.powi(ni) / &b)) * &one_minus(aa.clone() / &b)))
        .up(&[aa.clone() / &b, binv.clone()], &q, n)
        .down(&[aa.clone() * &q, binv.clone() * &binv], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

/// The base-`q²` series that terminates at `⌊n/2⌋`, shared by the
/// Berkovich–Warnaar pair.
fn bw_series(q: &X, n: usize, x: X, y: X, lower0: X, lower1: X, lower2: X) -> SeriesSpec<X> {
    let ni = n as i64;
    let q2 = q.clone() * q;
    SeriesSpec::terminating(
        vec![p(q.powi(-ni)), p(q.powi(1 - ni)), p(x), p(y)],
        vec![p(lower0), p(lower1), p(lower2)],
        q2.clone(),
        q2,
        n / 2,
    )
}

fn bws_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let a2 = aa.clone() * &aa;
    Ok(bw_series(
        &q,
        n,
        a2.clone(),
        a2.clone() / &(b.clone() * &b),
        q.powi(2 - 2 * n as i64),
        a2.clone() / &b,
        q.clone() * &a2 / &b,
    ))
}

fn bws_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b] = a.take(["q", "a", "b"])?;
    let ab = aa.clone() / &b;
    let top = qpoch(&-aa.clone(), &q, n) * &qpoch(&ab, &q, n) + &(qpoch(&aa, &q, n) * &qpoch(&-ab, &q, n));
    let v = Frac::new(top).down(&[int(-1), aa.clone() * &aa / &b], &q, n).done()?;
    Ok(Side::Exact(v))
}

fn bwt_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b, c] = a.take(["q", "a", "b", "c"])?;
    Ok(phi(
        &q,
        n,
        vec![p(b.clone()), pm(c.clone())],
        vec![p(-(q.powi(1 - n as i64) * &b / &aa)), p(aa.clone()), p(c.clone() * &c)],
    ))
}

fn bwt_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b, c] = a.take(["q", "a", "b", "c"])?;
    let (a2, c2) = (aa.clone() * &aa, c.clone() * &c);
    let inner = bw_series(
        &q,
        n,
        a2.clone() / &(b.clone() * &b),
        a2.clone() / &c2,
        q.powi(2 - 2 * n as i64) / &c2,
        a2.clone() / &b,
        q.clone() * &a2 / &b,
    );
    let v = Frac::new(sum(&inner)?)
        .up(&[a2.clone() / &b], &q, n)
        .up(std::slice::from_ref(&c2), &(q.clone() * &q), n)
        .down(&[-(aa.clone() / &b), aa.clone(), c2], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

/// `c^F (q, a/c; q²)_F / (a, qc; q²)_F`, the common factor of the two
/// equivalent quadratic sums.
fn quad_core(q: &X, aa: &X, c: &X, n: usize) -> Frac {
    let (f, _) = floor_half(n);
    let q2 = q.clone() * q;
    Frac::new(c.powi(f as i64)).up(&[q.clone(), aa.clone() / c], &q2, f).down(&[aa.clone(), q.clone() * c], &q2, f)
}

pub(super) fn n2_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    Ok(phi(&q, n, vec![p(q.powi(n as i64) * &aa), sq(c.clone())], vec![p(q.clone() * &c), sq(aa)]))
}

fn n2_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    Ok(Side::Exact(quad_core(&q, &aa, &c, n).done()?))
}

pub(super) fn n1_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let q2 = q.clone() * &q;
    Ok(phi(&q, n, vec![p(q.powi(n as i64) * &aa), sq(q2.clone() * &c)], vec![p(q.clone() * &c), sq(q2 * &aa)]))
}

fn n1_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let v = quad_core(&q, &aa, &c, n)
        .mul(&((-q.clone()).powi(n as i64) * &one_minus(aa.clone())))
        .div(&one_minus(q.powi(2 * n as i64) * &aa))
        .done()?;
    Ok(Side::Exact(v))
}

fn n5_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    Ok(phi(&q, n, vec![p(q.powi(n as i64 + 1) * &aa), sq(c.clone())], vec![p(q.clone() * &q * &c), sq(aa)]))
}

fn n5_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let (f, h) = floor_half(n);
    let ni = n as i64;
    let q2 = q.clone() * &q;
    let branch = if n % 2 == 1 {
        int(1) + &q
    } else {
        let qn1 = q.powi(ni + 1);
        (q.clone() * &c - &(q.powi(ni) * &aa)) * &one_minus(qn1.clone())
            + &(one_minus(qn1.clone() * &aa) * &one_minus(qn1 * &c))
    };
    let v = Frac::new(c.powi(f as i64) * &branch)
        .div(&one_minus(q2.clone() * &c))
        .up(&[q.clone(), aa.clone() / &c], &q2, f)
        .down(std::slice::from_ref(&aa), &q2, (n + 2) / 2)
        .down(&[q2.clone() * &q * &c], &q2, h)
        .done()?;
    Ok(Side::Exact(v))
}

fn n3_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    Ok(phi(&q, n, vec![p(q.powi(n as i64) * &aa), sq(c.clone())], vec![sq(q.clone() * &aa), p(q.clone() * &c)]))
}

fn n3_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let (f, h) = floor_half(n);
    let q2 = q.clone() * &q;
    let v = Frac::new(c.powi(f as i64))
        .up(std::slice::from_ref(&q), &q2, f)
        .up(&[q.clone() * &aa / &c], &q2, h)
        .down(&[q.clone() * &aa], &q2, h)
        .down(&[q.clone() * &c], &q2, f)
        .done()?;
    Ok(Side::Exact(v))
}

fn n4_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let q2 = q.clone() * &q;
    Ok(phi(&q, n, vec![p(q.powi(n as i64) * &aa), sq(c.clone())], vec![sq(q2 * &aa), p(c)]))
}

fn n4_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let (f, h) = floor_half(n);
    let ni = n as i64;
    let q2 = q.clone() * &q;
    let v = Frac::new((q.powi(ni) * &aa).powi(ni) * &(q.powi(-2 * ni) * &c / &(aa.clone() * &aa)).powi(h as i64))
        .mul(&one_minus(aa.clone()))
        .div(&one_minus(aa.clone() * &q.powi(2 * ni)))
        .up(std::slice::from_ref(&q), &q2, f)
        .up(&[q2.clone() * &aa / &c], &q2, h)
        .down(std::slice::from_ref(&aa), &q2, f)
        .down(&[q.clone() * &c], &q2, h)
        .done()?;
    Ok(Side::Exact(v))
}

fn n8_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let q2 = q.clone() * &q;
    Ok(phi(
        &q,
        n,
        vec![p(q.powi(n as i64 - 1) * &aa), sq(q2.clone() * &c)],
        vec![sq(q2 * &aa), p(q.clone() * &c)],
    ))
}

fn n8_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    let (f, h) = floor_half(n);
    let ni = n as i64;
    let q2 = q.clone() * &q;
    let base = (int(1) + &(q.powi(2 * ni - 1) * &aa)) - &(q.powi(ni - 2) * &aa * &(int(1) + &q));
    let branch = if n % 2 == 1 {
        c.clone() * &(int(1) + &(q.powi(2 * ni - 1) * &aa)) - &(q.powi(ni - 2) * &aa * &(int(1) + &q))
    } else {
        base
    };
    let v = Frac::new(sign(n) * &q.powi(ni) * &c.powi(h as i64) * &one_minus(aa.clone()) * &branch)
        .div(&(one_minus(q.powi(2 * ni) * &aa) * &one_minus(q.powi(2 * ni - 2) * &aa)))
        .up(std::slice::from_ref(&q), &q2, f)
        .up(&[aa.clone() / &c], &q2, h)
        .down(std::slice::from_ref(&aa), &q2, h)
        .down(&[q.clone() * &c], &q2, f)
        .done()?;
    Ok(Side::Exact(v))
}

pub(super) fn n7_lhs_at(q: &X, aa: &X, c: &X, n: usize) -> SeriesSpec<X> {
    let q2 = q.clone() * q;
    phi(q, n, vec![p(q.powi(n as i64 - 1) * aa), sq(c.clone())], vec![sq(q2 * aa), p(c.clone())])
}

pub(super) fn n7_value(q: &X, aa: &X, c: &X, n: usize) -> Result<X> {
    let (f, h) = floor_half(n);
    let ni = n as i64;
    let q2 = q.clone() * q;
    let qp = |e: i64| q.powi(e);
    let branch = if n % 2 == 1 {
        qp(ni - 1) * aa * &(int(1) + q) * &one_minus(qp(ni + 1) * aa) * &one_minus(qp(ni - 1) * aa) * &one_minus(qp(ni - 1) * aa / c)
    } else {
        one_minus(qp(ni) * aa)
            * &(qp(2 * ni - 2) * aa * &(aa.clone() - c) * &one_minus(qp(2 * ni) * aa)
                + &((c.clone() - &(qp(ni) * aa)) * &(int(1) + &(qp(2 * ni - 1) * aa)) * &one_minus(qp(ni - 1) * aa)))
    };
    Frac::new(c.powi(f as i64) * &branch)
        .div(&((c.clone() - aa) * &one_minus(qp(2 * ni) * aa) * &one_minus(qp(2 * ni - 2) * aa)))
        .up(std::slice::from_ref(q), &q2, f)
        .up(&[aa.clone() / c], &q2, h)
        .down(&[q2.clone() * aa], &q2, f)
        .down(&[q.clone() * c], &q2, h)
        .done()
}

fn n7_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    Ok(n7_lhs_at(&q, &aa, &c, n))
}

fn n7_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, c] = a.take(["q", "a", "c"])?;
    Ok(Side::Exact(n7_value(&q, &aa, &c, n)?))
}

pub(super) fn n6_lhs_at(q: &X, c: &X, n: usize) -> SeriesSpec<X> {
    let ni = n as i64;
    // ±i q^{3/2-n} squares to -q^{3-2n}.
    phi(q, n, vec![p(-q.powi(-ni)), sq(c.clone())], vec![sq(-q.powi(3 - 2 * ni)), p(c.clone())])
}

pub(super) fn n6_value(q: &X, c: &X, n: usize) -> Result<X> {
    let (f, h) = floor_half(n);
    let ni = n as i64;
    let q2 = q.clone() * q;
    Frac::new(sign(n) * &(int(1) + &q.powi(1 - 2 * ni)))
        .div(&(int(1) + q))
        .up(std::slice::from_ref(q), &q2, f)
        .up(&[-(q.powi(1 + 2 * h as i64) * c)], &q2, h)
        .down(&[q.clone() * c], &q2, h)
        .down(&[-q.powi(1 + 2 * f as i64)], &q2, h)
        .done()
}

fn n6_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, c] = a.take(["q", "c"])?;
    Ok(n6_lhs_at(&q, &c, n))
}

fn n6_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, c] = a.take(["q", "c"])?;
    Ok(Side::Exact(n6_value(&q, &c, n)?))
}

/// Sears' transformation of a balanced terminating `4phi3`; `f` is fixed by
/// the balance condition `def = abc q^{1-n}`.
fn sears_f(q: &X, aa: &X, b: &X, c: &X, d: &X, e: &X, n: usize) -> X {
    aa.clone() * b * c * &q.powi(1 - n as i64) / &(d.clone() * e)
}

fn sears_lhs(a: &Args, n: usize) -> Result<SeriesSpec<X>> {
    let [q, aa, b, c, d, e] = a.take(["q", "a", "b", "c", "d", "e"])?;
    let f = sears_f(&q, &aa, &b, &c, &d, &e, n);
    Ok(phi(&q, n, vec![p(aa), p(b), p(c)], vec![p(d), p(e), p(f)]))
}

fn sears_rhs(a: &Args, n: usize, _: u32, _: f64) -> Result<Side> {
    let [q, aa, b, c, d, e] = a.take(["q", "a", "b", "c", "d", "e"])?;
    let f = sears_f(&q, &aa, &b, &c, &d, &e, n);
    let q1n = q.powi(1 - n as i64);
    let other = phi(
        &q,
        n,
        vec![p(aa.clone()), p(d.clone() / &b), p(d.clone() / &c)],
        vec![p(d.clone()), p(aa.clone() * &q1n / &e), p(aa.clone() * &q1n / &f)],
    );
    let v = Frac::new(sum(&other)? * &aa.powi(n as i64))
        .up(&[e.clone() / &aa, f.clone() / &aa], &q, n)
        .down(&[e, f], &q, n)
        .done()?;
    Ok(Side::Exact(v))
}

macro_rules! record {
    ($id:expr, $params:expr, $bal:expr, $kind:expr, $min_n:expr, $lhs:expr, $rhs:expr, $desc:expr) => {
        IdentityRecord { id: $id, params: $params, balance: $bal, kind: $kind, min_n: $min_n, lhs: $lhs, rhs: $rhs, description: $desc }
    };
}

const QAC: &[&str] = &["q", "a", "c"];
const QAB: &[&str] = &["q", "a", "b"];

pub(super) fn records() -> Vec<IdentityRecord> {
    use BalanceClass::Balanced as B;
    use RhsKind::{Approx, Exact};
    vec![
        record!("T_ANDREWS_WATSON", QAC, B(1), Exact, 0, andrews_watson_lhs, andrews_watson_rhs,
            "Andrews' q-analogue of Watson's 3F2(1) sum, terminating; zero for odd n"),
        record!("T_GASPER_RAHMAN_WATSON", &["q", "b", "c"], B(1), Approx, 0, grw_lhs, grw_rhs,
            "Gasper-Rahman nonterminating Watson analogue at a terminating point; infinite-product right side"),
        record!("T_BAILEY41", QAB, B(1), Exact, 0, bailey41_lhs, bailey41_rhs,
            "Bailey's 1941 balanced 4phi3 sum; zero for odd n"),
        record!("T_ANDREWS_WHIPPLE_E", &["q", "c", "e"], B(1), Approx, 0, whipple_e_lhs, whipple_e_rhs,
            "Andrews' q-analogue of Whipple's 3F2(1) sum, infinite-product form"),
        record!("T_ANDREWS_WHIPPLE_C", QAB, B(1), Exact, 0, whipple_c_lhs, whipple_c_rhs,
            "Andrews' q-analogue of Whipple's 3F2(1) sum, parity-split finite form"),
        record!("T_QBAILEY_1", QAB, B(1), Exact, 0, qbailey1_lhs, qbailey1_rhs,
            "first q-analogue of Bailey's 4F3(1) sum, base q^2"),
        record!("T_QBAILEY_2", QAB, B(1), Exact, 0, qbailey2_lhs, qbailey2_rhs,
            "second q-analogue of Bailey's 4F3(1) sum, base q^2"),
        record!("T_QPFAFF_SAALSCHUTZ", &["q", "a", "b", "c", "d"], B(1), Exact, 0, pfaff_lhs, pfaff_rhs,
            "q-Pfaff-Saalschutz sum as a balanced 3phi2"),
        record!("T_GR_EX214", QAB, B(1), Exact, 0, gr214_lhs, gr214_rhs,
            "Gasper-Rahman exercise 2.14(i) balanced 4phi3 sum"),
        record!("T_GR_3109", QAB, B(1), Exact, 0, gr3109_lhs, gr3109_rhs,
            "Gasper-Rahman (3.10.9) with a -> a^2"),
        record!("T_GR_31010", QAB, B(1), Exact, 0, gr31010_lhs, gr31010_rhs,
            "Gasper-Rahman (3.10.10) with a -> ab"),
        record!("T_BW_SUM", QAB, B(1), Exact, 1, bws_lhs, bws_rhs,
            "Berkovich-Warnaar base-q^2 sum with two-term right side; n >= 1"),
        record!("T_BW_TRANSFORM", &["q", "a", "b", "c"], B(1), Exact, 0, bwt_lhs, bwt_rhs,
            "Berkovich-Warnaar transformation of a balanced 4phi3 into a base-q^2 4phi3"),
        record!("T_NEW_N2", QAC, B(1), Exact, 0, n2_lhs, n2_rhs,
            "quadratic balanced 4phi3 sum with lower parameters qc, ±sqrt(a)"),
        record!("T_NEW_N1", QAC, B(1), Exact, 0, n1_lhs, n1_rhs,
            "quadratic balanced 4phi3 sum with lower parameters qc, ±q sqrt(a); Sears-equivalent to T_NEW_N2"),
        record!("T_NEW_N5", QAC, B(1), Exact, 0, n5_lhs, n5_rhs,
            "balanced 4phi3 sum with a full product evaluation for odd n"),
        record!("T_NEW_N3", QAC, B(2), Exact, 0, n3_lhs, n3_rhs,
            "2-balanced quadratic 4phi3 sum with lower parameters ±sqrt(qa), qc"),
        record!("T_NEW_N4", QAC, B(2), Exact, 0, n4_lhs, n4_rhs,
            "2-balanced quadratic 4phi3 sum with lower parameters ±q sqrt(a), c"),
        record!("T_NEW_N8", QAC, B(2), Exact, 0, n8_lhs, n8_rhs,
            "2-balanced 4phi3 sum with upper parameter q^(n-1) a and a parity-split factor"),
        record!("T_NEW_N7", QAC, B(3), Exact, 0, n7_lhs, n7_rhs,
            "3-balanced 4phi3 sum; full product evaluation for odd n"),
        record!("T_NEW_N6", &["q", "c"], B(3), Exact, 0, n6_lhs, n6_rhs,
            "3-balanced 4phi3 sum that factorizes completely; T_NEW_N7 at a = -q^(1-2n)"),
        record!("X_SEARS", &["q", "a", "b", "c", "d", "e"], B(1), Exact, 0, sears_lhs, sears_rhs,
            "Sears' balanced terminating 4phi3 transformation, f fixed by balance"),
    ]
}
