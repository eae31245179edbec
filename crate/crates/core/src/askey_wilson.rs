//! Askey–Wilson polynomials `p_n(x; a, b, c, d | q)` with `x = (w + 1/w)/2`.
//!
//! The variable is always carried as `w`, so every evaluation stays inside
//! the Gaussian rationals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qkernel::{qpoch, Param};
use crate::scalar::{ExactScalar, Scalar};
use crate::series::{sum_terminating, SeriesSpec};

#[derive(Clone, Debug)]
pub struct AWParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub q: S,
    pub w: S,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rep {
    R1,
    R2,
    R3,
    Conv,
}

impl Rep {
    pub const ALL: [Rep; 4] = [Rep::R1, Rep::R2, Rep::R3, Rep::Conv];
}

fn qpochs<S: Scalar>(xs: &[S], q: &S, n: usize) -> S {
    xs.iter().fold(q.one_like(), |acc, x| acc * &qpoch(x, q, n))
}

fn plain<S: Scalar>(xs: Vec<S>) -> Vec<Param<S>> {
    xs.into_iter().map(Param::Plain).collect()
}

/// `p_n` through one of the three balanced `4phi3` forms or the convolution.
pub fn eval_aw<S: Scalar>(p: &AWParams<S>, rep: Rep) -> Result<S> {
    let AWParams { a, b, c, d, q, w, n } = p;
    let n = *n;
    if w.is_zero() {
        return Err(Error::DomainError("w must be nonzero".into()));
    }
    if rep != Rep::Conv && [a, b, c, d].iter().any(|x| x.is_zero()) {
        return Err(Error::DomainError(format!("{rep:?} needs nonzero a, b, c, d")));
    }
    let one = q.one_like();
    let ni = n as i64;
    let qmn = q.powi(-ni);
    match rep {
        Rep::R1 => {
            let abcd = a.clone() * b * c * d;
            let spec = SeriesSpec::terminating(
                vec![
                    Param::Plain(qmn),
                    Param::Plain(q.powi(ni - 1) * &abcd),
                    Param::ScaledPm { a: a.clone(), w: w.clone() },
                ],
                plain(vec![a.clone() * b, a.clone() * c, a.clone() * d]),
                q.clone(),
                q.clone(),
                n,
            );
            let pre = a.powi(-ni) * &qpochs(&[a.clone() * b, a.clone() * c, a.clone() * d], q, n);
            Ok(pre * &sum_terminating(&spec, n)?)
        }
        Rep::R2 => {
            let abcd = a.clone() * b * c * d;
            let q1n = q.powi(1 - ni);
            let spec = SeriesSpec::terminating(
                plain(vec![
                    qmn,
                    q1n.clone() / &(a.clone() * b),
                    q1n.clone() / &(a.clone() * c),
                    q1n.clone() / &(a.clone() * d),
                ]),
                plain(vec![q.powi(2 - 2 * ni) / &abcd, q1n.clone() * w / a, q1n / &(a.clone() * w)]),
                q.clone(),
                q.clone(),
                n,
            );
            // (s;q)_{2n}/(s;q)_n with s = abcd/q is (abcd q^{n-1};q)_n.
            let tri = ni * (ni - 1) / 2;
            let pre = q.powi(-tri)
                * &(-a.clone()).powi(-ni)
                * &qpoch(&(abcd * &q.powi(ni - 1)), q, n)
                * &qpochs(&[a.clone() * w, a.clone() / w], q, n);
            Ok(pre * &sum_terminating(&spec, n)?)
        }
        Rep::R3 => {
            let q1n = q.powi(1 - ni);
            let spec = SeriesSpec::terminating(
                plain(vec![qmn, a.clone() * w, b.clone() * w, q1n.clone() / &(c.clone() * d)]),
                plain(vec![a.clone() * b, q1n.clone() * w / c, q1n * w / d]),
                q.clone(),
                q.clone(),
                n,
            );
            let pre = w.powi(ni) * &qpochs(&[a.clone() * b, c.clone() / w, d.clone() / w], q, n);
            Ok(pre * &sum_terminating(&spec, n)?)
        }
        Rep::Conv => {
            // Pole-free rearrangement: the ratios (ab;q)_n/(ab;q)_j and
            // (cd;q)_n/(cd;q)_{n-j} are themselves finite products.
            let (ab, cd) = (a.clone() * b, c.clone() * d);
            let qn = qpoch(q, q, n);
            let mut acc = one.zero_like();
            for j in 0..=n {
                let binom = qn.clone() / &(qpoch(q, q, j) * &qpoch(q, q, n - j));
                let left = qpochs(&[a.clone() * w, b.clone() * w], q, j) * &qpoch(&(ab.clone() * &q.powi(j as i64)), q, n - j);
                let right = qpochs(&[c.clone() / w, d.clone() / w], q, n - j) * &qpoch(&(cd.clone() * &q.powi((n - j) as i64)), q, j);
                acc = acc + &(binom * &left * &right * &w.powi(ni - 2 * j as i64));
            }
            Ok(acc)
        }
    }
}

/// `p_0, p_1, ...` at fixed parameters by the three-term recurrence, in
/// the normalization of [`eval_aw`].
///
/// `p_n` is symmetric in `a, b, c, d`; the recurrence is written around a
/// pivot parameter and the pivot is the one of largest modulus, so tiny
/// parameters never appear as `1/a`.
pub struct AwSequence<S> {
    pivot: S,
    others: [S; 3],
    abcd: S,
    q: S,
    two_x: S,
    qn: S,
    prev: S,
    cur: S,
    n: usize,
}

impl<S: Scalar> AwSequence<S> {
    pub fn new(a: &S, b: &S, c: &S, d: &S, q: &S, w: &S) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::DomainError("w must be nonzero".into()));
        }
        let mut all = [a.clone(), b.clone(), c.clone(), d.clone()];
        let top = (0..4).fold(0, |best, i| if all[i].abs_f64() > all[best].abs_f64() { i } else { best });
        all.swap(0, top);
        let [pivot, x, y, z] = all;
        if pivot.is_zero() {
            return Err(Error::DomainError("recurrence needs a nonzero parameter".into()));
        }
        let abcd = pivot.clone() * &x * &y * &z;
        Ok(Self {
            pivot,
            others: [x, y, z],
            abcd,
            q: q.clone(),
            two_x: w.clone() + &w.inv(),
            qn: q.one_like(),
            prev: q.zero_like(),
            cur: q.one_like(),
            n: 0,
        })
    }

    fn one_minus(&self, x: S) -> S {
        self.q.one_like() - &x
    }

    /// Current value, then advance.
    pub fn next_value(&mut self) -> Result<S> {
        let out = self.cur.clone();
        let (a, q, qn) = (&self.pivot, &self.q, &self.qn);
        let abcd = &self.abcd;
        let prod_a = |t: &S| self.others.iter().fold(q.one_like(), |acc, o| acc * &self.one_minus(a.clone() * o * t));
        let next = if self.n == 0 {
            // A_0 = (1-ab)(1-ac)(1-ad) / (a (1-abcd)) after cancelling 1 - abcd/q.
            let one_abcd = self.one_minus(abcd.clone());
            if one_abcd.is_zero() {
                return Err(Error::pole(1, "1 - abcd vanishes"));
            }
            let a0 = prod_a(&q.one_like()) / &(a.clone() * &one_abcd);
            let b0 = a.clone() + &a.inv() - &a0;
            (self.two_x.clone() - &b0) * &one_abcd
        } else {
            let q2n = qn.clone() * qn;
            let qinv = q.inv();
            let lag = self.one_minus(abcd.clone() * qn * &qinv);
            let e1 = self.one_minus(abcd.clone() * &q2n * &qinv);
            let e2 = self.one_minus(abcd.clone() * &q2n);
            let e0 = self.one_minus(abcd.clone() * &q2n * &qinv * &qinv);
            if lag.is_zero() || e0.is_zero() || e1.is_zero() || e2.is_zero() {
                return Err(Error::pole(self.n + 1, "abcd q^m = 1 in the recurrence"));
            }
            let big_a = prod_a(qn) * &lag / &(a.clone() * &e1 * &e2);
            let qn1 = qn.clone() * &qinv;
            let [x, y, z] = &self.others;
            let pairs = self.one_minus(x.clone() * y * &qn1) * &self.one_minus(x.clone() * z * &qn1) * &self.one_minus(y.clone() * z * &qn1);
            let big_c = a.clone() * &self.one_minus(qn.clone()) * &pairs / &(e0.clone() * &e1);
            let b = a.clone() + &a.inv() - &big_a - &big_c;
            // C_n times the ratio of consecutive normalizations.
            let c_scaled = self.one_minus(qn.clone()) * &pairs * &prod_a(&qn1) / &(e0 * &e1);
            ((self.two_x.clone() - &b) * &self.cur - &(c_scaled * &self.prev)) * &e1 * &e2 / &lag
        };
        self.prev = std::mem::replace(&mut self.cur, next);
        self.qn = self.qn.clone() * &self.q;
        self.n += 1;
        Ok(out)
    }
}

/// Continuous q-Hermite value: the convolution form at `a = b = c = d = 0`.
pub fn aw_hermite_degenerate<S: Scalar>(w: &S, q: &S, n: usize) -> Result<S> {
    let z = q.zero_like();
    eval_aw(&AWParams { a: z.clone(), b: z.clone(), c: z.clone(), d: z, q: q.clone(), w: w.clone(), n }, Rep::Conv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpecialValueId {
    Aw32,
    Bailey0,
    AndrewsWhipple0,
    Newquad,
    Esoteric,
}

impl SpecialValueId {
    pub const ALL: [SpecialValueId; 5] =
        [SpecialValueId::Aw32, SpecialValueId::Bailey0, SpecialValueId::AndrewsWhipple0, SpecialValueId::Newquad, SpecialValueId::Esoteric];

    pub fn name(&self) -> &'static str {
        match self {
            SpecialValueId::Aw32 => "AW32",
            SpecialValueId::Bailey0 => "BAILEY0",
            SpecialValueId::AndrewsWhipple0 => "ANDREWS_WHIPPLE0",
            SpecialValueId::Newquad => "NEWQUAD",
            SpecialValueId::Esoteric => "ESOTERIC",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.name() == s)
    }

    /// Free parameters the closed form depends on.
    pub fn params(&self) -> &'static [&'static str] {
        match self {
            SpecialValueId::Aw32 => &["q", "a", "b", "c", "d"],
            _ => &["q", "a", "b"],
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpecialValue {
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    /// A second closed form of the same value, where the literature gives two.
    pub rhs_alt: Option<ExactScalar>,
}

pub struct SpecialArgs<'a> {
    pub q: &'a ExactScalar,
    pub a: &'a ExactScalar,
    pub b: &'a ExactScalar,
    pub c: Option<&'a ExactScalar>,
    pub d: Option<&'a ExactScalar>,
}

/// `p_n` at the special point, preferring the first `4phi3` form and
/// falling back to the pole-free convolution.
fn aw_value(p: AWParams<ExactScalar>) -> Result<ExactScalar> {
    match eval_aw(&p, Rep::R1) {
        Err(Error::PoleError { .. }) => eval_aw(&p, Rep::Conv),
        other => other,
    }
}

fn sign(m: usize) -> ExactScalar {
    ExactScalar::from_i64(if m % 2 == 0 { 1 } else { -1 })
}

pub fn eval_special_value(id: SpecialValueId, args: &SpecialArgs, n: usize) -> Result<SpecialValue> {
    let SpecialArgs { q, a, b, .. } = *args;
    let one = ExactScalar::from_i64(1);
    let i = ExactScalar::i();
    let q2 = q.clone() * q;
    let (ab, a2, b2) = (a.clone() * b, a.clone() * a, b.clone() * b);
    let a2b2 = a2.clone() * &b2;
    let qab = q.clone() * &ab;
    let even = n % 2 == 0;
    let m = n / 2;
    let pq2 = |xs: &[ExactScalar], k: usize| qpochs(xs, &q2, k);
    let at_zero = |a_: ExactScalar, b_: ExactScalar, c_: ExactScalar, d_: ExactScalar| {
        aw_value(AWParams { a: a_, b: b_, c: c_, d: d_, q: q.clone(), w: i.clone(), n })
    };
    match id {
        SpecialValueId::Aw32 => {
            let (c, d) = match (args.c, args.d) {
                (Some(c), Some(d)) => (c, d),
                _ => return Err(Error::MissingParameter("c, d".into())),
            };
            let lhs = aw_value(AWParams { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), q: q.clone(), w: d.clone(), n })?;
            let rhs = d.powi(-(n as i64)) * &qpochs(&[a.clone() * d, b.clone() * d, c.clone() * d], q, n);
            Ok(SpecialValue { lhs, rhs, rhs_alt: None })
        }
        SpecialValueId::Bailey0 => {
            let lhs = at_zero(i.clone() * a, -(i.clone() * a), i.clone() * b, -(i.clone() * b))?;
            let rhs = if even {
                sign(m) * &pq2(&[q.clone(), a2.clone(), b2.clone(), ab.clone(), -ab.clone(), qab.clone(), -qab.clone()], m)
                    / &pq2(std::slice::from_ref(&a2b2), m)
            } else {
                one.zero_like()
            };
            Ok(SpecialValue { lhs, rhs, rhs_alt: None })
        }
        SpecialValueId::AndrewsWhipple0 => {
            let lhs = at_zero(i.clone() * a, i.clone() * q / a, -(i.clone() * b), -(i.clone() * q / b))?;
            let rhs = if even {
                sign(m)
                    * &pq2(&[-q.clone(), -q2.clone(), ab.clone(), q2.clone() / &ab, q.clone() * a / b, q.clone() * b / a], m)
            } else {
                let q3 = q2.clone() * q;
                i.clone() * q / b
                    * &(one.clone() + q)
                    * &(one.clone() - &(ab.clone() / q))
                    * &(one.clone() - &(b.clone() / a))
                    * &sign(m)
                    * &pq2(&[-q2.clone(), -q3.clone(), qab.clone(), q3 / &ab, q2.clone() * a / b, q2.clone() * b / a], m)
            };
            Ok(SpecialValue { lhs, rhs, rhs_alt: None })
        }
        SpecialValueId::Newquad => {
            let lhs = at_zero(i.clone() * a, -(i.clone() * a), i.clone() * b, -(i.clone() * q * b))?;
            let f = n.div_ceil(2);
            let qb2 = q.clone() * &b2;
            let first = (-i.clone()).powi(n as i64)
                * &b.powi(2 * f as i64 - n as i64)
                * &qpochs(&[qb2.clone(), ab.clone(), -ab.clone()], q, n)
                * &pq2(&[q.clone(), a2.clone()], f)
                / &pq2(&[qb2, a2b2.clone()], f);
            let parity = if even {
                sign(m) * &pq2(&[q.clone(), a2.clone(), q2.clone() * &b2, ab.clone(), -ab.clone(), qab.clone(), -qab.clone()], m)
                    / &pq2(std::slice::from_ref(&a2b2), m)
            } else {
                let q2ab = q2.clone() * &ab;
                -(i.clone())
                    * &(one.clone() - q)
                    * &(one.clone() - &a2)
                    * b
                    * &sign(m)
                    * &pq2(&[q2.clone() * q, q2.clone() * &a2, q2.clone() * &b2, qab.clone(), -qab.clone(), q2ab.clone(), -q2ab], m)
                    / &pq2(&[q2.clone() * &a2b2], m)
            };
            Ok(SpecialValue { lhs, rhs: parity, rhs_alt: Some(first) })
        }
        SpecialValueId::Esoteric => {
            let lhs = at_zero(i.clone() * a, -(i.clone() * a), i.clone() * b, -(i.clone() * &q2 * b))?;
            let q3 = q2.clone() * q;
            let rhs = if even {
                let lead = sign(m) * &pq2(&[a2.clone(), q2.clone() * &b2, ab.clone(), -ab.clone(), qab.clone(), -qab.clone()], m)
                    / &((one.clone() - &(q2.clone() * &b2)) * &(one.clone() - &a2b2) * &pq2(&[q2.clone() * &a2b2], m));
                // The (q, q^3 b^2, q^3 a^2 b^2) block runs in base q^2.
                let t1 = (one.clone() - &(q.clone() * &b2))
                    * &(one.clone() - &(q.clone() * &a2b2))
                    * &pq2(&[q.clone(), q3.clone() * &b2, q3.clone() * &a2b2], m)
                    / &pq2(&[q.clone() * &b2, q.clone() * &a2b2], m);
                let t2 = q.clone() * &b2 * &(one.clone() - q) * &(one.clone() - &(a2.clone() / q)) * &pq2(&[q3.clone(), q.clone() * &a2], m)
                    / &pq2(&[a2.clone() / q], m);
                lead * &(t1 + &t2)
            } else {
                let q2ab = q2.clone() * &ab;
                -(i.clone())
                    * b
                    * &(one.clone() - &q2)
                    * &(one.clone() - &a2)
                    * &sign(m)
                    * &pq2(&[q3, q2.clone() * &a2, q2.clone() * &q2 * &b2, qab.clone(), -qab.clone(), q2ab.clone(), -q2ab], m)
                    / &pq2(&[q2.clone() * &a2b2], m)
            };
            Ok(SpecialValue { lhs, rhs, rhs_alt: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn params(n: usize) -> AWParams<ExactScalar> {
        AWParams { a: rat(1, 3), b: rat(-2, 5), c: ExactScalar::gauss(1, 7, 1, 2), d: rat(3, 4), q: rat(1, 2), w: rat(2, 3), n }
    }

    #[test]
    fn recurrence_matches_r3() {
        let p = params(0);
        for (a, b, c, d) in [
            (p.a.clone(), p.b.clone(), p.c.clone(), p.d.clone()),
            (rat(1, 2000), p.b.clone(), rat(3, 5), ExactScalar::gauss(-1, 3, 1, 9)),
        ] {
            let mut seq = AwSequence::new(&a, &b, &c, &d, &p.q, &p.w).unwrap();
            for n in 0..=10 {
                let r3 = eval_aw(&AWParams { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), q: p.q.clone(), w: p.w.clone(), n }, Rep::R3).unwrap();
                assert_eq!(seq.next_value().unwrap(), r3, "n={n}");
            }
        }
    }

    #[test]
    fn degree_zero_is_one() {
        for rep in Rep::ALL {
            assert_eq!(eval_aw(&params(0), rep).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn representations_agree() {
        for n in 0..=5 {
            let p = params(n);
            let r1 = eval_aw(&p, Rep::R1).unwrap();
            for rep in [Rep::R2, Rep::R3, Rep::Conv] {
                assert_eq!(eval_aw(&p, rep).unwrap(), r1, "{rep:?} n={n}");
            }
        }
    }

    #[test]
    fn hermite_low_degree() {
        let (w, q) = (rat(2, 3), rat(1, 5));
        assert_eq!(aw_hermite_degenerate(&w, &q, 0).unwrap(), rat(1, 1));
        assert_eq!(aw_hermite_degenerate(&w, &q, 1).unwrap(), w.clone() + &w.inv());
    }

    #[test]
    fn zero_parameter_rejected_outside_convolution() {
        let mut p = params(2);
        p.b = rat(0, 1);
        assert!(eval_aw(&p, Rep::R1).is_err());
        assert!(eval_aw(&p, Rep::Conv).is_ok());
    }

    #[test]
    fn special_values_small_n() {
        let (q, a, b, c, d) = (rat(1, 2), rat(1, 3), rat(1, 5), rat(2, 7), rat(3, 4));
        let args = SpecialArgs { q: &q, a: &a, b: &b, c: Some(&c), d: Some(&d) };
        for id in SpecialValueId::ALL {
            for n in 0..=5 {
                let v = eval_special_value(id, &args, n).unwrap();
                assert_eq!(v.lhs, v.rhs, "{id:?} n={n}");
                if let Some(alt) = v.rhs_alt {
                    assert_eq!(alt, v.rhs, "{id:?} alt n={n}");
                }
            }
        }
    }
}
