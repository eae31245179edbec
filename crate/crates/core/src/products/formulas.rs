//! Product formulas as data. Each side is a sum of terms
//! `coef · x^shift · Π φ_i(scale_i · x^power_i)` in the expansion variable `x`,
//! so one description drives both the numerical value and the exact
//! coefficient comparison.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qkernel::{vanishing_index, Param, TruncationCert};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::series::{eval_phi_nonterminating, SeriesSpec};

use super::power_series::PowerSeriesTrunc;
use super::ProductId;

#[derive(Clone, Debug)]
pub(crate) struct Factor<S> {
    /// The series with `z = 1`; the argument is `scale · x^power`.
    pub spec: SeriesSpec<S>,
    pub scale: S,
    pub power: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Term<S> {
    pub coef: S,
    pub shift: usize,
    pub factors: Vec<Factor<S>>,
}

#[derive(Clone, Debug)]
pub(crate) struct Formula<S> {
    pub lhs: Vec<Term<S>>,
    pub rhs: Vec<Term<S>>,
}

impl<S: Scalar> Factor<S> {
    fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Factor<T> {
        Factor { spec: self.spec.map(f), scale: f(&self.scale), power: self.power }
    }
}

impl<S: Scalar> Term<S> {
    fn map<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Term<T> {
        Term { coef: f(&self.coef), shift: self.shift, factors: self.factors.iter().map(|x| x.map(f)).collect() }
    }
}

impl<S: Scalar> Formula<S> {
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Formula<T> {
        Formula { lhs: self.lhs.iter().map(|t| t.map(&f)).collect(), rhs: self.rhs.iter().map(|t| t.map(&f)).collect() }
    }
}

fn pl<S: Scalar>(x: S) -> Param<S> {
    Param::Plain(x)
}

fn pm<S: Scalar>(x: S) -> Param<S> {
    Param::PlusMinus(x)
}

fn phi<S: Scalar>(up: Vec<Param<S>>, lo: Vec<Param<S>>, q: &S) -> SeriesSpec<S> {
    SeriesSpec::new(up, lo, q.clone(), q.one_like())
}

fn at<S: Scalar>(spec: SeriesSpec<S>, scale: S, power: usize) -> Factor<S> {
    Factor { spec, scale, power }
}

fn term<S: Scalar>(coef: S, shift: usize, factors: Vec<Factor<S>>) -> Term<S> {
    Term { coef, shift, factors }
}

fn single<S: Scalar>(factors: Vec<Factor<S>>) -> Vec<Term<S>> {
    let one = factors[0].scale.one_like();
    vec![term(one, 0, factors)]
}

fn div<S: Scalar>(num: S, den: S, what: &str) -> Result<S> {
    if den.is_zero() {
        return Err(Error::pole(0, format!("{what} vanishes")));
    }
    Ok(num / &den)
}

/// The formula of a single-series-product identity, or `None` for the ids
/// whose right side is not of this shape.
pub(crate) fn formula<S: Scalar>(id: ProductId, v: &BTreeMap<&str, S>) -> Result<Option<Formula<S>>> {
    let get = |name: &str| v[name].clone();
    let q = get("q");
    let one = q.one_like();
    let q2 = q.clone() * &q;
    let q3 = q2.clone() * &q;
    let neg = -one.clone();
    use ProductId::*;
    let f = match id {
        SchlosserT4 => {
            let (a, b) = (get("a"), get("b"));
            let ab = a.clone() * &b;
            let lhs = single(vec![
                at(phi(vec![pl(a.clone()), pl(div(q.clone(), a.clone(), "a")?)], vec![pl(-q.clone())], &q), one.clone(), 1),
                at(phi(vec![pl(b.clone()), pl(div(q.clone(), b.clone(), "b")?)], vec![pl(-q.clone())], &q), neg.clone(), 1),
            ]);
            let first = phi(
                vec![pl(ab.clone()), pl(div(q2.clone(), ab.clone(), "ab")?), pl(q.clone() * &a / &b), pl(q.clone() * &b / &a)],
                vec![pl(-q2.clone()), pm(q.clone())],
                &q2,
            );
            let second = phi(
                vec![pl(q.clone() * &ab), pl(q3.clone() / &ab), pl(q2.clone() * &a / &b), pl(q2.clone() * &b / &a)],
                vec![pl(-q2.clone()), pm(q3.clone())],
                &q2,
            );
            let c = div((b.clone() - &a) * &(one.clone() - &(q.clone() / &ab)), one.clone() - &q2, "1 - q^2")?;
            Formula { lhs, rhs: vec![term(one.clone(), 0, vec![at(first, one.clone(), 2)]), term(c, 1, vec![at(second, one.clone(), 2)])] }
        }
        SrivJain => {
            let (a, b) = (get("a"), get("b"));
            let ab = a.clone() * &b;
            let lhs = single(vec![
                at(phi(vec![pm(a.clone())], vec![pl(a.clone() * &a)], &q), one.clone(), 1),
                at(phi(vec![pm(b.clone())], vec![pl(b.clone() * &b)], &q), neg.clone(), 1),
            ]);
            let rhs = single(vec![at(
                phi(
                    vec![pm(ab.clone()), pm(q.clone() * &ab)],
                    vec![pl(q.clone() * &a * &a), pl(q.clone() * &b * &b), pl(ab.clone() * &ab)],
                    &q2,
                ),
                one.clone(),
                2,
            )]);
            Formula { lhs, rhs }
        }
        JacksonClausen | Nassrallah1 | Nassrallah2 | Thm21 => {
            let (a, b) = (get("a"), get("b"));
            let (aa, bb) = (a.clone() * &a, b.clone() * &b);
            let ab = a.clone() * &b;
            let aabb = aa.clone() * &bb;
            // `±√q ab` enters as the pair `(q a²b²; q²)`.
            let sq = Param::SqrtPm(q.clone() * &aabb);
            let two = |u1: S, u2: S, l: S| phi(vec![pl(u1), pl(u2)], vec![pl(l)], &q2);
            let (f1, f2, top, bottom) = match id {
                JacksonClausen => (
                    two(aa.clone(), bb.clone(), q.clone() * &aabb),
                    two(aa.clone(), bb.clone(), q.clone() * &aabb),
                    vec![pl(aa.clone()), pl(bb.clone())],
                    aabb.clone(),
                ),
                Nassrallah1 => (
                    two(aa.clone(), bb.clone(), aabb.clone() / &q),
                    two(aa.clone(), bb.clone(), q.clone() * &aabb),
                    vec![pl(aa.clone()), pl(bb.clone())],
                    aabb.clone() / &q,
                ),
                Nassrallah2 => (
                    two(q.clone() * &aa, q.clone() * &bb, q.clone() * &aabb),
                    two(aa.clone() / &q, q.clone() * &bb, q.clone() * &aabb),
                    vec![pl(aa.clone()), pl(q.clone() * &bb)],
                    aabb.clone(),
                ),
                _ => (
                    two(q.clone() * &aa, q.clone() * &bb, q.clone() * &aabb),
                    two(aa.clone() / &q, bb.clone() / &q, aabb.clone() / &q),
                    vec![pl(aa.clone()), pl(bb.clone())],
                    aabb.clone() / &q,
                ),
            };
            let lhs = single(vec![at(f1, one.clone(), 1), at(f2, q.clone(), 1)]);
            let mut up = top;
            up.push(pm(ab));
            let rhs = single(vec![at(phi(up, vec![pl(bottom), sq], &q), one.clone(), 1)]);
            Formula { lhs, rhs }
        }
        Trivial2132 => {
            let a = get("a");
            let aa = a.clone() * &a;
            let lhs = single(vec![at(phi(vec![pl(q2.clone()), pl(aa.clone())], vec![pl(q.clone() * &aa)], &q2), one.clone(), 1)]);
            let rhs = single(vec![at(
                phi(vec![pl(q.clone()), pm(a)], vec![Param::SqrtPm(q.clone() * &aa)], &q),
                one.clone(),
                1,
            )]);
            Formula { lhs, rhs }
        }
        Srivastava313 => {
            let (a, b) = (get("a"), get("b"));
            let ab = a.clone() * &b;
            let f = phi(vec![pl(a.clone()), pl(b.clone())], vec![pl(-ab.clone())], &q);
            let lhs = single(vec![at(f.clone(), one.clone(), 1), at(f, neg.clone(), 1)]);
            let rhs = single(vec![at(
                phi(
                    vec![pl(ab.clone()), pl(q.clone() * &ab), pl(a.clone() * &a), pl(b.clone() * &b)],
                    vec![pl(-ab.clone()), pl(-(q.clone() * &ab)), pl(ab.clone() * &ab)],
                    &q2,
                ),
                one.clone(),
                2,
            )]);
            Formula { lhs, rhs }
        }
        T515 | T516 | T517 | T518 => quadratic_special(id, &q, &get("a"), &get("c"))?,
        Awgf | Triple32pf | QuadCor13 | WdAppell | CayleyOrrA | CayleyOrrB => return Ok(None),
    };
    Ok(Some(f))
}

/// The four transformations obtained from the quadratic and esoteric
/// special values at `x = 0`.
fn quadratic_special<S: Scalar>(id: ProductId, q: &S, a: &S, c: &S) -> Result<Formula<S>> {
    let one = q.one_like();
    let neg = -one.clone();
    let q2 = q.clone() * q;
    let q3 = q2.clone() * q;
    let q4 = q2.clone() * &q2;
    let (aa, cc) = (a.clone() * a, c.clone() * c);
    let ac = a.clone() * c;
    let aacc = ac.clone() * &ac;
    let pair_aa = || phi(vec![pm(a.clone())], vec![pl(aa.clone())], q);
    let k1 = || {
        div(
            (one.clone() - &(q.clone() * &cc)) * &(one.clone() - &(q.clone() * &aacc)),
            (one.clone() - &(q2.clone() * &cc)) * &(one.clone() - &aacc),
            "(1 - q²c²)(1 - a²c²)",
        )
    };
    let k2 = || {
        div(
            q.clone() * &cc * &(one.clone() - q) * &(one.clone() - &(aa.clone() / q)),
            (one.clone() - &(q2.clone() * &cc)) * &(one.clone() - &aacc),
            "(1 - q²c²)(1 - a²c²)",
        )
    };
    let sq = |s: SeriesSpec<S>| at(s, one.clone(), 2);
    use ProductId::*;
    let f = match id {
        T515 => {
            let lhs = single(vec![
                at(phi(vec![pl(-c.clone()), pl(q.clone() * c)], vec![pl(q.clone() * &cc)], q), one.clone(), 1),
                at(pair_aa(), neg.clone(), 1),
            ]);
            let even = phi(vec![pm(ac.clone()), pm(q.clone() * &ac)], vec![pl(q.clone() * &aa), pl(q.clone() * &cc), pl(aacc.clone())], &q2);
            let odd = phi(
                vec![pm(q.clone() * &ac), pm(q2.clone() * &ac)],
                vec![pl(q.clone() * &aa), pl(q3.clone() * &cc), pl(q2.clone() * &aacc)],
                &q2,
            );
            let co = div(c.clone(), one.clone() - &(q.clone() * &cc), "1 - qc²")?;
            Formula { lhs, rhs: vec![term(one.clone(), 0, vec![sq(even)]), term(co, 1, vec![sq(odd)])] }
        }
        T516 => {
            let lhs = single(vec![
                at(phi(vec![pl(-a.clone()), pl(-c.clone())], vec![pl(-ac.clone())], q), one.clone(), 1),
                at(phi(vec![pl(-a.clone()), pl(-(q.clone() * c))], vec![pl(-(q.clone() * &ac))], q), neg.clone(), 1),
            ]);
            let even = phi(
                vec![pl(aa.clone()), pl(q2.clone() * &cc), pl(ac.clone()), pl(q.clone() * &ac)],
                vec![pl(-(q.clone() * &ac)), pl(-(q2.clone() * &ac)), pl(aacc.clone())],
                &q2,
            );
            let odd = phi(
                vec![pl(q2.clone() * &aa), pl(q2.clone() * &cc), pl(q.clone() * &ac), pl(q2.clone() * &ac)],
                vec![pl(-(q2.clone() * &ac)), pl(-(q3.clone() * &ac)), pl(q2.clone() * &aacc)],
                &q2,
            );
            let co = div(
                c.clone() * &(one.clone() - &aa),
                (one.clone() + &ac) * &(one.clone() + &(q.clone() * &ac)),
                "(1 + ac)(1 + qac)",
            )?;
            Formula { lhs, rhs: vec![term(one.clone(), 0, vec![sq(even)]), term(co, 1, vec![sq(odd)])] }
        }
        T517 => {
            let lhs = single(vec![
                at(phi(vec![pl(-c.clone()), pl(q2.clone() * c)], vec![pl(q2.clone() * &cc)], q), one.clone(), 1),
                at(pair_aa(), neg.clone(), 1),
            ]);
            let odd = phi(
                vec![pm(q.clone() * &ac), pm(q2.clone() * &ac)],
                vec![pl(q.clone() * &aa), pl(q3.clone() * &cc), pl(q2.clone() * &aacc)],
                &q2,
            );
            let e1 = phi(
                vec![pl(q3.clone() * &aacc), pm(ac.clone()), pm(q.clone() * &ac)],
                vec![pl(q.clone() * &aa), pl(q.clone() * &cc), pl(q.clone() * &aacc), pl(q2.clone() * &aacc)],
                &q2,
            );
            let e2 = phi(
                vec![pl(q3.clone()), pm(ac.clone()), pm(q.clone() * &ac)],
                vec![pl(q.clone()), pl(aa.clone() / q), pl(q3.clone() * &cc), pl(q2.clone() * &aacc)],
                &q2,
            );
            let co = div(c.clone() * &(one.clone() + q), one.clone() - &(q2.clone() * &cc), "1 - q²c²")?;
            Formula {
                lhs,
                rhs: vec![term(co, 1, vec![sq(odd)]), term(k1()?, 0, vec![sq(e1)]), term(k2()?, 0, vec![sq(e2)])],
            }
        }
        _ => {
            let lhs = single(vec![
                at(phi(vec![pl(-a.clone()), pl(-c.clone())], vec![pl(-ac.clone())], q), one.clone(), 1),
                at(phi(vec![pl(-a.clone()), pl(-(q2.clone() * c))], vec![pl(-(q2.clone() * &ac))], q), neg.clone(), 1),
            ]);
            let odd = phi(
                vec![pl(q2.clone() * &aa), pl(q4.clone() * &cc), pl(q.clone() * &ac), pl(q2.clone() * &ac)],
                vec![pl(-(q3.clone() * &ac)), pl(-(q4.clone() * &ac)), pl(q2.clone() * &aacc)],
                &q2,
            );
            let e1 = phi(
                vec![
                    pl(aa.clone()),
                    pl(q2.clone() * &cc),
                    pl(q3.clone() * &cc),
                    pl(ac.clone()),
                    pl(q.clone() * &ac),
                    pl(q3.clone() * &aacc),
                ],
                vec![
                    pl(q.clone() * &cc),
                    pl(-(q2.clone() * &ac)),
                    pl(-(q3.clone() * &ac)),
                    pl(q.clone() * &aacc),
                    pl(q2.clone() * &aacc),
                ],
                &q2,
            );
            let e2 = phi(
                vec![
                    pl(q3.clone()),
                    pl(aa.clone()),
                    pl(q.clone() * &aa),
                    pl(q2.clone() * &cc),
                    pl(ac.clone()),
                    pl(q.clone() * &ac),
                ],
                vec![
                    pl(q.clone()),
                    pl(aa.clone() / q),
                    pl(-(q2.clone() * &ac)),
                    pl(-(q3.clone() * &ac)),
                    pl(q2.clone() * &aacc),
                ],
                &q2,
            );
            let co = div(
                c.clone() * &(one.clone() + q) * &(one.clone() - &aa),
                (one.clone() + &ac) * &(one.clone() + &(q2.clone() * &ac)),
                "(1 + ac)(1 + q²ac)",
            )?;
            Formula {
                lhs,
                rhs: vec![term(co, 1, vec![sq(odd)]), term(k1()?, 0, vec![sq(e1)]), term(k2()?, 0, vec![sq(e2)])],
            }
        }
    };
    Ok(f)
}

/// First index at which a lower parameter of `spec` produces a zero factor.
pub(crate) fn lower_pole(spec: &SeriesSpec<ExactScalar>) -> Option<usize> {
    let q = &spec.q;
    let q2 = q.clone() * q;
    spec.lower
        .iter()
        .filter_map(|p| match p {
            Param::Plain(a) => vanishing_index(a, q),
            Param::PlusMinus(a) => vanishing_index(&(a.clone() * a), &q2),
            Param::SqrtPm(s) => vanishing_index(s, &q2),
            Param::ScaledPm { a, w } => {
                [vanishing_index(&(a.clone() * w), q), vanishing_index(&(a.clone() / w), q)].into_iter().flatten().min()
            }
        })
        .min()
}

pub(crate) fn check_poles(f: &Formula<ExactScalar>) -> Result<()> {
    for t in f.lhs.iter().chain(&f.rhs) {
        for x in &t.factors {
            if let Some(k) = lower_pole(&x.spec) {
                return Err(Error::pole(k + 1, "lower parameter of a series factor hits a pole"));
            }
        }
    }
    Ok(())
}

/// Value of one side at `x`, each factor to relative accuracy `eps`.
pub(crate) fn eval_side(terms: &[Term<ApproxScalar>], x: &ApproxScalar, eps: f64) -> Result<(ApproxScalar, usize)> {
    let mut sum = x.zero_like();
    let mut used = 0;
    for t in terms {
        let mut v = t.coef.clone() * &x.powi(t.shift as i64);
        for f in &t.factors {
            let arg = f.scale.clone() * &x.powi(f.power as i64);
            let (val, cert): (ApproxScalar, TruncationCert) = eval_phi_nonterminating(&f.spec.with_z(arg), eps)?;
            used += cert.terms_used;
            v = v * &val;
        }
        sum = sum + &v;
    }
    Ok((sum, used))
}

/// Power-series coefficients of one term through `x^order`.
pub(crate) fn term_coefficients<S: Scalar>(t: &Term<S>, order: usize) -> Result<PowerSeriesTrunc<S>> {
    let like = t.coef.clone();
    let mut acc = PowerSeriesTrunc::one(order, &like);
    for f in &t.factors {
        let c = f.spec.coefficients(order / f.power)?;
        acc = &acc * &PowerSeriesTrunc::new(c, order, &like).substitute(&f.scale, f.power);
    }
    Ok(acc.scale(&t.coef).shift(t.shift))
}

pub(crate) fn side_coefficients<S: Scalar>(terms: &[Term<S>], order: usize) -> Result<PowerSeriesTrunc<S>> {
    let like = terms[0].coef.zero_like();
    let mut acc = PowerSeriesTrunc::new(vec![], order, &like);
    for t in terms {
        acc = &acc + &term_coefficients(t, order)?;
    }
    Ok(acc)
}
