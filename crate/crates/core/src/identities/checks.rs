//! Cross-checks between records and the small identities used to prove them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qkernel::qpoch;
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ExactScalar, Scalar};
use crate::series::sum_terminating;

use super::catalog::{n1_lhs, n2_lhs, n6_lhs_at, n6_value, n7_lhs_at, n7_value, whipple_c_value};
use super::{lookup, Args, Side, VerifyOptions};

type X = ExactScalar;

fn params(pairs: &[(&str, &X)]) -> ParamMap {
    pairs.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

fn checked_div(num: X, den: X, what: &str) -> Result<X> {
    if den.is_zero() {
        return Err(Error::pole(0, what.to_string()));
    }
    Ok(num / &den)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum ElementaryIdentity {
    /// Splitting one `n -> n+1` term ratio into `1 - (...)`.
    Elid { q: X, a: X, n: i64, k: i64 },
    /// `(1-c)/(1-q^k c) = 1 - c (1-q^k)/(1-q^k c)`.
    Elid2 { c: X, q: X, k: i64 },
}

pub fn elementary_identity_check(which: &ElementaryIdentity) -> Result<VerificationReport> {
    let one = X::from_i64(1);
    match which {
        ElementaryIdentity::Elid { q, a, n, k } => {
            let (n, k) = (*n, *k);
            let d = (one.clone() - &q.powi(k - n - 1)) * &(one.clone() - &(q.powi(n) * a));
            let lhs = checked_div((one.clone() - &q.powi(-n - 1)) * &(one.clone() - &(q.powi(n + k) * a)), d.clone(), "elid")?;
            let tail = q.powi(-n - 1) * &(one.clone() - &q.powi(k)) * &(one.clone() - &(q.powi(2 * n + 1) * a));
            let rhs = one - &checked_div(tail, d, "elid")?;
            let p = params(&[("q", q), ("a", a), ("n", &X::from_i64(n)), ("k", &X::from_i64(k))]);
            Ok(VerificationReport::exact("ELID", Some(n), &p, &lhs, &rhs))
        }
        ElementaryIdentity::Elid2 { c, q, k } => {
            let qk = q.powi(*k);
            let d = one.clone() - &(qk.clone() * c);
            let lhs = checked_div(one.clone() - c, d.clone(), "elid2")?;
            let rhs = one.clone() - &checked_div(c.clone() * &(one - &qk), d, "elid2")?;
            let p = params(&[("c", c), ("q", q), ("k", &X::from_i64(*k))]);
            Ok(VerificationReport::exact("ELID2", None, &p, &lhs, &rhs))
        }
    }
}

/// Sears' transformation carries the left side of `T_NEW_N2` into a
/// multiple of the left side of `T_NEW_N1`:
/// `N2 = (q^{-2n}/a; q²)_n (q^n a)^n / (a; q²)_n · N1`.
pub fn sears_connects_n2_n1(q: &X, a: &X, c: &X, n: usize) -> Result<VerificationReport> {
    let p = params(&[("q", q), ("a", a), ("c", c)]);
    let rec = lookup("T_NEW_N2")?;
    let args = Args::new(rec, &p)?;
    let ni = n as i64;
    let q2 = q.clone() * q;
    let left = sum_terminating(&n2_lhs(&args, n)?, n)?;
    let n1 = sum_terminating(&n1_lhs(&args, n)?, n)?;
    let scale = checked_div(qpoch(&(q.powi(-2 * ni) / a), &q2, n) * &(q.powi(ni) * a).powi(ni), qpoch(a, &q2, n), "(a;q^2)_n")?;
    Ok(VerificationReport::exact("X_SEARS", Some(ni), &p, &left, &(scale * &n1)).with_note("T_NEW_N2 -> T_NEW_N1"))
}

/// `T_NEW_N7` at `a = -q^{1-2n}` reproduces both sides of `T_NEW_N6`.
pub fn n6_specializes_n7(q: &X, c: &X, n: usize) -> Result<VerificationReport> {
    let a = -q.powi(1 - 2 * n as i64);
    let p = params(&[("q", q), ("c", c)]);
    let lhs7 = sum_terminating(&n7_lhs_at(q, &a, c, n), n)?;
    let lhs6 = sum_terminating(&n6_lhs_at(q, c, n), n)?;
    let rhs7 = n7_value(q, &a, c, n)?;
    let rhs6 = n6_value(q, c, n)?;
    let mut r = VerificationReport::exact("T_NEW_N6", Some(n as i64), &p, &rhs7, &rhs6);
    r.pass &= lhs7 == lhs6;
    Ok(r.with_note("T_NEW_N7 at a = -q^(1-2n)"))
}

/// The infinite-product sum at `(q, b, c) = (p, -p^{1-n}/b, a)` in base `p²`
/// is the finite Bailey sum with base `q = p²`: compares the former's left
/// side against the latter's closed form, exactly.
pub fn grw_matches_bailey41(p: &X, a: &X, b: &X, n: usize) -> Result<VerificationReport> {
    let grw = lookup("T_GASPER_RAHMAN_WATSON")?;
    let bailey = lookup("T_BAILEY41")?;
    let sub = params(&[("q", p), ("b", &-(p.powi(1 - n as i64) / b)), ("c", a)]);
    let lhs = grw.lhs_value(&sub, n)?;
    let q = p.clone() * p;
    let bp = params(&[("q", &q), ("a", a), ("b", b)]);
    let Side::Exact(rhs) = bailey.rhs_value(&bp, n, &VerifyOptions::default())? else {
        unreachable!("finite closed form");
    };
    let shown = params(&[("p", p), ("a", a), ("b", b)]);
    Ok(VerificationReport::exact("T_GASPER_RAHMAN_WATSON", Some(n as i64), &shown, &lhs, &rhs).with_note("reduces to T_BAILEY41"))
}

/// The infinite-product and parity-split right sides of Andrews' Whipple
/// analogue agree at `(c, e) = (a, b)`.
pub fn whipple_forms_agree(q: &X, a: &X, b: &X, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let e = lookup("T_ANDREWS_WHIPPLE_E")?;
    let pe = params(&[("q", q), ("c", a), ("e", b)]);
    let Side::Approx(inf) = e.rhs_value(&pe, n, opts)? else {
        unreachable!("infinite-product form");
    };
    let fin = whipple_c_value(q, a, b, n)?.to_approx(opts.prec);
    let p = params(&[("q", q), ("a", a), ("b", b)]);
    Ok(VerificationReport::approx("T_ANDREWS_WHIPPLE_E", Some(n as i64), &p, &inf, &fin, opts.eps)
        .with_note("matches T_ANDREWS_WHIPPLE_C"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn elementary_identities() {
        let r = elementary_identity_check(&ElementaryIdentity::Elid { q: rat(1, 2), a: rat(1, 3), n: 2, k: 1 }).unwrap();
        assert!(r.pass);
        let r = elementary_identity_check(&ElementaryIdentity::Elid2 { c: rat(1, 4), q: rat(1, 2), k: 3 }).unwrap();
        assert!(r.pass);
        let r = elementary_identity_check(&ElementaryIdentity::Elid2 { c: rat(0, 1), q: rat(1, 2), k: 3 }).unwrap();
        assert!(r.pass && r.lhs == "1");
        assert!(elementary_identity_check(&ElementaryIdentity::Elid { q: rat(1, 2), a: rat(1, 3), n: 2, k: 3 }).is_err());
    }

    #[test]
    fn cross_record_checks() {
        let (q, a, b, c) = (rat(1, 2), rat(1, 3), rat(2, 7), rat(-3, 5));
        for n in 0..=6 {
            assert!(sears_connects_n2_n1(&q, &a, &c, n).unwrap().pass, "sears n={n}");
            assert!(n6_specializes_n7(&q, &c, n).unwrap().pass, "n6 n={n}");
            assert!(grw_matches_bailey41(&q, &a, &b, n).unwrap().pass, "grw n={n}");
            assert!(whipple_forms_agree(&q, &a, &b, n, &VerifyOptions::default()).unwrap().pass, "whipple n={n}");
        }
    }
}
