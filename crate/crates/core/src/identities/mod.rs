//! Registry of terminating `4phi3` / `3phi2` identities with exact verifiers
//! and a deterministic random sweep.

mod catalog;
mod checks;

use std::ops::RangeInclusive;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::series::{sum_terminating, BalanceClass, SeriesSpec};

pub use checks::{
    elementary_identity_check, grw_matches_bailey41, n6_specializes_n7, sears_connects_n2_n1, whipple_forms_agree,
    ElementaryIdentity,
};

/// Consecutive rejected draws before a sweep gives up on a point.
pub const MAX_REJECTIONS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhsKind {
    Exact,
    /// Right side involves infinite products and is compared numerically.
    Approx,
}

/// One side of an identity, evaluated.
#[derive(Clone, Debug)]
pub enum Side {
    Exact(ExactScalar),
    Approx(ApproxScalar),
}

type LhsFn = fn(&Args, usize) -> Result<SeriesSpec<ExactScalar>>;
type RhsFn = fn(&Args, usize, u32, f64) -> Result<Side>;

pub struct IdentityRecord {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub balance: BalanceClass,
    pub kind: RhsKind,
    /// Smallest `n` for which the identity holds.
    pub min_n: usize,
    pub description: &'static str,
    lhs: LhsFn,
    rhs: RhsFn,
}

impl std::fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("params", &self.params)
            .field("balance", &self.balance)
            .field("kind", &self.kind)
            .field("min_n", &self.min_n)
            .finish()
    }
}

impl IdentityRecord {
    /// Left side as a terminating series at `(params, n)`.
    pub fn lhs_spec(&self, params: &ParamMap, n: usize) -> Result<SeriesSpec<ExactScalar>> {
        (self.lhs)(&Args::new(self, params)?, n)
    }

    pub fn lhs_value(&self, params: &ParamMap, n: usize) -> Result<ExactScalar> {
        let spec = self.lhs_spec(params, n)?;
        let crate::series::Termination::At(m) = spec.termination else {
            unreachable!("registry series always terminate");
        };
        sum_terminating(&spec, m).map_err(|e| constraint(self.id, e))
    }

    pub fn rhs_value(&self, params: &ParamMap, n: usize, opts: &VerifyOptions) -> Result<Side> {
        (self.rhs)(&Args::new(self, params)?, n, opts.prec, opts.eps).map_err(|e| constraint(self.id, e))
    }
}

fn constraint(id: &str, e: Error) -> Error {
    match e {
        Error::PoleError { .. } => Error::ConstraintViolation(format!("{id}: {e}")),
        other => other,
    }
}

/// Named parameters of one record, all present and nonzero.
pub struct Args<'a> {
    map: &'a ParamMap,
}

impl<'a> Args<'a> {
    fn new(rec: &IdentityRecord, map: &'a ParamMap) -> Result<Self> {
        for name in rec.params {
            let v = map.get(*name).ok_or_else(|| Error::MissingParameter(name.to_string()))?;
            if v.is_zero() {
                return Err(Error::ConstraintViolation(format!("{}: parameter {name} must be nonzero", rec.id)));
            }
        }
        if let Some(extra) = map.keys().find(|k| !rec.params.contains(&k.as_str())) {
            return Err(Error::ConstraintViolation(format!("{}: unknown parameter {extra}", rec.id)));
        }
        Ok(Self { map })
    }

    pub fn take<const N: usize>(&self, names: [&str; N]) -> Result<[ExactScalar; N]> {
        let mut out = Vec::with_capacity(N);
        for name in names {
            out.push(self.map.get(name).cloned().ok_or_else(|| Error::MissingParameter(name.to_string()))?);
        }
        Ok(out.try_into().expect("length matches"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub prec: u32,
    pub eps: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { prec: 256, eps: 1e-40 }
    }
}

fn registry() -> &'static [IdentityRecord] {
    static REG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut v = catalog::records();
        v.sort_by_key(|r| r.id);
        v
    })
}

pub fn lookup(id: &str) -> Result<&'static IdentityRecord> {
    registry().iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// All records, sorted by id.
pub fn records() -> &'static [IdentityRecord] {
    registry()
}

pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|r| r.id).collect()
}

pub fn verify(id: &str, params: &ParamMap, n: usize) -> Result<VerificationReport> {
    verify_with(id, params, n, &VerifyOptions::default())
}

pub fn verify_with(id: &str, params: &ParamMap, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let rec = lookup(id)?;
    if n < rec.min_n {
        return Err(Error::ConstraintViolation(format!("{id}: requires n >= {}", rec.min_n)));
    }
    let q = params.get("q").ok_or_else(|| Error::MissingParameter("q".into()))?;
    if rec.kind == RhsKind::Approx && !q.in_unit_disk() {
        return Err(Error::ConstraintViolation(format!("{id}: infinite products need |q| < 1")));
    }
    let lhs = rec.lhs_value(params, n)?;
    let rhs = rec.rhs_value(params, n, opts)?;
    let ni = Some(n as i64);
    let report = match rhs {
        Side::Exact(r) => VerificationReport::exact(id, ni, params, &lhs, &r),
        Side::Approx(r) => {
            // An exactly zero left side keeps its exact zero so parity
            // vanishing is visible as a degenerate pass, not a rounding tie.
            let l = lhs.to_approx(opts.prec);
            VerificationReport::approx(id, ni, params, &l, &r, opts.eps)
        }
    };
    Ok(if report.degenerate { report.with_note("both sides vanish") } else { report })
}

/// Nonzero Gaussian rational with small numerators and denominators.
fn draw_gaussian(rng: &mut ChaCha8Rng) -> ExactScalar {
    loop {
        let re = ExactScalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=7));
        let im = if rng.gen_bool(0.5) {
            ExactScalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=7))
        } else {
            ExactScalar::from_i64(0)
        };
        let v = re + &(im * &ExactScalar::i());
        if !v.is_zero() {
            return v;
        }
    }
}

/// A base with `0 < |q| <= 3/4`, so every infinite product converges quickly.
fn draw_base(rng: &mut ChaCha8Rng) -> ExactScalar {
    let bound = num_rational::BigRational::new(9.into(), 16.into());
    loop {
        let q = draw_gaussian(rng);
        if q.norm_sqr() <= bound {
            return q;
        }
    }
}

/// Random point for the named parameters; `q` is always drawn as a base.
pub fn sample_point(names: &[&str], rng: &mut ChaCha8Rng) -> ParamMap {
    names
        .iter()
        .map(|&name| {
            let v = if name == "q" || name == "p" { draw_base(rng) } else { draw_gaussian(rng) };
            (name.to_string(), v)
        })
        .collect()
}

/// Generator for point `index` of a sweep: independent of how many other
/// points are drawn or in which order they are evaluated.
pub fn point_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draw points until `eval` accepts one; constraint violations count as
/// rejections.
pub fn sample_until<T>(
    id: &str,
    names: &[&str],
    rng: &mut ChaCha8Rng,
    mut eval: impl FnMut(&ParamMap) -> Result<T>,
) -> Result<T> {
    for _ in 0..MAX_REJECTIONS {
        let point = sample_point(names, rng);
        match eval(&point) {
            Err(Error::ConstraintViolation(_)) | Err(Error::PoleError { .. }) => continue,
            other => return other,
        }
    }
    Err(Error::SamplerExhausted { id: id.to_string(), attempts: MAX_REJECTIONS })
}

pub fn sweep(id: &str, trials: usize, seed: u64, n_range: RangeInclusive<usize>) -> Result<Vec<VerificationReport>> {
    sweep_with(id, trials, seed, n_range, &VerifyOptions::default())
}

/// Reports ordered by point index, then `n`; values of `n` below the
/// record's minimum are skipped.
pub fn sweep_with(
    id: &str,
    trials: usize,
    seed: u64,
    n_range: RangeInclusive<usize>,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationReport>> {
    let rec = lookup(id)?;
    if trials == 0 {
        return Err(Error::ConstraintViolation("trials must be at least 1".into()));
    }
    let ns: Vec<usize> = n_range.filter(|&n| n >= rec.min_n).collect();
    let per_point: Result<Vec<Vec<VerificationReport>>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = point_rng(seed, t as u64);
            sample_until(id, rec.params, &mut rng, |point| ns.iter().map(|&n| verify_with(id, point, n, opts)).collect())
        })
        .collect();
    Ok(per_point?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn point(pairs: &[(&str, ExactScalar)]) -> ParamMap {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn ids_are_sorted_and_complete() {
        let ids = ids();
        assert_eq!(ids.len(), 22);
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(lookup("nope"), Err(Error::UnknownIdentity(_))));
        assert_eq!(lookup("T_BAILEY41").unwrap().balance, BalanceClass::Balanced(1));
        assert_eq!(lookup("T_NEW_N3").unwrap().balance, BalanceClass::Balanced(2));
    }

    #[test]
    fn every_record_at_fixed_point() {
        let vals = [rat(1, 3), rat(-2, 5), ExactScalar::gauss(1, 7, 1, 3), rat(3, 11), rat(5, 13)];
        for rec in records() {
            let mut map = ParamMap::new();
            for (i, name) in rec.params.iter().enumerate() {
                let v = if *name == "q" { rat(1, 2) } else { vals[i % vals.len()].clone() };
                map.insert(name.to_string(), v);
            }
            for n in rec.min_n..=6 {
                let r = verify(rec.id, &map, n).unwrap();
                assert!(r.pass, "{} n={n}: {} vs {}", rec.id, r.lhs, r.rhs);
            }
            let spec = rec.lhs_spec(&map, 3).unwrap();
            assert_eq!(spec.balance_class(), rec.balance, "{}", rec.id);
        }
    }

    #[test]
    fn odd_n_vanishes() {
        let map = point(&[("q", rat(1, 2)), ("a", rat(1, 7)), ("c", rat(1, 3))]);
        let r = verify("T_ANDREWS_WATSON", &map, 3).unwrap();
        assert!(r.pass && r.degenerate);
    }

    #[test]
    fn n2_example_point() {
        let map = point(&[("q", rat(1, 2)), ("a", rat(1, 7)), ("c", rat(1, 3))]);
        assert!(verify("T_NEW_N2", &map, 4).unwrap().pass);
    }

    #[test]
    fn constraint_errors() {
        let map = point(&[("q", rat(1, 2)), ("a", rat(1, 3))]);
        assert!(matches!(verify("T_NEW_N2", &map, 2), Err(Error::MissingParameter(_))));
        let map = point(&[("q", rat(1, 2)), ("a", rat(1, 3)), ("b", rat(1, 5))]);
        assert!(matches!(verify("T_BW_SUM", &map, 0), Err(Error::ConstraintViolation(_))));
        // b = q^{-1} makes the lower parameter q^{1-n}/b hit q^{-k}.
        let map = point(&[("q", rat(1, 2)), ("a", rat(1, 3)), ("b", rat(2, 1))]);
        assert!(matches!(verify("T_BAILEY41", &map, 2), Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = sweep("T_QBAILEY_1", 3, 7, 0..=4).unwrap();
        let b = sweep("T_QBAILEY_1", 3, 7, 0..=4).unwrap();
        assert_eq!(a.len(), 15);
        assert_eq!(a, b);
        assert!(VerificationReport::all_pass(&a));
    }
}
