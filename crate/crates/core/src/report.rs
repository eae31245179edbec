//! Verification reports shared by every checker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::{ApproxScalar, ExactScalar, Mode, Scalar};

/// Significant digits printed for approximate values.
pub const APPROX_DIGITS: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub n: Option<i64>,
    pub params: BTreeMap<String, String>,
    pub mode: Mode,
    pub lhs: String,
    pub rhs: String,
    #[serde(with = "float_or_symbol")]
    pub abs_err: f64,
    #[serde(with = "float_or_symbol")]
    pub rel_err: f64,
    pub eps: f64,
    pub pass: bool,
    /// Both sides vanish, so the point carries no information.
    pub degenerate: bool,
    pub truncation_terms: Option<usize>,
    pub quadrature_nodes: Option<usize>,
    pub note: Option<String>,
}

/// JSON has no infinities: non-finite errors are written as `"inf"`,
/// `"-inf"` or `"nan"`.
mod float_or_symbol {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        match *x {
            x if x.is_finite() => s.serialize_f64(x),
            x if x.is_nan() => s.serialize_str("nan"),
            x if x > 0.0 => s.serialize_str("inf"),
            _ => s.serialize_str("-inf"),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Sym(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Sym(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(serde::de::Error::custom(format!("expected a number, \"inf\", \"-inf\" or \"nan\", got {s:?}"))),
            },
        }
    }
}

pub type ParamMap = BTreeMap<String, ExactScalar>;

pub fn render_params(params: &ParamMap) -> BTreeMap<String, String> {
    params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

impl VerificationReport {
    fn base(id: &str, n: Option<i64>, params: &ParamMap, mode: Mode) -> Self {
        Self {
            identity_id: id.to_string(),
            n,
            params: render_params(params),
            mode,
            lhs: String::new(),
            rhs: String::new(),
            abs_err: 0.0,
            rel_err: 0.0,
            eps: 0.0,
            pass: false,
            degenerate: false,
            truncation_terms: None,
            quadrature_nodes: None,
            note: None,
        }
    }

    /// Exact comparison: pass iff the two sides are equal.
    pub fn exact(id: &str, n: Option<i64>, params: &ParamMap, lhs: &ExactScalar, rhs: &ExactScalar) -> Self {
        let mut r = Self::base(id, n, params, Mode::Exact);
        r.lhs = lhs.to_string();
        r.rhs = rhs.to_string();
        r.pass = lhs == rhs;
        r.degenerate = lhs.is_zero() && rhs.is_zero();
        if !r.pass {
            let d = lhs.clone() - rhs;
            r.abs_err = d.abs_f64();
            let scale = lhs.abs_f64().max(rhs.abs_f64());
            r.rel_err = if scale > 0.0 { r.abs_err / scale } else { f64::INFINITY };
        }
        r
    }

    /// Approximate comparison: pass iff `|lhs - rhs| <= eps * max(|lhs|, |rhs|)`,
    /// or both sides are exactly zero.
    pub fn approx(id: &str, n: Option<i64>, params: &ParamMap, lhs: &ApproxScalar, rhs: &ApproxScalar, eps: f64) -> Self {
        let mut r = Self::base(id, n, params, Mode::Approx);
        r.lhs = lhs.to_decimal(APPROX_DIGITS);
        r.rhs = rhs.to_decimal(APPROX_DIGITS);
        r.eps = eps;
        r.degenerate = lhs.is_zero() && rhs.is_zero();
        if r.degenerate {
            r.pass = true;
            return r;
        }
        let d = (lhs.clone() - rhs).log2_abs();
        let scale = lhs.log2_abs().max(rhs.log2_abs());
        r.abs_err = d.exp2();
        r.rel_err = (d - scale).exp2();
        r.pass = r.rel_err <= eps;
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_terms(mut self, terms: usize) -> Self {
        self.truncation_terms = Some(terms);
        self
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.quadrature_nodes = Some(nodes);
        self
    }

    /// Fold several reports of one check into a single pass/fail.
    pub fn all_pass(reports: &[VerificationReport]) -> bool {
        reports.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Self {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
            degenerate: reports.iter().filter(|r| r.degenerate).count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn exact_reports() {
        let p = ParamMap::new();
        let r = VerificationReport::exact("X", Some(1), &p, &rat(1, 2), &rat(1, 2));
        assert!(r.pass && !r.degenerate);
        let r = VerificationReport::exact("X", Some(1), &p, &rat(0, 1), &rat(0, 1));
        assert!(r.pass && r.degenerate);
        let r = VerificationReport::exact("X", Some(1), &p, &rat(1, 2), &rat(1, 3));
        assert!(!r.pass && (r.abs_err - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn approx_reports() {
        let p = ParamMap::new();
        let a = rat(1, 3).to_approx(256);
        let b = (rat(1, 3) + rat(1, 10i64.pow(18))).to_approx(256);
        assert!(VerificationReport::approx("X", None, &p, &a, &b, 1e-15).pass);
        assert!(!VerificationReport::approx("X", None, &p, &a, &b, 1e-20).pass);
    }

    #[test]
    fn non_finite_errors_survive_json() {
        let p = ParamMap::new();
        let mut r = VerificationReport::exact("X", Some(1), &p, &rat(1, 2), &rat(1, 3));
        r.rel_err = f64::INFINITY;
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"rel_err\":\"inf\""));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
