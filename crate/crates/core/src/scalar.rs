//! The two arithmetic domains: exact Gaussian rationals and multiprecision
//! complex floats.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigfloat::{BigFloat, MIN_PREC};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

/// Field operations shared by both domains.
///
/// Constants are produced "like" an existing value so approximate arithmetic
/// can inherit the working precision.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const MODE: Mode;

    fn from_exact_like(&self, x: &ExactScalar) -> Self;
    fn is_zero(&self) -> bool;
    /// `log2 |x|`; `-inf` at zero.
    fn log2_abs(&self) -> f64;
    fn conj(&self) -> Self;

    fn from_i64_like(&self, v: i64) -> Self {
        self.from_exact_like(&ExactScalar::from_i64(v))
    }
    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }
    fn zero_like(&self) -> Self {
        self.from_i64_like(0)
    }
    fn abs_f64(&self) -> f64 {
        self.log2_abs().exp2()
    }
    fn inv(&self) -> Self {
        self.one_like() / self
    }
    fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.one_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(BigRational::new(n.into(), d.into()))
    }

    pub fn gauss(rn: i64, rd: i64, in_: i64, id: i64) -> Self {
        Self::new(BigRational::new(rn.into(), rd.into()), BigRational::new(in_.into(), id.into()))
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|x|^2 < 1`, decided exactly.
    pub fn in_unit_disk(&self) -> bool {
        self.norm_sqr() < BigRational::one()
    }

    pub fn to_approx(&self, prec: u32) -> ApproxScalar {
        ApproxScalar::new(BigFloat::from_ratio(&self.re, prec), BigFloat::from_ratio(&self.im, prec))
    }
}

fn ratio_log2(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    BigFloat::from_ratio(r, 64).log2_abs()
}

impl Scalar for ExactScalar {
    const MODE: Mode = Mode::Exact;

    fn from_exact_like(&self, x: &ExactScalar) -> Self {
        x.clone()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn log2_abs(&self) -> f64 {
        ratio_log2(&self.norm_sqr()) / 2.0
    }
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }
}

impl Add<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar::new(self.re + &o.re, self.im + &o.im)
    }
}

impl Sub<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar::new(self.re - &o.re, self.im - &o.im)
    }
}

impl Mul<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return ExactScalar::real(self.re * &o.re);
        }
        ExactScalar::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Div<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn div(self, o: &ExactScalar) -> ExactScalar {
        assert!(!o.is_zero(), "exact division by zero");
        if o.im.is_zero() {
            return ExactScalar::new(self.re / &o.re, self.im / &o.re);
        }
        let n = o.norm_sqr();
        let re = (&self.re * &o.re + &self.im * &o.im) / &n;
        let im = (&self.im * &o.re - &self.re * &o.im) / &n;
        ExactScalar::new(re, im)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.re, -self.im)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Literal form `p/q`, `r/s*i` or `p/q+r/s*i`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_ratio(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*i", fmt_ratio(&self.re), sign, fmt_ratio(&self.im.abs()))
            }
        }
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((w, frac)) = s.split_once('.') {
        // Finite decimals are exact rationals.
        let neg = w.trim_start().starts_with('-');
        let w = w.trim().trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || !w.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{}{}", if w.is_empty() { "0" } else { w }, frac).parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(digits, den);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

fn parse_imag(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let body = s.strip_suffix('i')?.trim_end();
    let body = body.strip_suffix('*').unwrap_or(body).trim_end();
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_ratio(body),
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid literal {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if !t.ends_with('i') {
            return parse_ratio(&t).map(Self::real).ok_or_else(bad);
        }
        // Split at the last sign that is not the leading one.
        let split = t.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        match split {
            Some(i) => {
                let re = parse_ratio(&t[..i]).ok_or_else(bad)?;
                let im = parse_imag(&t[i..]).ok_or_else(bad)?;
                Ok(Self::new(re, im))
            }
            None => parse_imag(&t).map(|im| Self::new(BigRational::zero(), im)).ok_or_else(bad),
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Complex number with multiprecision parts.
#[derive(Clone, Debug)]
pub struct ApproxScalar {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ApproxScalar {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().min(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    /// `e^{i t}` for real `t`.
    pub fn cis(t: &BigFloat) -> Self {
        let (c, s) = t.cos_sin();
        Self::new(c, s)
    }

    pub fn scale(&self, r: &BigFloat) -> Self {
        Self::new(self.re.mul(r), self.im.mul(r))
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering with `digits` significant digits per part.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.im.is_zero() {
            return self.re.to_sci_string(digits);
        }
        let im = self.im.to_sci_string(digits);
        let (sign, im) = match im.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("+", im),
        };
        format!("{}{}{}*i", self.re.to_sci_string(digits), sign, im)
    }

    /// Relative distance `|a - b| / max(|a|, |b|)`, or the absolute distance
    /// if both are zero-ish.
    pub fn rel_diff(&self, o: &Self) -> f64 {
        let d = (self.clone() - o).log2_abs();
        let m = self.log2_abs().max(o.log2_abs());
        if m == f64::NEG_INFINITY {
            return d.exp2();
        }
        (d - m).exp2()
    }
}

impl Scalar for ApproxScalar {
    const MODE: Mode = Mode::Approx;

    fn from_exact_like(&self, x: &ExactScalar) -> Self {
        x.to_approx(self.prec().max(MIN_PREC))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn log2_abs(&self) -> f64 {
        let (a, b) = (self.re.log2_abs(), self.im.log2_abs());
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2.0 * (lo - hi)).exp2()).log2()
    }
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }
}

impl Add<&ApproxScalar> for ApproxScalar {
    type Output = ApproxScalar;
    fn add(self, o: &ApproxScalar) -> ApproxScalar {
        ApproxScalar::new(self.re.add(&o.re), self.im.add(&o.im))
    }
}

impl Sub<&ApproxScalar> for ApproxScalar {
    type Output = ApproxScalar;
    fn sub(self, o: &ApproxScalar) -> ApproxScalar {
        ApproxScalar::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
}

impl Mul<&ApproxScalar> for ApproxScalar {
    type Output = ApproxScalar;
    fn mul(self, o: &ApproxScalar) -> ApproxScalar {
        if self.im.is_zero() && o.im.is_zero() {
            let p = self.prec().min(o.prec());
            return ApproxScalar::new(self.re.mul(&o.re), BigFloat::zero(p));
        }
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ApproxScalar::new(re, im)
    }
}

impl Div<&ApproxScalar> for ApproxScalar {
    type Output = ApproxScalar;
    fn div(self, o: &ApproxScalar) -> ApproxScalar {
        assert!(!o.is_zero(), "division by zero");
        if o.im.is_zero() {
            return ApproxScalar::new(self.re.div(&o.re), self.im.div(&o.re));
        }
        let n = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&n);
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&n);
        ApproxScalar::new(re, im)
    }
}

impl Neg for ApproxScalar {
    type Output = ApproxScalar;
    fn neg(self) -> ApproxScalar {
        ApproxScalar::new(self.re.neg(), self.im.neg())
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec() as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_decimal(digits))
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                self * &o
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                self / &o
            }
        }
    };
}

owned_ops!(ExactScalar);
owned_ops!(ApproxScalar);

/// A scalar whose domain is only known at run time.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(ExactScalar),
    Approx(ApproxScalar),
}

impl Value {
    pub fn mode(&self) -> Mode {
        match self {
            Value::Exact(_) => Mode::Exact,
            Value::Approx(_) => Mode::Approx,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(x) => fmt::Display::fmt(x, f),
            Value::Approx(x) => fmt::Display::fmt(x, f),
        }
    }
}

/// Lift a value that is exact by construction into `S`.
pub fn lift<S: Scalar>(like: &S, x: &ExactScalar) -> S {
    like.from_exact_like(x)
}

/// True iff `x` is a nonzero exact rational real number.
pub fn is_rational_real(x: &ExactScalar) -> bool {
    x.im.is_zero() && !x.re.is_zero()
}

/// Integer ratio helper for tests and catalog construction.
pub fn rat(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        for s in ["3/4", "-2", "1/2*i", "-1/3*i", "3/4-1/2*i", "-5+7/9*i", "0"] {
            let x: ExactScalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s, "{s}");
        }
    }

    #[test]
    fn literal_aliases() {
        assert_eq!("i".parse::<ExactScalar>().unwrap(), ExactScalar::i());
        assert_eq!("-i".parse::<ExactScalar>().unwrap(), -ExactScalar::i());
        assert_eq!("1/2 + i".parse::<ExactScalar>().unwrap(), ExactScalar::gauss(1, 2, 1, 1));
        assert_eq!("0.25".parse::<ExactScalar>().unwrap(), rat(1, 4));
        assert_eq!("-0.5".parse::<ExactScalar>().unwrap(), rat(-1, 2));
        assert_eq!("6/8".parse::<ExactScalar>().unwrap(), rat(3, 4));
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("abc".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn gaussian_division() {
        let a = ExactScalar::gauss(1, 2, 3, 4);
        let b = ExactScalar::gauss(-2, 3, 1, 5);
        assert_eq!((a.clone() / &b) * &b, a);
    }

    #[test]
    fn approx_matches_exact() {
        let a = ExactScalar::gauss(1, 3, -2, 7);
        let b = ExactScalar::gauss(5, 11, 1, 2);
        let e = (a.clone() * &b) / (a.clone() + &b);
        let (x, y) = (a.to_approx(200), b.to_approx(200));
        let r = (x.clone() * &y) / (x + &y);
        assert!(r.rel_diff(&e.to_approx(200)) < 1e-58);
    }

    #[test]
    fn precision_is_minimum_of_operands() {
        let a = ApproxScalar::from_f64(0.5, 0.0, 100);
        let b = ApproxScalar::from_f64(0.25, 1.0, 300);
        assert_eq!((a * &b).prec(), 100);
    }

    #[test]
    fn powi_negative() {
        let x = rat(2, 3);
        assert_eq!(x.powi(-3), rat(27, 8));
        assert_eq!(x.powi(0), rat(1, 1));
    }
}
