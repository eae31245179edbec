//! Binary floating point with arbitrary precision.
//!
//! A value is `mant * 2^exp` where `mant` carries exactly `prec` significant
//! bits (or is zero). Every operation rounds to nearest at the smaller of
//! its operands' precisions, so the first low-precision input caps the whole
//! computation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Smallest precision accepted anywhere in approximate mode.
pub const MIN_PREC: u32 = 64;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        Self { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::normalize(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: BigInt, prec: u32) -> Self {
        Self::normalize(v, 0, prec)
    }

    /// `mant * 2^exp` rounded to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        Self::normalize(mant, exp, prec)
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        Self::div_ints(r.numer(), r.denom(), prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Self::normalize(BigInt::from(m) * sign, e, prec)
    }

    fn div_ints(n: &BigInt, d: &BigInt, prec: u32) -> Self {
        assert!(!d.is_zero(), "division by zero");
        if n.is_zero() {
            return Self::zero(prec);
        }
        let s = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (q, r) = if s >= 0 {
            let num: BigInt = n << (s as usize);
            (&num / d, &num % d)
        } else {
            let den: BigInt = d << ((-s) as usize);
            (n / &den, n % &den)
        };
        // A sticky bit keeps round-to-nearest honest after truncating division.
        let sticky = if r.is_zero() { 0 } else { 1 };
        let q = (q << 1usize) + BigInt::from(sticky) * q_sign(n, d);
        Self::normalize(q, -s - 1, prec)
    }

    fn normalize(m: BigInt, e: i64, prec: u32) -> Self {
        if m.is_zero() {
            return Self::zero(prec);
        }
        let p = prec as i64;
        let bits = m.bits() as i64;
        let (sign, mag) = (m.sign(), m.magnitude().clone());
        match bits.cmp(&p) {
            Ordering::Equal => Self { mant: m, exp: e, prec },
            Ordering::Less => {
                let sh = (p - bits) as usize;
                Self { mant: BigInt::from_biguint(sign, mag << sh), exp: e - sh as i64, prec }
            }
            Ordering::Greater => {
                let sh = (bits - p) as usize;
                let mut r: BigUint = (mag >> (sh - 1)) + 1u32;
                r >>= 1usize;
                let mut exp = e + sh as i64;
                if r.bits() as i64 > p {
                    r >>= 1usize;
                    exp += 1;
                }
                Self { mant: BigInt::from_biguint(sign, r), exp, prec }
            }
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::normalize(self.mant.clone(), self.exp, prec)
    }

    pub fn neg(&self) -> Self {
        Self { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Exponent of the leading bit plus one, i.e. `|x|` lies in `[2^(t-1), 2^t)`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        if self.is_zero() {
            return o.with_prec(p);
        }
        if o.is_zero() {
            return self.with_prec(p);
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        // `lo` is far below half an ulp of the result: it cannot change rounding
        // except at exact ties, which a sticky nudge would only perturb by < 1 ulp.
        if hi.top() - lo.top() > p as i64 + 3 {
            return hi.with_prec(p);
        }
        let d = (hi.exp - lo.exp) as usize;
        let m = (&hi.mant << d) + &lo.mant;
        Self::normalize(m, lo.exp, p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        Self::normalize(&self.mant * &o.mant, self.exp + o.exp, p)
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        if self.is_zero() {
            return Self::zero(p);
        }
        let q = Self::div_ints(&self.mant, &o.mant, p);
        Self { exp: q.exp + self.exp - o.exp, ..q }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let p = self.prec as i64;
        // Scale the mantissa to about 2p+4 bits with an even exponent.
        let mut k = 2 * p + 4 - self.mant.bits() as i64;
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let m: BigInt = if k >= 0 { &self.mant << k as usize } else { &self.mant >> (-k) as usize };
        let r = m.sqrt();
        let sticky = if &r * &r == m { 0 } else { 1 };
        Self::normalize((r << 1usize) + sticky, (self.exp - k) / 2 - 1, self.prec)
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        let d = self.sub(o);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// `log2 |x|`, or `-inf` for zero. Never under- or overflows.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits() as i64;
        let sh = (bits - 60).max(0) as usize;
        let lead = (self.mant.magnitude() >> sh).to_f64().unwrap_or(1.0);
        lead.log2() + (self.exp + sh as i64) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let sh = (bits - 64).max(0) as usize;
        let lead = (&self.mant >> sh).to_f64().unwrap_or(0.0);
        let e = self.exp + sh as i64;
        if e > 2000 {
            return lead.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Split the scaling so intermediate powers stay finite.
        let half = e / 2;
        lead * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Exact rational value of this float.
    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let mag = self.mant.magnitude();
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let k = digits as i64 - 1 - e10;
            let mut num = mag.clone();
            let mut den = BigUint::one();
            if self.exp >= 0 {
                num <<= self.exp as usize;
            } else {
                den <<= (-self.exp) as usize;
            }
            let ten = BigUint::from(10u32);
            if k >= 0 {
                num *= num_traits::pow(ten, k as usize);
            } else {
                den *= num_traits::pow(ten, (-k) as usize);
            }
            let n = (num * 2u32 + &den) / (den * 2u32);
            let s = n.to_string();
            match s.len().cmp(&digits) {
                Ordering::Greater => e10 += 1,
                Ordering::Less => e10 -= 1,
                Ordering::Equal => {
                    let frac = &s[1..];
                    return if frac.is_empty() {
                        format!("{sign}{}e{e10}", &s[..1])
                    } else {
                        format!("{sign}{}.{}e{e10}", &s[..1], frac)
                    };
                }
            }
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let sh = (-self.exp) as usize;
        let mag = self.mant.magnitude();
        let r: BigUint = ((mag >> (sh - 1)) + 1u32) >> 1usize;
        let sign = if r.is_zero() { Sign::NoSign } else { self.mant.sign() };
        BigInt::from_biguint(sign, r)
    }

    pub fn pi(prec: u32) -> Self {
        let w = prec as usize + 32;
        let atan_inv = |x: u32| -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut term: BigInt = (BigInt::one() << w) / x;
            let mut sum = term.clone();
            let mut k = 1u64;
            while !term.is_zero() {
                term /= &x2;
                let t = &term / (2 * k + 1);
                if k % 2 == 1 {
                    sum -= t;
                } else {
                    sum += t;
                }
                k += 1;
            }
            sum
        };
        let v = atan_inv(5) * 16 - atan_inv(239) * 4;
        Self::normalize(v, -(w as i64), prec)
    }

    /// `(cos x, sin x)` for moderate `|x|`.
    pub fn cos_sin(&self) -> (Self, Self) {
        let p = self.prec;
        let w = p + 48;
        let r: i64 = 12;
        let y = self.with_prec(w).mul_pow2(-r);
        let y2 = y.mul(&y);
        let one = Self::from_i64(1, w);
        let tiny = -(w as f64) - 4.0;
        let (mut c, mut s) = (one.clone(), y.clone());
        let mut tc = one.clone();
        let mut ts = y.clone();
        let mut k: i64 = 1;
        loop {
            tc = tc.mul(&y2).div(&Self::from_i64(-(2 * k - 1) * (2 * k), w));
            ts = ts.mul(&y2).div(&Self::from_i64(-(2 * k) * (2 * k + 1), w));
            c = c.add(&tc);
            s = s.add(&ts);
            if tc.log2_abs() < tiny && ts.log2_abs() < tiny {
                break;
            }
            k += 1;
        }
        for _ in 0..r {
            let s2 = s.mul(&c).mul_pow2(1);
            c = c.mul(&c).mul_pow2(1).sub(&one);
            s = s2;
        }
        (c.with_prec(p), s.with_prec(p))
    }
}

fn q_sign(n: &BigInt, d: &BigInt) -> BigInt {
    if n.is_negative() != d.is_negative() {
        BigInt::from(-1)
    } else {
        BigInt::one()
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_sci_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: f64) -> BigFloat {
        BigFloat::from_f64(v, 128)
    }

    #[test]
    fn basic_arithmetic_matches_f64() {
        let (a, b) = (bf(1.25), bf(-3.5));
        assert_eq!(a.add(&b).to_f64(), -2.25);
        assert_eq!(a.mul(&b).to_f64(), -4.375);
        assert_eq!(b.div(&a).to_f64(), -2.8);
        assert_eq!(bf(2.25).sqrt().to_f64(), 1.5);
        assert_eq!(a.sub(&a).to_f64(), 0.0);
    }

    #[test]
    fn division_round_trips() {
        let one = BigFloat::from_i64(1, 256);
        let three = BigFloat::from_i64(3, 256);
        let x = one.div(&three).mul(&three);
        let err = x.sub(&one).log2_abs();
        assert!(err < -250.0, "err 2^{err}");
    }

    #[test]
    fn pi_digits() {
        let pi = BigFloat::pi(200);
        assert_eq!(pi.to_sci_string(40), "3.141592653589793238462643383279502884197e0");
    }

    #[test]
    fn cos_sin_identities() {
        let x = BigFloat::from_ratio(&BigRational::new(7.into(), 3.into()), 256);
        let (c, s) = x.cos_sin();
        let one = c.mul(&c).add(&s.mul(&s));
        assert!(one.sub(&BigFloat::from_i64(1, 256)).log2_abs() < -240.0);
        assert!((c.to_f64() - (7.0f64 / 3.0).cos()).abs() < 1e-15);
        assert!((s.to_f64() - (7.0f64 / 3.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(bf(0.00125).to_sci_string(3), "1.25e-3");
        assert_eq!(bf(-9.999).to_sci_string(2), "-1.0e1");
        assert_eq!(bf(7.0).to_sci_string(1), "7e0");
    }

    #[test]
    fn sqrt_two_squared() {
        let two = BigFloat::from_i64(2, 300);
        let r = two.sqrt();
        assert!(r.mul(&r).sub(&two).log2_abs() < -295.0);
    }

    #[test]
    fn rounding_carry_keeps_precision() {
        // 2^64 - 1 rounded to 8 bits carries into a new leading bit.
        let x = BigFloat::from_bigint((BigInt::one() << 64usize) - 1, 8);
        assert_eq!(x.to_ratio(), BigRational::from_integer(BigInt::one() << 64usize));
        assert_eq!(x.mant.bits(), 8);
    }
}
