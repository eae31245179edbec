//! Power series truncated at a fixed order.

use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `c_0 + c_1 t + ... + c_T t^T`; every operation drops terms beyond `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesTrunc<S> {
    pub coeffs: Vec<S>,
    pub order: usize,
}

impl<S: Scalar> PowerSeriesTrunc<S> {
    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<S>, order: usize, like: &S) -> Self {
        coeffs.resize(order + 1, like.zero_like());
        Self { coeffs, order }
    }

    pub fn one(order: usize, like: &S) -> Self {
        Self::new(vec![like.one_like()], order, like)
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect(), order: self.order }
    }

    /// `f(t) -> f(s t^m)`.
    pub fn substitute(&self, s: &S, m: usize) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        let zero = s.zero_like();
        let mut out = vec![zero; self.order + 1];
        let mut sk = s.one_like();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * m > self.order {
                break;
            }
            out[k * m] = c.clone() * &sk;
            sk = sk * s;
        }
        Self { coeffs: out, order: self.order }
    }

    /// `t^m f(t)`.
    pub fn shift(&self, m: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.order + 1];
        for k in m..=self.order {
            out[k] = self.coeffs[k - m].clone();
        }
        Self { coeffs: out, order: self.order }
    }

    /// Reciprocal; the constant term must be nonzero.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::pole(0, "constant term of the divisor vanishes"));
        }
        let inv0 = c0.inv();
        let mut out = vec![inv0.clone()];
        for k in 1..=self.order {
            let mut acc = c0.zero_like();
            for j in 1..=k {
                acc = acc + &(self.coeffs[j].clone() * &out[k - j]);
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: out, order: self.order })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.recip()?)
    }
}

impl<S: Scalar> Mul for &PowerSeriesTrunc<S> {
    type Output = PowerSeriesTrunc<S>;

    fn mul(self, o: &PowerSeriesTrunc<S>) -> PowerSeriesTrunc<S> {
        let order = self.order.min(o.order);
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        PowerSeriesTrunc { coeffs: out, order }
    }
}

impl<S: Scalar> Add for &PowerSeriesTrunc<S> {
    type Output = PowerSeriesTrunc<S>;

    fn add(self, o: &PowerSeriesTrunc<S>) -> PowerSeriesTrunc<S> {
        let order = self.order.min(o.order);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).take(order + 1).map(|(a, b)| a.clone() + b).collect();
        PowerSeriesTrunc { coeffs, order }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ExactScalar};

    fn ps(v: &[i64], order: usize) -> PowerSeriesTrunc<ExactScalar> {
        PowerSeriesTrunc::new(v.iter().map(|&x| rat(x, 1)).collect(), order, &rat(0, 1))
    }

    #[test]
    fn geometric_series_inverts_one_minus_t() {
        let g = ps(&[1, -1], 6).recip().unwrap();
        assert_eq!(g, ps(&[1; 7], 6));
        assert_eq!(&g * &ps(&[1, -1], 6), PowerSeriesTrunc::one(6, &rat(0, 1)));
    }

    #[test]
    fn substitution_and_shift() {
        let g = ps(&[1; 7], 6).substitute(&rat(2, 1), 2);
        assert_eq!(g, ps(&[1, 0, 2, 0, 4, 0, 8], 6));
        assert_eq!(ps(&[1, 2, 3], 3).shift(2), ps(&[0, 0, 1, 2], 3));
    }

    #[test]
    fn zero_constant_term_has_no_inverse() {
        assert!(ps(&[0, 1], 4).recip().is_err());
    }
}
