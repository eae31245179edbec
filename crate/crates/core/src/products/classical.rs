//! Classical hypergeometric product formulas that the base-`q` products
//! reduce to as `q -> 1`, checked directly in the classical setting.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{ParamMap, VerificationReport};
use crate::scalar::{ApproxScalar, ExactScalar};
use crate::series::eval_rfs;

type X = ExactScalar;

/// Tolerance of the classical checks.
pub const CLASSICAL_EPS: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassicalLimit {
    /// `2F1(a, b; a+b+1/2; z)² = 3F2(2a, 2b, a+b; a+b+1/2, 2a+2b; z)`.
    Clausen,
    /// `2F1(a, b; a+b-1/2; z) 2F1(a, b; a+b+1/2; z)
    ///  = 3F2(2a, 2b, a+b; 2a+2b-1, a+b+1/2; z)`.
    OrrA,
    /// `2F1(a, b; a+b-1/2; z) 2F1(a, b-1; a+b-1/2; z)
    ///  = 3F2(2a, 2b-1, a+b-1; 2a+2b-2, a+b-1/2; z)`.
    OrrB,
    /// `1F1(a; 2a; z) 1F1(b; 2b; -z)
    ///  = 2F3((a+b)/2, (a+b+1)/2; a+1/2, b+1/2, a+b; z²/4)`.
    Bailey211,
    /// `2F1(a, b; a+b+1/2; z) 2F1(a+1, b+1; a+b+3/2; z)
    ///  = 3F2(2a+1, 2b+1, a+b+1; 2a+2b+1, a+b+3/2; z)`.
    Cor3F2,
}

impl ClassicalLimit {
    pub const ALL: [ClassicalLimit; 5] =
        [ClassicalLimit::Clausen, ClassicalLimit::OrrA, ClassicalLimit::OrrB, ClassicalLimit::Bailey211, ClassicalLimit::Cor3F2];

    pub fn name(&self) -> &'static str {
        match self {
            ClassicalLimit::Clausen => "CLAUSEN",
            ClassicalLimit::OrrA => "ORR_A",
            ClassicalLimit::OrrB => "ORR_B",
            ClassicalLimit::Bailey211 => "BAILEY_211",
            ClassicalLimit::Cor3F2 => "COR_3F2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn description(&self) -> &'static str {
        match self {
            ClassicalLimit::Clausen => "Clausen's formula for the square of a 2F1",
            ClassicalLimit::OrrA => "Orr's product of 2F1 with denominators a+b-1/2 and a+b+1/2",
            ClassicalLimit::OrrB => "Orr's product of 2F1 with b and b-1 over a+b-1/2",
            ClassicalLimit::Bailey211 => "Bailey's product of two 1F1 as a 2F3 in z²/4",
            ClassicalLimit::Cor3F2 => "product of 2F1 with shifted parameters as a single 3F2",
        }
    }
}

/// Both sides of the classical formula at `(a, b, z)`, at `prec` bits.
fn sides(which: ClassicalLimit, a: &X, b: &X, z: &X, prec: u32) -> Result<(ApproxScalar, ApproxScalar)> {
    let r = |n: i64, d: i64| X::ratio(n, d);
    let ap = |x: X| x.to_approx(prec);
    let eps = 1e-40;
    let f = |up: Vec<X>, lo: Vec<X>, arg: &X| {
        let up: Vec<_> = up.into_iter().map(ap).collect();
        let lo: Vec<_> = lo.into_iter().map(ap).collect();
        eval_rfs(&up, &lo, &ap(arg.clone()), eps)
    };
    let s = a.clone() + b;
    let two = r(2, 1);
    let half = r(1, 2);
    let one = r(1, 1);
    Ok(match which {
        ClassicalLimit::Clausen => {
            let l = f(vec![a.clone(), b.clone()], vec![s.clone() + &half], z)?;
            let rhs = f(vec![two.clone() * a, two.clone() * b, s.clone()], vec![s.clone() + &half, two.clone() * &s], z)?;
            (l.clone() * &l, rhs)
        }
        ClassicalLimit::OrrA => {
            let l1 = f(vec![a.clone(), b.clone()], vec![s.clone() - &half], z)?;
            let l2 = f(vec![a.clone(), b.clone()], vec![s.clone() + &half], z)?;
            let rhs = f(vec![two.clone() * a, two.clone() * b, s.clone()], vec![two.clone() * &s - &one, s.clone() + &half], z)?;
            (l1 * &l2, rhs)
        }
        ClassicalLimit::OrrB => {
            let l1 = f(vec![a.clone(), b.clone()], vec![s.clone() - &half], z)?;
            let l2 = f(vec![a.clone(), b.clone() - &one], vec![s.clone() - &half], z)?;
            let rhs = f(
                vec![two.clone() * a, two.clone() * b - &one, s.clone() - &one],
                vec![two.clone() * &s - &two, s.clone() - &half],
                z,
            )?;
            (l1 * &l2, rhs)
        }
        ClassicalLimit::Bailey211 => {
            let l1 = f(vec![a.clone()], vec![two.clone() * a], z)?;
            let l2 = f(vec![b.clone()], vec![two.clone() * b], &-z.clone())?;
            let rhs = f(
                vec![s.clone() * &half, (s.clone() + &one) * &half],
                vec![a.clone() + &half, b.clone() + &half, s.clone()],
                &(z.clone() * z * &r(1, 4)),
            )?;
            (l1 * &l2, rhs)
        }
        ClassicalLimit::Cor3F2 => {
            let l1 = f(vec![a.clone(), b.clone()], vec![s.clone() + &half], z)?;
            let l2 = f(vec![a.clone() + &one, b.clone() + &one], vec![s.clone() + &r(3, 2)], z)?;
            let rhs = f(
                vec![two.clone() * a + &one, two.clone() * b + &one, s.clone() + &one],
                vec![two.clone() * &s + &one, s.clone() + &r(3, 2)],
                z,
            )?;
            (l1 * &l2, rhs)
        }
    })
}

/// Compares the two sides within [`CLASSICAL_EPS`]; requires real `a, b`
/// and `|z| <= 1/2`.
pub fn classical_limit_check(which: ClassicalLimit, a: &X, b: &X, z: &X) -> Result<VerificationReport> {
    if !a.is_real() || !b.is_real() {
        return Err(Error::DomainError("classical parameters must be real".into()));
    }
    if z.norm_sqr() > X::ratio(1, 4).re {
        return Err(Error::DivergenceError("|z| <= 1/2 required".into()));
    }
    let (lhs, rhs) = sides(which, a, b, z, 256)?;
    let pm: ParamMap = [("a", a), ("b", b), ("z", z)].iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect();
    Ok(VerificationReport::approx(which.name(), None, &pm, &lhs, &rhs, CLASSICAL_EPS))
}

/// Deterministic points: positive rational `a, b <= 6` and real `|z| <= 2/5`.
pub fn sweep_classical(which: ClassicalLimit, trials: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    (0..trials)
        .map(|i| {
            let mut rng = crate::identities::point_rng(seed, i as u64);
            let a = X::ratio(rng.gen_range(1..=12), rng.gen_range(2..=8));
            let b = X::ratio(rng.gen_range(1..=12), rng.gen_range(2..=8));
            let z = X::ratio(rng.gen_range(-4..=4), 10);
            classical_limit_check(which, &a, &b, &z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn all_limits_at_sample_points() {
        for which in ClassicalLimit::ALL {
            for (a, b, z) in [(rat(1, 3), rat(1, 4), rat(1, 5)), (rat(1, 2), rat(1, 3), rat(1, 4)), (rat(2, 3), rat(5, 4), rat(-1, 3))] {
                let r = classical_limit_check(which, &a, &b, &z).unwrap();
                assert!(r.pass, "{which:?} {} vs {}", r.lhs, r.rhs);
            }
            let r = classical_limit_check(which, &rat(1, 3), &rat(1, 4), &rat(0, 1)).unwrap();
            assert!(r.pass && r.lhs.starts_with('1'));
        }
    }

    #[test]
    fn classical_domain() {
        assert!(classical_limit_check(ClassicalLimit::Clausen, &rat(1, 3), &rat(1, 4), &rat(2, 3)).is_err());
        // 2a + 2b = -1 puts a zero lower parameter in the Clausen 3F2.
        assert!(matches!(
            classical_limit_check(ClassicalLimit::Clausen, &rat(-1, 4), &rat(-1, 4), &rat(1, 5)),
            Err(Error::PoleError { .. })
        ));
    }
}
