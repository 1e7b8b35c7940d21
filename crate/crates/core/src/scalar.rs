//! Exact Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `re + im·i` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::new(BigRational::new(BigInt::from(p), BigInt::from(q)), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

pub fn rational_to_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = |msg: &str| Error::Syntax { pos: 0, msg: format!("{msg}: {text:?}") };
    let t = text.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad("bad numerator"))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad("bad denominator"))?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad("bad integer"))?)),
    }
}

/// Exact square root of a nonnegative rational when numerator and denominator are perfect squares.
pub fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let a = Scalar::new(BigRational::new(1.into(), 2.into()), BigRational::one());
        let b = a.conj();
        let p = &a * &b;
        assert!(p.is_real());
        assert_eq!(p.re(), &BigRational::new(5.into(), 4.into()));
        assert_eq!(a.norm_sqr(), BigRational::new(5.into(), 4.into()));
        assert!((&a - &a).is_zero());
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-4").unwrap(), BigRational::from_integer((-4).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn square_roots() {
        let r = BigRational::new(9.into(), 4.into());
        assert_eq!(exact_sqrt(&r), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(exact_sqrt(&BigRational::from_integer(2.into())), None);
    }
}
