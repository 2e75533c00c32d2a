//! Gaussian-rational scalars: the exact field Q(i) underlying every
//! computation in this crate.
//!
//! A value is `re + im*i` with both parts arbitrary-precision rationals
//! kept in canonical reduced form (num-rational guarantees gcd-reduced
//! numerator/denominator with positive denominator). Values are
//! immutable and all operations are pure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar token `{0}`")]
    Parse(String),
}

/// An element of Q(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// n/d as a real rational. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
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

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|^2 = re^2 + im^2, a nonnegative rational.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self {
            re: &self.re / &n,
            im: -&self.im / n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.checked_inv()?)
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical token syntax: `a/b`, `c/d*i`, `a/b+c/d*i` (signs allowed,
/// `/b` omitted for integers, bare `i` means `0+1i`). Round-trip through
/// `to_string`/`parse` is the identity bit for bit.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let imag_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", rational_str(im))
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", rational_str(&self.re))
        } else if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", imag_part(&-self.im.clone()))
            } else {
                write!(f, "{}", imag_part(&self.im))
            }
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(
                f,
                "{}{}{}",
                rational_str(&self.re),
                sign,
                imag_part(&self.im.abs())
            )
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl FromStr for GaussianRational {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(err());
        }
        // split into at most two signed parts
        let mut parts: Vec<(i32, &str)> = Vec::new();
        let mut start = 0;
        let mut i = 0;
        let mut sign = 1;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && i > start {
                parts.push((sign, &s[start..i]));
                sign = if c == '-' { -1 } else { 1 };
                start = i + 1;
            } else if (c == '+' || c == '-') && i == start {
                if c == '-' {
                    sign = -sign;
                }
                start = i + 1;
            }
            i += 1;
        }
        if start >= bytes.len() {
            return Err(err());
        }
        parts.push((sign, &s[start..]));
        if parts.len() > 2 {
            return Err(err());
        }

        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        for (sg, body) in parts {
            let sg = BigRational::from_integer(BigInt::from(sg));
            if body == "i" {
                if im.is_some() {
                    return Err(err());
                }
                im = Some(sg);
            } else if let Some(coef) = body.strip_suffix("*i").or_else(|| body.strip_suffix('i')) {
                if coef.is_empty() || im.is_some() {
                    return Err(err());
                }
                im = Some(sg * parse_rational(coef).ok_or_else(err)?);
            } else {
                if re.is_some() {
                    return Err(err());
                }
                re = Some(sg * parse_rational(body).ok_or_else(err)?);
            }
        }
        Ok(GaussianRational {
            re: re.unwrap_or_else(BigRational::zero),
            im: im.unwrap_or_else(BigRational::zero),
        })
    }
}
