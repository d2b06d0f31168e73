//! Exact scalars: rationals and Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseScalarError;

pub type Rational = BigRational;

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseScalarError> {
    let text = text.trim();
    let bad = || ParseScalarError(text.to_string());
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// Formats a rational as `"p/q"` (or `"p"` when integral).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An element of `ℚ(i)`. Equality is exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type Gq = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(rat(num, den), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    pub fn complex(re: i64, im: i64) -> Self {
        Self::new(
            Rational::from_integer(re.into()),
            Rational::from_integer(im.into()),
        )
    }

    pub fn i() -> Self {
        Self::complex(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Multiplies by `i^k`.
    pub fn times_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Self::new(-self.im.clone(), self.re.clone()),
            2 => -self.clone(),
            _ => Self::new(self.im.clone(), -self.re.clone()),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, rhs: &'a Gq) -> Gq {
        Gq::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, rhs: &'a Gq) -> Gq {
        Gq::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, rhs: &'a Gq) -> Gq {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gq::new(&self.re * &rhs.re, Rational::zero());
        }
        Gq::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn div(self, rhs: &'a Gq) -> Gq {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Gq {
            type Output = Gq;
            fn $m(self, rhs: Gq) -> Gq {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Gq> for Gq {
            type Output = Gq;
            fn $m(self, rhs: &'a Gq) -> Gq {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re, -self.im)
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, rhs: &Gq) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, rhs: &Gq) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Gq> for Gq {
    fn mul_assign(&mut self, rhs: &Gq) {
        *self = &*self * rhs;
    }
}

impl Sum for Gq {
    fn sum<I: Iterator<Item = Gq>>(iter: I) -> Gq {
        iter.fold(Gq::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", format_rational(&self.im));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*i",
            format_rational(&self.re),
            sign,
            format_rational(&self.im.abs())
        )
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ParseScalarError;

    /// Accepts `"a"`, `"b*i"`, `"a+b*i"`, `"a-b*i"`, `"i"`, `"-i"` with rational parts.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseScalarError(text.to_string()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Gq::from_rational(parse_rational(&s)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re_part.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_part)?
        };
        Ok(Gq::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        for s in ["3", "-1/2", "1/2+3/4*i", "1/2-3/4*i", "2*i", "-7/3*i"] {
            let z: Gq = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        assert_eq!("i".parse::<Gq>().unwrap(), Gq::i());
        assert_eq!("-i".parse::<Gq>().unwrap(), -Gq::i());
        assert_eq!("4/2".parse::<Gq>().unwrap(), Gq::from_int(2));
        assert!("1/0".parse::<Gq>().is_err());
        assert!("abc".parse::<Gq>().is_err());
    }

    #[test]
    fn field_arithmetic() {
        let a = Gq::complex(1, 2);
        let b = Gq::complex(3, -1);
        assert_eq!(&a * &b, Gq::complex(5, 5));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.conj(), Gq::complex(1, -2));
        assert_eq!(Gq::i().pow(2), Gq::from_int(-1));
        assert_eq!(a.times_i_pow(3), &a * &Gq::i().pow(3));
        assert!(Gq::zero().inv().is_none());
    }
}
