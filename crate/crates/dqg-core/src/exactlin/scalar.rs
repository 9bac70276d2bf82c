//! Gaussian rational scalars: complex numbers with rational real and
//! imaginary parts, stored exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// A complex number `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GRat { re, im }
    }

    pub fn zero() -> Self {
        GRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GRat::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        GRat::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        GRat::new(r, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re^2 + im^2`, a nonnegative rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero GRat");
        GRat::new(&self.re / &n, -(&self.im / &n))
    }

    /// Exact square root of a nonnegative rational, if it exists.
    pub fn sqrt_rational(r: &BigRational) -> Option<BigRational> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(BigRational::zero());
        }
        let num = r.numer();
        let den = r.denom();
        let sn = num.sqrt();
        let sd = den.sqrt();
        if &(&sn * &sn) == num && &(&sd * &sd) == den {
            Some(BigRational::new(sn, sd))
        } else {
            None
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        fn conv(r: &BigRational) -> f64 {
            let n = r.numer();
            let d = r.denom();
            // Exact for the magnitudes appearing here; falls back to a
            // quotient of approximations for large operands.
            let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
            let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
            nf / df
        }
        (conv(&self.re), conv(&self.im))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", fmt_rational(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}{}i", fmt_rational(&self.re), fmt_rational(&self.im))
        } else {
            write!(f, "{}+{}i", fmt_rational(&self.re), fmt_rational(&self.im))
        }
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRationalError(pub String);

/// Parse "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    BigRational::from_str(s.trim()).map_err(|_| ParseRationalError(s.to_string()))
}

impl FromStr for GRat {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(GRat::from_rational(parse_rational(s)?))
    }
}

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat::new(-self.re, -self.im)
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for &GRat {
    type Output = GRat;
    fn add(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GRat {
    type Output = GRat;
    fn sub(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GRat {
    type Output = GRat;
    fn mul(self, rhs: &GRat) -> GRat {
        GRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GRat {
    type Output = GRat;
    fn div(self, rhs: &GRat) -> GRat {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GRat {
            type Output = GRat;
            fn $method(self, rhs: GRat) -> GRat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GRat> for GRat {
            type Output = GRat;
            fn $method(self, rhs: &GRat) -> GRat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&GRat> for GRat {
    fn add_assign(&mut self, rhs: &GRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GRat> for GRat {
    fn sub_assign(&mut self, rhs: &GRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GRat> for GRat {
    fn mul_assign(&mut self, rhs: &GRat) {
        let out = (self as &GRat) * rhs;
        *self = out;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trip() {
        let a = GRat::from_ratio(3, 4);
        let b = GRat::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-5), BigInt::from(6)),
        );
        let prod = &a * &b;
        let back = &prod / &a;
        assert_eq!(back, b);
    }

    #[test]
    fn conjugation_and_norm() {
        let z = GRat::new(
            BigRational::new(BigInt::from(2), BigInt::from(3)),
            BigRational::new(BigInt::from(-1), BigInt::from(7)),
        );
        let n = (&z * &z.conj()).re.clone();
        assert_eq!(n, z.norm_sq());
        assert!((&z * &z.conj()).im.is_zero());
    }

    #[test]
    fn rational_sqrt() {
        let r = BigRational::new(BigInt::from(9), BigInt::from(16));
        assert_eq!(
            GRat::sqrt_rational(&r),
            Some(BigRational::new(BigInt::from(3), BigInt::from(4)))
        );
        let nr = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(GRat::sqrt_rational(&nr), None);
        assert_eq!(GRat::sqrt_rational(&-r), None);
    }

    #[test]
    fn parse_and_display() {
        let z: GRat = "-7/2".parse().unwrap();
        assert_eq!(z, GRat::from_ratio(-7, 2));
        assert_eq!(z.to_string(), "-7/2");
        let w = GRat::new(
            BigRational::from_integer(BigInt::from(1)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        assert_eq!(w.to_string(), "1+1/2i");
    }
}
