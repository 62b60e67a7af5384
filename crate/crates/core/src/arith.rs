//! Exact scalars: arbitrary-precision integers and rationals.
//!
//! Both types are thin newtypes over `num-bigint`/`num-rational`. The wrappers
//! pin down the canonical text format and the error behavior the rest of the
//! crate relies on (no panicking division, normalized rationals).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer (sign-magnitude, little-endian limbs).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Integer(BigInt);

impl Integer {
    pub fn zero() -> Self {
        Integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Integer(BigInt::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Integer(BigInt::from(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Magnitude as little-endian 64-bit limbs; empty for zero.
    pub fn limbs(&self) -> Vec<u64> {
        if self.is_zero() {
            Vec::new()
        } else {
            self.0.magnitude().to_u64_digits()
        }
    }

    pub fn abs(&self) -> Self {
        Integer(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Integer(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Exact quotient `self / rhs`; fails unless `rhs` divides `self`.
    pub fn divexact(&self, rhs: &Integer) -> Result<Integer> {
        if rhs.is_zero() {
            return Err(Error::InexactDivision);
        }
        let (q, r) = self.0.div_rem(&rhs.0);
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(Integer(q))
    }

    /// Nonnegative gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Integer) -> Integer {
        Integer(self.0.gcd(&rhs.0))
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::from_i64(v)
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer(v)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Integer {
    type Err = Error;

    /// Decimal digits with an optional leading `-`. A leading `+` is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidNumber(s.to_string()));
        }
        BigInt::from_str(s)
            .map(Integer)
            .map_err(|_| Error::InvalidNumber(s.to_string()))
    }
}

/// Exact rational number, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_integer(v: Integer) -> Self {
        Rational(BigRational::from_integer(v.0))
    }

    /// `num/den`, normalized. Fails on a zero denominator.
    pub fn new(num: Integer, den: Integer) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.0, den.0)))
    }

    pub fn numer(&self) -> Integer {
        Integer(self.0.numer().clone())
    }

    pub fn denom(&self) -> Integer {
        Integer(self.0.denom().clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn div(&self, rhs: &Rational) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Checks the normalization invariant; used by tests.
    pub fn is_normalized(&self) -> bool {
        let (n, d) = (self.0.numer(), self.0.denom());
        d.is_positive() && n.gcd(d).is_one() && (!n.is_zero() || d.is_one())
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i64(v)
    }
}

impl From<Integer> for Rational {
    fn from(v: Integer) -> Self {
        Rational::from_integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// `"p"` or `"p/q"`; `q` must be a nonzero unsigned integer.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            None => Ok(Rational::from_integer(s.parse()?)),
            Some((n, d)) => {
                if d.starts_with('-') {
                    return Err(Error::InvalidNumber(s.to_string()));
                }
                let num: Integer = n.parse()?;
                let den: Integer = d.parse()?;
                Rational::new(num, den)
            }
        }
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Integer, Add, add);
forward_binop!(Integer, Sub, sub);
forward_binop!(Integer, Mul, mul);
forward_binop!(Rational, Add, add);
forward_binop!(Rational, Sub, sub);
forward_binop!(Rational, Mul, mul);

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        Integer(-self.0)
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        Integer(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(s: &str) -> Integer {
        s.parse().unwrap()
    }

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_is_nonnegative() {
        assert_eq!(int("12").gcd(&int("-18")), int("6"));
        assert_eq!(int("0").gcd(&int("0")), int("0"));
        assert_eq!(int("-7").gcd(&int("0")), int("7"));
    }

    #[test]
    fn zero_plus_zero() {
        let z = &Integer::zero() + &Integer::zero();
        assert_eq!(z.signum(), 0);
        assert!(z.limbs().is_empty());
    }

    #[test]
    fn big_power_round_trips() {
        // 2^70 by repeated doubling, independent of pow()
        let mut p = Integer::one();
        for _ in 0..70 {
            p = &p + &p;
        }
        let sq = &p * &p;
        let mut q = Integer::one();
        for _ in 0..140 {
            q = &q + &q;
        }
        assert_eq!(sq, q);
        assert_eq!(sq.to_string(), "1393796574908163946345982392040522594123776");
        assert_eq!(sq.to_string().parse::<Integer>().unwrap(), sq);
        let limbs = sq.limbs();
        assert_eq!(limbs.len(), 3);
        assert_eq!(*limbs.last().unwrap(), 1u64 << (140 - 128));
    }

    #[test]
    fn divexact_errors() {
        assert_eq!(int("12").divexact(&int("-4")).unwrap(), int("-3"));
        assert_eq!(int("12").divexact(&int("5")), Err(Error::InexactDivision));
        assert_eq!(int("12").divexact(&int("0")), Err(Error::InexactDivision));
    }

    #[test]
    fn rational_basics() {
        assert_eq!(&rat("1/2") + &rat("1/3"), rat("5/6"));
        let r = Rational::new(int("-2"), int("4")).unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert!(r.is_normalized());
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(rat("4/2").to_string(), "2");
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!("".parse::<Integer>().is_err());
        assert!("+3".parse::<Integer>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn harmonic_sum_matches_unreduced_accumulation() {
        // Oracle: accumulate num/den as plain integers, reduce once at the end.
        let mut num = Integer::zero();
        let mut den = Integer::one();
        for k in 1..=20i64 {
            let kk = Integer::from(k);
            num = &(&num * &kk) + &den;
            den = &den * &kk;
        }
        let g = num.gcd(&den);
        let (num, den) = (num.divexact(&g).unwrap(), den.divexact(&g).unwrap());
        assert_eq!(num.to_string(), "55835135");
        assert_eq!(den.to_string(), "15519504");

        let mut sum = Rational::zero();
        for k in 1..=20i64 {
            sum += &Rational::new(Integer::one(), Integer::from(k)).unwrap();
            assert!(sum.is_normalized());
        }
        assert_eq!(sum.numer(), num);
        assert_eq!(sum.denom(), den);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| {
            Rational::new(Integer::from(n), Integer::from(d)).unwrap()
        })
    }

    fn arb_integer() -> impl Strategy<Value = Integer> {
        (any::<i64>(), any::<i64>())
            .prop_map(|(a, b)| &Integer::from(a) * &Integer::from(b))
    }

    proptest! {
        #[test]
        fn integer_ring_laws(a in arb_integer(), b in arb_integer(), c in arb_integer()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(a.to_string().parse::<Integer>().unwrap(), a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).divexact(&b).unwrap(), a);
            }
        }

        #[test]
        fn rational_field_laws(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            let s = &(&a + &b) + &c;
            prop_assert!(s.is_normalized());
            prop_assert_eq!(s, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            let d = &a * &(&b - &c);
            prop_assert!(d.is_normalized());
            prop_assert_eq!(d, &(&a * &b) - &(&a * &c));
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
