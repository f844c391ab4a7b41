//! Exact rational scalars.
//!
//! Values that fit in a machine word stay inline; anything larger is promoted
//! to an arbitrary-precision [`BigRational`]. The representation is canonical
//! (reduced, positive denominator, inline whenever it fits), so equality is
//! structural.

use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number.
#[derive(Clone)]
pub enum Scalar {
    /// Reduced fraction `num / den` with `den > 0`.
    Small(i64, i64),
    /// Reduced fraction that does not fit the inline form.
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Small(0, 1);
    pub const ONE: Scalar = Scalar::Small(1, 1);

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Small(n, 1)
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 {
            match (num.checked_neg(), den.checked_neg()) {
                (Some(n), Some(d)) => (n, d),
                _ => {
                    return Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)));
                }
            }
        } else {
            (num, den)
        };
        let g = gcd_u128(num.unsigned_abs(), den as u128);
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Scalar::Small(n, d),
            _ => Scalar::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))),
        }
    }

    /// Canonicalizes an already reduced big rational.
    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar::Small(n, d),
            _ => Scalar::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Small(_, d) => *d == 1,
            Scalar::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n < 0,
            Scalar::Big(b) => b.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Scalar::Small(n, _) => BigInt::from(*n),
            Scalar::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Scalar::Small(_, d) => BigInt::from(*d),
            Scalar::Big(b) => b.denom().clone(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Scalar::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Small(n, 1)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::Small(n as i64, 1)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_big(BigRational::from_integer(n))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => a == c && b == d,
            (Scalar::Big(x), Scalar::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl core::hash::Hash for Scalar {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Scalar::Big(b) => b.hash(state),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Scalar::Small(s, 1),
                        None => Scalar::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a * d).checked_add(c * b) {
                    Some(n) => Scalar::from_i128(n, b * d),
                    None => Scalar::from_big(self.to_big() + rhs.to_big()),
                }
            }
            _ => Scalar::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) => Scalar::Small(p, 1),
                        None => Scalar::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                Scalar::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Scalar::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar::Small(m, *d),
                None => Scalar::from_big(-self.to_big()),
            },
            Scalar::Big(b) => Scalar::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Scalar::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `n` or `n/d` with optional sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(String::from(s));
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Scalar::from_big(BigRational::new_raw(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn arithmetic_and_canonical_form() {
        let half = Scalar::new(1, 2);
        let third = Scalar::new(-2, -6);
        assert_eq!(&half + &third, Scalar::new(5, 6));
        assert_eq!(&half * &third, Scalar::new(1, 6));
        assert_eq!(&half - &half, Scalar::ZERO);
        assert_eq!(Scalar::new(4, -8), Scalar::new(-1, 2));
        assert_eq!((&half / &third).to_string(), "3/2");
        assert!(Scalar::new(-1, 3) < Scalar::ZERO);
    }

    #[test]
    fn promotes_and_demotes() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Big(_)));
        let back = &sq / &big;
        assert!(matches!(back, Scalar::Small(_, _)));
        assert_eq!(back, big);
        let min = Scalar::from_int(i64::MIN);
        assert_eq!(-(-&min), min);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-3/4", "12345678901234567890123/7"] {
            let v: Scalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("6/-4".parse::<Scalar>().unwrap(), Scalar::new(-3, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }
}
