//! Exact rational numbers with a machine-word fast path.
//!
//! Values whose reduced numerator and denominator fit in `i128` are stored
//! inline; everything else spills to [`BigInt`]. The representation is
//! canonical (reduced, positive denominator, inline whenever it fits), so
//! structural equality and hashing agree with numeric equality.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `den > 0`, `gcd(|num|, den) == 1`, `num != i128::MIN`.
    Small { num: i128, den: i128 },
    /// Same invariants; only used when the value does not fit `Small`.
    Big { num: BigInt, den: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid digit in rational literal `{0}`")]
    InvalidDigit(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

fn fits(v: &BigInt) -> Option<i128> {
    v.to_i128().filter(|&x| x != i128::MIN)
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n as i128, den: 1 })
    }

    /// Builds `num / den` in lowest terms. Returns `None` when `den` is zero.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return None;
        }
        Some(Self::normalize_big(num, den))
    }

    /// Reduces an arbitrary big fraction (`den != 0`) and demotes it if it fits.
    fn normalize_big(mut num: BigInt, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        match (fits(&num), fits(&den)) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big { num, den }),
        }
    }

    /// Builds from an already-reduced small pair, `den > 0`.
    fn small_reduced(num: i128, den: i128) -> Option<Self> {
        if num == i128::MIN {
            return None;
        }
        Some(Rational(Repr::Small { num, den }))
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (BigInt::from(*num), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small { den: 1, .. }) || matches!(&self.0, Repr::Big { den, .. } if den.is_one())
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big { num, .. } => num.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_recip(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small { num: 0, .. } => None,
            Repr::Small { num, den } => {
                let (num, den) = if *num < 0 { (-den, -num) } else { (*den, *num) };
                Some(Rational(Repr::Small { num, den }))
            }
            Repr::Big { num, den } => Some(Self::normalize_big(den.clone(), num.clone())),
        }
    }

    /// # Panics
    ///
    /// Panics on zero.
    pub fn recip(&self) -> Self {
        self.checked_recip().expect("reciprocal of zero rational")
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            if let Some(r) = small_add(*a, *b, *c, *d) {
                return r;
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = rhs.to_big();
        if b == d {
            return Self::normalize_big(a + c, b);
        }
        Self::normalize_big(a * &d + c * &b, b * d)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            if let Some(r) = small_mul(*a, *b, *c, *d) {
                return r;
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = rhs.to_big();
        Self::normalize_big(a * c, b * d)
    }
}

fn small_add(a: i128, b: i128, c: i128, d: i128) -> Option<Rational> {
    if b == 1 && d == 1 {
        return Rational::small_reduced(a.checked_add(c)?, 1);
    }
    // Knuth 4.5.1: with g = gcd(b, d) the only common factor left in the
    // numerator divides g.
    let g = b.gcd(&d);
    let b_g = b / g;
    let d_g = d / g;
    let t = a.checked_mul(d_g)?.checked_add(c.checked_mul(b_g)?)?;
    if t == 0 {
        return Some(Rational::zero());
    }
    let g2 = t.gcd(&g);
    let num = t / g2;
    let den = b_g.checked_mul(d / g2)?;
    Rational::small_reduced(num, den)
}

fn small_mul(a: i128, b: i128, c: i128, d: i128) -> Option<Rational> {
    if a == 0 || c == 0 {
        return Some(Rational::zero());
    }
    let g1 = a.gcd(&d);
    let g2 = c.gcd(&b);
    let num = (a / g1).checked_mul(c / g2)?;
    let den = (b / g2).checked_mul(d / g1)?;
    Rational::small_reduced(num, den)
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        match fits(&n) {
            Some(num) => Rational(Repr::Small { num, den: 1 }),
            None => Rational(Repr::Big {
                num: n,
                den: BigInt::one(),
            }),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big { num, den } => Rational::normalize_big(-num, den.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        self.add_impl(rhs)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self.add_impl(&-rhs)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        self.mul_impl(rhs)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// # Panics
    ///
    /// Panics when dividing by zero.
    fn div(self, rhs: &Rational) -> Rational {
        self.mul_impl(&rhs.recip())
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $AssignTrait:ident, $assign:ident) => {
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $Trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
        impl $AssignTrait<&Rational> for Rational {
            fn $assign(&mut self, rhs: &Rational) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $AssignTrait<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, DivAssign, div_assign);

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &other.0) {
            if let (Some(l), Some(r)) = (a.checked_mul(*d), c.checked_mul(*b)) {
                return l.cmp(&r);
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big { num, den } if den.is_one() => write!(f, "{num}"),
            Repr::Big { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Result<BigInt, ParseRationalError> {
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if digits.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidDigit(s.into()));
    }
    let v = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| ParseRationalError::InvalidDigit(s.into()))?;
    Ok(if negative { -v } else { v })
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `n`, `-n`, `n/d` and `-n/d` with decimal digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        match s.split_once('/') {
            None => Ok(Rational::from(parse_int(s)?)),
            Some((n, d)) => {
                let num = parse_int(n)?;
                if d.starts_with('-') {
                    return Err(ParseRationalError::InvalidDigit(s.into()));
                }
                let den = parse_int(d)?;
                Rational::from_ratio(num, den).ok_or(ParseRationalError::ZeroDenominator)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn reference(r: &Rational) -> BigRational {
        BigRational::new(r.numer(), r.denom())
    }

    fn big_value() -> impl Strategy<Value = Rational> {
        (any::<i128>(), 1..i128::MAX, 0u32..3).prop_map(|(n, d, k)| {
            let scale = BigInt::from(10u8).pow(k * 20);
            Rational::from_ratio(BigInt::from(n) * &scale, BigInt::from(d)).unwrap()
        })
    }

    fn small_value() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..50).prop_map(|(n, d)| Rational::from_ratio(n, d).unwrap())
    }

    fn value() -> impl Strategy<Value = Rational> {
        prop_oneof![small_value(), big_value()]
    }

    #[test]
    fn canonical_form() {
        let r = Rational::from_ratio(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), BigInt::from(2));
        assert!(Rational::from_ratio(1, 0).is_none());
        assert_eq!(Rational::from_ratio(0, -7).unwrap(), Rational::zero());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::from(3));
        assert_eq!("-1/2".parse::<Rational>().unwrap().to_string(), "-1/2");
        assert_eq!("4/8".parse::<Rational>().unwrap().to_string(), "1/2");
        assert_eq!("1/0".parse::<Rational>(), Err(ParseRationalError::ZeroDenominator));
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_spills_and_demotes() {
        let max = Rational::from(BigInt::from(i128::MAX));
        let bigger = &max + &Rational::one();
        assert_eq!(bigger.numer(), BigInt::from(i128::MAX) + 1);
        let back = &bigger - &Rational::one();
        assert_eq!(back, max);
        assert!(matches!(back.0, Repr::Small { .. }));
        let min_plus = Rational::from(BigInt::from(i128::MIN));
        assert!(matches!(min_plus.0, Repr::Big { .. }));
        assert_eq!((-&min_plus).numer(), -BigInt::from(i128::MIN));
    }

    #[test]
    fn pow_and_recip() {
        let r = Rational::from_ratio(-2, 3).unwrap();
        assert_eq!(r.pow(3).to_string(), "-8/27");
        assert_eq!(r.pow(0), Rational::one());
        assert_eq!(r.recip().to_string(), "-3/2");
        assert!(Rational::zero().checked_recip().is_none());
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigrational(a in value(), b in value()) {
            let (ra, rb) = (reference(&a), reference(&b));
            prop_assert_eq!(reference(&(&a + &b)), &ra + &rb);
            prop_assert_eq!(reference(&(&a - &b)), &ra - &rb);
            prop_assert_eq!(reference(&(&a * &b)), &ra * &rb);
            if !b.is_zero() {
                prop_assert_eq!(reference(&(&a / &b)), &ra / &rb);
            }
            prop_assert_eq!(a.cmp(&b), ra.cmp(&rb));
        }

        #[test]
        fn representation_is_canonical(a in value(), b in value()) {
            let s = &(&a + &b) - &b;
            prop_assert_eq!(&s, &a);
            let parsed: Rational = a.to_string().parse().unwrap();
            prop_assert_eq!(parsed, a);
        }
    }
}
