//! Basis blades of Cl(p,q) as generator bitmasks, and their signed product.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Mul, Neg};
use core::str::FromStr;

use crate::error::Error;

/// Largest supported number of generators.
pub const MAX_GENERATORS: usize = 5;

/// Metric signature: the first `p` generators square to `-1`, the next `q` to `+1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self, Error> {
        if p + q > MAX_GENERATORS {
            return Err(Error::SignatureTooLarge { p, q });
        }
        Ok(Signature { p: p as u8, q: q as u8 })
    }

    /// All 21 signatures with `p + q <= 5`, ordered by `n` then `p`.
    pub fn all() -> impl Iterator<Item = Signature> {
        (0..=MAX_GENERATORS).flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).unwrap()))
    }

    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    /// Number of generators, `p + q`.
    pub fn n(self) -> usize {
        (self.p + self.q) as usize
    }

    /// Algebra dimension `2^n`.
    pub fn dim(self) -> usize {
        1 << self.n()
    }

    /// Square of generator `e_i` (1-based): `Minus` for `i <= p`, `Plus` otherwise.
    ///
    /// # Panics
    ///
    /// Panics if `i` is not in `1..=n`.
    pub fn square(self, i: usize) -> Sign {
        assert!(
            (1..=self.n()).contains(&i),
            "generator e{i} outside Cl({},{})",
            self.p,
            self.q
        );
        if i <= self.p() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn contains(self, blade: Blade) -> bool {
        (blade.0 as usize) < self.dim()
    }

    /// Every basis blade of the algebra in canonical `(grade, mask)` order.
    pub fn blades(self) -> impl Iterator<Item = Blade> {
        let (n, dim) = (self.n(), self.dim());
        (0..=n).flat_map(move |k| {
            (0..dim)
                .filter(move |m| (*m as u32).count_ones() as usize == k)
                .map(|m| Blade(m as u8))
        })
    }

    /// Product of the generator squares over the bits of `shared`.
    fn metric_sign(self, shared: u8) -> Sign {
        // Negative generators occupy the low `p` bits.
        let negative_mask = ((1u16 << self.p) - 1) as u8;
        Sign::from_parity((shared & negative_mask).count_ones())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

/// A sign `+1` or `-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^k`.
    pub fn from_parity(k: u32) -> Sign {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// A basis blade: bit `i - 1` set means `e_i` is a factor. The blade stands for
/// the ascending product of its generators.
///
/// Blades order by grade first, then by mask, which is the canonical term order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u8);

impl Blade {
    /// The unit `1`.
    pub const ONE: Blade = Blade(0);

    /// Blade from a raw bitmask (bit 0 is `e1`).
    pub fn from_mask(mask: u8) -> Blade {
        assert!(
            mask < (1 << MAX_GENERATORS),
            "blade mask {mask:#b} uses more than 5 generators"
        );
        Blade(mask)
    }

    /// The single generator `e_i`, 1-based.
    pub fn generator(i: usize) -> Blade {
        assert!((1..=MAX_GENERATORS).contains(&i), "generator index {i} out of range");
        Blade(1 << (i - 1))
    }

    /// Product of the given (distinct) generator indices, taken in ascending order.
    pub fn from_indices(indices: &[usize]) -> Blade {
        indices
            .iter()
            .fold(Blade::ONE, |acc, &i| Blade(acc.0 | Blade::generator(i).0))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based generator indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_GENERATORS).filter(move |b| self.0 >> b & 1 == 1).map(|b| b + 1)
    }

    /// Standard form of `self * rhs`.
    pub fn mul(self, rhs: Blade, sig: Signature) -> SignedBlade {
        blade_mul(self, rhs, sig)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Problems with the textual blade form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BladeSyntaxError {
    #[error("blade must be `1` or `e` followed by generator digits")]
    Malformed,
    #[error("generator digit {digit} outside 1..={max}")]
    OutOfRange { digit: u32, max: usize },
    #[error("generator digits must be strictly ascending")]
    NotAscending,
    #[error("generator digit {0} repeated")]
    Repeated(u32),
}

impl Blade {
    /// Parses `1` or `e<digits>` with strictly ascending digits in `1..=n`.
    /// Also reports the byte position of the offending digit within `s`.
    pub fn parse_for(s: &str, n: usize) -> Result<Blade, (usize, BladeSyntaxError)> {
        if s == "1" {
            return Ok(Blade::ONE);
        }
        let digits = s.strip_prefix('e').ok_or((0, BladeSyntaxError::Malformed))?;
        if digits.is_empty() {
            return Err((0, BladeSyntaxError::Malformed));
        }
        let mut mask = 0u8;
        let mut last = 0u32;
        for (pos, ch) in digits.char_indices() {
            let offset = pos + 1;
            let digit = ch.to_digit(10).ok_or((offset, BladeSyntaxError::Malformed))?;
            if digit == 0 || digit as usize > n {
                return Err((offset, BladeSyntaxError::OutOfRange { digit, max: n }));
            }
            if mask & (1 << (digit - 1)) != 0 {
                return Err((offset, BladeSyntaxError::Repeated(digit)));
            }
            if digit < last {
                return Err((offset, BladeSyntaxError::NotAscending));
            }
            mask |= 1 << (digit - 1);
            last = digit;
        }
        Ok(Blade(mask))
    }
}

impl FromStr for Blade {
    type Err = BladeSyntaxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Blade::parse_for(s, MAX_GENERATORS).map_err(|(_, e)| e)
    }
}

/// A basis blade with a sign, the standard form `±e_{i1}...e_{ik}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedBlade {
    pub sign: Sign,
    pub blade: Blade,
}

impl SignedBlade {
    pub fn new(sign: Sign, blade: Blade) -> Self {
        SignedBlade { sign, blade }
    }

    pub fn mul(self, rhs: SignedBlade, sig: Signature) -> SignedBlade {
        let p = blade_mul(self.blade, rhs.blade, sig);
        SignedBlade::new(self.sign * rhs.sign * p.sign, p.blade)
    }
}

/// `(-1)^t` where `t` counts, for every generator of `b`, the generators of `a`
/// with a larger index: the adjacent swaps needed to sort the word `a b`.
pub fn transposition_sign(a: Blade, b: Blade) -> Sign {
    let mut swaps = 0;
    let mut rest = b.0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a.0 >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Sign::from_parity(swaps)
}

/// Standard form of the geometric product of two basis blades.
pub fn blade_mul(a: Blade, b: Blade, sig: Signature) -> SignedBlade {
    debug_assert!(sig.contains(a) && sig.contains(b));
    let sign = transposition_sign(a, b) * sig.metric_sign(a.0 & b.0);
    SignedBlade::new(sign, Blade(a.0 ^ b.0))
}

/// Grade of a blade (number of generators).
pub fn grade(b: Blade) -> usize {
    b.grade()
}
