//! Sparse exact multivectors over a fixed signature.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::{blade_mul, Blade, Sign, Signature};
use crate::error::Error;
use crate::involution::GradeSet;
use crate::rational::Rational;

/// An element `sum x_e e` of Cl(p,q) with rational coefficients.
///
/// Zero coefficients are never stored, so two multivectors are equal exactly
/// when their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<Blade, Rational>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, Rational::one())
    }

    pub fn scalar(sig: Signature, value: Rational) -> Self {
        let mut m = Self::zero(sig);
        m.insert(Blade::ONE, value);
        m
    }

    /// `coeff * blade`. Fails if `blade` uses generators outside `sig`.
    pub fn term(sig: Signature, blade: Blade, coeff: Rational) -> Result<Self, Error> {
        Self::from_terms(sig, [(blade, coeff)])
    }

    /// Sums the given terms; repeated blades accumulate.
    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, Rational)>) -> Result<Self, Error> {
        let mut acc: BTreeMap<Blade, Rational> = BTreeMap::new();
        for (blade, coeff) in terms {
            if !sig.contains(blade) {
                return Err(Error::BladeOutOfRange { blade, sig });
            }
            *acc.entry(blade).or_default() += coeff;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Multivector { sig, terms: acc })
    }

    /// Builds from a coefficient vector in canonical blade order.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs.len() != sig.dim()`.
    pub fn from_coefficients(sig: Signature, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), sig.dim());
        let terms = sig.blades().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
        Multivector { sig, terms }
    }

    /// Coefficient vector in canonical blade order, zeros included.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.sig.blades().map(|b| self.coeff(b)).collect()
    }

    fn insert(&mut self, blade: Blade, coeff: Rational) {
        if coeff.is_zero() {
            self.terms.remove(&blade);
        } else {
            self.terms.insert(blade, coeff);
        }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, blade: Blade) -> Rational {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_sig(&self, other: &Self) -> Result<(), Error> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            let sum = out.coeff(*b) + c;
            out.insert(*b, sum);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.checked_add(&-other)
    }

    /// Geometric product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_sig(other)?;
        let mut acc = vec![Rational::zero(); self.sig.dim()];
        let mut touched = 0u64;
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let p = blade_mul(*a, *b, self.sig);
                let slot = &mut acc[p.blade.mask() as usize];
                let xy = x * y;
                match p.sign {
                    Sign::Plus => *slot += xy,
                    Sign::Minus => *slot -= xy,
                }
                touched |= 1 << p.blade.mask();
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(m, c)| touched >> m & 1 == 1 && !c.is_zero())
            .map(|(m, c)| (Blade::from_mask(m as u8), c))
            .collect();
        Ok(Multivector { sig: self.sig, terms })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.sig);
        }
        Multivector {
            sig: self.sig,
            terms: self.terms.iter().map(|(b, c)| (*b, c * factor)).collect(),
        }
    }

    /// Positive integer power by repeated squaring; `a^0 = 1`.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.sig);
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

    /// The grade-`k` part.
    pub fn grade_project(&self, k: usize) -> Result<Self, Error> {
        let n = self.sig.n();
        if k > n {
            return Err(Error::GradeOutOfRange { grade: k, n });
        }
        Ok(self.keep_grades(|g| g == k))
    }

    fn keep_grades(&self, keep: impl Fn(usize) -> bool) -> Self {
        Multivector {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b.grade()))
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Multiplies every grade-`k` coefficient by `sign(k)`.
    pub(crate) fn map_grades(&self, sign: impl Fn(usize) -> Sign) -> Self {
        Multivector {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| match sign(b.grade()) {
                    Sign::Plus => (*b, c.clone()),
                    Sign::Minus => (*b, -c),
                })
                .collect(),
        }
    }

    /// Grades carrying at least one nonzero coefficient.
    pub fn grade_support(&self) -> GradeSet {
        self.terms.keys().map(|b| b.grade()).collect()
    }

    /// Coefficient of the unit blade.
    pub fn scalar_part(&self) -> Rational {
        self.coeff(Blade::ONE)
    }

    /// True when the only nonzero coefficient (if any) is on `1`.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| *b == Blade::ONE)
    }

    /// Deterministic pseudorandom element with integer coefficients drawn
    /// uniformly from `[-bound, bound]`.
    pub fn random(sig: Signature, seed: u64, bound: u32) -> Result<Self, Error> {
        if bound == 0 {
            return Err(Error::InvalidBound);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = bound as i64;
        let terms = sig
            .blades()
            .map(|blade| (blade, Rational::from(rng.gen_range(-b..=b))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(Multivector { sig, terms })
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    /// # Panics
    ///
    /// Panics on a signature mismatch; use [`Multivector::checked_add`] otherwise.
    fn add(self, rhs: &Multivector) -> Multivector {
        self.checked_add(rhs).expect("multivector addition")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.checked_sub(rhs).expect("multivector subtraction")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    /// # Panics
    ///
    /// Panics on a signature mismatch; use [`Multivector::checked_mul`] otherwise.
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.checked_mul(rhs).expect("multivector product")
    }
}

impl Mul<&Rational> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Rational) -> Multivector {
        self.scale(rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.map_grades(|_| Sign::Minus)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

/// Canonical text form: terms in `(grade, mask)` order, `c*blade` with the
/// coefficient omitted when it is `1` and the unit blade printed as a bare
/// coefficient. The zero element prints as `0`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (blade, coeff)) in self.terms.iter().enumerate() {
            let magnitude = coeff.abs();
            match (i, coeff.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if *blade == Blade::ONE {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{blade}")?;
            } else {
                write!(f, "{magnitude}*{blade}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.sig)
    }
}
