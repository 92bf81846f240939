//! Length-δ maps, the sign tables of the reversion family, and the search for
//! δ tables that make a grade-diagonal map an anti-automorphism on a direct
//! sum of grade subspaces.
//!
//! A length-δ map multiplies every grade-`k` blade by `δ(k) ∈ {+1, -1}`. Such a
//! map reverses products of blades of grades `k` and `l` sharing `s`
//! generators exactly when
//!
//! ```text
//! δ(k + l - 2s) = δ(k) δ(l) (-1)^(kl - s)
//! ```
//!
//! so whether it is a special involution on `S = ⊕_{i∈I} L_i` depends only on
//! `I` and `n = p + q`, never on the metric.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::blade::{Sign, MAX_GENERATORS};
use crate::error::Error;
use crate::multivector::Multivector;

/// A subset of the grades `0..=5`, naming the subspace `⊕_{i∈I} L_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GradeSet(u8);

impl GradeSet {
    pub fn empty() -> Self {
        GradeSet(0)
    }

    /// `{0, 1, ..., n}`, the whole algebra.
    pub fn full(n: usize) -> Self {
        GradeSet(((1u16 << (n + 1)) - 1) as u8)
    }

    pub fn from_grades(grades: &[usize]) -> Self {
        grades.iter().copied().collect()
    }

    pub fn from_bits(bits: u8) -> Self {
        GradeSet(bits & 0b11_1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, k: usize) -> bool {
        k <= MAX_GENERATORS && self.0 >> k & 1 == 1
    }

    pub fn insert(&mut self, k: usize) {
        assert!(k <= MAX_GENERATORS, "grade {k} out of range");
        self.0 |= 1 << k;
    }

    pub fn is_subset(self, other: GradeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 7 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..=MAX_GENERATORS).filter(move |&k| self.contains(k))
    }
}

impl FromIterator<usize> for GradeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut g = GradeSet::empty();
        for k in iter {
            g.insert(k);
        }
        g
    }
}

impl fmt::Display for GradeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GradeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("grade list must be comma-separated integers in 0..=5")]
pub struct ParseGradeSetError;

impl FromStr for GradeSet {
    type Err = ParseGradeSetError;

    /// Parses `0,1,4` (braces and spaces allowed).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        if inner.trim().is_empty() {
            return Ok(GradeSet::empty());
        }
        inner
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(k) if k <= MAX_GENERATORS => Ok(k),
                _ => Err(ParseGradeSetError),
            })
            .collect()
    }
}

/// A grade-diagonal sign map `f(e) = δ(grade e) e` on Cl(p,q) with `p + q = n`.
/// `δ(0)` is always `+1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LengthDeltaMap {
    n: u8,
    /// Bit `k` set iff `δ(k) = -1`.
    negative: u8,
}

impl LengthDeltaMap {
    /// From a table `[δ(0), ..., δ(n)]` of `±1` values.
    pub fn new(table: &[i8]) -> Result<Self, Error> {
        if table.is_empty() || table.len() > MAX_GENERATORS + 1 || table[0] != 1 {
            return Err(Error::InvalidDeltaTable);
        }
        let mut negative = 0u8;
        for (k, v) in table.iter().enumerate() {
            match Sign::from_i8(*v).ok_or(Error::InvalidDeltaTable)? {
                Sign::Plus => {}
                Sign::Minus => negative |= 1 << k,
            }
        }
        Ok(LengthDeltaMap {
            n: (table.len() - 1) as u8,
            negative,
        })
    }

    /// Builds from a sign rule on grades `1..=n`.
    pub fn from_fn(n: usize, delta: impl Fn(usize) -> Sign) -> Self {
        assert!(n <= MAX_GENERATORS);
        let negative = (1..=n)
            .filter(|&k| delta(k).is_negative())
            .fold(0u8, |acc, k| acc | 1 << k);
        LengthDeltaMap { n: n as u8, negative }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |_| Sign::Plus)
    }

    /// φ₊: `-1` on grades `k ≡ 2, 3 (mod 4)`.
    pub fn reversion(n: usize) -> Self {
        Self::from_fn(n, |k| if k % 4 >= 2 { Sign::Minus } else { Sign::Plus })
    }

    /// φ₋: `-1` on grades `k ≡ 1, 2 (mod 4)`.
    pub fn conjugation(n: usize) -> Self {
        Self::from_fn(n, |k| {
            if matches!(k % 4, 1 | 2) {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
    }

    /// φ = φ₊ ∘ φ₋: `(-1)^k`.
    pub fn main_involution(n: usize) -> Self {
        Self::from_fn(n, |k| Sign::from_parity(k as u32))
    }

    /// ψ: `-1` on grades 1 through 4.
    pub fn psi(n: usize) -> Self {
        Self::from_fn(n, |k| if (1..=4).contains(&k) { Sign::Minus } else { Sign::Plus })
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// `δ(k)`.
    ///
    /// # Panics
    ///
    /// Panics if `k > n`.
    pub fn delta(self, k: usize) -> Sign {
        assert!(k <= self.n(), "grade {k} outside 0..={}", self.n);
        if self.negative >> k & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `[δ(0), ..., δ(n)]`.
    pub fn table(self) -> Vec<i8> {
        (0..=self.n()).map(|k| self.delta(k).to_i8()).collect()
    }

    /// Composition; both maps must share `n`.
    pub fn compose(self, other: LengthDeltaMap) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(LengthDeltaMap {
            n: self.n,
            negative: self.negative ^ other.negative,
        })
    }

    pub fn apply(self, a: &Multivector) -> Result<Multivector, Error> {
        let found = a.sig().n();
        if found != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found,
            });
        }
        Ok(a.map_grades(|k| self.delta(k)))
    }

    /// Which of the named maps this table coincides with.
    pub fn names(self) -> impl Iterator<Item = NamedMap> {
        NamedMap::ALL.into_iter().filter(move |m| m.delta_map(self.n()) == self)
    }
}

impl fmt::Display for LengthDeltaMap {
    /// JSON-compatible `[1,-1,...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for k in 0..=self.n() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.delta(k).to_i8())?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for LengthDeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The length-δ maps used by the inverse formulas.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NamedMap {
    /// φ₊
    Reversion,
    /// φ₋
    Conjugation,
    /// φ
    Main,
    /// ψ
    Psi,
}

impl NamedMap {
    pub const ALL: [NamedMap; 4] = [
        NamedMap::Reversion,
        NamedMap::Conjugation,
        NamedMap::Main,
        NamedMap::Psi,
    ];

    pub fn delta_map(self, n: usize) -> LengthDeltaMap {
        match self {
            NamedMap::Reversion => LengthDeltaMap::reversion(n),
            NamedMap::Conjugation => LengthDeltaMap::conjugation(n),
            NamedMap::Main => LengthDeltaMap::main_involution(n),
            NamedMap::Psi => LengthDeltaMap::psi(n),
        }
    }

    /// Command-line name.
    pub fn as_str(self) -> &'static str {
        match self {
            NamedMap::Reversion => "rev",
            NamedMap::Conjugation => "conj",
            NamedMap::Main => "main",
            NamedMap::Psi => "psi",
        }
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown map `{0}`, expected one of rev, conj, main, psi")]
pub struct UnknownMapError(pub alloc::string::String);

impl FromStr for NamedMap {
    type Err = UnknownMapError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedMap::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| UnknownMapError(s.into()))
    }
}

impl Multivector {
    /// φ₊, reversion.
    pub fn reversion(&self) -> Multivector {
        self.map_grades(|k| LengthDeltaMap::reversion(self.sig().n()).delta(k))
    }

    /// φ₋, Clifford conjugation.
    pub fn conjugation(&self) -> Multivector {
        self.map_grades(|k| LengthDeltaMap::conjugation(self.sig().n()).delta(k))
    }

    /// φ, grade involution.
    pub fn main_involution(&self) -> Multivector {
        self.map_grades(|k| Sign::from_parity(k as u32))
    }

    /// ψ, sign flip on grades 1 through 4.
    pub fn psi(&self) -> Multivector {
        self.map_grades(|k| LengthDeltaMap::psi(self.sig().n()).delta(k))
    }

    pub fn apply_named(&self, map: NamedMap) -> Multivector {
        match map {
            NamedMap::Reversion => self.reversion(),
            NamedMap::Conjugation => self.conjugation(),
            NamedMap::Main => self.main_involution(),
            NamedMap::Psi => self.psi(),
        }
    }
}

/// Applies `f` to `a`; `f` must be defined for `a`'s number of generators.
pub fn apply_delta(f: LengthDeltaMap, a: &Multivector) -> Result<Multivector, Error> {
    f.apply(a)
}

/// One instance of the anti-automorphism condition: blades of grades `k` and
/// `l` with `s` shared generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DeltaConstraint {
    pub k: usize,
    pub l: usize,
    pub s: usize,
}

impl DeltaConstraint {
    /// Grade of the product, `k + l - 2s`.
    pub fn product_grade(self) -> usize {
        self.k + self.l - 2 * self.s
    }

    /// `(-1)^(kl - s)`.
    pub fn commutation_sign(self) -> Sign {
        Sign::from_parity(((self.k * self.l - self.s) % 2) as u32)
    }

    pub fn holds(self, f: LengthDeltaMap) -> bool {
        f.delta(self.product_grade()) == f.delta(self.k) * f.delta(self.l) * self.commutation_sign()
    }
}

impl fmt::Display for DeltaConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.commutation_sign().is_negative() { "-" } else { "" };
        write!(
            f,
            "(k,l,s)=({},{},{}): δ({}) = {}δ({})δ({})",
            self.k,
            self.l,
            self.s,
            self.product_grade(),
            sign,
            self.k,
            self.l
        )
    }
}

fn check_grades(grades: GradeSet, n: usize) -> Result<(), Error> {
    if n > MAX_GENERATORS {
        return Err(Error::DimensionOutOfRange { n });
    }
    match grades.max() {
        Some(g) if g > n => Err(Error::GradeOutOfRange { grade: g, n }),
        _ => Ok(()),
    }
}

/// Every constraint a length-δ map must satisfy to be a special involution on
/// `⊕_{i∈I} L_i` in an algebra with `n` generators, ordered by `(k, l, s)`.
pub fn constraints_for(grades: GradeSet, n: usize) -> Result<Vec<DeltaConstraint>, Error> {
    check_grades(grades, n)?;
    let mut out = Vec::new();
    for k in grades.iter() {
        for l in grades.iter() {
            let lo = (k + l).saturating_sub(n);
            for s in lo..=k.min(l) {
                out.push(DeltaConstraint { k, l, s });
            }
        }
    }
    Ok(out)
}

/// True iff `f` satisfies every constraint for `(I, n)`. A map defined for a
/// different `n` is never special.
pub fn is_special_involution(f: LengthDeltaMap, grades: GradeSet, n: usize) -> bool {
    f.n() == n
        && constraints_for(grades, n)
            .map(|cs| cs.iter().all(|c| c.holds(f)))
            .unwrap_or(false)
}

/// All δ tables over grades `0..=n` (with `δ(0) = 1`) that are special
/// involutions on `⊕_{i∈I} L_i`, found by exhaustive search.
pub fn delta_solutions(grades: GradeSet, n: usize) -> Result<Vec<LengthDeltaMap>, Error> {
    let constraints = constraints_for(grades, n)?;
    Ok((0u8..1 << n)
        .map(|bits| LengthDeltaMap {
            n: n as u8,
            negative: bits << 1,
        })
        .filter(|f| constraints.iter().all(|c| c.holds(*f)))
        .collect())
}

/// Grades of `I` fixed by `f`; names the invariant subspace `S^f`.
pub fn invariant_grades(f: LengthDeltaMap, grades: GradeSet) -> GradeSet {
    grades
        .iter()
        .filter(|&k| k <= f.n() && f.delta(k) == Sign::Plus)
        .collect()
}
