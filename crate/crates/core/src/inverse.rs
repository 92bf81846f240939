//! Inversion by composing special involutions.
//!
//! Starting from `α₁ = α`, each step of an [`InvolutionChain`] forms
//! `α_{i+1} = α_i f_i(α_i)`, which lands in the subspace fixed by `f_i`. The
//! chains below are chosen so that the last product is a scalar `D`; then
//! `α · f₁(α₁) ⋯ f_m(α_m) = D` and `α⁻¹ = f₁(α₁) ⋯ f_m(α_m) / D`.

use alloc::vec::Vec;

use crate::blade::MAX_GENERATORS;
use crate::error::Error;
use crate::involution::{invariant_grades, is_special_involution, GradeSet, LengthDeltaMap};
use crate::multivector::Multivector;
use crate::rational::Rational;

/// One step of a chain: the map and the grade set its input lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChainStep {
    pub map: LengthDeltaMap,
    pub domain: GradeSet,
}

/// A validated sequence of length-δ maps whose repeated products end in `K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvolutionChain {
    n: usize,
    steps: Vec<ChainStep>,
}

impl InvolutionChain {
    /// Validates `maps` for `n` generators: each map must be a special
    /// involution on the invariant subspace left by the previous one, and the
    /// last invariant subspace must be the scalars.
    pub fn new(n: usize, maps: &[LengthDeltaMap]) -> Result<Self, Error> {
        if n > MAX_GENERATORS {
            return Err(Error::DimensionOutOfRange { n });
        }
        let mut domain = GradeSet::full(n);
        let mut steps = Vec::with_capacity(maps.len());
        for &map in maps {
            if map.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: map.n(),
                });
            }
            if !is_special_involution(map, domain, n) {
                return Err(Error::InvalidChain("map is not a special involution on its domain"));
            }
            steps.push(ChainStep { map, domain });
            domain = invariant_grades(map, domain);
        }
        if domain != GradeSet::from_grades(&[0]) {
            return Err(Error::InvalidChain("final invariant subspace is not the scalars"));
        }
        Ok(InvolutionChain { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn maps(&self) -> impl Iterator<Item = LengthDeltaMap> + '_ {
        self.steps.iter().map(|s| s.map)
    }

    pub fn domains(&self) -> impl Iterator<Item = GradeSet> + '_ {
        self.steps.iter().map(|s| s.domain)
    }
}

/// Standard chain per dimension: none for `n = 0`, `[φ₋]` for `n = 1, 2`,
/// `[φ₊, φ₋]` for 3, `[φ₊, ψ]` for 4, `[φ₊, ψ, φ₋]` for 5.
pub fn default_chain(n: usize) -> Result<InvolutionChain, Error> {
    if n > MAX_GENERATORS {
        return Err(Error::DimensionOutOfRange { n });
    }
    let rev = LengthDeltaMap::reversion(n);
    let conj = LengthDeltaMap::conjugation(n);
    let psi = LengthDeltaMap::psi(n);
    let maps: &[LengthDeltaMap] = match n {
        0 => &[],
        1 | 2 => &[conj],
        3 => &[rev, conj],
        4 => &[rev, psi],
        5 => &[rev, psi, conj],
        _ => return Err(Error::DimensionOutOfRange { n }),
    };
    InvolutionChain::new(n, maps)
}

/// The second composition available in dimensions 3 (`[φ₋, φ₊]`) and
/// 4 (`[φ₋, ψ]`).
pub fn alternate_chain(n: usize) -> Result<InvolutionChain, Error> {
    let maps = match n {
        3 => [LengthDeltaMap::conjugation(3), LengthDeltaMap::reversion(3)],
        4 => [LengthDeltaMap::conjugation(4), LengthDeltaMap::psi(4)],
        _ => return Err(Error::DimensionOutOfRange { n }),
    };
    InvolutionChain::new(n, &maps)
}

/// Outcome of running a chain on one element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InverseResult {
    /// The scalar `D`.
    pub discriminant: Rational,
    /// `f₁(α₁), ..., f_m(α_m)`.
    pub factors: Vec<Multivector>,
    /// `(1/D) Π factors` when `D ≠ 0`.
    pub inverse: Option<Multivector>,
}

impl InverseResult {
    /// `Π factors`, the adjugate-like element with `α · Π factors = D`.
    pub fn factor_product(&self, sig: crate::blade::Signature) -> Multivector {
        self.factors.iter().fold(Multivector::one(sig), |acc, f| &acc * f)
    }
}

/// Runs `chain` on `a`.
///
/// Fails with [`Error::SubspaceViolation`] if an intermediate product leaves
/// the grade set the chain predicts; that indicates a broken chain, not a bad
/// input.
pub fn compose_inverse(a: &Multivector, chain: &InvolutionChain) -> Result<InverseResult, Error> {
    let sig = a.sig();
    if sig.n() != chain.n() {
        return Err(Error::DimensionMismatch {
            expected: chain.n(),
            found: sig.n(),
        });
    }
    let mut alpha = a.clone();
    let mut factors = Vec::with_capacity(chain.steps().len());
    for (i, step) in chain.steps().iter().enumerate() {
        if !alpha.grade_support().is_subset(step.domain) {
            return Err(Error::SubspaceViolation {
                step: i,
                expected: step.domain,
            });
        }
        let image = step.map.apply(&alpha)?;
        alpha = &alpha * &image;
        factors.push(image);
    }
    if !alpha.is_scalar() {
        return Err(Error::SubspaceViolation {
            step: chain.steps().len(),
            expected: GradeSet::from_grades(&[0]),
        });
    }
    let discriminant = alpha.scalar_part();
    let inverse = discriminant.checked_recip().map(|inv_d| {
        factors
            .iter()
            .fold(Multivector::one(sig), |acc, f| &acc * f)
            .scale(&inv_d)
    });
    Ok(InverseResult {
        discriminant,
        factors,
        inverse,
    })
}

fn run_default(a: &Multivector) -> InverseResult {
    let chain = default_chain(a.sig().n()).expect("signature has n <= 5");
    compose_inverse(a, &chain).expect("default chains stay in their invariant subspaces")
}

/// Two-sided inverse of `a`, computed with the default chain.
pub fn inverse(a: &Multivector) -> Result<Multivector, Error> {
    run_default(a).inverse.ok_or(Error::NotInvertible)
}

/// The discriminant `D(a)`; zero exactly when `a` is not invertible.
pub fn discriminant(a: &Multivector) -> Rational {
    run_default(a).discriminant
}

/// Whether the default and alternate chains give the same scalar (`n = 3, 4`).
pub fn verify_d_equals_dprime(a: &Multivector) -> Result<bool, Error> {
    let n = a.sig().n();
    let alt = alternate_chain(n)?;
    let d = compose_inverse(a, &default_chain(n)?)?.discriminant;
    let d_alt = compose_inverse(a, &alt)?.discriminant;
    Ok(d == d_alt)
}

impl Multivector {
    pub fn inverse(&self) -> Result<Multivector, Error> {
        inverse(self)
    }

    pub fn discriminant(&self) -> Rational {
        discriminant(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blade::{Blade, Signature};
    use alloc::vec;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mv(s: Signature, terms: &[(&[usize], i64)]) -> Multivector {
        Multivector::from_terms(s, terms.iter().map(|(ix, c)| (Blade::from_indices(ix), r(*c)))).unwrap()
    }

    #[test]
    fn chain_shapes() {
        assert!(default_chain(0).unwrap().steps().is_empty());
        for n in 1..=2 {
            let maps: Vec<_> = default_chain(n).unwrap().maps().collect();
            assert_eq!(maps, vec![LengthDeltaMap::conjugation(n)]);
        }
        let c3 = default_chain(3).unwrap();
        assert_eq!(
            c3.maps().collect::<Vec<_>>(),
            vec![LengthDeltaMap::reversion(3), LengthDeltaMap::conjugation(3)]
        );
        assert_eq!(
            c3.domains().collect::<Vec<_>>(),
            vec![GradeSet::full(3), GradeSet::from_grades(&[0, 1])]
        );
        let c4 = default_chain(4).unwrap();
        assert_eq!(
            c4.maps().collect::<Vec<_>>(),
            vec![LengthDeltaMap::reversion(4), LengthDeltaMap::psi(4)]
        );
        assert_eq!(
            c4.domains().collect::<Vec<_>>(),
            vec![GradeSet::full(4), GradeSet::from_grades(&[0, 1, 4])]
        );
        let c5 = default_chain(5).unwrap();
        assert_eq!(
            c5.maps().collect::<Vec<_>>(),
            vec![
                LengthDeltaMap::reversion(5),
                LengthDeltaMap::psi(5),
                LengthDeltaMap::conjugation(5)
            ]
        );
        assert_eq!(
            c5.domains().collect::<Vec<_>>(),
            vec![
                GradeSet::full(5),
                GradeSet::from_grades(&[0, 1, 4, 5]),
                GradeSet::from_grades(&[0, 5])
            ]
        );
        assert_eq!(default_chain(6), Err(Error::DimensionOutOfRange { n: 6 }));
    }

    #[test]
    fn alternate_chain_shapes() {
        let c3 = alternate_chain(3).unwrap();
        assert_eq!(
            c3.maps().collect::<Vec<_>>(),
            vec![LengthDeltaMap::conjugation(3), LengthDeltaMap::reversion(3)]
        );
        let c4 = alternate_chain(4).unwrap();
        assert_eq!(
            c4.maps().collect::<Vec<_>>(),
            vec![LengthDeltaMap::conjugation(4), LengthDeltaMap::psi(4)]
        );
        assert_eq!(
            c4.domains().collect::<Vec<_>>(),
            vec![GradeSet::full(4), GradeSet::from_grades(&[0, 3, 4])]
        );
        assert_eq!(alternate_chain(2), Err(Error::DimensionOutOfRange { n: 2 }));
        assert_eq!(alternate_chain(5), Err(Error::DimensionOutOfRange { n: 5 }));
    }

    #[test]
    fn invalid_chains_are_rejected() {
        // ψ is not an anti-automorphism of all of Cl(p,q) for n = 4.
        assert!(matches!(
            InvolutionChain::new(4, &[LengthDeltaMap::psi(4)]),
            Err(Error::InvalidChain(_))
        ));
        // φ₊ alone leaves K ⊕ L₁ for n = 3.
        assert!(matches!(
            InvolutionChain::new(3, &[LengthDeltaMap::reversion(3)]),
            Err(Error::InvalidChain(_))
        ));
        assert!(matches!(
            InvolutionChain::new(3, &[LengthDeltaMap::reversion(4)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn unit_and_scalars() {
        for s in Signature::all() {
            let res = compose_inverse(&Multivector::one(s), &default_chain(s.n()).unwrap()).unwrap();
            assert_eq!(res.discriminant, r(1));
            assert_eq!(res.inverse, Some(Multivector::one(s)));
        }
        let s = sig(1, 3);
        assert_eq!(discriminant(&Multivector::scalar(s, r(3))), r(81));
        assert_eq!(discriminant(&Multivector::zero(s)), r(0));
        let s0 = sig(0, 0);
        assert_eq!(discriminant(&Multivector::scalar(s0, r(5))), r(5));
        assert_eq!(
            inverse(&Multivector::scalar(s0, r(5))).unwrap(),
            Multivector::scalar(s0, Rational::from_ratio(1, 5).unwrap())
        );
    }

    #[test]
    fn one_generator_examples() {
        let s = sig(0, 1);
        let res = compose_inverse(&mv(s, &[(&[], 2), (&[1], 1)]), &default_chain(1).unwrap()).unwrap();
        assert_eq!(res.discriminant, r(3));
        let third = Rational::from_ratio(1, 3).unwrap();
        assert_eq!(res.inverse.unwrap(), mv(s, &[(&[], 2), (&[1], -1)]).scale(&third));

        let zd = mv(s, &[(&[], 1), (&[1], 1)]);
        let res = compose_inverse(&zd, &default_chain(1).unwrap()).unwrap();
        assert_eq!(res.discriminant, r(0));
        assert_eq!(res.inverse, None);
        assert_eq!(inverse(&zd), Err(Error::NotInvertible));
    }

    #[test]
    fn generator_inverses() {
        assert_eq!(
            inverse(&mv(sig(0, 2), &[(&[1], 1)])).unwrap(),
            mv(sig(0, 2), &[(&[1], 1)])
        );
        assert_eq!(
            inverse(&mv(sig(2, 0), &[(&[1], 1)])).unwrap(),
            mv(sig(2, 0), &[(&[1], -1)])
        );
    }

    #[test]
    fn cl12_example() {
        let s = sig(1, 2);
        let a = mv(s, &[(&[], 1), (&[1], 2), (&[2, 3], 1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(&a * &inv, Multivector::one(s));
        assert_eq!(&inv * &a, Multivector::one(s));
    }

    #[test]
    fn chain_dimension_must_match() {
        let a = Multivector::one(sig(0, 2));
        assert!(matches!(
            compose_inverse(&a, &default_chain(3).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn d_equals_d_prime_on_zero() {
        assert_eq!(verify_d_equals_dprime(&Multivector::zero(sig(1, 2))), Ok(true));
        assert_eq!(
            verify_d_equals_dprime(&Multivector::zero(sig(2, 3))),
            Err(Error::DimensionOutOfRange { n: 5 })
        );
    }
}
