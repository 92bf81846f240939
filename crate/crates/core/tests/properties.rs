//! Cross-module properties checked on seeded random elements.

use cliffinv::*;
use proptest::prelude::*;

fn sig_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Signature> {
    let sigs: Vec<Signature> = Signature::all().filter(|s| (min_n..=max_n).contains(&s.n())).collect();
    proptest::sample::select(sigs)
}

fn element(min_n: usize, max_n: usize) -> impl Strategy<Value = Multivector> {
    (sig_strategy(min_n, max_n), any::<u64>(), 1u32..=10)
        .prop_map(|(s, seed, bound)| Multivector::random(s, seed, bound).unwrap())
}

/// Keeps only the grades in `grades`.
fn restrict(a: &Multivector, grades: GradeSet) -> Multivector {
    grades
        .iter()
        .filter(|&k| k <= a.sig().n())
        .fold(Multivector::zero(a.sig()), |acc, k| &acc + &a.grade_project(k).unwrap())
}

fn one(s: Signature) -> Multivector {
    Multivector::one(s)
}

/// Every (map, domain) pair used by a default or alternate chain step.
fn chain_steps(n: usize) -> Vec<ChainStep> {
    let mut steps: Vec<ChainStep> = default_chain(n).unwrap().steps().to_vec();
    if let Ok(alt) = alternate_chain(n) {
        steps.extend_from_slice(alt.steps());
    }
    steps
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_two_sided(a in element(0, 5)) {
        let result = compose_inverse(&a, &default_chain(a.sig().n()).unwrap()).unwrap();
        let d = Multivector::scalar(a.sig(), result.discriminant.clone());
        prop_assert_eq!(&a * &result.factor_product(a.sig()), d);
        if let Some(inv) = result.inverse {
            prop_assert_eq!(&a * &inv, one(a.sig()));
            prop_assert_eq!(&inv * &a, one(a.sig()));
        }
    }

    #[test]
    fn discriminant_detects_singularity(a in element(0, 5)) {
        let d = discriminant(&a);
        prop_assert_eq!(d.is_zero(), !oracle_is_invertible(&a));
        match (inverse(&a), oracle_inverse(&a)) {
            (Ok(x), Some(y)) => prop_assert_eq!(x, y),
            (Err(Error::NotInvertible), None) => {}
            (x, y) => prop_assert!(false, "formula {:?} vs oracle {:?}", x, y),
        }
    }

    #[test]
    fn closed_form_matches_chain(a in element(1, 4)) {
        prop_assert_eq!(discriminant_closed_form(&a).unwrap(), discriminant(&a));
    }

    #[test]
    fn alternate_chain_gives_same_scalar(a in element(3, 4)) {
        prop_assert!(verify_d_equals_dprime(&a).unwrap());
    }

    #[test]
    fn reversion_and_conjugation_are_anti_automorphisms(a in element(0, 5), seed in any::<u64>()) {
        let b = Multivector::random(a.sig(), seed, 5).unwrap();
        let ab = &a * &b;
        prop_assert_eq!(ab.reversion(), &b.reversion() * &a.reversion());
        prop_assert_eq!(ab.conjugation(), &b.conjugation() * &a.conjugation());
        prop_assert_eq!(ab.main_involution(), &a.main_involution() * &b.main_involution());
        prop_assert_eq!(a.reversion().reversion(), a.clone());
        prop_assert_eq!(a.conjugation().conjugation(), a);
    }

    #[test]
    fn chain_maps_are_anti_automorphisms_on_their_domains(a in element(3, 5), seed in any::<u64>()) {
        let b = Multivector::random(a.sig(), seed, 5).unwrap();
        for step in chain_steps(a.sig().n()) {
            let (x, y) = (restrict(&a, step.domain), restrict(&b, step.domain));
            let f = |m: &Multivector| step.map.apply(m).unwrap();
            prop_assert_eq!(f(&(&x * &y)), &f(&y) * &f(&x), "{} on {}", step.map, step.domain);
        }
    }

    #[test]
    fn sum_and_product_with_image_are_fixed(a in element(1, 5)) {
        for step in chain_steps(a.sig().n()).into_iter().chain(
            [LengthDeltaMap::reversion(a.sig().n()), LengthDeltaMap::conjugation(a.sig().n())]
                .map(|map| ChainStep { map, domain: GradeSet::full(a.sig().n()) }),
        ) {
            let x = restrict(&a, step.domain);
            let fx = step.map.apply(&x).unwrap();
            let fixed = invariant_grades(step.map, step.domain);
            prop_assert!((&x + &fx).grade_support().is_subset(fixed));
            prop_assert!((&x * &fx).grade_support().is_subset(fixed));
        }
    }

    #[test]
    fn involutions_preserve_invertibility(a in element(1, 5)) {
        let inv = oracle_is_invertible(&a);
        prop_assert_eq!(oracle_is_invertible(&a.reversion()), inv);
        prop_assert_eq!(oracle_is_invertible(&a.conjugation()), inv);
    }

    #[test]
    fn fixed_elements_have_fixed_inverses(a in element(1, 5)) {
        let n = a.sig().n();
        for f in [LengthDeltaMap::reversion(n), LengthDeltaMap::conjugation(n)] {
            let fixed = restrict(&a, invariant_grades(f, GradeSet::full(n)));
            if let Some(inv) = oracle_inverse(&fixed) {
                prop_assert_eq!(f.apply(&inv).unwrap(), inv);
            }
        }
    }

    #[test]
    fn display_equalities(a in element(3, 5)) {
        let rev = a.reversion();
        let conj = a.conjugation();
        let main = a.main_involution();
        match a.sig().n() {
            3 => prop_assert_eq!(&(&rev * &main) * &conj, &(&conj * &main) * &rev),
            4 => prop_assert_eq!(&rev * &(&a * &rev).psi(), &conj * &(&a * &conj).psi()),
            _ => {
                let result = compose_inverse(&a, &default_chain(5).unwrap()).unwrap();
                let expanded = [rev.clone(), (&a * &rev).psi(), (&main * &conj).psi(), &main * &conj];
                prop_assert_eq!(&result.factors[0], &expanded[0]);
                prop_assert_eq!(&result.factors[1], &expanded[1]);
                let a2 = &a * &rev;
                prop_assert_eq!(a2.conjugation(), &main * &conj);
                prop_assert_eq!(result.factor_product(a.sig()), expanded.iter().fold(one(a.sig()), |acc, f| &acc * f));
            }
        }
    }

    #[test]
    fn printed_form_parses_back(a in element(0, 5)) {
        prop_assert_eq!(parse_multivector(&a.to_string(), a.sig()).unwrap(), a);
    }
}

/// Blade-level check of `f(xy) = f(y) f(x)` for every pair of basis blades with
/// grades in `grades`.
fn anti_automorphism_on_blades(f: LengthDeltaMap, grades: GradeSet, sig: Signature) -> bool {
    let blades: Vec<Blade> = sig.blades().filter(|b| grades.contains(b.grade())).collect();
    blades.iter().all(|&x| {
        blades.iter().all(|&y| {
            let xy = blade_mul(x, y, sig);
            let yx = blade_mul(y, x, sig);
            let lhs = xy.sign * f.delta(xy.blade.grade());
            let rhs = yx.sign * f.delta(x.grade()) * f.delta(y.grade());
            debug_assert_eq!(xy.blade, yx.blade);
            lhs == rhs
        })
    })
}

#[test]
fn solver_matches_blade_level_brute_force() {
    for n in 0..=5 {
        let sig = Signature::new(n, 0).unwrap();
        let other = Signature::new(0, n).unwrap();
        for bits in 0u8..1 << (n + 1) {
            let grades = GradeSet::from_bits(bits | 1);
            let solutions = delta_solutions(grades, n).unwrap();
            let brute: Vec<LengthDeltaMap> = (0..1u16 << n)
                .map(|neg| {
                    LengthDeltaMap::from_fn(n, |k| {
                        if neg >> (k - 1) & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                })
                .filter(|&f| anti_automorphism_on_blades(f, grades, sig))
                .collect();
            assert_eq!(solutions, brute, "n={n} I={grades}");
            for f in &brute {
                assert!(anti_automorphism_on_blades(*f, grades, other));
            }
        }
    }
}

#[test]
fn invariant_grades_of_reversion_and_conjugation() {
    for n in 0..=5 {
        let full = GradeSet::full(n);
        let rev: GradeSet = (0..=n).filter(|k| k % 4 <= 1).collect();
        let conj: GradeSet = (0..=n).filter(|k| k % 4 == 0 || k % 4 == 3).collect();
        assert_eq!(invariant_grades(LengthDeltaMap::reversion(n), full), rev);
        assert_eq!(invariant_grades(LengthDeltaMap::conjugation(n), full), conj);
        let sig = Signature::new(0, n).unwrap();
        for b in sig.blades() {
            let m = Multivector::term(sig, b, Rational::one()).unwrap();
            assert_eq!(m.reversion() == m, rev.contains(b.grade()), "{b}");
            assert_eq!(m.conjugation() == m, conj.contains(b.grade()), "{b}");
        }
    }
}

#[test]
fn idempotent_zero_divisors_are_singular() {
    for sig in Signature::all() {
        for i in sig.p() + 1..=sig.n() {
            let a = parse_multivector(&format!("1 + e{i}"), sig).unwrap();
            assert_eq!(discriminant(&a), Rational::zero(), "{a:?}");
            assert!(!oracle_is_invertible(&a));
            assert_eq!(inverse(&a), Err(Error::NotInvertible));
        }
    }
}
