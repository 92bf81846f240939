//! Explicit discriminant polynomials for `1 <= p + q <= 4`.
//!
//! Coefficients are addressed the same way the polynomials are written:
//! `x(&[i, j, ...])` is the coefficient of the blade of `e_i e_j ...`, with the
//! sign of the standard form ignored, so `x(&[4, 3]) == x(&[3, 4])`. Factors
//! `e_i^2` are generator squares; the `e^2` inside `C(e)` is the square of the
//! whole blade `e`, which carries the extra reversion sign
//! `(-1)^(k(k-1)/2)`.

use crate::blade::{blade_mul, Blade, Signature};
use crate::error::Error;
use crate::multivector::Multivector;
use crate::rational::Rational;

struct Coeffs<'a> {
    a: &'a Multivector,
    sig: Signature,
}

impl Coeffs<'_> {
    fn x(&self, indices: &[usize]) -> Rational {
        let mask = indices.iter().fold(0u8, |m, &i| m ^ (1 << (i - 1)));
        self.a.coeff(Blade::from_mask(mask))
    }

    fn xb(&self, blade: Blade) -> Rational {
        self.a.coeff(blade)
    }

    /// `e_{i1}^2 e_{i2}^2 ...` as `±1`.
    fn gen_squares(&self, indices: &[usize]) -> Rational {
        let negative = indices.iter().filter(|&&i| self.sig.square(i).is_negative()).count();
        if negative % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// The scalar `e e` for a basis blade `e`.
    fn blade_square(&self, e: Blade) -> Rational {
        Rational::from(blade_mul(e, e, self.sig).sign.to_i8() as i64)
    }

    /// `C(e) = Σ_{a ∈ B_n} x_a² x_{ae}² e²`.
    fn c(&self, e: Blade) -> Rational {
        let sum: Rational = self
            .sig
            .blades()
            .map(|a| {
                let xa = self.xb(a);
                let xae = self.xb(Blade::from_mask(a.mask() ^ e.mask()));
                &(&xa * &xa) * &(&xae * &xae)
            })
            .sum();
        sum * self.blade_square(e)
    }

    /// `Σ_{e ∈ B'} C(e) - Σ_{e ∉ B'} C(e)`.
    fn signed_c_sum(&self, primed: &[Blade]) -> Rational {
        self.sig
            .blades()
            .map(|e| {
                let c = self.c(e);
                if primed.contains(&e) {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// `C₄''(i, j; k; l)`.
    fn c4_double_prime(&self, i: usize, j: usize, k: usize, l: usize) -> Rational {
        let x = |ix: &[usize]| self.x(ix);
        let first = &(&(&x(&[]) * &x(&[i, j, k])) - &(&x(&[i]) * &x(&[j, k])))
            - &(&(&x(&[j]) * &x(&[i, k])) - &(&x(&[k]) * &x(&[i, j])));
        let second = &(&(&x(&[l]) * &x(&[1, 2, 3, 4])) - &(&x(&[i, l]) * &x(&[j, k, l])))
            - &(&(&x(&[j, l]) * &x(&[i, k, l])) - &(&x(&[k, l]) * &x(&[i, j, l])));
        Rational::from(4) * (&first * &first + &second * &second) * self.gen_squares(&[i, j, k])
    }
}

fn blades(list: &[&[usize]]) -> alloc::vec::Vec<Blade> {
    list.iter().map(|ix| Blade::from_indices(ix)).collect()
}

/// Evaluates the explicit discriminant polynomial on `a`'s coefficients.
/// For every input it agrees with [`crate::inverse::discriminant`].
pub fn discriminant_closed_form(a: &Multivector) -> Result<Rational, Error> {
    let sig = a.sig();
    let cf = Coeffs { a, sig };
    let x = |ix: &[usize]| cf.x(ix);
    let sq = |r: Rational| &r * &r;
    let e2 = |ix: &[usize]| cf.gen_squares(ix);
    match sig.n() {
        1 => Ok(sq(x(&[])) - sq(x(&[1])) * e2(&[1])),
        2 => Ok(sq(x(&[])) - sq(x(&[1])) * e2(&[1]) - sq(x(&[2])) * e2(&[2]) + sq(x(&[1, 2])) * e2(&[1, 2])),
        3 => {
            let primed = blades(&[&[], &[1, 2, 3]]);
            let inner = &(&(&x(&[]) * &x(&[1, 2, 3])) - &(&x(&[1]) * &x(&[2, 3])))
                + &(&(&x(&[2]) * &x(&[1, 3])) - &(&x(&[3]) * &x(&[1, 2])));
            let c3_prime = Rational::from(4) * sq(inner) * e2(&[1, 2, 3]);
            Ok(cf.signed_c_sum(&primed) + c3_prime)
        }
        4 => {
            let primed = blades(&[&[], &[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4], &[1, 2, 3, 4]]);
            let even = &(&(&x(&[]) * &x(&[1, 2, 3, 4])) - &(&x(&[1, 2]) * &x(&[3, 4])))
                + &(&(&x(&[1, 3]) * &x(&[2, 4])) - &(&x(&[1, 4]) * &x(&[2, 3])));
            let odd = &(&(&x(&[1]) * &x(&[2, 3, 4])) - &(&x(&[2]) * &x(&[1, 3, 4])))
                + &(&(&x(&[3]) * &x(&[1, 2, 4])) - &(&x(&[4]) * &x(&[1, 2, 3])));
            let c4_prime = cf.c4_double_prime(1, 3, 2, 4)
                + cf.c4_double_prime(1, 4, 2, 3)
                + cf.c4_double_prime(1, 4, 3, 2)
                + cf.c4_double_prime(2, 4, 3, 1)
                - Rational::from(4) * (sq(even) + sq(odd)) * e2(&[1, 2, 3, 4]);
            Ok(cf.signed_c_sum(&primed) + c4_prime)
        }
        n => Err(Error::DimensionOutOfRange { n }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::discriminant;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn low_dimensions_by_hand() {
        // x + y e1 in Cl(1,0): x^2 + y^2; in Cl(0,1): x^2 - y^2.
        let a = |p, q| {
            Multivector::from_terms(
                Signature::new(p, q).unwrap(),
                [(Blade::ONE, r(3)), (Blade::generator(1), r(2))],
            )
            .unwrap()
        };
        assert_eq!(discriminant_closed_form(&a(1, 0)).unwrap(), r(13));
        assert_eq!(discriminant_closed_form(&a(0, 1)).unwrap(), r(5));

        // x=1, y=2, z=3, w=4 in Cl(1,1): 1 + 4 - 9 - 16 = -20
        let s = Signature::new(1, 1).unwrap();
        let m = Multivector::from_terms(
            s,
            [
                (Blade::ONE, r(1)),
                (Blade::from_indices(&[1]), r(2)),
                (Blade::from_indices(&[2]), r(3)),
                (Blade::from_indices(&[1, 2]), r(4)),
            ],
        )
        .unwrap();
        assert_eq!(discriminant_closed_form(&m).unwrap(), r(-20));
    }

    #[test]
    fn agrees_with_chain_on_random_points() {
        for sig in Signature::all().filter(|s| (1..=4).contains(&s.n())) {
            for seed in 0..40 {
                let a = Multivector::random(sig, seed, 6).unwrap();
                assert_eq!(discriminant_closed_form(&a).unwrap(), discriminant(&a), "{a:?}");
            }
        }
    }

    #[test]
    fn rejects_other_dimensions() {
        let a = Multivector::one(Signature::new(0, 0).unwrap());
        assert_eq!(discriminant_closed_form(&a), Err(Error::DimensionOutOfRange { n: 0 }));
        let a = Multivector::one(Signature::new(2, 3).unwrap());
        assert_eq!(discriminant_closed_form(&a), Err(Error::DimensionOutOfRange { n: 5 }));
    }
}
