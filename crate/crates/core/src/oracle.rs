//! Left-regular matrix representation and exact linear solving.
//!
//! Elimination clears row denominators and runs fraction-free on integers,
//! which keeps entry sizes bounded by the matrix minors.
//!
//! This is the ground truth the involution formulas are checked against: it
//! knows nothing about involutions, only that `M(a) vec(b) = vec(a b)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::blade::{blade_mul, Sign, Signature};
use crate::multivector::Multivector;
use crate::rational::Rational;

/// Matrix of left multiplication by an element, over the canonical blade
/// basis. Column `j` is the coefficient vector of `a * basis[j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RegularMatrix {
    sig: Signature,
    dim: usize,
    /// Row-major, `dim * dim` entries.
    entries: Vec<Rational>,
}

/// Position of each blade mask in canonical order.
fn basis_index(sig: Signature) -> Vec<usize> {
    let mut index = vec![0; sig.dim()];
    for (i, b) in sig.blades().enumerate() {
        index[b.mask() as usize] = i;
    }
    index
}

impl RegularMatrix {
    pub fn identity(sig: Signature) -> Self {
        let dim = sig.dim();
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        RegularMatrix { sig, dim, entries }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(m, x)| !m.is_zero() && !x.is_zero())
                    .map(|(m, x)| m * x)
                    .sum()
            })
            .collect()
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &RegularMatrix) -> RegularMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut entries = vec![Rational::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        entries[i * d + j] += a * b;
                    }
                }
            }
        }
        RegularMatrix {
            sig: self.sig,
            dim: d,
            entries,
        }
    }

    /// Rank by exact elimination.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.rows().map(<[Rational]>::to_vec).collect();
        forward_eliminate(rows, self.dim).rank()
    }

    /// Solves `self * x = rhs`; `None` if the matrix is singular.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.dim);
        let rows: Vec<Vec<Rational>> = self
            .rows()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.to_vec();
                r.push(b.clone());
                r
            })
            .collect();
        let echelon = forward_eliminate(rows, self.dim);
        if echelon.rank() < self.dim {
            return None;
        }
        Some(back_substitute(&echelon, self.dim))
    }
}

impl fmt::Debug for RegularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RegularMatrix {} {}x{}", self.sig, self.dim, self.dim)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

struct Echelon {
    /// Upper-triangular integer rows; row `i < rank` has its pivot at `pivots[i]`.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Clears the denominators of each row by scaling it with their lcm.
fn integer_rows(rows: Vec<Vec<Rational>>) -> Vec<Vec<BigInt>> {
    rows.into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) Gaussian elimination on the first `cols` columns,
/// pivoting on the first nonzero entry of each column. Every division by the
/// previous pivot is exact.
fn forward_eliminate(rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
    let mut rows = integer_rows(rows);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    for col in 0..cols {
        let rank = pivots.len();
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let p = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = core::mem::take(&mut row[col]);
            for (x, y) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                let mut v = &*x * p;
                if !factor.is_zero() && !y.is_zero() {
                    v -= &factor * y;
                }
                *x = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = p.clone();
        pivots.push(col);
    }
    Echelon { rows, pivots }
}

/// Back substitution on a full-rank upper-triangular augmented system.
fn back_substitute(echelon: &Echelon, dim: usize) -> Vec<Rational> {
    let rows = &echelon.rows;
    let mut x = vec![Rational::zero(); dim];
    for i in (0..dim).rev() {
        let mut acc = Rational::from(rows[i][dim].clone());
        for j in i + 1..dim {
            if !rows[i][j].is_zero() && !x[j].is_zero() {
                acc -= &Rational::from(rows[i][j].clone()) * &x[j];
            }
        }
        x[i] = acc / Rational::from(rows[i][i].clone());
    }
    x
}

/// `M(a)` with `M(a) vec(b) = vec(a b)`.
pub fn regular_matrix(a: &Multivector) -> RegularMatrix {
    let sig = a.sig();
    let dim = sig.dim();
    let index = basis_index(sig);
    let mut entries = vec![Rational::zero(); dim * dim];
    for (col, b) in sig.blades().enumerate() {
        for (e, x) in a.terms() {
            let p = blade_mul(e, b, sig);
            let row = index[p.blade.mask() as usize];
            entries[row * dim + col] = match p.sign {
                Sign::Plus => x.clone(),
                Sign::Minus => -x,
            };
        }
    }
    RegularMatrix { sig, dim, entries }
}

/// Inverse by solving `M(a) x = vec(1)`; `None` when `M(a)` is singular.
pub fn oracle_inverse(a: &Multivector) -> Option<Multivector> {
    let sig = a.sig();
    let mut unit = vec![Rational::zero(); sig.dim()];
    unit[0] = Rational::one();
    regular_matrix(a)
        .solve(&unit)
        .map(|x| Multivector::from_coefficients(sig, x))
}

/// Whether `M(a)` has full rank.
pub fn oracle_is_invertible(a: &Multivector) -> bool {
    let m = regular_matrix(a);
    m.rank() == m.dim()
}
