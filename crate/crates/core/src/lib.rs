//! Exact Clifford algebras Cl(p,q) with `p + q <= 5`.
//!
//! Elements carry rational coefficients, so every identity is checked with
//! exact equality. Inverses are computed by composing grade-diagonal
//! anti-automorphisms (reversion φ₊, Clifford conjugation φ₋, and the map ψ
//! that flips grades 1 through 4): for `n = p + q`
//!
//! | n    | α⁻¹ · D                               |
//! |------|----------------------------------------|
//! | 1, 2 | φ₋(α)                                  |
//! | 3    | φ₊(α) φ(α) φ₋(α)                       |
//! | 4    | φ₊(α) ψ(α φ₊(α))                       |
//! | 5    | φ₊(α) ψ(α φ₊(α)) φ₋(α₃), α₃ = α₂ψ(α₂)  |
//!
//! where the scalar `D` vanishes exactly when α is not invertible. The
//! [`oracle`] module provides an independent check through the left-regular
//! matrix representation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod blade;
pub mod closed_form;
pub mod error;
pub mod inverse;
pub mod involution;
pub mod multivector;
pub mod oracle;
pub mod parser;
pub mod rational;

pub use blade::{blade_mul, grade, transposition_sign, Blade, BladeSyntaxError, Sign, Signature, SignedBlade};
pub use closed_form::discriminant_closed_form;
pub use error::Error;
pub use inverse::{
    alternate_chain, compose_inverse, default_chain, discriminant, inverse, verify_d_equals_dprime, ChainStep,
    InverseResult, InvolutionChain,
};
pub use involution::{
    apply_delta, constraints_for, delta_solutions, invariant_grades, is_special_involution, DeltaConstraint, GradeSet,
    LengthDeltaMap, NamedMap,
};
pub use multivector::Multivector;
pub use oracle::{oracle_inverse, oracle_is_invertible, regular_matrix, RegularMatrix};
pub use parser::{parse_multivector, LexErrorKind, ParseError};
pub use rational::Rational;
