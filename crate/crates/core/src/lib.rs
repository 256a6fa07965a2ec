//! Computer algebra for tortkara triple systems.
//!
//! The tortkara triple product `[a,b,c] = [[a,b],c]` lives inside the free
//! Zinbiel algebra, where every multilinear monomial rewrites to a sum of
//! right-normed words. This crate expands skew-ternary monomials into that
//! normal form, builds the resulting expansion matrices, and finds the
//! relations they satisfy with exact linear algebra over the integers, the
//! rationals and prime fields, lattice reduction, and the representation
//! theory of the symmetric group.
//!
//! The linear algebra is generic over the coefficient field through the
//! [`Field`] trait; the aliases below name the concrete fields in use.

pub mod error;
pub mod expansion;
pub mod lattice;
pub mod linalg;
pub mod pipeline;
pub mod scalar;
pub mod skew;
pub mod symrep;
pub mod zinbiel;

pub use error::{Error, Result};
pub use scalar::{Field, Fp};

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// The prime field used for the arity-7 computations.
pub type F101 = Fp<101>;

/// Dense matrix over the integers.
pub type IntMatrix = linalg::Matrix<Integer>;
/// Dense matrix over the rationals.
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Dense matrix over the integers modulo 101.
pub type F101Matrix = linalg::Matrix<F101>;

/// Default prime for modular elimination.
pub const DEFAULT_PRIME: u32 = 101;
