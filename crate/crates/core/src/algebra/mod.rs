//! Finite-field arithmetic, determinants and subset transforms.

mod field;
mod matrix;
pub mod poly;
mod zeta;

#[cfg(all(feature = "clmul", target_arch = "x86_64"))]
pub use field::Clmul;
pub use field::{clmul_portable, ff_inv, ff_mul, ff_pow, reduce, FieldElem, MulImpl, Portable, MODULUS_LOW};
pub use matrix::{determinant_with, SquareMatrix};
pub use zeta::{fast_zeta, sieve_subsets, zeta_in_place, SubsetTable, MAX_GROUND};
