//! Short-interval variance of the Liouville function over `F_q[t]`.
//!
//! The library enumerates monic polynomials over small finite fields and
//! computes the variance of an arithmetic function over short intervals in
//! two independent ways: directly, and through a sum over even Dirichlet
//! characters modulo a power of `t`. Around that core sit exact checks of
//! the identities and numeric checks of the character-sum inequalities that
//! the variance bound rests on.

pub mod arith;
pub mod bounds;
pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod poly;
pub mod sieve;
pub mod smooth;
pub mod variance;

pub use arith::{factor, pi_q, FactorTable, Factorization};
pub use characters::{unit_group_basis, DirichletChar, RotationNumber, UnitGroupBasis};
pub use error::{Budget, Error, Result};
pub use field::{make_field, Field};
pub use poly::{enumerate_monic, interval_key, IntervalKey, Poly};
pub use sieve::{sieve_irreducibles, SieveCache};
