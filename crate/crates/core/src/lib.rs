//! Exact counting of monic polynomials over finite fields with prescribed
//! leading coefficients and prescribed factorization patterns.
//!
//! The crate has two independent routes to every count:
//!
//! - closed-form and group-ring formulas built from Möbius sums, generalized
//!   binomials, and truncated generating functions over the group algebra of
//!   truncated reversed polynomials ([`closed_form`], [`group_ring`]);
//! - a brute-force oracle that enumerates, factors, and tallies
//!   ([`oracle`]).
//!
//! All arithmetic is exact; every public counting operation returns a
//! `BigInt` and the two routes are required to agree bit for bit.

pub mod closed_form;
mod error;
pub mod exact;
pub mod field;
pub mod group_ring;
pub mod oracle;

pub use error::{Error, Result};
pub use field::{FieldCtx, FqElem, FqPoly, Mode, PrimePower};
