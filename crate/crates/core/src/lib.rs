//! Exact-arithmetic toolkit for split simple Lie algebras over prime
//! fields, their irreducible highest-weight modules, and machine-checkable
//! generic-stabilizer verdicts.
//!
//! The crate is organized bottom-up:
//!
//! - [`fq`], [`fqmat`], [`qmat`]: exact linear algebra over F_{p^k} and Q.
//! - [`roots`]: root systems, weights, isogeny lattices, Weyl dimension.
//! - [`chevalley`]: structure constants, brackets, centralizers, the
//!   p-operation.
//! - [`hwmodule`]: Weyl modules over Z, their contravariant form, and the
//!   irreducible quotients over F_p, with exact action matrices.
//! - [`stabilizer`]: stabilizer kernels, randomized generic-freeness
//!   probing, and re-checkable certificates.
//! - [`nilpotent`]: partition-indexed nilpotent representatives for the
//!   classical matrix algebras, the orbit/fixed-space inequality engine,
//!   Jordan forms on Sym^2 and wedge powers, and toral sweeps.

pub mod chevalley;
pub mod error;
pub mod fq;
pub mod fqmat;
pub mod hwmodule;
pub mod nilpotent;
pub mod qmat;
pub mod roots;
pub mod stabilizer;
pub mod verma;

pub use error::{Error, Result};
