//! Exact decomposition of the representation of a finite group `G` on the
//! Riemann–Roch space `L(D)` of a curve with a tame `G`-action.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] materializes finite groups, conjugacy classes, cyclic
//!   subgroup classes and double cosets;
//! * [`cyclotomic`] provides exact arithmetic in `Q(ζ_N)`;
//! * [`characters`] computes character tables (Dixon–Schneider), class
//!   function algebra and Galois orbits;
//! * [`cover`] derives genera and Riemann–Roch dimensions from branch data;
//! * [`equivariant`] evaluates the closed-form multiplicities, the
//!   ramification module, the equivariant degree and Borne's formula;
//! * [`oracle`] re-derives the multiplicities from an exact linear system
//!   and checks the character identities behind them.

pub mod arith;
pub mod characters;
pub mod context;
pub mod cover;
pub mod cyclotomic;
pub mod equivariant;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod oracle;
pub mod random;

pub use context::GroupContext;
pub use cyclotomic::{Cyclotomic, Rational};
pub use error::{Error, Result};
