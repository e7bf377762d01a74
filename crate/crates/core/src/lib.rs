//! Exact-arithmetic computer algebra for extended affine Weyl groups,
//! the graded double affine Hecke algebra, and parahoric double-coset
//! convolution algebras.
//!
//! Everything is computed over exact rationals. The crate is organized
//! around the chain
//!
//! * [`rootsys`] — finite root data (types A–G, simply-connected or
//!   adjoint), Killing form, highest root, dual Coxeter number;
//! * [`afflattice`] — the affine (co)weight lattices with central and
//!   loop-rotation coordinates, affine simple (co)roots, star map;
//! * [`extweyl`] — the extended affine Weyl group, its action on the
//!   affine lattices, lengths, reduced words, and double cosets;
//! * [`daha`] — the graded double affine Hecke algebra with normal-form
//!   multiplication by straightening;
//! * [`polyrep`] — a divided-difference operator model used as an
//!   independent oracle for [`daha`];
//! * [`parahoric`] / [`convolution`] — standard parahoric types and the
//!   bi-invariant function algebras with their convolution product;
//! * [`verify`] — seeded, replayable identity suites producing
//!   machine-readable reports.
//!
//! All values are immutable after construction and all operations are
//! pure, so everything here is safe to use from multiple threads.

// indexed loops are the clearest idiom for the small dense matrices here
#![allow(clippy::needless_range_loop)]

pub mod afflattice;
pub mod convolution;
pub mod daha;
pub mod error;
pub mod extweyl;
pub mod parahoric;
pub mod poly;
pub mod polyrep;
pub mod rat;
pub mod rootsys;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};
pub use rat::Rat;
pub use rootsys::{CartanType, FinCoweight, FinWeight, IsogenyFlavor, RootDatum, WeylElt};
