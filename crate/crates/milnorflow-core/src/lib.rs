//! Invariants of quasihomogeneous isolated hypersurface singularities.
//!
//! The crate has two halves that meet in [`verifier`]:
//!
//! * an exact-arithmetic half: sparse polynomials over the rationals,
//!   weight-system inference, Buchberger's algorithm, the monomial basis of
//!   the Milnor algebra and the invariants attached to it (spectrum,
//!   spectral-flow family, variation structure, eta fractional sums, link
//!   predicates);
//! * a floating-point half: Hermitian symplectic spaces, Lagrangians as
//!   graphs of unitaries, Cayley transform, winding numbers, spectral flow,
//!   Maslov and triple indices in finite dimensions.
//!
//! The verifier builds, for a given singularity, the explicit circle-action
//! loop of boundary conditions and checks the closed-form spectral-flow and
//! eta formulas against the numeric Maslov machinery.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod milnor;
pub mod order;
pub mod poly;
pub mod report;
pub mod sample;
pub mod selftest;
pub mod symplectic;
pub mod verifier;
pub mod weights;


