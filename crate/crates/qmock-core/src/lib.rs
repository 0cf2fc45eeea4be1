//! High-precision q-series toolkit.
//!
//! Finite and infinite q-Pochhammer symbols, basic and bilateral
//! hypergeometric series, the six new mock theta functions in their
//! classical, generalized and bilateral forms, residual checks for their
//! expansions, and continued fraction evaluation. Everything runs on the
//! crate's own multiprecision [`Real`]/[`HPComplex`] types and needs only
//! `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod contfrac;
mod error;
pub mod float;
pub mod hyper;
pub mod identities;
pub mod mocktheta;
pub mod qcore;
pub mod series;

pub use error::{Error, Result};
pub use float::{bits_for_digits, HPComplex, Real};

/// Default decimal precision.
pub const DEFAULT_DIGITS: u32 = 50;

/// Working bits for [`DEFAULT_DIGITS`].
pub const DEFAULT_BITS: u32 = 175;
