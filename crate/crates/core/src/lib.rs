//! Exact toolkit for polynomial differential forms, multivector fields and
//! degree bookkeeping of distributions and foliations on complex projective
//! space.
//!
//! Everything is computed over arbitrary-precision rationals, so identities
//! that hold, hold exactly: the Euler relation `i_\vartheta omega = 0`,
//! tangency contractions, wedge/contraction anticommutation rules, Bott
//! cohomology dimensions and the Koszul twist schedule behind the degree
//! inequalities for flags of distributions.
//!
//! The crate is `no_std` (with `alloc`); IO, parsing and the command line
//! front end live in the companion `flagforge` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bott;
pub mod exterior;
pub mod families;
pub mod flags;
pub mod poly;
pub mod projective;
pub mod zeros;

pub use poly::{Poly, Rat};

use num_bigint::BigInt;

/// Shorthand for building an exact rational from an integer pair.
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}
