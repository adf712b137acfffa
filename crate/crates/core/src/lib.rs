//! Arbitrary-precision evaluation of the Rogers–Ramanujan continued fraction
//! `R(q)` and its derivative through singular moduli, the degree-5 modular
//! equation and its radical solution, plus Ramanujan's cubic continued fraction.
//!
//! The crate is `no_std` (it needs `alloc`). All routines are pure functions
//! of a [`NumericContext`] and their arguments.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod checks;
pub mod context;
pub mod cubic;
pub mod elliptic;
pub mod error;
pub mod modular5;
pub mod numerics;
pub mod qseries;
pub mod real;
pub mod rrcf;

pub use context::NumericContext;
pub use error::{NumError, Result};
pub use real::Real;
