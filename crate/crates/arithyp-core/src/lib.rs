//! Exact arithmetic of rational quadratic forms of signature (3,1), their
//! complementary forms and explicit rational isometries into the standard
//! form of signature (6,1), together with the index bounds and hyperbolic
//! constants that those isometries feed into.
//!
//! Everything here is `no_std` with `alloc`; floating point goes through
//! `libm`, and the geometry is generic over [`real::Real`] so a
//! higher-precision backend can be plugged in.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod bounds;
pub mod complement;
mod error;
pub mod geometry;
pub mod isometry;
pub mod qform;
pub mod real;

pub use arith::Rational;
pub use error::Error;
pub use qform::{DiagForm, Place};
