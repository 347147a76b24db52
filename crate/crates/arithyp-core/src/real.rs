//! Minimal real-number abstraction so geometry can run in `f64` or in an
//! arbitrary-precision backend supplied by a downstream crate.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn acos(&self) -> Self;
    fn pi() -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self.clone())
    }

    fn sinh(&self) -> Self {
        let e = self.exp();
        (e.clone() - Self::one() / e) / Self::from_i64(2)
    }

    fn cosh(&self) -> Self {
        let e = self.exp();
        (e.clone() + Self::one() / e) / Self::from_i64(2)
    }

    fn acosh(&self) -> Self {
        let x = self.clone();
        (x.clone() + (x.clone() * x - Self::one()).sqrt()).ln()
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        libm::sqrt(*self)
    }
    fn ln(&self) -> Self {
        libm::log(*self)
    }
    fn exp(&self) -> Self {
        libm::exp(*self)
    }
    fn acos(&self) -> Self {
        libm::acos(*self)
    }
    fn pi() -> Self {
        core::f64::consts::PI
    }
    fn abs(&self) -> Self {
        libm::fabs(*self)
    }
    fn sinh(&self) -> Self {
        libm::sinh(*self)
    }
    fn cosh(&self) -> Self {
        libm::cosh(*self)
    }
    fn acosh(&self) -> Self {
        libm::acosh(*self)
    }
}
