//! The scalar algebra expressions are evaluated over.
//!
//! Both plain `f64` and [`Jet2`](crate::jet::Jet2) implement [`Scalar`], so a
//! single evaluator produces either values or values with exact first and
//! second derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    /// The plain numeric value (the zeroth-order slot).
    fn value(&self) -> f64;

    /// A constant living in the same algebra as `self` (same jet dimension).
    fn lift(&self, c: f64) -> Self;

    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn powf(&self, exponent: f64) -> Self;
}

impl Scalar for f64 {
    fn value(&self) -> f64 {
        *self
    }

    fn lift(&self, c: f64) -> Self {
        c
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn tan(&self) -> Self {
        f64::tan(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn powf(&self, exponent: f64) -> Self {
        f64::powf(*self, exponent)
    }
}
