//! Curvature of normal metric contact pairs from chart-defined metrics.

#![allow(
    clippy::needless_range_loop,
    clippy::neg_cmp_op_on_partial_ord,
    clippy::should_implement_trait,
    clippy::redundant_guards
)]

pub mod bochner;
pub mod catalog;
pub mod commands;
pub mod contact;
pub mod conventions;
pub mod error;
pub mod expr;
pub mod forms;
pub mod jet;
pub mod linalg;
pub mod manifold_file;
pub mod report;
pub mod riemann;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
