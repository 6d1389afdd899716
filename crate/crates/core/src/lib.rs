// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod closed_forms;
pub mod constants;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod pde_oracle;
pub mod polycert;

pub use error::{Error, Result};
