// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod distribution;
pub mod error;
pub mod hydrogen;
pub mod identities;
pub mod operators;
pub mod output;
pub mod quadrature;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
