#![no_std]
//! Exact bookkeeping of local monodromy for multiplicative convolution on the
//! one-dimensional torus.

extern crate alloc;

mod error;
pub mod conv;
pub mod foundations;
pub mod lft;
pub mod localdata;
pub mod pkchi;

pub use error::{Error, Result};
