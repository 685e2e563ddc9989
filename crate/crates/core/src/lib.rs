//! Relative tube algebras of fusion subcategories, their block
//! decomposition into half-braidings, and α-induction counting checks.

// index loops mirror the tensor formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod alpha;
pub mod commutant;
pub mod error;
pub mod fusion_data;
pub mod half_braiding;
pub mod hom;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod tube;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
