//! Built-in test categories.

use super::{load_category, FusionCategory};
use crate::error::{Error, Result};

pub const NAMES: [&str; 5] = ["vec_z2", "vec_z3", "vec_z2_twisted", "fibonacci", "ising"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "vec_z2" => include_str!("../../data/vec_z2.json"),
        "vec_z3" => include_str!("../../data/vec_z3.json"),
        "vec_z2_twisted" => include_str!("../../data/vec_z2_twisted.json"),
        "fibonacci" => include_str!("../../data/fibonacci.json"),
        "ising" => include_str!("../../data/ising.json"),
        _ => return None,
    })
}

pub fn load(name: &str) -> Result<FusionCategory> {
    let src = source(name).ok_or_else(|| Error::UnknownCatalog(name.to_owned()))?;
    load_category(src.as_bytes())
}

/// Extension summary of the conformal embedding `SU(2)_10 ⊂ SO(5)_1`.
pub const E6_EXTENSION: &str = include_str!("../../data/e6_extension.json");
