//! Lattices in representations of split reductive groups: exact lattice
//! arithmetic, Chevalley bases, highest-weight representations, sandwich
//! lattices, integral model shadows and two worked case studies.

pub mod casestudies;
pub mod error;
pub mod exact;
pub mod latconstruct;
pub mod models;
pub mod rep;
pub mod rootdata;
pub mod serde_util;

pub use error::{Error, Result};
