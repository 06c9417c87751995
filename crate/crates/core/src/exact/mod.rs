//! Exact arithmetic and lattice normal forms.

pub mod enumerate;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod rational;
pub mod snf;
pub mod span;

pub use enumerate::{enumerate_between, for_each_between};
pub use lattice::{Lattice, LatticeJson};
pub use matrix::{QMatrix, ZMatrix};
pub use module::{Module, Ring};
pub use rational::{Int, Rat};
pub use snf::{snf, ElementaryDivisors};
pub use span::Span;
