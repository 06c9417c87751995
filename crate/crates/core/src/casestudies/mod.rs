//! Worked examples: ideal classes of imaginary quadratic fields as orbits of
//! lattices, and `PGL₂` on `Sym²` over `Z_(2)`.

pub mod pgl2;
pub mod quad;

pub use pgl2::{pgl2_sym2_report, Assertion, Pgl2Report, Status};
pub use quad::{
    class_orbit_count, is_order, minkowski_bound, multiplier_ring, scaling_between, ClassGroupReport, FractionalIdeal,
    QuadField,
};
