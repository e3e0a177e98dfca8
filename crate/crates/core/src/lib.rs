//! Isoperimetric functionals of plane polygons.
//!
//! The crate constructs the cyclic polygon realizing a list of side lengths,
//! evaluates the side-length functionals built from the factors
//! `1 - 2 a_i / L` (area proxy `P`, pseudo-perimeter `Lhat`, the ratios
//! `phi`, `tau`, `nu`, `zeta`, and the associated Bonnesen-type deficits),
//! provides closed forms for several special families, and runs sweeps and
//! counterexample searches over polygon populations.
//!
//! All types are immutable values and all operations are pure functions, so
//! everything here is safe to use from any number of threads.

pub mod cyclic;
pub mod error;
pub mod families;
pub mod functionals;
pub mod geometry;
pub mod lab;
pub mod rng;

pub use cyclic::{build_cyclic, circumradius_of_sides, cyclic_area, cyclic_inradius, CenterLocation, CyclicPolygon};
pub use error::{IsoError, Result};
pub use functionals::FunctionalReport;
pub use geometry::{Point, SideList, Tolerance, VertexPolygon};
