//! Dynamics of the one-parameter tangent family
//!
//! ```text
//!     f_lambda(z) = lambda + tan z^2
//! ```
//!
//! a meromorphic map with one critical point at the origin and a pair of
//! finite asymptotic values `lambda + i`, `lambda - i`. The crate covers
//! forward iteration on the sphere ([`map`], [`orbit`]), branch-indexed
//! inversion ([`inverse`]), symbolic coding of orbits that escape through
//! the poles ([`symbolic`]), and rasterized dynamical / parameter plane
//! classification ([`planes`]).

pub mod inverse;
pub mod map;
pub mod orbit;
pub mod planes;
pub mod symbolic;

pub use inverse::{BranchIndex, InverseError, Sign};
pub use map::{MapError, MapParameter, SpherePoint, ZeroPoleIndex};
pub use orbit::{
    CycleClass, CycleInfo, OrbitError, OrbitOptions, OrbitResult, OrbitStatus, SingularFate,
    TangencyPoint,
};
pub use planes::{ClassCode, ComponentStats, GridSpec, PixelKind, Raster, RegionAi};
pub use symbolic::{CylinderSet, ItineraryWord, SymbolicError};

pub use num_complex::Complex64;
