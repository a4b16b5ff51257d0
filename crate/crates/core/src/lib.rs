//! Piecewise rotations of the plane.
//!
//! A piecewise rotation acts on each of two half-planes as a rotation by the
//! same angle `α` about its own centre. This crate evaluates the map, its
//! injectivity discriminant and norm, certified radii for the limit sets in
//! the irrational and rational (even denominator) cases, orbit and periodic
//! island analysis, and raster images of the bounded-orbit set.

pub mod angle;
pub mod bounds;
pub mod diophantine;
pub mod dynamics;
pub mod error;
pub mod presets;
pub mod geometry;
pub mod map;
pub mod params;
pub mod raster;
pub mod rational;
pub mod report;

pub use angle::AngleSpec;
pub use error::{Error, Result};
pub use geometry::Window;
pub use map::{Classification, MapKind, Piece, PiecewiseRotation, RawParams};

/// Complex numbers in double precision.
pub type Complex = num_complex::Complex64;

/// Run `f` on a dedicated pool of `threads` workers (0 = rayon default).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(f)
}
