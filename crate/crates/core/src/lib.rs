//! Periodic orbits of the perpendicular side-to-side map in regular polygons
//! with an odd number of sides: exact counts, enumeration and construction.
//!
//! * [`combinatorics`]: totient, multinomials, necklaces, restricted partitions.
//! * [`transition`]: the side-transition graph, exact matrix powers, pure blocks.
//! * [`counting`]: the closed-form orbit count with an itemized breakdown.
//! * [`oracle`]: brute-force enumeration of cyclic side words.
//! * [`geometry`]: realizing a side word as an actual orbit via its return map.
//! * [`svg`]: SVG drawings of polygons and orbits.
//! * [`cli`]: the `inscribed` command-line front end.

pub mod cli;
pub mod combinatorics;
pub mod counting;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod matrix;
pub mod oracle;
pub mod svg;
pub mod transition;

pub use error::{Error, Result};
