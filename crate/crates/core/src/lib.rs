//! Distance concentration in high-dimensional hypercubes.
//!
//! For a fixed anchor `a` in `[0, N]^d`, the normalized distances from `a` to
//! the cube's vertices (or to all its lattice points) cluster tightly around
//! a value that depends only on how far `a` sits from the center. This crate
//! provides:
//!
//! * [`exact`]: closed-form first and second moments in exact rationals, plus
//!   the concentration bounds and their preconditions;
//! * [`oracle`]: brute-force enumeration that recomputes all of it from the
//!   definitions for small cubes;
//! * [`geometry`]: floating-point distance, angle and triangle predicates;
//! * [`montecarlo`]: reproducible parallel estimators for large `d`;
//! * [`report`]: the command implementations behind the `hyperlens` binary.

pub mod error;
pub mod exact;
pub mod geometry;
pub mod montecarlo;
pub mod oracle;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use exact::{
    Anchor, ConcentrationBound, CubeSpec, MomentReport, Population, SigmaTerms, TheoremId,
};
