//! Yokota potential functions for hyperbolic knot diagrams.
//!
//! The crate turns an ideal triangulation (a list of signed tetrahedron
//! shape ratios) into its potential function `V`, the hyperbolicity
//! equations `exp(z_k dV/dz_k) = 1`, and the corrected potential `V_0`
//! whose imaginary part is the volume of the representation attached to a
//! solution. On top of that it enumerates essential solutions, exactly for
//! twist knots and by multi-start Newton for arbitrary input, and extracts
//! complex volumes, Borel regulator components and degree bounds.
//!
//! Everything here is pure computation and builds without `std`; file
//! formats and the command-line driver live in the `yokota` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod diagram;
mod error;
mod linalg;
pub mod numerics;
pub mod poly;
pub mod potential;
pub mod solver;
pub mod volume;

pub use diagram::{SideRef, Sign, TetraTerm, Triangulation};
pub use error::Error;
pub use num_complex::Complex64;
pub use poly::IntPolynomial;
pub use potential::{HyperbolicityEquation, PotentialFunction};
pub use solver::{Solution, SolutionSet, SolverConfig, Tolerances, TwistReduction};
pub use volume::{ComplexVolume, VolumeReport};

pub type Result<T, E = Error> = core::result::Result<T, E>;
