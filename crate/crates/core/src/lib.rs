//! Exact verification toolkit for the meta Racah algebra in its
//! finite-dimensional bidiagonal representation.

pub mod algebra;
pub mod diffmodel;
pub mod eigenbases;
pub mod error;
pub mod hyper;
pub mod matrix;
pub mod matrixreps;
pub mod params;
pub mod racahpoly;
pub mod rationalfns;
pub mod rational;
pub mod report;
pub mod suites;
pub mod sweep;

pub use algebra::{CentralParams, Generators};
pub use eigenbases::{BasisFamily, BasisLabel, Bases};
pub use error::{Error, Result};
pub use hyper::HypSeries;
pub use matrix::RationalMatrix;
pub use params::{validate_params, FParams, Params};
pub use rational::Rational;
pub use report::{Check, Status, VerificationReport};
pub use diffmodel::{DiffOp, LaurentPoly, ModelOperators};
pub use racahpoly::{RacahOverlaps, RacahParams};
pub use rationalfns::RationalOverlaps;
pub use suites::{run_suite, run_suites, Suite};
pub use sweep::{SweepDraw, SweepGenerator};
