//! Exact inf-convolution (min-plus convolution) over finite metric magmas,
//! the Katetov function monoid, sequence monoids with fast min-plus kernels,
//! and convex piecewise-linear Katetov functions on the line.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod cli;
pub mod error;
pub mod fnspace;
pub mod gen;
pub mod infconv;
pub mod io;
pub mod katetov;
pub mod magma;
pub mod monoid;
pub mod plcone;
pub mod rational;
pub mod report;
pub mod zline;

pub use error::{Error, Result};
pub use fnspace::{ExtValue, FnOnX};
pub use infconv::inf_conv;
pub use magma::{FiniteMetricMagma, MagmaClass, MetricTable};
pub use plcone::PlKatetovFn;
pub use rational::Rational;
pub use report::{Status, TheoremReport};
