//! Exact formal power series, Riordan arrays, and the B-functions of
//! Riordan pseudo-involutions.
//!
//! Everything is computed over arbitrary-precision rationals. Truncated
//! series carry their precision explicitly and no operation ever pads unknown
//! coefficients with zeros.

pub mod chebfam;
pub mod error;
pub mod exec;
pub mod fps;
pub mod gammatool;
pub mod poly;
pub mod pseudo;
pub mod ratsolve;
pub mod registry;
pub mod rational;
pub mod riordan;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use fps::{HalfSeries, LaurentPoly, Series};
pub use poly::BivariatePoly;
pub use rational::Q;
