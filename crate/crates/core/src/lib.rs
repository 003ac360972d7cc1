//! Complete arcs in projective planes over finite fields from the rational
//! points of plane curves, together with the supporting finite-field,
//! polynomial and Galois-theoretic machinery.

pub mod arc;
pub mod cli;
pub mod curve;
pub mod error;
pub mod galois;
pub mod gf;
pub mod io;
pub mod plane;
pub mod poly;
pub mod tables;

pub use arc::{build_complete_arc, ArcSet};
pub use curve::{Curve, Family};
pub use error::{Error, Result};
pub use gf::{Elem, Field};
pub use plane::{Line, Plane, Point};
pub use poly::Poly;
