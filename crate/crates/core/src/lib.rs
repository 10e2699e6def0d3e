//! Exact symbolic computation for supercommutative algebra and supergeometry.

pub mod acs;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod fpoints;
pub mod grassmann;
pub mod moduli;
pub mod morph;
pub mod ring;
pub mod sample;
pub mod sconf;

pub use coeff::GaussRat;
pub use error::{Error, Result};
pub use grassmann::{GrHom, GrassmannElement, Parity};
pub use ring::{EvenVar, Mono, RingSignature, SuperPoly, Var};
