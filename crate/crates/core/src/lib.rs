//! Linear-programming pseudocodewords, fundamental cones and quasi-cyclic
//! redundancy for binary parity-check codes.

pub mod cli;
pub mod cone;
pub mod constructions;
mod dd;
pub mod error;
pub mod formats;
pub mod gf2;
pub mod lpdecoder;
pub mod pcw;
pub mod polytope;
pub mod qcimprove;
pub mod rational;
mod simplex;

pub use error::{Error, Result};
