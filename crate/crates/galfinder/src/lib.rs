//! Reconstruct, verify and search for the reducible Galois representations
//! attached to Hecke eigensystems with `Sym^g` coefficients, working in
//! finite fields GF(p^r).

pub mod characters;
pub mod eigen;
pub mod error;
pub mod field;
pub mod finder;
pub mod galrep;
pub mod io;
pub mod fppoly;
pub mod matrix;
pub mod newform;
pub mod poly;
pub mod symg;
pub mod tables;

pub use error::{Error, Result};
pub use field::{make_field, ExtField, FieldElement, PrimeModulus};
