//! Exact arithmetic for linear codes over small finite fields: generalized
//! Reed-Solomon and twisted variants, MDS/AMDS/NMDS classification, Schur
//! products, and error-correcting pair verification, search, and decoding.

pub mod error;
pub mod gf;
pub mod linalg;
pub mod code;
pub mod construct;
pub mod schur;
pub mod ecp;
pub mod harness;
pub mod textio;
pub mod cli;

pub use error::{Error, Result};
