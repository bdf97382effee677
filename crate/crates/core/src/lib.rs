//! Error-correcting index codes over finite fields.

pub mod bounds;
pub mod colsearch;
pub mod decoder;
pub mod ecic;
pub mod error;
pub mod galois;
pub mod golden;
pub mod harness;
pub mod instance;
pub mod static_ecic;

pub use error::{Error, Result};
