//! Exact q-series engine for twisted Eisenstein forms, modular transformation
//! laws, regular-singular differential equations and weight-k moonshine
//! identities.

pub mod arith;
pub mod error;
pub mod exec;
pub mod forms;
pub mod frobenius;
pub mod modular;
pub mod moonshine;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use report::{CheckError, CheckReport};
