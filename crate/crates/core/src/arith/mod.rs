//! Exact rational and cyclotomic arithmetic.

pub mod cyclotomic;
pub mod fixed;
pub mod rational;

pub use cyclotomic::{CycQ, CyclotomicField, RootSum};
pub use fixed::FixedComplex;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
