//! The two coefficient fields the recursion runs over.

use num_complex::Complex64;

use crate::arith::rational::to_f64;
use crate::arith::{CycQ, Rational};

/// Zero threshold for the floating-point field.
pub(crate) const NUMERIC_ZERO: f64 = 1e-9;

pub(crate) trait Scalar: Clone + Send + Sync {
    fn zero() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn from_cycq(c: &CycQ) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn one() -> Self {
        Self::from_rational(&Rational::from_integer(1.into()))
    }

    fn from_usize(n: usize) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
}

impl Scalar for CycQ {
    fn zero() -> Self {
        CycQ::zero(1)
    }
    fn from_rational(r: &Rational) -> Self {
        CycQ::from_rational(r)
    }
    fn from_cycq(c: &CycQ) -> Self {
        c.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self.checked_div(o).expect("pivot is nonzero")
    }
    fn is_zero(&self) -> bool {
        CycQ::is_zero(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(to_f64(r), 0.0)
    }
    fn from_cycq(c: &CycQ) -> Self {
        c.embed()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        self.norm() < NUMERIC_ZERO
    }
}
