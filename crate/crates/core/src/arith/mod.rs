//! Exact arithmetic over the Gaussian rationals ℚ(i).
//!
//! [`Scalar`] is the ground field. [`DualScalar`] adjoins a nilpotent `ε`
//! with `ε² = 0` and is used to test first-order deformations of
//! representations. [`Matrix`] is generic over any [`Ring`]; the exact linear
//! algebra kernels (rank, kernel, solve, determinant, inverse) live on
//! [`Mat`] = `Matrix<Scalar>`.

mod dual;
mod linalg;
mod matrix;
mod scalar;

use std::fmt::Debug;

pub use dual::DualScalar;
pub use linalg::{det, inverse, kernel_basis, rank, solve, Echelon};
pub use matrix::{DualMat, Mat, MatParseError, Matrix};
pub use scalar::{Scalar, ScalarParseError};

/// A commutative ring with identity, by reference.
///
/// The methods take `&self` so that bignum and polynomial entries are not
/// cloned on every operation.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
}

pub trait Field: Ring {
    /// `None` exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::from_int(0);
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// A growing set of independent vectors kept in echelon form, for
/// incremental span and membership tests.
#[derive(Debug, Clone, Default)]
pub struct SpanBuilder {
    /// `(pivot, row)`, each row normalized to 1 at its pivot and zero at the
    /// pivots of all earlier rows.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        SpanBuilder::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((p, r));
        true
    }
}
