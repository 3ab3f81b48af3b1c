//! Dense vectors and the handful of BLAS-1 style operations the solver needs.
//!
//! All arithmetic is in `f64`. Vectors validate finiteness on construction;
//! operations allocate fresh outputs and never mutate their inputs.

use crate::error::{Error, Result};

/// A dense, fixed-length vector of finite `f64` components.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite components.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &value) in components.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        Ok(Vector(components))
    }

    /// Vector of `n` zeros.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "vector length must be at least 1");
        Vector(vec![0.0; n])
    }

    /// Vector of `n` copies of a finite value.
    pub fn filled(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Inner product `sum_i a_i b_i`.
    pub fn dot(&self, other: &Vector) -> Result<f64> {
        self.check_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Euclidean norm `sqrt(a . a)`.
    pub fn norm2(&self) -> f64 {
        self.0.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Infinity norm `max_i |a_i|`.
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }

    /// Returns `self + alpha * x` as a fresh vector.
    pub fn axpy(&self, alpha: f64, x: &Vector) -> Result<Vector> {
        self.check_len(x)?;
        Ok(Vector(
            self.0
                .iter()
                .zip(x.0.iter())
                .map(|(y, xi)| y + alpha * xi)
                .collect(),
        ))
    }

    /// Returns `alpha * self` as a fresh vector.
    pub fn scale(&self, alpha: f64) -> Vector {
        Vector(self.0.iter().map(|a| alpha * a).collect())
    }

    /// Returns `-self`.
    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// Returns `self - other`.
    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_len(other)?;
        Ok(Vector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    fn check_len(&self, other: &Vector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Inner product of two vectors. See [`Vector::dot`].
pub fn dot(a: &Vector, b: &Vector) -> Result<f64> {
    a.dot(b)
}

/// Euclidean norm of a vector. See [`Vector::norm2`].
pub fn norm2(a: &Vector) -> f64 {
    a.norm2()
}

/// `y + alpha * x` as a fresh vector. See [`Vector::axpy`].
pub fn axpy(alpha: f64, x: &Vector, y: &Vector) -> Result<Vector> {
    y.axpy(alpha, x)
}
