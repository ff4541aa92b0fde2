//! Dense real vectors with the Euclidean inner product.
//!
//! Every reduction sums left to right over the coordinate index, so results
//! are bit-reproducible for a given input.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the finite-dimensional real Hilbert space `R^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidVector("vector must have dim >= 1".into()));
        }
        if let Some(i) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidVector(format!(
                "coordinate {i} is not finite ({})",
                coords[i]
            )));
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    /// The `index`-th canonical basis vector of `R^dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dim {dim}"
            )));
        }
        let mut coords = vec![0.0; dim];
        coords[index] = 1.0;
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    /// `-self`.
    pub fn negated(&self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }

    /// `s * self`.
    pub fn scaled(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|x| s * x).collect())
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

fn check_dims(x: &Vector, y: &Vector) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

/// `⟨x, y⟩ = Σ x_i y_i`.
pub fn inner(x: &Vector, y: &Vector) -> Result<f64> {
    check_dims(x, y)?;
    Ok(x.0.iter().zip(&y.0).fold(0.0, |acc, (a, b)| acc + a * b))
}

pub fn norm_l2(x: &Vector) -> f64 {
    x.0.iter().fold(0.0, |acc, a| acc + a * a).sqrt()
}

pub fn norm_l1(x: &Vector) -> f64 {
    x.0.iter().fold(0.0, |acc, a| acc + a.abs())
}

/// `a * x + b * y`, componentwise.
pub fn combine(a: f64, x: &Vector, b: f64, y: &Vector) -> Result<Vector> {
    check_dims(x, y)?;
    Ok(Vector(
        x.0.iter()
            .zip(&y.0)
            .map(|(xi, yi)| a * xi + b * yi)
            .collect(),
    ))
}

/// `x - y`.
pub fn sub(x: &Vector, y: &Vector) -> Result<Vector> {
    combine(1.0, x, -1.0, y)
}
