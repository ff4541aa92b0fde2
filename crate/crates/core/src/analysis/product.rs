//! `P_α = ∏_{k≥2} (1 - k^-α)` for `α > 1`, with certified enclosures.

use serde::{Deserialize, Serialize};

use crate::engines::relaxation_weight;
use crate::error::{Error, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "infinite product needs alpha > 1, got {alpha}"
        )));
    }
    Ok(())
}

/// Successive partial products `∏_{k=2}^N (1 - k^-α)` for `N = 2, 3, ...`.
///
/// The logarithms `ln(1 - k^-α)` are accumulated with Neumaier compensation
/// and exponentiated per step, so long runs do not drift.
#[derive(Debug, Clone)]
pub struct PartialProducts {
    alpha: f64,
    next_k: usize,
    sum: f64,
    compensation: f64,
}

impl PartialProducts {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(PartialProducts {
            alpha,
            next_k: 2,
            sum: 0.0,
            compensation: 0.0,
        })
    }

    /// Log of the current partial product.
    pub fn log_value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Iterator for PartialProducts {
    /// `(N, ∏_{k=2}^N (1 - k^-α))`
    type Item = (usize, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let k = self.next_k;
        let term = (-relaxation_weight(k, self.alpha)).ln_1p();
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
        self.next_k += 1;
        Some((k, self.log_value().exp()))
    }
}

/// `∏_{k=2}^{n_terms} (1 - k^-α)`.
pub fn partial_product(alpha: f64, n_terms: usize) -> Result<f64> {
    if n_terms < 2 {
        return Err(Error::InvalidArgument(format!(
            "partial product needs n_terms >= 2, got {n_terms}"
        )));
    }
    let (_, p) = PartialProducts::new(alpha)?
        .nth(n_terms - 2)
        .expect("iterator is infinite");
    Ok(p)
}

/// A certified enclosure `lower ≤ P_α ≤ upper` built from `n_terms` factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductBound {
    pub alpha: f64,
    pub n_terms: usize,
    pub partial: f64,
    pub lower: f64,
    pub upper: f64,
}

impl ProductBound {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// `Σ_{k>N} k^-α ≤ ∫_N^∞ x^-α dx = N^{1-α} / (α - 1)`.
pub fn tail_sum_bound(alpha: f64, n_terms: usize) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((n_terms as f64).powf(1.0 - alpha) / (alpha - 1.0))
}

/// Encloses `P_α` using the partial product and the tail estimate.
///
/// Every remaining factor is below 1, so the partial product is an upper
/// bound. Each has `k^-α ≤ 1/2`, where `ln(1 - x) ≥ -2x`, so the tail factor
/// is at least `exp(-2 Σ_{k>N} k^-α)`.
pub fn product_with_tail(alpha: f64, n_terms: usize) -> Result<ProductBound> {
    let partial = partial_product(alpha, n_terms)?;
    let tail = tail_sum_bound(alpha, n_terms)?;
    Ok(ProductBound {
        alpha,
        n_terms,
        partial,
        lower: partial * (-2.0 * tail).exp(),
        upper: partial,
    })
}
