//! The planar instance on which the power-relaxed iteration stalls for `α > 1`.
//!
//! With `D = {±e_1, ±e_2}` and `f = (1 - b) e_1 + b e_2`, `0 < b < 1/2`, every
//! atom has `ℓ¹` norm 1, so `u_m = 1 - ‖T_m‖₁` obeys
//! `u_m ≥ (1 - m^-α) u_{m-1}` with `u_1 = b`. Testing `f - T_m` against
//! `v = (1, 1)/√2` turns that into `‖f - T_m‖ ≥ b ∏_{k=2}^m (1 - k^-α) / √2`,
//! which stays above `b P_α / √2 > 0` for all `m`.

use super::product::{partial_product, product_with_tail};
use crate::dictionary::{build_a1_element, A1Element, Dictionary, Entry, Sign};
use crate::error::{Error, Result};

pub(crate) fn check_counterexample_params(b: f64, alpha: f64) -> Result<()> {
    check_b(b)?;
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "divergence needs alpha > 1, got {alpha}"
        )));
    }
    Ok(())
}

fn check_b(b: f64) -> Result<()> {
    if !(b > 0.0 && b < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "b must lie in (0, 1/2), got {b}"
        )));
    }
    Ok(())
}

/// `(canonical R², (1 - b, b))` with the vector certified in `A_1`.
pub fn counterexample_instance(b: f64) -> Result<(Dictionary, A1Element)> {
    check_b(b)?;
    let dict = Dictionary::canonical(2)?;
    let f = build_a1_element(
        &dict,
        &[Entry(0, Sign::Plus, 1.0 - b), Entry(1, Sign::Plus, b)],
        1.0,
    )?;
    Ok((dict, f))
}

/// `b ∏_{k=2}^m (1 - k^-α) / √2`; the product is empty at `m = 1`.
pub fn counterexample_floor(b: f64, alpha: f64, m: usize) -> Result<f64> {
    check_counterexample_params(b, alpha)?;
    if m == 0 {
        return Err(Error::InvalidArgument("floor needs m >= 1".into()));
    }
    let product = if m == 1 {
        1.0
    } else {
        partial_product(alpha, m)?
    };
    Ok(b * product / std::f64::consts::SQRT_2)
}

/// `b · lower(P_α) / √2`, a certified positive floor valid for every `m`.
pub fn limit_floor(b: f64, alpha: f64, n_terms: usize) -> Result<f64> {
    check_counterexample_params(b, alpha)?;
    let enclosure = product_with_tail(alpha, n_terms)?;
    Ok(b * enclosure.lower / std::f64::consts::SQRT_2)
}
