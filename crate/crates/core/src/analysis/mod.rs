//! Theoretical bounds and the oracles used to check the engines against them.

mod bounds;
mod counterexample;
mod m_term;
mod product;

pub use bounds::{
    check_divergence_floor, check_upper_bound, crga_bound, prga_bound, rga_bound, BoundCheck,
    BoundDirection, BoundReport, BoundSummary, UpperBound, BOUND_TOLERANCE, REPORT_CSV_HEADER,
};
pub use counterexample::{counterexample_floor, counterexample_instance, limit_floor};
pub use m_term::{
    best_m_term_error, binomial, lower_bound_instance, m_term_lower_bound, ENUMERATION_LIMIT,
};
pub use product::{
    partial_product, product_with_tail, tail_sum_bound, PartialProducts, ProductBound,
};
