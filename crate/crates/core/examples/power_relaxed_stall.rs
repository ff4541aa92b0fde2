//! Power-relaxed greedy with `α > 1` stalls on a planar `A_1` element.
//!
//! Each step can only move `T_m` by a weight `m^-α`, and those weights are
//! summable, so the `ℓ¹` mass of `T_m` never reaches 1 while `f` needs all of
//! it. The certified floor below is positive for every `m`.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example power_relaxed_stall
//! ```

use relaxed_greedy::analysis::{
    check_divergence_floor, counterexample_instance, limit_floor, product_with_tail,
};
use relaxed_greedy::engines::{run_prga, AlgorithmConfig};
use relaxed_greedy::Result;

fn main() -> Result<()> {
    let b = 0.4;
    let (dict, f) = counterexample_instance(b)?;
    println!("f = {:?}", f.vector().coords());

    for alpha in [1.1, 1.5, 2.0, 3.0] {
        let trace = run_prga(f.vector(), &dict, &AlgorithmConfig::prga(alpha, 10_000))?;
        let report = check_divergence_floor(&trace, b, alpha)?;
        let last = report.per_m.last().expect("10000 records");
        let p = product_with_tail(alpha, 10_000)?;
        println!(
            "alpha={alpha}: error after {} steps = {:.6}, per-step floor = {:.6}, \
             limit floor = {:.6} (P_alpha in [{:.6}, {:.6}]), floor holds at every m: {}",
            last.m,
            last.observed,
            last.bound,
            limit_floor(b, alpha, 10_000)?,
            p.lower,
            p.upper,
            report.all_satisfied
        );
    }
    Ok(())
}
