//! The line-search relaxed greedy step: exact `γ_m`, its diagnostics, and the
//! convex weight ledger behind `f_m`.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example line_search
//! ```

use relaxed_greedy::analysis::crga_bound;
use relaxed_greedy::engines::{run_crga, AlgorithmConfig};
use relaxed_greedy::instances::trial_instance_with_dim;
use relaxed_greedy::{hilbert, Result};

fn main() -> Result<()> {
    let inst = trial_instance_with_dim(1, 0, 8)?;
    let f = inst.element.vector();
    let trace = run_crga(f, &inst.dict, &AlgorithmConfig::crga(200))?;

    println!("   m   gamma     <r,d>    ||r||^2   ||d||   error     2/sqrt(m+4)");
    for (r, ls) in trace.records.iter().zip(&trace.line_search) {
        if r.m <= 8 || r.m % 50 == 0 {
            println!(
                "{:4}  {:.5}  {:.5}  {:.5}  {:.4}  {:.6}  {:.6}",
                r.m,
                r.step,
                ls.gap,
                ls.phi_at_zero,
                ls.direction_norm,
                r.residual_l2,
                crga_bound(r.m)
            );
        }
    }

    let ledger = trace.ledger.as_ref().expect("CRGA keeps a ledger");
    let rebuilt = ledger.reconstruct(&inst.dict)?;
    let drift = hilbert::norm_l2(&hilbert::sub(&rebuilt, &trace.final_approx)?);
    println!(
        "ledger: total weight {:.15}, min weight {:.3e}, reconstruction drift {:.3e}",
        ledger.sum(),
        ledger.min(),
        drift
    );
    Ok(())
}
