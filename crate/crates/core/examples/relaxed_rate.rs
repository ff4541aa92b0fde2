//! Relaxed and power-relaxed greedy on a random `A_1` element, against their
//! rate bounds.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example relaxed_rate
//! ```

use relaxed_greedy::analysis::{check_upper_bound, UpperBound};
use relaxed_greedy::engines::{run, AlgorithmConfig};
use relaxed_greedy::instances::trial_instance_with_dim;
use relaxed_greedy::Result;

fn main() -> Result<()> {
    let inst = trial_instance_with_dim(42, 0, 16)?;
    let f = inst.element.vector();
    println!(
        "random instance: dim {}, {} atoms, sum |a_k| = {:.15}",
        inst.dict.dim(),
        inst.dict.len(),
        inst.element.coefficient_mass()
    );

    let runs = [
        ("RGA", AlgorithmConfig::rga(400), UpperBound::Rga),
        (
            "PRGA a=0.5",
            AlgorithmConfig::prga(0.5, 400),
            UpperBound::Prga,
        ),
        (
            "PRGA a=0.25",
            AlgorithmConfig::prga(0.25, 400),
            UpperBound::Prga,
        ),
    ];
    for (name, cfg, bound) in runs {
        let trace = run(f, &inst.dict, &cfg)?;
        let report = check_upper_bound(&trace, bound)?;
        println!("{name}:");
        for c in report
            .per_m
            .iter()
            .filter(|c| [1, 10, 100, 400].contains(&c.m))
        {
            println!("  m={:3} error={:.6} bound={:.6}", c.m, c.observed, c.bound);
        }
        let s = report.summary();
        println!(
            "  all satisfied: {} (worst margin {:.3e})",
            s.all_satisfied, s.worst_margin
        );
    }
    Ok(())
}
