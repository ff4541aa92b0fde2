//! Pure greedy expansion over an orthonormal and over a redundant dictionary.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example pure_greedy
//! ```

use relaxed_greedy::engines::{run_pga, AlgorithmConfig};
use relaxed_greedy::{Dictionary, Result, Vector};

fn main() -> Result<()> {
    let f = Vector::new(vec![0.1, -0.3, 0.05, 0.2])?;

    // Orthonormal atoms: each step peels off one coordinate exactly.
    let basis = Dictionary::canonical(4)?;
    let trace = run_pga(&f, &basis, &AlgorithmConfig::pga(10))?;
    println!("canonical dictionary:");
    for r in &trace.records {
        println!(
            "  m={} atom={}{} coeff={:+.3} residual={:.3e}",
            r.m,
            if r.atom.sign.value() > 0.0 { "+" } else { "-" },
            r.atom.index,
            r.step,
            r.residual_l2
        );
    }
    println!("  stopped early: {}", trace.terminated_early);

    // Add the normalized diagonal: the expansion is no longer finite.
    let mut atoms: Vec<Vector> = basis.atoms().to_vec();
    atoms.push(Vector::new(vec![0.5; 4])?);
    let redundant = Dictionary::new(atoms)?;
    let g = Vector::new(vec![0.3, 0.25, 0.2, 0.1])?;
    let trace = run_pga(&g, &redundant, &AlgorithmConfig::pga(12))?;
    println!("with a diagonal atom, g = {:?}:", g.coords());
    for r in &trace.records {
        println!(
            "  m={:2} atom={} residual={:.6}",
            r.m, r.atom.index, r.residual_l2
        );
    }
    Ok(())
}
