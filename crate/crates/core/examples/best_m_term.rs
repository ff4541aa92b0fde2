//! Exhaustive best `m`-term approximation on the instance where every
//! `m`-term approximant is at least `1/(2√m)` away.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example best_m_term
//! ```

use relaxed_greedy::analysis::{best_m_term_error, lower_bound_instance, m_term_lower_bound};
use relaxed_greedy::experiment::iterate_errors;
use relaxed_greedy::Result;

fn main() -> Result<()> {
    for m in 2..=6 {
        let (dict, f) = lower_bound_instance(m)?;
        let best = best_m_term_error(f.vector(), &dict, m)?;
        println!(
            "m={m}: R^{} best error {:.12}, 1/(2 sqrt m) = {:.12}",
            dict.dim(),
            best,
            m_term_lower_bound(m)
        );
        for (kind, err) in iterate_errors(f.vector(), &dict, m)? {
            println!("      {:<4} iterate error {:.12}", kind.name(), err);
        }
    }
    Ok(())
}
