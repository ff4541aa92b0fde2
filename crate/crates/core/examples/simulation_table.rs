//! Power-relaxed greedy on `f = (1/2, 1/2)` for 500 steps at α = 1.1, 1.5,
//! 2.0, with per-step residuals written to CSV for plotting.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example simulation_table -- residuals.csv
//! ```

use std::io;
use std::path::PathBuf;

use relaxed_greedy::experiment::cmd_reproduce_simulation;
use relaxed_greedy::Result;

fn main() -> Result<()> {
    let csv = std::env::args().nth(1).map(PathBuf::from);
    cmd_reproduce_simulation(csv.as_deref(), &mut io::stdout().lock())?;
    if let Some(path) = csv {
        println!("per-step residuals written to {}", path.display());
    }
    Ok(())
}
