//! Drive the bound verifier programmatically, as the `verify` subcommand does.
//!
//! ```bash
//! RAYON_NUM_THREADS=4 cargo run -p relaxed-greedy --example verify_bounds
//! ```

use std::io;

use relaxed_greedy::experiment::{cmd_verify, VerifyRequest, VerifyTarget};
use relaxed_greedy::Result;

fn main() -> Result<()> {
    let targets = [
        (VerifyTarget::Rga, 200),
        (VerifyTarget::Prga { alpha: 0.5 }, 200),
        (VerifyTarget::Crga, 200),
        (
            VerifyTarget::DivergenceFloor {
                b: 0.25,
                alpha: 1.5,
            },
            10_000,
        ),
        (VerifyTarget::LowerBound, 4),
    ];
    let mut out = io::stdout().lock();
    for (target, m) in targets {
        let req = VerifyRequest {
            target,
            trials: 100,
            dim: None,
            m,
            seed: 7,
            report_csv: None,
            summary_json: None,
        };
        cmd_verify(&req, &mut out)?;
    }
    Ok(())
}
