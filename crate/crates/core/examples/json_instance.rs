//! Load a dictionary and an atomic representation from JSON, run every
//! algorithm, and print the CSV trace of the line-search variant.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example json_instance
//! ```

use relaxed_greedy::engines::{run, AlgorithmConfig};
use relaxed_greedy::experiment::InstanceFile;
use relaxed_greedy::Result;

const INSTANCE: &str = r#"{
    "dictionary": {
        "dim": 3,
        "atoms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0.6, 0.8, 0], [0, 0.6, -0.8]]
    },
    "element": {
        "entries": [[0, 1, 0.25], [3, -1, 0.35], [4, 1, 0.4]],
        "tau": 1
    }
}"#;

fn main() -> Result<()> {
    let file: InstanceFile = serde_json::from_str(INSTANCE)?;
    let element = file.element.build(&file.dictionary)?;
    let f = element.vector();
    println!("f = {:?}", f.coords());

    for cfg in [
        AlgorithmConfig::pga(30),
        AlgorithmConfig::rga(30),
        AlgorithmConfig::prga(2.0, 30),
        AlgorithmConfig::crga(30),
    ] {
        let trace = run(f, &file.dictionary, &cfg)?;
        println!(
            "{:<4} error after {} steps: {:.6}",
            cfg.kind.name(),
            trace.records.len(),
            trace.final_residual(f)?
        );
    }

    let trace = run(f, &file.dictionary, &AlgorithmConfig::crga(8))?;
    print!("{}", trace.to_csv_string());
    Ok(())
}
