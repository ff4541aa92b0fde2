//! Greedy approximation over finite symmetric dictionaries in `R^n`.
//!
//! Four iterations are provided, each returning a full [`engines::Trace`]:
//!
//! | algorithm | update |
//! |-----------|--------|
//! | PGA  | `G_m = G_{m-1} + ⟨R_{m-1}, g⟩ g` |
//! | RGA  | `G_m = (1 - 1/m) G_{m-1} + (1/m) g` |
//! | PRGA | `T_m = (1 - m^-α) T_{m-1} + m^-α g` |
//! | CRGA | `f_m = (1 - γ_m) f_{m-1} + γ_m g`, `γ_m` by exact line search |
//!
//! The [`analysis`] module holds the matching rate bounds, the stalling
//! instance for PRGA with `α > 1` and its certified floor, and a brute-force
//! best-`m`-term oracle. [`experiment`] wires these into the command-line
//! runner.
//!
//! ```
//! use relaxed_greedy::{analysis, engines, Dictionary, Vector};
//!
//! let dict = Dictionary::canonical(2)?;
//! let f = Vector::new(vec![0.6, 0.4])?;
//! let trace = engines::run_crga(&f, &dict, &engines::AlgorithmConfig::crga(50))?;
//! let report = analysis::check_upper_bound(&trace, analysis::UpperBound::Crga)?;
//! assert!(report.all_satisfied);
//! # Ok::<(), relaxed_greedy::Error>(())
//! ```

pub mod analysis;
pub mod dictionary;
pub mod engines;
mod error;
pub mod experiment;
mod format;
pub mod hilbert;
pub mod instances;

pub use dictionary::{A1Element, A1Spec, AtomRef, Dictionary, Entry, Sign};
pub use engines::{AlgorithmConfig, AlgorithmKind, IterationRecord, Trace};
pub use error::{Error, Result};
pub use format::sig17;
pub use hilbert::Vector;
