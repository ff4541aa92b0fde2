//! Experiment runner behind the `relaxed-greedy` binary.
//!
//! Everything here writes to caller-supplied sinks so it can be driven from
//! tests as well as from the command line.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    self, check_divergence_floor, check_upper_bound, BoundDirection, BoundReport, BoundSummary,
    UpperBound,
};
use crate::dictionary::{build_a1_element, A1Element, A1Spec, Dictionary, Entry, Sign};
use crate::engines::{self, AlgorithmConfig, AlgorithmKind, Trace};
use crate::error::{Error, Result};
use crate::hilbert::{self, Vector};
use crate::instances::{self, RNG_ID};

/// On-disk instance: `{"dictionary": {"dim", "atoms"}, "element": {"entries", "tau"}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub dictionary: Dictionary,
    pub element: A1Spec,
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    /// `counterexample:b=<b>`
    Counterexample { b: f64 },
    /// `lowerbound:m=<m>`
    LowerBound { m: usize },
    /// `canonical:<x1>,<x2>,...`: the canonical dictionary of matching
    /// dimension with `f` given by coordinates.
    Canonical { coords: Vec<f64> },
    /// `file:<path>`
    File(PathBuf),
}

fn parse_param<T: FromStr>(s: &str, key: &str) -> Result<T> {
    let value = s
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::InvalidArgument(format!("expected '{key}=<value>', got '{s}'")))?;
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("cannot parse {key} from '{value}'")))
}

impl FromStr for InstanceSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!("instance '{s}' must look like <kind>:<params>"))
        })?;
        match kind {
            "counterexample" => Ok(InstanceSource::Counterexample {
                b: parse_param(rest, "b")?,
            }),
            "lowerbound" => Ok(InstanceSource::LowerBound {
                m: parse_param(rest, "m")?,
            }),
            "canonical" => {
                let coords = rest
                    .split(',')
                    .map(|x| {
                        x.trim().parse::<f64>().map_err(|_| {
                            Error::InvalidArgument(format!("bad coordinate '{x}'"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(InstanceSource::Canonical { coords })
            }
            "file" => Ok(InstanceSource::File(PathBuf::from(rest))),
            other => Err(Error::InvalidArgument(format!(
                "unknown instance kind '{other}' (expected counterexample, lowerbound, canonical or file)"
            ))),
        }
    }
}

/// A resolved instance: dictionary plus a certified `A_τ` element.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub dict: Dictionary,
    pub element: A1Element,
}

/// `f = Σ |x_i| (sign x_i) e_i` over the canonical dictionary.
pub fn canonical_instance(coords: &[f64]) -> Result<(Dictionary, A1Element)> {
    let dict = Dictionary::canonical(coords.len())?;
    let entries: Vec<Entry> = coords
        .iter()
        .enumerate()
        .map(|(i, &x)| Entry(i, Sign::of(x), x.abs()))
        .collect();
    let element = build_a1_element(&dict, &entries, 1.0)?;
    Ok((dict, element))
}

impl InstanceSource {
    pub fn resolve(&self) -> Result<Instance> {
        let (label, (dict, element)) = match self {
            InstanceSource::Counterexample { b } => (
                format!("counterexample:b={b}"),
                analysis::counterexample_instance(*b)?,
            ),
            InstanceSource::LowerBound { m } => (
                format!("lowerbound:m={m}"),
                analysis::lower_bound_instance(*m)?,
            ),
            InstanceSource::Canonical { coords } => {
                let label = coords
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                (format!("canonical:{label}"), canonical_instance(coords)?)
            }
            InstanceSource::File(path) => {
                let file = InstanceFile::load(path)?;
                let element = file.element.build(&file.dictionary)?;
                (
                    format!("file:{}", path.display()),
                    (file.dictionary, element),
                )
            }
        };
        Ok(Instance {
            label,
            dict,
            element,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub config: AlgorithmConfig,
    pub instance: InstanceSource,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn write_trace(trace: &Trace, path: &Path, format: OutputFormat) -> Result<()> {
    let mut w = create(path)?;
    match format {
        OutputFormat::Csv => trace.write_csv(&mut w)?,
        OutputFormat::Json => trace.write_json(&mut w)?,
    }
    w.flush()?;
    Ok(())
}

/// `Final Error ||f - T_<m>|| = <err>` with six decimals.
pub fn final_error_line(m: usize, err: f64) -> String {
    format!("Final Error ||f - T_{m}|| = {err:.6}")
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub trace: Trace,
    pub final_error: f64,
}

/// Runs one algorithm on one instance, writes the trace if an output path
/// is set, and prints the final error line.
pub fn cmd_run<W: Write>(spec: &ExperimentSpec, out: &mut W) -> Result<RunOutcome> {
    spec.config.validate()?;
    let instance = spec.instance.resolve()?;
    let f = instance.element.vector();
    let trace = engines::run(f, &instance.dict, &spec.config)?.with_label(instance.label);
    let final_error = trace.final_residual(f)?;
    if let Some(path) = &spec.output {
        write_trace(&trace, path, spec.format)?;
    }
    writeln!(
        out,
        "{}",
        final_error_line(trace.records.len(), final_error)
    )?;
    Ok(RunOutcome { trace, final_error })
}

/// Relaxation powers in the stalling simulation.
pub const SIMULATION_ALPHAS: [f64; 3] = [1.1, 1.5, 2.0];
pub const SIMULATION_ITERATIONS: usize = 500;
pub const SIMULATION_CSV_HEADER: &str = "alpha,m,residual_l2";

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRow {
    pub alpha: f64,
    pub final_error: f64,
    pub trace: Trace,
}

/// PRGA on `f = (1/2, 1/2)` over the canonical planar dictionary for 500
/// steps at each of [`SIMULATION_ALPHAS`].
pub fn simulate_stalling() -> Result<Vec<SimulationRow>> {
    let (dict, element) = canonical_instance(&[0.5, 0.5])?;
    let f = element.vector();
    SIMULATION_ALPHAS
        .iter()
        .map(|&alpha| {
            let cfg = AlgorithmConfig::prga(alpha, SIMULATION_ITERATIONS);
            let trace = engines::run_prga(f, &dict, &cfg)?.with_label(format!("alpha={alpha:?}"));
            let final_error = trace.final_residual(f)?;
            Ok(SimulationRow {
                alpha,
                final_error,
                trace,
            })
        })
        .collect()
}

/// Prints the results table and, if `csv_path` is set, the per-step
/// residuals for every α.
pub fn cmd_reproduce_simulation<W: Write>(
    csv_path: Option<&Path>,
    out: &mut W,
) -> Result<Vec<SimulationRow>> {
    let rows = simulate_stalling()?;
    writeln!(out, "--- Results of the simulation ---")?;
    for row in &rows {
        writeln!(
            out,
            "Alpha={:?}: {}",
            row.alpha,
            final_error_line(row.trace.records.len(), row.final_error)
        )?;
    }
    if let Some(path) = csv_path {
        let mut w = create(path)?;
        writeln!(w, "{SIMULATION_CSV_HEADER}")?;
        for row in &rows {
            for r in &row.trace.records {
                writeln!(
                    w,
                    "{:?},{},{}",
                    row.alpha,
                    r.m,
                    crate::format::sig17(r.residual_l2)
                )?;
            }
        }
        w.flush()?;
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyTarget {
    /// Relaxed greedy rate on random `A_1` instances.
    Rga,
    /// Power-relaxed rate, `0 < α ≤ 1`, on random `A_1` instances.
    Prga { alpha: f64 },
    /// Line-search rate on random `A_1` instances.
    Crga,
    /// PRGA with `α > 1` on the stalling instance.
    DivergenceFloor { b: f64, alpha: f64 },
    /// Best `m`-term error on the lower-bound instance.
    LowerBound,
}

#[derive(Debug, Clone)]
pub struct VerifyRequest {
    pub target: VerifyTarget,
    pub trials: u64,
    /// Fixed dimension for random trials; `None` cycles through
    /// [`instances::TRIAL_DIMS`].
    pub dim: Option<usize>,
    /// Iterations, or the term count for [`VerifyTarget::LowerBound`].
    pub m: usize,
    pub seed: u64,
    pub report_csv: Option<PathBuf>,
    pub summary_json: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifySummary {
    #[serde(flatten)]
    pub bound: BoundSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_trial: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub report: BoundReport,
    pub summary: VerifySummary,
}

fn random_trials(
    req: &VerifyRequest,
    bound: UpperBound,
    cfg: AlgorithmConfig,
) -> Result<Vec<BoundReport>> {
    (0..req.trials)
        .into_par_iter()
        .map(|trial| {
            let inst = match req.dim {
                Some(dim) => instances::trial_instance_with_dim(req.seed, trial, dim)?,
                None => instances::trial_instance(req.seed, trial)?,
            };
            let trace = engines::run(inst.element.vector(), &inst.dict, &cfg)?;
            check_upper_bound(&trace, bound)
        })
        .collect()
}

fn merge(
    name: &str,
    direction: BoundDirection,
    parts: Vec<BoundReport>,
) -> (BoundReport, Option<u64>) {
    let mut merged = BoundReport::new(name, direction);
    let mut worst: Option<(f64, u64)> = None;
    for (trial, part) in parts.into_iter().enumerate() {
        if let Some(c) = part.worst() {
            let margin = part.margin(c);
            if worst.is_none_or(|(w, _)| margin < w) {
                worst = Some((margin, trial as u64));
            }
        }
        merged.extend(part);
    }
    (merged, worst.map(|(_, t)| t))
}

/// Runs the requested check and writes its report; `report.all_satisfied`
/// carries the verdict.
pub fn cmd_verify<W: Write>(req: &VerifyRequest, out: &mut W) -> Result<VerifyOutcome> {
    if req.m == 0 {
        return Err(Error::InvalidArgument("--m must be >= 1".into()));
    }
    let randomized = matches!(
        req.target,
        VerifyTarget::Rga | VerifyTarget::Prga { .. } | VerifyTarget::Crga
    );
    if randomized && req.trials == 0 {
        return Err(Error::InvalidArgument("--trials must be >= 1".into()));
    }

    let (report, worst_trial) = match req.target {
        VerifyTarget::Rga => {
            let parts = random_trials(req, UpperBound::Rga, AlgorithmConfig::rga(req.m))?;
            merge("rga", BoundDirection::Upper, parts)
        }
        VerifyTarget::Prga { alpha } => {
            analysis::prga_bound(1, alpha)?;
            let parts = random_trials(req, UpperBound::Prga, AlgorithmConfig::prga(alpha, req.m))?;
            merge("prga", BoundDirection::Upper, parts)
        }
        VerifyTarget::Crga => {
            let parts = random_trials(req, UpperBound::Crga, AlgorithmConfig::crga(req.m))?;
            merge("crga", BoundDirection::Upper, parts)
        }
        VerifyTarget::DivergenceFloor { b, alpha } => {
            (verify_divergence(b, alpha, req.m, out)?, None)
        }
        VerifyTarget::LowerBound => (verify_lower_bound(req.m, out)?, None),
    };

    let summary = VerifySummary {
        bound: report.summary(),
        rng: randomized.then(|| RNG_ID.to_string()),
        seed: randomized.then_some(req.seed),
        worst_trial,
    };

    if let Some(path) = &req.report_csv {
        let mut w = create(path)?;
        if randomized {
            writeln!(w, "# rng={RNG_ID} seed={}", req.seed)?;
        }
        report.write_csv(&mut w)?;
        w.flush()?;
    }
    if let Some(path) = &req.summary_json {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &summary)?;
        writeln!(w)?;
        w.flush()?;
    }

    let s = &summary.bound;
    writeln!(
        out,
        "{}: {} ({} checks, worst margin {:.3e}{}{})",
        s.name,
        if s.all_satisfied { "PASS" } else { "FAIL" },
        s.checked,
        s.worst_margin,
        s.worst_m.map(|m| format!(" at m={m}")).unwrap_or_default(),
        worst_trial
            .map(|t| format!(" in trial {t}"))
            .unwrap_or_default(),
    )?;
    if !s.all_satisfied {
        for c in report.failures().take(5) {
            writeln!(
                out,
                "  violated at m={}: observed {:.12e}, bound {:.12e}",
                c.m, c.observed, c.bound
            )?;
        }
    }
    Ok(VerifyOutcome { report, summary })
}

fn verify_divergence<W: Write>(b: f64, alpha: f64, m: usize, out: &mut W) -> Result<BoundReport> {
    let (dict, element) = analysis::counterexample_instance(b)?;
    let f = element.vector();
    let trace = engines::run_prga(f, &dict, &AlgorithmConfig::prga(alpha, m))?;
    let mut report = check_divergence_floor(&trace, b, alpha)?;

    let limit = analysis::limit_floor(b, alpha, m.max(2))?;
    let final_error = trace.final_residual(f)?;
    writeln!(
        out,
        "{}",
        final_error_line(trace.records.len(), final_error)
    )?;
    writeln!(out, "certified limit floor b*P_lower/sqrt(2) = {limit:.6e}")?;
    let mut tail = BoundReport::new("limit-floor", BoundDirection::Floor);
    tail.push(trace.records.len(), final_error, limit);
    report.extend(tail);
    Ok(report)
}

fn verify_lower_bound<W: Write>(m: usize, out: &mut W) -> Result<BoundReport> {
    let (dict, element) = analysis::lower_bound_instance(m)?;
    let f = element.vector();
    let bound = analysis::m_term_lower_bound(m);
    let best = analysis::best_m_term_error(f, &dict, m)?;
    writeln!(
        out,
        "best {m}-term error = {best:.12} (1/(2 sqrt m) = {bound:.12})"
    )?;

    let mut report = BoundReport::new("lowerbound", BoundDirection::Floor);
    report.push(m, best, bound);
    for (kind, err) in iterate_errors(f, &dict, m)? {
        writeln!(out, "{} iterate {m}: error = {err:.12}", kind.name())?;
        report.push(m, err, bound);
    }
    Ok(report)
}

/// `‖f - x_m‖` for the `m`-th iterate of PGA, RGA, PRGA(1/2) and CRGA.
pub fn iterate_errors(
    f: &Vector,
    dict: &Dictionary,
    m: usize,
) -> Result<Vec<(AlgorithmKind, f64)>> {
    [
        AlgorithmConfig::pga(m),
        AlgorithmConfig::rga(m),
        AlgorithmConfig::prga(0.5, m),
        AlgorithmConfig::crga(m),
    ]
    .iter()
    .map(|cfg| {
        let t = engines::run(f, dict, cfg)?;
        Ok((
            cfg.kind,
            hilbert::norm_l2(&hilbert::sub(f, &t.final_approx)?),
        ))
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_instances() {
        assert_eq!(
            "counterexample:b=0.4".parse::<InstanceSource>().unwrap(),
            InstanceSource::Counterexample { b: 0.4 }
        );
        assert_eq!(
            "lowerbound:m=3".parse::<InstanceSource>().unwrap(),
            InstanceSource::LowerBound { m: 3 }
        );
        assert_eq!(
            "canonical:0.5, 0.5".parse::<InstanceSource>().unwrap(),
            InstanceSource::Canonical {
                coords: vec![0.5, 0.5]
            }
        );
        assert_eq!(
            "file:a/b.json".parse::<InstanceSource>().unwrap(),
            InstanceSource::File("a/b.json".into())
        );
        assert!("counterexample:0.4".parse::<InstanceSource>().is_err());
        assert!("bogus:1".parse::<InstanceSource>().is_err());
        assert!("nocolon".parse::<InstanceSource>().is_err());
        assert!("canonical:0.5,x".parse::<InstanceSource>().is_err());
    }

    #[test]
    fn canonical_instance_must_be_in_a1() {
        assert!(canonical_instance(&[0.5, -0.5]).is_ok());
        assert!(canonical_instance(&[0.9, 0.9]).is_err());
    }

    #[test]
    fn final_error_format() {
        assert_eq!(
            final_error_line(500, 0.177_130_248_687),
            "Final Error ||f - T_500|| = 0.177130"
        );
    }

    #[test]
    fn simulation_table() {
        let mut out = Vec::new();
        cmd_reproduce_simulation(None, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "--- Results of the simulation ---\n\
             Alpha=1.1: Final Error ||f - T_500|| = 0.003805\n\
             Alpha=1.5: Final Error ||f - T_500|| = 0.068021\n\
             Alpha=2.0: Final Error ||f - T_500|| = 0.177130\n"
        );
    }

    #[test]
    fn verify_lower_bound_passes() {
        let req = VerifyRequest {
            target: VerifyTarget::LowerBound,
            trials: 1,
            dim: None,
            m: 3,
            seed: 0,
            report_csv: None,
            summary_json: None,
        };
        let mut out = Vec::new();
        let outcome = cmd_verify(&req, &mut out).unwrap();
        assert!(outcome.report.all_satisfied);
        assert_eq!(outcome.report.per_m.len(), 5);
        assert!((outcome.report.per_m[0].observed - 0.5 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn verify_rejects_bad_requests() {
        let mut req = VerifyRequest {
            target: VerifyTarget::Prga { alpha: 2.0 },
            trials: 2,
            dim: Some(4),
            m: 10,
            seed: 1,
            report_csv: None,
            summary_json: None,
        };
        let mut out = Vec::new();
        assert!(matches!(
            cmd_verify(&req, &mut out),
            Err(Error::BoundRefused(_))
        ));
        req.target = VerifyTarget::Crga;
        req.trials = 0;
        assert!(cmd_verify(&req, &mut out).is_err());
        req.target = VerifyTarget::DivergenceFloor { b: 0.4, alpha: 1.0 };
        assert!(cmd_verify(&req, &mut out).is_err());
    }
}
