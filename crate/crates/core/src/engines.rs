//! The four greedy iterations.
//!
//! * PGA adds the correlation-scaled best atom: `G_m = G_{m-1} + ⟨R_{m-1}, g⟩ g`.
//! * PRGA(α) takes the PGA step at `m = 1`, then the convex update
//!   `T_m = (1 - m^-α) T_{m-1} + m^-α g` with the unscaled atom.
//! * RGA is PRGA with `α = 1`; it runs through the same code path so the two
//!   produce bit-identical traces.
//! * CRGA picks the convex weight `γ_m` by exact line search over `[0, 1]`.
//!
//! Iteration numbers are 1-based and the record for `m` holds the state after
//! the `m`-th update.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dictionary::{AtomRef, Dictionary, Sign};
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::hilbert::{self, Vector};

pub const DEFAULT_STOP_EPSILON: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmKind {
    Pga,
    Rga,
    Prga,
    Crga,
}

impl AlgorithmKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Pga => "pga",
            AlgorithmKind::Rga => "rga",
            AlgorithmKind::Prga => "prga",
            AlgorithmKind::Crga => "crga",
        }
    }
}

impl std::str::FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pga" => Ok(AlgorithmKind::Pga),
            "rga" => Ok(AlgorithmKind::Rga),
            "prga" => Ok(AlgorithmKind::Prga),
            "crga" => Ok(AlgorithmKind::Crga),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    /// Relaxation power; only PRGA reads it.
    pub alpha: f64,
    pub max_iterations: usize,
    /// Stop once the residual norm drops below this.
    pub stop_epsilon: f64,
}

impl AlgorithmConfig {
    fn with_kind(kind: AlgorithmKind, alpha: f64, max_iterations: usize) -> Self {
        AlgorithmConfig {
            kind,
            alpha,
            max_iterations,
            stop_epsilon: DEFAULT_STOP_EPSILON,
        }
    }

    pub fn pga(max_iterations: usize) -> Self {
        Self::with_kind(AlgorithmKind::Pga, 1.0, max_iterations)
    }

    pub fn rga(max_iterations: usize) -> Self {
        Self::with_kind(AlgorithmKind::Rga, 1.0, max_iterations)
    }

    pub fn prga(alpha: f64, max_iterations: usize) -> Self {
        Self::with_kind(AlgorithmKind::Prga, alpha, max_iterations)
    }

    pub fn crga(max_iterations: usize) -> Self {
        Self::with_kind(AlgorithmKind::Crga, 1.0, max_iterations)
    }

    pub fn with_stop_epsilon(mut self, eps: f64) -> Self {
        self.stop_epsilon = eps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be >= 1".into()));
        }
        if self.stop_epsilon.is_nan() || self.stop_epsilon < 0.0 {
            return Err(Error::InvalidArgument("stop_epsilon must be >= 0".into()));
        }
        if self.kind == AlgorithmKind::Prga && !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "PRGA needs alpha > 0, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub m: usize,
    pub atom: AtomRef,
    /// `⟨R, g⟩` for PGA and the first RGA/PRGA step, `m^-α` for later
    /// RGA/PRGA steps, `γ_m` for CRGA.
    pub step: f64,
    pub residual_l2: f64,
    pub approx_l1: f64,
    pub residual_squared: f64,
}

/// Line-search quantities for one CRGA step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineSearchRecord {
    pub m: usize,
    /// `⟨r_{m-1}, d_m⟩` with `d_m = g_m - f_{m-1}`.
    pub gap: f64,
    /// `‖d_m‖`.
    pub direction_norm: f64,
    /// `Φ(0) = ‖r_{m-1}‖²`.
    pub phi_at_zero: f64,
    /// `Φ(1) = ‖r_{m-1} - d_m‖²`.
    pub phi_at_one: f64,
    /// Total weight in the convex ledger after the update.
    pub weight_sum: f64,
    pub min_weight: f64,
}

/// Nonnegative weights over signed atoms with `f_m = Σ w · (sign · atom)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightLedger {
    /// Indexed by `2 * atom_index + (sign == Minus)`.
    weights: Vec<f64>,
}

impl WeightLedger {
    fn new(atoms: usize) -> Self {
        WeightLedger {
            weights: vec![0.0; 2 * atoms],
        }
    }

    fn slot(index: usize, sign: Sign) -> usize {
        2 * index + usize::from(sign == Sign::Minus)
    }

    fn update(&mut self, gamma: f64, index: usize, sign: Sign) {
        for w in &mut self.weights {
            *w *= 1.0 - gamma;
        }
        self.weights[Self::slot(index, sign)] += gamma;
    }

    pub fn weight(&self, index: usize, sign: Sign) -> f64 {
        self.weights[Self::slot(index, sign)]
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Rebuilds `Σ w · (sign · atom)`.
    pub fn reconstruct(&self, dict: &Dictionary) -> Result<Vector> {
        let mut acc = Vector::zeros(dict.dim())?;
        for (i, atom) in dict.atoms().iter().enumerate() {
            acc = hilbert::combine(1.0, &acc, self.weight(i, Sign::Plus), atom)?;
            acc = hilbert::combine(1.0, &acc, -self.weight(i, Sign::Minus), atom)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub config: AlgorithmConfig,
    pub label: String,
    pub records: Vec<IterationRecord>,
    pub final_approx: Vector,
    pub terminated_early: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub line_search: Vec<LineSearchRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ledger: Option<WeightLedger>,
}

pub const TRACE_CSV_HEADER: &str = "m,atom_index,atom_sign,step,residual_l2,approx_l1";

impl Trace {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn last(&self) -> Option<&IterationRecord> {
        self.records.last()
    }

    /// Residual norm after the last recorded step, or `‖f‖` when no step ran.
    pub fn final_residual(&self, f: &Vector) -> Result<f64> {
        Ok(hilbert::norm_l2(&hilbert::sub(f, &self.final_approx)?))
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{TRACE_CSV_HEADER}")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.m,
                r.atom.index,
                i8::from(r.atom.sign),
                sig17(r.step),
                sig17(r.residual_l2),
                sig17(r.approx_l1)
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }
}

/// Runs the algorithm named by `cfg.kind`.
pub fn run(f: &Vector, dict: &Dictionary, cfg: &AlgorithmConfig) -> Result<Trace> {
    match cfg.kind {
        AlgorithmKind::Pga => run_pga(f, dict, cfg),
        AlgorithmKind::Rga => run_rga(f, dict, cfg),
        AlgorithmKind::Prga => run_prga(f, dict, cfg),
        AlgorithmKind::Crga => run_crga(f, dict, cfg),
    }
}

fn expect_kind(cfg: &AlgorithmConfig, kind: AlgorithmKind) -> Result<()> {
    if cfg.kind != kind {
        return Err(Error::InvalidArgument(format!(
            "config is for {}, not {}",
            cfg.kind.name(),
            kind.name()
        )));
    }
    cfg.validate()
}

fn check_instance(f: &Vector, dict: &Dictionary) -> Result<()> {
    if f.dim() != dict.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: dict.dim(),
        });
    }
    Ok(())
}

/// How the approximant absorbs the selected atom `g`.
enum Update {
    /// `approx + ⟨R, g⟩ g` at every step.
    Pure,
    /// `⟨R, g⟩ g` at `m = 1`, then `(1 - m^-α) approx + m^-α g`.
    Relaxed { alpha: f64 },
}

/// `m^-α`, written so that `α = 1` gives exactly `1 / m`.
pub fn relaxation_weight(m: usize, alpha: f64) -> f64 {
    1.0 / (m as f64).powf(alpha)
}

fn run_explicit(
    f: &Vector,
    dict: &Dictionary,
    cfg: &AlgorithmConfig,
    update: Update,
) -> Result<Trace> {
    check_instance(f, dict)?;
    let mut approx = Vector::zeros(f.dim())?;
    let mut residual = f.clone();
    let mut records = Vec::new();
    let mut terminated_early = hilbert::norm_l2(&residual) < cfg.stop_epsilon;

    if !terminated_early {
        for m in 1..=cfg.max_iterations {
            let atom = dict.select_atom(&residual)?;
            let g = dict.signed_atom(atom.index, atom.sign)?;
            let step = match update {
                Update::Relaxed { alpha } if m >= 2 => {
                    let lambda = relaxation_weight(m, alpha);
                    approx = hilbert::combine(1.0 - lambda, &approx, lambda, &g)?;
                    lambda
                }
                _ => {
                    approx = hilbert::combine(1.0, &approx, atom.correlation, &g)?;
                    atom.correlation
                }
            };
            residual = hilbert::sub(f, &approx)?;
            let record = record(m, atom, step, &residual, &approx)?;
            records.push(record);
            if record.residual_l2 < cfg.stop_epsilon {
                terminated_early = true;
                break;
            }
        }
    }

    Ok(Trace {
        config: *cfg,
        label: String::new(),
        records,
        final_approx: approx,
        terminated_early,
        line_search: Vec::new(),
        ledger: None,
    })
}

fn record(
    m: usize,
    atom: AtomRef,
    step: f64,
    residual: &Vector,
    approx: &Vector,
) -> Result<IterationRecord> {
    Ok(IterationRecord {
        m,
        atom,
        step,
        residual_l2: hilbert::norm_l2(residual),
        approx_l1: hilbert::norm_l1(approx),
        residual_squared: hilbert::inner(residual, residual)?,
    })
}

/// Pure Greedy Algorithm.
pub fn run_pga(f: &Vector, dict: &Dictionary, cfg: &AlgorithmConfig) -> Result<Trace> {
    expect_kind(cfg, AlgorithmKind::Pga)?;
    run_explicit(f, dict, cfg, Update::Pure)
}

/// Relaxed Greedy Algorithm, weight `1/m`.
pub fn run_rga(f: &Vector, dict: &Dictionary, cfg: &AlgorithmConfig) -> Result<Trace> {
    expect_kind(cfg, AlgorithmKind::Rga)?;
    run_explicit(f, dict, cfg, Update::Relaxed { alpha: 1.0 })
}

/// Power-Relaxed Greedy Algorithm, weight `1/m^α`.
pub fn run_prga(f: &Vector, dict: &Dictionary, cfg: &AlgorithmConfig) -> Result<Trace> {
    expect_kind(cfg, AlgorithmKind::Prga)?;
    run_explicit(f, dict, cfg, Update::Relaxed { alpha: cfg.alpha })
}

/// Minimizer of `‖r - γ d‖²` over `γ ∈ [0, 1]`: the unconstrained minimizer
/// `⟨r, d⟩ / ‖d‖²` clamped to the interval, or 0 when `d = 0`.
pub fn optimal_gamma(r: &Vector, d: &Vector) -> Result<f64> {
    let rd = hilbert::inner(r, d)?;
    let dd = hilbert::inner(d, d)?;
    if dd == 0.0 {
        return Ok(0.0);
    }
    Ok((rd / dd).clamp(0.0, 1.0))
}

/// Convex-Relaxed Greedy Algorithm: relaxed step with exact line search.
pub fn run_crga(f: &Vector, dict: &Dictionary, cfg: &AlgorithmConfig) -> Result<Trace> {
    expect_kind(cfg, AlgorithmKind::Crga)?;
    check_instance(f, dict)?;
    let mut approx = Vector::zeros(f.dim())?;
    let mut residual = f.clone();
    let mut ledger = WeightLedger::new(dict.len());
    let mut records = Vec::new();
    let mut line_search = Vec::new();
    let mut terminated_early = hilbert::norm_l2(&residual) < cfg.stop_epsilon;

    if !terminated_early {
        for m in 1..=cfg.max_iterations {
            let atom = dict.select_atom(&residual)?;
            let g = dict.signed_atom(atom.index, atom.sign)?;
            let direction = hilbert::sub(&g, &approx)?;
            let gamma = optimal_gamma(&residual, &direction)?;

            let gap = hilbert::inner(&residual, &direction)?;
            let phi_at_zero = hilbert::inner(&residual, &residual)?;
            let moved = hilbert::sub(&residual, &direction)?;
            let phi_at_one = hilbert::inner(&moved, &moved)?;

            approx = hilbert::combine(1.0 - gamma, &approx, gamma, &g)?;
            residual = hilbert::sub(f, &approx)?;
            ledger.update(gamma, atom.index, atom.sign);

            let record = record(m, atom, gamma, &residual, &approx)?;
            records.push(record);
            line_search.push(LineSearchRecord {
                m,
                gap,
                direction_norm: hilbert::norm_l2(&direction),
                phi_at_zero,
                phi_at_one,
                weight_sum: ledger.sum(),
                min_weight: ledger.min(),
            });
            if record.residual_l2 < cfg.stop_epsilon {
                terminated_early = true;
                break;
            }
        }
    }

    Ok(Trace {
        config: *cfg,
        label: String::new(),
        records,
        final_approx: approx,
        terminated_early,
        line_search,
        ledger: Some(ledger),
    })
}

/// Replays a PGA/RGA/PRGA trace from its recorded atoms and steps, using the
/// same update arithmetic as the engines.
pub fn replay(trace: &Trace, dict: &Dictionary) -> Result<Vector> {
    let mut approx = Vector::zeros(dict.dim())?;
    for r in &trace.records {
        let g = dict.signed_atom(r.atom.index, r.atom.sign)?;
        approx = match trace.config.kind {
            AlgorithmKind::Pga => hilbert::combine(1.0, &approx, r.step, &g)?,
            AlgorithmKind::Rga | AlgorithmKind::Prga if r.m == 1 => {
                hilbert::combine(1.0, &approx, r.step, &g)?
            }
            AlgorithmKind::Rga | AlgorithmKind::Prga | AlgorithmKind::Crga => {
                hilbert::combine(1.0 - r.step, &approx, r.step, &g)?
            }
        };
    }
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn canon2() -> Dictionary {
        Dictionary::canonical(2).unwrap()
    }

    #[test]
    fn pga_examples() {
        let t = run_pga(&v(&[1.0, 0.0]), &canon2(), &AlgorithmConfig::pga(1)).unwrap();
        assert_eq!(t.records[0].residual_l2, 0.0);

        let t = run_pga(&v(&[0.6, 0.4]), &canon2(), &AlgorithmConfig::pga(2)).unwrap();
        assert_eq!(t.final_approx, v(&[0.6, 0.4]));
        assert_eq!(t.records[1].residual_l2, 0.0);
        assert!(t.terminated_early);

        let t = run_pga(&v(&[0.5, 0.5]), &canon2(), &AlgorithmConfig::pga(1)).unwrap();
        assert_eq!(t.final_approx, v(&[0.5, 0.0]));
        assert_eq!(t.records[0].residual_l2, 0.5);
        assert!(!t.terminated_early);
    }

    #[test]
    fn rga_examples() {
        let t = run_rga(&v(&[1.0, 0.0]), &canon2(), &AlgorithmConfig::rga(1)).unwrap();
        assert_eq!(t.records[0].residual_l2, 0.0);

        let t = run_rga(&v(&[0.6, 0.4]), &canon2(), &AlgorithmConfig::rga(2)).unwrap();
        let want = [0.5 * 0.6, 0.5];
        for (got, want) in t.final_approx.coords().iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    /// m = 1 scales the atom by its correlation, later steps do not.
    #[test]
    fn first_relaxed_step_is_the_pure_step() {
        let f = v(&[0.3, 0.1]);
        let t = run_rga(&f, &canon2(), &AlgorithmConfig::rga(2)).unwrap();
        assert_eq!(t.records[0].step, 0.3);
        assert_eq!(t.records[0].approx_l1, 0.3);
        // r_1 = (0, 0.1) selects e_2 with weight 1/2, unscaled
        assert_eq!(t.records[1].step, 0.5);
        assert_eq!(t.final_approx, v(&[0.15, 0.5]));
    }

    #[test]
    fn prga_alpha_one_is_rga() {
        let f = v(&[0.6, 0.4]);
        let a = run_rga(&f, &canon2(), &AlgorithmConfig::rga(50)).unwrap();
        let b = run_prga(&f, &canon2(), &AlgorithmConfig::prga(1.0, 50)).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.final_approx, b.final_approx);
    }

    #[test]
    fn prga_rejects_bad_alpha() {
        let f = v(&[0.6, 0.4]);
        assert!(run_prga(&f, &canon2(), &AlgorithmConfig::prga(0.0, 5)).is_err());
        assert!(run_prga(&f, &canon2(), &AlgorithmConfig::prga(-1.0, 5)).is_err());
        assert!(run_prga(&f, &canon2(), &AlgorithmConfig::prga(f64::NAN, 5)).is_err());
    }

    #[test]
    fn kind_and_dimension_checks() {
        let f = v(&[0.6, 0.4]);
        assert!(run_pga(&f, &canon2(), &AlgorithmConfig::rga(5)).is_err());
        assert!(run_crga(&f, &canon2(), &AlgorithmConfig::pga(5)).is_err());
        assert!(run_pga(&f, &canon2(), &AlgorithmConfig::pga(0)).is_err());
        let d3 = Dictionary::canonical(3).unwrap();
        assert!(matches!(
            run(&f, &d3, &AlgorithmConfig::crga(5)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn optimal_gamma_examples() {
        let d = v(&[0.3, -0.2]);
        assert_eq!(optimal_gamma(&d.scaled(2.0), &d).unwrap(), 1.0);
        assert_eq!(
            optimal_gamma(&v(&[1.0, 0.0]), &v(&[0.0, 3.0])).unwrap(),
            0.0
        );
        let g = optimal_gamma(&v(&[0.0, 0.4]), &v(&[-0.6, 1.0])).unwrap();
        assert!((g - 0.4 / 1.36).abs() < 1e-15);
        assert_eq!(
            optimal_gamma(&v(&[1.0, 1.0]), &v(&[0.0, 0.0])).unwrap(),
            0.0
        );
        // negative correlation clamps to zero
        assert_eq!(
            optimal_gamma(&v(&[-1.0, 0.0]), &v(&[1.0, 0.0])).unwrap(),
            0.0
        );
        assert!(optimal_gamma(&v(&[1.0]), &v(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn crga_exact_atom_stops() {
        let t = run_crga(&v(&[1.0, 0.0]), &canon2(), &AlgorithmConfig::crga(10)).unwrap();
        assert_eq!(t.records.len(), 1);
        assert_eq!(t.records[0].step, 1.0);
        assert_eq!(t.final_approx, v(&[1.0, 0.0]));
        assert!(t.terminated_early);
    }

    #[test]
    fn crga_zero_input() {
        let t = run_crga(&v(&[0.0, 0.0]), &canon2(), &AlgorithmConfig::crga(10)).unwrap();
        assert!(t.records.is_empty());
        assert!(t.terminated_early);
        assert!(t.final_approx.is_zero());
    }

    #[test]
    fn crga_ledger_reconstructs_approximant() {
        let s = 1.0 / 2f64.sqrt();
        let dict = Dictionary::new(vec![v(&[1.0, 0.0]), v(&[s, s]), v(&[0.0, 1.0])]).unwrap();
        let f = v(&[0.1, -0.7]);
        let t = run_crga(&f, &dict, &AlgorithmConfig::crga(40)).unwrap();
        let rebuilt = t.ledger.as_ref().unwrap().reconstruct(&dict).unwrap();
        for (a, b) in rebuilt.coords().iter().zip(t.final_approx.coords()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_layout() {
        let t = run_pga(&v(&[0.5, 0.5]), &canon2(), &AlgorithmConfig::pga(2)).unwrap();
        let csv = t.to_csv_string();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], TRACE_CSV_HEADER);
        assert_eq!(lines[1], "1,0,1,0.5,0.5,0.5");
        assert_eq!(lines[2], "2,1,1,0.5,0,1");
    }

    #[test]
    fn json_round_trip() {
        let t = run_crga(&v(&[0.6, 0.4]), &canon2(), &AlgorithmConfig::crga(3)).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: Trace = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
