//! Convergence-rate bounds and the checkers that hold traces against them.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::counterexample::check_counterexample_params;
use super::product::PartialProducts;
use crate::engines::{AlgorithmKind, Trace};
use crate::error::{Error, Result};
use crate::format::sig17;

/// Slack allowed when comparing an observed error to a bound.
pub const BOUND_TOLERANCE: f64 = 1e-12;

/// `2 / √m`, the relaxed greedy rate on `A_1`.
pub fn rga_bound(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("rga bound needs m >= 1".into()));
    }
    Ok(2.0 / (m as f64).sqrt())
}

/// `2 / m^{α/2}`, the power-relaxed rate for `0 < α ≤ 1`, stated for the
/// norm rather than its square. No such bound exists for `α > 1`.
pub fn prga_bound(m: usize, alpha: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("prga bound needs m >= 1".into()));
    }
    if alpha > 1.0 {
        return Err(Error::BoundRefused(format!(
            "no rate bound for alpha = {alpha} > 1: the power-relaxed iteration can stall \
             at a positive distance (see the divergence floor)"
        )));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "prga bound needs alpha > 0, got {alpha}"
        )));
    }
    Ok(2.0 / (m as f64).powf(alpha / 2.0))
}

/// `2 / √(m + 4)`, the line-search relaxed rate on `A_1`.
pub fn crga_bound(m: usize) -> f64 {
    2.0 / (m as f64 + 4.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UpperBound {
    Rga,
    Prga,
    Crga,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundDirection {
    /// `observed ≤ bound`
    Upper,
    /// `observed ≥ bound`
    Floor,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub m: usize,
    pub observed: f64,
    pub bound: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub direction: BoundDirection,
    pub per_m: Vec<BoundCheck>,
    pub all_satisfied: bool,
}

/// JSON summary of a [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub name: String,
    pub all_satisfied: bool,
    /// Smallest slack `bound - observed` (upper) or `observed - bound`
    /// (floor); negative means violated.
    pub worst_margin: f64,
    pub worst_m: Option<usize>,
    pub checked: usize,
}

pub const REPORT_CSV_HEADER: &str = "m,observed,bound,satisfied";

impl BoundReport {
    pub fn new(name: impl Into<String>, direction: BoundDirection) -> Self {
        BoundReport {
            name: name.into(),
            direction,
            per_m: Vec::new(),
            all_satisfied: true,
        }
    }

    pub fn push(&mut self, m: usize, observed: f64, bound: f64) {
        let satisfied = match self.direction {
            BoundDirection::Upper => observed <= bound + BOUND_TOLERANCE,
            BoundDirection::Floor => observed >= bound - BOUND_TOLERANCE,
        };
        self.all_satisfied &= satisfied;
        self.per_m.push(BoundCheck {
            m,
            observed,
            bound,
            satisfied,
        });
    }

    /// Appends every check from `other`, keeping this report's name.
    pub fn extend(&mut self, other: BoundReport) {
        self.all_satisfied &= other.all_satisfied;
        self.per_m.extend(other.per_m);
    }

    pub fn margin(&self, check: &BoundCheck) -> f64 {
        match self.direction {
            BoundDirection::Upper => check.bound - check.observed,
            BoundDirection::Floor => check.observed - check.bound,
        }
    }

    /// The check with the least slack; the first such in order on ties.
    pub fn worst(&self) -> Option<&BoundCheck> {
        self.per_m.iter().reduce(|best, c| {
            if self.margin(c) < self.margin(best) {
                c
            } else {
                best
            }
        })
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.per_m.iter().filter(|c| !c.satisfied)
    }

    pub fn summary(&self) -> BoundSummary {
        let worst = self.worst();
        BoundSummary {
            name: self.name.clone(),
            all_satisfied: self.all_satisfied,
            worst_margin: worst.map_or(f64::INFINITY, |c| self.margin(c)),
            worst_m: worst.map(|c| c.m),
            checked: self.per_m.len(),
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{REPORT_CSV_HEADER}")?;
        for c in &self.per_m {
            writeln!(
                w,
                "{},{},{},{}",
                c.m,
                sig17(c.observed),
                sig17(c.bound),
                c.satisfied
            )?;
        }
        Ok(())
    }
}

type BoundFn = Box<dyn Fn(usize) -> Result<f64>>;

/// Holds each recorded residual norm against the bound matching the trace's
/// algorithm. The trace's instance is assumed to lie in `A_1(D)`.
pub fn check_upper_bound(trace: &Trace, bound: UpperBound) -> Result<BoundReport> {
    let kind = trace.config.kind;
    let paired = matches!(
        (bound, kind),
        (UpperBound::Rga, AlgorithmKind::Rga)
            | (UpperBound::Prga, AlgorithmKind::Prga)
            | (UpperBound::Crga, AlgorithmKind::Crga)
    );
    if !paired {
        return Err(Error::InvalidArgument(format!(
            "cannot check a {} trace against the {bound:?} bound",
            kind.name()
        )));
    }
    let (name, bound_at): (&str, BoundFn) = match bound {
        UpperBound::Rga => ("rga", Box::new(rga_bound)),
        UpperBound::Prga => {
            let alpha = trace.config.alpha;
            prga_bound(1, alpha)?;
            ("prga", Box::new(move |m| prga_bound(m, alpha)))
        }
        UpperBound::Crga => ("crga", Box::new(|m| Ok(crga_bound(m)))),
    };
    let mut report = BoundReport::new(name, BoundDirection::Upper);
    for r in &trace.records {
        report.push(r.m, r.residual_l2, bound_at(r.m)?);
    }
    Ok(report)
}

/// Holds a PRGA trace on `counterexample_instance(b)` against the per-step
/// floor `b ∏_{k=2}^m (1 - k^-α) / √2`.
pub fn check_divergence_floor(trace: &Trace, b: f64, alpha: f64) -> Result<BoundReport> {
    check_counterexample_params(b, alpha)?;
    if trace.config.kind != AlgorithmKind::Prga || trace.config.alpha != alpha {
        return Err(Error::InvalidArgument(format!(
            "divergence floor needs a PRGA trace with alpha = {alpha}, got {} with alpha = {}",
            trace.config.kind.name(),
            trace.config.alpha
        )));
    }
    let scale = b / std::f64::consts::SQRT_2;
    let mut products = PartialProducts::new(alpha)?;
    let mut product = 1.0;
    let mut report = BoundReport::new("divergence-floor", BoundDirection::Floor);
    for r in &trace.records {
        if r.m >= 2 {
            let (k, p) = products.next().expect("iterator is infinite");
            debug_assert_eq!(k, r.m);
            product = p;
        }
        report.push(r.m, r.residual_l2, scale * product);
    }
    Ok(report)
}
