//! Finite symmetric dictionaries and the atomic classes `A_τ(D)`.
//!
//! A [`Dictionary`] stores one representative per `±g` pair. The negated
//! atoms are implicit, so the supremum of `⟨r, g⟩` over the symmetric closure
//! is the maximum of `|⟨r, atom_i⟩|` over the stored atoms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{self, Vector};

/// Atoms may deviate from unit norm by at most this much.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-9;

/// Slack allowed on `Σ |a_k|^τ ≤ 1`.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-12;

/// Selects `+atom` or `-atom` from a symmetric pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// `+1` for `x >= 0`, including both signed zeros.
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;

    fn try_from(s: i8) -> Result<Self> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidArgument(format!(
                "sign must be +1 or -1, got {other}"
            ))),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A signed atom chosen by greedy selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomRef {
    pub index: usize,
    pub sign: Sign,
    /// `⟨r, sign · atom_index⟩`, nonnegative when produced by [`Dictionary::select_atom`].
    pub correlation: f64,
}

/// A problem found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Empty,
    InvalidDim,
    DimensionMismatch {
        index: usize,
        dim: usize,
        expected: usize,
    },
    NonFinite {
        index: usize,
    },
    NotUnitNorm {
        index: usize,
        norm: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "dictionary has no atoms"),
            Violation::InvalidDim => write!(f, "dictionary dim must be >= 1"),
            Violation::DimensionMismatch {
                index,
                dim,
                expected,
            } => write!(f, "atom {index} has dim {dim}, expected {expected}"),
            Violation::NonFinite { index } => write!(f, "atom {index} has a non-finite entry"),
            Violation::NotUnitNorm { index, norm } => {
                write!(f, "atom {index} has norm {norm}, expected 1")
            }
        }
    }
}

/// The JSON form of a dictionary: `{"dim": n, "atoms": [[...], ...]}`.
///
/// Unlike [`Dictionary`] this may hold invalid data; pass it to [`validate`]
/// or convert it with `Dictionary::try_from`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DictionaryDoc {
    pub dim: usize,
    pub atoms: Vec<Vec<f64>>,
}

/// Lists every way `doc` fails to describe a dictionary.
pub fn validate(doc: &DictionaryDoc) -> std::result::Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    if doc.dim == 0 {
        violations.push(Violation::InvalidDim);
    }
    if doc.atoms.is_empty() {
        violations.push(Violation::Empty);
    }
    for (index, atom) in doc.atoms.iter().enumerate() {
        if atom.len() != doc.dim {
            violations.push(Violation::DimensionMismatch {
                index,
                dim: atom.len(),
                expected: doc.dim,
            });
            continue;
        }
        if atom.iter().any(|x| !x.is_finite()) {
            violations.push(Violation::NonFinite { index });
            continue;
        }
        let norm = atom.iter().fold(0.0, |acc, a| acc + a * a).sqrt();
        if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
            violations.push(Violation::NotUnitNorm { index, norm });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A finite list of unit-norm atoms of a common dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DictionaryDoc", into = "DictionaryDoc")]
pub struct Dictionary {
    dim: usize,
    atoms: Vec<Vector>,
}

impl Dictionary {
    pub fn new(atoms: Vec<Vector>) -> Result<Self> {
        let dim = atoms.first().map_or(0, Vector::dim);
        Dictionary::try_from(DictionaryDoc {
            dim,
            atoms: atoms.into_iter().map(Vector::into_coords).collect(),
        })
    }

    /// The canonical basis `e_1, ..., e_n` of `R^n`.
    pub fn canonical(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "canonical dictionary needs n >= 1".into(),
            ));
        }
        let atoms = (0..n)
            .map(|i| Vector::basis(n, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dictionary { dim: n, atoms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Vector] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> Option<&Vector> {
        self.atoms.get(index)
    }

    /// `sign · atom_index` as a vector.
    pub fn signed_atom(&self, index: usize, sign: Sign) -> Result<Vector> {
        let atom = self.atoms.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "atom index {index} out of range ({} atoms)",
                self.atoms.len()
            ))
        })?;
        Ok(match sign {
            Sign::Plus => atom.clone(),
            Sign::Minus => atom.negated(),
        })
    }

    /// Greedy selection over the symmetric closure: the atom maximizing
    /// `|⟨r, atom_i⟩|`, signed so the correlation is nonnegative.
    ///
    /// Ties go to the lowest index; a later atom must be strictly better to
    /// displace the incumbent. An exactly zero correlation gets the `+` sign.
    pub fn select_atom(&self, r: &Vector) -> Result<AtomRef> {
        if r.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: r.dim(),
                right: self.dim,
            });
        }
        let mut best = AtomRef {
            index: 0,
            sign: Sign::Plus,
            correlation: f64::NEG_INFINITY,
        };
        for (index, atom) in self.atoms.iter().enumerate() {
            let c = hilbert::inner(r, atom)?;
            if c.abs() > best.correlation {
                best = AtomRef {
                    index,
                    sign: Sign::of(c),
                    correlation: c.abs(),
                };
            }
        }
        Ok(best)
    }

    fn to_doc(&self) -> DictionaryDoc {
        DictionaryDoc {
            dim: self.dim,
            atoms: self.atoms.iter().map(|a| a.coords().to_vec()).collect(),
        }
    }
}

impl TryFrom<DictionaryDoc> for Dictionary {
    type Error = Error;

    fn try_from(doc: DictionaryDoc) -> Result<Self> {
        validate(&doc).map_err(Error::InvalidDictionary)?;
        let atoms = doc
            .atoms
            .into_iter()
            .map(Vector::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Dictionary {
            dim: doc.dim,
            atoms,
        })
    }
}

impl From<Dictionary> for DictionaryDoc {
    fn from(d: Dictionary) -> Self {
        d.to_doc()
    }
}

/// One term `coefficient · (sign · atom_index)` of an atomic representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry(pub usize, pub Sign, pub f64);

/// The JSON form of an atomic representation:
/// `{"entries": [[index, sign, coeff], ...], "tau": t}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct A1Spec {
    pub entries: Vec<Entry>,
    pub tau: f64,
}

/// A vector together with a representation certifying it lies in `A_τ(D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct A1Element {
    vector: Vector,
    support: Vec<(usize, Sign)>,
    coefficients: Vec<f64>,
    tau: f64,
}

impl A1Element {
    pub fn vector(&self) -> &Vector {
        &self.vector
    }

    pub fn support(&self) -> &[(usize, Sign)] {
        &self.support
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `Σ |a_k|^τ`.
    pub fn coefficient_mass(&self) -> f64 {
        coefficient_mass(self.coefficients.iter().copied(), self.tau)
    }

    pub fn into_vector(self) -> Vector {
        self.vector
    }

    pub fn to_spec(&self) -> A1Spec {
        A1Spec {
            entries: self
                .support
                .iter()
                .zip(&self.coefficients)
                .map(|(&(i, s), &c)| Entry(i, s, c))
                .collect(),
            tau: self.tau,
        }
    }
}

fn coefficient_mass(coefficients: impl Iterator<Item = f64>, tau: f64) -> f64 {
    coefficients.fold(0.0, |acc, a| acc + a.abs().powf(tau))
}

/// Assembles `Σ a_k (s_k · atom_k)` and certifies `Σ |a_k|^τ ≤ 1`.
pub fn build_a1_element(dict: &Dictionary, entries: &[Entry], tau: f64) -> Result<A1Element> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tau must be > 0, got {tau}"
        )));
    }
    let mut vector = Vector::zeros(dict.dim())?;
    for &Entry(index, sign, coeff) in entries {
        if !coeff.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "coefficient for atom {index} is not finite"
            )));
        }
        let atom = dict.signed_atom(index, sign)?;
        vector = hilbert::combine(1.0, &vector, coeff, &atom)?;
    }
    let sum = coefficient_mass(entries.iter().map(|e| e.2), tau);
    if sum > 1.0 + MEMBERSHIP_TOLERANCE {
        return Err(Error::NotInAtomicClass { sum, tau });
    }
    Ok(A1Element {
        vector,
        support: entries.iter().map(|e| (e.0, e.1)).collect(),
        coefficients: entries.iter().map(|e| e.2).collect(),
        tau,
    })
}

impl A1Spec {
    pub fn build(&self, dict: &Dictionary) -> Result<A1Element> {
        build_a1_element(dict, &self.entries, self.tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn canonical_dictionaries() {
        let d = Dictionary::canonical(2).unwrap();
        assert_eq!(d.atoms(), &[v(&[1.0, 0.0]), v(&[0.0, 1.0])]);
        assert_eq!(Dictionary::canonical(1).unwrap().atoms(), &[v(&[1.0])]);
        let d4 = Dictionary::canonical(4).unwrap();
        assert_eq!(d4.len(), 4);
        assert_eq!(d4.atom(2).unwrap(), &v(&[0.0, 0.0, 1.0, 0.0]));
        assert!(matches!(
            Dictionary::canonical(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn validate_reports_violations() {
        let ok: DictionaryDoc = Dictionary::canonical(3).unwrap().into();
        assert_eq!(validate(&ok), Ok(()));

        let bad = DictionaryDoc {
            dim: 2,
            atoms: vec![vec![2.0, 0.0]],
        };
        let errs = validate(&bad).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(matches!(errs[0], Violation::NotUnitNorm { index: 0, .. }));

        let s = 1.0 / 2f64.sqrt();
        let diag = DictionaryDoc {
            dim: 2,
            atoms: vec![vec![s, s]],
        };
        assert_eq!(validate(&diag), Ok(()));

        let mixed = DictionaryDoc {
            dim: 2,
            atoms: vec![vec![1.0], vec![0.0, 3.0]],
        };
        let errs = validate(&mixed).unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(matches!(
            errs[0],
            Violation::DimensionMismatch { index: 0, .. }
        ));

        let empty = DictionaryDoc {
            dim: 2,
            atoms: vec![],
        };
        assert_eq!(validate(&empty), Err(vec![Violation::Empty]));
    }

    #[test]
    fn select_atom_examples() {
        let d = Dictionary::canonical(2).unwrap();
        let a = d.select_atom(&v(&[0.8, 0.1])).unwrap();
        assert_eq!((a.index, a.sign, a.correlation), (0, Sign::Plus, 0.8));

        let a = d.select_atom(&v(&[0.0, -0.4])).unwrap();
        assert_eq!((a.index, a.sign, a.correlation), (1, Sign::Minus, 0.4));

        let a = d.select_atom(&v(&[0.5, 0.5])).unwrap();
        assert_eq!((a.index, a.sign, a.correlation), (0, Sign::Plus, 0.5));

        // negative tie also resolves to the lowest index
        let a = d.select_atom(&v(&[-0.5, 0.5])).unwrap();
        assert_eq!((a.index, a.sign), (0, Sign::Minus));

        let a = d.select_atom(&v(&[0.0, 0.0])).unwrap();
        assert_eq!((a.index, a.sign, a.correlation), (0, Sign::Plus, 0.0));

        assert!(d.select_atom(&v(&[1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn build_a1_examples() {
        let d2 = Dictionary::canonical(2).unwrap();
        let b = 0.4;
        let f = build_a1_element(
            &d2,
            &[Entry(0, Sign::Plus, 1.0 - b), Entry(1, Sign::Plus, b)],
            1.0,
        )
        .unwrap();
        assert_eq!(f.vector(), &v(&[0.6, 0.4]));

        let d1 = Dictionary::canonical(1).unwrap();
        let f = build_a1_element(&d1, &[Entry(0, Sign::Plus, 1.0)], 1.0).unwrap();
        assert_eq!(f.vector(), &v(&[1.0]));

        let d4 = Dictionary::canonical(4).unwrap();
        let entries: Vec<_> = (0..4).map(|i| Entry(i, Sign::Plus, 0.25)).collect();
        let f = build_a1_element(&d4, &entries, 1.0).unwrap();
        assert_eq!(f.vector(), &v(&[0.25; 4]));
        assert_eq!(f.coefficient_mass(), 1.0);

        let err = build_a1_element(
            &d2,
            &[Entry(0, Sign::Plus, 0.8), Entry(1, Sign::Plus, 0.8)],
            1.0,
        )
        .unwrap_err();
        match err {
            Error::NotInAtomicClass { sum, .. } => assert!((sum - 1.6).abs() < 1e-15),
            e => panic!("unexpected {e}"),
        }
        assert!(build_a1_element(&d2, &[Entry(5, Sign::Plus, 0.1)], 1.0).is_err());
        assert!(build_a1_element(&d2, &[], 0.0).is_err());
    }

    #[test]
    fn tau_below_one_is_stricter() {
        let d2 = Dictionary::canonical(2).unwrap();
        let entries = [Entry(0, Sign::Plus, 0.5), Entry(1, Sign::Minus, 0.5)];
        assert!(build_a1_element(&d2, &entries, 1.0).is_ok());
        // 2 * 0.5^0.5 > 1
        assert!(build_a1_element(&d2, &entries, 0.5).is_err());
        let f = build_a1_element(&d2, &entries, 2.0).unwrap();
        assert_eq!(f.vector(), &v(&[0.5, -0.5]));
    }

    #[test]
    fn json_documents() {
        let d: Dictionary =
            serde_json::from_str(r#"{"dim": 2, "atoms": [[1.0, 0.0], [0.0, 1.0]]}"#).unwrap();
        assert_eq!(d, Dictionary::canonical(2).unwrap());
        assert!(serde_json::from_str::<Dictionary>(r#"{"dim": 1, "atoms": [[2.0]]}"#).is_err());

        let spec: A1Spec =
            serde_json::from_str(r#"{"entries": [[0, 1, 0.6], [1, -1, 0.4]], "tau": 1}"#).unwrap();
        assert_eq!(spec.entries[1], Entry(1, Sign::Minus, 0.4));
        let f = spec.build(&d).unwrap();
        assert_eq!(f.vector(), &v(&[0.6, -0.4]));
        assert_eq!(f.to_spec(), spec);
        assert!(serde_json::from_str::<A1Spec>(r#"{"entries": [[0, 2, 0.6]], "tau": 1}"#).is_err());
    }
}
