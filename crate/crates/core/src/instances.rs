//! Seeded random dictionaries and `A_1` elements.
//!
//! Trial `t` under seed `s` draws from `ChaCha8Rng::seed_from_u64(s)` with
//! its stream set to `t`, so any single trial can be replayed on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::dictionary::{build_a1_element, A1Element, Dictionary, Entry, Sign};
use crate::error::{Error, Result};
use crate::hilbert::{self, Vector};

/// Identifies the generator in output headers.
pub const RNG_ID: &str = "chacha8/seed_from_u64/stream=trial";

/// Dimensions cycled through by [`trial_instance`].
pub const TRIAL_DIMS: [usize; 4] = [2, 8, 16, 64];

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniformly distributed unit vector in `R^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<Vector> {
    loop {
        let coords: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let v = Vector::new(coords)?;
        let norm = hilbert::norm_l2(&v);
        if norm > 1e-6 {
            return Ok(v.scaled(1.0 / norm));
        }
    }
}

/// `n_atoms` random unit atoms in `R^dim`.
pub fn random_dictionary<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    n_atoms: usize,
) -> Result<Dictionary> {
    if dim == 0 || n_atoms == 0 {
        return Err(Error::InvalidArgument(
            "random dictionary needs dim >= 1 and n_atoms >= 1".into(),
        ));
    }
    let atoms = (0..n_atoms)
        .map(|_| random_unit_vector(rng, dim))
        .collect::<Result<Vec<_>>>()?;
    Dictionary::new(atoms)
}

/// Nonnegative weights summing to 1, with random signs, on every atom.
pub fn random_a1_element<R: Rng + ?Sized>(rng: &mut R, dict: &Dictionary) -> Result<A1Element> {
    let raw: Vec<f64> = (0..dict.len()).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = raw.iter().sum();
    let mut coeffs: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let head: f64 = coeffs[..coeffs.len() - 1].iter().sum();
    *coeffs.last_mut().expect("non-empty dictionary") = (1.0 - head).max(0.0);

    let entries: Vec<Entry> = coeffs
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let sign = if rng.gen::<bool>() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            Entry(i, sign, c)
        })
        .collect();
    build_a1_element(dict, &entries, 1.0)
}

/// A random redundant instance: `2 · dim` atoms, `dim` from [`TRIAL_DIMS`].
#[derive(Debug, Clone)]
pub struct TrialInstance {
    pub trial: u64,
    pub dict: Dictionary,
    pub element: A1Element,
}

pub fn trial_instance(seed: u64, trial: u64) -> Result<TrialInstance> {
    let dim = TRIAL_DIMS[(trial % TRIAL_DIMS.len() as u64) as usize];
    trial_instance_with_dim(seed, trial, dim)
}

pub fn trial_instance_with_dim(seed: u64, trial: u64, dim: usize) -> Result<TrialInstance> {
    let mut rng = trial_rng(seed, trial);
    let dict = random_dictionary(&mut rng, dim, 2 * dim)?;
    let element = random_a1_element(&mut rng, &dict)?;
    Ok(TrialInstance {
        trial,
        dict,
        element,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible_and_certified() {
        for trial in 0..8 {
            let a = trial_instance(7, trial).unwrap();
            let b = trial_instance(7, trial).unwrap();
            assert_eq!(a.element, b.element);
            assert_eq!(a.dict, b.dict);
            assert_eq!(a.dict.dim(), TRIAL_DIMS[trial as usize % 4]);
            assert!(a.element.coefficient_mass() <= 1.0 + 1e-12);
            assert!(hilbert::norm_l2(a.element.vector()) <= 1.0 + 1e-12);
        }
        assert_ne!(
            trial_instance(7, 0).unwrap().element,
            trial_instance(8, 0).unwrap().element
        );
    }
}
