//! Best `m`-term approximation by exhaustive support enumeration, and the
//! instance on which no `m`-term approximant beats `1/(2√m)`.
//!
//! Nothing here calls into the greedy engines; this is the oracle they are
//! measured against.

use crate::dictionary::{build_a1_element, A1Element, Dictionary, Entry, Sign};
use crate::error::{Error, Result};
use crate::hilbert::{self, Vector};

/// Largest number of supports [`best_m_term_error`] will enumerate.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// `R^{2m}` with `D = {±e_i}` and `f = Σ e_i / (2m)`.
pub fn lower_bound_instance(m: usize) -> Result<(Dictionary, A1Element)> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "lower bound instance needs m >= 2, got {m}"
        )));
    }
    let n = 2 * m;
    let dict = Dictionary::canonical(n)?;
    let coeff = 1.0 / n as f64;
    let entries: Vec<_> = (0..n).map(|i| Entry(i, Sign::Plus, coeff)).collect();
    let f = build_a1_element(&dict, &entries, 1.0)?;
    Ok((dict, f))
}

/// `1 / (2√m)`.
pub fn m_term_lower_bound(m: usize) -> f64 {
    0.5 / (m as f64).sqrt()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Smallest `‖f - s‖` over all `s` in the span of at most `m` atoms.
///
/// Enumerates every support of size `min(m, |D|)` (a larger span never does
/// worse) and projects `f` onto it through the normal equations.
pub fn best_m_term_error(f: &Vector, dict: &Dictionary, m: usize) -> Result<f64> {
    if f.dim() != dict.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: dict.dim(),
        });
    }
    let k = m.min(dict.len());
    if k == 0 {
        return Ok(hilbert::norm_l2(f));
    }
    let count = binomial(dict.len(), k);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }

    let atoms = dict.atoms();
    let mut support: Vec<usize> = (0..k).collect();
    let mut best = f64::INFINITY;
    loop {
        let chosen: Vec<&Vector> = support.iter().map(|&i| &atoms[i]).collect();
        best = best.min(projection_error(f, &chosen)?);
        if !next_combination(&mut support, atoms.len()) {
            break;
        }
    }
    Ok(best)
}

/// Advances `c` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// `‖f - P f‖` where `P` projects onto the span of `atoms`.
fn projection_error(f: &Vector, atoms: &[&Vector]) -> Result<f64> {
    let n = atoms.len();
    let mut gram = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        rhs[i] = hilbert::inner(atoms[i], f)?;
        for j in 0..=i {
            let g = hilbert::inner(atoms[i], atoms[j])?;
            gram[i][j] = g;
            gram[j][i] = g;
        }
    }
    let coeffs = solve_psd(gram, rhs);
    let mut approx = Vector::zeros(f.dim())?;
    for (c, a) in coeffs.iter().zip(atoms) {
        approx = hilbert::combine(1.0, &approx, *c, a)?;
    }
    Ok(hilbert::norm_l2(&hilbert::sub(f, &approx)?))
}

/// Least-squares solution of `A x = b` for symmetric positive semidefinite
/// `A`, by Cholesky with diagonal pivoting. Columns whose remaining pivot
/// falls below a relative tolerance are treated as dependent and get 0.
fn solve_psd(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    let scale = (0..n).map(|i| a[i][i]).fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;

    // a is overwritten with L in its lower triangle
    for j in 0..n {
        let p = (j..n)
            .max_by(|&x, &y| a[x][x].total_cmp(&a[y][y]))
            .expect("non-empty range");
        if a[p][p] <= tol {
            break;
        }
        a.swap(j, p);
        for row in a.iter_mut() {
            row.swap(j, p);
        }
        perm.swap(j, p);
        b.swap(j, p);

        let d = a[j][j].sqrt();
        a[j][j] = d;
        for row in a.iter_mut().skip(j + 1) {
            row[j] /= d;
        }
        for i in j + 1..n {
            for l in j + 1..=i {
                let v = a[i][l] - a[i][j] * a[l][j];
                a[i][l] = v;
                a[l][i] = v;
            }
        }
        rank = j + 1;
    }

    let mut y = vec![0.0; rank];
    for i in 0..rank {
        let s = (0..i).fold(b[i], |acc, l| acc - a[i][l] * y[l]);
        y[i] = s / a[i][i];
    }
    for i in (0..rank).rev() {
        let s = (i + 1..rank).fold(y[i], |acc, l| acc - a[l][i] * y[l]);
        y[i] = s / a[i][i];
    }

    let mut x = vec![0.0; n];
    for (i, yi) in y.into_iter().enumerate() {
        x[perm[i]] = yi;
    }
    x
}
