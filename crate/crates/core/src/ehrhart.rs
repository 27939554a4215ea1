//! Ehrhart counts, the h*-vector and the degree of a lattice polytope.
//!
//! Everything is computed relative to the lattice of the affine hull, so a
//! `d`-dimensional polytope has an h*-vector of length `d + 1` regardless of
//! the ambient dimension.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, Int};
use crate::polytope::LatticePolytope;

/// Coefficients `h*_0, ..., h*_d` of the h*-polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarVector {
    pub coeffs: Vec<Int>,
}

impl HStarVector {
    /// Dimension of the polytope the vector belongs to.
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest `j` with `h*_j != 0`.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Normalized volume: the sum of the coefficients.
    pub fn volume(&self) -> Int {
        self.coeffs.iter().sum()
    }

    /// Coefficients up to the degree.
    pub fn trimmed(&self) -> &[Int] {
        &self.coeffs[..=self.degree()]
    }

    /// Coefficientwise `self <= other`, padding the shorter vector with zeros.
    pub fn dominated_by(&self, other: &HStarVector) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Int::zero();
        (0..n).all(|i| self.coeffs.get(i).unwrap_or(&zero) <= other.coeffs.get(i).unwrap_or(&zero))
    }
}

/// `|kP ∩ M|` for `k = 0..=kmax`.
pub fn ehrhart_counts(p: &LatticePolytope, kmax: u64) -> Result<Vec<Int>> {
    (0..=kmax)
        .map(|k| p.count_lattice_points(k).map(Int::from))
        .collect()
}

/// `|int(kP) ∩ M|` for `k = 0..=kmax`.
pub fn interior_counts(p: &LatticePolytope, kmax: u64) -> Result<Vec<Int>> {
    (0..=kmax)
        .map(|k| p.count_interior_lattice_points(k).map(Int::from))
        .collect()
}

/// h*-vector from the counts of the first `d + 1` dilates.
pub fn hstar(p: &LatticePolytope) -> Result<HStarVector> {
    let d = p.dimension();
    let counts = ehrhart_counts(p, d as u64)?;
    let coeffs: Vec<Int> = (0..=d)
        .map(|j| {
            (0..=j).fold(Int::zero(), |acc, i| {
                let term = binomial(d as i64 + 1, i as i64) * &counts[j - i];
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    if coeffs[0] != Int::from(1) || coeffs.iter().any(Signed::is_negative) {
        return Err(Error::Internal(format!(
            "h*-vector {:?} of {p:?} violates h*_0 = 1 or non-negativity",
            coeffs.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(HStarVector { coeffs })
}

/// `d!` times the Euclidean volume in the affine hull lattice.
pub fn normalized_volume(p: &LatticePolytope) -> Result<Int> {
    Ok(hstar(p)?.volume())
}

/// Degree of the h*-polynomial.
pub fn degree(p: &LatticePolytope) -> Result<usize> {
    Ok(hstar(p)?.degree())
}

/// Smallest `i` such that `int(kP)` has no lattice points for
/// `1 <= k <= d - i`, found by counting interior points directly.
pub fn degree_via_interior(p: &LatticePolytope) -> Result<usize> {
    let d = p.dimension();
    let mut hollow = 0;
    for k in 1..=d as u64 {
        if p.count_interior_lattice_points(k)? != 0 {
            break;
        }
        hollow += 1;
    }
    Ok(d - hollow)
}

/// Checks the interior counts of dilates against the h*-vector through
/// Ehrhart–Macdonald reciprocity, for `k <= d + 2`.
pub fn check_reciprocity(p: &LatticePolytope) -> Result<bool> {
    let h = hstar(p)?;
    let d = h.dim();
    let deg = h.degree();
    let interior = interior_counts(p, d as u64 + 2)?;
    let hollow = (1..=d - deg).all(|k| interior[k].is_zero());
    let top = interior[d - deg + 1] == h.coeffs[deg];
    let series = (0..=d + 2).all(|k| {
        let expected: Int = (0..=d)
            .map(|i| &h.coeffs[i] * binomial(k as i64 + i as i64 - 1, d as i64))
            .sum();
        expected == interior[k]
    });
    Ok(hollow && top && series)
}
