//! Lattice point enumeration in dilates of a full-dimensional polytope.
//!
//! Coordinates are first changed by a unimodular map chosen by LLL so that
//! the polytope is roughly round; then points are enumerated coordinate by
//! coordinate, bounding each coordinate by the facets of the projection onto
//! the leading coordinates. Only the last coordinate is not enumerated when
//! counting: its admissible range is an interval.

use num_traits::ToPrimitive;

use super::hull::facets_brute_force;
use super::LatticePoint;
use crate::error::{Error, Result};
use crate::exactmath::{inverse_unimodular, Int, IntMatrix};

/// Coordinates beyond this magnitude (after dilation) are refused.
const COORD_LIMIT: i128 = 1 << 40;

#[derive(Debug, Clone)]
struct Halfspace {
    normal: Vec<i64>,
    offset: i64,
}

#[derive(Debug, Clone)]
pub(crate) struct Counter {
    dim: usize,
    base: LatticePoint,
    /// x = restore * y + k * base
    restore: IntMatrix,
    /// `levels[i]`: facets of the projection onto the first `i + 1` coordinates.
    levels: Vec<Vec<Halfspace>>,
    max_coord: i128,
}

impl Counter {
    pub(crate) fn new(vertices: &[LatticePoint]) -> Result<Self> {
        let dim = vertices[0].dim();
        let base = vertices[0].clone();
        let shifted: Vec<LatticePoint> = vertices.iter().map(|v| v.sub(&base)).collect();
        let reduce = lll_basis(&shifted);
        let restore = inverse_unimodular(&reduce)?;
        let reduced: Vec<LatticePoint> = shifted
            .iter()
            .map(|v| LatticePoint::new(reduce.mul_vec(v.coords()).expect("square map")))
            .collect();
        let mut max_coord = 0i128;
        for v in &reduced {
            for x in v.coords() {
                let x = x.to_i128().filter(|x| x.abs() < COORD_LIMIT).ok_or_else(|| {
                    Error::CapExceeded("polytope coordinates too large to enumerate".into())
                })?;
                max_coord = max_coord.max(x.abs());
            }
        }
        let mut levels = Vec::with_capacity(dim);
        for i in 1..=dim {
            let mut proj: Vec<LatticePoint> = reduced
                .iter()
                .map(|v| LatticePoint::new(v.coords()[..i].to_vec()))
                .collect();
            proj.sort();
            proj.dedup();
            let facets = facets_brute_force(&proj, i)?;
            let level = facets
                .into_iter()
                .map(|f| {
                    let normal = f
                        .normal
                        .iter()
                        .map(|a| a.to_i64())
                        .collect::<Option<Vec<i64>>>();
                    match (normal, f.offset.to_i64()) {
                        (Some(normal), Some(offset)) => Ok(Halfspace { normal, offset }),
                        _ => Err(Error::CapExceeded("facet coefficients too large".into())),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(level);
        }
        Ok(Self {
            dim,
            base,
            restore,
            levels,
            max_coord,
        })
    }

    fn check_dilation(&self, k: u64) -> Result<()> {
        if (k as i128).saturating_mul(self.max_coord.max(1)) >= COORD_LIMIT {
            return Err(Error::CapExceeded(format!("dilation factor {k} too large")));
        }
        Ok(())
    }

    pub(crate) fn count(&self, k: u64, interior: bool) -> Result<u64> {
        self.check_dilation(k)?;
        let mut total = 0u64;
        let mut y = vec![0i64; self.dim];
        self.walk(0, k as i128, interior, &mut y, &mut |lo, hi, _| {
            total += (hi - lo + 1) as u64;
        });
        Ok(total)
    }

    pub(crate) fn points(&self, k: u64, interior: bool) -> Result<Vec<LatticePoint>> {
        self.check_dilation(k)?;
        let kk = Int::from(k);
        let shift = self.base.scale(&kk);
        let mut out = Vec::new();
        let mut y = vec![0i64; self.dim];
        self.walk(0, k as i128, interior, &mut y, &mut |lo, hi, prefix| {
            let mut full: Vec<Int> = prefix.iter().map(|&v| Int::from(v)).collect();
            for last in lo..=hi {
                *full.last_mut().expect("dim >= 1") = Int::from(last);
                let x = self.restore.mul_vec(&full).expect("square map");
                out.push(LatticePoint::new(x).add(&shift));
            }
        });
        out.sort();
        Ok(out)
    }

    /// Visits every admissible prefix; at the last level calls `emit` with the
    /// non-empty interval of the final coordinate.
    fn walk(
        &self,
        level: usize,
        k: i128,
        interior: bool,
        y: &mut [i64],
        emit: &mut dyn FnMut(i64, i64, &[i64]),
    ) {
        let last = level + 1 == self.dim;
        let strict = interior && last;
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        for h in &self.levels[level] {
            let partial: i128 = h.normal[..level]
                .iter()
                .zip(y.iter())
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum();
            let a = h.normal[level] as i128;
            let rhs = k * h.offset as i128 - partial;
            if a == 0 {
                if last && (partial < k * h.offset as i128 || (strict && partial == k * h.offset as i128)) {
                    return;
                }
                continue;
            }
            // a * y_level >= rhs  (> when strict)
            if a > 0 {
                let bound = if strict {
                    floor_div(rhs, a) + 1
                } else {
                    ceil_div(rhs, a)
                };
                lo = lo.max(bound);
            } else {
                let bound = if strict {
                    ceil_div(rhs, a) - 1
                } else {
                    floor_div(rhs, a)
                };
                hi = hi.min(bound);
            }
        }
        if lo > hi {
            return;
        }
        let (lo, hi) = (lo as i64, hi as i64);
        if last {
            y[level] = lo;
            emit(lo, hi, &y[..]);
            return;
        }
        for v in lo..=hi {
            y[level] = v;
            self.walk(level + 1, k, interior, y, emit);
        }
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

/// Unimodular matrix whose rows are an LLL-reduced basis of the dual
/// lattice with respect to the covariance form of the points, so that
/// widths along the new coordinate functionals are small. Falls back to the
/// identity when the reduction would leave the `i64` range.
fn lll_basis(points: &[LatticePoint]) -> IntMatrix {
    let n = points[0].dim();
    let fp: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.coords().iter().map(|x| x.to_f64().unwrap_or(0.0)).collect())
        .collect();
    let mean: Vec<f64> = (0..n)
        .map(|j| fp.iter().map(|p| p[j]).sum::<f64>() / fp.len() as f64)
        .collect();
    let mut gram = vec![vec![0.0f64; n]; n];
    for p in &fp {
        for a in 0..n {
            for b in 0..n {
                gram[a][b] += (p[a] - mean[a]) * (p[b] - mean[b]);
            }
        }
    }
    let trace: f64 = (0..n).map(|i| gram[i][i]).sum::<f64>().max(1.0);
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] += 1e-9 * trace;
    }
    let mut basis: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if lll_reduce(&mut basis, &gram).is_none() {
        return IntMatrix::identity(n);
    }
    let data = basis.into_iter().flatten().map(Int::from).collect();
    IntMatrix::new(n, n, data).expect("square")
}

fn lll_reduce(basis: &mut [Vec<i64>], gram: &[Vec<f64>]) -> Option<()> {
    let n = basis.len();
    if n <= 1 {
        return Some(());
    }
    let inner = |x: &[f64], y: &[f64]| -> f64 {
        let mut s = 0.0;
        for a in 0..n {
            for b in 0..n {
                s += x[a] * gram[a][b] * y[b];
            }
        }
        s
    };
    let mut k = 1;
    let mut iterations = 0;
    while k < n {
        iterations += 1;
        if iterations > 10_000 {
            break;
        }
        let fb: Vec<Vec<f64>> = basis
            .iter()
            .map(|r| r.iter().map(|&x| x as f64).collect())
            .collect();
        // Gram-Schmidt under the form
        let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0f64; n]; n];
        let mut norms = vec![0.0f64; n];
        for i in 0..n {
            let mut v = fb[i].clone();
            for j in 0..i {
                mu[i][j] = inner(&fb[i], &star[j]) / norms[j];
                for t in 0..n {
                    v[t] -= mu[i][j] * star[j][t];
                }
            }
            norms[i] = inner(&v, &v).max(f64::MIN_POSITIVE);
            star.push(v);
        }
        let mut changed = false;
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let q = q as i64;
                let (head, tail) = basis.split_at_mut(k);
                for (b, &a) in tail[0].iter_mut().zip(&head[j]) {
                    *b = b.checked_sub(a.checked_mul(q)?)?;
                }
                changed = true;
                break;
            }
        }
        if changed {
            continue;
        }
        if norms[k] < (0.75 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    Some(())
}
