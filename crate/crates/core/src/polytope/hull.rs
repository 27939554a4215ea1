//! Exact convex hull routines for small full-dimensional point sets.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};

use super::{Facet, LatticePoint};
use crate::error::{Error, Result};
use crate::exactmath::{
    self, fm_feasible, rank, rational_kernel, Int, IntMatrix, LinearConstraint, Rat,
};

/// Vertex cap for the brute-force facet enumeration.
pub const MAX_HULL_VERTICES: usize = 30;
/// Dimension cap for the brute-force facet enumeration.
pub const MAX_HULL_DIM: usize = 8;

/// Indices of the points of a full-dimensional set that are vertices of its
/// convex hull. Input points must be pairwise distinct.
///
/// A point is a vertex iff some linear functional strictly separates it from
/// every other point; that strict system is decided by Fourier–Motzkin.
pub fn vertex_indices(points: &[LatticePoint], dim: usize) -> Result<Vec<usize>> {
    if points.len() <= 1 {
        return Ok((0..points.len()).collect());
    }
    if dim > MAX_HULL_DIM {
        return Err(Error::CapExceeded(format!(
            "vertex detection in dimension {dim} (max {MAX_HULL_DIM})"
        )));
    }
    let mut is_vertex: Vec<Option<bool>> = vec![None; points.len()];
    for f in probe_functionals(dim) {
        let values: Vec<Int> = points.iter().map(|p| p.dot(&f)).collect();
        let max = values.iter().max().expect("non-empty");
        let winners: Vec<usize> = (0..points.len()).filter(|&i| &values[i] == max).collect();
        if winners.len() == 1 {
            is_vertex[winners[0]] = Some(true);
        }
    }
    for i in 0..points.len() {
        if is_vertex[i].is_some() {
            continue;
        }
        let others: Vec<&LatticePoint> = (0..points.len())
            .filter(|&j| j != i && is_vertex[j] != Some(false))
            .map(|j| &points[j])
            .collect();
        let cs: Vec<LinearConstraint> = others
            .iter()
            .map(|q| {
                let diff = points[i].sub(q);
                LinearConstraint::gt(
                    diff.coords().iter().map(|x| Rat::from(x.clone())).collect(),
                    Rat::zero(),
                )
            })
            .collect();
        is_vertex[i] = Some(fm_feasible(&cs)?);
    }
    Ok((0..points.len())
        .filter(|&i| is_vertex[i] == Some(true))
        .collect())
}

/// Small fixed family of functionals whose unique maximisers are vertices.
fn probe_functionals(dim: usize) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    for i in 0..dim {
        for s in [1i64, -1] {
            let mut f = vec![Int::zero(); dim];
            f[i] = Int::from(s);
            out.push(f);
        }
    }
    for s in [1i64, -1] {
        out.push((0..dim).map(|i| Int::from(s * (i as i64 + 1))).collect());
        out.push((0..dim).map(|i| Int::from(s * (dim - i) as i64)).collect());
        out.push(
            (0..dim)
                .map(|i| Int::from(s * if i % 2 == 0 { 3 } else { -2 } * (i as i64 + 1)))
                .collect(),
        );
    }
    out
}

/// Facets of the convex hull of a full-dimensional point set, by
/// enumerating every hyperplane through `dim` affinely independent points
/// and keeping the supporting ones. Normals are primitive and inward.
pub fn facets_brute_force(points: &[LatticePoint], dim: usize) -> Result<Vec<Facet>> {
    if points.len() > MAX_HULL_VERTICES || dim > MAX_HULL_DIM {
        return Err(Error::CapExceeded(format!(
            "brute-force hull of {} points in dimension {} (max {} points, dimension {})",
            points.len(),
            dim,
            MAX_HULL_VERTICES,
            MAX_HULL_DIM
        )));
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut seen: BTreeSet<Facet> = BTreeSet::new();
    for combo in Combinations::new(points.len(), dim) {
        let base = &points[combo[0]];
        let diffs: Vec<Vec<Int>> = combo[1..]
            .iter()
            .map(|&i| points[i].sub(base).into_coords())
            .collect();
        let m = IntMatrix::from_rows(&diffs, dim)?;
        let ker = rational_kernel(&m);
        if ker.len() != 1 {
            continue;
        }
        let mut normal = ker.into_iter().next().expect("one kernel vector");
        let offset = base.dot(&normal);
        let mut sign = 0i8;
        let mut supporting = true;
        for p in points {
            let s = p.dot(&normal) - &offset;
            let sg = if s.is_positive() {
                1
            } else if s.is_negative() {
                -1
            } else {
                0
            };
            if sg != 0 {
                if sign == 0 {
                    sign = sg;
                } else if sign != sg {
                    supporting = false;
                    break;
                }
            }
        }
        if !supporting || sign == 0 {
            continue;
        }
        let offset = if sign < 0 {
            normal.iter_mut().for_each(|x| *x = -&*x);
            -offset
        } else {
            offset
        };
        seen.insert(Facet { normal, offset });
    }
    Ok(seen.into_iter().collect())
}

/// Facets of the convex hull of a full-dimensional point set by the double
/// description method on the cone of valid inequalities
/// `{(a, b) : a · p - b >= 0 for all p}`.
///
/// Unlike [`facets_brute_force`] this scales to a few hundred points.
pub fn facets_double_description(points: &[LatticePoint], dim: usize) -> Result<Vec<Facet>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<Int>> = points
        .iter()
        .map(|p| {
            let mut r = p.coords().to_vec();
            r.push(-Int::one());
            r
        })
        .collect();
    let n = dim + 1;
    let m = IntMatrix::from_rows(&rows, n)?;
    if rank(&m) != n {
        return Err(Error::Domain(
            "double description needs a full-dimensional point set".into(),
        ));
    }

    // Initial simplicial cone from n independent rows.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<Int>> = basis.iter().map(|&b| rows[b].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&IntMatrix::from_rows(&trial, n)?) == trial.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    let mut rays: Vec<Ray> = Vec::with_capacity(n);
    for j in 0..n {
        // ray r with rows[basis[i]] · r = delta_ij
        let others: Vec<Vec<Int>> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &b)| rows[b].clone())
            .collect();
        let ker = rational_kernel(&IntMatrix::from_rows(&others, n)?);
        let mut v = ker.into_iter().next().ok_or_else(|| {
            Error::Internal("initial cone is not simplicial".into())
        })?;
        if dot(&rows[basis[j]], &v).is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        rays.push(Ray { v, zeros: BTreeSet::new() });
    }
    for (pos, &b) in basis.iter().enumerate() {
        for (j, ray) in rays.iter_mut().enumerate() {
            if j != pos {
                ray.zeros.insert(b);
            }
        }
    }

    let processed: HashSet<usize> = basis.iter().copied().collect();
    for (i, row) in rows.iter().enumerate() {
        if processed.contains(&i) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot(row, &r.v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for k in 0..rays.len() {
            if !vals[k].is_negative() {
                let mut r = rays[k].clone();
                if vals[k].is_zero() {
                    r.zeros.insert(i);
                }
                next.push(r);
            }
        }
        for &p in &plus {
            for &q in &minus {
                let common: BTreeSet<usize> =
                    rays[p].zeros.intersection(&rays[q].zeros).copied().collect();
                if common.len() + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != q)
                    .all(|k| !common.is_subset(&rays[k].zeros));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[q];
                let v: Vec<Int> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| x * a + y * &b)
                    .collect();
                let mut zeros = common;
                zeros.insert(i);
                next.push(Ray {
                    v: exactmath::primitive(&v),
                    zeros,
                });
            }
        }
        rays = next;
    }

    let mut facets: Vec<Facet> = rays
        .into_iter()
        .map(|r| {
            let mut v = exactmath::primitive(&r.v);
            let offset = v.pop().expect("homogenising coordinate");
            Facet { normal: v, offset }
        })
        .collect();
    facets.sort();
    facets.dedup();
    Ok(facets)
}

#[derive(Clone)]
struct Ray {
    v: Vec<Int>,
    zeros: BTreeSet<usize>,
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// Lexicographic k-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut c = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] < self.n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                self.current = Some(c);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint::from_i64(p)).collect()
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(5, 2).count(), 10);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn square_vertices_and_facets() {
        let p = pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(vertex_indices(&p, 2).unwrap(), vec![0, 1, 2, 3]);
        let f = facets_brute_force(&p, 2).unwrap();
        assert_eq!(f.len(), 4);
        let g = facets_double_description(&p, 2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn interior_and_edge_points_are_not_vertices() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(vertex_indices(&p, 2).unwrap(), vec![0, 1, 2]);
        let p = pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 0, 0], &[0, 1, 1]]);
        assert_eq!(vertex_indices(&p, 3).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn exceptional_triangle_facets() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 2]]);
        let f = facets_brute_force(&p, 2).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.contains(&Facet {
            normal: exactmath::ints(&[-1, -1]),
            offset: Int::from(-2)
        }));
    }

    #[test]
    fn cap_is_enforced() {
        let p: Vec<LatticePoint> = (0..31).map(|i| LatticePoint::from_i64(&[i, i * i])).collect();
        assert!(matches!(facets_brute_force(&p, 2), Err(Error::CapExceeded(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn double_description_matches_brute_force(
            raw in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 4..10)
        ) {
            let mut p: Vec<LatticePoint> = raw.iter().map(|v| LatticePoint::from_i64(v)).collect();
            p.sort();
            p.dedup();
            let diffs: Vec<Vec<Int>> = p.iter().map(|q| q.sub(&p[0]).into_coords()).collect();
            prop_assume!(rank(&IntMatrix::from_rows(&diffs, 3).unwrap()) == 3);
            let a = facets_brute_force(&p, 3).unwrap();
            let b = facets_double_description(&p, 3).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
