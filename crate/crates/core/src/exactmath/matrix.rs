use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};
use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries cannot fill a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length. With no
    /// rows the column count is taken from `cols_if_empty`.
    pub fn from_rows(rows: &[Vec<Int>], cols_if_empty: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols_if_empty, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Int::from(x)))
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Int::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor * row[source]`
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self[(source, j)];
            self[(target, j)] -= delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;

    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Int::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(k, p);
                    negate = !negate;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Rank over the rationals, computed fraction-free.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let mut prev = Int::one();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        for i in r + 1..a.rows {
            for j in c + 1..a.cols {
                let v = (&a[(r, c)] * &a[(i, j)] - &a[(i, c)] * &a[(r, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = Int::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}

/// Row Hermite normal form. Returns `(h, u)` with `u` unimodular and
/// `h = u * m`; pivots are positive and entries above a pivot are reduced
/// into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            let pivot = (r..h.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Some rational solution of `m x = b`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_rational(m: &IntMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    if b.len() != m.rows {
        return None;
    }
    let cols = m.cols;
    let mut a: Vec<Vec<Rat>> = (0..m.rows)
        .map(|i| {
            let mut row: Vec<Rat> = m.row(i).iter().map(|x| Rat::from(x.clone())).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut a, cols);
    for row in a.iter().skip(pivots.len()) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}

/// Reduced row echelon form on the first `cols` columns of `a`, in place.
/// Returns the pivot column of each leading row.
fn rref(a: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..a[i].len() {
                let delta = &f * &a[r][j];
                a[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the rational kernel `{x : m x = 0}`, each vector scaled to a
/// primitive integer vector.
pub fn rational_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let cols = m.cols;
    let mut a: Vec<Vec<Rat>> = (0..m.rows)
        .map(|i| m.row(i).iter().map(|x| Rat::from(x.clone())).collect())
        .collect();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -a[r][f].clone();
            }
            primitive_from_rational(&v)
        })
        .collect()
}

/// Z-basis of the lattice `{x in Z^cols : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let (h, u) = hnf(&m.transpose());
    (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect()
}

/// Inverse of a unimodular matrix; fails when `|det m| != 1`.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let (h, u) = hnf(m);
    if h != IntMatrix::identity(m.rows) {
        return Err(Error::NotUnimodular);
    }
    Ok(u)
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction (positive multiple).
pub fn primitive_from_rational(v: &[Rat]) -> Vec<Int> {
    let lcm = v
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    primitive(&ints)
}

/// Divides an integer vector by the gcd of its entries (zero stays zero).
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(x: i64) -> Int {
        Int::from(x)
    }

    fn rat(x: i64) -> Rat {
        Rat::from_integer(int(x))
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), int(1));
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(det(&m).unwrap(), int(4));
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&m).unwrap(), int(-1));
        let m = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(det(&m).unwrap(), int(0));
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), int(1));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(det(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        // edge vectors of a narrow parallelogram (0,0),(1,0),(1,1),(2,1)
        let m = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1], &[2, 1]]);
        assert_eq!(rank(&m), 2);
        let m = IntMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 0, 2], &[0, 0, 0]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hnf(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));

        let m = IntMatrix::from_i64_rows(&[&[2, 4]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, m);
        assert_eq!(u, IntMatrix::identity(1));
        assert_eq!(primitive(h.row(0)), vec![int(1), int(2)]);

        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let (h, u) = hnf(&m);
        assert_eq!(u.mul(&m).unwrap(), h);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(det(&u).unwrap().abs(), int(1));
    }

    #[test]
    fn solve_and_kernel() {
        let b = vec![rat(3), rat(-2)];
        assert_eq!(solve_rational(&IntMatrix::identity(2), &b), Some(b.clone()));
        let m = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_rational(&m, &[rat(0), rat(1)]), None);

        // affine relation of the unit square's vertices, homogenized
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let ker = rational_kernel(&m);
        assert_eq!(ker.len(), 1);
        let k: Vec<Int> = if ker[0][0] < int(0) {
            ker[0].iter().map(|x| -x).collect()
        } else {
            ker[0].clone()
        };
        assert_eq!(k, vec![int(1), int(-1), int(-1), int(1)]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // kernel of [2 2] over Z is spanned by (1,-1), not (2,-2)
        let m = IntMatrix::from_i64_rows(&[&[2, 2]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![int(1), int(1)]);
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_i64_rows(&[&[2, 3], &[1, 2]]);
        let inv = inverse_unimodular(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(2));
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(inverse_unimodular(&m), Err(Error::NotUnimodular));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-4i64..=4, n * n)
            .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(Int::from).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn det_is_multiplicative((a, b) in (1usize..5).prop_flat_map(|n| (small_matrix(n), small_matrix(n)))) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(det(&ab).unwrap(), det(&a).unwrap() * det(&b).unwrap());
        }

        #[test]
        fn hnf_transform_is_unimodular(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..=6, 25)) {
            let m = IntMatrix::new(rows, cols, seed[..rows * cols].iter().map(|&x| Int::from(x)).collect()).unwrap();
            let (h, u) = hnf(&m);
            prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
            prop_assert_eq!(det(&u).unwrap().abs(), Int::one());
            prop_assert_eq!(rank(&h), rank(&m));
        }
    }
}
