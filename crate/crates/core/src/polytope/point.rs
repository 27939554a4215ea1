use std::fmt;
use std::ops::Index;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactmath::{self, det, inverse_unimodular, Int, IntMatrix};
use crate::error::{Error, Result};

/// A point of the ambient lattice `Z^n`. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<Int>);

impl LatticePoint {
    pub fn new(coords: Vec<Int>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(exactmath::ints(coords))
    }

    pub fn origin(n: usize) -> Self {
        Self(vec![Int::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Int::zero(); n];
        v[i] = Int::from(1);
        Self(v)
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Int) -> LatticePoint {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, v: &[Int]) -> Int {
        self.0.iter().zip(v).fold(Int::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The point with a block of zeros appended.
    pub fn padded(&self, extra: usize) -> LatticePoint {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(Int::zero(), extra));
        Self(v)
    }

    /// `(self, tail)` as a point of the direct sum.
    pub fn concat(&self, tail: &LatticePoint) -> LatticePoint {
        let mut v = self.0.clone();
        v.extend(tail.0.iter().cloned());
        Self(v)
    }

    /// Divides by the gcd of the coordinates and fixes the sign so that the
    /// first non-zero coordinate is positive.
    pub fn primitive_direction(&self) -> LatticePoint {
        let mut v = exactmath::primitive(&self.0);
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
        }
        Self(v)
    }

    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
    }
}

impl Index<usize> for LatticePoint {
    type Output = Int;

    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Inequality `normal · x >= offset` with a primitive normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl Facet {
    /// `normal · x - offset`; non-negative on the polytope.
    pub fn slack(&self, x: &LatticePoint) -> Int {
        x.dot(&self.normal) - &self.offset
    }

    pub fn is_tight(&self, x: &LatticePoint) -> bool {
        self.slack(x).is_zero()
    }
}

/// Affine unimodular map `x -> linear * x + translation`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    linear: IntMatrix,
    translation: Vec<Int>,
}

impl AffineMap {
    pub fn new(linear: IntMatrix, translation: Vec<Int>) -> Result<Self> {
        if !linear.is_square() || linear.rows() != translation.len() {
            return Err(Error::Dimension(format!(
                "affine map with {}x{} linear part and translation of length {}",
                linear.rows(),
                linear.cols(),
                translation.len()
            )));
        }
        if det(&linear)?.abs() != Int::from(1) {
            return Err(Error::NotUnimodular);
        }
        Ok(Self {
            linear,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            linear: IntMatrix::identity(n),
            translation: vec![Int::zero(); n],
        }
    }

    pub fn translation_by(t: &LatticePoint) -> Self {
        Self {
            linear: IntMatrix::identity(t.dim()),
            translation: t.coords().to_vec(),
        }
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Int] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &LatticePoint) -> LatticePoint {
        self.apply_dilated(x, &Int::from(1))
    }

    /// Image under the map that carries `kP` onto `k f(P)`:
    /// `x -> linear * x + k * translation`.
    pub fn apply_dilated(&self, x: &LatticePoint, k: &Int) -> LatticePoint {
        let lx = self
            .linear
            .mul_vec(x.coords())
            .expect("point dimension matches map");
        LatticePoint(
            lx.into_iter()
                .zip(&self.translation)
                .map(|(a, t)| a + t * k)
                .collect(),
        )
    }

    /// `then ∘ self`
    pub fn then(&self, then: &AffineMap) -> AffineMap {
        let linear = then.linear.mul(&self.linear).expect("matching dimensions");
        let translation = then.apply(&LatticePoint(self.translation.clone())).0;
        AffineMap {
            linear,
            translation,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = inverse_unimodular(&self.linear).expect("linear part is unimodular");
        let t = inv.mul_vec(&self.translation).expect("matching dimensions");
        AffineMap {
            linear: inv,
            translation: t.into_iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineMap")
            .field("linear", &self.linear)
            .field(
                "translation",
                &self.translation.iter().map(ToString::to_string).collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_roundtrip() {
        let m = AffineMap::new(
            IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]),
            exactmath::ints(&[5, 7]),
        )
        .unwrap();
        let p = LatticePoint::from_i64(&[2, -3]);
        assert_eq!(m.apply(&p), LatticePoint::from_i64(&[4, 4]));
        assert_eq!(m.inverse().apply(&m.apply(&p)), p);
        assert_eq!(m.then(&m.inverse()), AffineMap::identity(2));
    }

    #[test]
    fn non_unimodular_rejected() {
        let r = AffineMap::new(IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]), exactmath::ints(&[0, 0]));
        assert_eq!(r, Err(Error::NotUnimodular));
    }

    #[test]
    fn primitive_direction_sign() {
        let p = LatticePoint::from_i64(&[0, -4, 6]);
        assert_eq!(p.primitive_direction(), LatticePoint::from_i64(&[0, 2, -3]));
    }
}
