//! Generators for the standard polytope families and a seeded scrambler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{Int, IntMatrix};
use crate::polytope::{AffineMap, LatticePoint, LatticePolytope};

/// Heights `h_1, ..., h_n` of a Lawrence prism: non-negative, not all zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Heights(Vec<u64>);

impl Heights {
    pub fn new(h: Vec<u64>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::InvalidInput("heights must be non-empty".into()));
        }
        if h.iter().all(|&x| x == 0) {
            return Err(Error::InvalidInput("heights must not all be zero".into()));
        }
        Ok(Self(h))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The same multiset in descending order.
    pub fn sorted_desc(&self) -> Heights {
        let mut h = self.0.clone();
        h.sort_unstable_by(|a, b| b.cmp(a));
        Heights(h)
    }
}

fn unit(n: usize, i: usize) -> LatticePoint {
    LatticePoint::unit(n, i)
}

/// `conv(0, e_1, ..., e_n)`.
pub fn basic_simplex(n: usize) -> LatticePolytope {
    let mut pts = vec![LatticePoint::origin(n)];
    pts.extend((0..n).map(|i| unit(n, i)));
    LatticePolytope::new(n, pts).expect("basic simplex is well formed")
}

/// Lawrence prism in `Z^n`: the segments from `e_{i-1}` to `e_{i-1} + h_i e_n`
/// for `i = 1..n`, with `e_0 = 0`.
pub fn lawrence_prism(h: &Heights) -> LatticePolytope {
    let n = h.len();
    let mut pts = Vec::with_capacity(2 * n);
    for (i, &hi) in h.as_slice().iter().enumerate() {
        let base = if i == 0 {
            LatticePoint::origin(n)
        } else {
            unit(n, i - 1)
        };
        let top = base.add(&unit(n, n - 1).scale(&Int::from(hi)));
        pts.push(base);
        pts.push(top);
    }
    LatticePolytope::new(n, pts).expect("prism is well formed")
}

/// `conv(0, 2e_1, 2e_2, e_3, ..., e_n)` for `n >= 2`.
pub fn exceptional_simplex(n: usize) -> Result<LatticePolytope> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "exceptional simplex needs n >= 2, got {n}"
        )));
    }
    let two = Int::from(2);
    let mut pts = vec![
        LatticePoint::origin(n),
        unit(n, 0).scale(&two),
        unit(n, 1).scale(&two),
    ];
    pts.extend((2..n).map(|i| unit(n, i)));
    LatticePolytope::new(n, pts)
}

/// Cayley polytope: the convex hull of `(P_i, e_i)` in `Z^m x Z^r` with
/// `e_0 = 0`, for `r + 1` polytopes in a common `Z^m`.
pub fn cayley(polys: &[LatticePolytope]) -> Result<LatticePolytope> {
    let Some(first) = polys.first() else {
        return Err(Error::InvalidInput("cayley needs at least one polytope".into()));
    };
    let m = first.ambient_dim();
    if let Some(p) = polys.iter().find(|p| p.ambient_dim() != m) {
        return Err(Error::Dimension(format!(
            "cayley factors live in Z^{m} and Z^{}",
            p.ambient_dim()
        )));
    }
    let r = polys.len() - 1;
    let mut pts = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let tag = if i == 0 {
            LatticePoint::origin(r)
        } else {
            unit(r, i - 1)
        };
        pts.extend(p.vertices().iter().map(|v| v.concat(&tag)));
    }
    LatticePolytope::new(m + r, pts)
}

/// `r`-fold pyramid: the Cayley polytope of `p` and `r` copies of the origin.
pub fn pyramid(p: &LatticePolytope, r: usize) -> Result<LatticePolytope> {
    let apex = LatticePolytope::new(p.ambient_dim(), vec![LatticePoint::origin(p.ambient_dim())])?;
    let mut factors = vec![p.clone()];
    factors.extend(std::iter::repeat_n(apex, r));
    cayley(&factors)
}

/// `kP` for `k >= 1`.
pub fn dilate(p: &LatticePolytope, k: u64) -> Result<LatticePolytope> {
    if k == 0 {
        return Err(Error::InvalidInput("dilation factor must be positive".into()));
    }
    let k = Int::from(k);
    LatticePolytope::new(
        p.ambient_dim(),
        p.vertices().iter().map(|v| v.scale(&k)).collect(),
    )
}

/// Largest absolute entry allowed in the scrambling matrix.
const SCRAMBLE_ENTRY_BOUND: i64 = 5;
/// Translations are drawn from `[-SCRAMBLE_SHIFT, SCRAMBLE_SHIFT]^n`.
const SCRAMBLE_SHIFT: i64 = 10;

/// Random unimodular map on `Z^n` determined by `seed`: a product of `4n`
/// elementary swaps, sign changes and shears keeping every matrix entry in
/// `[-5, 5]`, followed by a translation in `[-10, 10]^n`.
pub fn random_unimodular(n: usize, seed: u64) -> AffineMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 4 * n && attempts < 400 * n {
        attempts += 1;
        let kind = rng.gen_range(0..4);
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match kind {
            0 if i != j => m.swap(i, j),
            1 => m[i].iter_mut().for_each(|x| *x = -*x),
            _ if i != j => {
                let c = loop {
                    let c = rng.gen_range(-SCRAMBLE_ENTRY_BOUND..=SCRAMBLE_ENTRY_BOUND);
                    if c != 0 {
                        break c;
                    }
                };
                let row: Vec<i64> = m[i].iter().zip(&m[j]).map(|(a, b)| a + c * b).collect();
                if row.iter().any(|x| x.abs() > SCRAMBLE_ENTRY_BOUND) {
                    continue;
                }
                m[i] = row;
            }
            _ => continue,
        }
        accepted += 1;
    }
    let data = m.into_iter().flatten().map(Int::from).collect();
    let translation = (0..n)
        .map(|_| Int::from(rng.gen_range(-SCRAMBLE_SHIFT..=SCRAMBLE_SHIFT)))
        .collect();
    AffineMap::new(IntMatrix::new(n, n, data).expect("square"), translation)
        .expect("product of elementary matrices is unimodular")
}

/// Image of `p` under [`random_unimodular`], together with the map.
pub fn scramble(p: &LatticePolytope, seed: u64) -> (LatticePolytope, AffineMap) {
    let map = random_unimodular(p.ambient_dim(), seed);
    let image = p.apply(&map).expect("map matches the ambient dimension");
    (image, map)
}
