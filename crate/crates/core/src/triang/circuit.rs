//! Circuits (minimal affine dependencies) and flips between triangulations.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{One, Signed, Zero};

use super::{is_valid_triangulation, PointConfig, Triangulation};
use crate::error::{Error, Result};
use crate::exactmath::{rational_kernel, Int, IntMatrix};
use crate::polytope::hull::Combinations;
use crate::polytope::LatticePoint;

/// Affine relation `Σ c_i x_i = Σ d_j x_j` with `Σ c_i = Σ d_j`, positive
/// integer coefficients of gcd one. Indices refer to the point list the
/// circuit was computed from. The positive side contains the smallest index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    pub positive: Vec<(usize, Int)>,
    pub negative: Vec<(usize, Int)>,
}

impl Circuit {
    pub fn positive_indices(&self) -> Vec<usize> {
        self.positive.iter().map(|(i, _)| *i).collect()
    }

    pub fn negative_indices(&self) -> Vec<usize> {
        self.negative.iter().map(|(i, _)| *i).collect()
    }

    /// All indices of the circuit, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .positive_indices()
            .into_iter()
            .chain(self.negative_indices())
            .collect();
        s.sort_unstable();
        s
    }

    /// `x_1 + x_4 = x_2 + x_3`: two points with coefficient one on each side.
    pub fn is_parallelogram(&self) -> bool {
        self.positive.len() == 2
            && self.negative.len() == 2
            && self.positive.iter().chain(&self.negative).all(|(_, c)| c.is_one())
    }

    /// The same circuit with indices renamed by `f`.
    fn reindexed(&self, f: impl Fn(usize) -> usize) -> Circuit {
        Circuit {
            positive: self.positive.iter().map(|(i, c)| (f(*i), c.clone())).collect(),
            negative: self.negative.iter().map(|(i, c)| (f(*i), c.clone())).collect(),
        }
    }
}

/// The affine dependence among `points`, restricted to its support, or
/// `None` when the points are affinely independent. Fails when the
/// dependence is not unique up to scaling.
pub fn circuit(points: &[LatticePoint]) -> Result<Option<Circuit>> {
    let Some(first) = points.first() else {
        return Ok(None);
    };
    let n = first.dim();
    let rows: Vec<Vec<Int>> = (0..=n)
        .map(|r| {
            points
                .iter()
                .map(|p| if r < n { p[r].clone() } else { Int::one() })
                .collect()
        })
        .collect();
    let kernel = rational_kernel(&IntMatrix::from_rows(&rows, points.len())?);
    match kernel.len() {
        0 => Ok(None),
        1 => {
            let mut v = kernel.into_iter().next().expect("one vector");
            if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            let positive = v
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_positive())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            let negative = v
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_negative())
                .map(|(i, c)| (i, -c))
                .collect();
            Ok(Some(Circuit { positive, negative }))
        }
        k => Err(Error::Domain(format!(
            "points have a {k}-dimensional space of affine dependences"
        ))),
    }
}

/// Every circuit of the configuration, indexed into its point list.
pub fn all_circuits(cfg: &PointConfig) -> Result<Vec<Circuit>> {
    let mut out = Vec::new();
    let pts = cfg.points();
    for size in 3..=(cfg.dim() + 2).min(pts.len()) {
        for subset in Combinations::new(pts.len(), size) {
            let sub: Vec<LatticePoint> = subset.iter().map(|&i| pts[i].clone()).collect();
            let Ok(Some(c)) = circuit(&sub) else { continue };
            if c.positive.len() + c.negative.len() == size {
                out.push(c.reindexed(|i| subset[i]));
            }
        }
    }
    Ok(out)
}

/// The other triangulation of `conv(Z)` swapped in for the one contained in
/// `t`, when `t` contains one of them with a common link. `None` when `t`
/// is not flippable along `c`.
pub fn flip(cfg: &PointConfig, t: &Triangulation, c: &Circuit) -> Result<Option<Triangulation>> {
    let support = c.support();
    let cells = |side: &[usize]| -> Vec<Vec<usize>> {
        side.iter()
            .map(|z| support.iter().copied().filter(|x| x != z).collect())
            .collect()
    };
    let pos = cells(&c.positive_indices());
    let neg = cells(&c.negative_indices());
    for (from, to) in [(&pos, &neg), (&neg, &pos)] {
        let mut link: Option<BTreeSet<Vec<usize>>> = None;
        let mut consistent = true;
        for rho in from {
            let l: BTreeSet<Vec<usize>> = t
                .simplices()
                .iter()
                .filter(|s| rho.iter().all(|x| s.contains(x)))
                .map(|s| s.iter().copied().filter(|x| !rho.contains(x)).collect())
                .collect();
            if l.is_empty() || link.as_ref().is_some_and(|prev| prev != &l) {
                consistent = false;
                break;
            }
            link = Some(l);
        }
        let Some(link) = link.filter(|_| consistent) else {
            continue;
        };
        let mut simplices: Vec<Vec<usize>> = t
            .simplices()
            .iter()
            .filter(|s| !from.iter().any(|rho| rho.iter().all(|x| s.contains(x))))
            .cloned()
            .collect();
        for rho in to {
            for l in &link {
                simplices.push(rho.iter().chain(l).copied().collect());
            }
        }
        let candidate = Triangulation::new(simplices);
        if is_valid_triangulation(cfg, &candidate)? {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Triangulations joined by single flips.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    pub edges: BTreeSet<(usize, usize)>,
    pub vertex_count: usize,
}

impl FlipGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Flip graph on the given triangulations; edges are index pairs `(i, j)`
/// with `i < j`. Flips leading outside the list are an error.
pub fn flip_graph(cfg: &PointConfig, triangulations: &[Triangulation]) -> Result<FlipGraph> {
    let index: HashMap<&Triangulation, usize> =
        triangulations.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let circuits = all_circuits(cfg)?;
    let mut edges = BTreeSet::new();
    for (i, t) in triangulations.iter().enumerate() {
        for c in &circuits {
            if let Some(u) = flip(cfg, t, c)? {
                let j = *index.get(&u).ok_or_else(|| {
                    Error::Internal("flip produced a triangulation outside the list".into())
                })?;
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    Ok(FlipGraph {
        edges,
        vertex_count: triangulations.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::exceptional_simplex;
    use crate::polytope::LatticePolytope;
    use crate::triang::enumerate_all;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint::from_i64(p)).collect()
    }

    #[test]
    fn circuit_examples() {
        let sq = circuit(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap().unwrap();
        assert_eq!(sq.positive_indices(), vec![0, 3]);
        assert_eq!(sq.negative_indices(), vec![1, 2]);
        assert!(sq.is_parallelogram());
        assert!(circuit(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap().is_none());
        let line = circuit(&pts(&[&[0], &[1], &[2]])).unwrap().unwrap();
        assert_eq!(line.positive, vec![(0, Int::from(1)), (2, Int::from(1))]);
        assert_eq!(line.negative, vec![(1, Int::from(2))]);
        assert!(!line.is_parallelogram());
        let edge = circuit(&pts(&[&[0, 0], &[2, 0], &[1, 0]])).unwrap().unwrap();
        assert!(!edge.is_parallelogram());
        assert!(circuit(&pts(&[&[0], &[1], &[2], &[3]])).is_err());
    }

    #[test]
    fn square_flip_is_an_involution() {
        let p = LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let cfg = PointConfig::new(&p).unwrap();
        let all = enumerate_all(&cfg).unwrap();
        let c = circuit(cfg.points()).unwrap().unwrap();
        let f = flip(&cfg, &all[0], &c).unwrap().unwrap();
        assert_eq!(f, all[1]);
        assert_eq!(flip(&cfg, &f, &c).unwrap().unwrap(), all[0]);
    }

    #[test]
    fn exceptional_flip_graph_connected() {
        let cfg = PointConfig::new(&exceptional_simplex(2).unwrap()).unwrap();
        let all = enumerate_all(&cfg).unwrap();
        let g = flip_graph(&cfg, &all).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.edges.len(), 21);
    }
}
