//! GKZ vectors and the combinatorics of the secondary polytope.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use super::{PointConfig, Triangulation};
use crate::error::Result;
use crate::exactmath::{rank, Int, IntMatrix};
use crate::polytope::hull::facets_double_description;
use crate::polytope::{AffineChart, LatticePoint};

/// `φ_T(a) = Σ Vol(σ)` over the simplices `σ` of `t` containing `a`.
pub fn gkz(cfg: &PointConfig, t: &Triangulation) -> Vec<Int> {
    let mut v = vec![Int::zero(); cfg.len()];
    for s in t.simplices() {
        let vol = cfg.simplex_volume(s);
        for &i in s {
            v[i] += &vol;
        }
    }
    v
}

/// Summary of the hull of the GKZ vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondaryReport {
    pub dimension: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub facet_count: usize,
    /// Every vertex lies on exactly `dimension` edges.
    pub is_simple: bool,
    /// Every triangulation has its own GKZ vector and it is a vertex.
    pub all_coherent: bool,
}

#[derive(Debug, Clone)]
pub struct SecondaryPolytope {
    pub report: SecondaryReport,
    pub gkz: Vec<Vec<Int>>,
    /// Whether the GKZ vector of each triangulation is a vertex.
    pub is_vertex: Vec<bool>,
    /// Hull edges as pairs of triangulation indices `(i, j)`, `i < j`.
    pub edges: BTreeSet<(usize, usize)>,
}

/// Hull of the GKZ vectors of `triangulations`, computed in lattice
/// coordinates of their affine span.
pub fn secondary_polytope(
    cfg: &PointConfig,
    triangulations: &[Triangulation],
) -> Result<SecondaryPolytope> {
    let vectors: Vec<Vec<Int>> = triangulations.iter().map(|t| gkz(cfg, t)).collect();
    let mut first_with: HashMap<&Vec<Int>, usize> = HashMap::new();
    for (i, v) in vectors.iter().enumerate() {
        first_with.entry(v).or_insert(i);
    }
    let mut distinct: Vec<usize> = first_with.values().copied().collect();
    distinct.sort_unstable();
    let points: Vec<LatticePoint> = distinct
        .iter()
        .map(|&i| LatticePoint::new(vectors[i].clone()))
        .collect();
    let chart = AffineChart::new(&points)?;
    let dim = chart.dim();
    let local: Vec<LatticePoint> = points.iter().map(|p| chart.to_local(p)).collect();
    let facets = facets_double_description(&local, dim)?;
    let tight: Vec<Vec<usize>> = local
        .iter()
        .map(|p| (0..facets.len()).filter(|&f| facets[f].is_tight(p)).collect())
        .collect();
    let normal_rank = |fs: &[usize]| -> usize {
        if fs.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Int>> = fs.iter().map(|&f| facets[f].normal.clone()).collect();
        rank(&IntMatrix::from_rows(&rows, dim).expect("rectangular"))
    };
    let vertex: Vec<bool> = if dim == 0 {
        vec![true; local.len()]
    } else {
        tight.iter().map(|fs| normal_rank(fs) == dim).collect()
    };
    let mut local_edges = Vec::new();
    for a in 0..local.len() {
        for b in a + 1..local.len() {
            if !vertex[a] || !vertex[b] {
                continue;
            }
            let common: Vec<usize> = tight[a]
                .iter()
                .copied()
                .filter(|f| tight[b].contains(f))
                .collect();
            if common.len() + 1 >= dim && normal_rank(&common) + 1 == dim {
                local_edges.push((a, b));
            }
        }
    }
    let mut degree = vec![0usize; local.len()];
    for &(a, b) in &local_edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let vertex_count = vertex.iter().filter(|&&v| v).count();
    let is_simple = (0..local.len()).all(|i| !vertex[i] || degree[i] == dim);
    let all_coherent = distinct.len() == triangulations.len() && vertex.iter().all(|&v| v);
    let is_vertex = vectors
        .iter()
        .map(|v| {
            let slot = distinct.binary_search(&first_with[v]).expect("indexed");
            vertex[slot]
        })
        .collect();
    let edges = local_edges
        .iter()
        .map(|&(a, b)| (distinct[a], distinct[b]))
        .collect();
    Ok(SecondaryPolytope {
        report: SecondaryReport {
            dimension: dim,
            vertex_count,
            edge_count: local_edges.len(),
            facet_count: facets.len(),
            is_simple,
            all_coherent,
        },
        gkz: vectors,
        is_vertex,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{exceptional_simplex, lawrence_prism, Heights};
    use crate::exactmath::ints;
    use crate::polytope::LatticePolytope;
    use crate::triang::enumerate_all;

    fn report(p: &LatticePolytope) -> SecondaryReport {
        let cfg = PointConfig::new(p).unwrap();
        let all = enumerate_all(&cfg).unwrap();
        secondary_polytope(&cfg, &all).unwrap().report
    }

    #[test]
    fn square_gkz() {
        let p = LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let cfg = PointConfig::new(&p).unwrap();
        // (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3
        let main = Triangulation::new(vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let anti = Triangulation::new(vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(gkz(&cfg, &main), ints(&[2, 1, 1, 2]));
        assert_eq!(gkz(&cfg, &anti), ints(&[1, 2, 2, 1]));
        let r = report(&p);
        assert_eq!((r.dimension, r.vertex_count, r.edge_count), (1, 2, 1));
    }

    #[test]
    fn associahedron() {
        let r = report(&exceptional_simplex(2).unwrap());
        assert_eq!(r.dimension, 3);
        assert_eq!(r.vertex_count, 14);
        assert_eq!(r.edge_count, 21);
        assert_eq!(r.facet_count, 9);
        assert!(r.is_simple && r.all_coherent);
    }

    #[test]
    fn prism_secondary_polytopes() {
        let hexagon = report(&lawrence_prism(&Heights::new(vec![1, 1, 1]).unwrap()));
        assert_eq!((hexagon.dimension, hexagon.vertex_count, hexagon.edge_count), (2, 6, 6));
        let pentagon = report(&lawrence_prism(&Heights::new(vec![2, 1]).unwrap()));
        assert_eq!((pentagon.dimension, pentagon.vertex_count), (2, 5));
        assert!(pentagon.is_simple && pentagon.all_coherent);
    }

    #[test]
    fn single_triangulation_is_a_point() {
        let r = report(&LatticePolytope::from_i64_points(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap());
        assert_eq!((r.dimension, r.vertex_count, r.edge_count), (0, 1, 0));
        assert!(r.is_simple && r.all_coherent);
    }
}
