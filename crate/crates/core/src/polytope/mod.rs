//! Lattice polytopes given by generators, with exact vertex, facet, edge and
//! lattice point queries.
//!
//! A polytope that is not full-dimensional is handled through an
//! [`AffineChart`]: a unimodular change of coordinates of the ambient
//! lattice carrying its affine hull onto `Z^d x 0`. All counting happens in
//! those local coordinates, so counts are taken relative to the lattice of
//! the affine hull.

mod counting;
pub mod hull;
mod point;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{hnf, integer_kernel, inverse_unimodular, rank, Int, IntMatrix};
use counting::Counter;

pub use point::{AffineMap, Facet, LatticePoint};

/// Unimodular coordinate change sending the affine hull of a polytope onto
/// the coordinate subspace `Z^d x 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineChart {
    map: AffineMap,
    inverse: AffineMap,
    dim: usize,
}

impl AffineChart {
    /// Chart for the affine hull of `points` (non-empty, equal lengths).
    pub fn new(points: &[LatticePoint]) -> Result<Self> {
        let n = points[0].dim();
        let base = &points[0];
        let diffs: Vec<Vec<Int>> = points.iter().map(|p| p.sub(base).into_coords()).collect();
        let diffs = IntMatrix::from_rows(&diffs, n)?;
        let d = rank(&diffs);
        let linear = if d == n {
            IntMatrix::identity(n)
        } else {
            let normals = integer_kernel(&diffs);
            let span = integer_kernel(&IntMatrix::from_rows(&normals, n)?);
            let span = IntMatrix::from_rows(&span, n)?;
            let (h, u) = hnf(&span.transpose());
            let top: Vec<Vec<Int>> = (0..d).map(|i| h.row(i)[..d].to_vec()).collect();
            let top_inv = inverse_unimodular(&IntMatrix::from_rows(&top, d)?)
                .map_err(|_| Error::Internal("affine hull lattice basis not saturated".into()))?;
            let mut fix = IntMatrix::identity(n).to_rows();
            for (i, row) in fix.iter_mut().take(d).enumerate() {
                row[..d].clone_from_slice(top_inv.row(i));
            }
            IntMatrix::from_rows(&fix, n)?.mul(&u)?
        };
        let shift: Vec<Int> = linear.mul_vec(base.coords())?.into_iter().map(|x| -x).collect();
        let map = AffineMap::new(linear, shift)?;
        let inverse = map.inverse();
        Ok(Self { map, inverse, dim: d })
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.map.dim()
    }

    /// The full ambient map; it sends the affine hull onto `Z^d x 0`.
    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn to_local(&self, x: &LatticePoint) -> LatticePoint {
        self.to_local_dilated(x, 1)
    }

    /// Local coordinates of a point of the `k`-th dilate.
    pub fn to_local_dilated(&self, x: &LatticePoint, k: u64) -> LatticePoint {
        let y = self.map.apply_dilated(x, &Int::from(k));
        LatticePoint::new(y.coords()[..self.dim].to_vec())
    }

    /// Like [`Self::to_local_dilated`] but `None` when `x` is off the affine
    /// hull of the `k`-th dilate.
    pub fn try_to_local_dilated(&self, x: &LatticePoint, k: u64) -> Option<LatticePoint> {
        let y = self.map.apply_dilated(x, &Int::from(k));
        if y.coords()[self.dim..].iter().all(Zero::is_zero) {
            Some(LatticePoint::new(y.coords()[..self.dim].to_vec()))
        } else {
            None
        }
    }

    pub fn to_ambient(&self, y: &LatticePoint) -> LatticePoint {
        self.to_ambient_dilated(y, 1)
    }

    pub fn to_ambient_dilated(&self, y: &LatticePoint, k: u64) -> LatticePoint {
        let padded = y.padded(self.ambient_dim() - self.dim);
        self.inverse.apply_dilated(&padded, &Int::from(k))
    }
}

/// An edge of a polytope together with every lattice point on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub endpoints: (LatticePoint, LatticePoint),
    /// Lattice points of the segment, from the first endpoint to the second.
    pub lattice_points: Vec<LatticePoint>,
}

impl Edge {
    fn between(a: &LatticePoint, b: &LatticePoint) -> Self {
        let d = b.sub(a);
        let g = d.content();
        let step = LatticePoint::new(d.coords().iter().map(|x| x / &g).collect());
        let steps = g.to_u64().expect("edge length fits in u64");
        let lattice_points = (0..=steps)
            .map(|i| a.add(&step.scale(&Int::from(i))))
            .collect();
        Self {
            endpoints: (a.clone(), b.clone()),
            lattice_points,
        }
    }

    /// Lattice length: number of lattice points minus one.
    pub fn length(&self) -> usize {
        self.lattice_points.len() - 1
    }

    /// More than two lattice points.
    pub fn is_long(&self) -> bool {
        self.lattice_points.len() > 2
    }
}

#[derive(Debug)]
enum Shape {
    /// Full-dimensional in the ambient lattice.
    Full {
        facets: Vec<Facet>,
        counter: OnceLock<Result<Arc<Counter>>>,
    },
    /// Lower-dimensional; `local` is the full-dimensional image under `chart`.
    Embedded {
        chart: AffineChart,
        local: LatticePolytope,
    },
}

#[derive(Debug)]
struct Inner {
    ambient_dim: usize,
    generators: Vec<LatticePoint>,
    vertices: Vec<LatticePoint>,
    dim: usize,
    shape: Shape,
}

/// Convex hull of finitely many points of `Z^n`. Cheap to clone.
#[derive(Clone)]
pub struct LatticePolytope(Arc<Inner>);

impl LatticePolytope {
    /// Polytope generated by `points`; duplicates and non-vertices are allowed.
    pub fn new(ambient_dim: usize, points: Vec<LatticePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("polytope needs at least one point".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != ambient_dim) {
            return Err(Error::Dimension(format!(
                "point {p:?} does not lie in Z^{ambient_dim}"
            )));
        }
        let mut generators = points;
        generators.sort();
        generators.dedup();
        let chart = AffineChart::new(&generators)?;
        let dim = chart.dim();
        if dim == ambient_dim {
            let idx = hull::vertex_indices(&generators, ambient_dim)?;
            let vertices: Vec<LatticePoint> = idx.iter().map(|&i| generators[i].clone()).collect();
            let facets = if dim == 0 {
                Vec::new()
            } else {
                hull::facets_brute_force(&vertices, dim)?
            };
            return Ok(Self(Arc::new(Inner {
                ambient_dim,
                generators,
                vertices,
                dim,
                shape: Shape::Full {
                    facets,
                    counter: OnceLock::new(),
                },
            })));
        }
        let local_points = generators.iter().map(|g| chart.to_local(g)).collect();
        let local = LatticePolytope::new(dim, local_points)?;
        let mut vertices: Vec<LatticePoint> =
            local.vertices().iter().map(|v| chart.to_ambient(v)).collect();
        vertices.sort();
        Ok(Self(Arc::new(Inner {
            ambient_dim,
            generators,
            vertices,
            dim,
            shape: Shape::Embedded { chart, local },
        })))
    }

    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self> {
        let ambient_dim = points.first().map_or(0, |p| p.len());
        Self::new(ambient_dim, points.iter().map(|p| LatticePoint::from_i64(p)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient_dim
    }

    /// Sorted, deduplicated generating points.
    pub fn generators(&self) -> &[LatticePoint] {
        &self.0.generators
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.0.vertices
    }

    pub fn dimension(&self) -> usize {
        self.0.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.0.dim == self.0.ambient_dim
    }

    /// Facets of a full-dimensional polytope.
    pub fn facets(&self) -> Result<&[Facet]> {
        match &self.0.shape {
            Shape::Full { facets, .. } => Ok(facets),
            Shape::Embedded { .. } => Err(Error::Dimension(format!(
                "facets requested for a {}-dimensional polytope in Z^{}",
                self.0.dim, self.0.ambient_dim
            ))),
        }
    }

    /// Full-dimensional copy in `Z^d` together with the chart producing it.
    /// Fails on polytopes that are already full-dimensional.
    pub fn restrict_to_affine_hull(&self) -> Result<(LatticePolytope, AffineChart)> {
        match &self.0.shape {
            Shape::Embedded { chart, local } => Ok((local.clone(), chart.clone())),
            Shape::Full { .. } => Err(Error::Domain(
                "polytope is already full-dimensional".into(),
            )),
        }
    }

    /// The polytope in coordinates where it is full-dimensional, with the
    /// chart used (identity chart when already full-dimensional).
    pub fn local_model(&self) -> (LatticePolytope, AffineChart) {
        match &self.0.shape {
            Shape::Embedded { chart, local } => (local.clone(), chart.clone()),
            Shape::Full { .. } => {
                let n = self.0.ambient_dim;
                let map = AffineMap::identity(n);
                let chart = AffineChart {
                    map: map.clone(),
                    inverse: map,
                    dim: n,
                };
                (self.clone(), chart)
            }
        }
    }

    fn counter(&self) -> Result<Arc<Counter>> {
        match &self.0.shape {
            Shape::Full { counter, .. } => counter
                .get_or_init(|| Counter::new(&self.0.vertices).map(Arc::new))
                .clone(),
            Shape::Embedded { .. } => unreachable!("counting is delegated to the local model"),
        }
    }

    fn collect(&self, k: u64, interior: bool) -> Result<Vec<LatticePoint>> {
        match &self.0.shape {
            Shape::Embedded { chart, local } => {
                let mut out: Vec<LatticePoint> = local
                    .collect(k, interior)?
                    .iter()
                    .map(|y| chart.to_ambient_dilated(y, k))
                    .collect();
                out.sort();
                Ok(out)
            }
            Shape::Full { .. } if self.0.dim == 0 => {
                if interior && k == 0 {
                    Ok(Vec::new())
                } else {
                    Ok(vec![LatticePoint::origin(0)])
                }
            }
            Shape::Full { .. } => self.counter()?.points(k, interior),
        }
    }

    fn tally(&self, k: u64, interior: bool) -> Result<u64> {
        match &self.0.shape {
            Shape::Embedded { local, .. } => local.tally(k, interior),
            Shape::Full { .. } if self.0.dim == 0 => Ok(u64::from(!(interior && k == 0))),
            Shape::Full { .. } => self.counter()?.count(k, interior),
        }
    }

    /// Lattice points of `kP`, sorted. `k = 0` gives the origin.
    pub fn lattice_points(&self, k: u64) -> Result<Vec<LatticePoint>> {
        self.collect(k, false)
    }

    /// Lattice points in the relative interior of `kP`, sorted. Empty for
    /// `k = 0`; a single point is its own relative interior.
    pub fn interior_lattice_points(&self, k: u64) -> Result<Vec<LatticePoint>> {
        self.collect(k, true)
    }

    pub fn count_lattice_points(&self, k: u64) -> Result<u64> {
        self.tally(k, false)
    }

    pub fn count_interior_lattice_points(&self, k: u64) -> Result<u64> {
        self.tally(k, true)
    }

    /// Whether `x` lies in the polytope.
    pub fn contains(&self, x: &LatticePoint) -> bool {
        if x.dim() != self.0.ambient_dim {
            return false;
        }
        match &self.0.shape {
            Shape::Embedded { chart, local } => chart
                .try_to_local_dilated(x, 1)
                .is_some_and(|y| local.contains(&y)),
            Shape::Full { facets, .. } => facets.iter().all(|f| !f.slack(x).is_negative()),
        }
    }

    /// Edges with all their lattice points.
    pub fn edges(&self) -> Vec<Edge> {
        match &self.0.shape {
            Shape::Embedded { chart, local } => local
                .edges()
                .into_iter()
                .map(|e| {
                    let (a, b) = &e.endpoints;
                    Edge::between(&chart.to_ambient(a), &chart.to_ambient(b))
                })
                .collect(),
            Shape::Full { facets, .. } => {
                let vs = &self.0.vertices;
                let mut out = Vec::new();
                for i in 0..vs.len() {
                    for j in i + 1..vs.len() {
                        let common: Vec<Vec<Int>> = facets
                            .iter()
                            .filter(|f| f.is_tight(&vs[i]) && f.is_tight(&vs[j]))
                            .map(|f| f.normal.clone())
                            .collect();
                        let r = if common.is_empty() {
                            0
                        } else {
                            rank(&IntMatrix::from_rows(&common, self.0.dim).expect("rectangular"))
                        };
                        if r + 1 == self.0.dim {
                            out.push(Edge::between(&vs[i], &vs[j]));
                        }
                    }
                }
                out
            }
        }
    }

    /// Image under a unimodular affine map of the ambient lattice.
    pub fn apply(&self, map: &AffineMap) -> Result<LatticePolytope> {
        if map.dim() != self.0.ambient_dim {
            return Err(Error::Dimension(format!(
                "map on Z^{} applied to a polytope in Z^{}",
                map.dim(),
                self.0.ambient_dim
            )));
        }
        let image = self.0.generators.iter().map(|g| map.apply(g)).collect();
        LatticePolytope::new(self.0.ambient_dim, image)
    }

    /// Image under a surjective lattice homomorphism `Z^n -> Z^m`, given as
    /// an `m x n` matrix.
    pub fn project(&self, surjection: &IntMatrix) -> Result<LatticePolytope> {
        if surjection.cols() != self.0.ambient_dim {
            return Err(Error::Dimension(format!(
                "projection with {} columns applied in Z^{}",
                surjection.cols(),
                self.0.ambient_dim
            )));
        }
        if !is_lattice_surjection(surjection) {
            return Err(Error::Domain("projection is not a lattice surjection".into()));
        }
        let image = self
            .0
            .generators
            .iter()
            .map(|g| LatticePoint::new(surjection.mul_vec(g.coords()).expect("checked shape")))
            .collect();
        LatticePolytope::new(surjection.rows(), image)
    }

    /// Dimension of the smallest face containing `x`, or `None` when `x` is
    /// not in the polytope.
    pub fn minimal_face_dimension(&self, x: &LatticePoint) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        match &self.0.shape {
            Shape::Embedded { chart, local } => local.minimal_face_dimension(&chart.to_local(x)),
            Shape::Full { facets, .. } => {
                let tight: Vec<&Facet> = facets.iter().filter(|f| f.is_tight(x)).collect();
                let on_face: Vec<&LatticePoint> = self
                    .0
                    .vertices
                    .iter()
                    .filter(|v| tight.iter().all(|f| f.is_tight(v)))
                    .collect();
                Some(affine_rank(&on_face))
            }
        }
    }

    /// Whether all of `points` lie on one proper face.
    pub fn share_proper_face(&self, points: &[LatticePoint]) -> bool {
        match &self.0.shape {
            Shape::Embedded { chart, local } => {
                let local_points: Vec<LatticePoint> =
                    points.iter().map(|p| chart.to_local(p)).collect();
                local.share_proper_face(&local_points)
            }
            Shape::Full { facets, .. } => {
                if self.0.dim == 0 {
                    return false;
                }
                facets
                    .iter()
                    .any(|f| points.iter().all(|p| f.is_tight(p)))
            }
        }
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.0.ambient_dim == other.0.ambient_dim && self.0.vertices == other.0.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticePolytope(Z^{}; ", self.0.ambient_dim)?;
        f.debug_list().entries(self.0.vertices.iter()).finish()?;
        write!(f, ")")
    }
}

/// Dimension of the affine span of a non-empty point set.
pub fn affine_rank(points: &[&LatticePoint]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let rows: Vec<Vec<Int>> = points.iter().map(|p| p.sub(base).into_coords()).collect();
    rank(&IntMatrix::from_rows(&rows, base.dim()).expect("rectangular"))
}

/// Full row rank and the image is all of `Z^m`.
pub fn is_lattice_surjection(m: &IntMatrix) -> bool {
    let r = m.rows();
    if r > m.cols() {
        return false;
    }
    let (h, _) = hnf(&m.transpose());
    (0..r).all(|i| (0..r).all(|j| h[(i, j)] == if i == j { Int::one() } else { Int::zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(points: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64_points(points).unwrap()
    }

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(c)
    }

    #[test]
    fn dimensions() {
        assert_eq!(poly(&[&[3, 4]]).dimension(), 0);
        assert_eq!(poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).dimension(), 2);
        // Cayley polytope of [0,3] and [0,2]
        assert_eq!(poly(&[&[0, 0], &[3, 0], &[0, 1], &[2, 1]]).dimension(), 2);
    }

    #[test]
    fn vertices_drop_interior_generators() {
        let seg = poly(&[&[0], &[1], &[2]]);
        assert_eq!(seg.vertices(), &[pt(&[0]), pt(&[2])]);
        let prism = poly(&[&[0, 0], &[0, 1], &[0, 2], &[0, 3], &[1, 0], &[1, 1], &[1, 2]]);
        assert_eq!(
            prism.vertices(),
            &[pt(&[0, 0]), pt(&[0, 3]), pt(&[1, 0]), pt(&[1, 2])]
        );
    }

    #[test]
    fn facets_of_small_polygons() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(sq.facets().unwrap().len(), 4);
        let tri = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        let f = tri.facets().unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.contains(&Facet {
            normal: crate::exactmath::ints(&[-1, -1]),
            offset: Int::from(-2)
        }));
        let simplex = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(simplex.facets().unwrap().len(), 4);
        assert!(poly(&[&[0, 0], &[1, 1]]).facets().is_err());
    }

    #[test]
    fn counting_small_cases() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(sq.count_lattice_points(1).unwrap(), 4);
        assert_eq!(sq.count_lattice_points(2).unwrap(), 9);
        assert_eq!(sq.count_interior_lattice_points(2).unwrap(), 1);
        assert_eq!(sq.lattice_points(0).unwrap(), vec![pt(&[0, 0])]);
        assert_eq!(sq.count_interior_lattice_points(0).unwrap(), 0);
        let tri = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(tri.count_lattice_points(1).unwrap(), 6);
        assert_eq!(tri.count_interior_lattice_points(1).unwrap(), 0);
        assert_eq!(
            tri.interior_lattice_points(2).unwrap(),
            vec![pt(&[1, 1]), pt(&[1, 2]), pt(&[2, 1])]
        );
    }

    #[test]
    fn affine_hull_restriction() {
        let seg = poly(&[&[0, 0], &[2, 2]]);
        let (local, chart) = seg.restrict_to_affine_hull().unwrap();
        assert_eq!(local.ambient_dim(), 1);
        assert_eq!(local.count_lattice_points(1).unwrap(), 3);
        assert_eq!(seg.count_lattice_points(1).unwrap(), 3);
        assert_eq!(
            seg.lattice_points(1).unwrap(),
            vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]
        );
        for v in seg.vertices() {
            assert_eq!(&chart.to_ambient(&chart.to_local(v)), v);
        }
        let tri = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, -1, 0]]);
        assert_eq!(tri.dimension(), 2);
        let (local, _) = tri.restrict_to_affine_hull().unwrap();
        assert_eq!(local.count_lattice_points(1).unwrap(), 4);
        assert_eq!(tri.count_lattice_points(1).unwrap(), 4);
        assert!(poly(&[&[0, 0], &[1, 0], &[0, 1]]).restrict_to_affine_hull().is_err());
    }

    #[test]
    fn dilates_of_embedded_segment() {
        let seg = poly(&[&[1, 2, 3], &[3, 3, 3]]);
        assert_eq!(seg.count_lattice_points(3).unwrap(), 4);
        assert_eq!(seg.count_interior_lattice_points(3).unwrap(), 2);
        let pts = seg.lattice_points(2).unwrap();
        assert_eq!(pts, vec![pt(&[2, 4, 6]), pt(&[4, 5, 6]), pt(&[6, 6, 6])]);
    }

    #[test]
    fn point_polytope_counts() {
        let p = poly(&[&[4, -1]]);
        assert_eq!(p.count_lattice_points(0).unwrap(), 1);
        assert_eq!(p.count_lattice_points(5).unwrap(), 1);
        assert_eq!(p.count_interior_lattice_points(0).unwrap(), 0);
        assert_eq!(p.count_interior_lattice_points(2).unwrap(), 1);
        assert_eq!(p.lattice_points(3).unwrap(), vec![pt(&[12, -3])]);
    }

    #[test]
    fn edges_and_long_edges() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let e = sq.edges();
        assert_eq!(e.len(), 4);
        assert!(e.iter().all(|e| !e.is_long()));
        let tri = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        let e = tri.edges();
        assert_eq!(e.len(), 3);
        assert!(e.iter().all(Edge::is_long));
        let prism = poly(&[&[0, 0], &[0, 3], &[1, 0], &[1, 2]]);
        let long = prism
            .edges()
            .into_iter()
            .find(|e| e.endpoints == (pt(&[0, 0]), pt(&[0, 3])))
            .unwrap();
        assert_eq!(long.lattice_points.len(), 4);
    }

    #[test]
    fn apply_preserves_counts() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(sq.apply(&AffineMap::identity(2)).unwrap(), sq);
        let shear = AffineMap::new(
            IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]),
            crate::exactmath::ints(&[5, 7]),
        )
        .unwrap();
        let img = sq.apply(&shear).unwrap();
        for k in 0..4 {
            assert_eq!(
                img.count_lattice_points(k).unwrap(),
                sq.count_lattice_points(k).unwrap()
            );
        }
    }

    #[test]
    fn projections() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let first = IntMatrix::from_i64_rows(&[&[1, 0]]);
        assert_eq!(sq.project(&first).unwrap(), poly(&[&[0], &[1]]));
        let prism = poly(&[&[0, 0], &[0, 3], &[1, 0], &[1, 2]]);
        assert_eq!(prism.project(&first).unwrap().vertices(), &[pt(&[0]), pt(&[1])]);
        assert!(sq.project(&IntMatrix::from_i64_rows(&[&[2, 0]])).is_err());
    }

    #[test]
    fn faces_of_points() {
        let tri = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(tri.minimal_face_dimension(&pt(&[0, 0])), Some(0));
        assert_eq!(tri.minimal_face_dimension(&pt(&[1, 0])), Some(1));
        assert_eq!(tri.minimal_face_dimension(&pt(&[3, 3])), None);
        assert!(tri.share_proper_face(&[pt(&[1, 1]), pt(&[2, 0])]));
        assert!(!tri.share_proper_face(&[pt(&[1, 0]), pt(&[0, 1])]));
    }
}
