//! Recognition of lattice polytopes of degree at most one.
//!
//! Such a polytope is unimodularly equivalent to a basic simplex, an
//! exceptional simplex or a Lawrence prism. [`classify`] decides which and
//! returns an affine unimodular map carrying the input onto the canonical
//! representative built by [`crate::construct`].

use num_traits::{One, Zero};

use crate::construct::{basic_simplex, exceptional_simplex, lawrence_prism, Heights};
use crate::ehrhart::hstar;
use crate::error::{Error, Result};
use crate::exactmath::{det, hnf, inverse_unimodular, Int, IntMatrix};
use crate::polytope::{AffineChart, AffineMap, Edge, LatticePoint, LatticePolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    BasicSimplex,
    LawrencePrism,
    Exceptional,
    NotDegreeLeOne,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::BasicSimplex => "BasicSimplex",
            Tag::LawrencePrism => "LawrencePrism",
            Tag::Exceptional => "Exceptional",
            Tag::NotDegreeLeOne => "NotDegreeLeOne",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: Tag,
    /// Heights in descending order, for Lawrence prisms.
    pub heights: Option<Heights>,
    /// Dimension, for exceptional simplices.
    pub n: Option<usize>,
    /// Map of the ambient lattice sending the input onto [`Self::canonical`].
    pub witness: Option<AffineMap>,
    /// Dimension of the input polytope.
    pub dim: usize,
}

impl Classification {
    /// Canonical polytope of the class, embedded in `Z^ambient_dim` as
    /// `Q x 0`. `None` for [`Tag::NotDegreeLeOne`].
    pub fn canonical(&self, ambient_dim: usize) -> Option<LatticePolytope> {
        let q = match self.tag {
            Tag::BasicSimplex => basic_simplex(self.dim),
            Tag::LawrencePrism => lawrence_prism(self.heights.as_ref()?),
            Tag::Exceptional => exceptional_simplex(self.dim).ok()?,
            Tag::NotDegreeLeOne => return None,
        };
        let extra = ambient_dim.checked_sub(self.dim)?;
        LatticePolytope::new(
            ambient_dim,
            q.vertices().iter().map(|v| v.padded(extra)).collect(),
        )
        .ok()
    }
}

/// Whether the only lattice points are the vertices. Defined for degree at
/// most one, where it is equivalent to having no lattice point strictly
/// between two lattice points, and to having none strictly between two
/// vertices; all three are evaluated and must agree.
pub fn is_narrow(p: &LatticePolytope) -> Result<bool> {
    let h = hstar(p)?;
    if h.degree() > 1 {
        return Err(Error::Domain(format!(
            "narrowness is defined for degree <= 1, got degree {}",
            h.degree()
        )));
    }
    let points = p.lattice_points(1)?;
    let only_vertices = points.len() == p.vertices().len();
    let no_gap = |set: &[LatticePoint]| {
        (0..set.len()).all(|i| (i + 1..set.len()).all(|j| set[j].sub(&set[i]).content().is_one()))
    };
    let between_points = no_gap(&points);
    let between_vertices = no_gap(p.vertices());
    if only_vertices != between_points || only_vertices != between_vertices {
        return Err(Error::Internal(format!(
            "narrowness characterisations disagree on {p:?}"
        )));
    }
    Ok(only_vertices)
}

/// Edges containing more than two lattice points.
pub fn long_edges(p: &LatticePolytope) -> Vec<Edge> {
    p.edges().into_iter().filter(Edge::is_long).collect()
}

pub fn classify(p: &LatticePolytope) -> Result<Classification> {
    let (q, chart) = p.local_model();
    let d = q.dimension();
    let h = hstar(&q)?;
    let not = Classification {
        tag: Tag::NotDegreeLeOne,
        heights: None,
        n: None,
        witness: None,
        dim: d,
    };
    if h.degree() > 1 {
        return Ok(not);
    }
    let (tag, heights, local) = if h.volume().is_one() {
        (Tag::BasicSimplex, None, basic_simplex_witness(&q)?)
    } else if let Some(w) = exceptional_witness(&q)? {
        (Tag::Exceptional, None, w)
    } else if let Some((heights, w)) = prism_witness(&q)? {
        (Tag::LawrencePrism, Some(heights), w)
    } else {
        return Err(Error::MainTheoremViolation(format!(
            "{p:?} has degree {} but is neither an exceptional simplex nor a Lawrence prism",
            h.degree()
        )));
    };
    let class = Classification {
        tag,
        n: (tag == Tag::Exceptional).then_some(d),
        heights,
        witness: Some(extend_through_chart(&local, &chart)),
        dim: d,
    };
    let canonical = class.canonical(p.ambient_dim()).expect("degree <= 1 class");
    let image = p.apply(class.witness.as_ref().expect("set above"))?;
    if image != canonical {
        return Err(Error::Internal(format!(
            "witness sends {p:?} to {image:?}, expected {canonical:?}"
        )));
    }
    Ok(class)
}

/// True iff the degree test and the classification agree and any witness
/// lands exactly on the canonical polytope.
pub fn verify_main_theorem(p: &LatticePolytope) -> Result<bool> {
    let low_degree = hstar(p)?.degree() <= 1;
    let class = match classify(p) {
        Ok(c) => c,
        Err(Error::MainTheoremViolation(_)) | Err(Error::Internal(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    if low_degree != (class.tag != Tag::NotDegreeLeOne) {
        return Ok(false);
    }
    match (&class.witness, class.canonical(p.ambient_dim())) {
        (Some(w), Some(c)) => Ok(p.apply(w)? == c),
        (None, None) => Ok(true),
        _ => Ok(false),
    }
}

/// `local` acts on `Z^d`; the result acts on the ambient lattice as
/// `(local x id) ∘ chart`.
fn extend_through_chart(local: &AffineMap, chart: &AffineChart) -> AffineMap {
    let n = chart.ambient_dim();
    let d = local.dim();
    let mut rows = IntMatrix::identity(n).to_rows();
    let mut t = vec![Int::zero(); n];
    for i in 0..d {
        rows[i][..d].clone_from_slice(local.linear().row(i));
        t[i] = local.translation()[i].clone();
    }
    let block = AffineMap::new(IntMatrix::from_rows(&rows, n).expect("square"), t)
        .expect("block map is unimodular");
    chart.map().then(&block)
}

/// Map `x -> F^{-1} (x - origin)` where the columns of `F` are `frame`.
fn frame_map(origin: &LatticePoint, frame: &[LatticePoint]) -> Result<Option<AffineMap>> {
    let d = origin.dim();
    let cols: Vec<Vec<Int>> = frame.iter().map(|f| f.coords().to_vec()).collect();
    let f = IntMatrix::from_rows(&cols, d)?.transpose();
    let Ok(inv) = inverse_unimodular(&f) else {
        return Ok(None);
    };
    let t: Vec<Int> = inv.mul_vec(origin.coords())?.into_iter().map(|x| -x).collect();
    Ok(Some(AffineMap::new(inv, t)?))
}

fn basic_simplex_witness(q: &LatticePolytope) -> Result<AffineMap> {
    let vs = q.vertices();
    let frame: Vec<LatticePoint> = vs[1..].iter().map(|v| v.sub(&vs[0])).collect();
    frame_map(&vs[0], &frame)?
        .ok_or_else(|| Error::Internal("volume one simplex without unimodular frame".into()))
}

fn exceptional_witness(q: &LatticePolytope) -> Result<Option<AffineMap>> {
    let d = q.dimension();
    if d < 2 || q.vertices().len() != d + 1 || q.count_lattice_points(1)? != d as u64 + 4 {
        return Ok(None);
    }
    let long = long_edges(q);
    if long.len() != 3 || long.iter().any(|e| e.lattice_points.len() != 3) {
        return Ok(None);
    }
    let mut corners: Vec<LatticePoint> = long
        .iter()
        .flat_map(|e| [e.endpoints.0.clone(), e.endpoints.1.clone()])
        .collect();
    corners.sort();
    corners.dedup();
    if corners.len() != 3 {
        return Ok(None);
    }
    let (a, b, c) = (&corners[0], &corners[1], &corners[2]);
    let half = |x: &LatticePoint| {
        LatticePoint::new(x.sub(a).coords().iter().map(|v| v / Int::from(2)).collect())
    };
    let mut frame = vec![half(b), half(c)];
    frame.extend(
        q.vertices()
            .iter()
            .filter(|v| !corners.contains(v))
            .map(|v| v.sub(a)),
    );
    let Some(map) = frame_map(a, &frame)? else {
        return Ok(None);
    };
    let target = exceptional_simplex(d)?;
    Ok((q.apply(&map)? == target).then_some(map))
}

struct Fiber {
    low: LatticePoint,
    high: LatticePoint,
    height: u64,
}

/// Tries each primitive difference of lattice points as the common
/// direction of the parallel segments of a Lawrence prism.
fn prism_witness(q: &LatticePolytope) -> Result<Option<(Heights, AffineMap)>> {
    let d = q.dimension();
    if d == 0 {
        return Ok(None);
    }
    let points = q.lattice_points(1)?;
    let mut dirs: Vec<LatticePoint> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            dirs.push(points[j].sub(&points[i]).primitive_direction());
        }
    }
    dirs.sort();
    dirs.dedup();
    for u in &dirs {
        if let Some(found) = prism_along(q, &points, u)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn prism_along(
    q: &LatticePolytope,
    points: &[LatticePoint],
    u: &LatticePoint,
) -> Result<Option<(Heights, AffineMap)>> {
    let d = q.dimension();
    let column = IntMatrix::from_rows(&[u.coords().to_vec()], d)?.transpose();
    let (_, w) = hnf(&column);
    // row 0 of w measures position along u, rows 1.. project along u
    let along = |x: &LatticePoint| x.dot(w.row(0));
    let project =
        |x: &LatticePoint| LatticePoint::new((1..d).map(|i| x.dot(w.row(i))).collect());
    let mut base: Vec<LatticePoint> = q.vertices().iter().map(project).collect();
    base.sort();
    base.dedup();
    if base.len() != d {
        return Ok(None);
    }
    let diffs: Vec<Vec<Int>> = base[1..].iter().map(|b| b.sub(&base[0]).into_coords()).collect();
    if d > 1 && !det(&IntMatrix::from_rows(&diffs, d - 1)?)?.magnitude().is_one() {
        return Ok(None);
    }
    let mut fibers = Vec::with_capacity(d);
    for b in &base {
        let mut fiber: Vec<&LatticePoint> = points.iter().filter(|x| &project(x) == b).collect();
        fiber.sort_by_key(|x| along(x));
        let (low, high) = (fiber[0].clone(), fiber[fiber.len() - 1].clone());
        let height = (along(&high) - along(&low))
            .try_into()
            .map_err(|_| Error::CapExceeded("fiber too long".into()))?;
        fibers.push(Fiber { low, high, height });
    }
    let is_endpoint = |v: &LatticePoint| fibers.iter().any(|f| &f.low == v || &f.high == v);
    if !q.vertices().iter().all(is_endpoint) {
        return Ok(None);
    }
    fibers.sort_by_key(|f| std::cmp::Reverse(f.height));
    let origin = fibers[0].low.clone();
    let mut frame: Vec<LatticePoint> = fibers[1..].iter().map(|f| f.low.sub(&origin)).collect();
    frame.push(u.clone());
    let Some(map) = frame_map(&origin, &frame)? else {
        return Ok(None);
    };
    let heights = Heights::new(fibers.iter().map(|f| f.height).collect())?;
    Ok(Some((heights, map)))
}
