//! Lattice triangulations of the point configuration `A = P ∩ M`.
//!
//! A triangulation is a set of full-dimensional simplices with vertices in
//! `A` that meet face to face and cover `P`; not every point of `A` needs to
//! be used. Simplices are index sets into the lexicographically sorted list
//! of lattice points.

mod circuit;
mod secondary;
mod words;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::ehrhart::normalized_volume;
use crate::error::{Error, Result};
use crate::exactmath::{
    det, fm_feasible, rational_kernel, solve_rational, Int, IntMatrix, LinearConstraint, Rat,
};
use crate::polytope::hull::Combinations;
use crate::polytope::{Facet, LatticePoint, LatticePolytope};

pub use circuit::{all_circuits, circuit, flip, flip_graph, Circuit, FlipGraph};
pub use secondary::{gkz, secondary_polytope, SecondaryPolytope, SecondaryReport};
pub use words::{all_words, count_formula, prism_word_triangulation, Letter};

/// Default cap on `|A|` for exhaustive enumeration.
pub const DEFAULT_MAX_POINTS: usize = 9;

/// The lattice points of a polytope in lexicographic order.
#[derive(Debug, Clone)]
pub struct PointConfig {
    polytope: LatticePolytope,
    points: Vec<LatticePoint>,
    /// The same points in coordinates of the affine hull.
    local: Vec<LatticePoint>,
    local_facets: Vec<Facet>,
    volume: Int,
}

impl PointConfig {
    pub fn new(polytope: &LatticePolytope) -> Result<Self> {
        let points = polytope.lattice_points(1)?;
        let (model, chart) = polytope.local_model();
        let local: Vec<LatticePoint> = points.iter().map(|p| chart.to_local(p)).collect();
        let local_facets = model.facets()?.to_vec();
        let volume = normalized_volume(polytope)?;
        Ok(Self {
            polytope: polytope.clone(),
            points,
            local,
            local_facets,
            volume,
        })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.polytope.dimension()
    }

    /// Normalized volume of the polytope.
    pub fn volume(&self) -> &Int {
        &self.volume
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Normalized volume of the simplex on `idx` (zero when degenerate).
    pub fn simplex_volume(&self, idx: &[usize]) -> Int {
        let d = self.dim();
        if idx.len() != d + 1 {
            return Int::zero();
        }
        let base = &self.local[idx[0]];
        let rows: Vec<Vec<Int>> = idx[1..]
            .iter()
            .map(|&i| self.local[i].sub(base).into_coords())
            .collect();
        if d == 0 {
            return Int::one();
        }
        det(&IntMatrix::from_rows(&rows, d).expect("square")).expect("square").abs()
    }

    /// Whether the points `idx` all lie on one facet of the polytope.
    fn on_boundary(&self, idx: &[usize]) -> bool {
        self.local_facets
            .iter()
            .any(|f| idx.iter().all(|&i| f.is_tight(&self.local[i])))
    }

    /// Affine forms `x -> c · x + b` giving the barycentric coordinates of
    /// a full-dimensional simplex, one per vertex.
    fn barycentric(&self, idx: &[usize]) -> Vec<(Vec<Rat>, Rat)> {
        let d = self.dim();
        let base = &self.local[idx[0]];
        let cols: Vec<Vec<Int>> = idx[1..]
            .iter()
            .map(|&i| self.local[i].sub(base).into_coords())
            .collect();
        // rows of cols-matrix are the edge vectors; solve (edges) r = e_i
        let edges = IntMatrix::from_rows(&cols, d).expect("rectangular");
        let base_r: Vec<Rat> = base.coords().iter().map(|x| Rat::from(x.clone())).collect();
        let mut forms = Vec::with_capacity(d + 1);
        let mut sum_c = vec![Rat::zero(); d];
        let mut sum_b = Rat::zero();
        for i in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[i] = Rat::one();
            let r = solve_rational(&edges, &e).expect("simplex is full-dimensional");
            let b = -r.iter().zip(&base_r).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
            for (s, x) in sum_c.iter_mut().zip(&r) {
                *s += x;
            }
            sum_b += &b;
            forms.push((r, b));
        }
        let c0 = sum_c.into_iter().map(|x| -x).collect();
        forms.insert(0, (c0, Rat::one() - sum_b));
        forms
    }
}

/// A set of simplices, each a sorted list of point indices; kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    simplices: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn new(simplices: Vec<Vec<usize>>) -> Self {
        let mut simplices: Vec<Vec<usize>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        simplices.sort();
        simplices.dedup();
        Self { simplices }
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// Whether two full-dimensional simplices meet in a common face. Decided by
/// checking that no point of their intersection has positive barycentric
/// weight on a vertex outside the other simplex.
struct Compatibility<'a> {
    cfg: &'a PointConfig,
    forms: HashMap<Vec<usize>, Vec<(Vec<Rat>, Rat)>>,
}

impl<'a> Compatibility<'a> {
    fn new(cfg: &'a PointConfig) -> Self {
        Self {
            cfg,
            forms: HashMap::new(),
        }
    }

    fn forms(&mut self, s: &[usize]) -> Vec<(Vec<Rat>, Rat)> {
        if let Some(f) = self.forms.get(s) {
            return f.clone();
        }
        let f = self.cfg.barycentric(s);
        self.forms.insert(s.to_vec(), f.clone());
        f
    }

    fn compatible(&mut self, s: &[usize], t: &[usize]) -> Result<bool> {
        if self.cfg.dim() == 0 {
            return Ok(s == t);
        }
        let fs = self.forms(s);
        let ft = self.forms(t);
        let closed: Vec<LinearConstraint> = fs
            .iter()
            .chain(&ft)
            .map(|(c, b)| LinearConstraint::ge(c.clone(), -b.clone()))
            .collect();
        for (simplex, forms, other) in [(s, &fs, t), (t, &ft, s)] {
            for (pos, v) in simplex.iter().enumerate() {
                if other.contains(v) {
                    continue;
                }
                let mut cs = closed.clone();
                let (c, b) = &forms[pos];
                cs.push(LinearConstraint::gt(c.clone(), -b.clone()));
                if fm_feasible(&cs)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Checks that every simplex is full-dimensional, simplices pairwise meet
/// in common faces and their volumes add up to the volume of the polytope.
pub fn is_valid_triangulation(cfg: &PointConfig, t: &Triangulation) -> Result<bool> {
    let d = cfg.dim();
    let mut total = Int::zero();
    for s in t.simplices() {
        if s.len() != d + 1 || s.iter().any(|&i| i >= cfg.len()) || s.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
        let v = cfg.simplex_volume(s);
        if v.is_zero() {
            return Ok(false);
        }
        total += v;
    }
    if &total != cfg.volume() {
        return Ok(false);
    }
    let mut compat = Compatibility::new(cfg);
    let s = t.simplices();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if !compat.compatible(&s[i], &s[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every triangulation of the configuration, each exactly once, in sorted
/// order. Fails when `|A|` exceeds [`DEFAULT_MAX_POINTS`].
pub fn enumerate_all(cfg: &PointConfig) -> Result<Vec<Triangulation>> {
    enumerate_all_capped(cfg, DEFAULT_MAX_POINTS)
}

pub fn enumerate_all_capped(cfg: &PointConfig, max_points: usize) -> Result<Vec<Triangulation>> {
    if cfg.len() > max_points {
        return Err(Error::CapExceeded(format!(
            "triangulation enumeration over {} points (max {max_points})",
            cfg.len()
        )));
    }
    let d = cfg.dim();
    if d == 0 {
        return Ok(vec![Triangulation::new(vec![vec![0]])]);
    }
    let mut e = Enumerator::new(cfg)?;
    let seeds = e.seeds()?;
    let mut out = Vec::new();
    for s in seeds {
        let mut state = State::default();
        state.push(&e, s);
        e.extend(&mut state, &mut out)?;
    }
    out.sort();
    for t in &out {
        let vol: Int = t.simplices().iter().map(|s| cfg.simplex_volume(s)).sum();
        if &vol != cfg.volume() {
            return Err(Error::Internal(format!(
                "enumerated triangulation of volume {vol}, polytope has volume {}",
                cfg.volume()
            )));
        }
    }
    Ok(out)
}

struct Enumerator<'a> {
    cfg: &'a PointConfig,
    simplices: Vec<Vec<usize>>,
    /// For each simplex, its facets (sorted index sets).
    facets_of: Vec<Vec<Vec<usize>>>,
    /// Simplices containing a given facet.
    containing: HashMap<Vec<usize>, Vec<usize>>,
    boundary: HashMap<Vec<usize>, bool>,
    normals: HashMap<Vec<usize>, Vec<Int>>,
    compat: Compatibility<'a>,
    compat_cache: HashMap<(usize, usize), bool>,
}

#[derive(Default)]
struct State {
    chosen: Vec<usize>,
    facets: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl State {
    fn push(&mut self, e: &Enumerator<'_>, s: usize) {
        self.chosen.push(s);
        for f in &e.facets_of[s] {
            self.facets.entry(f.clone()).or_default().push(s);
        }
    }

    fn pop(&mut self, e: &Enumerator<'_>) {
        let s = self.chosen.pop().expect("non-empty");
        for f in &e.facets_of[s] {
            let v = self.facets.get_mut(f).expect("present");
            v.retain(|&x| x != s);
            if v.is_empty() {
                self.facets.remove(f);
            }
        }
    }
}

impl<'a> Enumerator<'a> {
    fn new(cfg: &'a PointConfig) -> Result<Self> {
        let d = cfg.dim();
        let simplices: Vec<Vec<usize>> = Combinations::new(cfg.len(), d + 1)
            .filter(|s| !cfg.simplex_volume(s).is_zero())
            .collect();
        let mut facets_of = Vec::with_capacity(simplices.len());
        let mut containing: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (k, s) in simplices.iter().enumerate() {
            let fs: Vec<Vec<usize>> = (0..s.len())
                .map(|skip| {
                    s.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            for f in &fs {
                containing.entry(f.clone()).or_default().push(k);
            }
            facets_of.push(fs);
        }
        let boundary = containing
            .keys()
            .map(|f| (f.clone(), cfg.on_boundary(f)))
            .collect();
        Ok(Self {
            cfg,
            simplices,
            facets_of,
            containing,
            boundary,
            normals: HashMap::new(),
            compat: Compatibility::new(cfg),
            compat_cache: HashMap::new(),
        })
    }

    fn normal(&mut self, f: &[usize]) -> Vec<Int> {
        if let Some(n) = self.normals.get(f) {
            return n.clone();
        }
        let d = self.cfg.dim();
        let base = &self.cfg.local[f[0]];
        let rows: Vec<Vec<Int>> = f[1..]
            .iter()
            .map(|&i| self.cfg.local[i].sub(base).into_coords())
            .collect();
        let n = rational_kernel(&IntMatrix::from_rows(&rows, d).expect("rectangular"))
            .into_iter()
            .next()
            .expect("facet spans a hyperplane");
        self.normals.insert(f.to_vec(), n.clone());
        n
    }

    /// Sign of the side of the hyperplane through facet `f` that point `p` is on.
    fn side(&mut self, f: &[usize], p: usize) -> std::cmp::Ordering {
        let n = self.normal(f);
        self.cfg.local[p]
            .sub(&self.cfg.local[f[0]])
            .dot(&n)
            .cmp(&Int::zero())
    }

    fn compatible(&mut self, a: usize, b: usize) -> Result<bool> {
        let key = (a.min(b), a.max(b));
        if let Some(&c) = self.compat_cache.get(&key) {
            return Ok(c);
        }
        let (s, t) = (self.simplices[a].clone(), self.simplices[b].clone());
        let c = self.compat.compatible(&s, &t)?;
        self.compat_cache.insert(key, c);
        Ok(c)
    }

    /// Simplices whose interior contains a fixed generic point; every
    /// triangulation has exactly one of them.
    fn seeds(&mut self) -> Result<Vec<usize>> {
        let x = self.generic_point()?;
        let mut out = Vec::new();
        for k in 0..self.simplices.len() {
            let forms = self.compat.forms(&self.simplices[k].clone());
            let inside = forms.iter().all(|(c, b)| {
                let v = c.iter().zip(&x).fold(b.clone(), |acc, (ci, xi)| acc + ci * xi);
                v.is_positive()
            });
            if inside {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// An interior point of the polytope lying on no hyperplane spanned by
    /// points of `A`.
    fn generic_point(&mut self) -> Result<Vec<Rat>> {
        let d = self.cfg.dim();
        let vs = self.cfg.polytope.vertices();
        let (_, chart) = self.cfg.polytope.local_model();
        let mut center = vec![Rat::zero(); d];
        for v in vs {
            for (c, x) in center.iter_mut().zip(chart.to_local(v).coords()) {
                *c += Rat::from(x.clone());
            }
        }
        let count = Rat::from(Int::from(vs.len()));
        center.iter_mut().for_each(|c| *c /= &count);
        let hyperplanes: Vec<Vec<usize>> = Combinations::new(self.cfg.len(), d)
            .filter(|f| {
                let base = &self.cfg.local[f[0]];
                let rows: Vec<Vec<Int>> = f[1..]
                    .iter()
                    .map(|&i| self.cfg.local[i].sub(base).into_coords())
                    .collect();
                rational_kernel(&IntMatrix::from_rows(&rows, d).expect("rectangular")).len() == 1
            })
            .collect();
        for t in 1..200i64 {
            let x: Vec<Rat> = center
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    c + Rat::new(Int::one(), Int::from(97 * t * (i as i64 + 2) * (i as i64 + 3)))
                })
                .collect();
            let interior = self.cfg.local_facets.iter().all(|f| {
                let v = f
                    .normal
                    .iter()
                    .zip(&x)
                    .fold(-Rat::from(f.offset.clone()), |acc, (a, xi)| acc + Rat::from(a.clone()) * xi);
                v.is_positive()
            });
            if !interior {
                continue;
            }
            let generic = hyperplanes.iter().all(|f| {
                let n = self.normal(f);
                let base = &self.cfg.local[f[0]];
                let v = n.iter().zip(x.iter().zip(base.coords())).fold(
                    Rat::zero(),
                    |acc, (a, (xi, bi))| acc + Rat::from(a.clone()) * (xi - Rat::from(bi.clone())),
                );
                !v.is_zero()
            });
            if generic {
                return Ok(x);
            }
        }
        Err(Error::Internal("no generic interior point found".into()))
    }

    fn extend(&mut self, state: &mut State, out: &mut Vec<Triangulation>) -> Result<()> {
        let open = state
            .facets
            .iter()
            .find(|(f, owners)| owners.len() == 1 && !self.boundary[*f])
            .map(|(f, owners)| (f.clone(), owners[0]));
        let Some((facet, owner)) = open else {
            out.push(Triangulation::new(
                state.chosen.iter().map(|&k| self.simplices[k].clone()).collect(),
            ));
            return Ok(());
        };
        let apex = apex_of(&self.simplices[owner], &facet);
        let owner_side = self.side(&facet, apex);
        let candidates = self.containing[&facet].clone();
        'next: for k in candidates {
            if k == owner {
                continue;
            }
            let other = apex_of(&self.simplices[k], &facet);
            if self.side(&facet, other) == owner_side {
                continue;
            }
            for f in &self.facets_of[k] {
                if state.facets.get(f).is_some_and(|o| o.len() >= 2) {
                    continue 'next;
                }
            }
            for i in 0..state.chosen.len() {
                let c = state.chosen[i];
                if !self.compatible(c, k)? {
                    continue 'next;
                }
            }
            state.push(self, k);
            self.extend(state, out)?;
            state.pop(self);
        }
        Ok(())
    }
}

fn apex_of(simplex: &[usize], facet: &[usize]) -> usize {
    *simplex
        .iter()
        .find(|x| !facet.contains(x))
        .expect("facet is a proper subset")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{exceptional_simplex, lawrence_prism, Heights};

    fn cfg(points: &[&[i64]]) -> PointConfig {
        PointConfig::new(&LatticePolytope::from_i64_points(points).unwrap()).unwrap()
    }

    fn square() -> PointConfig {
        cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn square_triangulations() {
        let c = square();
        // points: (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3
        let all = enumerate_all(&c).unwrap();
        assert_eq!(all.len(), 2);
        let a = Triangulation::new(vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let b = Triangulation::new(vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(all.contains(&a) && all.contains(&b));
        assert!(is_valid_triangulation(&c, &a).unwrap());
        assert!(is_valid_triangulation(&c, &b).unwrap());
        let twice = Triangulation::new(vec![vec![0, 1, 3], vec![0, 1, 2]]);
        assert!(!is_valid_triangulation(&c, &twice).unwrap());
    }

    #[test]
    fn segment_triangulations() {
        let c = cfg(&[&[0], &[3]]);
        assert_eq!(enumerate_all(&c).unwrap().len(), 4);
    }

    #[test]
    fn exceptional_triangle_has_fourteen() {
        let c = PointConfig::new(&exceptional_simplex(2).unwrap()).unwrap();
        let all = enumerate_all(&c).unwrap();
        assert_eq!(all.len(), 14);
        let unimodular: Vec<&Triangulation> = all
            .iter()
            .filter(|t| t.simplices().iter().all(|s| c.simplex_volume(s).is_one()))
            .collect();
        // the middle triangle, or one of three quadrilaterals split the other way
        assert_eq!(unimodular.len(), 4);
        for t in unimodular {
            assert_eq!(t.len(), 4);
            assert!(is_valid_triangulation(&c, t).unwrap());
        }
    }

    #[test]
    fn prism_counts() {
        let h = Heights::new(vec![2, 1]).unwrap();
        let c = PointConfig::new(&lawrence_prism(&h)).unwrap();
        assert_eq!(enumerate_all(&c).unwrap().len(), 5);
    }

    #[test]
    fn caps_enforced() {
        let c = cfg(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(c.len(), 10);
        assert!(matches!(enumerate_all(&c), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn embedded_configuration() {
        let c = cfg(&[&[0, 0, 5], &[2, 0, 5], &[0, 2, 5]]);
        assert_eq!(enumerate_all(&c).unwrap().len(), 14);
    }
}
