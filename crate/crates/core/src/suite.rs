//! The acceptance battery: a seeded corpus of polytopes and eleven
//! numbered checks over it, each reporting pass or fail with a short detail.
//! Every comparison is exact.

use std::fmt;
use std::thread;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adet::{
    discriminant, parse_polynomial_over, principal_adet_prism, resultant, verify_worked_example,
    MultiPoly, UniPolySym,
};
use crate::classify::{classify, verify_main_theorem, Tag};
use crate::construct::{
    basic_simplex, cayley, dilate, exceptional_simplex, lawrence_prism, pyramid, scramble, Heights,
};
use crate::ehrhart::{check_reciprocity, degree_via_interior, hstar, HStarVector};
use crate::error::Result;
use crate::exactmath::Int;
use crate::polytope::{LatticePoint, LatticePolytope};
use crate::triang::{
    count_formula, enumerate_all, flip_graph, secondary_polytope, PointConfig,
};

/// Term cap when expanding the A-determinant product for the degree check.
const ADET_EXPANSION_CAP: usize = 400_000;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub polytope: LatticePolytope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 11] = [
    "h*-vectors of prisms and exceptional simplices",
    "degree from h* equals degree from interior points",
    "degree 0 iff volume 1 iff basic simplex",
    "degree <= 1 iff |P ∩ M| = Vol + dim",
    "classification roundtrip",
    "h* monotone under inclusion",
    "triangulation counts",
    "secondary polytopes",
    "flip graphs",
    "A-determinant",
    "reciprocity",
];

fn heights(h: &[u64]) -> Heights {
    Heights::new(h.to_vec()).expect("non-zero heights")
}

/// Vectors of `n` positive heights with sum at most `max_sum`, for
/// `1 <= n <= max_n`, in lexicographic order.
pub fn positive_heights(max_n: usize, max_sum: u64) -> Vec<Heights> {
    fn go(n: usize, rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Heights>) {
        if prefix.len() == n {
            out.push(Heights::new(prefix.clone()).expect("positive"));
            return;
        }
        let remaining = (n - prefix.len() - 1) as u64;
        for h in 1..=rest.saturating_sub(remaining) {
            prefix.push(h);
            go(n, rest - h, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        if n as u64 <= max_sum {
            go(n, max_sum, &mut Vec::new(), &mut out);
        }
    }
    out
}

fn random_heights(rng: &mut ChaCha8Rng, max_n: usize, max_sum: u64, min_sum: u64) -> Heights {
    loop {
        let n = rng.gen_range(1..=max_n);
        let h: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_sum)).collect();
        let s: u64 = h.iter().sum();
        if s <= max_sum && s >= min_sum {
            return heights(&h);
        }
    }
}

/// Convex hull of `count` random points of `[0, size]^dim`.
fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, count: usize, size: i64) -> LatticePolytope {
    let pts: Vec<LatticePoint> = (0..count)
        .map(|_| LatticePoint::from_i64(&(0..dim).map(|_| rng.gen_range(0..=size)).collect::<Vec<_>>()))
        .collect();
    LatticePolytope::new(dim, pts).expect("points share a dimension")
}

fn random_full_polytope(rng: &mut ChaCha8Rng, dim: usize, size: i64) -> LatticePolytope {
    loop {
        let count = rng.gen_range(dim + 1..=dim + 4);
        let p = random_polytope(rng, dim, count, size);
        if p.is_full_dimensional() {
            return p;
        }
    }
}

/// The seeded corpus: basic and exceptional simplices, prisms, pyramids,
/// Cayley polytopes, dilates, random hulls and scrambled copies.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut push = |name: String, polytope: LatticePolytope| out.push(CorpusEntry { name, polytope });
    for n in 1..=5 {
        push(format!("basic({n})"), basic_simplex(n));
    }
    for n in 2..=5 {
        push(format!("exceptional({n})"), exceptional_simplex(n)?);
    }
    for h in positive_heights(4, 6) {
        push(format!("prism({:?})", h.as_slice()), lawrence_prism(&h));
    }
    for h in [&[2, 0, 1][..], &[0, 3], &[1, 0, 0, 2]] {
        push(format!("prism({h:?})"), lawrence_prism(&heights(h)));
    }
    for r in 1..=2 {
        push(format!("pyramid(exceptional(2),{r})"), pyramid(&exceptional_simplex(2)?, r)?);
        for h in [&[2, 1][..], &[3], &[1, 1, 1]] {
            push(format!("pyramid(prism({h:?}),{r})"), pyramid(&lawrence_prism(&heights(h)), r)?);
        }
    }
    for n in 1..=3 {
        for k in 2..=3 {
            push(format!("dilate(basic({n}),{k})"), dilate(&basic_simplex(n), k)?);
        }
    }
    for h in [&[1, 1][..], &[2, 1], &[1, 1, 1]] {
        push(format!("dilate(prism({h:?}),2)"), dilate(&lawrence_prism(&heights(h)), 2)?);
    }
    push("dilate(exceptional(2),2)".into(), dilate(&exceptional_simplex(2)?, 2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..12 {
        let dim = rng.gen_range(1..=2);
        let a = random_full_polytope(&mut rng, dim, 3);
        let b = random_full_polytope(&mut rng, dim, 3);
        push(format!("cayley(random{i})"), cayley(&[a, b])?);
    }
    for i in 0..45 {
        let dim = [2, 2, 3, 3, 4][i % 5];
        let size = if dim == 4 { 2 } else { 3 };
        push(format!("random{i}(dim {dim})"), random_full_polytope(&mut rng, dim, size));
    }
    for i in 0..6 {
        let p = random_polytope(&mut rng, 4, 3 + i % 2, 3);
        push(format!("random{i}(dim {}, in Z^4)", p.dimension()), p);
    }
    let base: Vec<CorpusEntry> = out.clone();
    let mut out2 = out;
    for (i, e) in base.iter().enumerate().filter(|(i, _)| i % 2 == 0) {
        let (q, _) = scramble(&e.polytope, 1000 + i as u64);
        out2.push(CorpusEntry {
            name: format!("scramble({}, {})", e.name, 1000 + i),
            polytope: q,
        });
    }
    Ok(out2)
}

/// Per-polytope data shared by the corpus-wide criteria.
#[derive(Debug, Clone)]
struct CorpusFacts {
    name: String,
    dim: usize,
    hstar: HStarVector,
    degree_interior: usize,
    lattice_points: u64,
    tag: Tag,
    reciprocity: bool,
    main_theorem: bool,
}

fn corpus_facts(e: &CorpusEntry) -> Result<CorpusFacts> {
    let p = &e.polytope;
    Ok(CorpusFacts {
        name: e.name.clone(),
        dim: p.dimension(),
        hstar: hstar(p)?,
        degree_interior: degree_via_interior(p)?,
        lattice_points: p.count_lattice_points(1)?,
        tag: classify(p)?.tag,
        reciprocity: check_reciprocity(p)?,
        main_theorem: verify_main_theorem(p)?,
    })
}

/// Applies `f` to every item on a few worker threads, keeping order.
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<U>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn outcome(id: usize, failures: Vec<String>, checked: String) -> CriterionOutcome {
    let passed = failures.is_empty();
    let detail = if passed {
        checked
    } else {
        let shown: Vec<&String> = failures.iter().take(3).collect();
        format!("{checked}; {} failure(s), e.g. {shown:?}", failures.len())
    };
    CriterionOutcome {
        id,
        title: TITLES[id - 1],
        passed,
        detail,
    }
}

fn error_outcome(id: usize, e: crate::Error) -> CriterionOutcome {
    CriterionOutcome {
        id,
        title: TITLES[id - 1],
        passed: false,
        detail: format!("error: {e}"),
    }
}

fn trimmed(h: &HStarVector) -> Vec<Int> {
    h.trimmed().to_vec()
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn criterion_hstar() -> CriterionOutcome {
    let run = || -> Result<CriterionOutcome> {
        let mut failures = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let h = random_heights(&mut rng, 5, 12, 1);
            let got = trimmed(&hstar(&lawrence_prism(&h))?);
            let s = h.sum() as i64;
            let want = if s == 1 { ints(&[1]) } else { ints(&[1, s - 1]) };
            if got != want {
                failures.push(format!("prism{:?}: {got:?}", h.as_slice()));
            }
        }
        for n in 2..=5 {
            let got = hstar(&exceptional_simplex(n)?)?.coeffs;
            let mut want = ints(&[1, 3]);
            want.resize(n + 1, Int::zero());
            if got != want {
                failures.push(format!("exceptional({n}): {got:?}"));
            }
        }
        Ok(outcome(1, failures, "20 random prisms, exceptional n=2..5, exact".into()))
    };
    run().unwrap_or_else(|e| error_outcome(1, e))
}

fn corpus_criteria(all: &[CorpusFacts]) -> Vec<CriterionOutcome> {
    let n = all.len();
    let mut c2 = Vec::new();
    let mut c3 = Vec::new();
    let mut c4 = Vec::new();
    let mut c11 = Vec::new();
    for f in all {
        let deg = f.hstar.degree();
        let vol = f.hstar.volume();
        if deg != f.degree_interior {
            c2.push(format!("{}: {deg} vs {}", f.name, f.degree_interior));
        }
        let basic = f.tag == Tag::BasicSimplex;
        if (deg == 0) != vol.is_one() || (deg == 0) != basic {
            c3.push(format!("{}: deg {deg}, vol {vol}, {:?}", f.name, f.tag));
        }
        let identity = Int::from(f.lattice_points) == &vol + Int::from(f.dim);
        if (deg <= 1) != identity {
            c4.push(format!("{}: deg {deg}, |P∩M| {}, vol {vol}", f.name, f.lattice_points));
        }
        if !f.reciprocity {
            c11.push(f.name.clone());
        }
    }
    let size = format!("{n} corpus polytopes, exact");
    vec![
        outcome(2, c2, size.clone()),
        outcome(3, c3, size.clone()),
        outcome(4, c4, size.clone()),
        outcome(11, c11, size),
    ]
}

fn criterion_roundtrip(all: &[CorpusFacts], corpus: &[CorpusEntry]) -> CriterionOutcome {
    let run = || -> Result<CriterionOutcome> {
        let mut failures = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut cases: Vec<(LatticePolytope, Tag, Option<Heights>, String)> = Vec::new();
        for i in 0..50 {
            let h = random_heights(&mut rng, 5, 10, 2);
            let (q, _) = scramble(&lawrence_prism(&h), 500 + i);
            cases.push((q, Tag::LawrencePrism, Some(h.sorted_desc()), format!("prism{:?}", h.as_slice())));
        }
        for i in 0..10u64 {
            let n = 2 + (i as usize % 4);
            let (q, _) = scramble(&exceptional_simplex(n)?, 700 + i);
            cases.push((q, Tag::Exceptional, None, format!("exceptional({n})")));
        }
        let results = par_map(&cases, |(q, tag, h, name)| -> Result<Option<String>> {
            let c = classify(q)?;
            if c.tag != *tag || c.heights != *h {
                return Ok(Some(format!("{name}: got {:?} {:?}", c.tag, c.heights)));
            }
            let w = c.witness.as_ref().expect("degree <= 1 has a witness");
            let canonical = c.canonical(q.ambient_dim()).expect("degree <= 1");
            if q.apply(w)?.vertices() != canonical.vertices() {
                return Ok(Some(format!("{name}: witness misses canonical vertices")));
            }
            if !verify_main_theorem(q)? {
                return Ok(Some(format!("{name}: main theorem check failed")));
            }
            Ok(None)
        });
        for r in results {
            if let Some(f) = r? {
                failures.push(f);
            }
        }
        let high: Vec<usize> = (0..all.len()).filter(|&i| all[i].hstar.degree() >= 2).take(20).collect();
        if high.len() < 20 {
            failures.push(format!("only {} corpus polytopes of degree >= 2", high.len()));
        }
        for &i in &high {
            if all[i].tag != Tag::NotDegreeLeOne || !all[i].main_theorem {
                failures.push(format!("{}: {:?}", corpus[i].name, all[i].tag));
            }
        }
        for f in all {
            if !f.main_theorem {
                failures.push(format!("{}: main theorem check failed", f.name));
            }
        }
        Ok(outcome(
            5,
            failures,
            format!(
                "50 scrambled prisms, 10 scrambled exceptional, {} of degree >= 2, {} corpus checks",
                high.len(),
                all.len()
            ),
        ))
    };
    run().unwrap_or_else(|e| error_outcome(5, e))
}

pub fn criterion_monotonicity() -> CriterionOutcome {
    let run = || -> Result<CriterionOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut pairs = Vec::new();
        while pairs.len() < 100 {
            let dim = rng.gen_range(2..=4);
            let p = random_full_polytope(&mut rng, dim, if dim == 4 { 2 } else { 3 });
            let mut points = p.lattice_points(1)?;
            points.shuffle(&mut rng);
            let take = rng.gen_range(dim + 1..=points.len());
            let q = LatticePolytope::new(dim, points[..take].to_vec())?;
            if q.dimension() == dim {
                pairs.push((q, p));
            }
        }
        let results = par_map(&pairs, |(q, p)| -> Result<Option<String>> {
            let (hq, hp) = (hstar(q)?, hstar(p)?);
            Ok((!hq.dominated_by(&hp)).then(|| format!("{:?} vs {:?}", hq.coeffs, hp.coeffs)))
        });
        let mut failures = Vec::new();
        for r in results {
            failures.extend(r?);
        }
        Ok(outcome(6, failures, "100 random pairs in dims 2-4, exact".into()))
    };
    run().unwrap_or_else(|e| error_outcome(6, e))
}

/// A polytope whose triangulations are enumerated by criteria 7-9.
struct ScopeItem {
    name: String,
    polytope: LatticePolytope,
    expected: Int,
    /// `n` when the polytope is the prism with `n` unit heights.
    permutahedron: Option<usize>,
}

fn triangulation_scope() -> Result<Vec<ScopeItem>> {
    let mut out = Vec::new();
    for h in 1..=6u64 {
        out.push(ScopeItem {
            name: format!("segment [0,{h}]"),
            polytope: lawrence_prism(&heights(&[h])),
            expected: Int::from(1u64 << (h - 1)),
            permutahedron: (h == 1).then_some(1),
        });
    }
    for n in 2..=3 {
        out.push(ScopeItem {
            name: format!("exceptional({n})"),
            polytope: exceptional_simplex(n)?,
            expected: Int::from(14),
            permutahedron: None,
        });
    }
    let mut prisms = positive_heights(3, 6);
    prisms.retain(|h| h.len() > 1);
    prisms.push(heights(&[1, 1, 1, 1]));
    for h in prisms {
        let unit = h.as_slice().iter().all(|&x| x == 1);
        let expected = match h.as_slice() {
            [1, 1, 1] => Int::from(6),
            [2, 1] => Int::from(5),
            [1, 1, 2] => Int::from(18),
            [1, 1, 1, 1] => Int::from(24),
            _ => count_formula(&h),
        };
        out.push(ScopeItem {
            name: format!("prism{:?}", h.as_slice()),
            polytope: lawrence_prism(&h),
            expected,
            permutahedron: unit.then_some(h.len()),
        });
    }
    Ok(out)
}

struct TriangulationFacts {
    name: String,
    expected: Int,
    count: usize,
    points: usize,
    dim: usize,
    report: crate::triang::SecondaryReport,
    flip_connected: bool,
    flip_matches_hull: bool,
    permutahedron_n: Option<usize>,
}

fn triangulation_facts(item: &ScopeItem) -> Result<TriangulationFacts> {
    let cfg = PointConfig::new(&item.polytope)?;
    let all = enumerate_all(&cfg)?;
    let sec = secondary_polytope(&cfg, &all)?;
    let flips = flip_graph(&cfg, &all)?;
    Ok(TriangulationFacts {
        name: item.name.clone(),
        expected: item.expected.clone(),
        count: all.len(),
        points: cfg.len(),
        dim: cfg.dim(),
        report: sec.report,
        flip_connected: flips.is_connected(),
        flip_matches_hull: flips.edges == sec.edges,
        permutahedron_n: item.permutahedron,
    })
}

fn triangulation_criteria() -> Vec<CriterionOutcome> {
    let scope = match triangulation_scope() {
        Ok(s) => s,
        Err(e) => return vec![error_outcome(7, e.clone()), error_outcome(8, e.clone()), error_outcome(9, e)],
    };
    let facts: Vec<Result<TriangulationFacts>> =
        par_map(&scope, triangulation_facts);
    let mut c7 = Vec::new();
    let mut c8 = Vec::new();
    let mut c9 = Vec::new();
    for f in facts {
        let f = match f {
            Ok(f) => f,
            Err(e) => {
                let msg = format!("error: {e}");
                c7.push(msg.clone());
                c8.push(msg.clone());
                c9.push(msg);
                continue;
            }
        };
        if Int::from(f.count) != f.expected {
            c7.push(format!("{}: {} triangulations, expected {}", f.name, f.count, f.expected));
        }
        let r = &f.report;
        if r.dimension + f.dim + 1 != f.points || !r.all_coherent || !r.is_simple || r.vertex_count != f.count {
            c8.push(format!("{}: {r:?}", f.name));
        }
        if f.name == "exceptional(2)" && (r.vertex_count, r.edge_count, r.facet_count) != (14, 21, 9) {
            c8.push(format!("exceptional(2) f-vector: {r:?}"));
        }
        if let Some(n) = f.permutahedron_n {
            let fact: usize = (1..=n).product();
            if r.vertex_count != fact {
                c8.push(format!("{}: {} vertices, expected {fact}", f.name, r.vertex_count));
            }
        }
        if !f.flip_connected || !f.flip_matches_hull {
            c9.push(format!(
                "{}: connected {}, matches hull {}",
                f.name, f.flip_connected, f.flip_matches_hull
            ));
        }
    }
    let checked = format!("{} configurations, exact", scope.len());
    vec![
        outcome(7, c7, checked.clone()),
        outcome(8, c8, checked.clone()),
        outcome(9, c9, checked),
    ]
}

fn expect_factor(failures: &mut Vec<String>, label: &str, got: &MultiPoly, written: &str) -> Result<()> {
    let want = parse_polynomial_over(written, got.vars())?;
    if *got != want {
        failures.push(format!("{label}: got {got}, expected {written}"));
    }
    Ok(())
}

pub fn criterion_adet() -> CriterionOutcome {
    let run = || -> Result<CriterionOutcome> {
        let mut failures = Vec::new();
        let report = verify_worked_example()?;
        if !report.matches {
            failures.push(format!("reference expansion differs: {:?}", report.diff));
        }
        let vars: Vec<String> = ["a0", "c0", "b0", "a1", "b1", "a2", "b2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let f0 = UniPolySym::generic(&vars, &[0, 1, 2])?;
        let f1 = UniPolySym::generic(&vars, &[3, 4])?;
        let f2 = UniPolySym::generic(&vars, &[5, 6])?;
        expect_factor(&mut failures, "Res(f1,f2)", &resultant(&f1, &f2)?, "a1 b2 - a2 b1")?;
        expect_factor(&mut failures, "Res(f0,f1)", &resultant(&f0, &f1)?, "a1^2 b0 + b1^2 a0 - a1 b1 c0")?;
        expect_factor(&mut failures, "Discr(f0)", &discriminant(&f0)?, "4 a0 b0 - c0^2")?;
        expect_factor(&mut failures, "Discr(f1)", &discriminant(&f1)?, "1")?;
        let hs = positive_heights(4, 8);
        let degrees = par_map(&hs, |h| -> Result<(Option<String>, bool)> {
            let e = principal_adet_prism(h)?;
            let want = (h.len() as u32 + 1) * h.sum() as u32;
            let mut bad = None;
            if e.total_degree() != Some(want) || !e.is_homogeneous() {
                bad = Some(format!("{:?}: factor degree {:?}", h.as_slice(), e.total_degree()));
            }
            let expanded = match e.expand(ADET_EXPANSION_CAP) {
                Ok(p) => {
                    if p.total_degree() != Some(want) || !p.is_homogeneous() {
                        bad = Some(format!("{:?}: expanded degree {:?}", h.as_slice(), p.total_degree()));
                    }
                    true
                }
                Err(crate::Error::CapExceeded(_)) => false,
                Err(e) => return Err(e),
            };
            Ok((bad, expanded))
        });
        let mut expanded = 0;
        for d in degrees {
            let (bad, full) = d?;
            failures.extend(bad);
            expanded += usize::from(full);
        }
        Ok(outcome(
            10,
            failures,
            format!(
                "reference expansion sign {}, 4 printed factors, degree for {} height vectors ({expanded} fully expanded)",
                report.sign,
                hs.len()
            ),
        ))
    };
    run().unwrap_or_else(|e| error_outcome(10, e))
}

/// Runs all eleven criteria, in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    let mut out = vec![criterion_hstar()];
    match corpus().and_then(|c| {
        let facts: Result<Vec<CorpusFacts>> = par_map(&c, corpus_facts).into_iter().collect();
        facts.map(|f| (c, f))
    }) {
        Ok((corpus, facts)) => {
            let mut by_corpus = corpus_criteria(&facts);
            let c11 = by_corpus.pop().expect("four outcomes");
            out.extend(by_corpus);
            out.push(criterion_roundtrip(&facts, &corpus));
            out.push(criterion_monotonicity());
            out.extend(triangulation_criteria());
            out.push(criterion_adet());
            out.push(c11);
        }
        Err(e) => {
            for id in [2, 3, 4, 5] {
                out.push(error_outcome(id, e.clone()));
            }
            out.push(criterion_monotonicity());
            out.extend(triangulation_criteria());
            out.push(criterion_adet());
            out.push(error_outcome(11, e));
        }
    }
    out
}
