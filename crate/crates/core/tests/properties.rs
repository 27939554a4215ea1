use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use latdeg::classify::{classify, Tag};
use latdeg::construct::{
    cayley, exceptional_simplex, lawrence_prism, pyramid, random_unimodular, scramble, Heights,
};
use latdeg::ehrhart::{degree, hstar, normalized_volume};
use latdeg::exactmath::{Int, IntMatrix};
use latdeg::polytope::{affine_rank, AffineMap, LatticePoint, LatticePolytope};

fn polytope_from(dim: usize, coords: &[i64]) -> Option<LatticePolytope> {
    let pts: Vec<LatticePoint> = coords.chunks(dim).map(LatticePoint::from_i64).collect();
    LatticePolytope::new(dim, pts).ok()
}

/// Up to eight points of `[0, 3]^dim`, full-dimensional or rejected.
fn full_polytope() -> impl Strategy<Value = LatticePolytope> {
    (2usize..=3)
        .prop_flat_map(|dim| (Just(dim), proptest::collection::vec(0i64..=3, dim * (dim + 1)..=dim * 8)))
        .prop_filter_map("not full-dimensional", |(dim, coords)| {
            polytope_from(dim, &coords).filter(LatticePolytope::is_full_dimensional)
        })
}

/// Small polytope in `Z^dim` of any dimension.
fn any_polytope() -> impl Strategy<Value = LatticePolytope> {
    (1usize..=4).prop_flat_map(|dim| {
        proptest::collection::vec(0i64..=2, dim..=dim * 6)
            .prop_filter_map("ragged", move |coords| {
                let len = coords.len() / dim * dim;
                polytope_from(dim, &coords[..len])
            })
    })
}

fn heights_strategy() -> impl Strategy<Value = Heights> {
    proptest::collection::vec(1u64..=3, 1..=4).prop_map(|h| Heights::new(h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subpolytopes_have_smaller_hstar(p in full_polytope(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts = p.lattice_points(1).unwrap();
        pts.shuffle(&mut rng);
        let take = rng.gen_range(p.dimension() + 1..=pts.len());
        let q = LatticePolytope::new(p.ambient_dim(), pts[..take].to_vec()).unwrap();
        prop_assume!(q.dimension() == p.dimension());
        let (hq, hp) = (hstar(&q).unwrap(), hstar(&p).unwrap());
        prop_assert!(hq.dominated_by(&hp), "{:?} vs {:?}", hq.coeffs, hp.coeffs);
        prop_assert!(hq.degree() <= hp.degree());
    }

    #[test]
    fn projection_bound(p in full_polytope(), seed in any::<u64>(), drop in 1usize..=2) {
        let n = p.ambient_dim();
        prop_assume!(drop < n);
        let map = random_unimodular(n, seed);
        let q = p.apply(&map).unwrap();
        let rows: Vec<Vec<Int>> = (0..n - drop)
            .map(|i| (0..n).map(|j| Int::from(i64::from(i == j))).collect())
            .collect();
        let psi = IntMatrix::from_rows(&rows, n).unwrap();
        let image = q.project(&psi).unwrap();
        prop_assert_eq!(image.dimension(), n - drop);
        prop_assert!(degree(&p).unwrap() <= degree(&image).unwrap() + drop);
    }

    #[test]
    fn lattice_points_lie_on_low_faces(p in full_polytope()) {
        let d = degree(&p).unwrap();
        for x in p.lattice_points(1).unwrap() {
            let f = p.minimal_face_dimension(&x).unwrap();
            prop_assert!(f <= d, "{x:?} lies on a face of dimension {f} > {d}");
        }
    }

    #[test]
    fn few_points_share_a_proper_face(p in full_polytope(), seed in any::<u64>()) {
        let n = p.dimension();
        let d = degree(&p).unwrap();
        prop_assume!(d < n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = p.lattice_points(1).unwrap();
        for _ in 0..5 {
            let k = rng.gen_range(1..=n - d);
            let sample: Vec<LatticePoint> = pts.choose_multiple(&mut rng, k).cloned().collect();
            prop_assert!(p.share_proper_face(&sample), "{sample:?}");
        }
    }

    #[test]
    fn counts_invariant_under_unimodular_maps(p in any_polytope(), seed in any::<u64>()) {
        let (q, map) = scramble(&p, seed);
        prop_assert_eq!(p.count_lattice_points(1).unwrap(), q.count_lattice_points(1).unwrap());
        prop_assert_eq!(p.count_lattice_points(2).unwrap(), q.count_lattice_points(2).unwrap());
        prop_assert_eq!(hstar(&p).unwrap(), hstar(&q).unwrap());
        let back = q.apply(&map.inverse()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn generators_lie_in_the_hull(p in any_polytope()) {
        for g in p.generators() {
            prop_assert!(p.contains(g));
        }
    }

    #[test]
    fn cayley_degree_bounded_by_minkowski_dimension(
        a in any_polytope(), seed in any::<u64>(), r in 1usize..=2,
    ) {
        let m = a.ambient_dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = vec![a];
        for _ in 0..r {
            let count = rng.gen_range(1..=3);
            let pts: Vec<LatticePoint> = (0..count)
                .map(|_| LatticePoint::from_i64(&(0..m).map(|_| rng.gen_range(0..=2)).collect::<Vec<_>>()))
                .collect();
            factors.push(LatticePolytope::new(m, pts).unwrap());
        }
        let c = cayley(&factors).unwrap();
        let shifted: Vec<LatticePoint> = factors
            .iter()
            .flat_map(|f| {
                let base = f.vertices()[0].clone();
                f.vertices().iter().map(move |v| v.sub(&base)).collect::<Vec<_>>()
            })
            .chain([LatticePoint::origin(m)])
            .collect();
        let refs: Vec<&LatticePoint> = shifted.iter().collect();
        let minkowski_dim = affine_rank(&refs);
        prop_assert!(degree(&c).unwrap() <= minkowski_dim);
    }

    #[test]
    fn pyramids_keep_hstar(p in any_polytope(), r in 1usize..=2) {
        let q = pyramid(&p, r).unwrap();
        prop_assert_eq!(q.dimension(), p.dimension() + r);
        let (hq, hp) = (hstar(&q).unwrap(), hstar(&p).unwrap());
        prop_assert_eq!(hq.trimmed(), hp.trimmed());
    }

    #[test]
    fn classification_matches_count_identity(p in any_polytope()) {
        let h = hstar(&p).unwrap();
        let identity = Int::from(p.count_lattice_points(1).unwrap())
            == h.volume() + Int::from(p.dimension());
        let c = classify(&p).unwrap();
        prop_assert_eq!(identity, c.tag != Tag::NotDegreeLeOne);
        if let Some(w) = &c.witness {
            let canonical = c.canonical(p.ambient_dim()).unwrap();
            let image: Vec<LatticePoint> = p.lattice_points(1).unwrap().iter().map(|x| w.apply(x)).collect();
            let mut image = image;
            image.sort();
            prop_assert_eq!(image, canonical.lattice_points(1).unwrap());
        }
    }

    #[test]
    fn prisms_and_their_scrambles(h in heights_strategy(), seed in any::<u64>()) {
        let p = lawrence_prism(&h);
        let hs = hstar(&p).unwrap();
        prop_assert!(hs.degree() <= 1);
        prop_assert_eq!(hs.volume(), Int::from(h.sum()));
        let (q, _) = scramble(&p, seed);
        let c = classify(&q).unwrap();
        if h.sum() == 1 {
            prop_assert_eq!(c.tag, Tag::BasicSimplex);
        } else {
            prop_assert_eq!(c.tag, Tag::LawrencePrism);
            prop_assert_eq!(c.heights.unwrap(), h.sorted_desc());
        }
    }
}

#[test]
fn exceptional_simplices_have_volume_four() {
    for n in 2..=5 {
        let e = exceptional_simplex(n).unwrap();
        assert_eq!(classify(&e).unwrap().tag, Tag::Exceptional);
        assert_eq!(normalized_volume(&e).unwrap(), Int::from(4));
    }
}

/// Degree-one polytopes of dimension at least three split as Cayley
/// polytopes of lower-dimensional pieces: prisms over segments, exceptional
/// simplices over the exceptional triangle.
#[test]
fn degree_one_polytopes_are_cayley() {
    for n in 3..=5 {
        let e = exceptional_simplex(n).unwrap();
        assert_eq!(pyramid(&exceptional_simplex(2).unwrap(), n - 2).unwrap(), e);
    }
    for h in [&[2, 1, 1][..], &[1, 1, 1], &[3, 2, 1, 1]] {
        let h = Heights::new(h.to_vec()).unwrap();
        let n = h.len();
        let segments: Vec<LatticePolytope> = h
            .as_slice()
            .iter()
            .map(|&x| LatticePolytope::from_i64_points(&[&[0], &[x as i64]]).unwrap())
            .collect();
        let c = cayley(&segments).unwrap();
        // move the segment axis from the first coordinate to the last
        let mut rows = vec![vec![Int::from(0); n]; n];
        for i in 0..n {
            rows[i][(i + 1) % n] = Int::from(1);
        }
        let perm = AffineMap::new(IntMatrix::from_rows(&rows, n).unwrap(), vec![Int::from(0); n]).unwrap();
        assert_eq!(c.apply(&perm).unwrap(), lawrence_prism(&h));
    }
}
