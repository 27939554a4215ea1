//! The principal A-determinant of a Lawrence prism as a product of
//! boundary coefficients, discriminants and pairwise resultants.

use num_traits::{One, Signed};

use super::multipoly::MultiPoly;
use super::parse::parse_polynomial;
use super::resultant::{discriminant, resultant, UniPolySym};
use crate::construct::Heights;
use crate::error::{Error, Result};
use crate::exactmath::Int;

/// Name of the coefficient of `x^j` in the `i`-th polynomial.
pub fn coefficient_name(i: usize, j: usize) -> String {
    format!("a_{{{i},{j}}}")
}

/// A product of named polynomial factors over common variables.
#[derive(Debug, Clone)]
pub struct FactoredPoly {
    pub vars: Vec<String>,
    pub factors: Vec<(String, MultiPoly)>,
}

impl FactoredPoly {
    /// Sum of the factor degrees, which is the degree of the product since
    /// the coefficient ring has no zero divisors. `None` if a factor is zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.factors
            .iter()
            .map(|(_, f)| f.total_degree())
            .sum::<Option<u32>>()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.factors.iter().all(|(_, f)| f.is_homogeneous())
    }

    pub fn eval(&self, values: &[Int]) -> Int {
        self.factors.iter().map(|(_, f)| f.eval(values)).product()
    }

    /// Multiplies the factors out, failing once an intermediate product has
    /// more than `max_terms` terms.
    pub fn expand(&self, max_terms: usize) -> Result<MultiPoly> {
        let mut acc = MultiPoly::constant(&self.vars, Int::one());
        let mut order: Vec<&MultiPoly> = self.factors.iter().map(|(_, f)| f).collect();
        order.sort_by_key(|f| f.term_count());
        for f in order {
            acc = acc.mul(f);
            if acc.term_count() > max_terms {
                return Err(Error::CapExceeded(format!(
                    "expanded product exceeds {max_terms} terms"
                )));
            }
        }
        Ok(acc)
    }
}

/// `Π a_{i,0} a_{i,h_i} · Π Discr(f_i) · Π_{i<j} Res(f_i, f_j)` for the
/// generic polynomials `f_i = Σ_j a_{i,j} x^j` of degree `h_i`.
pub fn principal_adet_prism(h: &Heights) -> Result<FactoredPoly> {
    let hs = h.as_slice();
    if hs.contains(&0) {
        return Err(Error::Domain(
            "every height must be positive for the product formula".into(),
        ));
    }
    let mut vars = Vec::new();
    let mut polys = Vec::with_capacity(hs.len());
    for (i, &hi) in hs.iter().enumerate() {
        let start = vars.len();
        vars.extend((0..=hi as usize).map(|j| coefficient_name(i, j)));
        polys.push((start..vars.len()).collect::<Vec<usize>>());
    }
    let polys: Vec<UniPolySym> = polys
        .iter()
        .map(|idx| UniPolySym::generic(&vars, idx))
        .collect::<Result<_>>()?;
    let mut factors = Vec::new();
    for (i, f) in polys.iter().enumerate() {
        factors.push((coefficient_name(i, 0), f.coeffs()[0].clone()));
        factors.push((coefficient_name(i, f.degree()), f.leading().clone()));
    }
    for (i, f) in polys.iter().enumerate() {
        if f.degree() >= 2 {
            factors.push((format!("Discr(f_{i})"), discriminant(f)?));
        }
    }
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            factors.push((format!("Res(f_{i},f_{j})"), resultant(&polys[i], &polys[j])?));
        }
    }
    Ok(FactoredPoly { vars, factors })
}

/// Heights of the reference expansion.
pub const REFERENCE_HEIGHTS: [u64; 3] = [1, 1, 2];

/// Expansion of the product formula for heights `(1, 1, 2)`, written with
/// the quadratic as `a0 + c0 x + b0 x^2` and the linear polynomials as
/// `a1 + b1 x` and `a2 + b2 x`.
pub const REFERENCE_EXPANSION: &str = "a0a1a2b0b1b2(4a0b0 - c0^2)(a1b2 - a2b1)\
(a1^2b0 + b1^2a0 - a1b1c0)(a2^2b0 + b2^2a0 - a2b2c0)";

/// Outcome of comparing the product formula with a written expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleReport {
    pub matches: bool,
    /// `+1` or `-1` when the polynomials agree up to that sign.
    pub sign: i8,
    /// Pairs `(coefficient variable, written variable)`.
    pub assignment: Vec<(String, String)>,
    /// Terms present on one side only, as `"formula: c m"` or
    /// `"written: c m"` lines, for the first candidate assignment.
    pub diff: Vec<String>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Candidate renamings of the formula variables for `(1, 1, 2)` onto
/// `a0, c0, b0, a1, b1, a2, b2`: the quadratic coefficients in any order,
/// the two linear polynomials in either order, and the two coefficients of
/// each linear polynomial in either order. The natural one comes first.
fn candidate_assignments() -> Vec<Vec<(String, String)>> {
    let quad = ["a0", "c0", "b0"];
    let lin = [["a1", "b1"], ["a2", "b2"]];
    let mut out = Vec::new();
    for qp in permutations(&[0, 1, 2]) {
        for lp in permutations(&[0, 1]) {
            for flips in 0..4u8 {
                let mut a = Vec::new();
                for j in 0..3 {
                    a.push((coefficient_name(2, j), quad[qp[j]].to_string()));
                }
                for (i, &target) in lp.iter().enumerate() {
                    let flip = (flips >> i) & 1 == 1;
                    for j in 0..2 {
                        let k = if flip { 1 - j } else { j };
                        a.push((coefficient_name(i, j), lin[target][k].to_string()));
                    }
                }
                out.push(a);
            }
        }
    }
    out
}

fn diff_lines(formula: &MultiPoly, written: &MultiPoly) -> Vec<String> {
    let mut out = Vec::new();
    let delta = formula.sub(written);
    for (m, c) in delta.terms().rev() {
        let side = if c.is_positive() { "formula" } else { "written" };
        out.push(format!("{side}: {} {}", c.abs(), delta.monomial_string(m)));
    }
    out
}

/// Compares the expanded product formula for heights `(1, 1, 2)` against
/// the written expansion `written`, trying each candidate assignment of
/// coefficient variables and allowing one global sign.
pub fn verify_expansion(written: &str) -> Result<ExampleReport> {
    let written = parse_polynomial(written)?;
    let formula = principal_adet_prism(&Heights::new(REFERENCE_HEIGHTS.to_vec())?)?
        .expand(1 << 16)?;
    let mut first_diff = None;
    for a in candidate_assignments() {
        let renamed = formula.renamed(&a);
        let Ok(candidate) = renamed.embed(written.vars()) else {
            continue;
        };
        if candidate == written {
            return Ok(ExampleReport { matches: true, sign: 1, assignment: a, diff: vec![] });
        }
        if candidate.neg() == written {
            return Ok(ExampleReport { matches: true, sign: -1, assignment: a, diff: vec![] });
        }
        first_diff.get_or_insert_with(|| (a, diff_lines(&candidate, &written)));
    }
    let (assignment, diff) = first_diff.unwrap_or_default();
    Ok(ExampleReport { matches: false, sign: 1, assignment, diff })
}

/// [`verify_expansion`] on [`REFERENCE_EXPANSION`].
pub fn verify_worked_example() -> Result<ExampleReport> {
    verify_expansion(REFERENCE_EXPANSION)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heights(h: &[u64]) -> Heights {
        Heights::new(h.to_vec()).unwrap()
    }

    #[test]
    fn two_segments() {
        let e = principal_adet_prism(&heights(&[1, 1])).unwrap();
        let p = e.expand(1000).unwrap();
        let want = parse_polynomial(
            "a_{0,0} a_{0,1} a_{1,0} a_{1,1} (a_{0,0} a_{1,1} - a_{1,0} a_{0,1})",
        )
        .unwrap()
        .embed(&e.vars)
        .unwrap();
        assert_eq!(p, want);
        assert_eq!(e.total_degree(), Some(6));
        assert_eq!(p.total_degree(), Some(6));
    }

    #[test]
    fn reference_expansion_matches() {
        let r = verify_worked_example().unwrap();
        assert!(r.matches);
        assert_eq!(r.sign, 1);
        let natural = &candidate_assignments()[0];
        assert_eq!(&r.assignment, natural);
        assert!(r.assignment.contains(&("a_{2,1}".to_string(), "c0".to_string())));
    }

    #[test]
    fn perturbed_expansion_fails() {
        let mutated = REFERENCE_EXPANSION.replacen("4a0b0", "5a0b0", 1);
        let r = verify_expansion(&mutated).unwrap();
        assert!(!r.matches);
        assert!(!r.diff.is_empty());
        let mutated = REFERENCE_EXPANSION.replacen("(a1b2 - a2b1)", "(a1b2 + a2b1)", 1);
        assert!(!verify_expansion(&mutated).unwrap().matches);
    }

    #[test]
    fn negated_expansion_matches_with_sign() {
        let r = verify_expansion(&format!("-{REFERENCE_EXPANSION}")).unwrap();
        assert!(r.matches);
        assert_eq!(r.sign, -1);
    }

    #[test]
    fn random_substitution_agrees() {
        let written = parse_polynomial(REFERENCE_EXPANSION).unwrap();
        let e = principal_adet_prism(&heights(&REFERENCE_HEIGHTS)).unwrap();
        let r = verify_worked_example().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let values: Vec<Int> = written
                .vars()
                .iter()
                .map(|_| Int::from(rng.gen_range(-9..=9)))
                .collect();
            let formula_values: Vec<Int> = e
                .vars
                .iter()
                .map(|v| {
                    let (_, w) = r.assignment.iter().find(|(f, _)| f == v).unwrap();
                    let k = written.vars().iter().position(|x| x == w).unwrap();
                    values[k].clone()
                })
                .collect();
            assert_eq!(e.eval(&formula_values), written.eval(&values));
        }
    }

    #[test]
    fn degree_is_dimension_plus_one_times_volume() {
        for h in [&[1][..], &[3], &[2, 2], &[1, 2, 3], &[1, 1, 1, 1], &[4, 1]] {
            let e = principal_adet_prism(&heights(h)).unwrap();
            let sum: u64 = h.iter().sum();
            let want = (h.len() as u32 + 1) * sum as u32;
            assert_eq!(e.total_degree(), Some(want), "{h:?}");
            assert!(e.is_homogeneous());
        }
        let p = principal_adet_prism(&heights(&[1, 2])).unwrap().expand(10_000).unwrap();
        assert_eq!(p.total_degree(), Some(9));
        assert!(p.is_homogeneous());
    }

    #[test]
    fn zero_height_rejected() {
        assert!(principal_adet_prism(&heights(&[1, 0])).is_err());
    }
}
