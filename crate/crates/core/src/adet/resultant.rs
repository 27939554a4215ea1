//! Univariate polynomials with symbolic coefficients, their resultants and
//! discriminants.

use num_traits::{One, Signed, Zero};

use super::multipoly::{det_cofactor, MultiPoly};
use crate::error::{Error, Result};
use crate::exactmath::{Int, IntMatrix};

/// `c_0 + c_1 x + ... + c_h x^h` with coefficients in a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPolySym {
    coeffs: Vec<MultiPoly>,
}

impl UniPolySym {
    /// Coefficients listed from the constant term up. Trailing zero
    /// coefficients are rejected so that the degree is exact.
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::InvalidInput("polynomial with no coefficients".into())),
            Some(c) if c.is_zero() => {
                Err(Error::InvalidInput("leading coefficient is zero".into()))
            }
            Some(_) => {
                let vars = coeffs[0].vars();
                if coeffs.iter().any(|c| c.vars() != vars) {
                    return Err(Error::InvalidInput(
                        "coefficients over different variables".into(),
                    ));
                }
                Ok(Self { coeffs })
            }
        }
    }

    /// The generic polynomial whose coefficients are the variables with
    /// the given indices.
    pub fn generic(vars: &[String], indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().map(|&i| MultiPoly::var(vars, i)).collect())
    }

    /// Polynomial with constant integer coefficients.
    pub fn from_ints(vars: &[String], coeffs: &[i64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| MultiPoly::constant(vars, Int::from(c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> &MultiPoly {
        self.coeffs.last().expect("non-empty")
    }

    pub fn vars(&self) -> &[String] {
        self.coeffs[0].vars()
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.degree() == 0 {
            return Err(Error::Domain("derivative of a constant".into()));
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Int::from(j)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let vars = self.vars();
        let mut out = vec![MultiPoly::zero(vars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self { coeffs: out }
    }

    /// Substitutes integers for the coefficient variables.
    pub fn eval_coeffs(&self, values: &[Int]) -> Vec<Int> {
        self.coeffs.iter().map(|c| c.eval(values)).collect()
    }
}

/// Sylvester determinant with rows ordered by ascending powers: `deg g`
/// shifted copies of the coefficients of `f` followed by `deg f` shifted
/// copies of those of `g`. For `f = a_1 + b_1 x` and `g = a_2 + b_2 x` this
/// is `a_1 b_2 - a_2 b_1`, and it equals `(-1)^{deg f deg g}` times the
/// descending-order determinant.
pub fn resultant(f: &UniPolySym, g: &UniPolySym) -> Result<MultiPoly> {
    if f.degree() == 0 || g.degree() == 0 {
        return Err(Error::Domain("resultant needs two non-constant polynomials".into()));
    }
    if f.vars() != g.vars() {
        return Err(Error::InvalidInput("polynomials over different variables".into()));
    }
    sylvester_det(f, g)
}

fn sylvester_rows(f: &UniPolySym, g: &UniPolySym) -> Vec<Vec<MultiPoly>> {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    let zero = MultiPoly::zero(f.vars());
    let mut rows = Vec::with_capacity(size);
    for (shifts, p) in [(n, f), (m, g)] {
        for s in 0..shifts {
            let mut row = vec![zero.clone(); size];
            for (j, c) in p.coeffs().iter().enumerate() {
                row[s + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

fn sylvester_det(f: &UniPolySym, g: &UniPolySym) -> Result<MultiPoly> {
    det_cofactor(&sylvester_rows(f, g), f.vars())
}

/// Coefficient matrix of `(f(x) g(y) - f(y) g(x)) / (x - y)` for
/// `deg g < deg f`, of size `deg f`.
fn bezout_rows(f: &UniPolySym, g: &UniPolySym) -> Vec<Vec<MultiPoly>> {
    let size = f.degree();
    let zero = MultiPoly::zero(f.vars());
    let coeff = |p: &UniPolySym, k: usize| p.coeffs().get(k).cloned().unwrap_or_else(|| zero.clone());
    let mut rows = vec![vec![zero.clone(); size]; size];
    for k in 1..=size {
        for l in 0..k {
            let c = coeff(f, k).mul(&coeff(g, l)).sub(&coeff(f, l).mul(&coeff(g, k)));
            if c.is_zero() {
                continue;
            }
            for t in 0..k - l {
                rows[l + t][k - 1 - t].add_assign(&c);
            }
        }
    }
    rows
}

fn int_det(rows: &[Vec<MultiPoly>]) -> Result<Int> {
    let values: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.eval(&[])).collect())
        .collect();
    crate::exactmath::det(&IntMatrix::from_rows(&values, rows.len())?)
}

/// `±1` relating `det Bez(f, f') / lc^2` to `Res(f, f') / lc` in degree `h`,
/// read off from `x^h - 1`.
fn bezout_sign(h: usize) -> Result<Int> {
    let mut c = vec![0i64; h + 1];
    c[0] = -1;
    c[h] = 1;
    let f = UniPolySym::from_ints(&[], &c)?;
    let df = f.derivative()?;
    let syl = int_det(&sylvester_rows(&f, &df))?;
    let bez = int_det(&bezout_rows(&f, &df))?;
    if syl.is_zero() || bez.abs() != syl.abs() {
        return Err(Error::Internal("Bezout and Sylvester determinants disagree".into()));
    }
    Ok(if syl == bez { Int::one() } else { -Int::one() })
}

/// `resultant(f, f') / lc(f)`. For `a_0 + c_0 x + b_0 x^2` this is
/// `4 a_0 b_0 - c_0^2`, and it is `1` for linear `f`. Computed from the
/// Bezout matrix of `f` and `f'`, which is half the size of the Sylvester
/// matrix.
pub fn discriminant(f: &UniPolySym) -> Result<MultiPoly> {
    match f.degree() {
        0 => Err(Error::Domain("discriminant of a constant".into())),
        1 => Ok(MultiPoly::constant(f.vars(), Int::one())),
        h => {
            let b = det_cofactor(&bezout_rows(f, &f.derivative()?), f.vars())?;
            let lc2 = f.leading().mul(f.leading());
            let d = b
                .div_exact(&lc2)
                .ok_or_else(|| Error::Internal("discriminant division was not exact".into()))?;
            Ok(d.scale(&bezout_sign(h)?))
        }
    }
}

/// `resultant(f, f') / lc(f)` straight from the Sylvester matrix.
pub fn discriminant_sylvester(f: &UniPolySym) -> Result<MultiPoly> {
    match f.degree() {
        0 => Err(Error::Domain("discriminant of a constant".into())),
        1 => Ok(MultiPoly::constant(f.vars(), Int::one())),
        _ => sylvester_det(f, &f.derivative()?)?
            .div_exact(f.leading())
            .ok_or_else(|| Error::Internal("discriminant division was not exact".into())),
    }
}

/// Resultant of two integer polynomials given by coefficient lists.
pub fn resultant_int(f: &[i64], g: &[i64]) -> Result<Int> {
    let f = UniPolySym::from_ints(&[], f)?;
    let g = UniPolySym::from_ints(&[], g)?;
    Ok(resultant(&f, &g)?.eval(&[]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::multipoly::det;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn parse_terms(vars: &[String], terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_terms(vars, terms.iter().map(|(c, e)| (e.to_vec(), Int::from(*c))))
    }

    #[test]
    fn linear_resultant() {
        let vars = names(&["a1", "b1", "a2", "b2"]);
        let f = UniPolySym::generic(&vars, &[0, 1]).unwrap();
        let g = UniPolySym::generic(&vars, &[2, 3]).unwrap();
        let want = parse_terms(&vars, &[(1, &[1, 0, 0, 1]), (-1, &[0, 1, 1, 0])]);
        assert_eq!(resultant(&f, &g).unwrap(), want);
        assert_eq!(resultant(&f, &f).unwrap(), MultiPoly::zero(&vars));
    }

    #[test]
    fn quadratic_linear_resultant() {
        let vars = names(&["a0", "c0", "b0", "a1", "b1"]);
        let f = UniPolySym::generic(&vars, &[0, 1, 2]).unwrap();
        let g = UniPolySym::generic(&vars, &[3, 4]).unwrap();
        let want = parse_terms(
            &vars,
            &[(1, &[0, 0, 1, 2, 0]), (1, &[1, 0, 0, 0, 2]), (-1, &[0, 1, 0, 1, 1])],
        );
        assert_eq!(resultant(&f, &g).unwrap(), want);
    }

    #[test]
    fn quadratic_and_linear_discriminants() {
        let vars = names(&["a0", "c0", "b0"]);
        let f = UniPolySym::generic(&vars, &[0, 1, 2]).unwrap();
        let want = parse_terms(&vars, &[(4, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        assert_eq!(discriminant(&f).unwrap(), want);
        let lin = UniPolySym::generic(&vars, &[0, 1]).unwrap();
        assert_eq!(discriminant(&lin).unwrap(), MultiPoly::constant(&vars, Int::one()));
        let constant = UniPolySym::generic(&vars, &[0]).unwrap();
        assert!(discriminant(&constant).is_err());
        assert!(resultant(&constant, &lin).is_err());
    }

    #[test]
    fn depressed_cubic_discriminant() {
        let vars = names(&["p", "q"]);
        let one = MultiPoly::constant(&vars, Int::one());
        let zero = MultiPoly::zero(&vars);
        let f = UniPolySym::new(vec![
            MultiPoly::var(&vars, 1),
            MultiPoly::var(&vars, 0),
            zero,
            one,
        ])
        .unwrap();
        let d = discriminant(&f).unwrap();
        assert_eq!(d, parse_terms(&vars, &[(4, &[3, 0]), (27, &[0, 2])]));
    }

    /// `Π_{i<j} (r_i - r_j)^2` for a monic polynomial with integer roots.
    fn root_discriminant(roots: &[i64]) -> Int {
        let mut d = Int::one();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let diff = Int::from(roots[i] - roots[j]);
                d *= &diff * &diff;
            }
        }
        d
    }

    fn from_roots(roots: &[i64]) -> Vec<i64> {
        let mut c = vec![1i64];
        for &r in roots {
            let mut next = vec![0i64; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        c
    }

    #[test]
    fn cofactor_and_elimination_agree() {
        let vars: Vec<String> = (0..7).map(|j| format!("x{j}")).collect();
        let f = UniPolySym::generic(&vars, &[0, 1, 2, 3]).unwrap();
        let g = UniPolySym::generic(&vars, &[4, 5, 6]).unwrap();
        let size = 5;
        let zero = MultiPoly::zero(&vars);
        let mut rows = Vec::new();
        for (shifts, p) in [(2, &f), (3, &g)] {
            for s in 0..shifts {
                let mut row = vec![zero.clone(); size];
                for (j, c) in p.coeffs().iter().enumerate() {
                    row[s + j] = c.clone();
                }
                rows.push(row);
            }
        }
        assert_eq!(resultant(&f, &g).unwrap(), det(rows, &vars).unwrap());
    }

    #[test]
    fn bezout_and_sylvester_discriminants_agree() {
        for h in 2..=6usize {
            let vars: Vec<String> = (0..=h).map(|j| format!("c{j}")).collect();
            let idx: Vec<usize> = (0..=h).collect();
            let f = UniPolySym::generic(&vars, &idx).unwrap();
            assert_eq!(discriminant(&f).unwrap(), discriminant_sylvester(&f).unwrap(), "{h}");
        }
    }

    #[test]
    fn general_discriminant_matches_root_differences() {
        for h in 2..=4usize {
            let vars: Vec<String> = (0..=h).map(|j| format!("c{j}")).collect();
            let idx: Vec<usize> = (0..=h).collect();
            let d = discriminant(&UniPolySym::generic(&vars, &idx).unwrap()).unwrap();
            let sign = if (h * (h - 1) / 2) % 2 == 0 { 1 } else { -1 };
            let mut rng = ChaCha8Rng::seed_from_u64(h as u64);
            for _ in 0..20 {
                let roots: Vec<i64> = (0..h).map(|_| rng.gen_range(-4..=4)).collect();
                let coeffs: Vec<Int> = from_roots(&roots).into_iter().map(Int::from).collect();
                assert_eq!(d.eval(&coeffs), root_discriminant(&roots) * sign);
            }
        }
    }

    #[test]
    fn planted_common_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let r = rng.gen_range(-5..=5);
            let mut fr: Vec<i64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(-5..=5)).collect();
            let mut gr: Vec<i64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(-5..=5)).collect();
            fr.push(r);
            gr.push(r);
            let r = resultant_int(&from_roots(&fr), &from_roots(&gr)).unwrap();
            assert!(r.is_zero());
        }
    }

    #[test]
    fn multiplicative_in_first_argument() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vars: Vec<String> = Vec::new();
        let random = |rng: &mut ChaCha8Rng, deg: usize| -> Vec<i64> {
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-4..=4)).collect();
            c.push(rng.gen_range(1..=3));
            c
        };
        for _ in 0..30 {
            let (df, dg, dh) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
            let f = UniPolySym::from_ints(&vars, &random(&mut rng, df)).unwrap();
            let g = UniPolySym::from_ints(&vars, &random(&mut rng, dg)).unwrap();
            let h = UniPolySym::from_ints(&vars, &random(&mut rng, dh)).unwrap();
            let lhs = resultant(&f.mul(&g), &h).unwrap();
            let rhs = resultant(&f, &h).unwrap().mul(&resultant(&g, &h).unwrap());
            assert_eq!(lhs, rhs);
            let lhs = resultant(&h, &f.mul(&g)).unwrap();
            let rhs = resultant(&h, &f).unwrap().mul(&resultant(&h, &g).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}
