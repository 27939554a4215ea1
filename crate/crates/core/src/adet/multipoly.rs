//! Sparse multivariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Int;

/// Exponent vector ordered by graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over a fixed, ordered list of variable names. Binary
/// operations require both operands to use the same list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Int>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        Self {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: Int) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::from_terms(vars, [(e, Int::one())])
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<u32>, Int)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in increasing graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &MultiPoly) {
        self.check_vars(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Int) -> MultiPoly {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut acc: HashMap<Vec<u32>, Int> = HashMap::with_capacity(self.terms.len() * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Int::zero) += ca * cb;
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (Monomial(e), c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        (0..k).fold(Self::constant(&self.vars, Int::one()), |acc, _| acc.mul(self))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(divisor);
        let (lead_m, lead_c) = divisor.terms.iter().next_back()?;
        let rest: Vec<(&Monomial, &Int)> = divisor.terms.iter().rev().skip(1).collect();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lead_m.divides(&m) || !(&c % lead_c).is_zero() {
                return None;
            }
            let e: Vec<u32> = m.0.iter().zip(&lead_m.0).map(|(a, b)| a - b).collect();
            let q = c / lead_c;
            for (dm, dc) in &rest {
                let t: Vec<u32> = e.iter().zip(&dm.0).map(|(a, b)| a + b).collect();
                let v = -(&q * *dc);
                match rem.entry(Monomial(t)) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(v);
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        *slot.get_mut() += v;
                        if slot.get().is_zero() {
                            slot.remove();
                        }
                    }
                }
            }
            quot.insert(Monomial(e), q);
        }
        Some(MultiPoly {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    pub fn eval(&self, values: &[Int]) -> Int {
        self.terms.iter().fold(Int::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc + t
        })
    }

    /// The same polynomial over `vars`, which must contain every variable
    /// that occurs in `self`.
    pub fn embed(&self, vars: &[String]) -> Result<MultiPoly> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::InvalidInput(format!("variable {} missing from target", self.vars[i]))
                })?;
                e[j] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Renames variables by `rename` (unmapped names are kept).
    pub fn renamed(&self, rename: &[(String, String)]) -> MultiPoly {
        let vars = self
            .vars
            .iter()
            .map(|v| {
                rename
                    .iter()
                    .find(|(from, _)| from == v)
                    .map_or_else(|| v.clone(), |(_, to)| to.clone())
            })
            .collect();
        MultiPoly {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// `x^e` written with the variable names, `*`-separated; `1` for the
    /// constant monomial.
    pub fn monomial_string(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{e}", self.vars[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// One `coefficient monomial` line per term, in decreasing graded
    /// lexicographic order.
    pub fn to_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{c} {}", self.monomial_string(m)))
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.monomial_string(m);
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mag.is_one(), mono.as_str()) {
                (_, "1") => write!(f, "{mag}")?,
                (true, _) => write!(f, "{mono}")?,
                (false, _) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// columns still in use. Division-free, and fast for sparse banded matrices
/// with monomial entries.
pub fn det_cofactor(matrix: &[Vec<MultiPoly>], vars: &[String]) -> Result<MultiPoly> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    if n > 63 {
        return Err(Error::CapExceeded(format!("cofactor expansion of size {n}")));
    }
    let mut level: HashMap<u64, MultiPoly> = HashMap::from([(0, MultiPoly::constant(vars, Int::one()))]);
    for row in matrix.iter().rev() {
        let mut next: HashMap<u64, MultiPoly> = HashMap::new();
        for (mask, minor) in &level {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let below = (mask & ((1u64 << c) - 1)).count_ones();
                let mut term = entry.mul(minor);
                if below % 2 == 1 {
                    term = term.neg();
                }
                match next.entry(mask | (1 << c)) {
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(term);
                    }
                    std::collections::hash_map::Entry::Occupied(mut slot) => {
                        slot.get_mut().add_assign(&term);
                    }
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        level = next;
    }
    Ok(level
        .remove(&((1u64 << n) - 1))
        .unwrap_or_else(|| MultiPoly::zero(vars)))
}

/// Determinant by fraction-free elimination over the polynomial ring.
pub fn det(matrix: Vec<Vec<MultiPoly>>, vars: &[String]) -> Result<MultiPoly> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(MultiPoly::constant(vars, Int::one()));
    }
    let mut m = matrix;
    let mut negate = false;
    let mut prev = MultiPoly::constant(vars, Int::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(MultiPoly::zero(vars));
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].mul(&m[i][j]);
                let b = m[i][k].mul(&m[k][j]);
                let num = a.sub(&b);
                m[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Internal("inexact division in fraction-free elimination".into())
                })?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn arithmetic_and_division() {
        let vars = names(&["x", "y"]);
        let x = MultiPoly::var(&vars, 0);
        let y = MultiPoly::var(&vars, 1);
        let s = x.add(&y);
        let d = x.sub(&y);
        let p = s.mul(&d);
        assert_eq!(p, x.pow(2).sub(&y.pow(2)));
        assert_eq!(p.div_exact(&s), Some(d.clone()));
        assert_eq!(p.div_exact(&x), None);
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.is_homogeneous());
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(p.to_lines(), vec!["1 x^2", "-1 y^2"]);
        assert_eq!(p.eval(&[Int::from(3), Int::from(2)]), Int::from(5));
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b && c > a);
    }

    #[test]
    fn symbolic_determinant() {
        let vars = names(&["a", "b", "c", "d"]);
        let v = |i| MultiPoly::var(&vars, i);
        let m = vec![vec![v(0), v(1)], vec![v(2), v(3)]];
        assert_eq!(det(m, &vars).unwrap(), v(0).mul(&v(3)).sub(&v(1).mul(&v(2))));
        let zero = MultiPoly::zero(&vars);
        let m = vec![
            vec![zero.clone(), v(0), zero.clone()],
            vec![v(1), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), v(2)],
        ];
        assert_eq!(det_cofactor(&m, &vars).unwrap(), v(0).mul(&v(1)).mul(&v(2)).neg());
        assert_eq!(det(m, &vars).unwrap(), v(0).mul(&v(1)).mul(&v(2)).neg());
    }

    #[test]
    fn embedding() {
        let small = names(&["b"]);
        let big = names(&["a", "b"]);
        let p = MultiPoly::var(&small, 0).pow(2);
        let q = p.embed(&big).unwrap();
        assert_eq!(q, MultiPoly::var(&big, 1).pow(2));
        assert!(MultiPoly::var(&big, 0).embed(&small).is_err());
    }
}
