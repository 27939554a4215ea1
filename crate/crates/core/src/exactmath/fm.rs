//! Exact feasibility of small systems of linear (in)equalities by
//! Fourier–Motzkin elimination.
//!
//! Strict inequalities are carried through elimination as a flag: a derived
//! inequality is strict as soon as one of its two parents is.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};
use crate::error::{Error, Result};

/// Largest number of variables accepted by [`fm_feasible`].
pub const MAX_FM_VARIABLES: usize = 8;

/// Bound on the working set; elimination beyond this is reported as a cap error.
const MAX_WORKING_CONSTRAINTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `coeffs · x >= offset`
    Ge,
    /// `coeffs · x > offset`
    Gt,
    /// `coeffs · x = offset`
    Eq,
}

/// `coeffs · x (relation) offset`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rat>,
    pub offset: Rat,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rat>, offset: Rat, relation: Relation) -> Self {
        Self {
            coeffs,
            offset,
            relation,
        }
    }

    pub fn ge(coeffs: Vec<Rat>, offset: Rat) -> Self {
        Self::new(coeffs, offset, Relation::Ge)
    }

    pub fn gt(coeffs: Vec<Rat>, offset: Rat) -> Self {
        Self::new(coeffs, offset, Relation::Gt)
    }

    pub fn eq(coeffs: Vec<Rat>, offset: Rat) -> Self {
        Self::new(coeffs, offset, Relation::Eq)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(coeffs: &[i64], offset: i64, relation: Relation) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Rat::from_integer(Int::from(c))).collect(),
            Rat::from_integer(Int::from(offset)),
            relation,
        )
    }

    /// Whether the rational point satisfies the constraint.
    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        match self.relation {
            Relation::Ge => lhs >= self.offset,
            Relation::Gt => lhs > self.offset,
            Relation::Eq => lhs == self.offset,
        }
    }
}

/// `a · x >= b` (or `>` when strict), with `a` primitive.
#[derive(Debug, Clone)]
struct Ineq {
    a: Vec<Int>,
    b: Rat,
    strict: bool,
}

/// Decides whether the system has a rational solution.
///
/// All constraints must share one variable count `d <= MAX_FM_VARIABLES`.
/// Equalities are substituted away first; the remaining inequalities are
/// eliminated one variable at a time, always choosing the variable with the
/// fewest generated pairs.
pub fn fm_feasible(cs: &[LinearConstraint]) -> Result<bool> {
    let Some(first) = cs.first() else {
        return Ok(true);
    };
    let nvars = first.coeffs.len();
    if cs.iter().any(|c| c.coeffs.len() != nvars) {
        return Err(Error::Dimension(
            "constraints over different variable counts".into(),
        ));
    }
    if nvars > MAX_FM_VARIABLES {
        return Err(Error::CapExceeded(format!(
            "Fourier-Motzkin over {nvars} variables (max {MAX_FM_VARIABLES})"
        )));
    }

    let (mut eqs, mut ineqs): (Vec<LinearConstraint>, Vec<LinearConstraint>) = cs
        .iter()
        .cloned()
        .partition(|c| c.relation == Relation::Eq);

    // Substitute equalities away.
    while let Some(eq) = eqs.pop() {
        let Some(j) = eq.coeffs.iter().position(|c| !c.is_zero()) else {
            if !eq.offset.is_zero() {
                return Ok(false);
            }
            continue;
        };
        let pivot = eq.coeffs[j].clone();
        let substitute = |c: &mut LinearConstraint| {
            if c.coeffs[j].is_zero() {
                return;
            }
            let f = &c.coeffs[j] / &pivot;
            for (ci, ei) in c.coeffs.iter_mut().zip(&eq.coeffs) {
                *ci -= &f * ei;
            }
            c.offset -= &f * &eq.offset;
        };
        eqs.iter_mut().for_each(substitute);
        ineqs.iter_mut().for_each(substitute);
    }

    let mut system: Vec<Ineq> = Vec::with_capacity(ineqs.len());
    for c in &ineqs {
        let strict = c.relation == Relation::Gt;
        match normalize_rational(&c.coeffs, &c.offset, strict) {
            Normalized::Trivial => {}
            Normalized::Infeasible => return Ok(false),
            Normalized::Row(r) => system.push(r),
        }
    }
    system = dedupe(system);

    loop {
        let mut best: Option<(usize, usize)> = None;
        for j in 0..nvars {
            let pos = system.iter().filter(|r| r.a[j].is_positive()).count();
            let neg = system.iter().filter(|r| r.a[j].is_negative()).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some((j, cost));
            }
        }
        let Some((j, _)) = best else {
            // every remaining row has zero coefficients and was checked on creation
            return Ok(true);
        };

        let (pos, rest): (Vec<Ineq>, Vec<Ineq>) =
            system.into_iter().partition(|r| r.a[j].is_positive());
        let (neg, zero): (Vec<Ineq>, Vec<Ineq>) =
            rest.into_iter().partition(|r| r.a[j].is_negative());

        let mut next = zero;
        if !pos.is_empty() && !neg.is_empty() {
            if next.len() + pos.len() * neg.len() > MAX_WORKING_CONSTRAINTS {
                return Err(Error::CapExceeded(
                    "Fourier-Motzkin working set too large".into(),
                ));
            }
            for p in &pos {
                for n in &neg {
                    let pj = &p.a[j];
                    let nj = -&n.a[j];
                    let a: Vec<Int> = p
                        .a
                        .iter()
                        .zip(&n.a)
                        .map(|(x, y)| x * &nj + y * pj)
                        .collect();
                    let b = &p.b * Rat::from_integer(nj.clone())
                        + &n.b * Rat::from_integer(pj.clone());
                    match normalize_int(a, b, p.strict || n.strict) {
                        Normalized::Trivial => {}
                        Normalized::Infeasible => return Ok(false),
                        Normalized::Row(r) => next.push(r),
                    }
                }
            }
        }
        system = dedupe(next);
    }
}

enum Normalized {
    Trivial,
    Infeasible,
    Row(Ineq),
}

fn normalize_rational(coeffs: &[Rat], offset: &Rat, strict: bool) -> Normalized {
    let lcm = coeffs
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let a: Vec<Int> = coeffs
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    normalize_int(a, offset * Rat::from_integer(lcm), strict)
}

fn normalize_int(a: Vec<Int>, b: Rat, strict: bool) -> Normalized {
    let g = a.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        let ok = if strict { b.is_negative() } else { !b.is_positive() };
        return if ok {
            Normalized::Trivial
        } else {
            Normalized::Infeasible
        };
    }
    let b = b / Rat::from_integer(g.clone());
    let a = a.into_iter().map(|x| x / &g).collect();
    Normalized::Row(Ineq { a, b, strict })
}

/// Keeps only the tightest inequality per coefficient vector.
fn dedupe(rows: Vec<Ineq>) -> Vec<Ineq> {
    let mut best: HashMap<Vec<Int>, (Rat, bool)> = HashMap::with_capacity(rows.len());
    let mut order = Vec::new();
    for r in rows {
        match best.get_mut(&r.a) {
            Some((b, strict)) => {
                if r.b > *b {
                    *b = r.b;
                    *strict = r.strict;
                } else if r.b == *b {
                    *strict |= r.strict;
                }
            }
            None => {
                order.push(r.a.clone());
                best.insert(r.a, (r.b, r.strict));
            }
        }
    }
    order
        .into_iter()
        .map(|a| {
            let (b, strict) = best.remove(&a).expect("key recorded on insert");
            Ineq { a, b, strict }
        })
        .collect()
}
