//! Exact integer and rational linear algebra.
//!
//! Everything here is a pure function of its arguments. Integers are
//! arbitrary precision, so no routine can overflow.

mod fm;
mod matrix;

pub use fm::{fm_feasible, LinearConstraint, Relation, MAX_FM_VARIABLES};
pub use matrix::{
    det, gcd_all, hnf, integer_kernel, inverse_unimodular, primitive, primitive_from_rational,
    rank, rational_kernel, solve_rational, IntMatrix,
};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 || n < 0 || k > n {
        return Int::from(0);
    }
    let k = k.min(n - k);
    let mut acc = Int::from(1);
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}
