//! Staircase triangulations of Lawrence prisms indexed by words, and the
//! closed formula for their number.
//!
//! The prism with heights `h_1, ..., h_n` is the union of the segments
//! `p_{k,0}, ..., p_{k,h_k}` with `p_{k,c} = base_k + c u`. A word is a
//! sequence of letters `(k, j)` such that the lengths `j` of the letters on
//! fiber `k` add up to `h_k`. Reading the word from left to right with a
//! cursor `c_k` on every fiber, letter `(k, j)` produces the simplex
//! `{p_{i,c_i} : all i} ∪ {p_{k,c_k + j}}` of volume `j` and advances `c_k`
//! by `j`.

use std::collections::HashMap;

use num_traits::One;

use super::{PointConfig, Triangulation};
use crate::construct::{lawrence_prism, Heights};
use crate::error::{Error, Result};
use crate::exactmath::{binomial, Int};
use crate::polytope::LatticePoint;

/// Advance fiber `fiber` (0-based) by `length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub fiber: usize,
    pub length: u64,
}

/// Point `p_{k,c}` of the canonical prism in `Z^n`.
fn prism_point(n: usize, k: usize, c: u64) -> LatticePoint {
    let base = if k == 0 {
        LatticePoint::origin(n)
    } else {
        LatticePoint::unit(n, k - 1)
    };
    base.add(&LatticePoint::unit(n, n - 1).scale(&Int::from(c)))
}

/// Triangulation of `lawrence_prism(h)` encoded by `word`, with indices into
/// the sorted lattice points of the prism.
pub fn prism_word_triangulation(h: &Heights, word: &[Letter]) -> Result<Triangulation> {
    let n = h.len();
    let mut sums = vec![0u64; n];
    for l in word {
        if l.fiber >= n || l.length == 0 {
            return Err(Error::InvalidInput(format!("bad letter {l:?} for {n} fibers")));
        }
        sums[l.fiber] += l.length;
    }
    if sums != h.as_slice() {
        return Err(Error::InvalidInput(format!(
            "letter lengths per fiber {sums:?} do not match heights {:?}",
            h.as_slice()
        )));
    }
    let cfg = PointConfig::new(&lawrence_prism(h))?;
    let index = |p: LatticePoint| cfg.index_of(&p).expect("point of the prism");
    let mut cursor = vec![0u64; n];
    let mut simplices = Vec::with_capacity(word.len());
    for l in word {
        let mut s: Vec<usize> = (0..n).map(|k| index(prism_point(n, k, cursor[k]))).collect();
        cursor[l.fiber] += l.length;
        s.push(index(prism_point(n, l.fiber, cursor[l.fiber])));
        simplices.push(s);
    }
    Ok(Triangulation::new(simplices))
}

/// Every valid word for `h`, in lexicographic order.
pub fn all_words(h: &Heights) -> Vec<Vec<Letter>> {
    fn go(rest: &mut [u64], word: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if rest.iter().all(|&r| r == 0) {
            out.push(word.clone());
            return;
        }
        for k in 0..rest.len() {
            for j in 1..=rest[k] {
                rest[k] -= j;
                word.push(Letter { fiber: k, length: j });
                go(rest, word, out);
                word.pop();
                rest[k] += j;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut h.as_slice().to_vec(), &mut Vec::new(), &mut out);
    out
}

/// `Σ (l_1 + ... + l_n)! / (l_1! ... l_n!) · Π C(h_i - 1, l_i - 1)` over
/// `1 <= l_i <= h_i`, fibers of height zero being skipped.
pub fn count_formula(h: &Heights) -> Int {
    let hs: Vec<u64> = h.as_slice().iter().copied().filter(|&x| x > 0).collect();
    let mut factorials: HashMap<u64, Int> = HashMap::new();
    let mut fact = |m: u64| -> Int {
        factorials
            .entry(m)
            .or_insert_with(|| (1..=m).fold(Int::one(), |acc, i| acc * Int::from(i)))
            .clone()
    };
    let mut total = Int::from(0);
    let mut l = vec![1u64; hs.len()];
    loop {
        let sum: u64 = l.iter().sum();
        let mut term = fact(sum);
        for &li in &l {
            term /= fact(li);
        }
        for (&li, &hi) in l.iter().zip(&hs) {
            term *= binomial(hi as i64 - 1, li as i64 - 1);
        }
        total += term;
        let mut i = 0;
        loop {
            if i == l.len() {
                return total;
            }
            if l[i] < hs[i] {
                l[i] += 1;
                break;
            }
            l[i] = 1;
            i += 1;
        }
    }
}
