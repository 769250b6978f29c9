//! Fraction-free sparse Gaussian elimination over the integers.
//!
//! Rational vectors are scaled to primitive integer vectors first; row
//! operations `r ← (p/g)·r − (a/g)·pivot` keep everything integral and each
//! result is divided by its content. The pivot for a leading coordinate is the
//! candidate with the smallest-magnitude leading entry (ties: fewest nonzeros,
//! then first inserted), so the elimination is deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Sparse integer vector, sorted by coordinate, no explicit zeros.
pub(crate) type IntVec = Vec<(usize, BigInt)>;

/// Scales a sparse rational vector to a primitive integer vector.
pub(crate) fn to_primitive(v: &[(usize, Q)]) -> IntVec {
    let mut lcm = BigInt::one();
    for (_, x) in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: IntVec = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (*i, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut IntVec) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in v.iter_mut() {
        *x /= &g;
    }
}

/// `s·r − t·pivot`, dropping zeros.
fn combine(r: &IntVec, s: &BigInt, pivot: &IntVec, t: &BigInt) -> IntVec {
    let mut out = Vec::with_capacity(r.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < pivot.len() {
        let take_r = j >= pivot.len() || (i < r.len() && r[i].0 < pivot[j].0);
        let take_p = i >= r.len() || (j < pivot.len() && pivot[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, s * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, -(t * &pivot[j].1)));
            j += 1;
        } else {
            let v = s * &r[i].1 - t * &pivot[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form of a set of vectors: one vector per pivot coordinate,
/// sorted by leading coordinate.
pub(crate) struct Echelon {
    pub rows: Vec<IntVec>,
}

impl Echelon {
    pub fn new(vectors: Vec<IntVec>) -> Echelon {
        let mut buckets: BTreeMap<usize, Vec<(usize, IntVec)>> = BTreeMap::new();
        for (id, v) in vectors.into_iter().enumerate() {
            if let Some(&(lead, _)) = v.first() {
                buckets.entry(lead).or_default().push((id, v));
            }
        }
        let mut rows = Vec::new();
        while let Some((_, mut bucket)) = buckets.pop_first() {
            let best = (0..bucket.len())
                .min_by(|&a, &b| {
                    let (ia, va) = &bucket[a];
                    let (ib, vb) = &bucket[b];
                    va[0]
                        .1
                        .abs()
                        .cmp(&vb[0].1.abs())
                        .then(va.len().cmp(&vb.len()))
                        .then(ia.cmp(ib))
                })
                .expect("bucket is nonempty");
            let (_, pivot) = bucket.swap_remove(best);
            let p = pivot[0].1.clone();
            for (id, r) in bucket {
                let a = &r[0].1;
                let g = p.gcd(a);
                let mut reduced = combine(&r, &(&p / &g), &pivot, &(a / &g));
                if let Some(&(lead, _)) = reduced.first() {
                    make_primitive(&mut reduced);
                    buckets.entry(lead).or_default().push((id, reduced));
                }
            }
            rows.push(pivot);
        }
        Echelon { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis of `{x : ⟨row, x⟩ = 0 for every row}` in `dim` coordinates, one
    /// primitive integer vector per free coordinate.
    pub fn orthogonal_complement(&self, dim: usize) -> Vec<IntVec> {
        let mut is_pivot = vec![false; dim];
        for r in &self.rows {
            is_pivot[r[0].0] = true;
        }
        let mut basis = Vec::new();
        for free in (0..dim).filter(|&c| !is_pivot[c]) {
            let mut x: BTreeMap<usize, Q> = BTreeMap::from([(free, Q::one())]);
            for row in self.rows.iter().rev() {
                let (lead, ref lead_val) = row[0];
                let mut acc = Q::zero();
                for (j, a) in &row[1..] {
                    if let Some(xj) = x.get(j) {
                        acc += Q::from_integer(a.clone()) * xj;
                    }
                }
                if !acc.is_zero() {
                    x.insert(lead, -acc / Q::from_integer(lead_val.clone()));
                }
            }
            let v: Vec<(usize, Q)> = x.into_iter().collect();
            basis.push(to_primitive(&v));
        }
        basis
    }
}
