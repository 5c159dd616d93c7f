use rayon::prelude::*;

use super::field::FieldElem;
use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 30;

/// A function from subsets of `0..r` (as bitmasks) to field elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetTable {
    r: usize,
    data: Vec<FieldElem>,
}

impl SubsetTable {
    pub fn zeros(r: usize) -> Result<Self> {
        if r > MAX_GROUND {
            return Err(Error::Capacity { what: "subset table ground size", limit: MAX_GROUND, got: r });
        }
        Ok(SubsetTable {
            r,
            data: vec![FieldElem::ZERO; 1 << r],
        })
    }

    pub fn from_vec(r: usize, data: Vec<FieldElem>) -> Result<Self> {
        if r > MAX_GROUND {
            return Err(Error::Capacity { what: "subset table ground size", limit: MAX_GROUND, got: r });
        }
        if data.len() != 1 << r {
            return Err(Error::Invalid(format!("table of length {} over ground size {r}", data.len())));
        }
        Ok(SubsetTable { r, data })
    }

    pub fn ground(&self) -> usize {
        self.r
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn values_mut(&mut self) -> &mut [FieldElem] {
        &mut self.data
    }

    pub fn into_values(self) -> Vec<FieldElem> {
        self.data
    }
}

impl std::ops::Index<usize> for SubsetTable {
    type Output = FieldElem;
    fn index(&self, s: usize) -> &FieldElem {
        &self.data[s]
    }
}

/// `out[S] = sum over A ⊆ S of t[A]`.
pub fn fast_zeta(t: &SubsetTable) -> SubsetTable {
    let mut out = t.clone();
    zeta_in_place(&mut out.data);
    out
}

/// Yates' butterfly over a slice of length `2^r`.
pub fn zeta_in_place(a: &mut [FieldElem]) {
    debug_assert!(a.len().is_power_of_two());
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in hi.iter_mut().zip(lo.iter()) {
                *x += *y;
            }
        }
        h <<= 1;
    }
}

/// Sum of `eval(I)` over all subsets `I` of `0..r`. Subsets are evaluated
/// on the rayon pool; the XOR reduction is order-independent.
pub fn sieve_subsets<F>(r: usize, eval: F) -> Result<FieldElem>
where
    F: Fn(u64) -> Result<FieldElem> + Sync,
{
    if r >= 63 {
        return Err(Error::Capacity { what: "sieve ground size", limit: 62, got: r });
    }
    (0..1u64 << r)
        .into_par_iter()
        .map(&eval)
        .try_reduce(|| FieldElem::ZERO, |a, b| Ok(a + b))
}
