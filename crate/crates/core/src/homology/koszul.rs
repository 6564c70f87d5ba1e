use std::sync::Arc;

use super::fpmodule::unit_column;
use super::Subquotient;
use crate::algebra::{subsets, PolyMatrix, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{kernel, QuotientRing};

/// Koszul complex on `f_1..f_c`. Step `i` has basis the `i`-subsets of
/// `0..c` in lexicographic order; `d(e_S) = sum_k (-1)^k f_{s_k} e_{S - s_k}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    ring: Arc<QuotientRing>,
    seq: Vec<Polynomial>,
    bases: Vec<Vec<Vec<usize>>>,
    /// `maps[i - 1] = d_i : K_i -> K_{i-1}`.
    maps: Vec<PolyMatrix>,
}

impl KoszulComplex {
    pub fn new(ring: &Arc<QuotientRing>, seq: Vec<Polynomial>) -> Result<KoszulComplex> {
        let a = ring.ambient();
        if seq.iter().any(|f| !f.ring().same_as(a)) {
            return Err(Error::RingMismatch);
        }
        let seq: Vec<Polynomial> = seq.iter().map(|f| ring.reduce(f)).collect();
        let c = seq.len();
        let bases: Vec<Vec<Vec<usize>>> = (0..=c).map(|i| subsets(c, i)).collect();
        let mut maps = Vec::with_capacity(c);
        for i in 1..=c {
            let (src, dst) = (&bases[i], &bases[i - 1]);
            let mut m = PolyMatrix::zero(a, dst.len(), src.len());
            for (j, s) in src.iter().enumerate() {
                for (k, &elt) in s.iter().enumerate() {
                    let face: Vec<usize> = s.iter().copied().filter(|&t| t != elt).collect();
                    let row = dst.binary_search(&face).expect("faces are listed");
                    let entry = if k % 2 == 0 { seq[elt].clone() } else { -&seq[elt] };
                    m.set(row, j, entry);
                }
            }
            maps.push(m);
        }
        Ok(KoszulComplex {
            ring: ring.clone(),
            seq,
            bases,
            maps,
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.seq
    }

    pub fn rank(&self, i: usize) -> usize {
        self.bases.get(i).map_or(0, Vec::len)
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Degrees of the basis of step `i` when the ring and the sequence are
    /// homogeneous.
    fn weights(&self, i: usize) -> Option<Vec<i64>> {
        if !self.ring.is_homogeneous() {
            return None;
        }
        let mut degs = Vec::with_capacity(self.seq.len());
        for f in &self.seq {
            if f.is_zero() {
                degs.push(0);
            } else if f.is_homogeneous() {
                degs.push(f.total_degree().expect("nonzero") as i64);
            } else {
                return None;
            }
        }
        Some(self.bases[i].iter().map(|s| s.iter().map(|&k| degs[k]).sum()).collect())
    }

    /// `H_i`, as a subquotient of `K_i`.
    pub fn homology(&self, i: usize) -> Result<Subquotient> {
        let c = self.seq.len();
        if i > c {
            return Err(Error::InvalidArgument(format!(
                "Koszul homology H_{i} of a sequence of length {c}"
            )));
        }
        let rank = self.rank(i);
        let weights = self.weights(i);
        let k = if i == 0 {
            (0..rank).map(|j| unit_column(&self.ring, rank, j)).collect()
        } else {
            let d = &self.maps[i - 1];
            kernel(&self.ring, d.rows(), &d.columns(), &[], weights.as_deref())?
        };
        let b = if i < c { self.maps[i].columns() } else { Vec::new() };
        Ok(Subquotient::new(&self.ring, rank, k, b)?.with_weights(weights))
    }
}

pub fn koszul_homology(seq: &[Polynomial], ring: &Arc<QuotientRing>, i: usize) -> Result<Subquotient> {
    KoszulComplex::new(ring, seq.to_vec())?.homology(i)
}
