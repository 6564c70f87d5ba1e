use std::sync::Arc;

use super::fpmodule::unit_column;
use super::{free_resolution, FPModule, FreeResolution, Subquotient};
use crate::algebra::{PolyMatrix, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{kernel, Column, Ideal, QuotientRing};

/// `Hom(F, N)`: term `i` is `N^{r_i}`, realized inside `R^{r_i g}` where
/// `g` is the number of generators of `N`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    ring: Arc<QuotientRing>,
    ranks: Vec<usize>,
    target: FPModule,
    /// `delta_i : N^{r_{i-1}} -> N^{r_i}`, precomposition with `d_i`.
    maps: Vec<PolyMatrix>,
    weights: Option<Vec<Vec<i64>>>,
    complete: bool,
}

pub fn hom_complex(resolution: &FreeResolution, target: &FPModule) -> Result<HomComplex> {
    let ring = resolution.ring().clone();
    if !ring.same_as(target.ring()) {
        return Err(Error::RingMismatch);
    }
    let g = target.generator_count();
    let a = ring.ambient();
    let mut maps = Vec::new();
    for d in resolution.maps() {
        // d : R^{cols} -> R^{rows}; delta[(j, s), (k, t)] = d[k][j] when s == t
        let mut delta = PolyMatrix::zero(a, d.cols() * g, d.rows() * g);
        for k in 0..d.rows() {
            for j in 0..d.cols() {
                let e = d.get(k, j);
                if e.is_zero() {
                    continue;
                }
                for s in 0..g {
                    delta.set(j * g + s, k * g + s, e.clone());
                }
            }
        }
        maps.push(delta);
    }
    let weights = match (resolution.degrees(), target.grading()) {
        (Some(fd), Some(nd)) => Some(
            fd.iter()
                .map(|ds| ds.iter().flat_map(|&d| nd.iter().map(move |&t| t - d)).collect())
                .collect(),
        ),
        _ => None,
    };
    Ok(HomComplex {
        ring,
        ranks: resolution.ranks().to_vec(),
        target: target.clone(),
        maps,
        weights,
        complete: resolution.is_complete(),
    })
}

impl HomComplex {
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// The maps with entries reduced modulo the annihilating ideal when the
    /// target is cyclic (`N = R/J`); unchanged otherwise.
    pub fn display_maps(&self) -> Vec<PolyMatrix> {
        if self.target.generator_count() != 1 {
            return self.maps.clone();
        }
        let j = Ideal::new(&self.ring, self.target.relations().iter().map(|c| c[0].clone()).collect());
        self.maps
            .iter()
            .map(|m| m.map_entries(|p| j.normal_form(p).expect("same ring")))
            .collect()
    }

    fn block_relations(&self, copies: usize) -> Vec<Column> {
        let g = self.target.generator_count();
        let a = self.ring.ambient();
        let mut out = Vec::new();
        for k in 0..copies {
            for rel in self.target.relations() {
                let mut c = vec![a.zero(); copies * g];
                for (s, p) in rel.iter().enumerate() {
                    c[k * g + s] = p.clone();
                }
                out.push(c);
            }
        }
        out
    }

    /// Cohomology at term `n`.
    pub fn cohomology(&self, n: usize) -> Result<Subquotient> {
        let g = self.target.generator_count();
        let len = self.maps.len();
        if n > len {
            if self.complete {
                return Ok(Subquotient::zero(&self.ring));
            }
            return Err(Error::InvalidArgument(format!(
                "cohomology at {n} needs a resolution of length {}",
                n + 1
            )));
        }
        let rank = self.ranks[n] * g;
        let weights = self.weights.as_ref().map(|w| w[n].clone());
        let k = if n < len {
            let delta = &self.maps[n];
            let rels = self.block_relations(self.ranks[n + 1]);
            kernel(&self.ring, delta.rows(), &delta.columns(), &rels, weights.as_deref())?
        } else if self.complete {
            (0..rank).map(|i| unit_column(&self.ring, rank, i)).collect()
        } else {
            return Err(Error::InvalidArgument(format!(
                "cohomology at {n} needs a resolution of length {}",
                n + 1
            )));
        };
        let mut b = self.block_relations(self.ranks[n]);
        if n > 0 {
            b.extend(self.maps[n - 1].columns());
        }
        Ok(Subquotient::new(&self.ring, rank, k, b)?.with_weights(weights))
    }
}

/// `Ext^n_R(M, N)` as a subquotient of `N^{r_n}`.
pub fn ext_module(n: usize, m: &FPModule, target: &FPModule) -> Result<Subquotient> {
    if !m.ring().same_as(target.ring()) {
        return Err(Error::RingMismatch);
    }
    let res = free_resolution(m, Some(n + 1))?;
    hom_complex(&res, target)?.cohomology(n)
}

pub fn acts_zero(r: &Polynomial, e: &Subquotient) -> Result<bool> {
    e.acts_zero(r)
}

pub fn module_annihilator(e: &Subquotient) -> Result<Ideal> {
    e.annihilator()
}

impl FPModule {
    /// The module as the subquotient `R^g / relations`.
    pub fn as_subquotient(&self) -> Subquotient {
        let g = self.generator_count();
        let k = (0..g).map(|i| unit_column(self.ring(), g, i)).collect();
        Subquotient::new(self.ring(), g, k, self.relations().to_vec())
            .expect("relations lie in the free module")
            .with_weights(self.grading())
    }

    pub fn annihilator(&self) -> Result<Ideal> {
        self.as_subquotient().annihilator()
    }
}
