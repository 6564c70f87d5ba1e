use std::fmt;
use std::sync::Arc;

use crate::algebra::{PolyMatrix, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{kernel, reduce_column, Column, Ideal, QuotientRing, SubmoduleGB};

/// Homogeneity of a column with respect to row degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Degree {
    Zero,
    Homogeneous(i64),
    Mixed,
}

pub(crate) fn column_degree(col: &[Polynomial], row_degrees: &[i64]) -> Degree {
    let mut found: Option<i64> = None;
    for (p, &w) in col.iter().zip(row_degrees) {
        for (m, _) in p.terms() {
            let d = m.degree() as i64 + w;
            match found {
                None => found = Some(d),
                Some(e) if e != d => return Degree::Mixed,
                _ => {}
            }
        }
    }
    found.map_or(Degree::Zero, Degree::Homogeneous)
}

/// Finitely presented module `coker(R^m -> R^g)`.
#[derive(Clone, Debug)]
pub struct FPModule {
    ring: Arc<QuotientRing>,
    gens: usize,
    relations: Vec<Column>,
    twists: Option<Vec<i64>>,
}

impl FPModule {
    pub fn new(ring: &Arc<QuotientRing>, gens: usize, relations: Vec<Column>) -> Result<FPModule> {
        for c in &relations {
            if c.len() != gens {
                return Err(Error::InvalidArgument(format!(
                    "relation of length {} for a module with {gens} generators",
                    c.len()
                )));
            }
            if c.iter().any(|p| !p.ring().same_as(ring.ambient())) {
                return Err(Error::RingMismatch);
            }
        }
        let relations = relations
            .iter()
            .map(|c| reduce_column(ring, c))
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        Ok(FPModule {
            ring: ring.clone(),
            gens,
            relations,
            twists: None,
        })
    }

    /// Cokernel of a matrix whose rows index the generators.
    pub fn from_matrix(ring: &Arc<QuotientRing>, m: &PolyMatrix) -> Result<FPModule> {
        if !m.ring().same_as(ring.ambient()) {
            return Err(Error::RingMismatch);
        }
        FPModule::new(ring, m.rows(), m.columns())
    }

    pub fn free(ring: &Arc<QuotientRing>, rank: usize) -> FPModule {
        FPModule::new(ring, rank, Vec::new()).expect("no relations")
    }

    /// `R/J`.
    pub fn cyclic(ideal: &Ideal) -> FPModule {
        let ring = ideal.ring();
        FPModule::new(ring, 1, ideal.generators().iter().map(|g| vec![g.clone()]).collect())
            .expect("rank one")
            .with_twists(vec![0])
            .expect("one generator")
    }

    /// The residue field `R/(x_1, ..., x_n)`.
    pub fn residue_field(ring: &Arc<QuotientRing>) -> FPModule {
        FPModule::cyclic(&ring.maximal_ideal())
    }

    /// The ideal `J` as a module: generators `g_j`, relations their syzygies.
    pub fn ideal_module(ideal: &Ideal) -> Result<FPModule> {
        let ring = ideal.ring();
        let gens = ideal.generators().to_vec();
        let row = vec![gens.clone()];
        let m = PolyMatrix::from_rows(ring.ambient(), row)?;
        let syz = kernel(ring, 1, &m.columns(), &[], None)?;
        let mut module = FPModule::new(ring, gens.len(), syz)?;
        if gens.iter().all(Polynomial::is_homogeneous) {
            module.twists = Some(gens.iter().map(|g| g.total_degree().unwrap_or(0) as i64).collect());
        }
        Ok(module)
    }

    pub fn with_twists(mut self, twists: Vec<i64>) -> Result<FPModule> {
        if twists.len() != self.gens {
            return Err(Error::InvalidArgument("one twist per generator".into()));
        }
        self.twists = Some(twists);
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[Column] {
        &self.relations
    }

    pub fn presentation(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.ring.ambient(), self.gens, &self.relations)
    }

    pub fn twists(&self) -> Option<&[i64]> {
        self.twists.as_deref()
    }

    /// Generator degrees making every relation homogeneous, when the ring
    /// is homogeneous and such degrees exist. Declared twists are checked,
    /// otherwise they are inferred (0 on the first generator of each
    /// connected block).
    pub fn grading(&self) -> Option<Vec<i64>> {
        if !self.ring.is_homogeneous() {
            return None;
        }
        if let Some(t) = &self.twists {
            return self
                .relations
                .iter()
                .all(|c| column_degree(c, t) != Degree::Mixed)
                .then(|| t.clone());
        }
        infer_twists(self.gens, &self.relations)
    }

    pub fn is_graded(&self) -> bool {
        self.grading().is_some()
    }

    /// Submodule of relations inside the free module on the generators.
    pub fn relation_module(&self) -> SubmoduleGB {
        SubmoduleGB::new(&self.ring, self.gens, self.relations.clone()).expect("checked at construction")
    }

    pub fn is_zero(&self) -> bool {
        let rel = self.relation_module();
        (0..self.gens).all(|i| rel.contains(&unit_column(&self.ring, self.gens, i)).expect("rank"))
    }

    /// Removes generators that a relation with a unit entry expresses in
    /// terms of the others.
    pub fn minimize(&self) -> FPModule {
        let mut gens: Vec<usize> = (0..self.gens).collect();
        let mut rels = self.relations.clone();
        loop {
            let pivot = rels.iter().enumerate().find_map(|(j, c)| {
                c.iter().position(|p| p.is_unit()).map(|i| (i, j))
            });
            let Some((i, j)) = pivot else { break };
            let col = rels.remove(j);
            let inv = col[i].constant_coeff().inverse().expect("unit");
            // e_i = -(1/a) sum_{k != i} col[k] e_k; substitute into the other relations.
            rels = rels
                .into_iter()
                .map(|c| {
                    let factor = c[i].scale(&inv);
                    let mut out: Column = Vec::with_capacity(c.len() - 1);
                    for (k, p) in c.iter().enumerate() {
                        if k != i {
                            out.push(self.ring.reduce(&(p - &(&factor * &col[k]))));
                        }
                    }
                    out
                })
                .filter(|c| c.iter().any(|p| !p.is_zero()))
                .collect();
            gens.remove(i);
        }
        let twists = self.twists.as_ref().map(|t| gens.iter().map(|&g| t[g]).collect());
        FPModule {
            ring: self.ring.clone(),
            gens: gens.len(),
            relations: rels,
            twists,
        }
    }

    /// Same module with an extra redundant generator (the first generator,
    /// or the sum of the first two) and a redundant relation.
    pub fn with_redundancy(&self) -> FPModule {
        let a = self.ring.ambient();
        let g = self.gens;
        if g == 0 {
            return self.clone();
        }
        // new generator e_g = e_0 (+ e_1); relation e_g - e_0 (- e_1) = 0
        let mut rels: Vec<Column> = self
            .relations
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.push(a.zero());
                c
            })
            .collect();
        let mut link = vec![a.zero(); g + 1];
        link[0] = -&a.one();
        if g > 1 {
            link[1] = -&a.one();
        }
        link[g] = a.one();
        rels.push(link);
        if let Some(first) = rels.first().cloned() {
            rels.push(first.iter().map(|p| p * &a.var(0)).collect());
        }
        let twists = self.twists.as_ref().and_then(|t| {
            if g > 1 && t[0] != t[1] {
                None
            } else {
                let mut t = t.clone();
                t.push(t[0]);
                Some(t)
            }
        });
        let mut m = FPModule::new(&self.ring, g + 1, rels).expect("shapes");
        m.twists = twists;
        m
    }
}

pub(crate) fn unit_column(ring: &QuotientRing, rank: usize, i: usize) -> Column {
    let a = ring.ambient();
    (0..rank).map(|k| if k == i { a.one() } else { a.zero() }).collect()
}

fn infer_twists(gens: usize, relations: &[Column]) -> Option<Vec<i64>> {
    let mut twist: Vec<Option<i64>> = vec![None; gens];
    // Propagate constraints until stable; each pass fixes at least one
    // block or finishes.
    loop {
        let mut changed = false;
        for c in relations {
            // every entry must be homogeneous on its own
            let degs: Vec<Option<i64>> = c
                .iter()
                .map(|p| {
                    if p.is_zero() {
                        None
                    } else if p.is_homogeneous() {
                        Some(p.total_degree().expect("nonzero") as i64)
                    } else {
                        Some(i64::MIN)
                    }
                })
                .collect();
            if degs.contains(&Some(i64::MIN)) {
                return None;
            }
            let target = c
                .iter()
                .enumerate()
                .find_map(|(i, _)| Some(degs[i]? + twist[i]?));
            let Some(target) = target else { continue };
            for i in 0..gens {
                if let Some(d) = degs[i] {
                    match twist[i] {
                        None => {
                            twist[i] = Some(target - d);
                            changed = true;
                        }
                        Some(t) if t + d != target => return None,
                        _ => {}
                    }
                }
            }
        }
        if !changed {
            if let Some(i) = twist.iter().position(Option::is_none) {
                twist[i] = Some(0);
                continue;
            }
            return Some(twist.into_iter().map(|t| t.expect("assigned")).collect());
        }
    }
}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker({} generators, {})", self.gens, self.presentation())
    }
}

/// `K / B` inside a free module `R^r`, with `B ⊆ K` certified at
/// construction.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ring: Arc<QuotientRing>,
    rank: usize,
    k: Vec<Column>,
    b: Vec<Column>,
    b_gb: SubmoduleGB,
    weights: Option<Vec<i64>>,
}

impl Subquotient {
    pub fn new(ring: &Arc<QuotientRing>, rank: usize, k: Vec<Column>, b: Vec<Column>) -> Result<Subquotient> {
        let k_gb = SubmoduleGB::new(ring, rank, k)?;
        let b_gb = SubmoduleGB::new(ring, rank, b)?;
        for c in b_gb.columns() {
            if !k_gb.contains(c)? {
                return Err(Error::InvalidArgument("boundary not contained in the cycles".into()));
            }
        }
        Ok(Subquotient {
            ring: ring.clone(),
            rank,
            k: k_gb.columns().to_vec(),
            b: b_gb.columns().to_vec(),
            b_gb,
            weights: None,
        })
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Subquotient {
        Subquotient::new(ring, 0, Vec::new(), Vec::new()).expect("empty")
    }

    pub(crate) fn with_weights(mut self, weights: Option<Vec<i64>>) -> Subquotient {
        self.weights = weights.filter(|w| w.len() == self.rank);
        self
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cycles(&self) -> &[Column] {
        &self.k
    }

    pub fn boundaries(&self) -> &[Column] {
        &self.b
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    /// Whether the class of `v` (an element of `K`) is zero.
    pub fn is_boundary(&self, v: &[Polynomial]) -> Result<bool> {
        self.b_gb.contains(v)
    }

    pub fn is_zero(&self) -> bool {
        self.k.iter().all(|c| self.b_gb.contains(c).expect("rank"))
    }

    /// `r K ⊆ B`.
    pub fn acts_zero(&self, r: &Polynomial) -> Result<bool> {
        if !r.ring().same_as(self.ring.ambient()) {
            return Err(Error::RingMismatch);
        }
        let r = self.ring.reduce(r);
        if r.is_zero() {
            return Ok(true);
        }
        for c in &self.k {
            let rc: Column = c.iter().map(|p| p * &r).collect();
            if !self.b_gb.contains(&rc)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Ann(K/B) = ∩_j (B : k_j)`.
    pub fn annihilator(&self) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for c in &self.k {
            if self.b_gb.contains(c)? {
                continue;
            }
            let colon = kernel(&self.ring, self.rank, std::slice::from_ref(c), &self.b, None)?;
            let ideal = Ideal::new(&self.ring, colon.into_iter().map(|v| v[0].clone()).collect());
            acc = acc.intersect(&ideal)?;
        }
        Ok(acc)
    }

    /// `dim_k (K/B)_d` for `d` in `lo..=hi`, when graded.
    pub fn hilbert_function(&self, lo: i64, hi: i64) -> Option<Vec<usize>> {
        let w = self.weights.clone()?;
        let k_gb = SubmoduleGB::new(&self.ring, self.rank, self.k.clone()).ok()?;
        let hk = k_gb.quotient_hilbert(&w, lo, hi);
        let hb = self.b_gb.quotient_hilbert(&w, lo, hi);
        Some(hb.iter().zip(&hk).map(|(b, k)| b - k).collect())
    }
}

impl fmt::Display for Subquotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.ring.ambient();
        write!(
            f,
            "subquotient of rank {}: K = {}, B = {}",
            self.rank,
            PolyMatrix::from_columns(a, self.rank, &self.k),
            PolyMatrix::from_columns(a, self.rank, &self.b)
        )
    }
}
