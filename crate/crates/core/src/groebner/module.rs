use std::sync::{Arc, OnceLock};

use super::engine::{Engine, Vector};
use super::QuotientRing;
use crate::algebra::{ModuleOrder, PolyMatrix, Polynomial};
use crate::error::{Error, Result};

/// Column vector of polynomials (an element of a free module).
pub type Column = Vec<Polynomial>;

/// A submodule of `R^r` with a lazily computed Gröbner basis of its lift
/// `span(columns) + I R^r` in the ambient free module (term over position).
#[derive(Clone, Debug)]
pub struct SubmoduleGB {
    ring: Arc<QuotientRing>,
    rank: usize,
    columns: Vec<Column>,
    basis: Arc<OnceLock<Vec<Vector>>>,
}

impl SubmoduleGB {
    pub fn new(ring: &Arc<QuotientRing>, rank: usize, columns: Vec<Column>) -> Result<SubmoduleGB> {
        for c in &columns {
            check_column(ring, rank, c)?;
        }
        let columns = columns
            .into_iter()
            .map(|c| reduce_column(ring, &c))
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        Ok(SubmoduleGB {
            ring: ring.clone(),
            rank,
            columns,
            basis: Arc::new(OnceLock::new()),
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    fn engine(&self) -> Engine<'_> {
        Engine::new(self.ring.ambient(), ModuleOrder::top(), vec![0; self.rank], self.rank)
    }

    pub(crate) fn basis_vectors(&self) -> &[Vector] {
        self.basis.get_or_init(|| {
            let e = self.engine();
            let mut gens: Vec<Vector> = self.columns.iter().map(|c| e.from_polys(c, 0)).collect();
            gens.extend(defining_columns(&e, &self.ring, self.rank, 0));
            e.groebner(gens)
        })
    }

    /// Reduced basis of the lift, as columns.
    pub fn lifted_basis(&self) -> Vec<Column> {
        let e = self.engine();
        self.basis_vectors().iter().map(|v| e.to_polys(v, 0, self.rank)).collect()
    }

    /// Lifted basis elements that are not multiples of defining generators
    /// in a single component.
    pub fn basis(&self) -> Vec<Column> {
        let lt_i: Vec<_> = self
            .ring
            .defining_basis()
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect();
        let e = self.engine();
        self.basis_vectors()
            .iter()
            .filter(|v| !lt_i.iter().any(|m| m.divides(&v[0].mon)))
            .map(|v| e.to_polys(v, 0, self.rank))
            .collect()
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Column> {
        check_column(&self.ring, self.rank, v)?;
        let e = self.engine();
        Ok(e.to_polys(&e.normal_form(e.from_polys(v, 0), self.basis_vectors()), 0, self.rank))
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(Polynomial::is_zero))
    }

    pub fn contains_all(&self, other: &SubmoduleGB) -> Result<bool> {
        if other.rank != self.rank || !other.ring.same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        for c in &other.columns {
            if !self.contains(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &SubmoduleGB) -> Result<bool> {
        Ok(self.contains_all(other)? && other.contains_all(self)?)
    }

    /// `dim_k (R^r / U)_d` for `d` in `lo..=hi`, where generator `i` has
    /// degree `weights[i]`. Meaningful when everything is homogeneous.
    pub fn quotient_hilbert(&self, weights: &[i64], lo: i64, hi: i64) -> Vec<usize> {
        let n = self.ring.nvars();
        let leading: Vec<(usize, &crate::algebra::Monomial)> =
            self.basis_vectors().iter().map(|v| (v[0].comp, &v[0].mon)).collect();
        (lo..=hi)
            .map(|d| {
                let mut count = 0;
                for (i, &w) in weights.iter().enumerate().take(self.rank) {
                    let deg = d - w;
                    if deg < 0 {
                        continue;
                    }
                    for m in monomials_of_degree(n, deg as u32) {
                        if !leading.iter().any(|(c, l)| *c == i && l.divides(&m)) {
                            count += 1;
                        }
                    }
                }
                count
            })
            .collect()
    }

    /// Zero as a submodule of `R^r` (every column lies in `I R^r`).
    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<crate::algebra::Monomial> {
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<crate::algebra::Monomial>) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left;
            out.push(crate::algebra::Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(crate::algebra::Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

fn check_column(ring: &QuotientRing, rank: usize, c: &[Polynomial]) -> Result<()> {
    if c.len() != rank {
        return Err(Error::InvalidArgument(format!(
            "column of length {} in a free module of rank {rank}",
            c.len()
        )));
    }
    if c.iter().any(|p| !p.ring().same_as(ring.ambient())) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

pub(crate) fn reduce_column(ring: &QuotientRing, c: &[Polynomial]) -> Column {
    c.iter().map(|p| ring.reduce(p)).collect()
}

/// `g e_i` for every defining basis element `g` and `i in offset..offset+rank`.
fn defining_columns(e: &Engine<'_>, ring: &QuotientRing, rank: usize, offset: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..rank {
        for g in ring.defining_basis() {
            let mut v = e.from_poly(g);
            for t in &mut v {
                t.comp = i + offset;
            }
            out.push(v);
        }
    }
    out
}

/// Generators of the kernel of `R^m -> R^r / span(relations)` sending
/// `e_j` to `map_cols[j]`.
///
/// Each map column is augmented by a tracking unit vector; a Gröbner basis
/// in an order that ranks every target component above every tracking
/// component isolates the relations whose target part vanishes.
pub fn kernel(
    ring: &Arc<QuotientRing>,
    rows: usize,
    map_cols: &[Column],
    relations: &[Column],
    weights: Option<&[i64]>,
) -> Result<Vec<Column>> {
    for c in map_cols.iter().chain(relations) {
        check_column(ring, rows, c)?;
    }
    let m = map_cols.len();
    let a = ring.ambient();
    let mut w = vec![0; rows + m];
    if let Some(wt) = weights {
        // `weights` are the degrees of the source generators.
        for (j, &d) in wt.iter().enumerate().take(m) {
            w[rows + j] = d;
        }
    }
    let e = Engine::new(a, ModuleOrder::eliminating(rows, None), w, rows + m);
    let mut gens = Vec::with_capacity(m + relations.len());
    for (j, c) in map_cols.iter().enumerate() {
        let mut v = c.clone();
        v.extend((0..m).map(|k| if k == j { a.one() } else { a.zero() }));
        gens.push(e.from_polys(&v, 0));
    }
    for r in relations {
        gens.push(e.from_polys(r, 0));
    }
    gens.extend(defining_columns(&e, ring, rows, 0));
    let basis = e.groebner(gens);
    Ok(basis
        .iter()
        .filter(|v| v[0].comp >= rows)
        .map(|v| reduce_column(ring, &e.to_polys(v, rows, m)))
        .filter(|c| c.iter().any(|p| !p.is_zero()))
        .collect())
}

/// Columns generating the syzygy module of the columns of `m` over `ring`.
pub fn syzygies(m: &PolyMatrix, ring: &Arc<QuotientRing>) -> Result<PolyMatrix> {
    if !m.ring().same_as(ring.ambient()) {
        return Err(Error::RingMismatch);
    }
    let cols = kernel(ring, m.rows(), &m.columns(), &[], None)?;
    Ok(PolyMatrix::from_columns(ring.ambient(), m.cols(), &cols))
}
