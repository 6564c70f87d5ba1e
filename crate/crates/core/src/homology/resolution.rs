use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::fpmodule::{column_degree, Degree};
use super::FPModule;
use crate::algebra::{Monomial, PolyMatrix, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{kernel, Column, QuotientRing, SubmoduleGB};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Minimality {
    Minimal,
    /// Input was not homogeneous; the resolution is valid but graded
    /// Nakayama does not certify minimality.
    NotCertified,
}

impl fmt::Display for Minimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minimality::Minimal => write!(f, "minimal"),
            Minimality::NotCertified => write!(f, "minimality not certified"),
        }
    }
}

/// `0 <- F_0 <- F_1 <- ... <- F_L` with `d_i : F_i -> F_{i-1}`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Arc<QuotientRing>,
    ranks: Vec<usize>,
    maps: Vec<PolyMatrix>,
    degrees: Option<Vec<Vec<i64>>>,
    minimality: Minimality,
    complete: bool,
}

/// Outcome of re-checking a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionCheck {
    pub composition_zero: bool,
    pub exact: bool,
    pub no_unit_entries: bool,
}

impl ResolutionCheck {
    pub fn ok(&self) -> bool {
        self.composition_zero && self.exact && self.no_unit_entries
    }
}

/// Resolves `module`, stopping after `max_length` maps or when a kernel
/// vanishes. Over a proper quotient ring a bound is required.
pub fn free_resolution(module: &FPModule, max_length: Option<usize>) -> Result<FreeResolution> {
    let ring = module.ring().clone();
    if max_length.is_none() && !ring.is_polynomial_ring() {
        return Err(Error::InvalidArgument(
            "resolutions over a quotient ring need a length bound".into(),
        ));
    }
    let m = module.minimize();
    let grading = m.grading();
    let minimality = if grading.is_some() {
        Minimality::Minimal
    } else {
        Minimality::NotCertified
    };
    let mut ranks = vec![m.generator_count()];
    let mut maps = Vec::new();
    let mut degrees = grading.map(|g| vec![g]);
    let mut cols = prune(&ring, m.generator_count(), m.relations().to_vec(), degrees.as_ref().map(|d| &d[0][..]));
    let mut complete = false;
    loop {
        if cols.is_empty() {
            complete = true;
            break;
        }
        if max_length.is_some_and(|l| maps.len() >= l) {
            break;
        }
        let rows = *ranks.last().expect("F_0");
        let col_degrees: Option<Vec<i64>> = degrees.as_ref().map(|d| {
            let row_deg = d.last().expect("degrees");
            cols.iter()
                .map(|c| match column_degree(c, row_deg) {
                    Degree::Homogeneous(k) => k,
                    _ => unreachable!("graded kernels are homogeneous"),
                })
                .collect()
        });
        maps.push(PolyMatrix::from_columns(ring.ambient(), rows, &cols));
        ranks.push(cols.len());
        let next = kernel(&ring, rows, &cols, &[], col_degrees.as_deref())?;
        if let (Some(d), Some(cd)) = (degrees.as_mut(), col_degrees) {
            d.push(cd);
        }
        let row_deg = degrees.as_ref().map(|d| d.last().expect("degrees").clone());
        cols = prune(&ring, cols.len(), next, row_deg.as_deref());
    }
    Ok(FreeResolution {
        ring,
        ranks,
        maps,
        degrees,
        minimality,
        complete,
    })
}

/// Drops columns lying in the span of the others. With `degrees`, columns
/// are processed by increasing degree and compared by linear algebra on
/// normal forms, which yields a minimal generating set.
fn prune(ring: &Arc<QuotientRing>, rank: usize, cols: Vec<Column>, degrees: Option<&[i64]>) -> Vec<Column> {
    let cols: Vec<Column> = cols.into_iter().filter(|c| c.iter().any(|p| !p.is_zero())).collect();
    match degrees {
        Some(w) => prune_graded(ring, rank, cols, w),
        None => {
            let mut kept: Vec<Column> = Vec::new();
            for (j, c) in cols.iter().enumerate() {
                let mut others = kept.clone();
                others.extend(cols[j + 1..].iter().cloned());
                let span = SubmoduleGB::new(ring, rank, others).expect("shapes");
                if !span.contains(c).expect("rank") {
                    kept.push(c.clone());
                }
            }
            kept
        }
    }
}

fn prune_graded(ring: &Arc<QuotientRing>, rank: usize, cols: Vec<Column>, w: &[i64]) -> Vec<Column> {
    let mut by_degree: BTreeMap<i64, Vec<Column>> = BTreeMap::new();
    for c in cols {
        match column_degree(&c, w) {
            Degree::Homogeneous(d) => by_degree.entry(d).or_default().push(c),
            Degree::Zero => {}
            Degree::Mixed => unreachable!("graded input"),
        }
    }
    let mut kept: Vec<Column> = Vec::new();
    for (_, group) in by_degree {
        let lower = SubmoduleGB::new(ring, rank, kept.clone()).expect("shapes");
        let mut tracker = Independence::default();
        for c in group {
            let nf = lower.normal_form(&c).expect("rank");
            let coords: HashMap<(usize, Monomial), Scalar> = nf
                .iter()
                .enumerate()
                .flat_map(|(i, p)| p.terms().iter().map(move |(m, a)| ((i, m.clone()), a.clone())))
                .collect();
            if tracker.insert(coords) {
                kept.push(c);
            }
        }
    }
    // Highest degree first; the next step's rows follow this order.
    kept.sort_by_key(|c| match column_degree(c, w) {
        Degree::Homogeneous(d) => std::cmp::Reverse(d),
        _ => std::cmp::Reverse(i64::MIN),
    });
    kept
}

/// Incremental Gaussian elimination over the coefficient field.
pub(crate) struct Independence<K: std::hash::Hash + Eq + Clone + Ord> {
    rows: Vec<(K, HashMap<K, Scalar>)>,
}

impl<K: std::hash::Hash + Eq + Clone + Ord> Default for Independence<K> {
    fn default() -> Self {
        Independence { rows: Vec::new() }
    }
}

impl<K: std::hash::Hash + Eq + Clone + Ord> Independence<K> {
    /// Adds a vector; returns false when it is dependent on earlier ones.
    pub fn insert(&mut self, mut v: HashMap<K, Scalar>) -> bool {
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, a) in row {
                    let entry = v.entry(k.clone()).or_insert_with(|| a.field().zero());
                    *entry = &*entry - &(&c * a);
                }
                v.retain(|_, a| !a.is_zero());
            }
        }
        let Some(pivot) = v.keys().max().cloned() else { return false };
        let inv = v[&pivot].inverse().expect("nonzero");
        let row: HashMap<K, Scalar> = v.into_iter().map(|(k, a)| (k, &a * &inv)).collect();
        // keep earlier rows reduced against the new pivot
        for (_, r) in &mut self.rows {
            if let Some(c) = r.get(&pivot).cloned() {
                for (k, a) in &row {
                    let entry = r.entry(k.clone()).or_insert_with(|| a.field().zero());
                    *entry = &*entry - &(&c * a);
                }
                r.retain(|_, a| !a.is_zero());
            }
        }
        self.rows.push((pivot, row));
        true
    }
}

impl FreeResolution {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    /// Ranks of `F_0, ..., F_L`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_1, ..., d_L`.
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Generator degrees of each `F_i`, when graded.
    pub fn degrees(&self) -> Option<&[Vec<i64>]> {
        self.degrees.as_deref()
    }

    pub fn minimality(&self) -> Minimality {
        self.minimality
    }

    /// Whether the last kernel vanished (the resolution is finite and done).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Graded Betti numbers `(i, degree) -> count`.
    pub fn graded_betti(&self) -> Option<BTreeMap<(usize, i64), usize>> {
        let degrees = self.degrees.as_ref()?;
        let mut out = BTreeMap::new();
        for (i, ds) in degrees.iter().enumerate() {
            for &d in ds {
                *out.entry((i, d)).or_insert(0) += 1;
            }
        }
        Some(out)
    }

    /// Re-checks `d_i d_{i+1} = 0`, exactness at interior terms and, for
    /// minimal resolutions, the absence of unit entries.
    pub fn verify(&self) -> Result<ResolutionCheck> {
        let mut composition_zero = true;
        for w in self.maps.windows(2) {
            let prod = w[0].mul(&w[1])?;
            if prod.columns().iter().flatten().any(|p| !self.ring.reduce(p).is_zero()) {
                composition_zero = false;
            }
        }
        let mut exact = true;
        for i in 0..self.maps.len().saturating_sub(1) {
            let d = &self.maps[i];
            let ker = kernel(&self.ring, d.rows(), &d.columns(), &[], None)?;
            let next = &self.maps[i + 1];
            let image = SubmoduleGB::new(&self.ring, next.rows(), next.columns())?;
            for c in &ker {
                if !image.contains(c)? {
                    exact = false;
                }
            }
        }
        if self.complete {
            if let Some(last) = self.maps.last() {
                if !kernel(&self.ring, last.rows(), &last.columns(), &[], None)?.is_empty() {
                    exact = false;
                }
            }
        }
        let no_unit_entries = self.minimality == Minimality::NotCertified
            || self
                .maps
                .iter()
                .all(|m| m.columns().iter().flatten().all(|p| p.constant_coeff().is_zero()));
        Ok(ResolutionCheck {
            composition_zero,
            exact,
            no_unit_entries,
        })
    }
}

impl fmt::Display for FreeResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ranks {:?} ({})", self.ranks, self.minimality)?;
        for (i, m) in self.maps.iter().enumerate() {
            writeln!(f, "d{} : F{} -> F{} rank {} -> {}", i + 1, i + 1, i, self.ranks[i + 1], self.ranks[i])?;
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `(depth, pd)` of `S/I` over the ambient polynomial ring `S`, where
/// `depth = n - pd`.
pub fn depth_and_pd(ring: &Arc<QuotientRing>) -> Result<(usize, usize)> {
    if !ring.is_homogeneous() {
        return Err(Error::NotHomogeneous("depth and projective dimension"));
    }
    let s = QuotientRing::polynomial(ring.ambient());
    let rels = ring.defining_basis().iter().map(|g| vec![g.clone()]).collect();
    let module = FPModule::new(&s, 1, rels)?.with_twists(vec![0])?;
    module_depth_and_pd(&module)
}

/// `(depth, pd)` of a graded module over a polynomial ring.
pub fn module_depth_and_pd(module: &FPModule) -> Result<(usize, usize)> {
    if !module.ring().is_polynomial_ring() {
        return Err(Error::QuotientUnsupported("depth via Auslander-Buchsbaum"));
    }
    if !module.is_graded() {
        return Err(Error::NotHomogeneous("depth and projective dimension"));
    }
    let n = module.ring().nvars();
    let res = free_resolution(module, None)?;
    let pd = res.length();
    Ok((n.saturating_sub(pd), pd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, MonomialOrder, PolyRing};

    #[test]
    fn residue_field_is_koszul() {
        let a = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex);
        let r = QuotientRing::polynomial(&a);
        let res = free_resolution(&FPModule::residue_field(&r), None).unwrap();
        assert_eq!(res.ranks(), &[1, 2, 1]);
        assert!(res.verify().unwrap().ok());
        assert_eq!(res.minimality(), Minimality::Minimal);
    }

    #[test]
    fn free_module_has_length_zero() {
        let a = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex);
        let r = QuotientRing::new(&a, vec![a.parse("x^5").unwrap(), a.parse("x*y").unwrap()]).unwrap();
        let res = free_resolution(&FPModule::free(&r, 1), Some(3)).unwrap();
        assert_eq!(res.length(), 0);
        assert!(free_resolution(&FPModule::free(&r, 1), None).is_err());
    }

    #[test]
    fn independence_tracker() {
        let f = Field::Rational;
        let mut t: Independence<u32> = Independence::default();
        let v = |pairs: &[(u32, i64)]| pairs.iter().map(|&(k, a)| (k, f.from_i64(a))).collect();
        assert!(t.insert(v(&[(0, 1), (1, 2)])));
        assert!(t.insert(v(&[(1, 1)])));
        assert!(!t.insert(v(&[(0, 3), (1, 1)])));
        assert_eq!(t.rows.len(), 2);
    }

    #[test]
    fn depths() {
        let a = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex);
        let r = QuotientRing::new(&a, vec![a.parse("x^5").unwrap(), a.parse("x*y").unwrap()]).unwrap();
        assert_eq!(depth_and_pd(&r).unwrap(), (0, 2));
        let b = PolyRing::new(Field::Rational, ["x"], MonomialOrder::GrevLex);
        assert_eq!(depth_and_pd(&QuotientRing::polynomial(&b)).unwrap(), (1, 0));
    }
}
