//! Oracles for integration tests. Everything here is plain linear algebra
//! over the coefficient field, truncated by degree, and never calls the
//! Gröbner engine.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use jacal::algebra::{Field, Monomial, MonomialOrder, PolyMatrix, PolyRing, Polynomial, Scalar};
use jacal::groebner::QuotientRing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// RNG seeded from `JACAL_SEED` (default 20240917).
pub fn rng(salt: u64) -> ChaCha8Rng {
    let seed = std::env::var("JACAL_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(20240917);
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn ring(field: Field, vars: &[&str], rels: &[&str]) -> Arc<QuotientRing> {
    let a = PolyRing::new(field, vars.iter().copied(), MonomialOrder::GrevLex);
    let rels = rels.iter().map(|s| a.parse(s).unwrap()).collect();
    QuotientRing::new(&a, rels).unwrap()
}

pub fn poly(r: &Arc<QuotientRing>, s: &str) -> Polynomial {
    r.ambient().parse(s).unwrap()
}

// ---------------------------------------------------------------- vectors

/// Subspace of `k^n` kept in reduced row echelon form.
#[derive(Clone)]
pub struct Span {
    field: Field,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Span {
    pub fn new(field: Field) -> Span {
        Span { field, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero on every pivot.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; false if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().unwrap();
        let v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = &*x - &(&c * r);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Null space of the linear map whose images of the standard basis vectors
/// are `columns` (each of length `m`).
pub fn null_space(field: Field, m: usize, columns: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = columns.len();
    // Row reduce [columns | I]: rows of the transposed system.
    let mut span = Span::new(field);
    let mut kernel = Vec::new();
    let mut tracked: Vec<Vec<Scalar>> = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let mut v = c.clone();
        v.resize(m, field.zero());
        let mut tag = vec![field.zero(); n];
        tag[j] = field.one();
        v.extend(tag);
        tracked.push(v);
    }
    for v in tracked {
        let r = span.reduce(&v);
        if r[..m].iter().all(Scalar::is_zero) {
            kernel.push(r[m..].to_vec());
        } else {
            span.insert(&v);
        }
    }
    kernel
}

// ------------------------------------------------------------ monomials

pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|e| monomials_of_degree(n, e)).collect()
}

/// Coordinates with respect to a monomial list.
pub struct Basis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn new(monomials: Vec<Monomial>) -> Basis {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    /// `None` when `f` has a monomial outside the basis.
    pub fn coords(&self, f: &Polynomial) -> Option<Vec<Scalar>> {
        let field = f.ring().field();
        let mut v = vec![field.zero(); self.len()];
        for (m, c) in f.terms() {
            v[*self.index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn poly(&self, ring: &Arc<PolyRing>, v: &[Scalar]) -> Polynomial {
        ring.from_terms(
            self.monomials
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }
}

/// Whether `f` is a combination `sum h_i g_i` with `deg(h_i g_i) <= bound`.
pub fn member_up_to(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    let a = f.ring();
    let basis = Basis::new(monomials_up_to(a.nvars(), bound));
    let mut span = Span::new(a.field());
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap();
        if dg > bound {
            continue;
        }
        for m in monomials_up_to(a.nvars(), bound - dg) {
            let p = g.mul_term(&m, &a.field().one());
            span.insert(&basis.coords(&p).unwrap());
        }
    }
    match basis.coords(f) {
        Some(v) => span.contains(&v),
        None => false,
    }
}

/// Homogeneous components of `f`, by degree.
pub fn homogeneous_parts(f: &Polynomial) -> Vec<Polynomial> {
    let mut by_degree: std::collections::BTreeMap<u32, Vec<(Monomial, Scalar)>> = Default::default();
    for (m, c) in f.terms() {
        by_degree.entry(m.degree()).or_default().push((m.clone(), c.clone()));
    }
    by_degree.into_values().map(|t| f.ring().from_terms(t)).collect()
}

/// Membership in a homogeneous ideal, exact: each homogeneous part of `f`
/// is tested in its own degree.
pub fn member_homogeneous(f: &Polynomial, gens: &[Polynomial]) -> bool {
    homogeneous_parts(f)
        .iter()
        .all(|p| member_up_to(p, gens, p.total_degree().unwrap_or(0)))
}

/// Syzygies `(h_1..h_k)` of `fs` with `deg h_i <= bound`, as a basis of the
/// solution space.
pub fn syzygies_up_to(fs: &[Polynomial], bound: u32) -> Vec<Vec<Polynomial>> {
    let a = fs[0].ring().clone();
    let field = a.field();
    let mults = monomials_up_to(a.nvars(), bound);
    let top = bound + fs.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
    let target = Basis::new(monomials_up_to(a.nvars(), top));
    let mut columns = Vec::new();
    for f in fs {
        for m in &mults {
            columns.push(target.coords(&f.mul_term(m, &field.one())).unwrap());
        }
    }
    null_space(field, target.len(), &columns)
        .into_iter()
        .map(|v| {
            v.chunks(mults.len())
                .map(|chunk| {
                    a.from_terms(
                        mults
                            .iter()
                            .zip(chunk)
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(m, c)| (m.clone(), c.clone()))
                            .collect(),
                    )
                })
                .collect()
        })
        .collect()
}

// ------------------------------------------------------- test-side division

/// Remainder of `f` on multivariate division by `divisors`, using the
/// ring's monomial order.
pub fn remainder(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let a = f.ring().clone();
    let mut p = f.clone();
    let mut r = a.zero();
    while let Some(lm) = p.leading_monomial().cloned() {
        let lc = p.leading_coeff().unwrap().clone();
        let hit = divisors.iter().find(|g| g.leading_monomial().is_some_and(|m| m.divides(&lm)));
        match hit {
            Some(g) => {
                let q = g.leading_monomial().unwrap().quotient_of(&lm);
                let c = &lc * &g.leading_coeff().unwrap().inverse().unwrap();
                p = &p - &g.mul_term(&q, &c);
            }
            None => {
                let t = a.monomial(lm, lc);
                r = &r + &t;
                p = &p - &t;
            }
        }
    }
    r
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, mg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = mf.lcm(mg);
    let cf = f.leading_coeff().unwrap().inverse().unwrap();
    let cg = g.leading_coeff().unwrap().inverse().unwrap();
    &f.mul_term(&mf.quotient_of(&l), &cf) - &g.mul_term(&mg.quotient_of(&l), &cg)
}

/// Every S-polynomial of `basis` reduces to zero.
pub fn buchberger_criterion(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !remainder(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn random_poly(rng: &mut impl Rng, a: &Arc<PolyRing>, max_deg: u32, max_terms: usize) -> Polynomial {
    let field = a.field();
    let mons = monomials_up_to(a.nvars(), max_deg);
    let terms = rng.gen_range(1..=max_terms);
    let mut out = Vec::new();
    for _ in 0..terms {
        let m = mons[rng.gen_range(0..mons.len())].clone();
        let c = rng.gen_range(-4i64..=4);
        if c != 0 {
            out.push((m, field.from_i64(c)));
        }
    }
    a.from_terms(out)
}

// --------------------------------------------------- graded quotient rings

/// `N = S^g / U` for a graded submodule `U` given by homogeneous columns,
/// generator twists `twists`, and `S/I` acting through `ideal`. Graded
/// pieces are computed by spanning all products of relations with
/// monomials of the right degree.
pub struct GradedModule {
    pub ring: Arc<PolyRing>,
    pub twists: Vec<i64>,
    relations: Vec<Vec<Polynomial>>,
    cache: std::cell::RefCell<HashMap<i64, Arc<Piece>>>,
}

/// `N_d`: coordinates are `(generator, monomial)` pairs; `kill` spans
/// `U_d`; `free` lists the non-pivot coordinates, a basis of `N_d`.
pub struct Piece {
    pub slots: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
    kill: Span,
    pub free: Vec<usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Canonical coordinates (on `free`) of a column of polynomials.
    pub fn canon(&self, col: &[Polynomial], field: Field) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.slots.len()];
        for (g, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                let i = self.index[&(g, m.clone())];
                v[i] = &v[i] + c;
            }
        }
        let v = self.kill.reduce(&v);
        self.free.iter().map(|&i| v[i].clone()).collect()
    }

    /// Column representing the `k`-th basis element.
    pub fn element(&self, k: usize, ring: &Arc<PolyRing>, gens: usize) -> Vec<Polynomial> {
        let (g, m) = &self.slots[self.free[k]];
        let mut col = vec![ring.zero(); gens];
        col[*g] = ring.monomial(m.clone(), ring.field().one());
        col
    }
}

impl GradedModule {
    /// `(S/I)^g / (relations)`, where `ideal` are homogeneous generators of
    /// `I` and relations are homogeneous columns.
    pub fn new(ring: &Arc<PolyRing>, twists: Vec<i64>, ideal: &[Polynomial], relations: &[Vec<Polynomial>]) -> Self {
        let g = twists.len();
        let mut rels: Vec<Vec<Polynomial>> = relations.to_vec();
        for f in ideal {
            for k in 0..g {
                let mut c = vec![ring.zero(); g];
                c[k] = f.clone();
                rels.push(c);
            }
        }
        GradedModule {
            ring: ring.clone(),
            twists,
            relations: rels,
            cache: Default::default(),
        }
    }

    pub fn gens(&self) -> usize {
        self.twists.len()
    }

    pub fn piece(&self, d: i64) -> Arc<Piece> {
        if let Some(p) = self.cache.borrow().get(&d) {
            return p.clone();
        }
        let n = self.ring.nvars();
        let field = self.ring.field();
        let mut slots = Vec::new();
        for (g, &t) in self.twists.iter().enumerate() {
            if d >= t {
                for m in monomials_of_degree(n, (d - t) as u32) {
                    slots.push((g, m));
                }
            }
        }
        let index: HashMap<_, _> = slots.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut kill = Span::new(field);
        for rel in &self.relations {
            let Some(rd) = rel_degree(rel, &self.twists) else { continue };
            if rd > d {
                continue;
            }
            for m in monomials_of_degree(n, (d - rd) as u32) {
                let mut v = vec![field.zero(); slots.len()];
                for (g, p) in rel.iter().enumerate() {
                    for (mm, c) in p.terms() {
                        let i = index[&(g, mm.mul(&m))];
                        v[i] = &v[i] + c;
                    }
                }
                kill.insert(&v);
            }
        }
        let pivots: std::collections::HashSet<usize> = kill.pivots().into_iter().collect();
        let free = (0..slots.len()).filter(|i| !pivots.contains(i)).collect();
        let piece = Arc::new(Piece {
            slots,
            index,
            kill,
            free,
        });
        self.cache.borrow_mut().insert(d, piece.clone());
        piece
    }
}

/// Degree of a homogeneous column, `None` for zero.
pub fn rel_degree(col: &[Polynomial], twists: &[i64]) -> Option<i64> {
    col.iter()
        .zip(twists)
        .find_map(|(p, &t)| p.total_degree().filter(|_| !p.is_zero()).map(|d| d as i64 + t))
}

/// Generator degrees of `F_0, F_1, ...` read off homogeneous maps.
pub fn resolution_degrees(f0: Vec<i64>, maps: &[PolyMatrix]) -> Vec<Vec<i64>> {
    let mut out = vec![f0];
    for d in maps {
        let prev = out.last().unwrap().clone();
        let degs = (0..d.cols())
            .map(|j| rel_degree(&d.column(j), &prev).expect("zero column in a minimal resolution"))
            .collect();
        out.push(degs);
    }
    out
}

/// `Ext^n(M, N)` in internal degree `e`, computed from a graded free
/// resolution of `M` by linear algebra on `Hom(F_i, N)_e`.
pub struct GradedExt<'a> {
    pub maps: &'a [PolyMatrix],
    pub degrees: Vec<Vec<i64>>,
    pub target: &'a GradedModule,
    pub n: usize,
}

/// `Hom(F_i, N)_e = ⊕_j N_{e + a_j}`.
struct HomPiece {
    blocks: Vec<Arc<Piece>>,
}

impl HomPiece {
    fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }
}

impl GradedExt<'_> {
    fn hom(&self, i: usize, e: i64) -> HomPiece {
        // Past the end of a complete resolution the free modules vanish.
        let degrees = self.degrees.get(i).map(Vec::as_slice).unwrap_or(&[]);
        HomPiece {
            blocks: degrees.iter().map(|a| self.target.piece(e + a)).collect(),
        }
    }

    /// Element `k` of `Hom(F_i, N)_e` as the images of the generators of `F_i`.
    fn hom_element(&self, hp: &HomPiece, k: usize) -> Vec<Vec<Polynomial>> {
        let g = self.target.gens();
        let a = &self.target.ring;
        let mut k = k;
        let mut out = vec![vec![a.zero(); g]; hp.blocks.len()];
        for (j, b) in hp.blocks.iter().enumerate() {
            if k < b.dim() {
                out[j] = b.element(k, a, g);
                return out;
            }
            k -= b.dim();
        }
        unreachable!("index in range")
    }

    fn hom_coords(&self, hp: &HomPiece, phi: &[Vec<Polynomial>]) -> Vec<Scalar> {
        let field = self.target.ring.field();
        hp.blocks
            .iter()
            .zip(phi)
            .flat_map(|(b, col)| b.canon(col, field))
            .collect()
    }

    /// `phi ∘ d_{i+1}` for `phi` in `Hom(F_i, N)`.
    fn delta(&self, i: usize, phi: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
        let Some(d) = self.maps.get(i) else {
            return Vec::new();
        };
        let a = &self.target.ring;
        let g = self.target.gens();
        (0..d.cols())
            .map(|j| {
                let mut col = vec![a.zero(); g];
                for (k, phik) in phi.iter().enumerate() {
                    let c = d.get(k, j);
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in col.iter_mut().zip(phik) {
                        *x = &*x + &(y * c);
                    }
                }
                col
            })
            .collect()
    }

    /// `(cycles, boundaries)` of `Hom(F_n, N)_e`.
    fn cohomology(&self, e: i64) -> (Vec<Vec<Vec<Polynomial>>>, Span) {
        let field = self.target.ring.field();
        let n = self.n;
        let here = self.hom(n, e);
        let next = self.hom(n + 1, e);
        let images: Vec<Vec<Scalar>> = (0..here.dim())
            .map(|k| self.hom_coords(&next, &self.delta(n, &self.hom_element(&here, k))))
            .collect();
        let cycles = null_space(field, next.dim(), &images)
            .into_iter()
            .map(|v| {
                let mut phi = vec![vec![self.target.ring.zero(); self.target.gens()]; here.blocks.len()];
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let el = self.hom_element(&here, k);
                    for (p, q) in phi.iter_mut().zip(&el) {
                        for (x, y) in p.iter_mut().zip(q) {
                            *x = &*x + &y.scale(c);
                        }
                    }
                }
                phi
            })
            .collect();
        let mut bounds = Span::new(field);
        if n > 0 {
            let prev = self.hom(n - 1, e);
            for k in 0..prev.dim() {
                bounds.insert(&self.hom_coords(&here, &self.delta(n - 1, &self.hom_element(&prev, k))));
            }
        }
        (cycles, bounds)
    }

    /// `dim_k Ext^n(M, N)_e`.
    pub fn dim(&self, e: i64) -> usize {
        let (z, b) = self.cohomology(e);
        z.len() - b.dim()
    }

    /// Whether multiplication by the homogeneous `r` is zero from degree `e`.
    pub fn acts_zero_in(&self, r: &Polynomial, e: i64) -> bool {
        if r.is_zero() {
            return true;
        }
        let t = r.total_degree().unwrap() as i64;
        let (z, _) = self.cohomology(e);
        let (_, b) = self.cohomology(e + t);
        let there = self.hom(self.n, e + t);
        z.iter().all(|phi| {
            let moved: Vec<Vec<Polynomial>> = phi.iter().map(|c| c.iter().map(|p| p * r).collect()).collect();
            b.contains(&self.hom_coords(&there, &moved))
        })
    }
}
