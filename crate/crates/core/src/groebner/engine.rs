//! Buchberger's algorithm for submodules of free modules `k[x]^r`.
//!
//! Ideals are the rank-one case. Pairs are selected by sugar (normal
//! strategy) and pruned with the Gebauer–Möller installation of
//! Buchberger's product and chain criteria.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{ModuleOrder, Monomial, PolyRing, Polynomial, Scalar};

/// A term `coeff * mon * e_comp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub comp: usize,
    pub coeff: Scalar,
}

/// Module element as a term list, strictly descending in the module order.
pub(crate) type Vector = Vec<Term>;

pub(crate) struct Engine<'a> {
    pub ring: &'a Arc<PolyRing>,
    pub order: ModuleOrder,
    /// Degree shifts per component, used for sugar.
    pub weights: Vec<i64>,
    /// Rank one and no component split: the product criterion applies.
    ideal_mode: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    sugar: i64,
}

impl<'a> Engine<'a> {
    pub fn new(ring: &'a Arc<PolyRing>, order: ModuleOrder, weights: Vec<i64>, rank: usize) -> Self {
        let ideal_mode = rank == 1 && order.split.is_none();
        Engine {
            ring,
            order,
            weights,
            ideal_mode,
        }
    }

    pub fn for_ideal(ring: &'a Arc<PolyRing>) -> Self {
        Engine::new(ring, ModuleOrder::top(), vec![0], 1)
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp(self.ring.order(), (&a.mon, a.comp), (&b.mon, b.comp))
    }

    fn weight(&self, comp: usize) -> i64 {
        self.weights.get(comp).copied().unwrap_or(0)
    }

    pub fn sugar(&self, v: &[Term]) -> i64 {
        v.iter().map(|t| t.mon.degree() as i64 + self.weight(t.comp)).max().unwrap_or(0)
    }

    /// Sorts and merges an arbitrary term list.
    pub fn normalize(&self, mut v: Vec<Term>) -> Vector {
        v.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vector = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mon == t.mon => last.coeff = &last.coeff + &t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        out
    }

    pub fn from_polys(&self, entries: &[Polynomial], offset: usize) -> Vector {
        let mut terms = Vec::new();
        for (c, p) in entries.iter().enumerate() {
            for (m, a) in p.terms() {
                terms.push(Term {
                    mon: m.clone(),
                    comp: c + offset,
                    coeff: a.clone(),
                });
            }
        }
        self.normalize(terms)
    }

    pub fn from_poly(&self, p: &Polynomial) -> Vector {
        self.from_polys(std::slice::from_ref(p), 0)
    }

    /// Splits a vector back into `rank` polynomial entries (components
    /// `offset..offset + rank`; others are ignored).
    pub fn to_polys(&self, v: &[Term], offset: usize, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for t in v {
            if t.comp >= offset && t.comp < offset + rank {
                buckets[t.comp - offset].push((t.mon.clone(), t.coeff.clone()));
            }
        }
        buckets.into_iter().map(|b| self.ring.from_terms(b)).collect()
    }

    pub fn to_poly(&self, v: &[Term]) -> Polynomial {
        self.to_polys(v, 0, 1).pop().expect("rank one")
    }

    fn mul_monomial(&self, v: &[Term], m: &Monomial, c: &Scalar) -> Vector {
        v.iter()
            .map(|t| Term {
                mon: t.mon.mul(m),
                comp: t.comp,
                coeff: &t.coeff * c,
            })
            .collect()
    }

    /// `a - c * m * b`, merging the sorted lists.
    pub fn sub_mul(&self, a: &[Term], c: &Scalar, m: &Monomial, b: &[Term]) -> Vector {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let neg_c = -c;
        let shifted = |t: &Term| Term {
            mon: t.mon.mul(m),
            comp: t.comp,
            coeff: &t.coeff * &neg_c,
        };
        let mut pending: Option<Term> = b.first().map(&shifted);
        while i < a.len() {
            let Some(bt) = pending.as_ref() else { break };
            match self.cmp(&a[i], bt) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().expect("pending"));
                    j += 1;
                    pending = b.get(j).map(&shifted);
                }
                Ordering::Equal => {
                    let s = &a[i].coeff + &bt.coeff;
                    if !s.is_zero() {
                        out.push(Term {
                            mon: a[i].mon.clone(),
                            comp: a[i].comp,
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(&shifted);
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some(t) = pending {
            out.push(t);
            out.extend(b[j + 1..].iter().map(&shifted));
        }
        out
    }

    fn find_reducer(&self, t: &Term, basis: &[Vector]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, g) in basis.iter().enumerate() {
            let lt = &g[0];
            if lt.comp == t.comp && lt.mon.divides(&t.mon) {
                match best {
                    Some(b) if basis[b].len() <= g.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Reduces the leading term until it is irreducible. Basis elements
    /// must be monic.
    pub fn top_reduce(&self, mut v: Vector, basis: &[Vector]) -> Vector {
        while let Some(lt) = v.first() {
            let Some(k) = self.find_reducer(lt, basis) else { break };
            let g = &basis[k];
            let m = g[0].mon.quotient_of(&lt.mon);
            let c = lt.coeff.clone();
            v = self.sub_mul(&v, &c, &m, g);
        }
        v
    }

    /// Full normal form against a monic basis.
    pub fn normal_form(&self, v: Vector, basis: &[Vector]) -> Vector {
        let mut rem: Vector = Vec::new();
        let mut p = v;
        while !p.is_empty() {
            if let Some(k) = self.find_reducer(&p[0], basis) {
                let g = &basis[k];
                let m = g[0].mon.quotient_of(&p[0].mon);
                let c = p[0].coeff.clone();
                p = self.sub_mul(&p, &c, &m, g);
            } else {
                // Leading term survives; everything after it is smaller.
                let mut rest = p.split_off(1);
                rem.append(&mut p);
                std::mem::swap(&mut p, &mut rest);
            }
        }
        rem
    }

    pub fn monic(&self, v: Vector) -> Vector {
        match v.first() {
            None => v,
            Some(t) if t.coeff.is_one() => v,
            Some(t) => {
                let inv = t.coeff.inverse().expect("nonzero");
                v.into_iter()
                    .map(|t| Term {
                        coeff: &t.coeff * &inv,
                        ..t
                    })
                    .collect()
            }
        }
    }

    fn spoly(&self, f: &[Term], g: &[Term], lcm: &Monomial) -> Vector {
        let mf = f[0].mon.quotient_of(lcm);
        let mg = g[0].mon.quotient_of(lcm);
        let one = self.ring.field().one();
        let a = self.mul_monomial(f, &mf, &one);
        self.sub_mul(&a, &one, &mg, g)
    }

    /// Reduced Gröbner basis: monic, inter-reduced, sorted by descending
    /// leading term.
    pub fn groebner(&self, gens: Vec<Vector>) -> Vec<Vector> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut sugars: Vec<i64> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let mut inputs: Vec<Vector> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        inputs.sort_by(|a, b| self.sugar(a).cmp(&self.sugar(b)).then_with(|| self.cmp(&a[0], &b[0])));
        for g in inputs {
            let s = self.sugar(&g);
            let h = self.monic(self.top_reduce(g, &basis));
            if h.is_empty() {
                continue;
            }
            if self.ideal_mode && h[0].mon.is_one() {
                return vec![h];
            }
            let s = s.max(self.sugar(&h));
            self.update(&mut basis, &mut sugars, &mut active, &mut pairs, h, s);
        }

        while !pairs.is_empty() {
            let idx = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&pairs[a], &pairs[b]);
                    p.sugar
                        .cmp(&q.sugar)
                        .then_with(|| p.lcm.degree().cmp(&q.lcm.degree()))
                        .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(idx);
            let s = self.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
            let h = self.monic(self.top_reduce(s, &basis));
            if h.is_empty() {
                continue;
            }
            if self.ideal_mode && h[0].mon.is_one() {
                return vec![h];
            }
            let s = pair.sugar.max(self.sugar(&h));
            self.update(&mut basis, &mut sugars, &mut active, &mut pairs, h, s);
        }

        self.interreduce(
            basis
                .into_iter()
                .zip(active)
                .filter_map(|(g, a)| a.then_some(g))
                .collect(),
        )
    }

    fn update(
        &self,
        basis: &mut Vec<Vector>,
        sugars: &mut Vec<i64>,
        active: &mut Vec<bool>,
        pairs: &mut Vec<Pair>,
        h: Vector,
        sugar_h: i64,
    ) {
        let k = basis.len();
        let lt_h = h[0].mon.clone();
        let comp = h[0].comp;
        let disjoint = |m: &Monomial| self.ideal_mode && m.is_coprime(&lt_h);

        // candidate pairs (g, h)
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            if active[i] && g[0].comp == comp {
                let lcm = g[0].mon.lcm(&lt_h);
                cands.push((i, lcm, disjoint(&g[0].mon)));
            }
        }
        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some(p) = cands.pop() {
            let dominated = !p.2
                && (cands.iter().any(|q| q.1.divides(&p.1)) || kept.iter().any(|q| q.1.divides(&p.1)));
            if !dominated {
                kept.push(p);
            }
        }
        // old pairs made redundant by h
        pairs.retain(|p| {
            if p.comp != comp || !lt_h.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i][0].mon.lcm(&lt_h);
            let lj = basis[p.j][0].mon.lcm(&lt_h);
            li == p.lcm || lj == p.lcm
        });
        for (i, lcm, is_disjoint) in kept {
            if is_disjoint {
                continue;
            }
            let g = &basis[i];
            let si = sugars[i] + (lcm.degree() - g[0].mon.degree()) as i64;
            let sk = sugar_h + (lcm.degree() - lt_h.degree()) as i64;
            pairs.push(Pair {
                i,
                j: k,
                lcm,
                comp,
                sugar: si.max(sk),
            });
        }
        for (i, g) in basis.iter().enumerate() {
            if active[i] && g[0].comp == comp && lt_h.divides(&g[0].mon) {
                active[i] = false;
            }
        }
        basis.push(h);
        sugars.push(sugar_h);
        active.push(true);
    }

    fn interreduce(&self, mut gens: Vec<Vector>) -> Vec<Vector> {
        gens.sort_by(|a, b| self.cmp(&a[0], &b[0]));
        let mut minimal: Vec<Vector> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| m[0].comp == g[0].comp && m[0].mon.divides(&g[0].mon)) {
                minimal.push(g);
            }
        }
        let n = minimal.len();
        for i in 0..n {
            let g = std::mem::take(&mut minimal[i]);
            let others: Vec<Vector> = minimal.iter().filter(|v| !v.is_empty()).cloned().collect();
            let mut head = vec![g[0].clone()];
            let tail = self.normal_form(g[1..].to_vec(), &others);
            head.extend(tail);
            minimal[i] = self.monic(head);
        }
        minimal.sort_by(|a, b| self.cmp(&b[0], &a[0]));
        minimal
    }

    /// Division with cofactors against a rank-one basis: returns `(q, r)`
    /// with `f = sum q_i g_i + r` and `r` fully reduced.
    pub fn divide(&self, f: &Polynomial, basis: &[Vector]) -> (Vec<Polynomial>, Polynomial) {
        let mut quotients: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); basis.len()];
        let mut rem: Vector = Vec::new();
        let mut p = self.from_poly(f);
        while !p.is_empty() {
            if let Some(k) = self.find_reducer(&p[0], basis) {
                let g = &basis[k];
                let m = g[0].mon.quotient_of(&p[0].mon);
                let c = &p[0].coeff * &g[0].coeff.inverse().expect("nonzero leading coefficient");
                quotients[k].push((m.clone(), c.clone()));
                p = self.sub_mul(&p, &c, &m, g);
            } else {
                let mut rest = p.split_off(1);
                rem.append(&mut p);
                std::mem::swap(&mut p, &mut rest);
            }
        }
        (
            quotients.into_iter().map(|q| self.ring.from_terms(q)).collect(),
            self.to_poly(&rem),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, MonomialOrder};

    fn gb(ring: &Arc<PolyRing>, gens: &[&str]) -> Vec<String> {
        let e = Engine::for_ideal(ring);
        let v = gens.iter().map(|g| e.from_poly(&ring.parse(g).unwrap())).collect();
        e.groebner(v).iter().map(|g| e.to_poly(g).to_string()).collect()
    }

    #[test]
    fn small_bases() {
        let r = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(gb(&r, &["x"]), ["x"]);
        assert_eq!(gb(&r, &["x^5", "x*y", "x^3"]), ["x^3", "x*y"]);
        assert_eq!(gb(&r, &["x^2 - y", "x*y - 1"]), ["x^2 - y", "x*y - 1", "y^2 - x"]);
        assert_eq!(gb(&r, &["x + 1", "x"]), ["1"]);
        assert!(gb(&r, &["0"]).is_empty());
    }

    #[test]
    fn lex_elimination_shape() {
        let r = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::Lex);
        // x = y^2, x y = 1  =>  y^3 = 1
        assert_eq!(gb(&r, &["x - y^2", "x*y - 1"]), ["x - y^2", "y^3 - 1"]);
    }

    #[test]
    fn module_basis_pot() {
        let r = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex);
        let e = Engine::new(&r, ModuleOrder::pot(), vec![0, 0], 2);
        let x = r.var(0);
        let y = r.var(1);
        let gens = vec![e.from_polys(&[x.clone(), y.clone()], 0), e.from_polys(&[y.clone(), r.zero()], 0)];
        let basis = e.groebner(gens);
        // (x, y), (y, 0) and the consequence (0, y^2)
        assert_eq!(basis.len(), 3);
        let nf = e.normal_form(e.from_polys(&[r.zero(), &y * &y], 0), &basis);
        assert!(nf.is_empty());
    }

    #[test]
    fn division_cofactors() {
        let r = PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex);
        let e = Engine::for_ideal(&r);
        let basis = e.groebner(vec![e.from_poly(&r.parse("x^3").unwrap()), e.from_poly(&r.parse("x*y").unwrap())]);
        let f = r.parse("x^5 + x*y^2 + y + 1").unwrap();
        let (q, rem) = e.divide(&f, &basis);
        let mut acc = rem.clone();
        for (qi, g) in q.iter().zip(&basis) {
            acc = &acc + &(qi * &e.to_poly(g));
        }
        assert_eq!(acc, f);
        assert_eq!(rem.to_string(), "y + 1");
    }
}
