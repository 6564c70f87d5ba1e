use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Field, Monomial, MonomialOrder, Scalar};
use crate::error::{Error, Result};

/// Descriptor of `k[x_0, ..., x_{n-1}]` with a fixed monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: Into<String>>(field: Field, vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            field,
            vars: vars.into_iter().map(Into::into).collect(),
            order,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(self.field, self.vars.clone(), order)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: Scalar) -> Polynomial {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn from_int(self: &Arc<Self>, c: i64) -> Polynomial {
        self.constant(self.field.from_i64(c))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        self.monomial(Monomial::variable(self.nvars(), i, 1), self.field.one())
    }

    pub fn var_named(self: &Arc<Self>, name: &str) -> Option<Polynomial> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: Scalar) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    /// Canonicalizes an arbitrary term list (sorts, merges, drops zeros).
    pub fn from_terms(self: &Arc<Self>, mut terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        let order = self.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: self.clone(),
            terms: out,
        }
    }

    /// Parses the canonical text format (`5*x^4 - y^2*z`).
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        crate::dsl::parse_polynomial(self, text)
    }

    pub fn same_as(&self, other: &PolyRing) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.field, self.vars.join(","), self.order)
    }
}

/// Sparse polynomial; terms strictly descending in the ring's order, no
/// zero coefficients. The zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of the constant term.
    pub fn constant_coeff(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero")),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, mon: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mon), a * c)).collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, Some(&self.ring.field.from_i64(-1))))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    /// `self + c * other` (`c = 1` when `None`).
    fn merge(&self, other: &Polynomial, c: Option<&Scalar>) -> Polynomial {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let scaled = |s: &Scalar| match c {
            Some(c) => s * c,
            None => s.clone(),
        };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), scaled(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &scaled(&b[j].1);
                    if !s.is_zero() {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, s)| (m.clone(), scaled(s))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                terms.push((m.mul(n), a * b));
            }
        }
        self.ring.from_terms(terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if i >= n {
            return Err(Error::VariableOutOfRange { index: i, nvars: n });
        }
        let field = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(i) > 0)
            .map(|(m, c)| {
                let e = m.exponent(i);
                let mut exps = m.exponents().to_vec();
                exps[i] -= 1;
                (Monomial::from_exponents(&exps), c * &field.from_i64(e as i64))
            })
            .collect();
        Ok(self.ring.from_terms(terms))
    }

    /// Reindexes variables into `target` (variable `i` goes to `map[i]`).
    pub fn map_into(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        target.from_terms(self.terms.iter().map(|(m, c)| (m.remap(n, map), c.clone())).collect())
    }

    /// Same polynomial in a ring that differs only in its order.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Polynomial {
        target.from_terms(self.terms.clone())
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all in `target`).
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Polynomial {
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

macro_rules! impl_op {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                assert!(self.ring.same_as(&rhs.ring), "polynomials from different rings");
                $body(self, rhs)
            }
        }
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_op!(Add, add, |a: &Polynomial, b: &Polynomial| a.merge(b, None));
impl_op!(Sub, sub, |a: &Polynomial, b: &Polynomial| a.merge(b, Some(&a.ring.field.from_i64(-1))));
impl_op!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.product(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field.from_i64(-1))
    }
}

/// Binary ring operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic on two polynomials of the same ring.
pub fn poly_arith(op: PolyOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    match op {
        PolyOp::Add => f.try_add(g),
        PolyOp::Sub => f.try_sub(g),
        PolyOp::Mul => f.try_mul(g),
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", fmt_monomial(m, &self.ring.vars))?;
            } else {
                write!(f, "{}*{}", a, fmt_monomial(m, &self.ring.vars))?;
            }
        }
        Ok(())
    }
}
