use std::cmp::Ordering;
use std::fmt;

use super::Monomial;

/// A monomial order on `k[x_0, ..., x_{n-1}]`, with `x_0 > x_1 > ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Block order: grevlex on the first `k` variables, ties broken by
    /// grevlex on the rest. Eliminates the first block.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.nvars();
        match *self {
            MonomialOrder::Lex => a.cmp_lex(b, 0..n),
            MonomialOrder::GrevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.cmp_revlex(b, 0..n)),
            MonomialOrder::Elimination(k) => {
                let k = k.min(n);
                a.partial_degree(0..k)
                    .cmp(&b.partial_degree(0..k))
                    .then_with(|| a.cmp_revlex(b, 0..k))
                    .then_with(|| a.partial_degree(k..n).cmp(&b.partial_degree(k..n)))
                    .then_with(|| a.cmp_revlex(b, k..n))
            }
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
        }
    }
}

/// Extension of a monomial order to terms `m * e_c` of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleOrder {
    /// Position-over-term when set, term-over-position otherwise.
    pub position_first: bool,
    /// Components `>= split` are smaller than every component below it,
    /// regardless of monomials. Used to eliminate a block of components.
    pub split: Option<usize>,
    /// Degree shifts per component; when present the weighted degree
    /// `deg(m) + w[c]` is compared first (within a block).
    pub weights: Option<Vec<i64>>,
}

impl ModuleOrder {
    pub fn top() -> Self {
        ModuleOrder::default()
    }

    pub fn pot() -> Self {
        ModuleOrder {
            position_first: true,
            ..Default::default()
        }
    }

    pub fn eliminating(split: usize, weights: Option<Vec<i64>>) -> Self {
        ModuleOrder {
            position_first: false,
            split: Some(split),
            weights,
        }
    }

    pub fn cmp(&self, mono: MonomialOrder, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        if let Some(s) = self.split {
            // block 0 (< s) is larger
            let ba = a.1 >= s;
            let bb = b.1 >= s;
            if ba != bb {
                return bb.cmp(&ba);
            }
        }
        if let Some(w) = &self.weights {
            let da = a.0.degree() as i64 + w.get(a.1).copied().unwrap_or(0);
            let db = b.0.degree() as i64 + w.get(b.1).copied().unwrap_or(0);
            if da != db {
                return da.cmp(&db);
            }
        }
        if self.position_first {
            b.1.cmp(&a.1).then_with(|| mono.cmp(a.0, b.0))
        } else {
            mono.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
        }
    }
}
