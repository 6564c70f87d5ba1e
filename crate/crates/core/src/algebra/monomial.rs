use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector with cached total degree.
///
/// The derived `Ord` (lexicographic on exponents) is only a canonical
/// tie-breaker for containers; term orders live in `MonomialOrder`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().sum(),
        }
    }

    pub fn variable(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = power;
        m.degree = power;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: SmallVec<[u32; 8]> = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable index when this is a pure power `x_i^m` with `m > 0`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Variable indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Degree restricted to a block of variables.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().sum()
    }

    /// Reindex into a ring with `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut m = Monomial::one(nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            m.exps[map[i]] += e;
        }
        m.degree = self.degree;
        m
    }

    /// Lexicographic comparison restricted to `range`.
    pub(crate) fn cmp_lex(&self, other: &Monomial, range: std::ops::Range<usize>) -> Ordering {
        for i in range {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Reverse-lexicographic tie break of grevlex restricted to `range`
    /// (assumes equal degree on the range).
    pub(crate) fn cmp_revlex(&self, other: &Monomial, range: std::ops::Range<usize>) -> Ordering {
        for i in range.rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}
