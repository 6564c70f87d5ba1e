use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Dense matrix of polynomials, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    twists: Option<Vec<i64>>,
}

impl PolyMatrix {
    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
            twists: None,
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| !e.ring().same_as(ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
            twists: None,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(ring: &Arc<PolyRing>, rows: usize, columns: &[Vec<Polynomial>]) -> Self {
        let mut m = PolyMatrix::zero(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    /// Column degree shifts, when tracked.
    pub fn twists(&self) -> Option<&[i64]> {
        self.twists.as_deref()
    }

    pub fn with_twists(mut self, twists: Vec<i64>) -> Result<Self> {
        if twists.len() != self.cols {
            return Err(Error::InvalidArgument("twist list must match column count".into()));
        }
        self.twists = Some(twists);
        Ok(self)
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            twists: self.twists.clone(),
        }
    }

    /// All `t x t` minors, ordered lexicographically by (row set, column set).
    ///
    /// Determinants come from cofactor expansion along the first row of each
    /// submatrix, memoized on (row set, column set).
    pub fn minors(&self, t: usize) -> Result<Vec<Polynomial>> {
        let max = self.rows.min(self.cols);
        if t == 0 || t > max {
            return Err(Error::MinorSizeOutOfRange { size: t, max });
        }
        if self.rows > 64 || self.cols > 64 {
            return Err(Error::InvalidArgument("matrix too large for minor enumeration".into()));
        }
        let mut memo: HashMap<(u64, u64), Polynomial> = HashMap::new();
        let row_sets = subsets(self.rows, t);
        let col_sets = subsets(self.cols, t);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.det_memo(mask(rs), mask(cs), &mut memo));
            }
        }
        Ok(out)
    }

    fn det_memo(&self, rows: u64, cols: u64, memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
        if rows == 0 {
            return self.ring.one();
        }
        if let Some(d) = memo.get(&(rows, cols)) {
            return d.clone();
        }
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r0);
        let mut acc = self.ring.zero();
        let mut sign_positive = true;
        let mut c = cols;
        while c != 0 {
            let j = c.trailing_zeros() as usize;
            c &= !(1 << j);
            let a = self.get(r0, j);
            if !a.is_zero() {
                let sub = self.det_memo(rest, cols & !(1 << j), memo);
                let term = a * &sub;
                acc = if sign_positive { &acc + &term } else { &acc - &term };
            }
            sign_positive = !sign_positive;
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, MonomialOrder};

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(Field::Rational, ["x", "y"], MonomialOrder::GrevLex)
    }

    fn mat(r: &Arc<PolyRing>, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(r, rows.iter().map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect()).collect())
            .unwrap()
    }

    #[test]
    fn jacobian_one_minors() {
        let r = ring();
        let j = mat(&r, &[&["5*x^4", "0"], &["y", "x"]]);
        let m: Vec<String> = j.minors(1).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(m, ["5*x^4", "0", "y", "x"]);
        assert_eq!(j.minors(2).unwrap()[0].to_string(), "5*x^5");
    }

    #[test]
    fn identity_minor() {
        let r = ring();
        assert_eq!(PolyMatrix::identity(&r, 2).minors(2).unwrap(), vec![r.one()]);
        assert!(PolyMatrix::identity(&r, 2).minors(3).is_err());
        assert!(PolyMatrix::identity(&r, 2).minors(0).is_err());
    }

    #[test]
    fn subset_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }
}
