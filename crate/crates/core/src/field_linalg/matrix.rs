use std::fmt;

use super::field::{Fp, PrimeField};
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixModP {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Fp>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: MatrixModP,
    pub pivots: Vec<usize>,
}

impl MatrixModP {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<Fp>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self { field, rows, cols, entries }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Self::new(field, r, c, entries)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<Fp>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn entries(&self) -> &[Fp] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fp {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fp) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fp] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fp> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fp>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixModP) -> Result<MatrixModP> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot += a * other.get(k, j) as u64;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, (v % p) as Fp);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fp]) -> Result<Vec<Fp>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let k = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<MatrixModP> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Gauss–Jordan elimination.
    pub fn echelon(&self) -> Echelon {
        let k = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, piv);
            let inv = k.inv(m.get(row, col));
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let c = m.get(r, col);
                    if c != 0 {
                        m.sub_row_multiple(r, row, c);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Fp>> {
        let k = self.field;
        let Echelon { matrix: e, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(e.get(r, free));
                }
                v
            })
            .collect()
    }

    /// One solution of `M v = b` for each column `b` of `rhs`, `None` where inconsistent.
    pub fn solve_columns(&self, rhs: &MatrixModP) -> Result<Vec<Option<Vec<Fp>>>> {
        if rhs.rows != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let n = self.cols;
        let mut aug = Self::zeros(self.field, self.rows, n + rhs.cols);
        for r in 0..self.rows {
            aug.entries[r * aug.cols..r * aug.cols + n].copy_from_slice(self.row(r));
            aug.entries[r * aug.cols + n..(r + 1) * aug.cols].copy_from_slice(rhs.row(r));
        }
        // Eliminate only on the coefficient block.
        let k = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == aug.rows {
                break;
            }
            let Some(piv) = (row..aug.rows).find(|&r| aug.get(r, col) != 0) else {
                continue;
            };
            aug.swap_rows(row, piv);
            let inv = k.inv(aug.get(row, col));
            aug.scale_row(row, inv);
            for r in 0..aug.rows {
                if r != row {
                    let c = aug.get(r, col);
                    if c != 0 {
                        aug.sub_row_multiple(r, row, c);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Ok((0..rhs.cols)
            .map(|j| {
                let jc = n + j;
                if (rank..aug.rows).any(|r| aug.get(r, jc) != 0) {
                    return None;
                }
                let mut v = vec![0; n];
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = aug.get(r, jc);
                }
                Some(v)
            })
            .collect())
    }

    pub fn solve(&self, b: &[Fp]) -> Result<Option<Vec<Fp>>> {
        let rhs = Self::from_columns(self.field, self.rows, &[b.to_vec()]);
        Ok(self.solve_columns(&rhs)?.pop().flatten())
    }

    /// `rank(M^g)` for `M` of size `g`; over F_p this is the stable rank.
    pub fn stable_rank(&self) -> Result<usize> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(0);
        }
        Ok(self.pow(self.rows as u64)?.rank())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: Fp) {
        let k = self.field;
        for v in &mut self.entries[r * self.cols..(r + 1) * self.cols] {
            *v = k.mul(*v, s);
        }
    }

    /// row[target] -= s * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, s: Fp) {
        let k = self.field;
        let cols = self.cols;
        let neg = k.neg(s) as u64;
        let p = k.p() as u64;
        for c in 0..cols {
            let src = self.entries[source * cols + c];
            if src != 0 {
                let t = &mut self.entries[target * cols + c];
                *t = ((*t as u64 + neg * src as u64) % p) as Fp;
            }
        }
    }
}

/// Reduces a spanning list to a basis of its span (row echelon of the stacked vectors).
pub fn span_basis(field: PrimeField, n: usize, vectors: &[Vec<Fp>]) -> Result<Vec<Vec<Fp>>> {
    check_lengths(n, vectors)?;
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let entries = vectors.iter().flatten().copied().collect();
    let m = MatrixModP::new(field, vectors.len(), n, entries);
    let e = m.echelon();
    Ok((0..e.pivots.len()).map(|r| e.matrix.row(r).to_vec()).collect())
}

/// Basis of `span(b1) ∩ span(b2)` inside F_p^n.
pub fn subspace_intersect(
    field: PrimeField,
    n: usize,
    b1: &[Vec<Fp>],
    b2: &[Vec<Fp>],
) -> Result<Vec<Vec<Fp>>> {
    let v = span_basis(field, n, b1)?;
    let w = span_basis(field, n, b2)?;
    if v.is_empty() || w.is_empty() {
        return Ok(Vec::new());
    }
    // Solve sum a_i v_i - sum b_j w_j = 0.
    let mut cols: Vec<Vec<Fp>> = v.clone();
    cols.extend(w.iter().map(|x| x.iter().map(|&c| field.neg(c)).collect()));
    let m = MatrixModP::from_columns(field, n, &cols);
    let combos: Vec<Vec<Fp>> = m
        .kernel()
        .into_iter()
        .map(|kv| {
            let mut out = vec![0; n];
            for (a, vi) in kv.iter().zip(&v) {
                for (o, &x) in out.iter_mut().zip(vi) {
                    *o = field.add(*o, field.mul(*a, x));
                }
            }
            out
        })
        .collect();
    span_basis(field, n, &combos)
}

fn check_lengths(n: usize, vectors: &[Vec<Fp>]) -> Result<()> {
    match vectors.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::Dimension(format!(
            "vector of length {} in a subspace of F_p^{}",
            v.len(),
            n
        ))),
        None => Ok(()),
    }
}

impl fmt::Display for MatrixModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let z = MatrixModP::from_rows(k(5), &[vec![0]]);
        assert_eq!(z.kernel(), vec![vec![1]]);
        let id = MatrixModP::identity(k(3), 2);
        assert!(id.kernel().is_empty());
        let m = MatrixModP::from_rows(k(7), &[vec![0, 3], vec![0, 0]]);
        assert_eq!(m.kernel(), vec![vec![1, 0]]);
    }

    #[test]
    fn intersection_examples() {
        let f5 = k(5);
        let e1 = vec![1, 0];
        let e2 = vec![0, 1];
        assert_eq!(subspace_intersect(f5, 2, std::slice::from_ref(&e1), std::slice::from_ref(&e1)).unwrap(), vec![e1.clone()]);
        assert!(subspace_intersect(f5, 2, &[e1], &[e2]).unwrap().is_empty());

        let f3 = k(3);
        let got = subspace_intersect(
            f3,
            3,
            &[vec![1, 0, 0], vec![0, 1, 0]],
            &[vec![1, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(got.len(), 1);
        // Proportional to e1 + e2.
        assert_eq!(got[0][2], 0);
        assert_ne!(got[0][0], 0);
        assert_eq!(got[0][0], got[0][1]);
    }

    #[test]
    fn intersection_rejects_mismatched_lengths() {
        assert!(subspace_intersect(k(5), 2, &[vec![1, 0, 0]], &[vec![1, 0]]).is_err());
    }

    #[test]
    fn stable_rank_examples() {
        assert_eq!(MatrixModP::from_rows(k(5), &[vec![0]]).stable_rank().unwrap(), 0);
        assert_eq!(MatrixModP::from_rows(k(5), &[vec![2]]).stable_rank().unwrap(), 1);
        let m = MatrixModP::from_rows(k(7), &[vec![0, 3], vec![0, 0]]);
        assert_eq!(m.stable_rank().unwrap(), 0);
        assert!(MatrixModP::zeros(k(7), 2, 3).stable_rank().is_err());
    }

    #[test]
    fn solve_reports_inconsistency() {
        let m = MatrixModP::from_rows(k(7), &[vec![1, 1], vec![2, 2]]);
        assert!(m.solve(&[1, 3]).unwrap().is_none());
        let v = m.solve(&[1, 2]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&v).unwrap(), vec![1, 2]);
    }
}
