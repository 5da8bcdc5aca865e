//! Dense exact linear algebra over the rationals and prime fields.
//!
//! Echelon pivoting takes the first nonzero entry; exact arithmetic makes
//! stability moot and the fixed choice keeps outputs deterministic.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{DomainMismatch, FieldElem, FieldTag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    Dimension(String),
    Mixed(DomainMismatch),
}

impl From<DomainMismatch> for LinAlgError {
    fn from(e: DomainMismatch) -> Self {
        LinAlgError::Mixed(e)
    }
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::Dimension(m) => write!(f, "dimension mismatch: {m}"),
            LinAlgError::Mixed(e) => write!(f, "{e}"),
        }
    }
}

/// Row-major dense matrix of exact field elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldTag,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

impl Matrix {
    pub fn new(
        field: FieldTag,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElem>,
    ) -> Result<Matrix, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.tag() != field {
                return Err(LinAlgError::Mixed(DomainMismatch(format!(
                    "{} entry in a {} matrix",
                    e.tag(),
                    field
                ))));
            }
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn zero(field: FieldTag, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: alloc::vec![FieldElem::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldTag, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldTag, rows: Vec<Vec<FieldElem>>) -> Result<Matrix, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::Dimension("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: FieldTag, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|x| FieldElem::from_i64(*x, field)))
            .collect();
        Matrix::new(field, r, c, entries).expect("literal matrix")
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElem::zero(self.field);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::Dimension("add shapes differ".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            entries.push(a.add(b)?);
        }
        Matrix::new(self.field, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        self.add(&other.scale(&FieldElem::from_i64(-1, self.field)))
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(c).expect("same field")).collect(),
        }
    }

    pub fn apply(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Dimension("vector length".into()));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = FieldElem::zero(self.field);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(&v[k])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElem::is_zero)
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // First nonzero entry in this column at or below `row`.
            let Some(pr) = (row..m.rows).find(|r| !m.get(*r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(row, j).mul(&inv).expect("same field");
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in 0..m.cols {
                        let v = m
                            .get(r, j)
                            .sub(&factor.mul(m.get(row, j)).expect("same field"))
                            .expect("same field");
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right null space, one vector per free column,
    /// in ascending free-column order. Empty iff the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let is_pivot = |j: usize| pivots.binary_search(&j).is_ok();
        for free in 0..self.cols {
            if is_pivot(free) {
                continue;
            }
            let mut v = alloc::vec![FieldElem::zero(self.field); self.cols];
            v[free] = FieldElem::one(self.field);
            for (prow, pcol) in pivots.iter().enumerate() {
                v[*pcol] = r.get(prow, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self · x = rhs` with free variables set to
    /// zero, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[FieldElem]) -> Result<Option<Vec<FieldElem>>, LinAlgError> {
        if rhs.len() != self.rows {
            return Err(LinAlgError::Dimension("rhs length".into()));
        }
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = alloc::vec![FieldElem::zero(self.field); self.cols];
        for (prow, pcol) in pivots.iter().enumerate() {
            x[*pcol] = r.get(prow, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// Stacks row vectors into a matrix (vectors must share the field tag).
pub fn stack(field: FieldTag, rows: &[Vec<FieldElem>]) -> Matrix {
    Matrix::from_rows(field, rows.to_vec()).expect("stacked rows")
}

/// Whether `v` lies in the row span of `basis`.
pub fn in_span(field: FieldTag, basis: &[Vec<FieldElem>], v: &[FieldElem]) -> bool {
    if basis.is_empty() {
        return v.iter().all(FieldElem::is_zero);
    }
    let a = stack(field, basis).transpose();
    a.solve(v).expect("shapes agree").is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_repeated_rows() {
        let m = Matrix::from_i64(FieldTag::Q, &[&[1, 1], &[1, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        // Canonical form: free variable 1, pivot carries the negation.
        assert_eq!(
            basis[0],
            alloc::vec![FieldElem::from_i64(-1, FieldTag::Q), FieldElem::from_i64(1, FieldTag::Q)]
        );
        // The vector annihilates the matrix.
        assert!(m.apply(&basis[0]).unwrap().iter().all(FieldElem::is_zero));
    }

    #[test]
    fn kernel_over_f2() {
        let m = Matrix::from_i64(FieldTag::Fp(2), &[&[1, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(
            basis[0],
            alloc::vec![
                FieldElem::from_i64(1, FieldTag::Fp(2)),
                FieldElem::from_i64(1, FieldTag::Fp(2))
            ]
        );
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_i64(FieldTag::Q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn hankel_system_for_powers_of_two() {
        // Sequence 2^n for n ≤ 6. Brute-force recurrence fit: a degree-1
        // monic relation c0·a_n + a_{n+1} = 0 must solve to c0 = -2.
        let seq: Vec<FieldElem> =
            (0..7).map(|n| FieldElem::from_i64(1 << n, FieldTag::Q)).collect();
        let rows: Vec<Vec<FieldElem>> =
            (0..6).map(|n| alloc::vec![seq[n].clone()]).collect();
        let rhs: Vec<FieldElem> = (0..6).map(|n| seq[n + 1].neg()).collect();
        let m = stack(FieldTag::Q, &rows);
        let sol = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(sol, alloc::vec![FieldElem::from_i64(-2, FieldTag::Q)]);
    }

    #[test]
    fn mixed_domains_rejected() {
        let err = Matrix::new(
            FieldTag::Q,
            1,
            2,
            alloc::vec![
                FieldElem::from_i64(1, FieldTag::Q),
                FieldElem::from_i64(1, FieldTag::Fp(2))
            ],
        )
        .unwrap_err();
        assert!(matches!(err, LinAlgError::Mixed(_)));
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_i64(FieldTag::Q, &[&[1, 1], &[1, 1]]);
        let rhs = alloc::vec![
            FieldElem::from_i64(1, FieldTag::Q),
            FieldElem::from_i64(2, FieldTag::Q)
        ];
        assert_eq!(m.solve(&rhs).unwrap(), None);
    }
}
