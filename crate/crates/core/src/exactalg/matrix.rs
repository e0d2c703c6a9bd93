//! Dense matrices over a finite field with exact Gauss-Jordan elimination.

use std::ops::{Index, IndexMut};

use super::field::{ArithError, FieldElement, FieldSpec};

/// Row-major dense matrix with entries in a fixed field.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Outcome of reduction to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct RrefResult {
    pub matrix: ExactMatrix,
    /// Column index of the pivot in each nonzero row, ascending.
    pub pivots: Vec<usize>,
}

impl RrefResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Index<[usize; 2]> for ExactMatrix {
    type Output = FieldElement;

    fn index(&self, idx: [usize; 2]) -> &FieldElement {
        &self.data[idx[0] * self.cols + idx[1]]
    }
}

impl IndexMut<[usize; 2]> for ExactMatrix {
    fn index_mut(&mut self, idx: [usize; 2]) -> &mut FieldElement {
        &mut self.data[idx[0] * self.cols + idx[1]]
    }
}

impl ExactMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement(0); rows * cols],
        }
    }

    /// Build from row slices; all rows must share a length.
    pub fn from_rows(
        field: &FieldSpec,
        rows: &[Vec<FieldElement>],
    ) -> Result<ExactMatrix, ArithError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ArithError::ShapeMismatch);
        }
        Ok(ExactMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn identity(field: &FieldSpec, n: usize) -> ExactMatrix {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[[i, i]] = FieldElement(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, ArithError> {
        if self.field != other.field {
            return Err(ArithError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(ArithError::ShapeMismatch);
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[[i, k]];
                if a.0 == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other[[k, j]]);
                    out[[i, j]] = f.add(out[[i, j]], t);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, ArithError> {
        if v.len() != self.rows {
            return Err(ArithError::ShapeMismatch);
        }
        let f = &self.field;
        let mut out = vec![FieldElement(0); self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi.0 == 0 {
                continue;
            }
            for j in 0..self.cols {
                let t = f.mul(vi, self[[i, j]]);
                out[j] = f.add(out[j], t);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; pivot selection is first nonzero entry in
    /// column order, so the result is deterministic.
    pub fn rref(&self) -> RrefResult {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m[[i, c]].0 != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let tmp = m[[r, j]];
                    m[[r, j]] = m[[pr, j]];
                    m[[pr, j]] = tmp;
                }
            }
            let inv = f.inv(m[[r, c]]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[[r, j]] = f.mul(m[[r, j]], inv);
            }
            for i in 0..m.rows {
                if i == r || m[[i, c]].0 == 0 {
                    continue;
                }
                let factor = m[[i, c]];
                for j in c..m.cols {
                    let t = f.mul(factor, m[[r, j]]);
                    m[[i, j]] = f.sub(m[[i, j]], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefResult { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right kernel {v : M v^T = 0}, one row per free column of
    /// the RREF, in ascending free-column order. For free column f the basis
    /// vector has a 1 in position f and -R[r][f] in each pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let red = self.rref();
        let f = &self.field;
        let pivot_set: Vec<usize> = red.pivots.clone();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![FieldElement(0); self.cols];
            v[free] = FieldElement(1);
            for (r, &pc) in pivot_set.iter().enumerate() {
                v[pc] = f.neg(red.matrix[[r, free]]);
            }
            out.push(v);
        }
        out
    }

    /// One solution of M x^T = b^T if the system is consistent.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, ArithError> {
        if b.len() != self.rows {
            return Err(ArithError::ShapeMismatch);
        }
        let f = &self.field;
        let mut aug = ExactMatrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[[i, j]] = self[[i, j]];
            }
            aug[[i, self.cols]] = b[i];
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None); // a pivot in the constants column: inconsistent
        }
        let mut x = vec![FieldElement(0); self.cols];
        for (r, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.matrix[[r, self.cols]];
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, None if singular.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::ShapeMismatch);
        }
        let f = &self.field;
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[[i, j]] = self[[i, j]];
            }
            aug[[i, n + i]] = FieldElement(1);
        }
        let red = aug.rref();
        if red.rank() < n || red.pivots.iter().copied().take(n).ne(0..n) {
            return Ok(None);
        }
        let mut out = ExactMatrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out[[i, j]] = red.matrix[[i, n + j]];
            }
        }
        Ok(Some(out))
    }
}
