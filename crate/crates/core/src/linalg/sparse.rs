use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;

use super::Matrix;

/// Sparse row of `(column, value)` pairs, strictly increasing in column,
/// with no stored zeros.
pub type SparseRow<F> = Vec<(usize, <F as Field>::Elem)>;

/// Row-compressed matrix used for the large, structured maps of the
/// resolution and the Cech total complex.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<SparseRow<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    /// Builds from unordered triplets; duplicate positions are summed.
    pub fn from_triplets(
        field: F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Result<Self> {
        let mut acc: Vec<HashMap<usize, F::Elem>> = vec![HashMap::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({i}, {j}) in a {rows}x{cols} matrix"
                )));
            }
            let slot = acc[i].entry(j).or_insert_with(|| field.zero());
            *slot = field.add(slot, &v);
        }
        let entries = acc
            .into_iter()
            .map(|m| {
                let mut row: SparseRow<F> = m.into_iter().filter(|(_, v)| !field.is_zero(v)).collect();
                row.sort_by_key(|&(j, _)| j);
                row
            })
            .collect();
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        let f = m.field();
        let entries = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !f.is_zero(v))
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        Self {
            field: f,
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, F::Elem)] {
        &self.entries[i]
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::dims(self.cols, v.len()));
        }
        let f = self.field;
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().fold(f.zero(), |acc, (j, a)| f.mul_add(&acc, a, &v[*j])))
            .collect())
    }

    pub fn mul_dense(&self, m: &Matrix<F>) -> Result<Matrix<F>> {
        if m.rows() != self.cols {
            return Err(Error::dims(self.cols, m.rows()));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, m.cols());
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row {
                for j in 0..m.cols() {
                    let b = m.get(*k, j);
                    if !f.is_zero(b) {
                        let v = f.mul_add(out.get(i, j), a, b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<SparseRow<F>> = vec![Vec::new(); self.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                entries[*j].push((i, v.clone()));
            }
        }
        Self {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Rank by incremental row echelon reduction. Rows are fed from last to
    /// first and each basis row pivots on its largest column.
    pub fn rank(&self) -> usize {
        let mut basis = super::EchelonBasis::new(self.field, self.cols);
        for row in self.entries.iter().rev() {
            basis.insert(row.clone());
        }
        basis.len()
    }
}
