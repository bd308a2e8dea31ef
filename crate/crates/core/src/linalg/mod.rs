//! Exact linear algebra: dense Gauss-Jordan for small maps, sparse echelon
//! reduction for the large structured ones.

mod matrix;
mod sparse;

use std::collections::HashMap;

pub use matrix::{Echelon, Matrix};
pub use sparse::{SparseMatrix, SparseRow};

use crate::field::Field;

/// A growing set of linearly independent sparse vectors kept in echelon form.
///
/// Every stored row has a distinct pivot, its largest column, and no stored
/// row has a nonzero entry in the pivot column of a row inserted before it.
/// A candidate is reduced by repeatedly clearing its largest entry that sits
/// in some pivot column; each step only introduces entries in smaller
/// columns, so the loop terminates.
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: HashMap<usize, SparseRow<F>>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        let f = self.field;
        loop {
            let hit = v
                .iter()
                .rev()
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = hit else {
                return v;
            };
            let pivot_row = &self.rows[&col];
            // pivot rows are normalised to 1 at their pivot
            v = axpy(f, &v, &f.neg(&coeff), pivot_row);
        }
    }

    /// Adds `v` if it is independent of the basis. Returns whether it was.
    pub fn insert(&mut self, v: SparseRow<F>) -> bool {
        let f = self.field;
        let r = self.reduce(v);
        let Some((col, lead)) = r.last().cloned() else {
            return false;
        };
        let inv = f.inv(&lead).expect("stored entries are nonzero");
        let normalised = r.into_iter().map(|(c, x)| (c, f.mul(&inv, &x))).collect();
        self.rows.insert(col, normalised);
        true
    }

    pub fn insert_dense(&mut self, v: &[F::Elem]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        self.insert(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(c, x)| (c, x.clone()))
                .collect(),
        )
    }

    pub fn contains_dense(&self, v: &[F::Elem]) -> bool {
        let f = self.field;
        self.reduce(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(c, x)| (c, x.clone()))
                .collect(),
        )
        .is_empty()
    }
}

/// `a + s * b` on sparse rows.
fn axpy<F: Field>(f: F, a: &[(usize, F::Elem)], s: &F::Elem, b: &[(usize, F::Elem)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = f.mul_add(&a[i].1, s, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Vectorises a matrix column by column.
pub fn vec_col_major<F: Field>(m: &Matrix<F>) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            out.push(m.get(i, j).clone());
        }
    }
    out
}

/// Inverse of [`vec_col_major`].
pub fn unvec_col_major<F: Field>(field: F, rows: usize, cols: usize, v: &[F::Elem]) -> Matrix<F> {
    assert_eq!(v.len(), rows * cols);
    let mut m = Matrix::zeros(field, rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m.set(i, j, v[j * rows + i].clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
    }

    fn build<F: Field>(f: F, r: usize, c: usize, data: &[i64]) -> Matrix<F> {
        Matrix::from_vec(f, r, c, data.iter().map(|&x| f.from_i64(x)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank((r, c, data) in small_matrix()) {
            let m = build(Rationals, r, c, &data);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let p = build(PrimeField::new(7).unwrap(), r, c, &data);
            prop_assert_eq!(p.rank(), p.transpose().rank());
        }

        #[test]
        fn kernel_vectors_are_annihilated((r, c, data) in small_matrix()) {
            let f = PrimeField::new(11).unwrap();
            let m = build(f, r, c, &data);
            let k = m.kernel_basis();
            prop_assert_eq!(k.len() + m.rank(), c);
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
            }
            let km = Matrix::from_columns(f, c, &k).unwrap();
            prop_assert_eq!(km.rank(), k.len());
        }

        #[test]
        fn solve_is_exact_or_certified_absent((r, c, data) in small_matrix(), rhs in prop::collection::vec(-3i64..=3, 6)) {
            let q = Rationals;
            let m = build(q, r, c, &data);
            let b: Vec<_> = rhs[..r].iter().map(|&x| q.from_i64(x)).collect();
            match m.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
                None => {
                    let col = Matrix::from_vec(q, r, 1, b).unwrap();
                    prop_assert_eq!(m.hstack(&col).unwrap().rank(), m.rank() + 1);
                }
            }
        }

        #[test]
        fn sparse_rank_matches_dense((r, c, data) in small_matrix()) {
            let f = PrimeField::new(5).unwrap();
            let m = build(f, r, c, &data);
            prop_assert_eq!(SparseMatrix::from_dense(&m).rank(), m.rank());
        }
    }

    #[test]
    fn col_major_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64(f, &[&[1, 2, 3], &[4, 5, 6]]);
        let v = vec_col_major(&m);
        assert_eq!(v, vec![1, 4, 2, 5, 3, 6]);
        assert_eq!(unvec_col_major(f, 2, 3, &v), m);
    }
}
