//! Dense row-major matrices over an arbitrary [`Ring`].

use std::ops::Index;

use crate::ring::{Field, Involution, Ring};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::ShapeMismatch(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given (0-based) row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::scalar(ring, n, &ring.one())
    }

    pub fn scalar<R: Ring<Elem = E>>(ring: &R, n: usize, c: &E) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { ring.zero() })
    }

    pub fn diagonal<R: Ring<Elem = E>>(ring: &R, diag: &[E]) -> Self {
        let n = diag.len();
        Matrix::from_fn(
            n,
            n,
            |i, j| if i == j { diag[i].clone() } else { ring.zero() },
        )
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|e| ring.is_zero(e))
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            ring.add(self.get(i, j), rhs.get(i, j))
        })
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sub"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            ring.sub(self.get(i, j), rhs.get(i, j))
        })
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|e| ring.neg(e))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|e| ring.mul(c, e))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(ring.zero(), |acc, t| {
                ring.add(&acc, &ring.mul(self.get(i, t), rhs.get(t, j)))
            })
        })
    }

    pub fn conj_transpose<R: Involution<Elem = E>>(&self, ring: &R) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| ring.conj(self.get(j, i)))
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        (0..self.rows.min(self.cols)).fold(ring.zero(), |acc, i| ring.add(&acc, self.get(i, i)))
    }

    /// Division-free determinant by expansion over column subsets.
    ///
    /// `O(n 2^n)` ring operations; works over any commutative ring, which is
    /// what compound matrices over polynomial rings need. Sizes above 20 are
    /// rejected: use [`Matrix::det_field`] there.
    pub fn det<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        assert!(n <= 20, "subset expansion is limited to 20x20");
        if n == 0 {
            return ring.one();
        }
        let full = (1usize << n) - 1;
        let mut partial: Vec<Option<E>> = vec![None; 1 << n];
        partial[0] = Some(ring.one());
        for mask in 0..full {
            let Some(acc) = partial[mask].take() else {
                continue;
            };
            let row = mask.count_ones() as usize;
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let entry = self.get(row, col);
                if ring.is_zero(entry) {
                    continue;
                }
                // inversions added by placing `col` after the columns in `mask`
                let inversions = (mask >> (col + 1)).count_ones();
                let mut term = ring.mul(entry, &acc);
                if inversions % 2 == 1 {
                    term = ring.neg(&term);
                }
                let slot = &mut partial[mask | (1 << col)];
                *slot = Some(match slot.take() {
                    Some(prev) => ring.add(&prev, &term),
                    None => term,
                });
            }
        }
        partial[full].take().unwrap_or_else(|| ring.zero())
    }

    /// Determinant by Gaussian elimination over a field.
    pub fn det_field<F: Field<Elem = E>>(&self, field: &F) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !field.is_zero(&a[r][c])) else {
                return field.zero();
            };
            if p != c {
                a.swap(p, c);
                det = field.neg(&det);
            }
            let pivot = a[c][c].clone();
            det = field.mul(&det, &pivot);
            let inv = field.inv(&pivot).expect("nonzero pivot");
            for r in c + 1..n {
                if field.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = field.mul(&a[r][c], &inv);
                #[allow(clippy::needless_range_loop)]
                for j in c..n {
                    let t = field.mul(&factor, &a[c][j]);
                    a[r][j] = field.sub(&a[r][j], &t);
                }
            }
        }
        det
    }

    /// Inverse over a field; `None` when singular.
    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Matrix::identity(field, n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !field.is_zero(&a[r][c]))?;
            a.swap(p, c);
            inv.swap(p, c);
            let pivot_inv = field.inv(&a[c][c])?;
            for j in 0..n {
                a[c][j] = field.mul(&a[c][j], &pivot_inv);
                inv[c][j] = field.mul(&inv[c][j], &pivot_inv);
            }
            for r in 0..n {
                if r == c || field.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = a[r][c].clone();
                for j in 0..n {
                    let t = field.mul(&factor, &a[c][j]);
                    a[r][j] = field.sub(&a[r][j], &t);
                    let t = field.mul(&factor, &inv[c][j]);
                    inv[r][j] = field.sub(&inv[r][j], &t);
                }
            }
        }
        Matrix::from_rows(inv).ok()
    }

    /// Solve `self * x = b` for square nonsingular `self`.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Option<Vec<E>> {
        let inv = self.inverse(field)?;
        Some(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(field.zero(), |acc, j| {
                        field.add(&acc, &field.mul(inv.get(i, j), &b[j]))
                    })
                })
                .collect(),
        )
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}
