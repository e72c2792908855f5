//! Free lattices with a skew-Hermitian Gram matrix.

use crate::cyclofield::{CycloElement, CycloField};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::{Error, Result};

/// `O_L^n` with the form `Psi(x, y) = x^dagger Psi y`, where
/// `Psi^dagger = -Psi` (conjugate-linear in the first slot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianModule {
    field: CycloField,
    gram: Matrix<CycloElement>,
}

impl HermitianModule {
    pub fn new(field: &CycloField, gram: Matrix<CycloElement>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        for e in gram.entries() {
            if e.field() != field {
                return Err(Error::FieldMismatch(e.field().m(), field.m()));
            }
        }
        let n = gram.rows();
        for i in 0..n {
            for j in i..n {
                if gram[(j, i)].conj() != -&gram[(i, j)] {
                    return Err(Error::NotSkewHermitian { row: i, col: j });
                }
            }
        }
        Ok(HermitianModule {
            field: field.clone(),
            gram,
        })
    }

    /// Rank-one module with Gram `(psi)`.
    pub fn scalar(psi: CycloElement) -> Result<Self> {
        let field = psi.field().clone();
        HermitianModule::new(&field, Matrix::from_vec(1, 1, vec![psi])?)
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<CycloElement> {
        &self.gram
    }

    pub fn det(&self) -> CycloElement {
        self.gram.det_field(&self.field)
    }

    /// The module with Gram `B^dagger Psi B` (base change by the columns of `B`).
    pub fn base_change(&self, b: &Matrix<CycloElement>) -> Result<Self> {
        if b.rows() != self.rank() || !b.is_square() {
            return Err(Error::ShapeMismatch(
                "base change must be square of the module rank".into(),
            ));
        }
        let f = &self.field;
        let g = b.conj_transpose(f).mul(f, &self.gram).mul(f, b);
        HermitianModule::new(f, g)
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero(&self.field)
    }

    pub fn zero_element(&self) -> CycloElement {
        self.field.zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let l = CycloField::new(4).unwrap();
        let i = l.zeta();
        assert!(HermitianModule::scalar(i.clone()).is_ok());
        assert_eq!(
            HermitianModule::scalar(l.int(1)).unwrap_err(),
            Error::NotSkewHermitian { row: 0, col: 0 }
        );
        let bad =
            Matrix::from_rows(vec![vec![i.clone(), l.int(1)], vec![l.int(1), i.clone()]]).unwrap();
        assert_eq!(
            HermitianModule::new(&l, bad).unwrap_err(),
            Error::NotSkewHermitian { row: 0, col: 1 }
        );
        let good =
            Matrix::from_rows(vec![vec![i.clone(), l.int(1)], vec![l.int(-1), i.clone()]]).unwrap();
        let h = HermitianModule::new(&l, good).unwrap();
        assert_eq!(h.det(), l.int(0));
        let other = CycloField::new(5).unwrap();
        assert_eq!(
            HermitianModule::new(&other, Matrix::from_vec(1, 1, vec![i]).unwrap()).unwrap_err(),
            Error::FieldMismatch(4, 5)
        );
    }
}
