use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::{FieldElement, FiniteField};

pub const MAX_DIM: usize = 4;

/// Square matrix over a finite field, row-major, dimension at most 4.
///
/// Entries are stored inline as packed field elements; slots beyond `n * n`
/// stay zero so equality and hashing can use the whole array.
#[derive(Clone)]
pub struct Matrix {
    field: Arc<FiniteField>,
    n: u8,
    entries: [u16; MAX_DIM * MAX_DIM],
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl Matrix {
    pub fn zero(field: &Arc<FiniteField>, n: usize) -> Result<Matrix, AlgebraError> {
        if n == 0 || n > MAX_DIM {
            return Err(AlgebraError::BadDimension(n));
        }
        Ok(Matrix {
            field: field.clone(),
            n: n as u8,
            entries: [0; MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(field: &Arc<FiniteField>, n: usize) -> Result<Matrix, AlgebraError> {
        let mut m = Matrix::zero(field, n)?;
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        Ok(m)
    }

    pub fn from_rows(field: &Arc<FiniteField>, rows: &[Vec<u32>]) -> Result<Matrix, AlgebraError> {
        let n = rows.len();
        let mut m = Matrix::zero(field, n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch(n, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= field.order() {
                    return Err(AlgebraError::NotAPermutation(format!(
                        "entry {v} is not a field element"
                    )));
                }
                m.set(i, j, FieldElement(v));
            }
        }
        Ok(m)
    }

    /// Scalar matrix `lambda * I`.
    pub fn scalar(field: &Arc<FiniteField>, n: usize, lambda: FieldElement) -> Result<Matrix, AlgebraError> {
        let mut m = Matrix::zero(field, n)?;
        for i in 0..n {
            m.set(i, i, lambda);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        FieldElement(self.entries[i * MAX_DIM + j] as u32)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * MAX_DIM + j] = v.0 as u16;
    }

    pub fn same_space(&self, other: &Matrix) -> bool {
        self.n == other.n && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch(self.dim(), other.dim()));
        }
        if !self.same_space(other) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let n = self.dim();
        let f = &*self.field;
        let mut out = Matrix {
            field: self.field.clone(),
            n: self.n,
            entries: [0; MAX_DIM * MAX_DIM],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElement::ZERO;
                for t in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, t), other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn det(&self) -> FieldElement {
        let f = &*self.field;
        let n = self.dim();
        let mut a = self.clone();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a.get(r, col) != FieldElement::ZERO) else {
                return FieldElement::ZERO;
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = f.neg(det);
            }
            let pv = a.get(col, col);
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(a.get(r, col), pinv);
                if factor == FieldElement::ZERO {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(a.get(r, c), f.mul(factor, a.get(col, c)));
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for c in 0..self.dim() {
            self.entries.swap(r1 * MAX_DIM + c, r2 * MAX_DIM + c);
        }
    }

    /// Gauss–Jordan inversion.
    pub fn inverse(&self) -> Result<Matrix, AlgebraError> {
        let f = &*self.field;
        let n = self.dim();
        let mut a = self.clone();
        let mut inv = Matrix::identity(&self.field, n)?;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a.get(r, col) != FieldElement::ZERO)
                .ok_or(AlgebraError::Singular)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let pinv = f.inv(a.get(col, col))?;
            for c in 0..n {
                a.set(col, c, f.mul(a.get(col, c), pinv));
                inv.set(col, c, f.mul(inv.get(col, c), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == FieldElement::ZERO {
                    continue;
                }
                for c in 0..n {
                    a.set(r, c, f.sub(a.get(r, c), f.mul(factor, a.get(col, c))));
                    inv.set(r, c, f.sub(inv.get(r, c), f.mul(factor, inv.get(col, c))));
                }
            }
        }
        Ok(inv)
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.dim();
        let d = self.get(0, 0);
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == if i == j { d } else { FieldElement::ZERO }))
    }

    pub(crate) fn encode_into(&self, out: &mut Vec<u8>) {
        let wide = self.field.encoding_width() == 2;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j).0;
                if wide {
                    out.extend_from_slice(&(v as u16).to_be_bytes());
                } else {
                    out.push(v as u8);
                }
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.dim() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j).0)?;
            }
        }
        write!(f, "]")
    }
}
