use crate::error::{param, Result};
use crate::field::{FieldElement, FiniteField};

/// Dense row-major matrix over a finite field. Arithmetic takes the field explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![FieldElement::default(); rows * cols] }
    }

    pub fn identity(n: usize, f: &FiniteField) -> Self {
        Self::scalar(n, f.one())
    }

    pub fn scalar(n: usize, c: FieldElement) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return param("ragged matrix rows");
        }
        Ok(FieldMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
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

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &FieldMatrix, f: &FiniteField) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FieldMatrix, f: &FiniteField) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FieldMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FieldMatrix, f: &FiniteField) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FieldMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: FieldElement, f: &FiniteField) -> FieldMatrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FieldMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn pow(&self, mut e: u64, f: &FiniteField) -> FieldMatrix {
        let mut r = FieldMatrix::identity(self.rows, f);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, f);
            }
            b = b.mul(&b, f);
            e >>= 1;
        }
        r
    }

    /// Signed power; panics on a singular matrix with negative exponent.
    pub fn pow_signed(&self, e: i64, f: &FiniteField) -> FieldMatrix {
        if e >= 0 {
            self.pow(e as u64, f)
        } else {
            self.inverse(f).expect("invertible matrix").pow(e.unsigned_abs(), f)
        }
    }

    /// Places `block` with its top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FieldMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of {x : self · x = 0}, as column vectors.
    pub fn nullspace(&self, f: &FiniteField) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<FieldMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = FieldMatrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &FieldMatrix::identity(n, f));
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn map(&self, g: impl Fn(FieldElement) -> FieldElement) -> FieldMatrix {
        FieldMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| g(x)).collect() }
    }
}

/// Block-diagonal sum.
pub fn direct_sum(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn inverse_and_rank() {
        let f = make_field(5, 4).unwrap();
        let e = |n| f.from_int(n);
        let m = FieldMatrix::from_rows(vec![vec![e(1), e(2)], vec![e(3), e(4)]]).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), FieldMatrix::identity(2, &f));
        let s = FieldMatrix::from_rows(vec![vec![e(1), e(2)], vec![e(2), e(4)]]).unwrap();
        assert_eq!(s.rank(&f), 1);
        assert!(s.inverse(&f).is_none());
        let ns = s.nullspace(&f);
        assert_eq!(ns.len(), 1);
        let col = FieldMatrix::from_rows(ns[0].iter().map(|&x| vec![x]).collect()).unwrap();
        assert!(s.mul(&col, &f).is_zero());
    }
}
