//! Dense matrices over GF(p^r): products, echelon forms, kernels and
//! characteristic polynomials.

use crate::field::{ExtField, FieldElement};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(f: &ExtField, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &ExtField, n: usize) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Columns given as vectors.
    pub fn from_cols(f: &ExtField, rows: usize, cols: &[Vec<FieldElement>]) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn diagonal(f: &ExtField, d: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(f, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, f: &ExtField, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Matrix::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = f.add(out.get(i, j), &f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &ExtField, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn sub(&self, f: &ExtField, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    /// `self - a I`
    pub fn sub_scalar(&self, f: &ExtField, a: &FieldElement) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = f.sub(m.get(i, i), a);
            m.set(i, i, v);
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &ExtField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &ExtField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self, f: &ExtField) -> Vec<Vec<FieldElement>> {
        let (m, pivots) = self.rref(f);
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

    /// Characteristic polynomial det(xI - A), via Hessenberg reduction.
    pub fn charpoly(&self, f: &ExtField) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        // reduce to upper Hessenberg form by similarity transforms
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&i| !h.get(i, k).is_zero()) else {
                continue;
            };
            if piv != k + 1 {
                for j in 0..n {
                    h.data.swap(piv * n + j, (k + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + piv, i * n + k + 1);
                }
            }
            let inv = f.inv(h.get(k + 1, k)).unwrap();
            for i in k + 2..n {
                if h.get(i, k).is_zero() {
                    continue;
                }
                let u = f.mul(h.get(i, k), &inv);
                // row_i -= u row_{k+1}
                for j in 0..n {
                    let v = f.sub(h.get(i, j), &f.mul(&u, h.get(k + 1, j)));
                    h.set(i, j, v);
                }
                // col_{k+1} += u col_i
                for r in 0..n {
                    let v = f.add(h.get(r, k + 1), &f.mul(&u, h.get(r, i)));
                    h.set(r, k + 1, v);
                }
            }
        }
        // recurrence on leading principal minors
        let x = Poly::new(vec![f.zero(), f.one()]);
        let mut ps: Vec<Poly> = vec![Poly::constant(f.one())];
        for m in 0..n {
            let mut pm = x.sub(f, &Poly::constant(h.get(m, m).clone())).mul(f, &ps[m]);
            let mut t = f.one();
            for i in (0..m).rev() {
                t = f.mul(&t, h.get(i + 1, i));
                if t.is_zero() {
                    break;
                }
                let c = f.mul(&t, h.get(i, m));
                pm = pm.sub(f, &ps[i].scale(f, &c));
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, f: &ExtField) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (m, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}
