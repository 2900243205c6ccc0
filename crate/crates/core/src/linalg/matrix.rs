//! Dense matrices with exact Gaussian elimination.

use std::fmt;

use super::vector;
use super::{Field, Scalar};

/// A dense `rows x cols` matrix, row-major. As a linear map it sends
/// `cols`-dimensional column vectors to `rows`-dimensional ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is wrong
    /// or an entry belongs to another field.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        assert!(
            data.iter().all(|x| x.field() == field),
            "matrix entry from another field"
        );
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        Matrix::from_vec(
            field,
            rows,
            cols,
            entries.iter().map(|&x| field.from_i64(x)).collect(),
        )
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix::from_vec(field, rows, cols, data)
    }

    /// The matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "matrix entry from another field");
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = vector::zeros(self.field, self.rows);
        for (c, x) in vector::support(v) {
            for (r, o) in out.iter_mut().enumerate() {
                o.add_product(&self.data[r * self.cols + c], x);
            }
        }
        out
    }

    /// `self * rhs`
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c].add_product(a, &rhs.data[k * rhs.cols + c]);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        Matrix::from_vec(
            self.field,
            self.rows,
            self.cols,
            vector::add(&self.data, &rhs.data),
        )
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape mismatch"
        );
        Matrix::from_vec(
            self.field,
            self.rows,
            self.cols,
            vector::sub(&self.data, &rhs.data),
        )
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_vec(self.field, self.rows, self.cols, vector::neg(&self.data))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_vec(
            self.field,
            self.rows,
            self.cols,
            vector::scale(c, &self.data),
        )
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    /// Commutator `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix::from_vec(self.field, self.rows + rhs.rows, self.cols, data)
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let zero = self.field.zero();
        Matrix::from_fn(
            self.field,
            self.rows + rhs.rows,
            self.cols + rhs.cols,
            |r, c| match (r < self.rows, c < self.cols) {
                (true, true) => self.get(r, c).clone(),
                (false, false) => rhs.get(r - self.rows, c - self.cols).clone(),
                _ => zero.clone(),
            },
        )
    }

    /// Reduced row echelon form. Pivots are taken in the leftmost column
    /// that still has a nonzero entry, from the topmost such row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.data[pivot_row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis of the right kernel: one vector per free column of the
    /// RREF, with that free variable set to one and the other free variables zero.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix: r, pivots } = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    /// Solves `self * x = b`. Returns `None` when `b` is outside the column
    /// space; otherwise the particular solution with all free variables zero,
    /// together with the kernel basis.
    pub fn solve_affine(&self, b: &[Scalar]) -> Option<AffineSolution> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let augmented = self.hstack(&Matrix::from_vec(self.field, self.rows, 1, b.to_vec()));
        let Rref { matrix: r, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = vector::zeros(self.field, self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            particular[p] = r.get(row, self.cols).clone();
        }
        Some(AffineSolution {
            particular,
            kernel: kernel_from_rref(&r, &pivots, self.cols),
        })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { matrix: r, pivots } = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| {
            r.get(i, n + j).clone()
        }))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let field = r.field;
    let free = (0..cols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vector::unit(field, cols, f);
        for (row, &p) in pivots.iter().enumerate() {
            if p < cols {
                v[p] = -r.get(row, f);
            }
        }
        v
    })
    .collect()
}

/// A particular solution of a linear system plus a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(q(), 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(q(), 4).rank(), 4);
        assert_eq!(Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 3).kernel_basis().is_empty());
        let k = Matrix::zeros(q(), 2, 3).kernel_basis();
        assert_eq!(
            k,
            (0..3).map(|i| vector::unit(q(), 3, i)).collect::<Vec<_>>()
        );
        let f2 = Field::Prime(2);
        let k = Matrix::from_i64(f2, 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().from_i64(3), q().ratio(-1, 2)];
        let s = Matrix::identity(q(), 2).solve_affine(&b).unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        assert!(Matrix::zeros(q(), 2, 2)
            .solve_affine(&[q().one(), q().zero()])
            .is_none());

        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        let s = m.solve_affine(&[q().one(), q().from_i64(2)]).unwrap();
        assert_eq!(s.particular, vec![q().one(), q().zero()]);
        assert_eq!(s.kernel, vec![vec![q().from_i64(-2), q().one()]]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(q(), 3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4])
            .inverse()
            .is_none());
    }
}
