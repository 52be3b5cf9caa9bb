//! Dense exact linear algebra over [`Scalar`]s.
//!
//! Matrices here are small (a few hundred rows at most) but mostly zero, so
//! elimination skips zero entries instead of switching to a sparse format.

use std::fmt;

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, cols, rows: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { field, cols, rows }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.rows[i][j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.rows[r][c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Scalar::is_zero))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows(), "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.nrows(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[i];
            for (k, a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        acc[j] = &acc[j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        self.rows.iter().map(|r| dot(r, v, self.field)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let rows =
            self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Matrix { field: self.field, cols: self.cols, rows }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        Matrix { field: self.field, cols: self.cols, rows }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let one = self.field.one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv();
            if inv != one {
                for x in self.rows[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let (before, rest) = self.rows.split_at_mut(r);
            let (pivot_row, after) = rest.split_first_mut().unwrap();
            for other in before.iter_mut().chain(after.iter_mut()) {
                let f = other[c].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, x) in pivot_row.iter().enumerate().skip(c) {
                    if !x.is_zero() {
                        other[j] = &other[j] - &(&f * x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    /// Null space of the matrix.
    pub fn kernel(&self) -> Kernel {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free_cols: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let basis = free_cols
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &p) in m.rows.iter().zip(&pivots) {
                    if !row[f].is_zero() {
                        v[p] = -&row[f];
                    }
                }
                v
            })
            .collect();
        Kernel { basis, free_cols }
    }

    /// Solves `self * x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.nrows());
        let mut aug = self.clone();
        for (row, x) in aug.rows.iter_mut().zip(b) {
            row.push(x.clone());
        }
        aug.cols += 1;
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in aug.rows.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let mut aug = self.clone();
        for (i, row) in aug.rows.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
        }
        aug.cols = 2 * n;
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let rows = aug.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix { field: self.field, cols: n, rows })
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.nrows(), self.cols);
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..self.cols {
            let Some(p) = (c..m.rows.len()).find(|&i| !m.rows[i][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.rows.swap(p, c);
                det = -det;
            }
            det = &det * &m.rows[c][c];
            let inv = m.rows[c][c].inv();
            let (top, bottom) = m.rows.split_at_mut(c + 1);
            let pivot_row = &top[c];
            for row in bottom {
                let f = &row[c] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&f * &pivot_row[j]);
                    }
                }
            }
        }
        det
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_matrix(self))
    }
}

/// `[[a, b], [c, d]]`
pub fn format_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .rows
        .iter()
        .map(|r| {
            let xs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("[{}]", xs.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Basis of a null space in reduced form: `basis[i]` has a one in
/// `free_cols[i]` and zeros in every other free column, so the coordinates of
/// any kernel vector are its entries at the free columns.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub basis: Vec<Vec<Scalar>>,
    pub free_cols: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.free_cols.iter().map(|&c| v[c].clone()).collect()
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(s * x);
        }
    }
}

/// Coordinates `0..dim` that complete the span of `vectors` to a basis: the
/// non-pivot columns of the reduced spanning set.
pub fn complement_coordinates(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> Vec<usize> {
    let mut m = Matrix::from_rows(field, dim, vectors.to_vec());
    let pivots = m.rref();
    let mut is_pivot = vec![false; dim];
    for p in pivots {
        is_pivot[p] = true;
    }
    (0..dim).filter(|&c| !is_pivot[c]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let f = Field::Rational;
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(f, cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel();
        assert_eq!(k.dim(), 2);
        for v in &k.basis {
            assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
            assert_eq!(k.coordinates(v).iter().filter(|x| x.is_one()).count(), 1);
        }
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(Field::Rational, 2));
        assert_eq!(a.determinant(), Field::Rational.one());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(m(&[&[0, 1], &[1, 0]]).determinant() == Field::Rational.from_i64(-1));
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = Field::Rational;
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = a.solve(&[f.from_i64(3), f.from_i64(1), f.from_i64(4)]).unwrap();
        assert_eq!(x, vec![f.from_i64(2), f.from_i64(1)]);
        assert!(a.solve(&[f.from_i64(3), f.from_i64(1), f.from_i64(5)]).is_none());
    }

    #[test]
    fn complement() {
        let f = Field::Rational;
        let v = vec![vec![f.from_i64(1), f.from_i64(1), f.zero()]];
        assert_eq!(complement_coordinates(f, 3, &v), vec![1, 2]);
    }
}
