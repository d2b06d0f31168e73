//! Dense exact linear algebra over `ℚ(i)`: matrices, reduced row echelon form,
//! kernels and subspaces.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::Gq;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gq>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Gq::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gq::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Gq>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Gq>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Gq]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
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

    pub fn get(&self, i: usize, j: usize) -> &Gq {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Gq) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Gq) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[Gq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Gq> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Gq>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gq::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Largest `|entry|²`, zero exactly when the matrix vanishes.
    pub fn max_norm_sqr(&self) -> crate::scalar::Rational {
        self.data
            .iter()
            .map(Gq::norm_sqr)
            .max()
            .unwrap_or_else(crate::scalar::Rational::zero)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Gq]) -> Vec<Gq> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Gq::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Gq, &Gq) -> Gq) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Gq) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Gq::one())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Gq::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    /// `AB − BA`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).add(&rhs.mul(self))
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &Matrix) -> Matrix {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Matrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self.clone()).1.len()
    }

    /// Basis of the null space, each vector normalised so that the free
    /// variable it belongs to equals one.
    pub fn nullspace(&self) -> Vec<Vec<Gq>> {
        let (r, pivots) = rref(self.clone());
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Gq::zero(); self.cols];
            v[free] = Gq::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self · x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Gq]) -> Option<Vec<Gq>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = rref(aug);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Gq::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Gq::one());
        }
        let (r, pivots) = rref(aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Gq {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Gq::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Gq::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = m.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &(&f * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m.get(row, col).inv().expect("nonzero pivot");
        for c in col..m.cols {
            let v = m.get(row, c) * &inv;
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let f = m.get(r, col).clone();
            if f.is_zero() {
                continue;
            }
            for c in col..m.cols {
                let pc = m.get(row, c);
                if pc.is_zero() {
                    continue;
                }
                let v = m.get(r, c) - &(&f * pc);
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `ℚ(i)^ambient`, stored as the rows of its reduced
/// row echelon basis, so two equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Gq>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Matrix::identity(ambient).columns())
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Gq>>) -> Self {
        let rows: Vec<Vec<Gq>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector outside ambient space");
        }
        let (r, pivots) = rref(Matrix::from_rows(&rows));
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Self { ambient, basis }
    }

    /// Kernel of `op` restricted to `domain` (a subspace of its source).
    pub fn kernel_within(op: &Matrix, domain: &Subspace) -> Subspace {
        assert_eq!(op.cols(), domain.ambient);
        if domain.basis.is_empty() {
            return Subspace::zero(domain.ambient);
        }
        let b = domain.as_columns();
        let restricted = op.mul(&b);
        let coeffs = restricted.nullspace();
        Subspace::span(domain.ambient, coeffs.iter().map(|c| b.mul_vec(c)))
    }

    pub fn kernel(op: &Matrix) -> Subspace {
        Subspace::span(op.cols(), op.nullspace())
    }

    pub fn image(op: &Matrix) -> Subspace {
        Subspace::span(op.rows(), op.columns())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Gq>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn contains(&self, v: &[Gq]) -> bool {
        if v.iter().all(Gq::is_zero) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        self.as_columns().solve(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // [U | -W] (x, y) = 0  =>  U x lies in both
        let u = self.as_columns();
        let w = other.as_columns().neg();
        let mut joined = Matrix::zeros(self.ambient, u.cols() + w.cols());
        for i in 0..self.ambient {
            for j in 0..u.cols() {
                joined.set(i, j, u.get(i, j).clone());
            }
            for j in 0..w.cols() {
                joined.set(i, u.cols() + j, w.get(i, j).clone());
            }
        }
        let vecs = joined
            .nullspace()
            .into_iter()
            .map(|x| u.mul_vec(&x[..u.cols()]))
            .collect::<Vec<_>>();
        Subspace::span(self.ambient, vecs)
    }

    /// Image of this subspace under `op`.
    pub fn map(&self, op: &Matrix) -> Subspace {
        Subspace::span(op.rows(), self.basis.iter().map(|v| op.mul_vec(v)))
    }

    /// Whether `op` is injective on this subspace.
    pub fn injective_under(&self, op: &Matrix) -> bool {
        self.map(op).dim() == self.dim()
    }

    pub fn conj(&self) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().map(|v| v.iter().map(Gq::conj).collect()),
        )
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| Gq::from_int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Gq::is_zero));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant(), Gq::from_int(1));
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn subspace_intersection_and_kernel() {
        let e = |v: &[i64]| v.iter().map(|&x| Gq::from_int(x)).collect::<Vec<_>>();
        let u = Subspace::span(3, [e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let w = Subspace::span(3, [e(&[0, 1, 0]), e(&[0, 0, 1])]);
        let both = u.intersect(&w);
        assert_eq!(both, Subspace::span(3, [e(&[0, 5, 0])]));
        assert_eq!(u.sum(&w).dim(), 3);
        let proj = m(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(Subspace::kernel_within(&proj, &u).dim(), 1);
        assert!(u.contains(&e(&[3, -2, 0])));
        assert!(!u.contains(&e(&[0, 0, 1])));
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&[Gq::from_int(1), Gq::from_int(2)]).is_none());
        assert!(a.solve(&[Gq::from_int(2), Gq::from_int(2)]).is_some());
    }
}
