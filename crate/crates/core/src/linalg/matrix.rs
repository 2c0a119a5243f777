//! Dense square complex matrices.
//!
//! Everything in this crate lives in dimension ≤ 8, so the storage is a flat
//! row-major `Vec` and all products are the textbook triple loop.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use super::LinalgError;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square `n×n` complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from rows; fails unless the rows form a non-empty square array.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::Shape(
                "matrix must have at least one row".into(),
            ));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(LinalgError::Shape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self, LinalgError> {
        if re.len() != im.len() {
            return Err(LinalgError::Shape(format!(
                "real part has {} rows, imaginary part {}",
                re.len(),
                im.len()
            )));
        }
        let rows = re
            .iter()
            .zip(im)
            .enumerate()
            .map(|(i, (r, m))| {
                if r.len() != m.len() {
                    return Err(LinalgError::Shape(format!(
                        "row {i}: real/imaginary lengths differ"
                    )));
                }
                Ok(r.iter()
                    .zip(m)
                    .map(|(&a, &b)| Complex64::new(a, b))
                    .collect())
            })
            .collect::<Result<Vec<Vec<Complex64>>, _>>()?;
        Self::from_rows(rows)
    }

    pub fn real(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖_max`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `K·self·K†`.
    pub fn conjugate_by(&self, k: &Self) -> Self {
        &(k * self) * &k.adjoint()
    }

    /// `‖U†U − 𝟙‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.n))
    }

    /// `‖M + M†‖_max`.
    pub fn skew_hermitian_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self[(i, j)] + self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `‖M − M†‖_max`.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap_or(col);
            let pivot = a[pivot_row * n + col];
            if pivot.norm() == 0.0 {
                return ZERO;
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            det *= pivot;
            for row in col + 1..n {
                let factor = a[row * n + col] / pivot;
                if factor == ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[row * n + j] -= factor * v;
                }
            }
        }
        det
    }

    /// The `size×size` diagonal block starting at `(start, start)`.
    pub fn principal_block(&self, start: usize, size: usize) -> Self {
        assert!(start + size <= self.n, "block out of range");
        Self::from_fn(size, |i, j| self[(start + i, start + j)])
    }

    /// Block-diagonal `diag(a, b)`.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let n = a.n + b.n;
        Self::from_fn(n, |i, j| match (i < a.n, j < a.n) {
            (true, true) => a[(i, j)],
            (false, false) => b[(i - a.n, j - a.n)],
            _ => ZERO,
        })
    }

    /// True when every entry off the `(1, n−1)` block diagonal is below `tol`.
    pub fn is_block_diagonal_1(&self, tol: f64) -> bool {
        (1..self.n).all(|j| self[(0, j)].norm() <= tol && self[(j, 0)].norm() <= tol)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in product");
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in sum");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in difference");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.n, self.n)?;
        for row in self.data.chunks(self.n) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `Tr(C·D†)`, the inner product on `su(n)`.
pub fn trace_inner(c: &ComplexMatrix, d: &ComplexMatrix) -> Result<Complex64, LinalgError> {
    if c.n != d.n {
        return Err(LinalgError::DimensionMismatch {
            left: c.n,
            right: d.n,
        });
    }
    Ok(c.data.iter().zip(&d.data).map(|(a, b)| a * b.conj()).sum())
}

/// Extends the unit vector `u` to a unitary matrix whose first column is `u`.
///
/// Remaining columns come from Gram–Schmidt over the standard basis, always
/// taking the basis vector with the largest residual next.
pub(crate) fn complete_unitary(u: &[Complex64]) -> ComplexMatrix {
    let m = u.len();
    let mut cols: Vec<Vec<Complex64>> = vec![u.to_vec()];
    let mut used = vec![false; m];
    while cols.len() < m {
        let mut best: Option<(usize, Vec<Complex64>, f64)> = None;
        for (k, taken) in used.iter().enumerate() {
            if *taken {
                continue;
            }
            let mut v = vec![ZERO; m];
            v[k] = ONE;
            for c in &cols {
                let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= proj * ci;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|b| norm > b.2) {
                best = Some((k, v, norm));
            }
        }
        let (k, mut v, norm) = best.expect("basis exhausted before completion");
        used[k] = true;
        // second pass against accumulated round-off
        for c in &cols {
            let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
        let norm2 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let scale = if norm2 > 0.0 { norm2 } else { norm };
        cols.push(v.into_iter().map(|z| z / scale).collect());
    }
    ComplexMatrix::from_fn(m, |i, j| cols[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_of_permutation_and_diagonal() {
        let p = ComplexMatrix::real(&[
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!((p.det() - ONE).norm() < 1e-15);
        let d = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, 1.0), c(-1.0, 0.0)]);
        assert!((d.det() - ONE).norm() < 1e-15);
    }

    #[test]
    fn trace_inner_identity() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(trace_inner(&id, &id).unwrap(), c(3.0, 0.0));
        let err = trace_inner(&id, &ComplexMatrix::identity(2)).unwrap_err();
        assert!(matches!(
            err,
            LinalgError::DimensionMismatch { left: 3, right: 2 }
        ));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = ComplexMatrix::from_rows(vec![vec![ONE, ZERO], vec![ONE]]).unwrap_err();
        assert!(matches!(err, LinalgError::Shape(_)));
    }

    #[test]
    fn completion_is_unitary_with_given_first_column() {
        let s = 1.0 / 3f64.sqrt();
        let u = vec![c(s, 0.0), c(0.0, s), c(-s, 0.0)];
        let w = complete_unitary(&u);
        assert!(w.unitarity_residual() < 1e-14);
        for i in 0..3 {
            assert!((w[(i, 0)] - u[i]).norm() < 1e-15);
        }
        let e1 = complete_unitary(&[ONE, ZERO, ZERO]);
        assert!(e1.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }
}
