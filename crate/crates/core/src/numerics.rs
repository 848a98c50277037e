//! Dense linear-algebra kernels: a one-sided Jacobi SVD for minimum-norm
//! least squares, and power iteration for the Perron vector of a
//! nonnegative matrix.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape("ragged rows".into()));
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
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

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Thin SVD `A = U diag(s) Vᵀ` with `U` m×n, `V` n×n.
///
/// Singular values are not sorted. Columns of `U` belonging to a zero
/// singular value are zero.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub u: DenseMatrix<T>,
    pub singular_values: Vec<T>,
    pub v: DenseMatrix<T>,
}

const MAX_JACOBI_SWEEPS: usize = 80;

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd<T: Scalar>(a: &DenseMatrix<T>) -> Svd<T> {
    let (m, n) = (a.rows(), a.cols());
    // column-major working copies
    let mut cols: Vec<Vec<T>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let eps = T::epsilon();
    let two = T::lit(2.0);

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut alpha = T::zero();
                    let mut beta = T::zero();
                    let mut gamma = T::zero();
                    for k in 0..m {
                        alpha = alpha + cp[k] * cp[k];
                        beta = beta + cq[k] * cq[k];
                        gamma = gamma + cp[k] * cq[k];
                    }
                    (alpha, beta, gamma)
                };
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (two * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let singular_values: Vec<T> = cols
        .iter()
        .map(|c| c.iter().map(|&x| x * x).sum::<T>().sqrt())
        .collect();
    let mut u = DenseMatrix::zeros(m, n);
    for (j, c) in cols.iter().enumerate() {
        let s = singular_values[j];
        if s > T::zero() {
            for i in 0..m {
                u[(i, j)] = c[i] / s;
            }
        }
    }
    let mut vm = DenseMatrix::zeros(n, n);
    for (j, c) in v.iter().enumerate() {
        for i in 0..n {
            vm[(i, j)] = c[i];
        }
    }
    Svd {
        u,
        singular_values,
        v: vm,
    }
}

fn rotate<T: Scalar>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Relative cut-off below which singular values count as zero:
/// `max(rows, cols) * eps * 64`.
pub fn default_rank_tol<T: Scalar>(rows: usize, cols: usize) -> T {
    T::from_count(rows.max(cols)) * T::epsilon() * T::lit(64.0)
}

/// Minimum-norm least-squares solution of `q x = w`.
///
/// Singular values below `rank_tol * σ_max` are treated as zero.
pub fn pinv_solve<T: Scalar>(q: &DenseMatrix<T>, w: &[T], rank_tol: T) -> Result<Vec<T>> {
    if q.rows() != w.len() {
        return Err(Error::Shape(format!(
            "matrix has {} rows but right-hand side has {} entries",
            q.rows(),
            w.len()
        )));
    }
    if !(rank_tol >= T::zero()) {
        return Err(Error::param("rank_tol", "must be non-negative"));
    }
    if q.as_slice().iter().all(|&x| x == T::zero()) {
        return Err(Error::Degenerate("all-zero matrix".into()));
    }
    let dec = svd(q);
    let sigma_max = dec
        .singular_values
        .iter()
        .copied()
        .fold(T::zero(), T::max);
    let cutoff = rank_tol * sigma_max;
    let (m, n) = (q.rows(), q.cols());
    let mut x = vec![T::zero(); n];
    for (k, &s) in dec.singular_values.iter().enumerate() {
        if s <= cutoff || s == T::zero() {
            continue;
        }
        let coeff = (0..m).map(|i| dec.u[(i, k)] * w[i]).sum::<T>() / s;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = *xi + coeff * dec.v[(i, k)];
        }
    }
    Ok(x)
}

/// Moore–Penrose pseudoinverse (n×m) with the same cut-off as [`pinv_solve`].
pub fn pseudo_inverse<T: Scalar>(q: &DenseMatrix<T>, rank_tol: T) -> DenseMatrix<T> {
    let dec = svd(q);
    let sigma_max = dec
        .singular_values
        .iter()
        .copied()
        .fold(T::zero(), T::max);
    let cutoff = rank_tol * sigma_max;
    let (m, n) = (q.rows(), q.cols());
    let mut out = DenseMatrix::zeros(n, m);
    for (k, &s) in dec.singular_values.iter().enumerate() {
        if s <= cutoff || s == T::zero() {
            continue;
        }
        for i in 0..n {
            let vik = dec.v[(i, k)] / s;
            for j in 0..m {
                out[(i, j)] = out[(i, j)] + vik * dec.u[(j, k)];
            }
        }
    }
    out
}

/// Dominant eigenpair of a nonnegative square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair<T> {
    /// Nonnegative eigenvector scaled to the requested total.
    pub vector: Vec<T>,
    pub value: T,
    pub iterations: usize,
}

/// Power iteration from the uniform vector.
///
/// Iterates are normalised to unit maximum; the iteration stops once two
/// successive iterates differ by less than `tol / max(1, λ)` in the ∞-norm,
/// which bounds the eigen-residual by `tol`. The returned vector is
/// nonnegative and sums to `total`. An all-zero matrix yields the uniform
/// vector with eigenvalue 0.
pub fn leading_eigenvector<T: Scalar>(
    a: &DenseMatrix<T>,
    total: T,
    tol: T,
    max_iter: usize,
) -> Result<Eigenpair<T>> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::Shape(format!(
            "expected a non-empty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.as_slice().iter().any(|&x| x < T::zero()) {
        return Err(Error::Domain("matrix must be entrywise nonnegative".into()));
    }
    if !(tol > T::zero()) {
        return Err(Error::param("tol", "must be positive"));
    }
    let n = a.rows();
    let mut v = vec![T::one(); n];
    let mut last_diff = T::infinity();
    let mut converged = None;
    for it in 1..=max_iter {
        let mut y = a.mul_vec(&v);
        let lambda = y.iter().copied().fold(T::zero(), T::max);
        if lambda == T::zero() {
            return Ok(Eigenpair {
                vector: vec![total / T::from_count(n); n],
                value: T::zero(),
                iterations: it,
            });
        }
        for yi in y.iter_mut() {
            *yi = *yi / lambda;
        }
        last_diff = y
            .iter()
            .zip(&v)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max);
        v = y;
        if last_diff * lambda.max(T::one()) < tol {
            converged = Some(it);
            break;
        }
    }
    let Some(iterations) = converged else {
        return Err(Error::NonConvergence {
            iterations: max_iter,
            residual: last_diff.to_f64_lossy(),
        });
    };

    let sum: T = v.iter().copied().sum();
    if sum < T::zero() {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    let av = a.mul_vec(&v);
    let vmax = v.iter().copied().fold(T::zero(), T::max);
    let value = av.iter().copied().fold(T::zero(), T::max) / vmax;
    let scale = total / sum.abs();
    Ok(Eigenpair {
        vector: v.into_iter().map(|x| x * scale).collect(),
        value,
        iterations,
    })
}
