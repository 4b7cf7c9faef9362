//! Dense complex linear algebra over a generic real scalar.
//!
//! Small hand-rolled kernels (Jacobi eigensolver, one-sided Jacobi SVD,
//! LU solve, scaling-and-squaring matrix exponential) sized for the
//! few-hundred-dimensional Hilbert spaces this crate works with.

mod decomp;
mod expm;

pub use decomp::{eigh, lu_solve, svd, Svd};
pub use expm::expm;

use crate::scalar::{czero, Scalar};
use num_complex::Complex;
use std::ops::{Index, IndexMut};

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> std::fmt::Debug for CMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, "  ")?;
            for j in 0..self.cols.min(8) {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex<T>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Complex<T>] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &aik) in a_row.iter().enumerate() {
                if aik.re == T::zero() && aik.im == T::zero() {
                    continue;
                }
                let b_row = rhs.row(k);
                for (o, &bkj) in out_row.iter_mut().zip(b_row.iter()) {
                    *o += aik * bkj;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.iter())
                    .fold(czero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (o, &r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o += r;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (o, &r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o -= r;
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o *= s;
        }
        out
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = o.conj();
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        assert!(self.is_square());
        (0..self.rows).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Maximum absolute column sum (operator 1-norm).
    pub fn one_norm(&self) -> T {
        let mut best = T::zero();
        for j in 0..self.cols {
            let mut s = T::zero();
            for i in 0..self.rows {
                s += self[(i, j)].norm();
            }
            best = best.max(s);
        }
        best
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Symmetrized Hermitian part `(M + M^dag)/2`.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        let half = Complex::new(T::from_f64(0.5).unwrap(), T::zero());
        self.add(&self.adjoint()).scale(half)
    }

    /// Kronecker product, row-major composite index `i_a * rows_b + i_b`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self[(ia, ja)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for ib in 0..rhs.rows {
                    for jb in 0..rhs.cols {
                        out[(ia * rhs.rows + ib, ja * rhs.cols + jb)] = a * rhs[(ib, jb)];
                    }
                }
            }
        }
        out
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = czero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }
}

impl<T: Scalar> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Inner product conjugating the first argument.
pub fn dot<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .fold(czero(), |acc, (&x, &y)| acc + x.conj() * y)
}

pub fn norm2<T: Scalar>(v: &[Complex<T>]) -> T {
    v.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt()
}

pub fn normalize<T: Scalar>(v: &mut [Complex<T>]) {
    let n = norm2(v);
    if n > T::zero() {
        let inv = Complex::new(T::one() / n, T::zero());
        for z in v.iter_mut() {
            *z *= inv;
        }
    }
}

/// Outer product `u * v^dag`.
pub fn outer<T: Scalar>(u: &[Complex<T>], v: &[Complex<T>]) -> CMatrix<T> {
    let mut m = CMatrix::zeros(u.len(), v.len());
    for (i, &ui) in u.iter().enumerate() {
        for (j, &vj) in v.iter().enumerate() {
            m[(i, j)] = ui * vj.conj();
        }
    }
    m
}

/// Kronecker product of vectors, composite index `i_a * len_b + i_b`.
pub fn kron_vec<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = vec![czero(); a.len() * b.len()];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i * b.len() + j] = ai * bj;
        }
    }
    out
}

/// Partial trace over the subsystems *not* listed in `keep`.
///
/// `dims` lists every subsystem dimension in row-major composite order;
/// `keep` lists the (distinct, ascending-order-independent) subsystems to
/// retain. The result is ordered by `keep` as given.
pub fn partial_trace<T: Scalar>(rho: &CMatrix<T>, dims: &[usize], keep: &[usize]) -> CMatrix<T> {
    let total: usize = dims.iter().product();
    assert_eq!(rho.rows(), total, "matrix size must match dims product");
    assert!(rho.is_square());
    assert!(keep.iter().all(|&k| k < dims.len()));

    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let keep_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let traced_dim: usize = traced.iter().map(|&k| dims[k]).product();

    // Strides of each subsystem in the flat composite index.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }

    let flat = |subsys: &[usize], multi: &[usize]| -> usize {
        subsys
            .iter()
            .zip(multi.iter())
            .map(|(&s, &ix)| strides[s] * ix)
            .sum()
    };

    let unrank = |mut r: usize, subsys: &[usize]| -> Vec<usize> {
        let mut multi = vec![0usize; subsys.len()];
        for pos in (0..subsys.len()).rev() {
            let d = dims[subsys[pos]];
            multi[pos] = r % d;
            r /= d;
        }
        multi
    };

    let mut out = CMatrix::zeros(keep_dim, keep_dim);
    for a in 0..keep_dim {
        let ka = unrank(a, keep);
        let base_a = flat(keep, &ka);
        for b in 0..keep_dim {
            let kb = unrank(b, keep);
            let base_b = flat(keep, &kb);
            let mut acc = czero();
            for t in 0..traced_dim {
                let kt = unrank(t, &traced);
                let off = flat(&traced, &kt);
                acc += rho[(base_a + off, base_b + off)];
            }
            out[(a, b)] = acc;
        }
    }
    out
}

/// Trace distance `(1/2) ||a - b||_1` between Hermitian matrices.
pub fn trace_distance<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    let diff = a.sub(b).hermitian_part();
    let (vals, _) = eigh(&diff);
    let half = T::from_f64(0.5).unwrap();
    vals.iter().map(|v| v.abs()).fold(T::zero(), |x, y| x + y) * half
}
