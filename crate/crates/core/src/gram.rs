//! Gram matrices of nonorthogonal normalized states and their expansion in
//! an orthonormal basis by lower-triangular coefficients.
//!
//! The construction proceeds row by row: coefficients of each new state
//! against the already-processed basis columns follow from successive
//! overlap equations (a forward solve against the previous rows), and the
//! new diagonal entry absorbs the remaining norm. Numerically this is a
//! pivot-free Cholesky factorization of the Gram matrix, extended to
//! rank-deficient inputs by deflating columns whose residual pivot falls
//! below a tolerance.

use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix};
use crate::scalar::{as_f64, cone, czero, real, Scalar};
use num_complex::Complex;

/// Default pivot/rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Slack allowed on |overlap| <= 1 before rejecting an oracle value.
const OVERLAP_SLACK: f64 = 1e-9;

/// Hermitian unit-diagonal matrix of pairwise overlaps of normalized states.
#[derive(Clone, Debug)]
pub struct GramMatrix<T: Scalar> {
    entries: CMatrix<T>,
}

impl<T: Scalar> GramMatrix<T> {
    /// Assemble from a pairwise-overlap oracle, `oracle(i, j) = <psi_i|psi_j>`.
    ///
    /// Off-diagonal entries are symmetrized as `(o(i,j) + conj(o(j,i)))/2`;
    /// the diagonal is pinned to exactly 1 after validation.
    pub fn build(mut oracle: impl FnMut(usize, usize) -> Complex<T>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionZero);
        }
        let limit = real::<T>(1.0 + OVERLAP_SLACK);
        let half = real::<T>(0.5);
        let mut entries = CMatrix::zeros(n, n);
        for i in 0..n {
            let d = oracle(i, i);
            if (d - cone()).norm() > real(OVERLAP_SLACK) {
                return Err(Error::OverlapOutOfRange {
                    i,
                    j: i,
                    value: as_f64(d.norm()),
                });
            }
            entries[(i, i)] = cone();
            for j in (i + 1)..n {
                let upper = oracle(i, j);
                let lower = oracle(j, i);
                for (a, b, v) in [(i, j, upper), (j, i, lower)] {
                    if v.norm() > limit {
                        return Err(Error::OverlapOutOfRange {
                            i: a,
                            j: b,
                            value: as_f64(v.norm()),
                        });
                    }
                }
                let sym = (upper + lower.conj()) * Complex::new(half, T::zero());
                entries[(i, j)] = sym;
                entries[(j, i)] = sym.conj();
            }
        }
        Ok(Self { entries })
    }

    /// Wrap an explicit matrix, validating Hermiticity and the unit diagonal.
    pub fn from_entries(entries: CMatrix<T>) -> Result<Self> {
        if entries.rows() == 0 {
            return Err(Error::DimensionZero);
        }
        if !entries.is_square() {
            return Err(Error::DimsMismatch(format!(
                "Gram matrix must be square, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        let n = entries.rows();
        let tol = real::<T>(OVERLAP_SLACK);
        for i in 0..n {
            if (entries[(i, i)] - cone()).norm() > tol {
                return Err(Error::OverlapOutOfRange {
                    i,
                    j: i,
                    value: as_f64(entries[(i, i)].norm()),
                });
            }
            for j in (i + 1)..n {
                if (entries[(i, j)] - entries[(j, i)].conj()).norm() > tol {
                    return Err(Error::InvalidState(format!(
                        "Gram entries ({i},{j}) and ({j},{i}) are not conjugate"
                    )));
                }
                if entries[(i, j)].norm() > real(1.0 + OVERLAP_SLACK) {
                    return Err(Error::OverlapOutOfRange {
                        i,
                        j,
                        value: as_f64(entries[(i, j)].norm()),
                    });
                }
            }
        }
        let mut entries = entries.hermitian_part();
        for i in 0..n {
            entries[(i, i)] = cone();
        }
        Ok(Self { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<T> {
        eigh(&self.entries).0
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues()[0]
    }

    /// Positive semidefinite within `tol` (eigenvalues above `-tol`).
    pub fn is_psd(&self, tol: T) -> bool {
        self.min_eigenvalue() >= -tol
    }
}

/// Lower-trapezoidal expansion of `n` states over `rank` orthonormal basis
/// vectors; row `i` holds the coefficients of state `i`.
#[derive(Clone, Debug)]
pub struct Embedding<T: Scalar> {
    coefficients: CMatrix<T>,
    rank: usize,
    tolerance_used: T,
}

impl<T: Scalar> Embedding<T> {
    pub fn coefficients(&self) -> &CMatrix<T> {
        &self.coefficients
    }

    pub fn n(&self) -> usize {
        self.coefficients.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tolerance_used(&self) -> T {
        self.tolerance_used
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        self.coefficients.row(i)
    }

    /// Gram matrix of the embedding rows,
    /// `R[i][j] = sum_k conj(a_ik) a_jk = <psi_i|psi_j>`; reproduces the
    /// input Gram matrix.
    pub fn reconstruct(&self) -> CMatrix<T> {
        self.coefficients.conj().mul(&self.coefficients.transpose())
    }
}

/// Expand the states behind `g` over an orthonormal basis of their span.
///
/// Follows the constructive induction: row `i`'s coefficient against basis
/// column `c` comes from the overlap with the pivot state that introduced
/// that column, after subtracting the already-determined components; the
/// diagonal entry is the positive square root of the residual norm.
///
/// Rows whose residual pivot `1 - sum |a_ij|^2` lies within `rank_tol` of
/// zero are linearly dependent on their predecessors and introduce no new
/// column (the embedding becomes lower-trapezoidal `n x r`). A residual
/// below `-rank_tol` means the matrix is not a Gram matrix of normalized
/// states.
pub fn inverse_gram_schmidt<T: Scalar>(g: &GramMatrix<T>, rank_tol: T) -> Result<Embedding<T>> {
    let n = g.n();
    let gm = g.entries();
    let mut rows: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    // pivots[c] = index of the row that introduced basis column c
    let mut pivots: Vec<usize> = Vec::new();

    for i in 0..n {
        let mut row = vec![czero(); pivots.len()];
        for c in 0..pivots.len() {
            let p = pivots[c];
            // <psi_p|psi_i> = sum_{m<=c} conj(a_pm) a_im, solvable since a_pc > 0.
            let mut acc = gm[(p, i)];
            for m in 0..c {
                acc -= rows[p][m].conj() * row[m];
            }
            row[c] = acc / rows[p][c].conj();
        }
        let sum_sq: T = row
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b);
        let residual = T::one() - sum_sq;
        if residual > rank_tol {
            row.push(Complex::new(residual.sqrt(), T::zero()));
            pivots.push(i);
        } else if residual < -rank_tol {
            return Err(Error::NotPsd {
                row: i,
                residual: as_f64(residual),
            });
        }
        rows.push(row);
    }

    let rank = pivots.len();
    let mut coefficients = CMatrix::zeros(n, rank);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            coefficients[(i, j)] = v;
        }
    }
    Ok(Embedding {
        coefficients,
        rank,
        tolerance_used: rank_tol,
    })
}

/// Count of eigenvalues above `rank_tol * max_eigenvalue`.
pub fn numerical_rank<T: Scalar>(g: &GramMatrix<T>, rank_tol: T) -> usize {
    let vals = g.eigenvalues();
    let max = vals.iter().cloned().fold(T::zero(), T::max);
    if max <= T::zero() {
        return 0;
    }
    vals.iter().filter(|&&v| v > rank_tol * max).count()
}
