//! Eigen/SVD/LU kernels.

use super::CMatrix;
use crate::scalar::{czero, Scalar};
use num_complex::Complex;

const MAX_SWEEPS: usize = 64;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Returns eigenvalues in ascending order with matching eigenvector columns.
/// The input must be Hermitian; symmetrize with
/// [`CMatrix::hermitian_part`] first if it carries numerical drift.
pub fn eigh<T: Scalar>(m: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    assert!(m.is_square(), "eigh needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    if n <= 1 {
        let vals = (0..n).map(|i| a[(i, i)].re).collect();
        return (vals, v);
    }

    let eps = T::epsilon();
    for _sweep in 0..MAX_SWEEPS {
        let mut off = T::zero();
        let mut scale = T::zero();
        for p in 0..n {
            scale += a[(p, p)].norm_sqr();
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        let two = T::from_f64(2.0).unwrap();
        if off.sqrt() <= eps * (scale + two * off).sqrt() * T::from_usize(n).unwrap() {
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= eps * (a[(p, p)].re.abs() + a[(q, q)].re.abs()) {
                    continue;
                }
                // Unitary 2x2 zeroing A[p][q]: J = [[c, -s e^{i th}], [s e^{-i th}, c]].
                let phase = apq / Complex::new(r, T::zero());
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let zeta = (aqq - app) / (two * r);
                // stable small root of t^2 - 2 zeta t - 1 = 0
                let t = if zeta == T::zero() {
                    T::one()
                } else {
                    let sgn = if zeta > T::zero() {
                        T::one()
                    } else {
                        -T::one()
                    };
                    -sgn / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;

                let cs = Complex::new(c, T::zero());
                let sp = phase * Complex::new(s, T::zero()); // s e^{i th}
                let spc = sp.conj();

                // Rows p, q: A <- J^dag A.
                for j in 0..n {
                    let xp = a[(p, j)];
                    let xq = a[(q, j)];
                    a[(p, j)] = cs * xp + sp * xq;
                    a[(q, j)] = -spc * xp + cs * xq;
                }
                // Columns p, q: A <- A J ; accumulate V <- V J.
                for i in 0..n {
                    let xp = a[(i, p)];
                    let xq = a[(i, q)];
                    a[(i, p)] = cs * xp + spc * xq;
                    a[(i, q)] = -sp * xp + cs * xq;

                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = cs * vp + spc * vq;
                    v[(i, q)] = -sp * vp + cs * vq;
                }
                a[(p, q)] = czero();
                a[(q, p)] = czero();
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals: Vec<T> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (vals, vecs)
}

/// Singular value decomposition.
#[derive(Clone, Debug)]
pub struct Svd<T: Scalar> {
    /// Left singular vectors, `rows x k` with orthonormal columns.
    pub u: CMatrix<T>,
    /// Singular values, descending, length `k = min(rows, cols)`.
    pub s: Vec<T>,
    /// Right singular vectors, `cols x k`; `m = u diag(s) v^dag`.
    pub v: CMatrix<T>,
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd<T: Scalar>(m: &CMatrix<T>) -> Svd<T> {
    if m.rows() < m.cols() {
        // svd(M^dag) = (V, S, U)
        let t = svd(&m.adjoint());
        return Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        };
    }

    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut v = CMatrix::identity(cols);
    let eps = T::epsilon();
    let two = T::from_f64(2.0).unwrap();

    let col_dot = |a: &CMatrix<T>, p: usize, q: usize| -> Complex<T> {
        let mut acc = czero();
        for i in 0..rows {
            acc += a[(i, p)].conj() * a[(i, q)];
        }
        acc
    };

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let apq = col_dot(&a, p, q);
                let app = col_dot(&a, p, p).re;
                let aqq = col_dot(&a, q, q).re;
                let r = apq.norm();
                if r <= eps * (app * aqq).sqrt() || r == T::zero() {
                    continue;
                }
                rotated = true;
                let phase = apq / Complex::new(r, T::zero());
                let zeta = (aqq - app) / (two * r);
                // stable small root of t^2 - 2 zeta t - 1 = 0
                let t = if zeta == T::zero() {
                    T::one()
                } else {
                    let sgn = if zeta > T::zero() {
                        T::one()
                    } else {
                        -T::one()
                    };
                    -sgn / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let cs = Complex::new(c, T::zero());
                let sp = phase * Complex::new(s, T::zero());
                let spc = sp.conj();
                for i in 0..rows {
                    let xp = a[(i, p)];
                    let xq = a[(i, q)];
                    a[(i, p)] = cs * xp + spc * xq;
                    a[(i, q)] = -sp * xp + cs * xq;
                }
                for i in 0..cols {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = cs * vp + spc * vq;
                    v[(i, q)] = -sp * vp + cs * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    // Column norms are the singular values.
    let mut pairs: Vec<(T, usize)> = (0..cols)
        .map(|j| {
            let mut s2 = T::zero();
            for i in 0..rows {
                s2 += a[(i, j)].norm_sqr();
            }
            (s2.sqrt(), j)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));

    let scale = pairs.first().map_or(T::zero(), |p| p.0);
    let tiny = scale * eps * T::from_usize(rows.max(cols)).unwrap();

    let mut u = CMatrix::zeros(rows, cols);
    let mut s = Vec::with_capacity(cols);
    let vv = CMatrix::from_fn(cols, cols, |i, j| v[(i, pairs[j].1)]);
    for (jj, &(sj, col)) in pairs.iter().enumerate() {
        s.push(sj);
        if sj > tiny && sj > T::zero() {
            let inv = Complex::new(T::one() / sj, T::zero());
            for i in 0..rows {
                u[(i, jj)] = a[(i, col)] * inv;
            }
        }
    }
    // Complete the left basis for (near-)zero singular directions.
    complete_orthonormal(&mut u, &s, tiny);

    Svd { u, s, v: vv }
}

/// Fill columns whose singular value is (near) zero with unit vectors
/// orthogonal to the existing columns.
fn complete_orthonormal<T: Scalar>(u: &mut CMatrix<T>, s: &[T], tiny: T) {
    let rows = u.rows();
    let cols = u.cols();
    let mut cand = 0usize;
    for j in 0..cols {
        if s[j] > tiny && s[j] > T::zero() {
            continue;
        }
        // Gram-Schmidt a standard basis vector against all previous columns.
        'search: while cand < rows {
            let mut w: Vec<Complex<T>> = vec![czero(); rows];
            w[cand] = Complex::new(T::one(), T::zero());
            cand += 1;
            for jj in 0..cols {
                if jj == j || (s[jj] <= tiny && jj > j) {
                    continue;
                }
                let mut proj: Complex<T> = czero();
                for i in 0..rows {
                    proj += u[(i, jj)].conj() * w[i];
                }
                for i in 0..rows {
                    let uij = u[(i, jj)];
                    w[i] -= proj * uij;
                }
            }
            let n = super::norm2(&w);
            if n > T::from_f64(0.5).unwrap() {
                let inv = Complex::new(T::one() / n, T::zero());
                for i in 0..rows {
                    u[(i, j)] = w[i] * inv;
                }
                break 'search;
            }
        }
    }
}

/// Solve `A X = B` by LU with partial pivoting.
pub fn lu_solve<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    assert!(a.is_square());
    assert_eq!(a.rows(), b.rows());
    let n = a.rows();
    let m = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        // Pivot.
        let mut best = k;
        let mut best_mag = lu[(k, k)].norm_sqr();
        for i in (k + 1)..n {
            let mag = lu[(i, k)].norm_sqr();
            if mag > best_mag {
                best = i;
                best_mag = mag;
            }
        }
        if best != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(best, j)];
                lu[(best, j)] = tmp;
            }
            perm.swap(k, best);
            for j in 0..m {
                let tmp = x[(k, j)];
                x[(k, j)] = x[(best, j)];
                x[(best, j)] = tmp;
            }
        }
        let piv = lu[(k, k)];
        assert!(piv.norm() > T::zero(), "singular matrix in lu_solve");
        for i in (k + 1)..n {
            let f = lu[(i, k)] / piv;
            lu[(i, k)] = f;
            if f.norm_sqr() == T::zero() {
                continue;
            }
            for j in (k + 1)..n {
                let lukj = lu[(k, j)];
                lu[(i, j)] -= f * lukj;
            }
            for j in 0..m {
                let xkj = x[(k, j)];
                x[(i, j)] -= f * xkj;
            }
        }
    }
    // Back substitution.
    for j in 0..m {
        for i in (0..n).rev() {
            let mut acc = x[(i, j)];
            for k in (i + 1)..n {
                acc -= lu[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = acc / lu[(i, i)];
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, norm2};

    type C = Complex<f64>;
    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn random_hermitian(n: usize, seed: u64) -> CMatrix<f64> {
        // Small deterministic LCG; avoids pulling rand into unit scope.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let g = CMatrix::from_fn(n, n, |_, _| c(next(), next()));
        g.add(&g.adjoint()).scale(c(0.5, 0.0))
    }

    #[test]
    fn eigh_pauli_y() {
        let sy = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ]);
        let (vals, vecs) = eigh(&sy);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        // Residual ||A v - lambda v||
        for j in 0..2 {
            let v: Vec<C> = (0..2).map(|i| vecs[(i, j)]).collect();
            let av = sy.matvec(&v);
            for i in 0..2 {
                assert!((av[i] - v[i] * c(vals[j], 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn eigh_reconstructs_random() {
        for n in [3usize, 8, 21] {
            let h = random_hermitian(n, 42 + n as u64);
            let (vals, vecs) = eigh(&h);
            // V diag(vals) V^dag == H
            let d = CMatrix::diagonal(&vals.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
            let rec = vecs.mul(&d).mul(&vecs.adjoint());
            assert!(rec.sub(&h).max_abs() < 1e-12 * (n as f64));
            // Orthonormal columns.
            let g = vecs.adjoint().mul(&vecs);
            assert!(g.sub(&CMatrix::identity(n)).max_abs() < 1e-12);
            // Ascending.
            for w in vals.windows(2) {
                assert!(w[0] <= w[1] + 1e-14);
            }
        }
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        for (r, cc, seed) in [(5usize, 3usize, 7u64), (3, 5, 8), (6, 6, 9)] {
            let g = {
                let h = random_hermitian(r.max(cc), seed);
                CMatrix::from_fn(r, cc, |i, j| h[(i, j)])
            };
            let f = svd(&g);
            let k = r.min(cc);
            assert_eq!(f.s.len(), k);
            let d = CMatrix::diagonal(&f.s.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
            let rec = f.u.mul(&d).mul(&f.v.adjoint());
            assert!(rec.sub(&g).max_abs() < 1e-12);
            // Descending values, orthonormal bases.
            for w in f.s.windows(2) {
                assert!(w[0] >= w[1] - 1e-14);
            }
            assert!(f.u.adjoint().mul(&f.u).sub(&CMatrix::identity(k)).max_abs() < 1e-12);
            assert!(f.v.adjoint().mul(&f.v).sub(&CMatrix::identity(k)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn svd_rank_deficient_completes_basis() {
        // Two identical columns: rank 1, but bases stay orthonormal.
        let u0 = [c(0.6, 0.0), c(0.0, 0.8)];
        let m = CMatrix::from_fn(2, 2, |i, _| u0[i]);
        let f = svd(&m);
        assert!(f.s[1] < 1e-14);
        let cols: Vec<Vec<C>> = (0..2)
            .map(|j| (0..2).map(|i| f.u[(i, j)]).collect())
            .collect();
        assert!((norm2(&cols[1]) - 1.0).abs() < 1e-12);
        assert!(dot(&cols[0], &cols[1]).norm() < 1e-12);
    }

    #[test]
    fn lu_solves_random_system() {
        let a = random_hermitian(9, 3).add(&CMatrix::identity(9).scale(c(4.0, 0.0)));
        let x_true = CMatrix::from_fn(9, 2, |i, j| {
            c((i + j) as f64 * 0.1 - 0.4, 0.3 - i as f64 * 0.05)
        });
        let b = a.mul(&x_true);
        let x = lu_solve(&a, &b);
        assert!(x.sub(&x_true).max_abs() < 1e-11);
    }
}
