//! Finite-dimensional embeddings of DV-like hybrid states and the
//! entanglement quantifiers used on them: Schmidt decomposition, entropy of
//! entanglement, logarithmic negativity, Wootters concurrence, and the
//! tripartite residual-tangle analysis.
//!
//! Composite indexing is row-major throughout: a basis state `|m>_A |j>_B`
//! sits at flat index `m * d_B + j`, extended lexicographically for three
//! parties. All logarithms are base 2 (ebits).

use crate::channels;
use crate::error::{Error, Result};
use crate::gram::inverse_gram_schmidt;
use crate::linalg::{self, eigh, svd, CMatrix};
use crate::scalar::{as_f64, czero, real, Scalar};
use crate::states::{classify, FamilyTag, HybridState, Verdict};
use num_complex::Complex;

const HERM_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const PSD_FLOOR: f64 = -1e-8;
const NORM_TOL: f64 = 1e-9;
const EMBED_RANK_TOL: f64 = 1e-10;

/// Hermitian, unit-trace, positive-semidefinite operator on a composite
/// finite-dimensional space with explicit subsystem dimensions.
#[derive(Clone, Debug)]
pub struct DensityMatrix<T: Scalar> {
    mat: CMatrix<T>,
    dims: Vec<usize>,
    basis_note: String,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validate and wrap a matrix: Hermitian within 1e-10 (then
    /// symmetrized), trace 1 within 1e-10 (then rescaled exactly), smallest
    /// eigenvalue above -1e-8.
    pub fn new(mat: CMatrix<T>, dims: &[usize], basis_note: &str) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || mat.rows() != total || !mat.is_square() {
            return Err(Error::DimsMismatch(format!(
                "matrix is {}x{} but dims {:?} give {}",
                mat.rows(),
                mat.cols(),
                dims,
                total
            )));
        }
        if !mat.is_hermitian(real(HERM_TOL)) {
            return Err(Error::InvalidState(
                "density matrix is not Hermitian within tolerance".into(),
            ));
        }
        let mat = mat.hermitian_part();
        let tr = mat.trace().re;
        if (tr - T::one()).abs() > real(TRACE_TOL) {
            return Err(Error::InvalidState(format!(
                "density matrix trace {} deviates from 1",
                as_f64(tr)
            )));
        }
        let mat = mat.scale_re(T::one() / tr);
        let (vals, _) = eigh(&mat);
        if vals[0] < real(PSD_FLOOR) {
            return Err(Error::InvalidState(format!(
                "density matrix has negative eigenvalue {}",
                as_f64(vals[0])
            )));
        }
        Ok(Self {
            mat,
            dims: dims.to_vec(),
            basis_note: basis_note.to_string(),
        })
    }

    /// Projector onto a unit-norm pure state.
    pub fn from_pure(psi: &[Complex<T>], dims: &[usize], basis_note: &str) -> Result<Self> {
        let norm = linalg::norm2(psi);
        if (norm - T::one()).abs() > real(NORM_TOL) {
            return Err(Error::NotNormalized(as_f64((norm - T::one()).abs())));
        }
        Self::new(linalg::outer(psi, psi), dims, basis_note)
    }

    pub fn mat(&self) -> &CMatrix<T> {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn basis_note(&self) -> &str {
        &self.basis_note
    }

    pub fn purity(&self) -> T {
        self.mat.trace_product(&self.mat).re
    }

    pub fn min_eigenvalue(&self) -> T {
        eigh(&self.mat).0[0]
    }

    /// `<psi|rho|psi>` against a unit-norm pure state.
    pub fn fidelity_with_pure(&self, psi: &[Complex<T>]) -> T {
        let rv = self.mat.matvec(psi);
        linalg::dot(psi, &rv).re
    }
}

/// Diagonal bi-orthogonal form of a bipartite pure state.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition<T: Scalar> {
    /// Descending nonnegative coefficients; their squares sum to 1.
    pub coefficients: Vec<T>,
    /// Orthonormal columns on the first subsystem.
    pub left_basis: CMatrix<T>,
    /// Orthonormal columns on the second subsystem;
    /// `psi = sum_k c_k (left_k (x) right_k)`.
    pub right_basis: CMatrix<T>,
}

/// Schmidt decomposition of a unit-norm bipartite pure state, via the
/// singular value decomposition of its `d_A x d_B` coefficient matrix.
pub fn schmidt<T: Scalar>(
    psi: &[Complex<T>],
    dims: (usize, usize),
) -> Result<SchmidtDecomposition<T>> {
    let (da, db) = dims;
    if psi.len() != da * db {
        return Err(Error::DimsMismatch(format!(
            "vector length {} != {}x{}",
            psi.len(),
            da,
            db
        )));
    }
    let norm = linalg::norm2(psi);
    if (norm - T::one()).abs() > real(NORM_TOL) {
        return Err(Error::NotNormalized(as_f64((norm - T::one()).abs())));
    }
    let m = CMatrix::from_fn(da, db, |a, b| psi[a * db + b]);
    let f = svd(&m);
    // psi[a,b] = sum_k u[a,k] s_k conj(v[b,k]); right basis columns are conj(v).
    let right = f.v.conj();
    Ok(SchmidtDecomposition {
        coefficients: f.s,
        left_basis: f.u,
        right_basis: right,
    })
}

/// Entropy of entanglement of a bipartite pure state, in ebits:
/// `-sum s_k^2 log2 s_k^2` over the Schmidt coefficients.
pub fn entropy_of_entanglement<T: Scalar>(psi: &[Complex<T>], dims: (usize, usize)) -> Result<T> {
    let dec = schmidt(psi, dims)?;
    let mut acc = T::zero();
    for &s in &dec.coefficients {
        let p = s * s;
        if p > T::zero() {
            acc -= p * p.log2();
        }
    }
    Ok(acc)
}

/// Which subsystem the partial transpose acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cut {
    /// Transpose the first subsystem.
    A,
    /// Transpose the second subsystem.
    B,
}

/// Logarithmic negativity `log2 || rho^{T_cut} ||_1` of a bipartite state.
pub fn log_negativity<T: Scalar>(rho: &DensityMatrix<T>, cut: Cut) -> Result<T> {
    if rho.dims().len() != 2 {
        return Err(Error::DimsMismatch(format!(
            "log negativity needs a bipartite state, got dims {:?}",
            rho.dims()
        )));
    }
    let (da, db) = (rho.dims()[0], rho.dims()[1]);
    let m = rho.mat();
    let pt = CMatrix::from_fn(da * db, da * db, |r, c| {
        let (a, b) = (r / db, r % db);
        let (ap, bp) = (c / db, c % db);
        match cut {
            Cut::A => m[(ap * db + b, a * db + bp)],
            Cut::B => m[(a * db + bp, ap * db + b)],
        }
    });
    let (vals, _) = eigh(&pt.hermitian_part());
    let trace_norm: T = vals.iter().map(|v| v.abs()).fold(T::zero(), |x, y| x + y);
    Ok(trace_norm.log2().max(T::zero()))
}

/// Wootters concurrence of a two-qubit state.
///
/// The Wootters eigenvalues are the descending square roots of the
/// eigenvalues of `rho (sy (x) sy) conj(rho) (sy (x) sy)`; they are
/// extracted here through the Hermitian similarity
/// `sqrt(rho) rho~ sqrt(rho)`, which keeps degenerate and near-zero
/// eigenvalues at machine accuracy. Tiny negative residues are clamped.
pub fn concurrence<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    if rho.dims() != [2, 2] {
        return Err(Error::WrongDims {
            expected: vec![2, 2],
            got: rho.dims().to_vec(),
        });
    }
    let m = rho.mat();
    let yy = spin_flip_matrix::<T>();
    let tilde = yy.mul(&m.conj()).mul(&yy);

    let (vals, vecs) = eigh(m);
    let sqrt_vals: Vec<Complex<T>> = vals
        .iter()
        .map(|&v| Complex::new(v.max(T::zero()).sqrt(), T::zero()))
        .collect();
    let sqrt_rho = vecs
        .mul(&CMatrix::diagonal(&sqrt_vals))
        .mul(&vecs.adjoint());

    let h = sqrt_rho.mul(&tilde).mul(&sqrt_rho).hermitian_part();
    let (mu, _) = eigh(&h);
    // Eigenvalue noise of order eps * mu_max turns exact zeros into sqrt-of-
    // noise contributions; clamp below a spectrum-scaled floor.
    let floor = mu[3].max(T::zero()) * T::epsilon() * real::<T>(16.0);
    let lam: Vec<T> = mu
        .iter()
        .rev()
        .map(|&v| if v > floor { v.sqrt() } else { T::zero() })
        .collect();
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(T::zero()))
}

fn spin_flip_matrix<T: Scalar>() -> CMatrix<T> {
    // sigma_y (x) sigma_y is real: antidiagonal (-1, 1, 1, -1).
    let mut yy = CMatrix::zeros(4, 4);
    let one = Complex::new(T::one(), T::zero());
    yy[(0, 3)] = -one;
    yy[(1, 2)] = one;
    yy[(2, 1)] = one;
    yy[(3, 0)] = -one;
    yy
}

/// Squared concurrences and residual tangle of the tripartite example
/// family, parameterized by the two qumode overlaps.
#[derive(Clone, Copy, Debug)]
pub struct TangleReport<T: Scalar> {
    pub c2_ab: T,
    pub c2_ac: T,
    pub c2_bc: T,
    pub c2_a_bc: T,
    pub tau_res: T,
    pub c2_total: T,
}

fn unit_disk_sqr<T: Scalar>(q: Complex<T>, idx: usize) -> Result<T> {
    let n = q.norm_sqr();
    if n > T::one() + real(1e-12) {
        return Err(Error::OverlapOutOfRange {
            i: idx,
            j: idx,
            value: as_f64(q.norm()),
        });
    }
    Ok(n.min(T::one()))
}

/// Closed-form tangle report for the three-qubit embedding of the
/// `(|e0>|phi_0>|psi_0> + |e1>|phi_1>|psi_1>)/sqrt(2)` family with
/// overlaps `q_phi = <phi_0|phi_1>` and `q_psi = <psi_0|psi_1>`.
pub fn tripartite_tangle<T: Scalar>(
    q_phi: Complex<T>,
    q_psi: Complex<T>,
) -> Result<TangleReport<T>> {
    let qp = unit_disk_sqr(q_phi, 0)?;
    let qs = unit_disk_sqr(q_psi, 1)?;
    let one = T::one();
    Ok(TangleReport {
        c2_ab: qs * (one - qp),
        c2_ac: qp * (one - qs),
        c2_bc: T::zero(),
        c2_a_bc: one - qp * qs,
        tau_res: (one - qp) * (one - qs),
        c2_total: one - qp * qs,
    })
}

/// The effective three-qubit pure state of the same family, as an
/// 8-component vector (index `4a + 2b + c`).
pub fn tripartite_embed<T: Scalar>(
    q_phi: Complex<T>,
    q_psi: Complex<T>,
) -> Result<Vec<Complex<T>>> {
    let qp = unit_disk_sqr(q_phi, 0)?;
    let qs = unit_disk_sqr(q_psi, 1)?;
    let one = T::one();
    let rp = (one - qp).sqrt();
    let rs = (one - qs).sqrt();
    let inv_sqrt2 = Complex::new(one / real::<T>(2.0).sqrt(), T::zero());
    let mut v = vec![czero(); 8];
    v[0b000] = inv_sqrt2;
    v[0b100] = q_phi * q_psi * inv_sqrt2;
    v[0b110] = q_psi * Complex::new(rp, T::zero()) * inv_sqrt2;
    v[0b101] = q_phi * Complex::new(rs, T::zero()) * inv_sqrt2;
    v[0b111] = Complex::new(rp * rs, T::zero()) * inv_sqrt2;
    Ok(v)
}

/// Embed a DV-like hybrid state as a density matrix on
/// `dv_dim x rank(Gram)`, substituting each qumode reference by its
/// inverse-Gram-Schmidt row and mixing the components by weight.
///
/// Family-tagged inputs are admitted only for the zero-temperature thermal
/// channel, whose two surviving qumode states embed as the closed-form
/// two-qubit matrix.
pub fn embed_state<T: Scalar>(s: &HybridState<T>) -> Result<DensityMatrix<T>> {
    let classification = classify(s, real(EMBED_RANK_TOL))?;
    match s.family() {
        Some(FamilyTag::ThermalChannelOutput { alpha, eta, n_th }) if *n_th == T::zero() => {
            return channels::zero_temp_output(*alpha, *eta);
        }
        Some(_) => return Err(Error::TrulyHybridInput),
        None => {}
    }
    if classification.verdict == Verdict::TrulyHybrid {
        return Err(Error::TrulyHybridInput);
    }

    let (distinct, index_map) = s.distinct_qumodes();
    let gram = s.qumode_gram()?;
    let embedding = inverse_gram_schmidt(&gram, real(EMBED_RANK_TOL))?;
    let rank = embedding.rank();
    let d = s.dv_dim();
    let dim = d * rank;

    let mut mat = CMatrix::zeros(dim, dim);
    for (comp, idxs) in s.components().iter().zip(index_map.iter()) {
        let mut v: Vec<Complex<T>> = vec![czero(); dim];
        for (term, &q_idx) in comp.terms.iter().zip(idxs.iter()) {
            let row = embedding.row(q_idx);
            for (j, &a) in row.iter().enumerate() {
                v[term.dv_index * rank + j] += term.coefficient * a;
            }
        }
        let w = Complex::new(comp.weight, T::zero());
        for i in 0..dim {
            if v[i].norm_sqr() == T::zero() {
                continue;
            }
            for j in 0..dim {
                let add = v[i] * v[j].conj() * w;
                mat[(i, j)] += add;
            }
        }
    }
    let note = format!(
        "orthonormal qumode basis from inverse Gram-Schmidt of {} states (rank {})",
        distinct.len(),
        rank
    );
    DensityMatrix::new(mat, &[d, rank], &note)
}

/// Embed one pure component of a DV-like hybrid state as a unit vector on
/// `dv_dim x rank`, using the state's own qumode embedding. Exposed for
/// pure-state measures (Schmidt decomposition, entropy of entanglement).
pub fn embed_pure<T: Scalar>(s: &HybridState<T>, component: usize) -> Result<Vec<Complex<T>>> {
    if s.family().is_some() {
        return Err(Error::TrulyHybridInput);
    }
    if component >= s.components().len() {
        return Err(Error::DimsMismatch(format!(
            "component {component} out of range"
        )));
    }
    let (_, index_map) = s.distinct_qumodes();
    let gram = s.qumode_gram()?;
    let embedding = inverse_gram_schmidt(&gram, real(EMBED_RANK_TOL))?;
    let rank = embedding.rank();
    let mut v = vec![czero(); s.dv_dim() * rank];
    let comp = &s.components()[component];
    for (term, &q_idx) in comp.terms.iter().zip(index_map[component].iter()) {
        let row = embedding.row(q_idx);
        for (j, &a) in row.iter().enumerate() {
            v[term.dv_index * rank + j] += term.coefficient * a;
        }
    }
    Ok(v)
}
