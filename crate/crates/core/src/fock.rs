//! Truncated Fock-space engine: the brute-force numerical backend used to
//! cross-validate every closed form in this crate, plus the Wigner-function
//! and Gaussianity machinery.
//!
//! Truncation bookkeeping (tail bounds, cutoff suggestions) always runs in
//! `f64`, independent of the working scalar, so that budgets near 1e-12
//! remain meaningful for `f32` instantiations.

use crate::error::{Error, Result};
use crate::linalg::{self, expm, CMatrix};
use crate::measures::DensityMatrix;
use crate::scalar::{as_f64, czero, real, Scalar};
use num_complex::Complex;

/// Default maximum admissible lost norm for constructed states.
pub const DEFAULT_TRUNCATION_BUDGET: f64 = 1e-12;
/// Default extra levels used when simulating unitaries near the edge.
pub const DEFAULT_BUFFER: usize = 10;
/// Hard ceiling when searching for a sufficient cutoff.
const MAX_CUTOFF: usize = 4096;

/// A photon-number-truncated single-mode Hilbert space of dimension
/// `cutoff + 1`.
#[derive(Clone, Copy, Debug)]
pub struct TruncatedFockSpace<T: Scalar> {
    cutoff: usize,
    truncation_budget: T,
}

impl<T: Scalar> TruncatedFockSpace<T> {
    /// Space with the default truncation budget. `cutoff >= 2`.
    pub fn new(cutoff: usize) -> Self {
        Self::with_budget(cutoff, real(DEFAULT_TRUNCATION_BUDGET))
    }

    pub fn with_budget(cutoff: usize, truncation_budget: T) -> Self {
        assert!(cutoff >= 2, "cutoff must be at least 2");
        assert!(truncation_budget > T::zero());
        Self {
            cutoff,
            truncation_budget,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    pub fn truncation_budget(&self) -> T {
        self.truncation_budget
    }

    /// Enlarged space for simulating unitaries whose action corrupts the
    /// edge of the truncated ladder.
    pub fn with_buffer(&self, buffer: usize) -> Self {
        Self {
            cutoff: self.cutoff + buffer,
            truncation_budget: self.truncation_budget,
        }
    }

    /// Annihilation operator: sqrt(n) on the first superdiagonal.
    pub fn destroy(&self) -> CMatrix<T> {
        let mut a = CMatrix::zeros(self.dim(), self.dim());
        for n in 1..self.dim() {
            a[(n - 1, n)] = Complex::new(real::<T>(n as f64).sqrt(), T::zero());
        }
        a
    }

    /// Creation operator, the conjugate transpose of [`Self::destroy`].
    pub fn create(&self) -> CMatrix<T> {
        self.destroy().adjoint()
    }

    pub fn number_op(&self) -> CMatrix<T> {
        let mut n = CMatrix::zeros(self.dim(), self.dim());
        for k in 0..self.dim() {
            n[(k, k)] = Complex::new(real::<T>(k as f64), T::zero());
        }
        n
    }

    pub fn vacuum(&self) -> Vec<Complex<T>> {
        self.fock_vector(0)
    }

    pub fn fock_vector(&self, n: usize) -> Vec<Complex<T>> {
        assert!(n < self.dim());
        let mut v = vec![czero(); self.dim()];
        v[n] = Complex::new(T::one(), T::zero());
        v
    }

    /// Normalized coherent state `|alpha>` with components
    /// `e^{-|a|^2/2} a^n / sqrt(n!)`, renormalized after truncation.
    ///
    /// Fails with a cutoff suggestion when the Poisson tail beyond the
    /// cutoff exceeds the truncation budget.
    pub fn coherent_vector(&self, alpha: Complex<T>) -> Result<Vec<Complex<T>>> {
        let mean = as_f64(alpha.norm_sqr());
        let budget = as_f64(self.truncation_budget);
        let tail = coherent_tail(mean, self.cutoff);
        if tail > budget {
            return Err(Error::CutoffInsufficient {
                cutoff: self.cutoff,
                suggested: suggest_coherent_cutoff(mean, budget),
                detail: format!("coherent tail {tail:.3e} exceeds budget {budget:.3e}"),
            });
        }
        let mut v = vec![czero(); self.dim()];
        let half = real::<T>(0.5);
        let pref = Complex::new((-alpha.norm_sqr() * half).exp(), T::zero());
        let mut term = pref;
        v[0] = term;
        for (n, slot) in v.iter_mut().enumerate().skip(1) {
            term = term * alpha / Complex::new(real::<T>(n as f64).sqrt(), T::zero());
            *slot = term;
        }
        linalg::normalize(&mut v);
        Ok(v)
    }

    /// Unnormalized photon-added coherent ket `a^dag^k |alpha>` (the
    /// truncated ladder applied to the normalized coherent vector).
    ///
    /// Fails when the relative lost norm of the exact state beyond the
    /// cutoff exceeds the truncation budget.
    pub fn photon_added_raw(&self, k: usize, alpha: Complex<T>) -> Result<Vec<Complex<T>>> {
        let mean = as_f64(alpha.norm_sqr());
        let budget = as_f64(self.truncation_budget);
        let (lost, _norm) = photon_added_tail(k, mean, self.cutoff);
        if lost > budget {
            return Err(Error::CutoffInsufficient {
                cutoff: self.cutoff,
                suggested: suggest_photon_added_cutoff(k, mean, budget),
                detail: format!(
                    "photon-added (k={k}) lost norm {lost:.3e} exceeds budget {budget:.3e}"
                ),
            });
        }
        let mut v = self.coherent_vector(alpha)?;
        let create = self.create();
        for _ in 0..k {
            v = create.matvec(&v);
        }
        Ok(v)
    }

    /// Diagonal weights of the thermal state, renormalized after truncation.
    pub fn thermal_weights(&self, n_th: T) -> Result<Vec<T>> {
        assert!(n_th >= T::zero(), "mean thermal photon number must be >= 0");
        let mut w = vec![T::zero(); self.dim()];
        if n_th == T::zero() {
            w[0] = T::one();
            return Ok(w);
        }
        let nth = as_f64(n_th);
        let ratio = nth / (1.0 + nth);
        let tail = ratio.powi(self.dim() as i32);
        let budget = as_f64(self.truncation_budget);
        if tail > budget {
            let suggested = (budget.ln() / ratio.ln()).ceil() as usize;
            return Err(Error::CutoffInsufficient {
                cutoff: self.cutoff,
                suggested,
                detail: format!("thermal tail {tail:.3e} exceeds budget {budget:.3e}"),
            });
        }
        let r = n_th / (T::one() + n_th);
        let mut term = T::one() / (T::one() + n_th);
        let mut sum = T::zero();
        for slot in w.iter_mut() {
            *slot = term;
            sum += term;
            term *= r;
        }
        for slot in w.iter_mut() {
            *slot /= sum;
        }
        Ok(w)
    }

    /// Thermal state as a diagonal density matrix on this space.
    pub fn thermal_state(&self, n_th: T) -> Result<CMatrix<T>> {
        let w = self.thermal_weights(n_th)?;
        Ok(CMatrix::diagonal(
            &w.iter()
                .map(|&x| Complex::new(x, T::zero()))
                .collect::<Vec<_>>(),
        ))
    }
}

/// Poisson tail `P(N > cutoff)` for mean `mean`, clamped to [0, 1].
fn coherent_tail(mean: f64, cutoff: usize) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let mut term = (-mean).exp();
    if term == 0.0 {
        // Very large mean: sum in log space is unnecessary here because the
        // engine only sees desk-scale amplitudes; treat as all-tail.
        return 1.0;
    }
    let mut cdf = term;
    for n in 1..=cutoff {
        term *= mean / n as f64;
        cdf += term;
    }
    (1.0 - cdf).max(0.0)
}

/// Smallest cutoff whose Poisson tail is within `budget`.
pub(crate) fn required_coherent_cutoff(mean: f64, budget: f64) -> usize {
    suggest_coherent_cutoff(mean, budget)
}

pub(crate) fn required_photon_added_cutoff(k: usize, mean: f64, budget: f64) -> usize {
    suggest_photon_added_cutoff(k, mean, budget)
}

fn suggest_coherent_cutoff(mean: f64, budget: f64) -> usize {
    let mut n = mean.ceil() as usize + 2;
    while n < MAX_CUTOFF && coherent_tail(mean, n) > budget {
        n += 1 + n / 8;
    }
    n
}

/// Relative lost norm of `a^dag^k |alpha>` beyond `cutoff`, and the exact
/// norm of the unnormalized state. Computed by direct summation of
/// `poisson_m(mean) * (m+k)!/m!` until terms vanish.
fn photon_added_tail(k: usize, mean: f64, cutoff: usize) -> (f64, f64) {
    let mut head = 0.0f64; // mass with m + k <= cutoff
    let mut total = 0.0f64;
    let mut poisson = (-mean).exp();
    let mut m = 0usize;
    loop {
        // (m+k)!/m! = prod_{j=m+1}^{m+k} j
        let mut ratio = 1.0f64;
        for j in (m + 1)..=(m + k) {
            ratio *= j as f64;
        }
        let term = poisson * ratio;
        total += term;
        if m + k <= cutoff {
            head += term;
        }
        m += 1;
        poisson *= mean / m as f64;
        if (term < total * 1e-18 && m > k + 4 && m as f64 > mean + 6.0 * mean.sqrt() + 8.0)
            || m > MAX_CUTOFF * 4
        {
            break;
        }
    }
    if total <= 0.0 {
        return (0.0, 0.0);
    }
    (((total - head) / total).max(0.0), total.sqrt())
}

fn suggest_photon_added_cutoff(k: usize, mean: f64, budget: f64) -> usize {
    let mut n = k + suggest_coherent_cutoff(mean, budget);
    while n < MAX_CUTOFF && photon_added_tail(k, mean, n).0 > budget {
        n += 1 + n / 8;
    }
    n
}

/// Exact norm of `a^dag^k |alpha>` (f64 bookkeeping).
pub fn photon_added_norm(k: usize, alpha_norm_sqr: f64) -> f64 {
    photon_added_tail(k, alpha_norm_sqr, usize::MAX / 2).1
}

/// Two-mode beamsplitter unitary `exp(theta (a_E^dag a_B - a_B^dag a_E))`
/// with transmissivity `eta = cos^2 theta`, stored blockwise.
///
/// The generator conserves total photon number, so the unitary decomposes
/// over total-number sectors; each block is the scaling-and-squaring
/// exponential of the (exactly anti-Hermitian) truncated generator. Blocks
/// with total number above either cutoff are truncated and only
/// approximate the untruncated action; this is the edge the simulation
/// buffer absorbs.
///
/// Adopted sign convention: `U D_B(a) U^dag = D_B(sqrt(eta) a) D_E(sqrt(1-eta) a)`,
/// i.e. `U (|a>_B |0>_E) = |sqrt(eta) a>_B |sqrt(1-eta) a>_E`.
#[derive(Clone, Debug)]
pub struct Beamsplitter<T: Scalar> {
    dim_b: usize,
    dim_e: usize,
    blocks: Vec<BsBlock<T>>,
}

#[derive(Clone, Debug)]
struct BsBlock<T: Scalar> {
    /// Flat composite indices `n_b * dim_e + n_e` of the sector states.
    indices: Vec<usize>,
    u: CMatrix<T>,
}

/// Build the beamsplitter unitary on `space_b (x) space_e`.
pub fn beamsplitter<T: Scalar>(
    theta: T,
    space_b: &TruncatedFockSpace<T>,
    space_e: &TruncatedFockSpace<T>,
) -> Beamsplitter<T> {
    let nb = space_b.cutoff();
    let ne = space_e.cutoff();
    let dim_e = space_e.dim();
    let mut blocks = Vec::with_capacity(nb + ne + 1);
    for s in 0..=(nb + ne) {
        let lo = s.saturating_sub(ne);
        let hi = s.min(nb);
        let size = hi - lo + 1;
        let mut gen = CMatrix::zeros(size, size);
        for t in 0..size {
            let n_b = lo + t;
            let n_e = s - n_b;
            // a_E^dag a_B : (n_b, n_e) -> (n_b - 1, n_e + 1)
            if t > 0 {
                let amp = real::<T>((n_b as f64 * (n_e + 1) as f64).sqrt());
                gen[(t - 1, t)] = Complex::new(theta * amp, T::zero());
            }
            // -a_B^dag a_E : (n_b, n_e) -> (n_b + 1, n_e - 1)
            if t + 1 < size {
                let amp = real::<T>(((n_b + 1) as f64 * n_e as f64).sqrt());
                gen[(t + 1, t)] = Complex::new(-(theta * amp), T::zero());
            }
        }
        let u = if size == 1 {
            CMatrix::identity(1)
        } else {
            expm(&gen)
        };
        let indices = (0..size)
            .map(|t| (lo + t) * dim_e + (s - (lo + t)))
            .collect();
        blocks.push(BsBlock { indices, u });
    }
    Beamsplitter {
        dim_b: space_b.dim(),
        dim_e,
        blocks,
    }
}

impl<T: Scalar> Beamsplitter<T> {
    pub fn dim(&self) -> usize {
        self.dim_b * self.dim_e
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_b, self.dim_e)
    }

    /// Apply to a composite vector indexed `n_b * dim_e + n_e`.
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![czero(); v.len()];
        for block in &self.blocks {
            let size = block.indices.len();
            if size == 1 {
                out[block.indices[0]] = v[block.indices[0]];
                continue;
            }
            let gathered: Vec<Complex<T>> = block.indices.iter().map(|&ix| v[ix]).collect();
            let rotated = block.u.matvec(&gathered);
            for (t, &ix) in block.indices.iter().enumerate() {
                out[ix] = rotated[t];
            }
        }
        out
    }

    /// Materialize the dense unitary.
    pub fn to_matrix(&self) -> CMatrix<T> {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for block in &self.blocks {
            for (r, &ir) in block.indices.iter().enumerate() {
                for (c, &ic) in block.indices.iter().enumerate() {
                    m[(ir, ic)] = block.u[(r, c)];
                }
            }
        }
        m
    }
}

/// Partial trace of a composite density matrix, keeping the listed
/// subsystems (result ordered as in `keep`).
pub fn partial_trace<T: Scalar>(
    rho: &DensityMatrix<T>,
    keep: &[usize],
) -> Result<DensityMatrix<T>> {
    let dims = rho.dims();
    if keep.is_empty() {
        return Err(Error::DimsMismatch("keep list is empty".into()));
    }
    let mut seen = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() {
            return Err(Error::DimsMismatch(format!(
                "subsystem {k} out of range for {} subsystems",
                dims.len()
            )));
        }
        if seen[k] {
            return Err(Error::DimsMismatch(format!("subsystem {k} listed twice")));
        }
        seen[k] = true;
    }
    let reduced = linalg::partial_trace(rho.mat(), dims, keep);
    let new_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    DensityMatrix::new(reduced, &new_dims, rho.basis_note())
}

/// Harmonic-oscillator position wavefunctions `psi_0..=psi_max` at `x`.
fn oscillator_wavefunctions<T: Scalar>(max: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(max + 1);
    let pi_quarter = real::<T>(std::f64::consts::PI.powf(-0.25));
    let half = real::<T>(0.5);
    let p0 = pi_quarter * (-(x * x) * half).exp();
    out.push(p0);
    if max == 0 {
        return out;
    }
    let sqrt2 = real::<T>(std::f64::consts::SQRT_2);
    out.push(sqrt2 * x * p0);
    for k in 2..=max {
        let kf = real::<T>(k as f64);
        let a = (real::<T>(2.0) / kf).sqrt();
        let b = ((kf - T::one()) / kf).sqrt();
        let next = a * x * out[k - 1] - b * out[k - 2];
        out.push(next);
    }
    out
}

/// Wigner function of a Fock-basis density matrix at one phase-space point,
/// via the closed-form kernel with associated Laguerre polynomials.
///
/// Convention: `W(x, p) = (1/pi) Int dy e^{2ipy} <x-y|rho|x+y>`, under which
/// the vacuum gives `(1/pi) e^{-x^2-p^2}` and `Int W dx dp = 1`.
pub fn wigner_point<T: Scalar>(rho: &CMatrix<T>, x: T, p: T) -> T {
    assert!(rho.is_square());
    let dim = rho.rows();
    let r2 = (x * x + p * p) * real::<T>(2.0);
    let gauss = (-(x * x) - p * p).exp();
    let inv_pi = T::one() / T::PI();
    let base = Complex::new(x, -p); // (x - ip)
    let mut acc = czero::<T>();
    for m in 0..dim {
        for n in 0..=m {
            let upper = rho[(m, n)];
            let lower = if m == n { czero() } else { rho[(n, m)] };
            if upper.norm_sqr() == T::zero() && lower.norm_sqr() == T::zero() {
                continue;
            }
            // ratio^2 = 2^{m-n} n!/m!
            let mut ratio_sq = T::one();
            for j in (n + 1)..=m {
                ratio_sq = ratio_sq * real::<T>(2.0) / real::<T>(j as f64);
            }
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            let lag = associated_laguerre(n, m - n, r2);
            let pref = inv_pi * sign * ratio_sq.sqrt() * gauss * lag;
            let phase = base.powi((m - n) as i32);
            let kernel = phase * Complex::new(pref, T::zero());
            acc += upper * kernel;
            if m != n {
                acc += lower * kernel.conj();
            }
        }
    }
    acc.re
}

/// Wigner function over a grid, row-major over `xs` then `ps`.
pub fn wigner_grid<T: Scalar>(rho: &CMatrix<T>, xs: &[T], ps: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len() * ps.len());
    for &x in xs {
        for &p in ps {
            out.push(wigner_point(rho, x, p));
        }
    }
    out
}

/// Wigner function of a pure state with finite Fock support.
pub fn wigner_pure<T: Scalar>(psi: &[Complex<T>], x: T, p: T) -> T {
    wigner_point(&linalg::outer(psi, psi), x, p)
}

/// Reference evaluation of the defining integral by Simpson quadrature of
/// `(1/pi) Int dy e^{2ipy} <x-y|rho|x+y>`. Slow; used to cross-check the
/// kernel path.
pub fn wigner_point_quadrature<T: Scalar>(rho: &CMatrix<T>, x: T, p: T) -> T {
    assert!(rho.is_square());
    let dim = rho.rows();
    let span = as_f64(x).abs() + (2.0 * dim as f64 + 1.0).sqrt() + 8.0;
    let n_panels = 2000usize; // 2 * panels + 1 Simpson nodes
    let h = real::<T>(2.0 * span / (2 * n_panels) as f64);
    let lo = real::<T>(-span);

    let eval = |y: T| -> Complex<T> {
        let left = oscillator_wavefunctions(dim - 1, x - y);
        let right = oscillator_wavefunctions(dim - 1, x + y);
        let mut f = czero::<T>();
        for m in 0..dim {
            for n in 0..dim {
                let z = rho[(m, n)];
                if z.norm_sqr() == T::zero() {
                    continue;
                }
                f += z * Complex::new(left[m] * right[n], T::zero());
            }
        }
        let phase = Complex::new(T::zero(), real::<T>(2.0) * p * y).exp();
        phase * f
    };

    let mut acc = czero::<T>();
    for i in 0..=(2 * n_panels) {
        let y = lo + h * real::<T>(i as f64);
        let w = if i == 0 || i == 2 * n_panels {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += eval(y) * Complex::new(real::<T>(w), T::zero());
    }
    let simpson = acc * Complex::new(h / real::<T>(3.0), T::zero());
    (simpson / Complex::new(T::PI(), T::zero())).re
}

fn associated_laguerre<T: Scalar>(n: usize, k: usize, z: T) -> T {
    let kf = real::<T>(k as f64);
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() + kf - z;
    for j in 2..=n {
        let jf = real::<T>(j as f64);
        let next =
            ((real::<T>(2.0) * jf - T::one() + kf - z) * cur - (jf - T::one() + kf) * prev) / jf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Gaussianity test for a finite-dimensional state in the Fock basis: among
/// such states only the vacuum is Gaussian, so the check reduces to
/// `<0|rho|0> >= 1 - tol`.
pub fn gaussianity_check<T: Scalar>(rho: &CMatrix<T>, tol: T) -> bool {
    assert!(rho.is_square() && rho.rows() >= 1);
    rho[(0, 0)].re >= T::one() - tol
}

/// Nilpotent qudit ladder operators: the d-dimensional truncation of the
/// bosonic ladder, with `lower^d = raise^d = 0` exactly and commutator
/// `diag(1, ..., 1, -(d-1))`.
#[derive(Clone, Debug)]
pub struct QuditModeOps<T: Scalar> {
    d: usize,
    lower: CMatrix<T>,
    raise: CMatrix<T>,
}

impl<T: Scalar> QuditModeOps<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn lower(&self) -> &CMatrix<T> {
        &self.lower
    }

    pub fn raise(&self) -> &CMatrix<T> {
        &self.raise
    }

    /// `raise * lower` (diagonal number operator).
    pub fn number(&self) -> CMatrix<T> {
        self.raise.mul(&self.lower)
    }
}

pub fn qudit_mode_ops<T: Scalar>(d: usize) -> QuditModeOps<T> {
    assert!(d >= 2, "qudit dimension must be finite and >= 2");
    let mut lower = CMatrix::zeros(d, d);
    for n in 1..d {
        lower[(n - 1, n)] = Complex::new(real::<T>(n as f64).sqrt(), T::zero());
    }
    let raise = lower.adjoint();
    QuditModeOps { d, lower, raise }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, kron_vec, norm2, outer};
    use crate::scalar::cplx;

    type C = Complex<f64>;

    #[test]
    fn ladder_actions() {
        let sp = TruncatedFockSpace::<f64>::new(6);
        let a = sp.destroy();
        let one = sp.fock_vector(1);
        let av = a.matvec(&one);
        assert!((av[0].re - 1.0).abs() < 1e-15);
        // create |n> = sqrt(n+1)|n+1> for n < cutoff
        let ad = sp.create();
        for n in 0..6 {
            let v = ad.matvec(&sp.fock_vector(n));
            assert!((v[n + 1].re - ((n + 1) as f64).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn coherent_expectation_of_destroy() {
        let sp = TruncatedFockSpace::<f64>::new(40);
        let alpha = cplx::<f64>(0.8, 0.0);
        let v = sp.coherent_vector(alpha).unwrap();
        let av = sp.destroy().matvec(&v);
        let expect = dot(&v, &av);
        assert!((expect - alpha).norm() < 1e-12);
    }

    #[test]
    fn coherent_overlap_matches_closed_form() {
        let sp = TruncatedFockSpace::<f64>::new(40);
        let a = 1.0;
        let va = sp.coherent_vector(cplx(a, 0.0)).unwrap();
        let vb = sp.coherent_vector(cplx(-a, 0.0)).unwrap();
        let ov = dot(&va, &vb);
        assert!((ov.re - (-2.0 * a * a).exp()).abs() < 1e-10);
        assert!(ov.im.abs() < 1e-14);
        // raw norm before renormalization is 1 within the budget at this cutoff
        let mean: f64 = 1.0;
        assert!(super::coherent_tail(mean, 40) < 1e-12);
    }

    #[test]
    fn coherent_cutoff_insufficient_suggests() {
        let sp = TruncatedFockSpace::<f64>::new(3);
        let err = sp.coherent_vector(cplx(2.5, 0.0)).unwrap_err();
        match err {
            Error::CutoffInsufficient { suggested, .. } => {
                assert!(super::coherent_tail(6.25, suggested) <= 1e-12);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn vacuum_is_coherent_zero() {
        let sp = TruncatedFockSpace::<f64>::new(5);
        let v = sp.coherent_vector(cplx(0.0, 0.0)).unwrap();
        assert!((v[0].re - 1.0).abs() < 1e-15);
        assert!(norm2(&v[1..]) < 1e-15);
    }

    #[test]
    fn thermal_state_moments() {
        let sp = TruncatedFockSpace::<f64>::new(60);
        let rho = sp.thermal_state(0.3).unwrap();
        let mean: f64 = (0..=60).map(|n| n as f64 * rho[(n, n)].re).sum();
        assert!((mean - 0.3).abs() < 1e-9);
        let purity: f64 = (0..=60).map(|n| rho[(n, n)].re.powi(2)).sum();
        assert!((purity - 1.0 / 1.6).abs() < 1e-9);
        // zero temperature is the vacuum projector
        let rho0 = sp.thermal_state(0.0).unwrap();
        assert!((rho0[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn photon_added_norm_matches_laguerre() {
        // ||a^dag^k |alpha>||^2 = k! L_k(-|alpha|^2)
        let a2 = 0.49f64;
        for k in 0..5usize {
            let norm = photon_added_norm(k, a2);
            let kfact: f64 = (1..=k).map(|j| j as f64).product();
            let lag = super::associated_laguerre(k, 0, -a2);
            assert!(
                (norm * norm - kfact * lag).abs() < 1e-10 * (kfact * lag),
                "k={k}"
            );
        }
    }

    #[test]
    fn beamsplitter_identity_at_zero_angle() {
        let sp = TruncatedFockSpace::<f64>::new(8);
        let bs = beamsplitter(0.0, &sp, &sp);
        let u = bs.to_matrix();
        assert!(u.sub(&CMatrix::identity(81)).max_abs() < 1e-13);
    }

    #[test]
    fn beamsplitter_coherent_splitting() {
        // U (|a>|0>) = |sqrt(eta) a> |sqrt(1-eta) a>
        let sp = TruncatedFockSpace::<f64>::new(40);
        let eta: f64 = 0.64;
        let theta = eta.sqrt().acos();
        let bs = beamsplitter(theta, &sp, &sp);
        let alpha = 0.8;
        let input = kron_vec(&sp.coherent_vector(cplx(alpha, 0.0)).unwrap(), &sp.vacuum());
        let out = bs.apply(&input);
        let target = kron_vec(
            &sp.coherent_vector(cplx(eta.sqrt() * alpha, 0.0)).unwrap(),
            &sp.coherent_vector(cplx((1.0 - eta).sqrt() * alpha, 0.0))
                .unwrap(),
        );
        let fidelity = dot(&target, &out).norm_sqr();
        assert!(fidelity >= 1.0 - 1e-8, "fidelity {fidelity}");
    }

    #[test]
    fn beamsplitter_conserves_photon_number() {
        let sp = TruncatedFockSpace::<f64>::new(24);
        let bs = beamsplitter(0.7, &sp, &sp);
        let psi = kron_vec(
            &sp.coherent_vector(cplx(0.9, 0.2)).unwrap(),
            &sp.coherent_vector(cplx(-0.3, 0.4)).unwrap(),
        );
        let out = bs.apply(&psi);
        let number_expect = |v: &[C]| -> f64 {
            let mut acc = 0.0;
            for nb in 0..sp.dim() {
                for ne in 0..sp.dim() {
                    acc += (nb + ne) as f64 * v[nb * sp.dim() + ne].norm_sqr();
                }
            }
            acc
        };
        assert!((number_expect(&psi) - number_expect(&out)).abs() < 1e-9);
        assert!((norm2(&out) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beamsplitter_unitary_on_dense_matrix() {
        let sp = TruncatedFockSpace::<f64>::new(10);
        let bs = beamsplitter(0.5, &sp, &sp);
        let u = bs.to_matrix();
        let gram = u.adjoint().mul(&u);
        assert!(gram.sub(&CMatrix::identity(121)).max_abs() < 1e-11);
    }

    #[test]
    fn wigner_vacuum_gaussian() {
        let sp = TruncatedFockSpace::<f64>::new(4);
        let rho = outer(&sp.vacuum(), &sp.vacuum());
        for &(x, p) in &[(0.0, 0.0), (0.5, -0.3), (1.2, 0.7), (-2.0, 0.1)] {
            let w = wigner_point(&rho, x, p);
            let expect = (1.0 / std::f64::consts::PI) * (-x * x - p * p).exp();
            assert!((w - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn wigner_single_photon_dip() {
        let sp = TruncatedFockSpace::<f64>::new(4);
        let one = sp.fock_vector(1);
        let w0 = wigner_pure(&one, 0.0, 0.0);
        assert!((w0 + 1.0 / std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn wigner_kernel_matches_quadrature() {
        // mixed qubit (|0><0| + |1><1|)/2 at assorted points
        let mut rho = CMatrix::<f64>::zeros(2, 2);
        rho[(0, 0)] = cplx(0.5, 0.0);
        rho[(1, 1)] = cplx(0.5, 0.0);
        for &(x, p) in &[(0.0, 0.0), (0.3, -0.2), (1.0, 1.0)] {
            let wk = wigner_point(&rho, x, p);
            let wq = wigner_point_quadrature(&rho, x, p);
            assert!((wk - wq).abs() < 1e-8, "({x},{p}): {wk} vs {wq}");
        }
        // off-diagonal coherences too
        let mut rho2 = CMatrix::<f64>::zeros(3, 3);
        rho2[(0, 0)] = cplx(0.6, 0.0);
        rho2[(2, 2)] = cplx(0.4, 0.0);
        rho2[(0, 2)] = cplx(0.3, 0.2);
        rho2[(2, 0)] = cplx(0.3, -0.2);
        let wk = wigner_point(&rho2, -0.4, 0.9);
        let wq = wigner_point_quadrature(&rho2, -0.4, 0.9);
        assert!((wk - wq).abs() < 1e-8);
    }

    #[test]
    fn wigner_vacuum_integrates_to_one() {
        // 2D Simpson over [-6, 6]^2
        let sp = TruncatedFockSpace::<f64>::new(2);
        let rho = outer(&sp.vacuum(), &sp.vacuum());
        let n = 120usize;
        let h = 12.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            for j in 0..=n {
                let wx = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                let wy = if j == 0 || j == n {
                    1.0
                } else if j % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                let x = -6.0 + i as f64 * h;
                let p = -6.0 + j as f64 * h;
                acc += wx * wy * wigner_point(&rho, x, p);
            }
        }
        acc *= (h / 3.0) * (h / 3.0);
        assert!((acc - 1.0).abs() < 1e-6, "integral {acc}");
    }

    #[test]
    fn gaussianity_only_vacuum() {
        let sp = TruncatedFockSpace::<f64>::new(3);
        let rho = outer(&sp.vacuum(), &sp.vacuum());
        assert!(gaussianity_check(&rho, 1e-10));
        // any superposition with |c1| > 0 fails
        let mut psi = sp.vacuum();
        psi[0] = cplx(0.9, 0.0);
        psi[1] = cplx((1.0f64 - 0.81).sqrt(), 0.0);
        assert!(!gaussianity_check(&outer(&psi, &psi), 1e-6));
    }

    #[test]
    fn qudit_ops_properties() {
        let ops = qudit_mode_ops::<f64>(2);
        assert!((ops.lower()[(0, 1)].re - 1.0).abs() < 1e-15);
        // lower^d = 0 exactly (structural zeros)
        for d in 2..=6usize {
            let ops = qudit_mode_ops::<f64>(d);
            let mut pow = ops.lower().clone();
            for _ in 1..d {
                pow = pow.mul(ops.lower());
            }
            assert_eq!(pow.max_abs(), 0.0, "lower^{d} must vanish exactly");
            let mut powr = ops.raise().clone();
            for _ in 1..d {
                powr = powr.mul(ops.raise());
            }
            assert_eq!(powr.max_abs(), 0.0);
        }
        // commutator diag(1, ..., 1, -(d-1)) in integer arithmetic
        let ops = qudit_mode_ops::<f64>(3);
        let comm = ops
            .lower()
            .mul(ops.raise())
            .sub(&ops.raise().mul(ops.lower()));
        for (i, expect) in [1.0, 1.0, -2.0].iter().enumerate() {
            assert!((comm[(i, i)].re - expect).abs() < 1e-12);
        }
        assert!(comm[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn f32_instantiation_smoke() {
        let sp = TruncatedFockSpace::<f32>::with_budget(20, 1e-6f32);
        let v = sp.coherent_vector(Complex::new(0.5f32, 0.0)).unwrap();
        assert!((norm2(&v) - 1.0).abs() < 1e-6);
        let w32 = wigner_point(&outer(&v, &v), 0.3f32, -0.1);
        let sp64 = TruncatedFockSpace::<f64>::new(20);
        let v64 = sp64.coherent_vector(cplx(0.5, 0.0)).unwrap();
        let w64 = wigner_point(&outer(&v64, &v64), 0.3, -0.1);
        assert!((w32 as f64 - w64).abs() < 1e-4, "{w32} vs {w64}");
        let weights = sp.thermal_weights(0.2f32).unwrap();
        assert!((weights.iter().sum::<f32>() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn quadrature_agrees_for_random_mixed_state() {
        // deterministic 4-dim mixed state with complex coherences
        let raw = CMatrix::from_fn(4, 4, |i, j| {
            cplx::<f64>(
                ((3 * i + 5 * j + 1) as f64 * 0.37).sin(),
                ((2 * i + 7 * j) as f64 * 0.53).cos() * 0.4,
            )
        });
        let psd = raw.mul(&raw.adjoint());
        let tr = psd.trace().re;
        let rho = psd.scale(cplx(1.0 / tr, 0.0));
        for &(x, p) in &[(0.2, 0.4), (-1.1, 0.8)] {
            let wk = wigner_point(&rho, x, p);
            let wq = wigner_point_quadrature(&rho, x, p);
            assert!((wk - wq).abs() < 1e-8);
        }
    }
}
