//! Hybrid-state data model, qumode overlap oracles, and the three-way
//! classification into pure DV-like, mixed DV-like, and truly hybrid
//! entangled states.
//!
//! A hybrid state is a convex mixture of pure components, each a
//! superposition of `|m>_A |psi_m>_B` terms with a finite qudit index `m`
//! and a (generally nonorthogonal) qumode reference. Truly hybrid states,
//! which need unboundedly many linearly independent qumode states, cannot
//! be captured by any finite term list; they enter the model through
//! analytic family tags instead.

use crate::error::{Error, Result};
use crate::fock::{self, TruncatedFockSpace};
use crate::gram::{numerical_rank, GramMatrix};
use crate::linalg::{dot, norm2};
use crate::scalar::{as_f64, cplx, real, Scalar};
use num_complex::Complex;

/// Absolute tolerance for treating two qumode references as the same state.
pub const QUMODE_EQ_TOL: f64 = 1e-12;
/// Error budget for Fock-engine overlap evaluation.
const OVERLAP_ERR_BOUND: f64 = 1e-10;
/// Normalization slack for state data.
const NORM_TOL: f64 = 1e-12;

/// A reference to a single-mode continuous-variable state.
#[derive(Clone, Debug, PartialEq)]
pub enum QumodeKind<T: Scalar> {
    /// Coherent state `|alpha>`.
    Coherent { amplitude: Complex<T> },
    /// Photon-added coherent state `a^dag^k |alpha>` (normalized).
    PhotonAddedCoherent { k: usize, amplitude: Complex<T> },
    /// Finite Fock-basis expansion (stored with unit 2-norm).
    FockVector { coefficients: Vec<Complex<T>> },
}

/// A normalized qumode state together with the normalization constant of
/// its defining (possibly unnormalized) construction.
#[derive(Clone, Debug, PartialEq)]
pub struct QumodeRef<T: Scalar> {
    kind: QumodeKind<T>,
    normalization: T,
}

impl<T: Scalar> QumodeRef<T> {
    pub fn coherent(amplitude: Complex<T>) -> Self {
        Self {
            kind: QumodeKind::Coherent { amplitude },
            normalization: T::one(),
        }
    }

    pub fn vacuum() -> Self {
        Self::coherent(Complex::new(T::zero(), T::zero()))
    }

    /// Photon-added coherent state; the normalization `||a^dag^k |alpha>||`
    /// is evaluated numerically by the Fock engine.
    pub fn photon_added(k: usize, amplitude: Complex<T>) -> Self {
        let norm = fock::photon_added_norm(k, as_f64(amplitude.norm_sqr()));
        Self {
            kind: QumodeKind::PhotonAddedCoherent { k, amplitude },
            normalization: real(norm),
        }
    }

    /// Finite Fock-basis state; coefficients are scaled to unit 2-norm and
    /// the original norm is retained as the normalization constant.
    pub fn fock_vector(coefficients: Vec<Complex<T>>) -> Result<Self> {
        let norm = norm2(&coefficients);
        if coefficients.is_empty() || norm <= T::zero() {
            return Err(Error::InvalidState(
                "Fock vector must have a nonzero coefficient".into(),
            ));
        }
        let inv = Complex::new(T::one() / norm, T::zero());
        let scaled: Vec<Complex<T>> = coefficients.iter().map(|&c| c * inv).collect();
        Ok(Self {
            kind: QumodeKind::FockVector {
                coefficients: scaled,
            },
            normalization: norm,
        })
    }

    pub fn kind(&self) -> &QumodeKind<T> {
        &self.kind
    }

    pub fn normalization(&self) -> T {
        self.normalization
    }

    /// Same physical state within an absolute parameter tolerance.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        match (&self.kind, &other.kind) {
            (QumodeKind::Coherent { amplitude: a }, QumodeKind::Coherent { amplitude: b }) => {
                (*a - *b).norm() <= tol
            }
            (
                QumodeKind::PhotonAddedCoherent {
                    k: ka,
                    amplitude: a,
                },
                QumodeKind::PhotonAddedCoherent {
                    k: kb,
                    amplitude: b,
                },
            ) => ka == kb && (*a - *b).norm() <= tol,
            (
                QumodeKind::FockVector { coefficients: a },
                QumodeKind::FockVector { coefficients: b },
            ) => a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| (*x - *y).norm() <= tol),
            _ => false,
        }
    }

    /// Minimum Fock cutoff representing this state with relative lost norm
    /// within the engine's overlap error budget.
    fn required_cutoff(&self) -> usize {
        let budget = OVERLAP_ERR_BOUND / 10.0;
        match &self.kind {
            QumodeKind::Coherent { amplitude } => {
                fock::required_coherent_cutoff(as_f64(amplitude.norm_sqr()), budget)
            }
            QumodeKind::PhotonAddedCoherent { k, amplitude } => {
                fock::required_photon_added_cutoff(*k, as_f64(amplitude.norm_sqr()), budget)
            }
            QumodeKind::FockVector { coefficients } => coefficients.len().saturating_sub(1),
        }
    }

    /// Normalized vector representation on the given truncated space.
    pub fn vector_in(&self, space: &TruncatedFockSpace<T>) -> Result<Vec<Complex<T>>> {
        match &self.kind {
            QumodeKind::Coherent { amplitude } => space.coherent_vector(*amplitude),
            QumodeKind::PhotonAddedCoherent { k, amplitude } => {
                let mut v = space.photon_added_raw(*k, *amplitude)?;
                crate::linalg::normalize(&mut v);
                Ok(v)
            }
            QumodeKind::FockVector { coefficients } => {
                if coefficients.len() > space.dim() {
                    return Err(Error::CutoffInsufficient {
                        cutoff: space.cutoff(),
                        suggested: coefficients.len() - 1,
                        detail: "Fock vector support exceeds the space".into(),
                    });
                }
                let mut v = coefficients.clone();
                v.resize(space.dim(), Complex::new(T::zero(), T::zero()));
                Ok(v)
            }
        }
    }
}

/// Overlap `<a|b>` of two qumode references.
///
/// Coherent pairs use the displacement closed form
/// `exp(-|a|^2/2 - |b|^2/2 + conj(a) b)`; every other combination is
/// evaluated by the Fock engine on a common adaptive cutoff whose
/// truncation error bound stays below 1e-10.
pub fn overlap<T: Scalar>(a: &QumodeRef<T>, b: &QumodeRef<T>) -> Result<Complex<T>> {
    if let (QumodeKind::Coherent { amplitude: x }, QumodeKind::Coherent { amplitude: y }) =
        (&a.kind, &b.kind)
    {
        let half = real::<T>(0.5);
        let exponent = -(x.norm_sqr() + y.norm_sqr()) * half;
        return Ok((Complex::new(exponent, T::zero()) + x.conj() * *y).exp());
    }
    let cutoff = a.required_cutoff().max(b.required_cutoff()).max(2);
    if cutoff > 4096 {
        return Err(Error::CutoffInsufficient {
            cutoff: 4096,
            suggested: cutoff,
            detail: "overlap truncation error bound cannot be met".into(),
        });
    }
    let space = TruncatedFockSpace::<T>::with_budget(cutoff, real(1.0));
    let va = a.vector_in(&space)?;
    let vb = b.vector_in(&space)?;
    Ok(dot(&va, &vb))
}

/// One `c |m>_A |qumode>_B` term of a pure component.
#[derive(Clone, Debug)]
pub struct StateTerm<T: Scalar> {
    pub coefficient: Complex<T>,
    pub dv_index: usize,
    pub qumode: QumodeRef<T>,
}

/// One pure component of the convex mixture, with its weight.
#[derive(Clone, Debug)]
pub struct StateComponent<T: Scalar> {
    pub weight: T,
    pub terms: Vec<StateTerm<T>>,
}

/// Analytic family markers carrying the states that no finite term list
/// can represent.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyTag<T: Scalar> {
    /// Output of the one-sided thermal photon-noise channel applied to the
    /// two-component coherent-state superposition input.
    ThermalChannelOutput { alpha: Complex<T>, eta: T, n_th: T },
    /// Geometric mixture of scaled coherent-superposition components with
    /// weights `(1-x)/x * x^n`, amplitudes `sqrt(n) alpha`.
    GeometricMixture { x: T, alpha: T },
}

/// A (possibly mixed) qudit-qumode hybrid state.
#[derive(Clone, Debug)]
pub struct HybridState<T: Scalar> {
    dv_dim: usize,
    components: Vec<StateComponent<T>>,
    family: Option<FamilyTag<T>>,
}

impl<T: Scalar> HybridState<T> {
    /// Validated constructor for explicitly enumerated states.
    ///
    /// Weights must be positive and sum to 1; each component must have unit
    /// coefficient norm, at most one term per qudit index, and indices
    /// inside `0..dv_dim`.
    pub fn new(dv_dim: usize, components: Vec<StateComponent<T>>) -> Result<Self> {
        Self::build(dv_dim, components, None)
    }

    /// A state defined by an analytic family tag (no finite components).
    /// Parameter-range validation happens in [`classify`].
    pub fn from_family(dv_dim: usize, family: FamilyTag<T>) -> Result<Self> {
        Self::build(dv_dim, Vec::new(), Some(family))
    }

    fn build(
        dv_dim: usize,
        components: Vec<StateComponent<T>>,
        family: Option<FamilyTag<T>>,
    ) -> Result<Self> {
        if dv_dim < 2 {
            return Err(Error::InvalidState(format!(
                "DV dimension must be >= 2, got {dv_dim}"
            )));
        }
        let tol = real::<T>(NORM_TOL);
        match &family {
            Some(_) => {
                if !components.is_empty() {
                    return Err(Error::InvalidState(
                        "family-tagged states carry no finite component list".into(),
                    ));
                }
            }
            None => {
                if components.is_empty() {
                    return Err(Error::InvalidState(
                        "state needs at least one component".into(),
                    ));
                }
                let mut total = T::zero();
                for (n, comp) in components.iter().enumerate() {
                    if comp.weight <= T::zero() {
                        return Err(Error::InvalidState(format!(
                            "component {n} weight must be positive"
                        )));
                    }
                    total += comp.weight;
                    if comp.terms.is_empty() {
                        return Err(Error::InvalidState(format!("component {n} has no terms")));
                    }
                    let mut seen = vec![false; dv_dim];
                    let mut norm = T::zero();
                    for term in &comp.terms {
                        if term.dv_index >= dv_dim {
                            return Err(Error::InvalidState(format!(
                                "component {n}: DV index {} out of range",
                                term.dv_index
                            )));
                        }
                        if seen[term.dv_index] {
                            return Err(Error::InvalidState(format!(
                                "component {n}: duplicate DV index {}",
                                term.dv_index
                            )));
                        }
                        seen[term.dv_index] = true;
                        norm += term.coefficient.norm_sqr();
                    }
                    if (norm - T::one()).abs() > tol {
                        return Err(Error::InvalidState(format!(
                            "component {n}: coefficient norm {} != 1",
                            as_f64(norm)
                        )));
                    }
                }
                if (total - T::one()).abs() > tol {
                    return Err(Error::InvalidState(format!(
                        "weights sum to {}, expected 1",
                        as_f64(total)
                    )));
                }
            }
        }
        Ok(Self {
            dv_dim,
            components,
            family,
        })
    }

    pub fn dv_dim(&self) -> usize {
        self.dv_dim
    }

    pub fn components(&self) -> &[StateComponent<T>] {
        &self.components
    }

    pub fn family(&self) -> Option<&FamilyTag<T>> {
        self.family.as_ref()
    }

    /// Distinct qumode references (first-appearance order, compared within
    /// [`QUMODE_EQ_TOL`]) and, per component, each term's index into that
    /// list.
    pub fn distinct_qumodes(&self) -> (Vec<QumodeRef<T>>, Vec<Vec<usize>>) {
        let tol = real::<T>(QUMODE_EQ_TOL);
        let mut distinct: Vec<QumodeRef<T>> = Vec::new();
        let mut map = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let mut idxs = Vec::with_capacity(comp.terms.len());
            for term in &comp.terms {
                let pos = distinct.iter().position(|q| q.approx_eq(&term.qumode, tol));
                let pos = match pos {
                    Some(p) => p,
                    None => {
                        distinct.push(term.qumode.clone());
                        distinct.len() - 1
                    }
                };
                idxs.push(pos);
            }
            map.push(idxs);
        }
        (distinct, map)
    }

    /// Gram matrix of this state's distinct qumode references.
    pub fn qumode_gram(&self) -> Result<GramMatrix<T>> {
        let (distinct, _) = self.distinct_qumodes();
        let n = distinct.len();
        if n == 0 {
            return Err(Error::DimensionZero);
        }
        let mut table = vec![vec![Complex::new(T::zero(), T::zero()); n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = overlap(&distinct[i], &distinct[j])?;
            }
        }
        GramMatrix::build(|i, j| table[i][j], n)
    }
}

/// Finite value or no finite value at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    PureDVLike,
    MixedDVLike,
    TrulyHybrid,
}

/// Outcome of the classification scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub effective_qumode_dim: Dimension,
    pub mix_terms: Dimension,
}

/// Classify a hybrid state.
///
/// Enumerated states report their component count and the numerical rank
/// of their qumode Gram matrix; any finite description therefore never
/// classifies as truly hybrid. Family-tagged states are classified
/// analytically:
///
/// * thermal channel output with `n_th > 0` and `0 <= eta < 1` involves the
///   unbounded family `a^dag^k |sqrt(eta) alpha>`, hence truly hybrid; the
///   `eta = 0` (fully noise-replaced, beyond the entanglement-breaking
///   bound) and `alpha = 0` (product input) edges carry no entanglement to
///   witness, but still admit no finite-dimensional description;
/// * `n_th = 0` leaves pure amplitude damping: two coherent states survive,
///   a mixed DV-like state for `eta < 1` and the pure input for `eta = 1`;
/// * the geometric mixture is truly hybrid for any `alpha != 0`.
pub fn classify<T: Scalar>(s: &HybridState<T>, rank_tol: T) -> Result<Classification> {
    match s.family() {
        None => {
            let n = s.components().len();
            let gram = s.qumode_gram()?;
            let rank = numerical_rank(&gram, rank_tol);
            let verdict = if n == 1 {
                Verdict::PureDVLike
            } else {
                Verdict::MixedDVLike
            };
            Ok(Classification {
                verdict,
                effective_qumode_dim: Dimension::Finite(rank),
                mix_terms: Dimension::Finite(n),
            })
        }
        Some(FamilyTag::ThermalChannelOutput { alpha, eta, n_th }) => {
            if *eta < T::zero() || *eta > T::one() {
                return Err(Error::InvalidFamilyParams(format!(
                    "eta = {} outside [0, 1]",
                    as_f64(*eta)
                )));
            }
            if *n_th < T::zero() {
                return Err(Error::InvalidFamilyParams(format!(
                    "n_th = {} negative",
                    as_f64(*n_th)
                )));
            }
            let alpha_zero = alpha.norm_sqr() == T::zero();
            if *n_th > T::zero() {
                if *eta == T::one() {
                    // theta = 0: no coupling, the pure input survives.
                    return Ok(Classification {
                        verdict: Verdict::PureDVLike,
                        effective_qumode_dim: Dimension::Finite(if alpha_zero { 1 } else { 2 }),
                        mix_terms: Dimension::Finite(1),
                    });
                }
                // Structurally unbounded for any alpha; the alpha = 0 and
                // eta = 0 edges carry no entanglement to witness but admit
                // no finite-dimensional description either.
                return Ok(Classification {
                    verdict: Verdict::TrulyHybrid,
                    effective_qumode_dim: Dimension::Unbounded,
                    mix_terms: Dimension::Unbounded,
                });
            }
            // Amplitude damping only.
            if *eta == T::one() || alpha_zero {
                // Either the channel is cancelled or the input is the
                // product |+>|0>; both leave a pure state.
                Ok(Classification {
                    verdict: Verdict::PureDVLike,
                    effective_qumode_dim: Dimension::Finite(if alpha_zero { 1 } else { 2 }),
                    mix_terms: Dimension::Finite(1),
                })
            } else {
                let dim = if *eta == T::zero() { 1 } else { 2 };
                Ok(Classification {
                    verdict: Verdict::MixedDVLike,
                    effective_qumode_dim: Dimension::Finite(dim),
                    mix_terms: Dimension::Finite(2),
                })
            }
        }
        Some(FamilyTag::GeometricMixture { x, alpha }) => {
            if !(*x > T::zero() && *x < T::one()) {
                return Err(Error::InvalidX(as_f64(*x)));
            }
            if *alpha == T::zero() {
                return Ok(Classification {
                    verdict: Verdict::PureDVLike,
                    effective_qumode_dim: Dimension::Finite(1),
                    mix_terms: Dimension::Finite(1),
                });
            }
            Ok(Classification {
                verdict: Verdict::TrulyHybrid,
                effective_qumode_dim: Dimension::Unbounded,
                mix_terms: Dimension::Unbounded,
            })
        }
    }
}

/// Effective total dimension `M * prod(d_i)` available to a mixed state
/// with `M` mix terms and finite subsystem dimensions `d_i`.
pub fn effective_dimension_bound(dv_dims: &[usize], mix_terms: usize) -> usize {
    assert!(mix_terms >= 1, "mix term count must be >= 1");
    assert!(dv_dims.iter().all(|&d| d >= 1), "dimensions must be >= 1");
    mix_terms * dv_dims.iter().product::<usize>()
}

pub mod schema {
    //! JSON schema for hybrid-state files.
    //!
    //! ```json
    //! {
    //!   "dv_dim": 3,
    //!   "components": [
    //!     { "weight": 1.0,
    //!       "terms": [
    //!         { "re": 0.57735, "im": 0.0, "dv_index": 0,
    //!           "qumode": { "coherent": { "re": 0.0, "im": 0.0 } } }
    //!       ] }
    //!   ],
    //!   "family": null
    //! }
    //! ```
    //!
    //! Qumode variants: `{"coherent": {"re", "im"}}`,
    //! `{"photon_added_coherent": {"k", "re", "im"}}`,
    //! `{"fock_vector": {"coefficients": [[re, im], ...]}}`.
    //! Family variants: `{"thermal_channel_output": {"alpha_re", "alpha_im",
    //! "eta", "n_th"}}`, `{"geometric_mixture": {"x", "alpha"}}`.

    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct StateFile {
        pub dv_dim: usize,
        #[serde(default)]
        pub components: Vec<ComponentFile>,
        #[serde(default)]
        pub family: Option<FamilyFile>,
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct ComponentFile {
        pub weight: f64,
        pub terms: Vec<TermFile>,
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct TermFile {
        pub re: f64,
        pub im: f64,
        pub dv_index: usize,
        pub qumode: QumodeFile,
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    #[serde(rename_all = "snake_case")]
    pub enum QumodeFile {
        Coherent { re: f64, im: f64 },
        PhotonAddedCoherent { k: usize, re: f64, im: f64 },
        FockVector { coefficients: Vec<[f64; 2]> },
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    #[serde(rename_all = "snake_case")]
    pub enum FamilyFile {
        ThermalChannelOutput {
            alpha_re: f64,
            alpha_im: f64,
            eta: f64,
            n_th: f64,
        },
        GeometricMixture {
            x: f64,
            alpha: f64,
        },
    }

    impl<T: Scalar> HybridState<T> {
        /// Parse and validate a state file.
        pub fn from_json_str(text: &str) -> Result<Self> {
            let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            Self::from_schema(&file)
        }

        pub fn from_schema(file: &StateFile) -> Result<Self> {
            let family = file.family.as_ref().map(|f| match f {
                FamilyFile::ThermalChannelOutput {
                    alpha_re,
                    alpha_im,
                    eta,
                    n_th,
                } => FamilyTag::ThermalChannelOutput {
                    alpha: cplx(*alpha_re, *alpha_im),
                    eta: real(*eta),
                    n_th: real(*n_th),
                },
                FamilyFile::GeometricMixture { x, alpha } => FamilyTag::GeometricMixture {
                    x: real(*x),
                    alpha: real(*alpha),
                },
            });
            let components = file
                .components
                .iter()
                .map(|c| {
                    let terms = c
                        .terms
                        .iter()
                        .map(|t| {
                            let qumode = match &t.qumode {
                                QumodeFile::Coherent { re, im } => {
                                    Ok(QumodeRef::coherent(cplx(*re, *im)))
                                }
                                QumodeFile::PhotonAddedCoherent { k, re, im } => {
                                    Ok(QumodeRef::photon_added(*k, cplx(*re, *im)))
                                }
                                QumodeFile::FockVector { coefficients } => QumodeRef::fock_vector(
                                    coefficients.iter().map(|c| cplx(c[0], c[1])).collect(),
                                ),
                            }?;
                            Ok(StateTerm {
                                coefficient: cplx(t.re, t.im),
                                dv_index: t.dv_index,
                                qumode,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(StateComponent {
                        weight: real(c.weight),
                        terms,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match family {
                Some(f) => Self::from_family(file.dv_dim, f),
                None => Self::new(file.dv_dim, components),
            }
        }

        pub fn to_schema(&self) -> StateFile {
            StateFile {
                dv_dim: self.dv_dim,
                components: self
                    .components
                    .iter()
                    .map(|c| ComponentFile {
                        weight: as_f64(c.weight),
                        terms: c
                            .terms
                            .iter()
                            .map(|t| TermFile {
                                re: as_f64(t.coefficient.re),
                                im: as_f64(t.coefficient.im),
                                dv_index: t.dv_index,
                                qumode: match t.qumode.kind() {
                                    QumodeKind::Coherent { amplitude } => QumodeFile::Coherent {
                                        re: as_f64(amplitude.re),
                                        im: as_f64(amplitude.im),
                                    },
                                    QumodeKind::PhotonAddedCoherent { k, amplitude } => {
                                        QumodeFile::PhotonAddedCoherent {
                                            k: *k,
                                            re: as_f64(amplitude.re),
                                            im: as_f64(amplitude.im),
                                        }
                                    }
                                    QumodeKind::FockVector { coefficients } => {
                                        QumodeFile::FockVector {
                                            coefficients: coefficients
                                                .iter()
                                                .map(|z| [as_f64(z.re), as_f64(z.im)])
                                                .collect(),
                                        }
                                    }
                                },
                            })
                            .collect(),
                    })
                    .collect(),
                family: self.family.as_ref().map(|f| match f {
                    FamilyTag::ThermalChannelOutput { alpha, eta, n_th } => {
                        FamilyFile::ThermalChannelOutput {
                            alpha_re: as_f64(alpha.re),
                            alpha_im: as_f64(alpha.im),
                            eta: as_f64(*eta),
                            n_th: as_f64(*n_th),
                        }
                    }
                    FamilyTag::GeometricMixture { x, alpha } => FamilyFile::GeometricMixture {
                        x: as_f64(*x),
                        alpha: as_f64(*alpha),
                    },
                }),
            }
        }

        pub fn to_json_string(&self) -> String {
            serde_json::to_string_pretty(&self.to_schema()).expect("schema serialization")
        }
    }
}

/// The pure qutrit-qumode example state
/// `(|e0>|0> + |e1>|alpha> + |e2>|-alpha>) / sqrt(3)`.
pub fn qutrit_cat_state<T: Scalar>(alpha: T) -> HybridState<T> {
    let c = Complex::new(T::one() / real::<T>(3.0).sqrt(), T::zero());
    HybridState::new(
        3,
        vec![StateComponent {
            weight: T::one(),
            terms: vec![
                StateTerm {
                    coefficient: c,
                    dv_index: 0,
                    qumode: QumodeRef::vacuum(),
                },
                StateTerm {
                    coefficient: c,
                    dv_index: 1,
                    qumode: QumodeRef::coherent(Complex::new(alpha, T::zero())),
                },
                StateTerm {
                    coefficient: c,
                    dv_index: 2,
                    qumode: QumodeRef::coherent(Complex::new(-alpha, T::zero())),
                },
            ],
        }],
    )
    .expect("qutrit cat state is valid")
}

/// The two-component mixed qubit-qumode example state
/// `p |phi_+><phi_+| + (1-p) |phi_-><phi_-|` with
/// `|phi_+-> = (|e0>|0> + |e1>|+-alpha>) / sqrt(2)`.
pub fn mixed_qubit_cat_state<T: Scalar>(p: T, alpha: T) -> Result<HybridState<T>> {
    let c = Complex::new(T::one() / real::<T>(2.0).sqrt(), T::zero());
    let comp = |sign: T, weight: T| StateComponent {
        weight,
        terms: vec![
            StateTerm {
                coefficient: c,
                dv_index: 0,
                qumode: QumodeRef::vacuum(),
            },
            StateTerm {
                coefficient: c,
                dv_index: 1,
                qumode: QumodeRef::coherent(Complex::new(sign * alpha, T::zero())),
            },
        ],
    };
    if p <= T::zero() {
        return HybridState::new(2, vec![comp(-T::one(), T::one())]);
    }
    if p >= T::one() {
        return HybridState::new(2, vec![comp(T::one(), T::one())]);
    }
    HybridState::new(2, vec![comp(T::one(), p), comp(-T::one(), T::one() - p)])
}
