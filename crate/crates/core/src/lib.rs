//! Numerics for qudit-qumode hybrid entanglement: Gram-matrix
//! orthonormalization of nonorthogonal qumode states, a hybrid-state data
//! model with a three-way classification, finite-dimensional embeddings and
//! entanglement measures, a truncated-Fock brute-force engine (beamsplitter
//! dilation, Wigner functions), the one-sided thermal photon-noise channel,
//! and moment-determinant entanglement witnesses.
//!
//! All numeric code is generic over the real scalar via [`scalar::Scalar`]
//! (`f32` or `f64`); the aliases below fix the common double-precision
//! instantiation.
//!
//! ```
//! use hybrident::measures::{embed_state, log_negativity, Cut};
//! use hybrident::states::{classify, mixed_qubit_cat_state, Verdict};
//!
//! # fn main() -> Result<(), hybrident::Error> {
//! let state = mixed_qubit_cat_state(0.5_f64, 1.0)?;
//! let class = classify(&state, 1e-10)?;
//! assert_eq!(class.verdict, Verdict::MixedDVLike);
//!
//! let rho = embed_state(&state)?; // density matrix on 2 x 3
//! let e_n = log_negativity(&rho, Cut::B)?;
//! assert!((e_n - 0.533041724578).abs() < 1e-9);
//! # Ok(())
//! # }
//! ```

pub mod channels;
pub mod error;
pub mod fock;
pub mod gram;
pub mod linalg;
pub mod measures;
pub mod scalar;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::Scalar;

use num_complex::Complex;

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;
/// Single-precision complex scalar.
pub type C32 = Complex<f32>;

/// Double-precision dense complex matrix.
pub type Matrix64 = linalg::CMatrix<f64>;
/// Double-precision Gram matrix.
pub type GramMatrix64 = gram::GramMatrix<f64>;
/// Double-precision inverse Gram-Schmidt embedding.
pub type Embedding64 = gram::Embedding<f64>;
/// Double-precision hybrid state.
pub type HybridState64 = states::HybridState<f64>;
/// Double-precision qumode reference.
pub type QumodeRef64 = states::QumodeRef<f64>;
/// Double-precision density matrix with subsystem dimensions.
pub type DensityMatrix64 = measures::DensityMatrix<f64>;
/// Double-precision truncated Fock space.
pub type TruncatedFockSpace64 = fock::TruncatedFockSpace<f64>;
/// Double-precision thermal-channel parameter set.
pub type ChannelParams64 = channels::ChannelParams<f64>;
/// Double-precision SV moment set.
pub type MomentSet64 = witness::MomentSet<f64>;
/// Double-precision witness report.
pub type WitnessReport64 = witness::WitnessReport<f64>;
