//! Phase-space simulation of Schrödinger cat states decohering in general
//! Gaussian channels.
//!
//! Every state handled here is a finite sum of (possibly complex-centred)
//! Gaussians sharing one covariance matrix, so the whole pipeline works at the
//! level of first and second moments:
//!
//! * [`phase_space`]: Gaussian terms, exact integrals and overlaps, pointwise
//!   Wigner evaluation, and a brute-force grid quadrature oracle.
//! * [`cat_states`]: coherent and squeezed cat construction, Bogoliubov
//!   parameters, characteristic function.
//! * [`channel`]: Gaussian channel parameters and exact moment evolution.
//! * [`purity`]: closed-form purity, auxiliary matrices, coherence metrics.
//! * [`optimizer`]: decoherence-minimising orientation and squeezing.
//! * [`figures`]: parameter sets and curve generation for the reference plots.

pub mod cat_states;
pub mod channel;
pub mod error;
pub mod figures;
pub mod linalg;
pub mod optimizer;
pub mod phase_space;
pub mod purity;

pub use cat_states::{BogoliubovPair, CatSpec};
pub use channel::{ChannelSpec, EvolvedState};
pub use error::{Error, Result};
pub use phase_space::{ComplexCenter, CovMatrix, GaussianTerm, WignerMixture};
pub use purity::{PurityAuxiliaries, PurityCurve};
