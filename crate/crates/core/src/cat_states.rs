//! Coherent and squeezed cat states as four-term Wigner mixtures.
//!
//! Quadratures follow `alpha = (x + i p) / sqrt(2)`, so a cat with amplitude
//! `beta0 = |beta0| e^{i xi}` has real Wigner centres `+-Q (x0, p0)` with
//! `(x0, p0) = sqrt(2) |beta0| (cos xi, sin xi)` and interference centres
//! `+-i Q (-p0, x0)`, where `Q` is the squeezing matrix (identity for a
//! coherent cat).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{squeeze_matrix, wrap_half_open_pi, Sym2};
use crate::phase_space::{ComplexCenter, CovMatrix, GaussianTerm, WignerMixture};

/// Smallest accepted value of the normalisation `2 + 2 cos(theta) e^{-2|beta0|^2}`.
pub const MIN_NORMALIZATION: f64 = 1e-8;

/// Initial cat: `|beta0> + e^{i theta} |-beta0>`, squeezed by `S(r0, phi0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatSpec {
    pub beta_abs: f64,
    pub xi: f64,
    pub r0: f64,
    pub phi0: f64,
    pub theta: f64,
}

impl CatSpec {
    pub fn new(beta_abs: f64, xi: f64, r0: f64, phi0: f64, theta: f64) -> Result<Self> {
        let spec = Self {
            beta_abs,
            xi,
            r0,
            phi0,
            theta,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Unsqueezed cat with `phi0 = 0`.
    pub fn coherent(beta_abs: f64, xi: f64, theta: f64) -> Result<Self> {
        Self::new(beta_abs, xi, 0.0, 0.0, theta)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.beta_abs, self.xi, self.r0, self.phi0, self.theta]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::Domain(format!("non-finite cat parameter in {self:?}")));
        }
        if self.beta_abs < 0.0 {
            return Err(Error::Domain(format!("|beta0| = {} must be >= 0", self.beta_abs)));
        }
        if self.r0 < 0.0 {
            return Err(Error::Domain(format!("r0 = {} must be >= 0", self.r0)));
        }
        let norm = self.normalization();
        if norm <= MIN_NORMALIZATION {
            return Err(Error::Domain(format!(
                "cat normalisation 2 + 2cos(theta)exp(-2|beta0|^2) = {norm:e} is below \
                 {MIN_NORMALIZATION:e}"
            )));
        }
        Ok(())
    }

    pub fn with_xi(self, xi: f64) -> Self {
        Self { xi, ..self }
    }

    pub fn with_r0(self, r0: f64) -> Self {
        Self { r0, ..self }
    }

    pub fn with_theta(self, theta: f64) -> Self {
        Self { theta, ..self }
    }

    /// Complex amplitude `beta0`.
    pub fn beta(&self) -> Complex64 {
        Complex64::from_polar(self.beta_abs, self.xi)
    }

    /// Unsqueezed quadrature centre `(x0, p0)`.
    pub fn quadrature_center(&self) -> [f64; 2] {
        let (s, c) = self.xi.sin_cos();
        let amp = std::f64::consts::SQRT_2 * self.beta_abs;
        [amp * c, amp * s]
    }

    /// `x0^2 + p0^2 = 2 |beta0|^2`.
    pub fn center_norm_sq(&self) -> f64 {
        2.0 * self.beta_abs * self.beta_abs
    }

    /// `2 + 2 cos(theta) e^{-(x0^2 + p0^2)}`.
    pub fn normalization(&self) -> f64 {
        2.0 + 2.0 * self.theta.cos() * (-self.center_norm_sq()).exp()
    }

    /// Squeezing matrix `Q = Rot(phi0) diag(e^r0, e^-r0) Rot(phi0)^T`.
    pub fn squeeze(&self) -> Sym2 {
        squeeze_matrix(self.r0, self.phi0)
    }

    /// Initial covariance `Q (I/2) Q`.
    pub fn initial_cov(&self) -> CovMatrix {
        let q = self.squeeze();
        CovMatrix::from_sym(CovMatrix::vacuum().as_sym().congruence(&q))
            .expect("squeezed vacuum covariance is positive definite")
    }
}

/// Four-term cat mixture with centres scaled by `damping` and covariance `cov`.
///
/// Weights are normalised against `cov`, so the mixture integrates to one for
/// any positive-definite covariance; the interference factor
/// `e^{-(x0^2 + p0^2)}` is always taken at the initial centres.
pub(crate) fn cat_mixture(spec: &CatSpec, damping: f64, cov: CovMatrix) -> Result<WignerMixture> {
    let q = spec.squeeze();
    let [x0, p0] = spec.quadrature_center();
    let m = q.apply([damping * x0, damping * p0]);
    let n = q.apply([-damping * p0, damping * x0]);

    let base = -(2.0 * PI * cov.det().sqrt()).ln() - spec.normalization().ln();
    let real_lw = Complex64::new(base, 0.0);
    let fringe_lw = Complex64::new(base - spec.center_norm_sq(), spec.theta);

    let plus = GaussianTerm::from_log_weight(real_lw, ComplexCenter::real(m[0], m[1]), cov)?;
    let minus = GaussianTerm::from_log_weight(real_lw, ComplexCenter::real(-m[0], -m[1]), cov)?;
    let fringe = GaussianTerm::from_log_weight(fringe_lw, ComplexCenter::imaginary(n[0], n[1]), cov)?;
    WignerMixture::new(vec![plus, minus, fringe, fringe.conj()])
}

/// Wigner mixture of an unsqueezed cat. Requires `r0 = 0`.
pub fn build_coherent_cat(spec: &CatSpec) -> Result<WignerMixture> {
    spec.validate()?;
    if spec.r0 != 0.0 {
        return Err(Error::Contract(format!(
            "build_coherent_cat requires r0 = 0, got {}",
            spec.r0
        )));
    }
    cat_mixture(spec, 1.0, CovMatrix::vacuum())
}

/// Wigner mixture of a squeezed cat (covariance `Q sigma~ Q`, centres `Q X`).
pub fn build_squeezed_cat(spec: &CatSpec) -> Result<WignerMixture> {
    spec.validate()?;
    cat_mixture(spec, 1.0, spec.initial_cov())
}

/// Bogoliubov coefficients of `b = mu a + nu a^dagger`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPair {
    pub mu: Complex64,
    pub nu: Complex64,
}

impl BogoliubovPair {
    pub fn new(mu: Complex64, nu: Complex64) -> Result<Self> {
        let gap = mu.norm_sqr() - nu.norm_sqr() - 1.0;
        if gap.abs() > 1e-12 * mu.norm_sqr().max(1.0) || gap.is_nan() {
            return Err(Error::Invariant(format!(
                "|mu|^2 - |nu|^2 = {} != 1",
                gap + 1.0
            )));
        }
        Ok(Self { mu, nu })
    }

    /// Pair generating `S(r, phi)`: `mu = cosh r`, `nu = e^{2 i phi} sinh r`.
    pub fn from_squeezing(r: f64, phi: f64) -> Self {
        Self {
            mu: Complex64::new(r.cosh(), 0.0),
            nu: Complex64::from_polar(r.sinh(), 2.0 * phi),
        }
    }
}

/// Displacement and squeezing of the two-photon coherent state `|beta>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedDisplacement {
    pub alpha: Complex64,
    pub r0: f64,
    pub phi0: f64,
}

/// Map a Bogoliubov eigenvalue `beta` to `|beta> = D(alpha) S(r0, phi0)|0>`:
/// `alpha = mu beta - nu beta*`, `cosh r0 = mu`, `e^{2 i phi0} sinh r0 = nu`.
///
/// Only real `mu >= 1` is accepted; `phi0` is returned in `(-pi/2, pi/2]`.
pub fn bogoliubov_to_squeezing(pair: &BogoliubovPair, beta: Complex64) -> Result<SqueezedDisplacement> {
    let pair = BogoliubovPair::new(pair.mu, pair.nu)?;
    let mu = pair.mu;
    if mu.im.abs() > 1e-12 * mu.norm().max(1.0) || mu.re <= 0.0 {
        return Err(Error::UnsupportedConvention(format!(
            "mu must be real and positive, got {mu}"
        )));
    }
    let alpha = pair.mu * beta - pair.nu * beta.conj();
    let r0 = mu.re.max(1.0).acosh();
    let phi0 = if pair.nu.norm() == 0.0 {
        0.0
    } else {
        wrap_half_open_pi(0.5 * pair.nu.arg())
    };
    Ok(SqueezedDisplacement { alpha, r0, phi0 })
}

/// Symmetrically ordered characteristic function `Tr[rho D(eta)]` of an
/// unsqueezed cat with `alpha0 = |beta0| e^{i xi}`.
pub fn characteristic_function(spec: &CatSpec, eta: Complex64) -> Result<Complex64> {
    spec.validate()?;
    if spec.r0 != 0.0 {
        return Err(Error::Contract(
            "characteristic_function is only defined here for r0 = 0".into(),
        ));
    }
    let alpha = spec.beta();
    let gauss = -0.5 * eta.norm_sqr();
    // alpha* eta - alpha eta* is purely imaginary
    let diag_phase = 2.0 * (alpha.conj() * eta).im;
    let diag = Complex64::new(2.0 * diag_phase.cos(), 0.0);
    let w = 2.0 * (alpha.conj() * eta).re;
    let damp = -2.0 * alpha.norm_sqr();
    let i_theta = Complex64::new(0.0, spec.theta);
    let fringe = (Complex64::new(damp + w, 0.0) + i_theta).exp()
        + (Complex64::new(damp - w, 0.0) - i_theta).exp();
    Ok((diag + fringe) * gauss.exp() / spec.normalization())
}
