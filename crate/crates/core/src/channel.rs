//! Gaussian noisy channel: damping toward a squeezed thermal state.
//!
//! Every Gaussian term evolves independently. First moments decay as
//! `e^{-Gamma t / 2}` and the covariance interpolates exponentially between
//! its initial value and the asymptotic `sigma_inf`.

use num_complex::Complex64;

use crate::cat_states::{cat_mixture, CatSpec};
use crate::error::{Error, Result};
use crate::linalg::{wrap_half_open_pi, Sym2};
use crate::phase_space::{CovMatrix, WignerMixture};

/// Channel with loss rate `gamma`, thermal parameter `n` and bath squeezing
/// `M = m1 + i m2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub gamma: f64,
    pub n: f64,
    pub m1: f64,
    pub m2: f64,
}

impl ChannelSpec {
    pub fn new(gamma: f64, n: f64, m1: f64, m2: f64) -> Result<Self> {
        let ch = Self { gamma, n, m1, m2 };
        ch.validate()?;
        Ok(ch)
    }

    /// Phase-insensitive channel with the given asymptotic purity.
    pub fn thermal_with_purity(gamma: f64, mu_inf: f64) -> Result<Self> {
        if !(mu_inf > 0.0 && mu_inf <= 1.0) {
            return Err(Error::Domain(format!("asymptotic purity {mu_inf} outside (0, 1]")));
        }
        Self::new(gamma, 0.5 * (1.0 / mu_inf - 1.0), 0.0, 0.0)
    }

    /// Channel with real `M > 0` chosen so that the bath squeezing is `r_inf`
    /// and the asymptotic purity is `mu_inf`.
    pub fn squeezed_with_purity(gamma: f64, mu_inf: f64, r_inf: f64) -> Result<Self> {
        if !(mu_inf > 0.0 && mu_inf <= 1.0) {
            return Err(Error::Domain(format!("asymptotic purity {mu_inf} outside (0, 1]")));
        }
        if !(r_inf >= 0.0 && r_inf.is_finite()) {
            return Err(Error::Domain(format!("bath squeezing {r_inf} must be >= 0")));
        }
        // cosh 2r = sqrt(1 + 4 mu^2 M^2) and (2N+1)^2 = mu^-2 + 4 M^2
        let m = (2.0 * r_inf).sinh() / (2.0 * mu_inf);
        let n = 0.5 * ((2.0 * r_inf).cosh() / mu_inf - 1.0);
        Self::new(gamma, n, m, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.gamma, self.n, self.m1, self.m2].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!("non-finite channel parameter in {self:?}")));
        }
        if self.gamma <= 0.0 {
            return Err(Error::Domain(format!("loss rate gamma = {} must be > 0", self.gamma)));
        }
        if self.n < 0.0 {
            return Err(Error::Domain(format!("N = {} must be >= 0", self.n)));
        }
        let m_sq = self.m_norm_sqr();
        let bound = self.n * (self.n + 1.0);
        if m_sq > bound + 1e-12 * bound.max(1.0) {
            return Err(Error::InfeasibleChannel { m_sq, bound });
        }
        Ok(())
    }

    pub fn m(&self) -> Complex64 {
        Complex64::new(self.m1, self.m2)
    }

    pub fn m_norm_sqr(&self) -> f64 {
        self.m1 * self.m1 + self.m2 * self.m2
    }

    pub fn is_thermal(&self) -> bool {
        self.m1 == 0.0 && self.m2 == 0.0
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        Self { gamma, ..self }
    }
}

/// Asymptotic covariance `[[(2N+1)/2 + M1, M2], [M2, (2N+1)/2 - M1]]`.
pub fn sigma_infinity(ch: &ChannelSpec) -> Result<CovMatrix> {
    ch.validate()?;
    let half = (2.0 * ch.n + 1.0) / 2.0;
    CovMatrix::new(half + ch.m1, ch.m2, half - ch.m1)
}

/// `mu_inf = 1 / sqrt((2N+1)^2 - 4|M|^2)`.
pub fn asymptotic_purity(ch: &ChannelSpec) -> Result<f64> {
    ch.validate()?;
    let two_n1 = 2.0 * ch.n + 1.0;
    let d = two_n1 * two_n1 - 4.0 * ch.m_norm_sqr();
    if d <= 0.0 {
        return Err(Error::Domain(format!("degenerate asymptotic state (det term {d})")));
    }
    Ok(d.sqrt().recip())
}

/// Squeezing `r_inf` and orientation `phi_inf` of the asymptotic state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSqueezing {
    pub r_inf: f64,
    /// `Arg(M) / 2` in `(-pi/2, pi/2]`; the major axis of `sigma_inf`.
    pub phi_inf: f64,
}

/// `cosh(2 r_inf) = sqrt(1 + 4 mu_inf^2 |M|^2)`, `phi_inf = Arg(M) / 2`.
pub fn bath_squeezing(ch: &ChannelSpec) -> Result<BathSqueezing> {
    let mu = asymptotic_purity(ch)?;
    let cosh_2r = (1.0 + 4.0 * mu * mu * ch.m_norm_sqr()).sqrt();
    let phi_inf = if ch.is_thermal() {
        0.0
    } else {
        wrap_half_open_pi(0.5 * ch.m2.atan2(ch.m1))
    };
    Ok(BathSqueezing {
        r_inf: 0.5 * cosh_2r.acosh(),
        phi_inf,
    })
}

/// Exact first and second moments at time `t`:
/// `X(t) = e^{-Gamma t/2} X(0)`, `sigma(t) = sigma_inf (1 - e^{-Gamma t}) + sigma(0) e^{-Gamma t}`.
pub fn evolve_moments(
    x0: [f64; 2],
    sigma0: &CovMatrix,
    ch: &ChannelSpec,
    t: f64,
) -> Result<([f64; 2], CovMatrix)> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("evolution time t = {t} must be finite and >= 0")));
    }
    let sigma_inf = sigma_infinity(ch)?;
    let decay = (-ch.gamma * t).exp();
    let amp = (-0.5 * ch.gamma * t).exp();
    let sigma = interpolate(sigma_inf.as_sym(), sigma0.as_sym(), decay);
    Ok(([amp * x0[0], amp * x0[1]], CovMatrix::from_sym(sigma)?))
}

fn interpolate(sigma_inf: &Sym2, sigma0: &Sym2, decay: f64) -> Sym2 {
    sigma_inf.scale(1.0 - decay).add(&sigma0.scale(decay))
}

/// Covariance `sigma(t)` of every term of an evolving cat.
pub fn sigma_at(spec: &CatSpec, ch: &ChannelSpec, t: f64) -> Result<CovMatrix> {
    evolve_moments([0.0, 0.0], &spec.initial_cov(), ch, t).map(|(_, s)| s)
}

/// Cat state after evolving for time `t` in a channel.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolvedState {
    pub mixture: WignerMixture,
    pub t: f64,
    pub source: CatSpec,
    pub channel: ChannelSpec,
}

/// Wigner mixture of the cat at time `t`.
///
/// Centres are damped by `e^{-Gamma t/2}`, all terms share `sigma(t)`, and
/// the weights keep their initial values apart from the `sqrt(det sigma(t))`
/// normalisation (so the interference factor `e^{-(x0^2+p0^2)}` is frozen).
pub fn evolve_cat(spec: &CatSpec, ch: &ChannelSpec, t: f64) -> Result<EvolvedState> {
    spec.validate()?;
    let sigma = sigma_at(spec, ch, t)?;
    let mixture = cat_mixture(spec, (-0.5 * ch.gamma * t).exp(), sigma)?;
    Ok(EvolvedState {
        mixture,
        t,
        source: *spec,
        channel: *ch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat_states::build_squeezed_cat;
    use crate::phase_space::{normalized_term, purity_from_mixture, ComplexCenter};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn constraint_enforced() {
        assert!(ChannelSpec::new(1.0, 1.0, 1.0, 1.0).is_ok());
        let err = ChannelSpec::new(1.0, 1.0, 1.5, 0.0).unwrap_err();
        assert!(matches!(err, Error::InfeasibleChannel { .. }));
        assert!(err.to_string().contains("|M|^2 <= N(N+1)"));
        assert!(ChannelSpec::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(ChannelSpec::new(1.0, -0.1, 0.0, 0.0).is_err());
    }

    #[test]
    fn sigma_infinity_examples() {
        let s = sigma_infinity(&ChannelSpec::new(1.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!((s.sxx(), s.sxp(), s.spp()), (0.5, 0.0, 0.5));
        let s = sigma_infinity(&ChannelSpec::new(1.0, 0.5, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!((s.sxx(), s.sxp(), s.spp()), (1.0, 0.0, 1.0));
        let ch = ChannelSpec::new(1.0, 2.5, 2.0, 2.0).unwrap();
        let s = sigma_infinity(&ch).unwrap();
        assert_eq!((s.sxx(), s.sxp(), s.spp()), (5.0, 2.0, 1.0));
        let two_n1: f64 = 6.0;
        assert!(close(s.det(), (two_n1 * two_n1 - 4.0 * 8.0) / 4.0, 1e-15));
    }

    #[test]
    fn asymptotic_purity_examples() {
        let p = |n, m1, m2| asymptotic_purity(&ChannelSpec::new(1.0, n, m1, m2).unwrap()).unwrap();
        assert_eq!(p(0.0, 0.0, 0.0), 1.0);
        assert!(close(p(0.5, 0.0, 0.0), 0.5, 1e-15));
        assert!(close(p(2.5, 2.0, 2.0), 0.5, 1e-15));
        let ch = ChannelSpec::new(1.0, 1.3, 0.4, -0.9).unwrap();
        let s = sigma_infinity(&ch).unwrap();
        assert!(close(asymptotic_purity(&ch).unwrap(), 1.0 / (2.0 * s.det().sqrt()), 1e-14));
    }

    #[test]
    fn bath_squeezing_examples() {
        let b = bath_squeezing(&ChannelSpec::new(1.0, 0.7, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(b.r_inf, 0.0);
        let b = bath_squeezing(&ChannelSpec::new(1.0, 2.5, 2.0, 2.0).unwrap()).unwrap();
        assert!(close((2.0 * b.r_inf).cosh(), 3.0, 1e-12));
        assert!(close(b.r_inf, 0.5 * 3f64.acosh(), 1e-12));
        assert!(close(b.r_inf, 0.8814, 1e-4));
        assert!(close(b.phi_inf, PI / 8.0, 1e-15));
        let b = bath_squeezing(&ChannelSpec::new(1.0, 1.0, 1.0, 0.0).unwrap()).unwrap();
        assert!(close(b.r_inf, 0.5 * 1.8f64.sqrt().acosh(), 1e-14));
        assert!(close(b.r_inf, 0.4024, 1e-4));
        let b = bath_squeezing(&ChannelSpec::new(1.0, 1.0, -1.0, 0.0).unwrap()).unwrap();
        assert!(close(b.phi_inf, PI / 2.0, 1e-15));
    }

    #[test]
    fn squeezed_with_purity_hits_targets() {
        let ch = ChannelSpec::squeezed_with_purity(1.0, 0.5, 1.0).unwrap();
        assert!(close(asymptotic_purity(&ch).unwrap(), 0.5, 1e-13));
        let b = bath_squeezing(&ch).unwrap();
        assert!(close(b.r_inf, 1.0, 1e-12));
        assert_eq!(b.phi_inf, 0.0);
        let s = sigma_infinity(&ch).unwrap();
        assert!(close(s.sxx(), 2f64.exp() / (2.0 * 0.5), 1e-12));
    }

    #[test]
    fn evolve_moments_examples() {
        let ch = ChannelSpec::new(2.0, 0.5, 0.3, 0.1).unwrap();
        let s0 = CovMatrix::new(0.7, 0.1, 0.4).unwrap();
        let x0 = [1.5, -0.5];
        let (x, s) = evolve_moments(x0, &s0, &ch, 0.0).unwrap();
        assert_eq!((x, s), (x0, s0));

        let t = 2f64.ln() / ch.gamma;
        let (x, s) = evolve_moments(x0, &s0, &ch, t).unwrap();
        let inf = sigma_infinity(&ch).unwrap();
        assert!(close(x[0], x0[0] / 2f64.sqrt(), 1e-15) && close(x[1], x0[1] / 2f64.sqrt(), 1e-15));
        assert!(close(s.sxx(), 0.5 * (s0.sxx() + inf.sxx()), 1e-15));
        assert!(close(s.sxp(), 0.5 * (s0.sxp() + inf.sxp()), 1e-15));
        assert!(close(s.spp(), 0.5 * (s0.spp() + inf.spp()), 1e-15));

        let (x, s) = evolve_moments(x0, &s0, &ch, 25.0).unwrap();
        assert!(x[0].abs() < 1e-10 && x[1].abs() < 1e-10);
        assert!(close(s.sxx(), inf.sxx(), 1e-15) && close(s.spp(), inf.spp(), 1e-15));

        assert!(evolve_moments(x0, &s0, &ch, -1.0).is_err());
    }

    #[test]
    fn evolve_cat_at_zero_is_initial_cat() {
        let spec = CatSpec::new(1.4, 0.3, 0.8, 0.2, 1.0).unwrap();
        let ch = ChannelSpec::new(1.0, 0.8, 0.3, -0.2).unwrap();
        let state = evolve_cat(&spec, &ch, 0.0).unwrap();
        assert_eq!(state.mixture, build_squeezed_cat(&spec).unwrap());
    }

    #[test]
    fn long_times_reach_asymptotic_purity() {
        for (spec, ch) in [
            (CatSpec::new(2.0, 0.3, 0.8, 0.2, 1.0).unwrap(), ChannelSpec::new(1.0, 0.8, 0.3, -0.2).unwrap()),
            (CatSpec::coherent(1.0, 0.0, 0.0).unwrap(), ChannelSpec::new(0.5, 0.5, 0.0, 0.0).unwrap()),
        ] {
            let state = evolve_cat(&spec, &ch, 50.0 / ch.gamma).unwrap();
            let mu = purity_from_mixture(&state.mixture).unwrap();
            assert!(close(mu, asymptotic_purity(&ch).unwrap(), 1e-6), "{mu}");
        }
    }

    #[test]
    fn squeezed_vacuum_purity_is_gaussian() {
        let spec = CatSpec::new(0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        let ch = ChannelSpec::new(1.0, 0.5, 0.0, 0.0).unwrap();
        let state = evolve_cat(&spec, &ch, 1.0).unwrap();
        let (_, sigma) = evolve_moments([0.0, 0.0], &spec.initial_cov(), &ch, 1.0).unwrap();
        let expected = 1.0 / (2.0 * sigma.det().sqrt());
        assert!(close(purity_from_mixture(&state.mixture).unwrap(), expected, 1e-12));
    }

    #[test]
    fn asymptotic_purity_matches_gaussian_integral() {
        let ch = ChannelSpec::new(1.0, 1.7, -0.6, 1.1).unwrap();
        let s = sigma_infinity(&ch).unwrap();
        let mix = WignerMixture::new(vec![normalized_term(1.0, ComplexCenter::real(0.0, 0.0), s).unwrap()]).unwrap();
        assert!(close(asymptotic_purity(&ch).unwrap(), purity_from_mixture(&mix).unwrap(), 1e-12));
    }

    #[test]
    fn gaussian_purity_is_monotone_in_thermal_channel() {
        let spec = CatSpec::coherent(0.0, 0.0, 0.0).unwrap();
        let ch = ChannelSpec::new(1.0, 0.5, 0.0, 0.0).unwrap();
        let mut last = 1.0;
        for k in 1..100 {
            let state = evolve_cat(&spec, &ch, 0.1 * k as f64).unwrap();
            let mu = purity_from_mixture(&state.mixture).unwrap();
            assert!(mu <= last + 1e-15);
            last = mu;
        }
        assert!(close(last, 0.5, 1e-4));
    }

    fn arb_channel() -> impl Strategy<Value = ChannelSpec> {
        (0.2f64..3.0, 0.0f64..3.0, 0.0f64..1.0, 0.0f64..(2.0 * PI)).prop_map(|(g, n, frac, ang)| {
            let m = frac * (n * (n + 1.0)).sqrt();
            ChannelSpec::new(g, n, m * ang.cos(), m * ang.sin()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn moments_form_a_semigroup(ch in arb_channel(), t1 in 0.0f64..3.0, t2 in 0.0f64..3.0,
                                    x in -5.0f64..5.0, p in -5.0f64..5.0, r in 0.0f64..1.5) {
            let s0 = CatSpec::new(0.0, 0.0, r, 0.3, 0.0).unwrap().initial_cov();
            let (xa, sa) = evolve_moments([x, p], &s0, &ch, t1 + t2).unwrap();
            let (xm, sm) = evolve_moments([x, p], &s0, &ch, t1).unwrap();
            let (xb, sb) = evolve_moments(xm, &sm, &ch, t2).unwrap();
            let scale = 1.0 + sa.sxx().abs() + sa.spp().abs();
            prop_assert!((xa[0] - xb[0]).abs() < 1e-12 && (xa[1] - xb[1]).abs() < 1e-12);
            prop_assert!((sa.sxx() - sb.sxx()).abs() < 1e-12 * scale);
            prop_assert!((sa.sxp() - sb.sxp()).abs() < 1e-12 * scale);
            prop_assert!((sa.spp() - sb.spp()).abs() < 1e-12 * scale);
        }

        #[test]
        fn evolved_cats_stay_normalized(ch in arb_channel(), t in 0.0f64..10.0,
                                        b in 0.0f64..3.0, xi in 0.0f64..PI, r in 0.0f64..1.5, th in 0.0f64..PI) {
            let spec = CatSpec::new(b.max(0.3), xi, r, 0.0, th).unwrap();
            let state = evolve_cat(&spec, &ch, t).unwrap();
            let norm = state.mixture.normalization();
            prop_assert!((norm.re - 1.0).abs() < 1e-9 && norm.im.abs() < 1e-9);
        }
    }
}
