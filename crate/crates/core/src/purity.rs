//! Closed-form purity of a decohering cat and derived coherence measures.
//!
//! With `S(t) = Q sigma(t)^-1 Q`, `T(t) = S(t)^-1 / det sigma(t)`,
//! `A(t) = (S_xx - S_pp - 2i S_xp) / 4`, `E = e^{-(x0^2+p0^2)}` and
//! `e = e^{-Gamma t}`, the purity is
//!
//! ```text
//! mu(t) = [ 2(1 + e^{-e X0^T S X0})
//!         + 2E^2 (cos 2theta + e^{e X0^T T X0})
//!         + 4E cos(theta) (e^{-e (x0 + i p0)^2 A} + c.c.) ]
//!         / (8 (1 + E cos theta)^2 sqrt(det sigma(t)))
//! ```
//!
//! Products of exponentials are assembled as sums of exponents so that large
//! cats (`|beta0|^2 ~ 10^4`) neither overflow nor underflow.

use num_complex::Complex64;

use crate::cat_states::CatSpec;
use crate::channel::{asymptotic_purity, sigma_at, ChannelSpec};
use crate::error::{Error, Result};
use crate::linalg::Sym2;
use crate::phase_space::checked_purity;

/// Auxiliary matrices entering the closed-form purity at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityAuxiliaries {
    /// `S(t) = Q sigma(t)^-1 Q`.
    pub s: Sym2,
    /// `T(t) = (det sigma(t))^-1 S(t)^-1`.
    pub tmat: Sym2,
    /// `A(t) = (S_xx - S_pp - 2i S_xp) / 4`.
    pub a: Complex64,
    pub det_sigma: f64,
}

impl PurityAuxiliaries {
    pub fn a_from_s(s: &Sym2) -> Complex64 {
        Complex64::new(s.xx - s.pp, -2.0 * s.xp) / 4.0
    }
}

pub fn purity_auxiliaries(spec: &CatSpec, ch: &ChannelSpec, t: f64) -> Result<PurityAuxiliaries> {
    spec.validate()?;
    let sigma = sigma_at(spec, ch, t)?;
    let det_sigma = sigma.det();
    let s = sigma.inverse().congruence(&spec.squeeze());
    let tmat = s.inverse().scale(det_sigma.recip());
    Ok(PurityAuxiliaries {
        s,
        tmat,
        a: PurityAuxiliaries::a_from_s(&s),
        det_sigma,
    })
}

/// The three summand groups of the purity bracket and its prefactor.
#[derive(Debug, Clone, Copy)]
struct Bracket {
    /// `2(1 + e^{-e X0^T S X0})`: the two coherent peaks.
    diagonal: f64,
    /// `2E^2 (cos 2theta + e^{e X0^T T X0})`: fringe terms with themselves.
    fringe: f64,
    /// `4E cos(theta) (e^{-e z^2 A} + c.c.)`: peaks against fringes.
    cross: f64,
    /// `1 / (8 (1 + E cos theta)^2 sqrt(det sigma))`.
    prefactor: f64,
}

fn bracket(spec: &CatSpec, ch: &ChannelSpec, t: f64) -> Result<Bracket> {
    let aux = purity_auxiliaries(spec, ch, t)?;
    let decay = (-ch.gamma * t).exp();
    let x0 = spec.quadrature_center();
    let r2 = spec.center_norm_sq();
    let z = Complex64::new(x0[0], x0[1]);
    let (cos_t, cos_2t) = (spec.theta.cos(), (2.0 * spec.theta).cos());

    let diagonal = 2.0 * (1.0 + (-decay * aux.s.quad(x0)).exp());
    let fringe = 2.0 * ((-2.0 * r2).exp() * cos_2t + (-2.0 * r2 + decay * aux.tmat.quad(x0)).exp());
    let cross_exp = Complex64::new(-r2, 0.0) - z * z * aux.a * decay;
    let cross = 8.0 * cos_t * cross_exp.exp().re;

    // 8 (1 + E cos theta)^2 = 2 N^2 with N = 2 + 2 E cos theta
    let norm = spec.normalization();
    let prefactor = (2.0 * norm * norm * aux.det_sigma.sqrt()).recip();
    Ok(Bracket {
        diagonal,
        fringe,
        cross,
        prefactor,
    })
}

/// Exact purity of the evolving cat at time `t`.
pub fn purity_closed_form(spec: &CatSpec, ch: &ChannelSpec, t: f64) -> Result<f64> {
    let b = bracket(spec, ch, t)?;
    let mu = (b.diagonal + b.fringe + b.cross) * b.prefactor;
    checked_purity(Complex64::new(mu, 0.0), "purity_closed_form")
}

/// Decoherence time `1 / (2 |beta0|^2 Gamma)`.
pub fn decoherence_time(spec: &CatSpec, ch: &ChannelSpec) -> Result<f64> {
    if spec.beta_abs <= 0.0 {
        return Err(Error::Domain(
            "decoherence time is undefined for |beta0| = 0".into(),
        ));
    }
    Ok((2.0 * spec.beta_abs * spec.beta_abs * ch.gamma).recip())
}

/// Relative interference amplitude of the evolving cat.
///
/// Square root of the ratio between the fringe-bearing summands of the purity
/// bracket (`|fringe| + |cross|`) and the coherent-peak summands. The purity
/// is quadratic in the Wigner function, so the square root brings the ratio
/// back to amplitude level: it starts near 1 and decays like the fringe
/// visibility.
pub fn interference_weight(spec: &CatSpec, ch: &ChannelSpec, t: f64) -> Result<f64> {
    let b = bracket(spec, ch, t)?;
    Ok(((b.fringe.abs() + b.cross.abs()) / b.diagonal).sqrt())
}

/// First time at which [`interference_weight`] drops below `e^-1` of its
/// initial value, or `None` if it never does within `50 / Gamma`.
pub fn coherence_lifetime(spec: &CatSpec, ch: &ChannelSpec) -> Result<Option<f64>> {
    let target = interference_weight(spec, ch, 0.0)? / std::f64::consts::E;
    let above = |t: f64| -> Result<bool> { Ok(interference_weight(spec, ch, t)? >= target) };
    let horizon = 50.0 / ch.gamma;
    let mut lo = 0.0;
    let mut hi = match decoherence_time(spec, ch) {
        Ok(t) => t.min(1.0 / ch.gamma) / 64.0,
        Err(_) => 1.0 / (64.0 * ch.gamma),
    };
    while above(hi)? {
        if hi > horizon {
            return Ok(None);
        }
        lo = hi;
        hi *= 1.1;
    }
    while hi - lo > 1e-14 * hi {
        let mid = 0.5 * (lo + hi);
        if above(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// Sampled purity trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct PurityCurve {
    pub times: Vec<f64>,
    pub purities: Vec<f64>,
    pub spec: CatSpec,
    pub channel: ChannelSpec,
}

impl PurityCurve {
    /// Evaluate the closed form at each time (physical units).
    pub fn sample(spec: &CatSpec, ch: &ChannelSpec, times: &[f64]) -> Result<Self> {
        let purities = times
            .iter()
            .map(|&t| purity_closed_form(spec, ch, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            times: times.to_vec(),
            purities,
            spec: *spec,
            channel: *ch,
        })
    }

    pub fn min(&self) -> f64 {
        self.purities.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Last sampled time at which the purity is below `level` (0 if never).
    pub fn last_time_below(&self, level: f64) -> f64 {
        self.times
            .iter()
            .zip(&self.purities)
            .rev()
            .find(|(_, &mu)| mu < level)
            .map_or(0.0, |(&t, _)| t)
    }
}

/// `samples` points on `[0, t_max]`: zero, a geometric run that resolves the
/// initial purity drop, then a linear run to `t_max`.
pub fn hybrid_time_grid(t_max: f64, samples: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && t_max.is_finite()) || samples < 4 {
        return Err(Error::Domain(format!(
            "time grid needs t_max > 0 and at least 4 samples (got {t_max}, {samples})"
        )));
    }
    let switch = (t_max / 10.0).min(1.0);
    let t_min = switch * 1e-4;
    let n_geo = samples / 2;
    let n_lin = samples - 1 - n_geo;
    let mut grid = Vec::with_capacity(samples);
    grid.push(0.0);
    for i in 0..n_geo {
        let frac = i as f64 / (n_geo - 1) as f64;
        grid.push(t_min * (switch / t_min).powf(frac));
    }
    for i in 1..=n_lin {
        grid.push(switch + (t_max - switch) * i as f64 / n_lin as f64);
    }
    *grid.last_mut().expect("non-empty grid") = t_max;
    Ok(grid)
}

/// `samples` evenly spaced points on `[0, t_max]`.
pub fn linear_time_grid(t_max: f64, samples: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && t_max.is_finite()) || samples < 2 {
        return Err(Error::Domain(format!(
            "time grid needs t_max > 0 and at least 2 samples (got {t_max}, {samples})"
        )));
    }
    let last = (samples - 1) as f64;
    Ok((0..samples).map(|i| t_max * i as f64 / last).collect())
}

/// The two special configurations with diagonal `S(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalCase {
    /// Squeezed cat (`r0 = r`, `phi0 = 0`) in a thermal channel.
    SqueezedCatThermalBath,
    /// Unsqueezed cat in a channel with real `M > 0` (`r_inf = r`).
    CoherentCatSqueezedBath,
}

/// Diagonal `S(t)` and real `A(t)` in the special cases, written with
/// `u = (1 - e^{-Gamma t}) / (2 mu_inf)` and `v = e^{-Gamma t} / 2`.
pub fn special_case_auxiliaries(case: DiagonalCase, r: f64, mu_inf: f64, gamma_t: f64) -> (Sym2, f64) {
    let decay = (-gamma_t).exp();
    let u = (1.0 - decay) / (2.0 * mu_inf);
    let v = decay / 2.0;
    let (ep, em) = ((2.0 * r).exp(), (-2.0 * r).exp());
    let det = (u + ep * v) * (u + em * v);
    match case {
        DiagonalCase::SqueezedCatThermalBath => (
            Sym2::diag(ep / (u + ep * v), em / (u + em * v)),
            u * (2.0 * r).sinh() / (2.0 * det),
        ),
        DiagonalCase::CoherentCatSqueezedBath => (
            Sym2::diag(em / (u + em * v), ep / (u + ep * v)),
            -u * (2.0 * r).sinh() / (2.0 * det),
        ),
    }
}

/// Largest purity difference on `t_grid` (units of `1/Gamma`, `Gamma = 1`)
/// between a squeezed cat (`r0 = r`, `xi = pi/2`) in a thermal bath and an
/// unsqueezed cat (`xi = 0`) in a bath with real `M` squeezed by `r`, both
/// with asymptotic purity `mu_inf` and `theta = 0`.
pub fn equivalence_check(r: f64, mu_inf: f64, beta_abs: f64, t_grid: &[f64]) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("squeezing r = {r} must be >= 0")));
    }
    if !(mu_inf > 0.0 && mu_inf <= 1.0) {
        return Err(Error::Domain(format!(
            "no channel has asymptotic purity {mu_inf}: need 0 < mu_inf <= 1 so that \
             |M|^2 <= N(N+1) with cosh 2r = sqrt(1 + 4 mu_inf^2 |M|^2)"
        )));
    }
    let thermal = ChannelSpec::thermal_with_purity(1.0, mu_inf)?;
    let squeezed = ChannelSpec::squeezed_with_purity(1.0, mu_inf, r)?;
    for ch in [&thermal, &squeezed] {
        let mu = asymptotic_purity(ch)?;
        if (mu - mu_inf).abs() > 1e-12 {
            return Err(Error::Numerical(format!(
                "channel {ch:?} reproduces mu_inf = {mu} instead of {mu_inf}"
            )));
        }
    }
    let squeezed_cat = CatSpec::new(beta_abs, std::f64::consts::FRAC_PI_2, r, 0.0, 0.0)?;
    let plain_cat = CatSpec::new(beta_abs, 0.0, 0.0, 0.0, 0.0)?;
    let mut worst: f64 = 0.0;
    for &t in t_grid {
        let a = purity_closed_form(&squeezed_cat, &thermal, t)?;
        let b = purity_closed_form(&plain_cat, &squeezed, t)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}
