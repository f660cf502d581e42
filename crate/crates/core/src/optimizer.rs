//! Decoherence-minimising cat orientation and squeezing.
//!
//! All searches are deterministic: a uniform scan picks the best cell and a
//! golden-section search refines inside it.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cat_states::CatSpec;
use crate::channel::{bath_squeezing, sigma_at, sigma_infinity, ChannelSpec};
use crate::error::{Error, Result};
use crate::linalg::squeeze_matrix;
use crate::purity::purity_closed_form;

/// Points in the coarse scan of every one-dimensional search.
pub const SCAN_POINTS: usize = 64;
/// Golden-section refinement width.
pub const REFINE_TOL: f64 = 1e-7;
/// Scan spread below which an objective is reported as flat.
pub const FLAT_TOL: f64 = 1e-12;
/// Default upper end of the squeezing search.
pub const DEFAULT_R_MAX: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    GridRefine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    /// The objective does not depend on the parameter; `argmax` is arbitrary.
    DegenerateFlat,
    /// The maximum sits on the edge of the searched interval.
    BoundaryHit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub argmax: f64,
    /// Purity at `argmax`.
    pub value: f64,
    /// Coarse scan as `(parameter, purity)` pairs.
    pub scan: Vec<(f64, f64)>,
    pub t_eval: f64,
    pub method: Method,
    pub status: Status,
}

/// Principal direction of a 2x2 quadratic form, or none if it is isotropic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Orientation {
    Angle(f64),
    Degenerate,
}

/// Distance between two orientations modulo `pi`.
pub fn angle_distance_mod_pi(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Maximise `f` on `[lo, hi]` by golden-section search.
pub fn golden_section_max<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    while hi - lo > tol {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a)?;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b)?;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, f(x)?))
}

fn best_index(scan: &[(f64, f64)]) -> usize {
    scan.iter()
        .enumerate()
        .fold(0, |best, (i, &(_, v))| if v > scan[best].1 { i } else { best })
}

fn spread(scan: &[(f64, f64)]) -> f64 {
    let (lo, hi) = scan
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, v)| (lo.min(v), hi.max(v)));
    hi - lo
}

/// Closed-form optimal orientation `xi` for the two analytically solved
/// configurations: a squeezed cat in a thermal bath (`phi0 + pi/2`) and an
/// unsqueezed cat in a squeezed bath (`phi_inf`). Returned in `[0, pi)`.
pub fn optimal_xi_analytic(r0: f64, phi0: f64, ch: &ChannelSpec) -> Result<f64> {
    ch.validate()?;
    match (r0 > 0.0, ch.is_thermal()) {
        (true, true) => Ok((phi0 + FRAC_PI_2).rem_euclid(PI)),
        (false, false) => Ok(bath_squeezing(ch)?.phi_inf.rem_euclid(PI)),
        (false, true) => Err(Error::UnsupportedAnalytic(
            "unsqueezed cat in a thermal bath has no privileged direction".into(),
        )),
        (true, false) => Err(Error::UnsupportedAnalytic(
            "both the cat and the bath are squeezed; use optimal_xi_numeric".into(),
        )),
    }
}

/// Maximise the purity at `t_eval` over `xi` in `[0, pi)` at fixed `|beta0|`.
///
/// The `xi` field of `template` is ignored.
pub fn optimal_xi_numeric(template: &CatSpec, ch: &ChannelSpec, t_eval: f64) -> Result<OptimizationResult> {
    if template.beta_abs <= 0.0 {
        return Err(Error::Domain("orientation is undefined for |beta0| = 0".into()));
    }
    if !(t_eval > 0.0 && t_eval.is_finite()) {
        return Err(Error::Domain(format!("evaluation time {t_eval} must be > 0")));
    }
    let objective = |xi: f64| purity_closed_form(&template.with_xi(xi), ch, t_eval);
    let step = PI / SCAN_POINTS as f64;
    let scan = (0..SCAN_POINTS)
        .map(|i| {
            let xi = i as f64 * step;
            objective(xi).map(|v| (xi, v))
        })
        .collect::<Result<Vec<_>>>()?;

    if spread(&scan) < FLAT_TOL {
        let (argmax, value) = scan[0];
        return Ok(OptimizationResult {
            argmax,
            value,
            scan,
            t_eval,
            method: Method::GridRefine,
            status: Status::DegenerateFlat,
        });
    }
    // the objective is pi-periodic, so the bracket may cross the ends
    let centre = scan[best_index(&scan)].0;
    let (xi, _) = golden_section_max(objective, centre - step, centre + step, REFINE_TOL)?;
    let argmax = xi.rem_euclid(PI);
    Ok(OptimizationResult {
        argmax,
        value: objective(argmax)?,
        scan,
        t_eval,
        method: Method::GridRefine,
        status: Status::Converged,
    })
}

/// Optimal orientation, analytic when a closed rule applies and numeric
/// otherwise.
pub fn optimal_xi(template: &CatSpec, ch: &ChannelSpec, t_eval: f64) -> Result<OptimizationResult> {
    match optimal_xi_analytic(template.r0, template.phi0, ch) {
        Ok(xi) => Ok(OptimizationResult {
            argmax: xi,
            value: purity_closed_form(&template.with_xi(xi), ch, t_eval)?,
            scan: Vec::new(),
            t_eval,
            method: Method::Analytic,
            status: Status::Converged,
        }),
        Err(Error::UnsupportedAnalytic(_)) => optimal_xi_numeric(template, ch, t_eval),
        Err(e) => Err(e),
    }
}

/// Optimal `xi` for a `theta = pi/2` cat: the principal axis of
/// `Q^-1 sigma_inf Q^-1` (equivalently the direction of the smallest
/// eigenvalue of `S(t)`), which does not change in time.
///
/// Time independence is checked by recomputing the axis from
/// `S(t)^-1 = Q^-1 sigma(t) Q^-1` at two distinct times.
pub fn optimal_xi_yurke_stoler(spec: &CatSpec, ch: &ChannelSpec, t: f64) -> Result<Orientation> {
    spec.validate()?;
    if spec.theta.cos().abs() > 1e-12 {
        return Err(Error::Contract(format!(
            "the eigenvector rule needs theta = pi/2, got {}",
            spec.theta
        )));
    }
    let q_inv = squeeze_matrix(-spec.r0, spec.phi0);
    let asymptote = sigma_infinity(ch)?.as_sym().congruence(&q_inv);
    if asymptote.anisotropy() < 1e-12 {
        return Ok(Orientation::Degenerate);
    }
    let angle = asymptote.major_axis_angle();

    let t1 = if t > 0.0 { t } else { 0.1 / ch.gamma };
    for time in [t1, t1 + 1.0 / ch.gamma] {
        let s_inv = sigma_at(spec, ch, time)?.as_sym().congruence(&q_inv);
        let at_time = s_inv.major_axis_angle();
        if angle_distance_mod_pi(at_time, angle) > 1e-8 {
            return Err(Error::Numerical(format!(
                "principal axis drifts in time: {angle} vs {at_time} at t = {time}"
            )));
        }
    }
    Ok(Orientation::Angle(angle))
}

/// Orientation used for a trial squeezing `r` (with `phi0 = 0`).
fn xi_for_squeezing(template: &CatSpec, ch: &ChannelSpec, t_eval: f64) -> Result<f64> {
    match optimal_xi_analytic(template.r0, template.phi0, ch) {
        Ok(xi) => Ok(xi),
        // unsqueezed cat, thermal bath: every direction is equivalent
        Err(Error::UnsupportedAnalytic(_)) if ch.is_thermal() => Ok(FRAC_PI_2),
        Err(Error::UnsupportedAnalytic(_)) => Ok(optimal_xi_numeric(template, ch, t_eval)?.argmax),
        Err(e) => Err(e),
    }
}

/// Maximise the purity at `t_eval` over the cat squeezing `r` in
/// `[0, DEFAULT_R_MAX]`, re-orienting the cat optimally for every trial `r`.
pub fn optimal_r(beta_abs: f64, ch: &ChannelSpec, t_eval: f64, theta: f64) -> Result<OptimizationResult> {
    optimal_r_in(beta_abs, ch, t_eval, theta, DEFAULT_R_MAX)
}

pub fn optimal_r_in(
    beta_abs: f64,
    ch: &ChannelSpec,
    t_eval: f64,
    theta: f64,
    r_max: f64,
) -> Result<OptimizationResult> {
    if beta_abs <= 0.0 {
        return Err(Error::Domain("optimal squeezing needs |beta0| > 0".into()));
    }
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::Domain(format!("r_max = {r_max} must be > 0")));
    }
    if !(t_eval > 0.0 && t_eval.is_finite()) {
        return Err(Error::Domain(format!("evaluation time {t_eval} must be > 0")));
    }
    let base = CatSpec::new(beta_abs, 0.0, 0.0, 0.0, theta)?;
    let objective = |r: f64| -> Result<f64> {
        let trial = base.with_r0(r.max(0.0));
        let xi = xi_for_squeezing(&trial, ch, t_eval)?;
        purity_closed_form(&trial.with_xi(xi), ch, t_eval)
    };
    let step = r_max / (SCAN_POINTS - 1) as f64;
    let scan = (0..SCAN_POINTS)
        .map(|i| {
            let r = i as f64 * step;
            objective(r).map(|v| (r, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let best = best_index(&scan);
    let lo = (scan[best].0 - step).max(0.0);
    let hi = (scan[best].0 + step).min(r_max);
    let (argmax, _) = golden_section_max(objective, lo, hi, REFINE_TOL)?;
    let at_edge = argmax < 10.0 * REFINE_TOL || argmax > r_max - 10.0 * REFINE_TOL;
    Ok(OptimizationResult {
        argmax,
        value: objective(argmax)?,
        scan,
        t_eval,
        method: Method::GridRefine,
        status: if at_edge { Status::BoundaryHit } else { Status::Converged },
    })
}
