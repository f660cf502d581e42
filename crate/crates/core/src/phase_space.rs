//! Weighted, complex-centred 2-D Gaussians and their exact integrals.
//!
//! A term is `w * exp(-1/2 (X - c)^T sigma^-1 (X - c))` with complex weight `w`
//! and complex centre `c`. Weights are stored as complex logarithms
//! (`ln|w| + i arg w`) because the interference terms of large cats carry
//! factors like `exp(-(x0^2 + p0^2))` that underflow on their own but cancel
//! against equally large positive exponents inside overlaps.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Sym2;

/// Determinant floor below which a covariance is treated as degenerate.
pub const MIN_COV_DET: f64 = 1e-12;
/// Tolerance for discarding the imaginary residue of real-valued quantities.
pub const REALNESS_TOL: f64 = 1e-9;
/// Default half-width of the oracle grid in units of the marginal std-dev.
pub const DEFAULT_EXTENT_SIGMAS: f64 = 6.0;
/// Smallest accepted oracle resolution (points per axis).
pub const MIN_ORACLE_RESOLUTION: usize = 64;
/// Largest tolerated aliasing error of the oracle, on the purity scale.
pub const ORACLE_ALIAS_TOL: f64 = 1e-9;
/// Largest tolerated mass on the outermost ring of the oracle grid.
pub const ORACLE_TRUNCATION_TOL: f64 = 1e-10;

/// Real symmetric positive-definite quadrature covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMatrix(Sym2);

impl CovMatrix {
    pub fn new(sxx: f64, sxp: f64, spp: f64) -> Result<Self> {
        Self::from_sym(Sym2::new(sxx, sxp, spp))
    }

    pub fn from_sym(m: Sym2) -> Result<Self> {
        if !(m.xx.is_finite() && m.xp.is_finite() && m.pp.is_finite()) {
            return Err(Error::Domain(format!("non-finite covariance {m:?}")));
        }
        if m.xx <= 0.0 || m.pp <= 0.0 || m.det() < MIN_COV_DET {
            return Err(Error::Domain(format!(
                "covariance not positive definite (det = {:e}): {m:?}",
                m.det()
            )));
        }
        Ok(Self(m))
    }

    /// Vacuum covariance `diag(1/2, 1/2)`.
    pub fn vacuum() -> Self {
        Self(Sym2::diag(0.5, 0.5))
    }

    pub fn sxx(&self) -> f64 {
        self.0.xx
    }

    pub fn sxp(&self) -> f64 {
        self.0.xp
    }

    pub fn spp(&self) -> f64 {
        self.0.pp
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    pub fn inverse(&self) -> Sym2 {
        self.0.inverse()
    }

    pub fn as_sym(&self) -> &Sym2 {
        &self.0
    }

    fn approx_eq(&self, other: &CovMatrix) -> bool {
        let scale = self.0.trace().max(other.0.trace());
        let tol = 1e-12 * scale;
        (self.0.xx - other.0.xx).abs() <= tol
            && (self.0.xp - other.0.xp).abs() <= tol
            && (self.0.pp - other.0.pp).abs() <= tol
    }
}

/// Phase-space centre with complex coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexCenter {
    pub cx: Complex64,
    pub cp: Complex64,
}

impl ComplexCenter {
    pub fn new(cx: Complex64, cp: Complex64) -> Self {
        Self { cx, cp }
    }

    pub fn real(x: f64, p: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), Complex64::new(p, 0.0))
    }

    /// `i * (x, p)`.
    pub fn imaginary(x: f64, p: f64) -> Self {
        Self::new(Complex64::new(0.0, x), Complex64::new(0.0, p))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.cx.conj(), self.cp.conj())
    }

    pub fn re(&self) -> [f64; 2] {
        [self.cx.re, self.cp.re]
    }

    pub fn im(&self) -> [f64; 2] {
        [self.cx.im, self.cp.im]
    }

    fn is_finite(&self) -> bool {
        self.cx.is_finite() && self.cp.is_finite()
    }
}

/// Complex quadratic form `d^T A d` without conjugation.
fn complex_quad(a: &Sym2, dx: Complex64, dp: Complex64) -> Complex64 {
    dx * dx * a.xx + dx * dp * (2.0 * a.xp) + dp * dp * a.pp
}

/// One weighted Gaussian of a Wigner mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTerm {
    log_weight: Complex64,
    center: ComplexCenter,
    cov: CovMatrix,
}

impl GaussianTerm {
    pub fn new(weight: Complex64, center: ComplexCenter, cov: CovMatrix) -> Result<Self> {
        if !weight.is_finite() {
            return Err(Error::Domain(format!("non-finite weight {weight}")));
        }
        Self::from_log_weight(weight.ln(), center, cov)
    }

    /// Build from `ln|w| + i arg w`. `ln|w| = -inf` encodes a zero weight.
    pub fn from_log_weight(
        log_weight: Complex64,
        center: ComplexCenter,
        cov: CovMatrix,
    ) -> Result<Self> {
        if log_weight.re.is_nan() || log_weight.re == f64::INFINITY || !log_weight.im.is_finite()
        {
            return Err(Error::Domain(format!("invalid log-weight {log_weight}")));
        }
        if !center.is_finite() {
            return Err(Error::Domain(format!("non-finite centre {center:?}")));
        }
        Ok(Self {
            log_weight,
            center,
            cov,
        })
    }

    pub fn weight(&self) -> Complex64 {
        self.log_weight.exp()
    }

    pub fn log_weight(&self) -> Complex64 {
        self.log_weight
    }

    pub fn center(&self) -> &ComplexCenter {
        &self.center
    }

    pub fn cov(&self) -> &CovMatrix {
        &self.cov
    }

    /// The complex-conjugate term.
    pub fn conj(&self) -> Self {
        Self {
            log_weight: self.log_weight.conj(),
            center: self.center.conj(),
            cov: self.cov,
        }
    }
}

/// Ordered sum of Gaussian terms representing a Wigner function.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerMixture {
    terms: Vec<GaussianTerm>,
}

impl WignerMixture {
    pub fn new(terms: Vec<GaussianTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("empty Wigner mixture".into()));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[GaussianTerm] {
        &self.terms
    }

    /// The covariance shared by every term, if there is one.
    pub fn shared_cov(&self) -> Option<&CovMatrix> {
        let first = self.terms[0].cov();
        self.terms
            .iter()
            .all(|t| t.cov().approx_eq(first))
            .then_some(first)
    }

    /// Total phase-space integral (should be 1).
    pub fn normalization(&self) -> Complex64 {
        self.terms.iter().map(gaussian_integral).sum()
    }
}

/// Exact integral of a single term over the plane: `w * 2 pi sqrt(det sigma)`.
///
/// Independent of the centre: shifting the contour by an imaginary amount does
/// not change a Gaussian integral.
pub fn gaussian_integral(term: &GaussianTerm) -> Complex64 {
    (term.log_weight + (2.0 * PI * term.cov.det().sqrt()).ln()).exp()
}

/// Integral of the product of two terms sharing one covariance:
/// `w1 w2 pi sqrt(det sigma) exp(-1/4 dX^T sigma^-1 dX)` with `dX = c1 - c2`.
pub fn gaussian_overlap(t1: &GaussianTerm, t2: &GaussianTerm) -> Result<Complex64> {
    if !t1.cov.approx_eq(&t2.cov) {
        return Err(Error::Contract(format!(
            "gaussian_overlap requires a shared covariance, got {:?} and {:?}",
            t1.cov, t2.cov
        )));
    }
    let prec = t1.cov.inverse();
    Ok(overlap_log(t1, t2, &prec, (PI * t1.cov.det().sqrt()).ln()).exp())
}

fn overlap_log(t1: &GaussianTerm, t2: &GaussianTerm, prec: &Sym2, ln_norm: f64) -> Complex64 {
    let dx = t1.center.cx - t2.center.cx;
    let dp = t1.center.cp - t2.center.cp;
    t1.log_weight + t2.log_weight + ln_norm - 0.25 * complex_quad(prec, dx, dp)
}

/// A mixture with precision matrices precomputed for repeated evaluation.
struct Prepared<'a> {
    terms: &'a [GaussianTerm],
    precisions: Vec<Sym2>,
}

impl<'a> Prepared<'a> {
    fn new(mix: &'a WignerMixture) -> Self {
        Self {
            terms: mix.terms(),
            precisions: mix.terms().iter().map(|t| t.cov.inverse()).collect(),
        }
    }

    fn value(&self, x: f64, p: f64) -> Complex64 {
        self.terms
            .iter()
            .zip(&self.precisions)
            .map(|(t, prec)| {
                let dx = x - t.center.cx;
                let dp = p - t.center.cp;
                (t.log_weight - 0.5 * complex_quad(prec, dx, dp)).exp()
            })
            .sum()
    }

    fn real_value(&self, x: f64, p: f64) -> Result<f64> {
        let w = self.value(x, p);
        if w.im.abs() > REALNESS_TOL * (1.0 + w.re.abs()) {
            return Err(Error::Numerical(format!(
                "Wigner function not real at ({x}, {p}): {w}"
            )));
        }
        Ok(w.re)
    }
}

/// Pointwise Wigner function value.
pub fn evaluate(mix: &WignerMixture, x: f64, p: f64) -> Result<f64> {
    Prepared::new(mix).real_value(x, p)
}

pub(crate) fn checked_purity(value: Complex64, what: &str) -> Result<f64> {
    if value.im.abs() > REALNESS_TOL * (1.0 + value.re.abs()) {
        return Err(Error::Numerical(format!(
            "{what}: purity has imaginary residue {}",
            value.im
        )));
    }
    let mu = value.re;
    if !(mu > 0.0 && mu <= 1.0 + REALNESS_TOL) {
        return Err(Error::Numerical(format!("{what}: purity {mu} outside (0, 1]")));
    }
    Ok(mu.min(1.0))
}

/// Exact purity `2 pi * integral of W^2` as the double sum of pairwise overlaps.
///
/// The factor `2 pi` is the Hilbert-Schmidt norm for Wigner functions
/// normalised to unit integral in `dx dp`.
pub fn purity_from_mixture(mix: &WignerMixture) -> Result<f64> {
    let cov = mix.shared_cov().ok_or_else(|| {
        Error::Contract("purity_from_mixture requires all terms to share one covariance".into())
    })?;
    let prec = cov.inverse();
    let ln_norm = (PI * cov.det().sqrt()).ln();
    let terms = mix.terms();
    let mut total = Complex64::new(0.0, 0.0);
    for t1 in terms {
        for t2 in terms {
            total += overlap_log(t1, t2, &prec, ln_norm).exp();
        }
    }
    checked_purity(total * (2.0 * PI), "purity_from_mixture")
}

/// Axis-aligned midpoint grid used by the quadrature oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleGrid {
    pub half_width_x: f64,
    pub half_width_p: f64,
    pub resolution: usize,
}

impl OracleGrid {
    /// Size the grid to cover every term's envelope: the half-width along each
    /// axis is the largest real centre coordinate plus `extent_sigmas` marginal
    /// standard deviations.
    pub fn for_mixture(mix: &WignerMixture, resolution: usize, extent_sigmas: f64) -> Self {
        let mut hx: f64 = 0.0;
        let mut hp: f64 = 0.0;
        for t in mix.terms() {
            let re = t.center().re();
            hx = hx.max(re[0].abs() + extent_sigmas * t.cov().sxx().sqrt());
            hp = hp.max(re[1].abs() + extent_sigmas * t.cov().spp().sqrt());
        }
        Self {
            half_width_x: hx,
            half_width_p: hp,
            resolution,
        }
    }

    pub fn spacing(&self) -> (f64, f64) {
        let n = self.resolution as f64;
        (2.0 * self.half_width_x / n, 2.0 * self.half_width_p / n)
    }

    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        let (dx, dp) = self.spacing();
        (
            -self.half_width_x + (i as f64 + 0.5) * dx,
            -self.half_width_p + (j as f64 + 0.5) * dp,
        )
    }
}

/// Upper bound on the aliasing error of the uniform-grid rule for `2 pi W^2`.
///
/// Each pair product `g_j g_k` is a Gaussian with covariance `sigma / 2`
/// centred at the complex midpoint `m`; its Fourier transform at `omega` has
/// modulus `|w_j w_k e^{-dX^T P dX / 4}| pi sqrt(det sigma)
/// exp(omega . Im m - omega^T sigma omega / 4)`. By Poisson summation the
/// grid sum differs from the integral by the sum of these transforms over
/// the non-zero reciprocal lattice vectors.
fn alias_bound(mix: &WignerMixture, cov: &CovMatrix, grid: &OracleGrid) -> Result<f64> {
    let prec = cov.inverse();
    let sigma = cov.as_sym();
    let ln_norm = (PI * cov.det().sqrt()).ln();
    let (hx, hp) = grid.spacing();
    let (kx, kp) = (2.0 * PI / hx, 2.0 * PI / hp);
    let terms = mix.terms();

    let mut pairs = Vec::with_capacity(terms.len() * terms.len());
    let mut reach: f64 = 0.0;
    for t1 in terms {
        for t2 in terms {
            let ln_amp = overlap_log(t1, t2, &prec, ln_norm).re;
            let b = [
                0.5 * (t1.center.cx.im + t2.center.cx.im),
                0.5 * (t1.center.cp.im + t2.center.cp.im),
            ];
            // the transform modulus peaks at omega = 2 sigma^-1 b
            let peak = prec.apply(b);
            reach = reach.max((2.0 * peak[0] / kx).abs()).max((2.0 * peak[1] / kp).abs());
            pairs.push((ln_amp, b));
        }
    }
    let span = reach.ceil() as i64 + 4;
    const MAX_SPAN: i64 = 256;
    if span > MAX_SPAN {
        return Err(Error::GridTooCoarse(format!(
            "interference fringes span {span} reciprocal cells (> {MAX_SPAN})"
        )));
    }
    let mut bound = 0.0;
    for m in -span..=span {
        for n in -span..=span {
            if m == 0 && n == 0 {
                continue;
            }
            let omega = [m as f64 * kx, n as f64 * kp];
            let damping = -0.25 * sigma.quad(omega);
            for (ln_amp, b) in &pairs {
                bound += (ln_amp + omega[0] * b[0] + omega[1] * b[1] + damping).exp();
            }
        }
    }
    Ok(2.0 * PI * bound)
}

/// Brute-force purity `2 pi * sum W(x_i, p_j)^2 dx dp` on a midpoint grid.
///
/// Independent of the overlap algebra: it only evaluates the mixture
/// pointwise. Before summing, the grid is checked against the Poisson
/// aliasing bound and, afterwards, against the mass on its outer ring; either
/// exceeding its tolerance is reported as [`Error::GridTooCoarse`].
pub fn purity_grid_oracle(
    mix: &WignerMixture,
    resolution: usize,
    extent_sigmas: f64,
) -> Result<f64> {
    if resolution < MIN_ORACLE_RESOLUTION {
        return Err(Error::Contract(format!(
            "oracle resolution {resolution} below minimum {MIN_ORACLE_RESOLUTION}"
        )));
    }
    if !(extent_sigmas > 0.0 && extent_sigmas.is_finite()) {
        return Err(Error::Contract(format!("invalid extent_sigmas {extent_sigmas}")));
    }
    let cov = mix.shared_cov().ok_or_else(|| {
        Error::Contract("purity_grid_oracle requires a shared covariance".into())
    })?;
    let grid = OracleGrid::for_mixture(mix, resolution, extent_sigmas);
    let aliasing = alias_bound(mix, cov, &grid)?;
    if aliasing > ORACLE_ALIAS_TOL {
        return Err(Error::GridTooCoarse(format!(
            "aliasing bound {aliasing:e} exceeds {ORACLE_ALIAS_TOL:e} at resolution {resolution}; \
             spacing {:?}",
            grid.spacing()
        )));
    }

    let prepared = Prepared::new(mix);
    let rows: Vec<(f64, f64)> = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let mut sum = 0.0;
            let mut ring = 0.0;
            for j in 0..resolution {
                let (x, p) = grid.node(i, j);
                let w = prepared.real_value(x, p)?;
                let w2 = w * w;
                sum += w2;
                if i == 0 || j == 0 || i + 1 == resolution || j + 1 == resolution {
                    ring += w2;
                }
            }
            Ok((sum, ring))
        })
        .collect::<Result<_>>()?;
    // rows are reduced sequentially so the result does not depend on scheduling
    let (dx, dp) = grid.spacing();
    let cell = 2.0 * PI * dx * dp;
    let (sum, ring) = rows
        .iter()
        .fold((0.0, 0.0), |(s, r), (rs, rr)| (s + rs, r + rr));
    if ring * cell > ORACLE_TRUNCATION_TOL {
        return Err(Error::GridTooCoarse(format!(
            "outer ring carries {:e} of the purity; increase extent_sigmas",
            ring * cell
        )));
    }
    checked_purity(Complex64::new(sum * cell, 0.0), "purity_grid_oracle")
}

/// Gaussian term with the given weight normalised against `cov`:
/// `weight / (2 pi sqrt(det sigma))`, i.e. one with integral `weight`.
pub fn normalized_term(weight: f64, center: ComplexCenter, cov: CovMatrix) -> Result<GaussianTerm> {
    GaussianTerm::new(
        Complex64::new(weight / (2.0 * PI * cov.det().sqrt()), 0.0),
        center,
        cov,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit(center: ComplexCenter) -> GaussianTerm {
        GaussianTerm::new(c(1.0, 0.0), center, CovMatrix::vacuum()).unwrap()
    }

    /// Midpoint-rule integral of `f` over `[-l, l]^2`; test-only oracle.
    fn quad2(f: impl Fn(f64, f64) -> Complex64, l: f64, n: usize) -> Complex64 {
        let h = 2.0 * l / n as f64;
        let mut s = c(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                s += f(-l + (i as f64 + 0.5) * h, -l + (j as f64 + 0.5) * h);
            }
        }
        s * h * h
    }

    fn raw(t: &GaussianTerm, x: f64, p: f64) -> Complex64 {
        let prec = t.cov.inverse();
        let dx = x - t.center.cx;
        let dp = p - t.center.cp;
        (-0.5 * (dx * dx * prec.xx + dx * dp * 2.0 * prec.xp + dp * dp * prec.pp)).exp()
    }

    #[test]
    fn cov_rejects_non_pd() {
        assert!(CovMatrix::new(1.0, 1.0, 1.0).is_err());
        assert!(CovMatrix::new(-1.0, 0.0, 1.0).is_err());
        assert!(CovMatrix::new(1e-7, 0.0, 1e-7).is_err());
        assert!(CovMatrix::new(f64::NAN, 0.0, 1.0).is_err());
        assert!(CovMatrix::new(2.0, 0.5, 1.0).is_ok());
    }

    #[test]
    fn integral_examples() {
        let v = gaussian_integral(&unit(ComplexCenter::real(0.0, 0.0)));
        assert!((v - c(PI, 0.0)).norm() < 1e-14);
        let v = gaussian_integral(&unit(ComplexCenter::imaginary(3.0, 0.0)));
        assert!((v - c(PI, 0.0)).norm() < 1e-14);
        let t = GaussianTerm::new(
            c(0.5, 0.0),
            ComplexCenter::real(2.0, -1.0),
            CovMatrix::new(2.0, 0.0, 0.125).unwrap(),
        )
        .unwrap();
        assert!((gaussian_integral(&t) - c(PI / 2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn integral_matches_quadrature_for_complex_center() {
        let t = GaussianTerm::new(
            c(0.3, -0.2),
            ComplexCenter::new(c(0.4, 0.7), c(-0.2, 0.3)),
            CovMatrix::new(0.8, 0.2, 0.6).unwrap(),
        )
        .unwrap();
        let w = t.weight();
        let q = quad2(|x, p| w * raw(&t, x, p), 9.0, 600);
        assert!((q - gaussian_integral(&t)).norm() < 1e-10, "{q}");
    }

    #[test]
    fn overlap_examples() {
        let o = gaussian_overlap(
            &unit(ComplexCenter::real(0.0, 0.0)),
            &unit(ComplexCenter::real(0.0, 0.0)),
        )
        .unwrap();
        assert!((o - c(PI / 2.0, 0.0)).norm() < 1e-14);

        let (t1, t2) = (unit(ComplexCenter::real(0.0, 0.0)), unit(ComplexCenter::real(2.0, 0.0)));
        let o = gaussian_overlap(&t1, &t2).unwrap();
        let expected = PI / 2.0 * (-2.0f64).exp();
        assert!((o - c(expected, 0.0)).norm() < 1e-14);
        let q = quad2(|x, p| raw(&t1, x, p) * raw(&t2, x, p), 8.0, 400);
        assert!((q - c(expected, 0.0)).norm() < 1e-10, "{q}");

        let a = 1.0;
        let (t1, t2) = (unit(ComplexCenter::imaginary(a, 0.0)), unit(ComplexCenter::imaginary(-a, 0.0)));
        let o = gaussian_overlap(&t1, &t2).unwrap();
        let expected = PI / 2.0 * (2.0 * a * a).exp();
        assert!((o - c(expected, 0.0)).norm() < 1e-12);
        let q = quad2(|x, p| raw(&t1, x, p) * raw(&t2, x, p), 8.0, 400);
        assert!((q - c(expected, 0.0)).norm() < 1e-9, "{q}");
    }

    #[test]
    fn overlap_rejects_mismatched_cov() {
        let t1 = unit(ComplexCenter::real(0.0, 0.0));
        let t2 = GaussianTerm::new(
            c(1.0, 0.0),
            ComplexCenter::real(0.0, 0.0),
            CovMatrix::new(1.0, 0.0, 1.0).unwrap(),
        )
        .unwrap();
        assert!(matches!(gaussian_overlap(&t1, &t2), Err(Error::Contract(_))));
    }

    #[test]
    fn vacuum_value_and_purity() {
        let mix = WignerMixture::new(vec![normalized_term(
            1.0,
            ComplexCenter::real(0.0, 0.0),
            CovMatrix::vacuum(),
        )
        .unwrap()])
        .unwrap();
        assert!((evaluate(&mix, 0.0, 0.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((purity_from_mixture(&mix).unwrap() - 1.0).abs() < 1e-14);
        let oracle = purity_grid_oracle(&mix, 256, DEFAULT_EXTENT_SIGMAS).unwrap();
        assert!((oracle - 1.0).abs() < 1e-6, "{oracle}");
    }

    #[test]
    fn thermal_gaussian_purity() {
        let cov = CovMatrix::new(5.0, 2.0, 1.0).unwrap();
        let mix = WignerMixture::new(vec![normalized_term(1.0, ComplexCenter::real(0.3, -1.0), cov).unwrap()])
            .unwrap();
        let expected = 1.0 / (2.0 * cov.det().sqrt());
        assert!((purity_from_mixture(&mix).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn evaluate_rejects_non_real_mixture() {
        let t = GaussianTerm::new(c(0.0, 1.0), ComplexCenter::real(0.0, 0.0), CovMatrix::vacuum()).unwrap();
        let mix = WignerMixture::new(vec![t]).unwrap();
        assert!(matches!(evaluate(&mix, 0.0, 0.0), Err(Error::Numerical(_))));
    }

    #[test]
    fn oracle_refuses_coarse_grid_and_low_resolution() {
        let cov = CovMatrix::vacuum();
        let w = 1.0 / (2.0 * PI * 0.5);
        let a = 30.0;
        let t = GaussianTerm::from_log_weight(
            c(w.ln() - a * a, 0.0),
            ComplexCenter::imaginary(0.0, a),
            cov,
        )
        .unwrap();
        let mix = WignerMixture::new(vec![
            normalized_term(0.5, ComplexCenter::real(a, 0.0), cov).unwrap(),
            normalized_term(0.5, ComplexCenter::real(-a, 0.0), cov).unwrap(),
            t,
            t.conj(),
        ])
        .unwrap();
        assert!(matches!(
            purity_grid_oracle(&mix, 64, DEFAULT_EXTENT_SIGMAS),
            Err(Error::GridTooCoarse(_))
        ));
        assert!(matches!(
            purity_grid_oracle(&mix, 32, DEFAULT_EXTENT_SIGMAS),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn oracle_refuses_truncated_extent() {
        let mix = WignerMixture::new(vec![normalized_term(
            1.0,
            ComplexCenter::real(0.0, 0.0),
            CovMatrix::vacuum(),
        )
        .unwrap()])
        .unwrap();
        assert!(matches!(
            purity_grid_oracle(&mix, 128, 1.5),
            Err(Error::GridTooCoarse(_))
        ));
    }

    fn arb_cov() -> impl Strategy<Value = CovMatrix> {
        (0.1f64..3.0, 0.1f64..3.0, -0.9f64..0.9)
            .prop_map(|(a, b, r)| CovMatrix::new(a, r * (a * b).sqrt(), b).unwrap())
    }

    fn arb_center() -> impl Strategy<Value = ComplexCenter> {
        (-3.0f64..3.0, -3.0f64..3.0, -2.0f64..2.0, -2.0f64..2.0)
            .prop_map(|(a, b, cc, d)| ComplexCenter::new(c(a, cc), c(b, d)))
    }

    proptest! {
        #[test]
        fn overlap_is_symmetric(cov in arb_cov(), c1 in arb_center(), c2 in arb_center(),
                                w1 in -2.0f64..2.0, w2 in -2.0f64..2.0) {
            let t1 = GaussianTerm::new(c(w1, 0.5), c1, cov).unwrap();
            let t2 = GaussianTerm::new(c(w2, -0.3), c2, cov).unwrap();
            let a = gaussian_overlap(&t1, &t2).unwrap();
            let b = gaussian_overlap(&t2, &t1).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }

        #[test]
        fn self_overlap_is_pi_sqrt_det(cov in arb_cov(), c1 in arb_center()) {
            let t = GaussianTerm::new(c(1.0, 0.0), c1, cov).unwrap();
            let o = gaussian_overlap(&t, &t).unwrap();
            prop_assert!((o - c(PI * cov.det().sqrt(), 0.0)).norm() < 1e-13);
        }
    }
}
