//! Fixed-size 2x2 real matrix helpers.

use std::f64::consts::PI;

/// Real symmetric 2x2 matrix `[[xx, xp], [xp, pp]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub xx: f64,
    pub xp: f64,
    pub pp: f64,
}

/// General real 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Sym2 {
    pub const fn new(xx: f64, xp: f64, pp: f64) -> Self {
        Self { xx, xp, pp }
    }

    pub const fn diag(xx: f64, pp: f64) -> Self {
        Self { xx, xp: 0.0, pp }
    }

    pub fn det(&self) -> f64 {
        self.xx * self.pp - self.xp * self.xp
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.pp
    }

    /// Inverse; the caller guarantees a non-zero determinant.
    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self::new(self.pp / det, -self.xp / det, self.xx / det)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.xx * k, self.xp * k, self.pp * k)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.xx + other.xx, self.xp + other.xp, self.pp + other.pp)
    }

    /// `v^T A v` for a real vector.
    pub fn quad(&self, v: [f64; 2]) -> f64 {
        self.xx * v[0] * v[0] + 2.0 * self.xp * v[0] * v[1] + self.pp * v[1] * v[1]
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.xx * v[0] + self.xp * v[1], self.xp * v[0] + self.pp * v[1]]
    }

    /// `B A B` for symmetric `B`; the result is symmetric.
    pub fn congruence(&self, b: &Sym2) -> Sym2 {
        let m = b.as_mat().mul(&self.as_mat()).mul(&b.as_mat());
        Sym2::new(m.a, 0.5 * (m.b + m.c), m.d)
    }

    pub fn as_mat(&self) -> Mat2 {
        Mat2::new(self.xx, self.xp, self.xp, self.pp)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * self.trace();
        let half_gap = (0.25 * (self.xx - self.pp).powi(2) + self.xp * self.xp).sqrt();
        (mean - half_gap, mean + half_gap)
    }

    /// Orientation in `[0, pi)` of the eigenvector belonging to the largest
    /// eigenvalue (principal axis of the ellipse `v^T A^-1 v = 1`).
    pub fn major_axis_angle(&self) -> f64 {
        let angle = 0.5 * (2.0 * self.xp).atan2(self.xx - self.pp);
        angle.rem_euclid(PI)
    }

    /// Relative eigenvalue gap `(l_max - l_min) / (l_max + l_min)`.
    pub fn anisotropy(&self) -> f64 {
        let (lo, hi) = self.eigenvalues();
        (hi - lo) / (hi.abs() + lo.abs())
    }
}

impl Mat2 {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }
}

/// Symmetric squeezing matrix `Rot(phi) diag(e^r, e^-r) Rot(phi)^T`.
///
/// Stretches the direction `phi` by `e^r` and compresses the orthogonal one,
/// so the suppressed variance lies along `phi + pi/2`. Unit determinant.
pub fn squeeze_matrix(r: f64, phi: f64) -> Sym2 {
    let rot = Mat2::rotation(phi);
    let m = rot
        .mul(&Mat2::new(r.exp(), 0.0, 0.0, (-r).exp()))
        .mul(&rot.transpose());
    Sym2::new(m.a, 0.5 * (m.b + m.c), m.d)
}

/// Wrap an angle into `(-pi/2, pi/2]`.
pub fn wrap_half_open_pi(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(PI);
    if a > 0.5 * PI {
        a -= PI;
    }
    a
}
