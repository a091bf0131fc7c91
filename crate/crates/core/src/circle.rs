//! Images of circles under Möbius maps.
//!
//! For `φ(z) = (az + b)/(cz + d)` and the circle `|z − M| = R`, the image is
//! the circle with
//!
//! ```text
//!        (aM + b)·conj(cM + d) − R²·a·conj(c)            R
//!   M' = ------------------------------------ ,  R' = -----------------------
//!             |cM + d|² − R²|c|²                    | |cM + d|² − R²|c|² |
//! ```
//!
//! and it degenerates to a line exactly when `|cM + d| = R|c|`, i.e. when the
//! circle passes through the pole `−d/c`.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::moebius::MoebiusTransform;

/// Below this `| |cM + d|² − R²|c|² |` the image is reported as a line.
pub const LINE_TOL: f64 = 1e-10;

/// Minimum separation of the two points describing a line.
pub const LINE_POINT_SEPARATION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum CircleError {
    #[error("circle radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("circle center must be finite")]
    InvalidCenter,
    #[error("the unit circle maps to a line (||d|^2 - |c|^2| = {0:e})")]
    DegenerateImage(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    center: Complex64,
    radius: f64,
}

impl Circle {
    /// The unit circle, boundary of the closed unit disc.
    pub const UNIT: Self = Self {
        center: Complex64::new(0.0, 0.0),
        radius: 1.0,
    };

    pub fn new(center: Complex64, radius: f64) -> Result<Self, CircleError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(CircleError::InvalidRadius(radius));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(CircleError::InvalidCenter);
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Point at angle `theta` on the circle.
    pub fn point_at(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// `n` equally spaced points starting at angle 0.
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| self.point_at(2.0 * PI * k as f64 / n as f64))
            .collect()
    }

    /// Whether `z` lies in the closed disc bounded by this circle, with slack `tol`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        (z - self.center).norm() <= self.radius + tol
    }
}

/// The image of a circle: a circle, or a line when the circle runs through the pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneralizedCircle {
    Circle(Circle),
    /// Line through two distinct image points.
    Line {
        p: Complex64,
        q: Complex64,
    },
}

impl GeneralizedCircle {
    pub fn as_circle(&self) -> Option<&Circle> {
        match self {
            Self::Circle(c) => Some(c),
            Self::Line { .. } => None,
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self, Self::Line { .. })
    }
}

/// The image of `s` under `t`.
pub fn image_of_circle(t: &MoebiusTransform, s: &Circle) -> GeneralizedCircle {
    let (a, b, c, d) = (t.a(), t.b(), t.c(), t.d());
    let m = s.center;
    let r2 = s.radius * s.radius;
    let cm_d = c * m + d;
    let den = cm_d.norm_sqr() - r2 * c.norm_sqr();
    if den.abs() > LINE_TOL {
        let center = ((a * m + b) * cm_d.conj() - a * c.conj() * r2) / den;
        let radius = s.radius / den.abs();
        return GeneralizedCircle::Circle(Circle { center, radius });
    }

    // Pick two points of `s` well away from the point that maps to infinity.
    let pole_angle = match t.pole() {
        Some(p) if p != m => (p - m).arg(),
        _ => 0.0,
    };
    let offset = 2.0 * PI / 3.0;
    let mut pts =
        [pole_angle + offset, pole_angle - offset].map(|theta| t.apply_finite(s.point_at(theta)));
    if let [Some(p), Some(q)] = pts {
        if (p - q).norm() >= LINE_POINT_SEPARATION {
            return GeneralizedCircle::Line { p, q };
        }
    }
    // Only reachable for a near-line whose pole sits off the circle; spread
    // the sample points further apart.
    pts = [pole_angle + PI / 2.0, pole_angle + PI].map(|theta| t.apply_finite(s.point_at(theta)));
    let [p, q] = pts.map(|z| z.unwrap_or(Complex64::new(0.0, 0.0)));
    GeneralizedCircle::Line { p, q }
}

/// The image of the unit circle, `Circle((b·conj d − a·conj c)/(|d|² − |c|²), 1/||d|² − |c|²|)`.
pub fn image_of_unit_disc(t: &MoebiusTransform) -> Result<Circle, CircleError> {
    let (a, b, c, d) = (t.a(), t.b(), t.c(), t.d());
    let den = d.norm_sqr() - c.norm_sqr();
    if den.abs() <= LINE_TOL {
        return Err(CircleError::DegenerateImage(den.abs()));
    }
    Ok(Circle {
        center: (b * d.conj() - a * c.conj()) / den,
        radius: 1.0 / den.abs(),
    })
}
