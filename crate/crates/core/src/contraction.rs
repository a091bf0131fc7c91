//! When does a normalized Möbius map send the closed unit disc into itself,
//! and when does it do so contractively?
//!
//! With `ad − bc = 1`:
//!
//! * into the disc  ⇔  `|c| < |d|`      and `|a·conj c − b·conj d| + 1 ≤ |d|² − |c|²`
//! * contractively  ⇔  `|d| − |c| > 1`  and `|a·conj c − b·conj d| + 1 ≤ |d|² − |c|²`
//!
//! On the disc `|cz + d| ≥ |d| − |c|`, with equality at `z = −|c|d/(c|d|)`,
//! so `1/(|d| − |c|)²` is the exact maximum of `|φ′|` and a Lipschitz constant.
//!
//! Comparisons are raw floating-point with no slack.

use num_complex::Complex64;
use thiserror::Error;

use crate::circle::{image_of_unit_disc, Circle};
use crate::moebius::MoebiusTransform;

/// Which of the two contractivity inequalities fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    /// `|d| − |c| > 1`
    ConditionI,
    /// `|a·conj c − b·conj d| + 1 ≤ |d|² − |c|²`
    ConditionII,
}

impl FailedCondition {
    pub fn inequality(self) -> &'static str {
        match self {
            Self::ConditionI => "|d| - |c| > 1",
            Self::ConditionII => "|a*conj(c) - b*conj(d)| + 1 <= |d|^2 - |c|^2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("map is not a contraction of the unit disc: condition {} ({}) fails", match .0 { FailedCondition::ConditionI => "i", FailedCondition::ConditionII => "ii" }, .0.inequality())]
pub struct NotContractive(pub FailedCondition);

/// Left and right side of condition ii: `(|a·conj c − b·conj d| + 1, |d|² − |c|²)`.
fn condition_ii_sides(t: &MoebiusTransform) -> (f64, f64) {
    let (a, b, c, d) = (t.a(), t.b(), t.c(), t.d());
    let lhs = (a * c.conj() - b * d.conj()).norm() + 1.0;
    let rhs = d.norm_sqr() - c.norm_sqr();
    (lhs, rhs)
}

/// Whether `t` maps the closed unit disc into itself.
pub fn check_maps_into_disc(t: &MoebiusTransform) -> bool {
    let (lhs, rhs) = condition_ii_sides(t);
    t.c().norm() < t.d().norm() && lhs <= rhs
}

/// Proof that a map contracts the closed unit disc into itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionCertificate {
    transform: MoebiusTransform,
    lipschitz: f64,
    min_denominator: f64,
    image: Circle,
}

impl ContractionCertificate {
    pub fn transform(&self) -> &MoebiusTransform {
        &self.transform
    }

    /// `1/(|d| − |c|)²`, the maximum of `|φ′|` over the disc.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// `|d| − |c|`, the minimum of `|cz + d|` over the disc.
    pub fn min_denominator(&self) -> f64 {
        self.min_denominator
    }

    /// The image of the unit circle, bounding `φ(𝔻)`.
    pub fn image(&self) -> &Circle {
        &self.image
    }

    /// The point of the unit circle where `|φ′|` attains the Lipschitz constant,
    /// `−|c|d/(c|d|)`. `None` when `c = 0` and `|φ′|` is constant.
    pub fn worst_point(&self) -> Option<Complex64> {
        let (c, d) = (self.transform.c(), self.transform.d());
        if c == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(-(d * c.norm()) / (c * d.norm()))
    }
}

/// Certifies that `t` maps the closed unit disc contractively into itself.
pub fn certify_contraction(t: &MoebiusTransform) -> Result<ContractionCertificate, NotContractive> {
    let gap = t.d().norm() - t.c().norm();
    if !(gap > 1.0) {
        return Err(NotContractive(FailedCondition::ConditionI));
    }
    let (lhs, rhs) = condition_ii_sides(t);
    if !(lhs <= rhs) {
        return Err(NotContractive(FailedCondition::ConditionII));
    }
    // |d|² − |c|² = (|d| − |c|)(|d| + |c|) > 1, so the image is a genuine circle.
    let image = image_of_unit_disc(t).expect("condition i rules out a line image");
    Ok(ContractionCertificate {
        transform: *t,
        lipschitz: 1.0 / (gap * gap),
        min_denominator: gap,
        image,
    })
}
