//! Building disc contractions from their image disc.
//!
//! Given `0 < r < 1`, `|m| ≤ 1 − r`, `|c| < (1 − r)/(2r)` and `|d|² = |c|² + 1/r`,
//! the coefficients `a = m·c + r·conj d`, `b = m·d + r·conj c` give a map with
//! `ad − bc = r(|d|² − |c|²) = 1` that contracts the unit disc onto the disc
//! of center `m` and radius `r`. Every disc contraction arises this way, and
//! `(r, m)` are recovered as `r = 1/(|d|² − |c|²)`, `m = r(b·conj d − a·conj c)`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::contraction::{certify_contraction, ContractionCertificate, NotContractive};
use crate::moebius::{MoebiusError, MoebiusTransform};

/// Largest system `sample_random_mifs` will draw.
pub const MAX_SAMPLED_MAPS: usize = 64;

/// Fraction of the open bound `(1 − r)/(2r)` used when sampling `|c|`.
const C_BOUND_FACTOR: f64 = 0.95;

/// Absolute cap on sampled `|c|`.
const C_CAP: f64 = 5.0;

/// Which constraint of a [`DiscImageSpec`] is violated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecViolation {
    /// `0 < r < 1`
    Radius,
    /// `|m| ≤ 1 − r`
    Center,
    /// `|c| < (1 − r)/(2r)`
    FreeCoefficient,
    /// Some field is NaN or infinite.
    NonFinite,
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Radius => "radius r must satisfy 0 < r < 1",
            Self::Center => "center m must satisfy |m| <= 1 - r",
            Self::FreeCoefficient => "coefficient c must satisfy |c| < (1 - r)/(2r)",
            Self::NonFinite => "all parameters must be finite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("invalid disc image spec: {0}")]
    InvalidSpec(SpecViolation),
    #[error("invalid sampling range: {0}")]
    InvalidRange(String),
    #[error(transparent)]
    NotContractive(#[from] NotContractive),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error("a system needs at least one map")]
    EmptySystem,
}

/// Image disc `(r, m)` of a disc contraction plus the free choices `c` and `arg d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscImageSpec {
    pub r: f64,
    pub m: Complex64,
    pub c: Complex64,
    /// Argument of `d`; any finite angle, conventionally in `[0, 2π)`.
    pub d_phase: f64,
}

impl DiscImageSpec {
    pub fn new(r: f64, m: Complex64, c: Complex64, d_phase: f64) -> Result<Self, GeneratorError> {
        let spec = Self {
            r,
            m,
            c,
            d_phase: d_phase.rem_euclid(TAU),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let finite = [
            self.r,
            self.m.re,
            self.m.im,
            self.c.re,
            self.c.im,
            self.d_phase,
        ]
        .iter()
        .all(|x| x.is_finite());
        let violation = if !finite {
            Some(SpecViolation::NonFinite)
        } else if !(self.r > 0.0 && self.r < 1.0) {
            Some(SpecViolation::Radius)
        } else if self.m.norm() > 1.0 - self.r {
            Some(SpecViolation::Center)
        } else if !(self.c.norm() < (1.0 - self.r) / (2.0 * self.r)) {
            Some(SpecViolation::FreeCoefficient)
        } else {
            None
        };
        match violation {
            Some(v) => Err(GeneratorError::InvalidSpec(v)),
            None => Ok(()),
        }
    }

    /// `d = √(|c|² + 1/r)·e^{i·d_phase}`.
    pub fn d(&self) -> Complex64 {
        Complex64::from_polar((self.c.norm_sqr() + 1.0 / self.r).sqrt(), self.d_phase)
    }

    /// The map built from these parameters, without validating the bounds on
    /// `m` and `c` or certifying contractivity. Only finiteness and `r > 0`
    /// are required, so parameters outside the valid region can be probed.
    pub fn transform(&self) -> Result<MoebiusTransform, GeneratorError> {
        let finite = [
            self.r,
            self.m.re,
            self.m.im,
            self.c.re,
            self.c.im,
            self.d_phase,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(GeneratorError::InvalidSpec(SpecViolation::NonFinite));
        }
        if !(self.r > 0.0) {
            return Err(GeneratorError::InvalidSpec(SpecViolation::Radius));
        }
        let d = self.d();
        let a = self.m * self.c + self.r * d.conj();
        let b = self.m * d + self.r * self.c.conj();
        Ok(MoebiusTransform::from_normalized(a, b, self.c, d)?)
    }
}

/// Builds and certifies the disc contraction described by `spec`.
pub fn make_contraction(spec: &DiscImageSpec) -> Result<ContractionCertificate, GeneratorError> {
    spec.validate()?;
    Ok(certify_contraction(&spec.transform()?)?)
}

/// Recovers the image disc `(r, m)` of a disc contraction.
pub fn recover_disc_image(t: &MoebiusTransform) -> Result<(f64, Complex64), GeneratorError> {
    certify_contraction(t)?;
    let (a, b, c, d) = (t.a(), t.b(), t.c(), t.d());
    let r = 1.0 / (d.norm_sqr() - c.norm_sqr());
    let m = (b * d.conj() - a * c.conj()) * r;
    Ok((r, m))
}

/// Recovers the full parametrization `(r, m, c, arg d)` of a disc contraction.
pub fn recover_spec(t: &MoebiusTransform) -> Result<DiscImageSpec, GeneratorError> {
    let (r, m) = recover_disc_image(t)?;
    Ok(DiscImageSpec {
        r,
        m,
        c: t.c(),
        d_phase: t.d().arg().rem_euclid(TAU),
    })
}

/// A Möbius iterated function system of certified disc contractions.
#[derive(Debug, Clone, PartialEq)]
pub struct Mifs {
    maps: Vec<ContractionCertificate>,
    max_lipschitz: f64,
}

impl Mifs {
    pub fn new(maps: Vec<ContractionCertificate>) -> Result<Self, GeneratorError> {
        if maps.is_empty() {
            return Err(GeneratorError::EmptySystem);
        }
        let max_lipschitz = maps.iter().map(|m| m.lipschitz()).fold(0.0, f64::max);
        Ok(Self {
            maps,
            max_lipschitz,
        })
    }

    /// Certifies each transform and collects them into a system.
    pub fn from_transforms<I>(transforms: I) -> Result<Self, GeneratorError>
    where
        I: IntoIterator<Item = MoebiusTransform>,
    {
        let maps = transforms
            .into_iter()
            .map(|t| certify_contraction(&t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(maps)
    }

    pub fn from_specs(specs: &[DiscImageSpec]) -> Result<Self, GeneratorError> {
        let maps = specs
            .iter()
            .map(make_contraction)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(maps)
    }

    pub fn maps(&self) -> &[ContractionCertificate] {
        &self.maps
    }

    pub fn transforms(&self) -> impl Iterator<Item = &MoebiusTransform> + '_ {
        self.maps.iter().map(|m| m.transform())
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn max_lipschitz(&self) -> f64 {
        self.max_lipschitz
    }

    /// Chaos-game weights proportional to the area `r²` of each image disc.
    pub fn image_area_weights(&self) -> Vec<f64> {
        self.maps
            .iter()
            .map(|m| m.image().radius() * m.image().radius())
            .collect()
    }
}

/// Draws `n` random disc contractions.
///
/// The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
/// `SeedableRng::seed_from_u64(seed)`. Per map, in this order:
///
/// 1. `r` uniform in `[r_min, r_max]`
/// 2. `|m| = (1 − r)·√u` with `u` uniform in `[0, 1]`, `arg m` uniform in `[0, 2π)`
/// 3. `|c|` uniform in `[0, 0.95·(1 − r)/(2r)]`, capped at 5
/// 4. `arg c` uniform in `[0, 2π)`
/// 5. `arg d` uniform in `[0, 2π)`
///
/// A draw that fails certification through rounding (only possible when
/// `|m|` lands on `1 − r`) is discarded and redrawn.
pub fn sample_random_mifs(
    n: usize,
    seed: u64,
    r_min: f64,
    r_max: f64,
) -> Result<Mifs, GeneratorError> {
    let (maps, _) = sample_certified(n, seed, r_min, r_max)?;
    Mifs::new(maps)
}

/// The specs behind [`sample_random_mifs`] for the same arguments.
pub fn sample_random_specs(
    n: usize,
    seed: u64,
    r_min: f64,
    r_max: f64,
) -> Result<Vec<DiscImageSpec>, GeneratorError> {
    Ok(sample_certified(n, seed, r_min, r_max)?.1)
}

fn sample_certified(
    n: usize,
    seed: u64,
    r_min: f64,
    r_max: f64,
) -> Result<(Vec<ContractionCertificate>, Vec<DiscImageSpec>), GeneratorError> {
    if !(1..=MAX_SAMPLED_MAPS).contains(&n) {
        return Err(GeneratorError::InvalidRange(format!(
            "map count {n} is outside 1..={MAX_SAMPLED_MAPS}"
        )));
    }
    if !(r_min > 0.0 && r_min <= r_max && r_max < 1.0) {
        return Err(GeneratorError::InvalidRange(format!(
            "radius range [{r_min}, {r_max}] must satisfy 0 < r_min <= r_max < 1"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps = Vec::with_capacity(n);
    let mut specs = Vec::with_capacity(n);
    while maps.len() < n {
        let spec = draw_spec(&mut rng, r_min, r_max);
        if let Ok(cert) = make_contraction(&spec) {
            maps.push(cert);
            specs.push(spec);
        }
    }
    Ok((maps, specs))
}

fn draw_spec<R: Rng>(rng: &mut R, r_min: f64, r_max: f64) -> DiscImageSpec {
    let r = if r_min == r_max {
        r_min
    } else {
        rng.random_range(r_min..=r_max)
    };
    let m_radius = (1.0 - r) * rng.random_range(0.0..=1.0f64).sqrt();
    let m = Complex64::from_polar(m_radius, rng.random_range(0.0..TAU));
    let c_bound = C_BOUND_FACTOR * (1.0 - r) / (2.0 * r);
    let c_norm = rng.random_range(0.0..=c_bound).min(C_CAP);
    let c = Complex64::from_polar(c_norm, rng.random_range(0.0..TAU));
    let d_phase = rng.random_range(0.0..TAU);
    DiscImageSpec { r, m, c, d_phase }
}
