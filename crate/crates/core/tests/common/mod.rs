//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! closed-form predicates, circle formulas or derivative formula under test;
//! everything is derived from `apply` alone.

#![allow(dead_code)]

use std::f64::consts::TAU;

use mifs::{Complex64, DiscImageSpec, ExtendedComplex, MoebiusTransform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BOUNDARY_SAMPLES: usize = 720;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R, half_width: f64) -> Complex64 {
    c(
        rng.random_range(-half_width..half_width),
        rng.random_range(-half_width..half_width),
    )
}

/// A normalized map with coefficients drawn from a box.
pub fn random_transform<R: Rng>(rng: &mut R, half_width: f64) -> MoebiusTransform {
    loop {
        let q: Vec<Complex64> = (0..4).map(|_| random_complex(rng, half_width)).collect();
        if let Ok(t) = MoebiusTransform::normalize(q[0], q[1], q[2], q[3]) {
            return t;
        }
    }
}

/// Uniform point of the closed unit disc.
pub fn random_in_disc<R: Rng>(rng: &mut R) -> Complex64 {
    let r = rng.random_range(0.0..=1.0f64).sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..TAU))
}

/// A valid spec with `r` in `[r_lo, r_hi]`.
pub fn random_spec<R: Rng>(rng: &mut R, r_lo: f64, r_hi: f64) -> DiscImageSpec {
    let r = rng.random_range(r_lo..=r_hi);
    let m = Complex64::from_polar(
        (1.0 - r) * rng.random_range(0.0..1.0f64).sqrt(),
        rng.random_range(0.0..TAU),
    );
    let bound = (1.0 - r) / (2.0 * r);
    let cc = Complex64::from_polar(
        rng.random_range(0.0..0.999 * bound).min(5.0),
        rng.random_range(0.0..TAU),
    );
    DiscImageSpec::new(r, m, cc, rng.random_range(0.0..TAU)).unwrap()
}

pub fn on_circle(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Maximizes `f` over the unit circle: 720 samples, then golden-section
/// refinement around the best sample.
pub fn max_on_circle(f: impl Fn(f64) -> f64) -> f64 {
    let step = TAU / BOUNDARY_SAMPLES as f64;
    let (mut best_theta, mut best) = (0.0, f64::NEG_INFINITY);
    for k in 0..BOUNDARY_SAMPLES {
        let theta = k as f64 * step;
        let v = f(theta);
        if v > best {
            best = v;
            best_theta = theta;
        }
    }
    let (mut lo, mut hi) = (best_theta - step, best_theta + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if f(x1) < f(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    best.max(f(0.5 * (lo + hi)))
}

/// Winding number of the closed polygon `poly` around `p`.
pub fn winding_number(poly: &[Complex64], p: Complex64) -> i32 {
    let total: f64 = poly
        .iter()
        .zip(poly.iter().cycle().skip(1))
        .map(|(a, b)| ((b - p) / (a - p)).arg())
        .sum();
    (total / TAU).round() as i32
}

/// Sampled `sup |φ|` over the unit circle, `None` if some sample hits the pole.
pub fn sampled_max_modulus(t: &MoebiusTransform) -> Option<f64> {
    let max = max_on_circle(|theta| match t.apply(on_circle(theta).into()) {
        ExtendedComplex::Finite(w) => w.norm(),
        ExtendedComplex::Infinity => f64::INFINITY,
    });
    max.is_finite().then_some(max)
}

/// φ(𝔻) ⊂ 𝔻 by sampling: the boundary images stay in the disc and φ(0) is
/// enclosed by them (so the pole is outside 𝔻 and φ(𝔻) is the bounded side).
pub fn oracle_maps_into_disc(t: &MoebiusTransform) -> bool {
    let Some(max) = sampled_max_modulus(t) else {
        return false;
    };
    if max > 1.0 + 1e-12 {
        return false;
    }
    let Some(w0) = t.apply_finite(c(0.0, 0.0)) else {
        return false;
    };
    let poly: Vec<Complex64> = (0..BOUNDARY_SAMPLES)
        .map(|k| {
            t.apply_finite(on_circle(TAU * k as f64 / BOUNDARY_SAMPLES as f64))
                .unwrap()
        })
        .collect();
    winding_number(&poly, w0) != 0
}

/// `|φ′(z)|` by a fourth-order central difference of `apply`.
pub fn fd_derivative_modulus(t: &MoebiusTransform, z: Complex64, h: f64) -> f64 {
    let f = |w: Complex64| {
        t.apply_finite(w)
            .expect("finite-difference stencil hit the pole")
    };
    let h = c(h, 0.0);
    ((f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h)).norm()
}

/// Contractive into the disc by sampling: into-disc oracle plus the sampled
/// sup of the finite-difference derivative on the boundary below 1.
pub fn oracle_contractive(t: &MoebiusTransform) -> bool {
    if !oracle_maps_into_disc(t) {
        return false;
    }
    max_on_circle(|theta| fd_derivative_modulus(t, on_circle(theta), 1e-3)) < 1.0
}

/// Grid of 10⁴ points of 𝔻: five radii up to 1, 2000 angles each.
pub fn disc_grid() -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(10_000);
    for i in 1..=5 {
        let r = i as f64 / 5.0;
        for k in 0..2000 {
            pts.push(Complex64::from_polar(r, TAU * k as f64 / 2000.0));
        }
    }
    pts
}

/// `max |φ′|` over [`disc_grid`] by finite differences of `apply`.
pub fn grid_max_derivative(t: &MoebiusTransform) -> f64 {
    disc_grid()
        .into_iter()
        .map(|z| fd_derivative_modulus(t, z, 1e-3))
        .fold(0.0, f64::max)
}

/// O(|a||b|) Hausdorff distance.
pub fn brute_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let directed = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm_sqr())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a)).sqrt()
}

/// Signed distances of a quadruple from the into-disc and contractive decision
/// boundaries, in the units the sampling oracles see:
/// `(|d| − |c|, 1 − sup|φ| on 𝕊, |d| − |c| − 1)`.
pub fn boundary_margins(t: &MoebiusTransform) -> (f64, f64, f64) {
    let (a, b, cc, d) = (t.a(), t.b(), t.c(), t.d());
    let gap = d.norm() - cc.norm();
    let den = d.norm_sqr() - cc.norm_sqr();
    let lhs = (a * cc.conj() - b * d.conj()).norm() + 1.0;
    ((gap), (den - lhs) / den.abs(), gap - 1.0)
}

/// The three reference systems as `(r, m, c, d)` tuples and expected `(a, b)`.
pub struct ReferenceMap {
    pub r: f64,
    pub m: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub a_expected: Complex64,
    pub b_expected: Complex64,
}

impl ReferenceMap {
    pub fn spec(&self) -> DiscImageSpec {
        DiscImageSpec::new(self.r, self.m, self.c, self.d.arg()).unwrap()
    }
}

#[rustfmt::skip]
pub fn reference_examples() -> Vec<Vec<ReferenceMap>> {
    let pm = |r, m, cc, d, a, b| ReferenceMap { r, m, c: cc, d, a_expected: a, b_expected: b };
    vec![
        vec![
            pm(0.7, c(-0.2, 0.2), c(0.0, 0.2), c(1.0523, 0.601), c(0.6966, -0.4607), c(-0.3307, -0.0497)),
            pm(0.6, c(0.0, -0.3), c(0.0, -0.2), c(-1.3064, 0.0), c(-0.8438, 0.0), c(0.0, 0.5119)),
        ],
        vec![
            pm(0.6, c(0.1, 0.3), c(0.2, -0.2), c(-0.0047, 1.3216), c(0.0772, -0.753), c(-0.277, 0.2507)),
            pm(0.4, c(0.3, -0.4), c(0.0, 0.7), c(0.9102, 1.4702), c(0.6441, -0.3781), c(0.8611, -0.203)),
            pm(0.5, c(-0.4, -0.2), c(0.3, 0.3), c(-1.0108, -1.0762), c(-0.5654, 0.3581), c(0.3391, 0.4826)),
        ],
        vec![
            pm(0.6, c(-0.0116, 0.3887), c(-0.2033, -0.1371), c(-1.2886, 0.2577), c(-0.7175, -0.232), c(-0.2072, -0.4216)),
            pm(0.5, c(0.3991, -0.2685), c(0.2348, -0.1316), c(0.2431, 1.4189), c(0.1799, -0.825), c(0.5954, 0.5668)),
            pm(0.5, c(-0.4114, -0.2082), c(-0.0445, 0.3668), c(1.2534, -0.752), c(0.7214, 0.2344), c(-0.6945, -0.135)),
        ],
    ]
}

pub fn reference_system(example: usize) -> mifs::Mifs {
    let specs: Vec<DiscImageSpec> = reference_examples()[example]
        .iter()
        .map(ReferenceMap::spec)
        .collect();
    mifs::Mifs::from_specs(&specs).unwrap()
}
