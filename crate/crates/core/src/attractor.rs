//! Attractors of Möbius iterated function systems.
//!
//! The attractor is the Hausdorff-metric limit of `Φᵏ(Y)` where
//! `Φ(Y) = φ₁(Y) ∪ … ∪ φ_N(Y)` and `Y` is any compact seed set. Two ways to
//! approximate it are provided: deterministic iteration of `Φ` on finite point
//! clouds ([`iterate_attractor`]) and the random-orbit chaos game
//! ([`chaos_game`]).

mod hausdorff;

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::generator::Mifs;

pub use hausdorff::{directed_hausdorff, hausdorff_distance};

/// Points closer than this (per coordinate, after rounding to the grid) are merged.
pub const DEDUPE_RESOLUTION: f64 = 1e-12;

/// Default cap on the size of an iterated cloud.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// Default number of discarded chaos-game steps.
pub const DEFAULT_BURN_IN: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AttractorError {
    #[error("a point cloud must contain at least one point")]
    EmptyCloud,
    #[error("point cloud contains a non-finite coordinate")]
    NonFinitePoint,
    #[error("invalid map weights: {0}")]
    InvalidWeights(String),
}

/// A non-empty finite set of points in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Complex64>,
}

fn lex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn grid_key(z: &Complex64) -> (i64, i64) {
    (
        (z.re / DEDUPE_RESOLUTION).round() as i64,
        (z.im / DEDUPE_RESOLUTION).round() as i64,
    )
}

/// Merges points sharing a dedupe grid cell and sorts lexicographically.
fn canonicalize(points: Vec<Complex64>) -> Vec<Complex64> {
    let mut keyed: Vec<((i64, i64), Complex64)> =
        points.into_par_iter().map(|z| (grid_key(&z), z)).collect();
    keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| lex(&a.1, &b.1)));
    keyed.dedup_by_key(|k| k.0);
    let mut points: Vec<Complex64> = keyed.into_iter().map(|k| k.1).collect();
    points.par_sort_unstable_by(lex);
    points
}

impl PointCloud {
    /// Wraps `points` in the given order.
    pub fn new(points: Vec<Complex64>) -> Result<Self, AttractorError> {
        if points.is_empty() {
            return Err(AttractorError::EmptyCloud);
        }
        if points
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(AttractorError::NonFinitePoint);
        }
        Ok(Self { points })
    }

    /// Like [`PointCloud::new`] but deduplicated and in canonical order.
    pub fn canonical(points: Vec<Complex64>) -> Result<Self, AttractorError> {
        Self::new(points).map(|c| c.into_canonical())
    }

    /// `n` equally spaced points on the unit circle.
    pub fn unit_circle(n: usize) -> Self {
        let points = (0..n.max(1))
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n.max(1) as f64))
            .collect();
        Self { points }.into_canonical()
    }

    pub fn single(z: Complex64) -> Self {
        Self { points: vec![z] }
    }

    pub fn into_canonical(self) -> Self {
        Self {
            points: canonicalize(self.points),
        }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Complex64> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest modulus of any point.
    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// One application of the Hutchinson operator `Y ↦ φ₁(Y) ∪ … ∪ φ_N(Y)`.
///
/// The result is deduplicated at [`DEDUPE_RESOLUTION`] and sorted
/// lexicographically, so it does not depend on evaluation order. Images at
/// infinity (impossible for clouds inside the disc) are dropped.
pub fn hutchinson_step(sys: &Mifs, y: &PointCloud) -> PointCloud {
    let points = canonicalize(images(sys, y));
    assert!(!points.is_empty(), "every point of the cloud hit a pole");
    PointCloud { points }
}

fn images(sys: &Mifs, y: &PointCloud) -> Vec<Complex64> {
    let maps: Vec<_> = sys.transforms().copied().collect();
    y.points
        .par_iter()
        .flat_map_iter(|&z| maps.iter().filter_map(move |t| t.apply_finite(z)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOptions {
    pub max_iter: usize,
    /// Stop once successive clouds are closer than this in Hausdorff distance.
    pub tol: f64,
    /// Clouds larger than this are thinned.
    pub budget: usize,
    /// Side of the thinning cells; `None` means `tol / 2`.
    pub thin_cell: Option<f64>,
    pub seed: u64,
}

impl Default for IterateOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            tol: 1e-3,
            budget: DEFAULT_BUDGET,
            thin_cell: None,
            seed: 0,
        }
    }
}

impl IterateOptions {
    fn cell(&self) -> f64 {
        match self.thin_cell {
            Some(h) if h > 0.0 => h,
            _ => self.tol / 2.0,
        }
    }
}

/// Result of [`iterate_attractor`] with its convergence diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Attractor {
    pub cloud: PointCloud,
    pub iterations_used: usize,
    /// Hausdorff distance between each pair of successive clouds.
    pub step_distances: Vec<f64>,
    /// Bound on the distance of the final cloud to the true attractor,
    /// `d_last / (1 − s)` with `s` the largest certified Lipschitz constant.
    /// Ignores thinning.
    pub error_bound: f64,
}

impl Attractor {
    pub fn converged(&self, tol: f64) -> bool {
        self.step_distances.last().is_some_and(|&d| d < tol)
    }
}

/// Keeps the point nearest the center of each occupied `cell × cell` square.
fn stratify(points: Vec<Complex64>, cell: f64) -> Vec<Complex64> {
    let mut keyed: Vec<(i64, i64, f64, Complex64)> = points
        .into_par_iter()
        .map(|z| {
            let (fi, fj) = ((z.re / cell).floor(), (z.im / cell).floor());
            let center = Complex64::new((fi + 0.5) * cell, (fj + 0.5) * cell);
            (fi as i64, fj as i64, (z - center).norm_sqr(), z)
        })
        .collect();
    keyed.par_sort_unstable_by(|a, b| {
        (a.0, a.1)
            .cmp(&(b.0, b.1))
            .then(a.2.total_cmp(&b.2))
            .then_with(|| lex(&a.3, &b.3))
    });
    keyed.dedup_by_key(|k| (k.0, k.1));
    let mut points: Vec<Complex64> = keyed.into_iter().map(|k| k.3).collect();
    points.par_sort_unstable_by(lex);
    points
}

/// Keeps `budget` points chosen uniformly without replacement, in canonical order.
fn sample_uniform(points: Vec<Complex64>, budget: usize, seed: u64, step: u64) -> Vec<Complex64> {
    if points.len() <= budget {
        return points;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(step);
    let mut idx = rand::seq::index::sample(&mut rng, points.len(), budget).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| points[i]).collect()
}

/// Brings an over-budget cloud back under `opts.budget`: first one
/// representative per thinning cell, then, if that is still too many, a
/// seeded uniform sample.
///
/// The input need not be canonical; the output always is.
fn thin(points: Vec<Complex64>, opts: &IterateOptions, step: u64) -> Vec<Complex64> {
    let budget = opts.budget.max(1);
    let points = canonicalize(points);
    if points.len() <= budget {
        return points;
    }
    let points = stratify(points, opts.cell());
    sample_uniform(points, budget, opts.seed, step)
}

/// Iterates the Hutchinson operator from `y0` until successive clouds are
/// within `tol` in Hausdorff distance or `max_iter` steps have run.
///
/// A cloud above `opts.budget` points is reduced to the point nearest the
/// center of each occupied square of side `opts.thin_cell` (default `tol/2`).
/// This moves no point and changes the cloud by at most one cell diagonal in
/// Hausdorff distance, so successive clouds can still settle below `tol`. If
/// the cells alone do not get under budget, the representatives are sampled
/// uniformly with a ChaCha8 generator seeded from `opts.seed` on a stream
/// given by the step number.
pub fn iterate_attractor(sys: &Mifs, y0: &PointCloud, opts: &IterateOptions) -> Attractor {
    let max_iter = opts.max_iter.max(1);
    let mut y = PointCloud {
        points: thin(y0.points.clone(), opts, 0),
    };
    let mut step_distances = Vec::new();
    let mut iterations_used = 0;
    for k in 1..=max_iter {
        let next = PointCloud {
            points: thin(images(sys, &y), opts, k as u64),
        };
        let d = hausdorff_distance(&y, &next);
        step_distances.push(d);
        y = next;
        iterations_used = k;
        if d < opts.tol {
            break;
        }
    }
    let last = step_distances.last().copied().unwrap_or(f64::INFINITY);
    Attractor {
        cloud: y,
        iterations_used,
        error_bound: last / (1.0 - sys.max_lipschitz()),
        step_distances,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChaosOptions {
    pub n_points: usize,
    pub burn_in: usize,
    pub seed: u64,
    weights: Option<Vec<f64>>,
}

impl ChaosOptions {
    pub fn new(n_points: usize, seed: u64) -> Self {
        Self {
            n_points,
            burn_in: DEFAULT_BURN_IN,
            seed,
            weights: None,
        }
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    /// Per-map selection weights (non-negative, not all zero). Uniform if unset.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self, AttractorError> {
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(AttractorError::InvalidWeights(
                "weights must be finite and non-negative".into(),
            ));
        }
        if !weights.iter().any(|&w| w > 0.0) {
            return Err(AttractorError::InvalidWeights(
                "all weights are zero".into(),
            ));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }
}

/// Samples the attractor along one random orbit starting at 0.
///
/// Maps are picked with a ChaCha8 generator seeded from `opts.seed`. The first
/// `burn_in` orbit points are discarded; the result is in orbit order.
///
/// # Panics
///
/// If the weights' length differs from the number of maps.
pub fn chaos_game(sys: &Mifs, opts: &ChaosOptions) -> PointCloud {
    let maps: Vec<_> = sys.transforms().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let weighted = opts.weights.as_ref().map(|w| {
        assert_eq!(w.len(), maps.len(), "one weight per map");
        WeightedIndex::new(w).expect("weights validated on construction")
    });
    let pick = |rng: &mut ChaCha8Rng| match &weighted {
        Some(dist) => dist.sample(rng),
        None => rng.random_range(0..maps.len()),
    };
    let n = opts.n_points.max(1);
    let mut z = Complex64::new(0.0, 0.0);
    let mut points = Vec::with_capacity(n);
    for step in 0..opts.burn_in + n {
        let t = &maps[pick(&mut rng)];
        // 0 lies in the disc and the disc is invariant, so the pole is never hit.
        z = t.apply_finite(z).expect("orbit stays inside the unit disc");
        if step >= opts.burn_in {
            points.push(z);
        }
    }
    PointCloud { points }
}
