//! Möbius iterated function systems on the closed unit disc.
//!
//! The crate is organised bottom-up:
//!
//! - [`moebius`]: normalized Möbius maps on the extended complex plane.
//! - [`circle`]: images of circles (and the unit circle) under those maps.
//! - [`contraction`]: deciding whether a map sends the disc into itself, and
//!   whether it does so contractively, with a certified Lipschitz constant.
//! - [`generator`]: building every disc contraction from its image disc
//!   `(r, m)` plus the free coefficient `c` and the phase of `d`, and the
//!   inverse recovery.
//! - [`attractor`]: Hutchinson iteration, chaos game and Hausdorff distance.
//! - [`raster`]: black-on-white point plots and circle overlays as binary PPM.

// `!(x > y)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attractor;
pub mod circle;
pub mod contraction;
pub mod generator;
pub mod moebius;
pub mod raster;

pub use num_complex::Complex64;

pub use attractor::{
    chaos_game, hausdorff_distance, hutchinson_step, iterate_attractor, Attractor, ChaosOptions,
    IterateOptions, PointCloud,
};
pub use circle::{image_of_circle, image_of_unit_disc, Circle, CircleError, GeneralizedCircle};
pub use contraction::{
    certify_contraction, check_maps_into_disc, ContractionCertificate, FailedCondition,
    NotContractive,
};
pub use generator::{
    make_contraction, recover_disc_image, recover_spec, sample_random_mifs, sample_random_specs,
    DiscImageSpec, GeneratorError, Mifs, SpecViolation,
};
pub use moebius::{ExtendedComplex, MoebiusError, MoebiusTransform};
pub use raster::{draw_circles, rasterize, write_pnm, Raster, RasterError, Viewport};
