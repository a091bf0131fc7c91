//! TOML system description: a list of maps plus optional render settings.

use std::f64::consts::TAU;

use mifs::{Complex64, DiscImageSpec, MoebiusTransform, Viewport};
use serde::{Deserialize, Serialize};

use crate::Failure;

pub type Pair = [f64; 2];

pub fn complex([re, im]: Pair) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MifsConfig {
    pub maps: Vec<MapEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub render: Option<RenderConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapEntry {
    Spec {
        r: f64,
        m: Pair,
        c: Pair,
        d_phase: f64,
        /// Coefficients derived from the spec, written by `sample`. Checked
        /// against the spec on load when present.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        derived: Option<Derived>,
    },
    Coeffs {
        a: Pair,
        b: Pair,
        c: Pair,
        d: Pair,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Derived {
    pub a: Pair,
    pub b: Pair,
    pub d: Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hutchinson,
    Chaos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weights {
    Uniform,
    Area,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderConfig {
    pub width: usize,
    pub height: usize,
    /// `[x_min, x_max, y_min, y_max]`
    pub viewport: [f64; 4],
    pub method: Method,
    pub max_iter: usize,
    pub tol: f64,
    /// Point budget for Hutchinson iteration.
    pub budget: usize,
    /// Orbit length for the chaos game.
    pub points: usize,
    pub burn_in: usize,
    pub weights: Weights,
    pub seed: u64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            width: 1024,
            height: 1024,
            viewport: [-1.1, 1.1, -1.1, 1.1],
            method: Method::Hutchinson,
            max_iter: 200,
            tol: 1e-3,
            budget: mifs::attractor::DEFAULT_BUDGET,
            points: 1_000_000,
            burn_in: mifs::attractor::DEFAULT_BURN_IN,
            weights: Weights::Uniform,
            seed: 0,
        }
    }
}

impl RenderConfig {
    pub fn viewport(&self) -> Result<Viewport, Failure> {
        let [x0, x1, y0, y1] = self.viewport;
        Viewport::new(x0, x1, y0, y1).map_err(|e| Failure::Invalid(format!("render.viewport: {e}")))
    }
}

impl MifsConfig {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let config: Self =
            toml::from_str(text).map_err(|e| Failure::Parse(e.message().to_string()))?;
        if config.maps.is_empty() {
            return Err(Failure::Parse("config lists no maps".into()));
        }
        Ok(config)
    }
}

impl MapEntry {
    pub fn from_spec(spec: &DiscImageSpec, derived: Option<&MoebiusTransform>) -> Self {
        let pair = |z: Complex64| [z.re, z.im];
        Self::Spec {
            r: spec.r,
            m: pair(spec.m),
            c: pair(spec.c),
            d_phase: spec.d_phase,
            derived: derived.map(|t| Derived {
                a: pair(t.a()),
                b: pair(t.b()),
                d: pair(t.d()),
            }),
        }
    }

    pub fn from_transform(t: &MoebiusTransform) -> Self {
        let pair = |z: Complex64| [z.re, z.im];
        Self::Coeffs {
            a: pair(t.a()),
            b: pair(t.b()),
            c: pair(t.c()),
            d: pair(t.d()),
        }
    }

    /// The spec of a `spec` entry, validated.
    pub fn spec(&self) -> Option<Result<DiscImageSpec, Failure>> {
        match *self {
            Self::Spec {
                r, m, c, d_phase, ..
            } => Some(
                DiscImageSpec::new(r, complex(m), complex(c), d_phase)
                    .map_err(|e| Failure::Invalid(e.to_string())),
            ),
            Self::Coeffs { .. } => None,
        }
    }

    /// The normalized map, without certifying it. Spec entries are built even
    /// when they violate the spec bounds so the contraction test can name the
    /// failing condition.
    pub fn transform(&self) -> Result<MoebiusTransform, Failure> {
        match *self {
            Self::Spec {
                r,
                m,
                c,
                d_phase,
                ref derived,
            } => {
                let spec = DiscImageSpec {
                    r,
                    m: complex(m),
                    c: complex(c),
                    d_phase: d_phase.rem_euclid(TAU),
                };
                let t = spec
                    .transform()
                    .map_err(|e| Failure::Invalid(e.to_string()))?;
                if let Some(derived) = derived {
                    let listed = MoebiusTransform::normalize(
                        complex(derived.a),
                        complex(derived.b),
                        complex(c),
                        complex(derived.d),
                    )
                    .map_err(|e| Failure::Invalid(format!("derived coefficients: {e}")))?;
                    if !listed.approx_eq_up_to_sign(&t, 1e-9) {
                        return Err(Failure::Invalid(
                            "derived coefficients do not match the spec".into(),
                        ));
                    }
                }
                Ok(t)
            }
            Self::Coeffs { a, b, c, d } => {
                MoebiusTransform::normalize(complex(a), complex(b), complex(c), complex(d))
                    .map_err(|e| Failure::Invalid(e.to_string()))
            }
        }
    }
}
