//! Möbius transformations `z ↦ (az + b)/(cz + d)` normalized to `ad − bc = 1`.

use std::fmt;
use std::ops::Neg;

use num_complex::Complex64;
use thiserror::Error;

/// `|ad − bc|` at or below this is treated as a constant (non-Möbius) map.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Tolerance for algebraic identities such as `ad − bc = 1`.
pub const IDENTITY_TOL: f64 = 1e-9;

/// `|cz + d|` at or below this is treated as evaluation at the pole.
pub const POLE_TOL: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MoebiusError {
    #[error("degenerate map: |ad - bc| = {0:e} is not above {DEGENERACY_TOL:e}")]
    DegenerateMap(f64),
    #[error("coefficients are not normalized: |ad - bc - 1| = {0:e}")]
    NotNormalized(f64),
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("derivative evaluated at the pole")]
    PoleEvaluation,
}

/// A point of the extended complex plane ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    /// Wraps `z`, mapping any non-finite value to [`ExtendedComplex::Infinity`].
    pub fn new(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            Self::Finite(z)
        } else {
            Self::Infinity
        }
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinity)
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        Self::new(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(z) => write!(f, "{z}"),
            Self::Infinity => f.write_str("∞"),
        }
    }
}

/// A Möbius map with coefficient matrix `[[a, b], [c, d]]` of determinant 1.
///
/// `(a, b, c, d)` and `(−a, −b, −c, −d)` describe the same map; everything
/// derived from a transform in this crate is invariant under that sign flip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusTransform {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

fn all_finite(zs: &[Complex64]) -> bool {
    zs.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

impl MoebiusTransform {
    pub const IDENTITY: Self = Self {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: Complex64::new(1.0, 0.0),
    };

    /// Scales `(a, b, c, d)` by the principal square root of `1/(ad − bc)`.
    pub fn normalize(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Result<Self, MoebiusError> {
        if !all_finite(&[a, b, c, d]) {
            return Err(MoebiusError::NonFinite);
        }
        let det = a * d - b * c;
        if det.norm() <= DEGENERACY_TOL {
            return Err(MoebiusError::DegenerateMap(det.norm()));
        }
        let k = det.sqrt().inv();
        Ok(Self {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    /// Accepts coefficients that are already normalized (`|ad − bc − 1| ≤ 1e−9`)
    /// without rescaling them.
    pub fn from_normalized(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Result<Self, MoebiusError> {
        if !all_finite(&[a, b, c, d]) {
            return Err(MoebiusError::NonFinite);
        }
        let err = (a * d - b * c - 1.0).norm();
        if err > IDENTITY_TOL {
            return Err(MoebiusError::NotNormalized(err));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// The finite pole `−d/c`, if `c ≠ 0`.
    pub fn pole(&self) -> Option<Complex64> {
        (self.c != Complex64::new(0.0, 0.0)).then(|| -self.d / self.c)
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            ExtendedComplex::Infinity => match self.pole() {
                Some(_) => ExtendedComplex::new(self.a / self.c),
                None => ExtendedComplex::Infinity,
            },
            ExtendedComplex::Finite(z) => {
                if self.pole() == Some(z) {
                    return ExtendedComplex::Infinity;
                }
                let den = self.c * z + self.d;
                if den.re == 0.0 && den.im == 0.0 {
                    return ExtendedComplex::Infinity;
                }
                ExtendedComplex::new((self.a * z + self.b) / den)
            }
        }
    }

    /// Evaluates at a finite point; `None` at the pole.
    pub fn apply_finite(&self, z: Complex64) -> Option<Complex64> {
        self.apply(ExtendedComplex::Finite(z)).finite()
    }

    /// `self ∘ other`, i.e. `z ↦ self(other(z))`.
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        // The product of two unit-determinant matrices has determinant 1 up to
        // rounding, so this cannot hit the degeneracy threshold.
        Self::normalize(a, b, c, d).expect("product of normalized maps is non-degenerate")
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `|φ′(z)| = 1/|cz + d|²`.
    pub fn derivative_modulus(&self, z: Complex64) -> Result<f64, MoebiusError> {
        let den = (self.c * z + self.d).norm();
        if den <= POLE_TOL {
            return Err(MoebiusError::PoleEvaluation);
        }
        Ok(1.0 / (den * den))
    }

    /// True if the coefficients agree with `other`'s, or with their negation,
    /// to within `tol` componentwise.
    pub fn approx_eq_up_to_sign(&self, other: &Self, tol: f64) -> bool {
        let close = |sign: f64| {
            self.coefficients()
                .iter()
                .zip(other.coefficients())
                .all(|(x, y)| (x - y * sign).norm() <= tol)
        };
        close(1.0) || close(-1.0)
    }
}

impl Neg for MoebiusTransform {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

impl Default for MoebiusTransform {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Display for MoebiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({})z + ({})) / (({})z + ({}))",
            self.a, self.b, self.c, self.d
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quarter() -> MoebiusTransform {
        MoebiusTransform::normalize(c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)).unwrap()
    }

    fn reciprocal() -> MoebiusTransform {
        MoebiusTransform::normalize(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)).unwrap()
    }

    #[test]
    fn normalize_scalar_identity() {
        let t = MoebiusTransform::normalize(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0))
            .unwrap();
        assert_eq!(t, MoebiusTransform::IDENTITY);
    }

    #[test]
    fn normalize_keeps_unit_determinant() {
        assert_eq!(
            quarter().coefficients(),
            [c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]
        );
        let t = MoebiusTransform::normalize(c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
            .unwrap();
        let det = t.a() * t.d() - t.b() * t.c();
        assert!((det - 1.0).norm() <= 1e-9);
    }

    #[test]
    fn normalize_rejects_constant_map() {
        let err = MoebiusTransform::normalize(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0))
            .unwrap_err();
        assert!(matches!(err, MoebiusError::DegenerateMap(_)));
        assert!(MoebiusTransform::normalize(
            c(f64::NAN, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0)
        )
        .is_err());
    }

    #[test]
    fn from_normalized_checks_determinant() {
        assert!(MoebiusTransform::from_normalized(
            c(2.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(2.0, 0.0)
        )
        .is_err());
        assert!(MoebiusTransform::from_normalized(
            c(0.5, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(2.0, 0.0)
        )
        .is_ok());
    }

    #[test]
    fn apply_examples() {
        let z = c(0.3, 0.4);
        assert_eq!(
            MoebiusTransform::IDENTITY.apply(z.into()),
            ExtendedComplex::Finite(z)
        );
        let r = reciprocal();
        assert_eq!(
            r.apply(c(2.0, 0.0).into()),
            ExtendedComplex::Finite(c(0.5, 0.0))
        );
        assert_eq!(r.apply(c(0.0, 0.0).into()), ExtendedComplex::Infinity);
        assert_eq!(
            r.apply(ExtendedComplex::Infinity),
            ExtendedComplex::Finite(c(0.0, 0.0))
        );
        assert_eq!(
            quarter().apply(ExtendedComplex::Infinity),
            ExtendedComplex::Infinity
        );
    }

    #[test]
    fn apply_pole_of_general_map() {
        let t = MoebiusTransform::normalize(c(0.3, 1.0), c(-0.7, 0.2), c(0.9, -0.4), c(1.3, 0.8))
            .unwrap();
        let pole = t.pole().unwrap();
        assert!(t.apply(pole.into()).is_infinite());
        assert!(t.apply(ExtendedComplex::Infinity).finite().is_some());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            MoebiusTransform::IDENTITY.inverse(),
            MoebiusTransform::IDENTITY
        );
        assert_eq!(
            quarter().inverse().coefficients(),
            [c(2.0, 0.0), c(-0.0, -0.0), c(-0.0, -0.0), c(0.5, 0.0)]
        );
        let t = reciprocal();
        assert!(t
            .compose(&t.inverse())
            .approx_eq_up_to_sign(&MoebiusTransform::IDENTITY, 1e-12));
    }

    #[test]
    fn compose_with_identity() {
        let t = reciprocal();
        assert!(MoebiusTransform::IDENTITY
            .compose(&t)
            .approx_eq_up_to_sign(&t, 1e-15));
    }

    #[test]
    fn derivative_modulus_examples() {
        assert_eq!(
            MoebiusTransform::IDENTITY
                .derivative_modulus(c(0.7, -2.0))
                .unwrap(),
            1.0
        );
        assert_eq!(quarter().derivative_modulus(c(0.0, 0.0)).unwrap(), 0.25);
        assert_eq!(
            reciprocal().derivative_modulus(c(0.0, 0.0)),
            Err(MoebiusError::PoleEvaluation)
        );
    }
}
