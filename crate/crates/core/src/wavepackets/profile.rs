//! Scalar momentum profiles `f(p)`.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use super::quadrature::composite_rule;
use crate::error::{Error, Result};
use crate::minkowski::C64;

pub type ProfileFn = Arc<dyn Fn(&Vector3<f64>) -> C64 + Send + Sync>;

#[derive(Clone)]
pub enum MomentumProfile {
    /// `N exp(-|p - c|^2 / (4 sigma^2))`, so `|f|^2` has standard deviation
    /// `sigma` along each axis, with `N` fixing `int |f|^2 d^3p/p^0 = 1`.
    Gaussian { center: Vector3<f64>, width: f64, normalization: f64 },
    /// Any callable, with a center and width used to size quadrature boxes.
    Custom { f: ProfileFn, center: Vector3<f64>, width: f64 },
}

impl fmt::Debug for MomentumProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentumProfile::Gaussian { center, width, normalization } => f
                .debug_struct("Gaussian")
                .field("center", center)
                .field("width", width)
                .field("normalization", normalization)
                .finish(),
            MomentumProfile::Custom { center, width, .. } => {
                f.debug_struct("Custom").field("center", center).field("width", width).finish()
            }
        }
    }
}

impl MomentumProfile {
    /// Gaussian normalized against the invariant measure of mass `m`.
    pub fn gaussian(m: f64, center: Vector3<f64>, width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidParameter(format!("profile width must be positive, got {width}")));
        }
        if !(m > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {m}")));
        }
        let normalization = 1.0 / gaussian_measure_integral(m, center.norm(), width).sqrt();
        Ok(MomentumProfile::Gaussian { center, width, normalization })
    }

    pub fn custom(f: ProfileFn, center: Vector3<f64>, width: f64) -> Self {
        MomentumProfile::Custom { f, center, width }
    }

    pub fn center(&self) -> Vector3<f64> {
        match self {
            MomentumProfile::Gaussian { center, .. } | MomentumProfile::Custom { center, .. } => *center,
        }
    }

    pub fn width(&self) -> f64 {
        match self {
            MomentumProfile::Gaussian { width, .. } | MomentumProfile::Custom { width, .. } => *width,
        }
    }

    pub fn eval(&self, p: &Vector3<f64>) -> C64 {
        match self {
            MomentumProfile::Gaussian { center, width, normalization } => {
                let d2 = (p - center).norm_squared();
                C64::new(normalization * (-d2 / (4.0 * width * width)).exp(), 0.0)
            }
            MomentumProfile::Custom { f, .. } => f(p),
        }
    }
}

/// `int exp(-|p - c|^2 / (2 w^2)) d^3p / sqrt(m^2 + p^2)` with `|c| = c`.
///
/// The angular integral is done in closed form, leaving a radial integral.
pub fn gaussian_measure_integral(m: f64, c: f64, w: f64) -> f64 {
    let lo = (c - 14.0 * w).max(0.0);
    let hi = c + 14.0 * w;
    let (r, wr) = composite_rule(lo, hi, 32, 16);
    r.iter()
        .zip(&wr)
        .map(|(&r, &wr)| wr * r * r / (m * m + r * r).sqrt() * angular_integral(r, c, w))
        .sum()
}

/// `int exp(-|r n - c|^2 / (2 w^2)) dn` over the unit sphere.
fn angular_integral(r: f64, c: f64, w: f64) -> f64 {
    let x = r * c / (w * w);
    let four_pi = 4.0 * std::f64::consts::PI;
    if x < 1e-4 {
        let sinhc = 1.0 + x * x / 6.0;
        four_pi * (-(r * r + c * c) / (2.0 * w * w)).exp() * sinhc
    } else {
        let a = (-(r - c).powi(2) / (2.0 * w * w)).exp();
        let b = (-(r + c).powi(2) / (2.0 * w * w)).exp();
        four_pi * (a - b) / (2.0 * x)
    }
}
