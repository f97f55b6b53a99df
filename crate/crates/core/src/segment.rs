//! Rotated segments `[a, a + e^{iφ}(b − a)]` and their uniform grids.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SegmentError {
    #[error("segment endpoints must satisfy a < b (got a={a}, b={b})")]
    Order { a: f64, b: f64 },
    #[error("segment angle must lie in [0, pi] (got {0})")]
    Angle(f64),
    #[error("segment parameters must be finite")]
    NonFinite,
    #[error("path parameter {0} outside [0, 1]")]
    ParameterRange(f64),
    #[error("grid needs at least 3 nodes (got {0})")]
    GridTooSmall(usize),
}

#[derive(Deserialize)]
struct RawSegment {
    a: f64,
    b: f64,
    phi: f64,
}

impl TryFrom<RawSegment> for PhiSegment {
    type Error = SegmentError;

    fn try_from(raw: RawSegment) -> Result<Self, Self::Error> {
        PhiSegment::new(raw.a, raw.b, raw.phi)
    }
}

/// The path `t ↦ a + t·e^{iφ}(b − a)` for `t ∈ [0, 1]`.
///
/// `a < b` orders the path parameter; it is not a comparison of complex
/// endpoints. Angles up to `π` are accepted, but only `[0, π/2]` is inside
/// the range the bounds are stated for (see [`PhiSegment::in_theorem_range`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSegment")]
pub struct PhiSegment {
    a: f64,
    b: f64,
    phi: f64,
}

impl PhiSegment {
    pub fn new(a: f64, b: f64, phi: f64) -> Result<Self, SegmentError> {
        if !(a.is_finite() && b.is_finite() && phi.is_finite()) {
            return Err(SegmentError::NonFinite);
        }
        if a >= b {
            return Err(SegmentError::Order { a, b });
        }
        if !(0.0..=PI).contains(&phi) {
            return Err(SegmentError::Angle(phi));
        }
        Ok(PhiSegment { a, b, phi })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn in_theorem_range(&self) -> bool {
        self.phi <= FRAC_PI_2
    }

    /// `e^{iφ}`.
    pub fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi)
    }

    /// `e^{iφ}(b − a)`.
    pub fn displacement(&self) -> Complex64 {
        self.rotation() * (self.b - self.a)
    }

    /// `|e^{iφ}(b − a)| = b − a`.
    pub fn length_factor(&self) -> f64 {
        self.b - self.a
    }

    pub fn start(&self) -> Complex64 {
        Complex64::new(self.a, 0.0)
    }

    /// The real generator point `b`; off the path unless `φ = 0`.
    pub fn generator(&self) -> Complex64 {
        Complex64::new(self.b, 0.0)
    }

    /// `a + e^{iφ}(b − a)`.
    pub fn endpoint(&self) -> Complex64 {
        self.at(1.0)
    }

    pub fn midpoint_point(&self) -> Complex64 {
        self.at(0.5)
    }

    pub fn point_at(&self, t: f64) -> Result<Complex64, SegmentError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(SegmentError::ParameterRange(t));
        }
        Ok(self.at(t))
    }

    /// Unchecked path evaluation; callers guarantee `t ∈ [0, 1]`.
    pub(crate) fn at(&self, t: f64) -> Complex64 {
        let (s, c) = self.phi.sin_cos();
        let step = t * (self.b - self.a);
        Complex64::new(self.a + step * c, step * s)
    }
}

pub fn point_at(s: &PhiSegment, t: f64) -> Result<Complex64, SegmentError> {
    s.point_at(t)
}

pub fn length_factor(s: &PhiSegment) -> f64 {
    s.length_factor()
}

pub fn midpoint_point(s: &PhiSegment) -> Complex64 {
    s.midpoint_point()
}

/// Uniform partition of `[0, 1]` with `n` nodes, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentGrid {
    pub segment: PhiSegment,
    n: usize,
}

impl SegmentGrid {
    pub fn new(segment: PhiSegment, n: usize) -> Result<Self, SegmentError> {
        if n < 3 {
            return Err(SegmentError::GridTooSmall(n));
        }
        Ok(SegmentGrid { segment, n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `k/(n−1)`; exact at both ends.
    pub fn t(&self, k: usize) -> f64 {
        k as f64 / (self.n - 1) as f64
    }

    pub fn t_values(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.t(k)).collect()
    }

    pub fn point(&self, k: usize) -> Complex64 {
        self.segment.at(self.t(k))
    }
}
