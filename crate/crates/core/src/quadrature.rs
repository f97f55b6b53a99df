//! Reference integrals along a rotated segment.
//!
//! Integrals are taken in the path parameter: for `x(t) = a + t·L`,
//! `L = e^{iφ}(b − a)`, the contour integral is `L·∫₀¹ f(x(t)) dt`. The inner
//! rule is a 15-point Gauss–Kronrod pair; the outer loop bisects the panel
//! with the largest `|K15 − G7|` until the summed estimate drops below the
//! requested tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::expr::{EvalError, Expr, ScalarFn};
use crate::segment::PhiSegment;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const PANEL_BUDGET: usize = 10_000;

// Kronrod abscissae on [-1, 1]; odd indices are the embedded Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub panels_used: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("quadrature did not reach tolerance within {panels} panels (estimate {estimate:e})")]
    NonConvergence { value: Complex64, estimate: f64, panels: usize },
    #[error(transparent)]
    Domain(#[from] EvalError),
}

struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
    abs_mass: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken on position so the refinement order is reproducible
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gk15<F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel, EvalError>
where
    F: FnMut(f64) -> Result<Complex64, EvalError>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_mass = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        let pair = f1 + f2;
        kronrod += pair * WGK[j];
        abs_mass += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    Ok(Panel { lo, hi, value, error, abs_mass: abs_mass * half.abs() })
}

/// Adaptive integral of a complex-valued `f` over `[lo, hi]`.
///
/// Stops once the summed error estimate is at most `tol·(1 + |value|)`, or at
/// the rounding floor `50·ε·∫|f|` when that is larger.
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult, QuadError>
where
    F: FnMut(f64) -> Result<Complex64, EvalError>,
{
    let first = gk15(&mut f, lo, hi)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_mass = first.abs_mass;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    loop {
        let floor = 50.0 * f64::EPSILON * abs_mass;
        if error <= (tol * (1.0 + value.norm())).max(floor) {
            break;
        }
        if heap.len() >= PANEL_BUDGET {
            return Err(QuadError::NonConvergence { value, estimate: error, panels: heap.len() });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            return Err(QuadError::NonConvergence { value, estimate: error, panels: heap.len() + 1 });
        }
        let left = gk15(&mut f, worst.lo, mid)?;
        let right = gk15(&mut f, mid, worst.hi)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_mass += left.abs_mass + right.abs_mass - worst.abs_mass;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // resum to stop drift in the running totals
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
            abs_mass = heap.iter().map(|p| p.abs_mass).sum();
        }
    }
    Ok(QuadResult { value, abs_error_estimate: error.max(0.0), panels_used: heap.len() })
}

/// `∫₀¹ f(a + t·L) dt`, the normalized mean along the segment.
pub fn mean_on_segment(f: &Expr, s: &PhiSegment, tol: f64) -> Result<QuadResult, QuadError> {
    integrate(|t| f.eval(s.at(t)), 0.0, 1.0, tol)
}

/// `∫ f(x) dx` along the segment, i.e. `L·∫₀¹ f(a + t·L) dt`.
pub fn integrate_segment(f: &Expr, s: &PhiSegment, tol: f64) -> Result<QuadResult, QuadError> {
    let mean = mean_on_segment(f, s, tol)?;
    let l = s.displacement();
    Ok(QuadResult {
        value: mean.value * l,
        abs_error_estimate: mean.abs_error_estimate * l.norm(),
        panels_used: mean.panels_used,
    })
}

/// `∫₀¹ f(a + t·L) dt` as a complex number.
pub fn segment_mean(f: &Expr, s: &PhiSegment, tol: f64) -> Result<Complex64, QuadError> {
    Ok(mean_on_segment(f, s, tol)?.value)
}

/// Both sides of the trapezoid-side integration-by-parts identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentitySides {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl IdentitySides {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

/// `∫₀¹ (1−2t) f'(x(t)) dt` against `−[f(a)+f(x(1))]/L + 2/L²·∫f(x)dx`.
pub fn trapezoid_identity(f: &ScalarFn, s: &PhiSegment, tol: f64) -> Result<IdentitySides, QuadError> {
    let l = s.displacement();
    let lhs = integrate(|t| Ok(f.slope(s.at(t))? * (1.0 - 2.0 * t)), 0.0, 1.0, tol)?.value;
    let integral = integrate_segment(f.expr(), s, tol)?.value;
    let ends = f.value(s.start())? + f.value(s.endpoint())?;
    let rhs = -ends / l + integral * 2.0 / (l * l);
    Ok(IdentitySides { lhs, rhs })
}

/// `∫₀^½ t f'(x(t)) dt + ∫_½^1 (t−1) f'(x(t)) dt` against
/// `f(x(½))/L − 1/L²·∫f(x)dx`.
pub fn midpoint_identity(f: &ScalarFn, s: &PhiSegment, tol: f64) -> Result<IdentitySides, QuadError> {
    let l = s.displacement();
    let left = integrate(|t| Ok(f.slope(s.at(t))? * t), 0.0, 0.5, tol)?.value;
    let right = integrate(|t| Ok(f.slope(s.at(t))? * (t - 1.0)), 0.5, 1.0, tol)?.value;
    let integral = integrate_segment(f.expr(), s, tol)?.value;
    let rhs = f.value(s.midpoint_point())? / l - integral / (l * l);
    Ok(IdentitySides { lhs: left + right, rhs })
}

pub fn check_identity_eq4(f: &Expr, s: &PhiSegment, tol: f64) -> Result<f64, QuadError> {
    Ok(trapezoid_identity(&ScalarFn::new(f.clone()), s, tol)?.residual())
}

pub fn check_identity_eq7(f: &Expr, s: &PhiSegment, tol: f64) -> Result<f64, QuadError> {
    Ok(midpoint_identity(&ScalarFn::new(f.clone()), s, tol)?.residual())
}
