//! Left- and right-hand sides of every bound, the Hadamard chain, and the
//! per-theorem dispatcher that gates each bound on its hypothesis.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::convexity::{
    check_membership_with, sample_real, ClassKind, ConvexityError, ConvexityReport, PairMode, PathSamples,
    DEFAULT_SLACK, REAL_TOL,
};
use crate::exec::Execution;
use crate::expr::{EvalError, Expr, ScalarFn};
use crate::quadrature::{segment_mean, QuadError};
use crate::segment::{PhiSegment, SegmentError, SegmentGrid};

/// Relative slack for every `lhs ≤ rhs` judgment.
pub const BOUND_SLACK: f64 = 1e-8;
/// Node count of the along-path chord test used by the Hadamard chain.
pub const CHORD_GRID: usize = 65;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundError {
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error(transparent)]
    Segment(#[from] SegmentError),
    #[error("value {value} is not real")]
    NonReal { value: Complex64 },
}

impl BoundError {
    /// Short stable label used in report summaries.
    pub fn kind(&self) -> &'static str {
        match self {
            BoundError::Parameter(_) => "parameter",
            BoundError::Eval(_) | BoundError::Quadrature(QuadError::Domain(_)) => "domain",
            BoundError::Quadrature(QuadError::NonConvergence { .. }) => "non_convergence",
            BoundError::Convexity(ConvexityError::Eval(_)) => "domain",
            BoundError::Convexity(ConvexityError::NonReal { .. }) | BoundError::NonReal { .. } => "non_real",
            BoundError::Convexity(_) => "convexity",
            BoundError::Segment(_) => "segment",
        }
    }
}

/// Hölder exponent `p` and power-mean exponent `q`; each only where used.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HolderParams {
    pub p: Option<f64>,
    pub q: Option<f64>,
}

impl HolderParams {
    pub fn new(p: f64, q: f64) -> Self {
        HolderParams { p: Some(p), q: Some(q) }
    }

    pub fn with_p(p: f64) -> Self {
        HolderParams { p: Some(p), q: None }
    }

    pub fn with_q(q: f64) -> Self {
        HolderParams { p: None, q: Some(q) }
    }

    pub fn p(&self) -> Result<f64, BoundError> {
        match self.p {
            Some(p) if p > 1.0 && p.is_finite() => Ok(p),
            Some(p) => Err(BoundError::Parameter(format!("p must be a finite number > 1 (got {p})"))),
            None => Err(BoundError::Parameter("theorem needs --p".into())),
        }
    }

    /// Conjugate exponent `p/(p−1)`.
    pub fn r(&self) -> Result<f64, BoundError> {
        let p = self.p()?;
        Ok(p / (p - 1.0))
    }

    pub fn q(&self) -> Result<f64, BoundError> {
        match self.q {
            Some(q) if q >= 1.0 && q.is_finite() => Ok(q),
            Some(q) => Err(BoundError::Parameter(format!("q must be a finite number >= 1 (got {q})"))),
            None => Err(BoundError::Parameter("theorem needs --q".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Chain2,
    Tt2,
    Tt3,
    Tt4,
    Tt5,
    Tt6,
    Z,
    ZRelaxed,
    #[serde(rename = "quasi_trap")]
    QuasiTrapezoid,
    #[serde(rename = "quasi_trap_holder")]
    QuasiTrapezoidHolder,
    #[serde(rename = "quasi_mid")]
    QuasiMidpoint,
    #[serde(rename = "quasi_mid_holder")]
    QuasiMidpointHolder,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Chain2,
        TheoremId::Tt2,
        TheoremId::Tt3,
        TheoremId::Tt4,
        TheoremId::Tt5,
        TheoremId::Tt6,
        TheoremId::Z,
        TheoremId::ZRelaxed,
        TheoremId::QuasiTrapezoid,
        TheoremId::QuasiTrapezoidHolder,
        TheoremId::QuasiMidpoint,
        TheoremId::QuasiMidpointHolder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Chain2 => "chain2",
            TheoremId::Tt2 => "tt2",
            TheoremId::Tt3 => "tt3",
            TheoremId::Tt4 => "tt4",
            TheoremId::Tt5 => "tt5",
            TheoremId::Tt6 => "tt6",
            TheoremId::Z => "z",
            TheoremId::ZRelaxed => "z_relaxed",
            TheoremId::QuasiTrapezoid => "quasi_trap",
            TheoremId::QuasiTrapezoidHolder => "quasi_trap_holder",
            TheoremId::QuasiMidpoint => "quasi_mid",
            TheoremId::QuasiMidpointHolder => "quasi_mid_holder",
        }
    }

    pub fn needs_p(self) -> bool {
        matches!(
            self,
            TheoremId::Tt3 | TheoremId::Tt5 | TheoremId::Tt6 | TheoremId::QuasiTrapezoidHolder | TheoremId::QuasiMidpointHolder
        )
    }

    pub fn needs_q(self) -> bool {
        matches!(self, TheoremId::Z | TheoremId::ZRelaxed)
    }

    /// Which error quantity the bound controls; `None` for the chain.
    pub fn side(self) -> Option<Side> {
        match self {
            TheoremId::Chain2 => None,
            TheoremId::Tt2 | TheoremId::Tt3 | TheoremId::QuasiTrapezoid | TheoremId::QuasiTrapezoidHolder => {
                Some(Side::Trapezoid)
            }
            _ => Some(Side::Midpoint),
        }
    }

    /// Class and exponent the hypothesis demands of `|f'|`; `None` for the chain.
    pub fn hypothesis(self, params: &HolderParams) -> Result<Option<(ClassKind, f64)>, BoundError> {
        Ok(Some(match self {
            TheoremId::Chain2 => return Ok(None),
            TheoremId::Tt2 | TheoremId::Tt4 => (ClassKind::PhiConvex, 1.0),
            TheoremId::Tt3 | TheoremId::Tt5 | TheoremId::Tt6 => (ClassKind::PhiConvex, params.r()?),
            TheoremId::Z | TheoremId::ZRelaxed => (ClassKind::PhiConvex, params.q()?),
            TheoremId::QuasiTrapezoid | TheoremId::QuasiMidpoint => (ClassKind::QuasiPhiConvex, 1.0),
            TheoremId::QuasiTrapezoidHolder | TheoremId::QuasiMidpointHolder => {
                (ClassKind::QuasiPhiConvex, params.r()?)
            }
        }))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown theorem id `{0}`")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Trapezoid,
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    ViolatedWithHypothesis,
    HypothesisFalsified,
    Degenerate,
}

impl Status {
    pub const ALL: [Status; 4] =
        [Status::Holds, Status::ViolatedWithHypothesis, Status::HypothesisFalsified, Status::Degenerate];

    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::ViolatedWithHypothesis => "violated_with_hypothesis",
            Status::HypothesisFalsified => "hypothesis_falsified",
            Status::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    /// `f` is not a positive real at some sampled path point.
    CodomainNotPositive,
    /// `φ > π/2`.
    PhiOutsideTheoremRange,
    /// Some hypothesis node was shifted off an undefined point.
    PerturbedNodes,
    /// The midpoint Hölder bound's derivation starts from the trapezoid identity.
    ProofCitesTrapezoidIdentity,
    /// `f(a + e^{iφ}(b−a)) > f(b)`, so the last chain link is not covered.
    EndpointExceedsGenerator,
}

/// The four-term chain `f(mid) ≤ mean ≤ [f(a)+f(end)]/2 ≤ [f(a)+f(b)]/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HadamardChain {
    pub midpoint_value: f64,
    pub mean: f64,
    pub trapezoid: f64,
    pub generator_average: f64,
    pub midpoint_le_mean: bool,
    pub mean_le_trapezoid: bool,
    pub trapezoid_le_generator: bool,
    pub endpoint_exceeds_generator: bool,
    pub slack: f64,
}

impl HadamardChain {
    pub fn all_hold(&self) -> bool {
        self.midpoint_le_mean && self.mean_le_trapezoid && self.trapezoid_le_generator
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub theorem: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// `lhs/rhs`; 0 for `0/0`, absent when `rhs = 0 < lhs`.
    pub sharpness: Option<f64>,
    pub slack: f64,
    pub inequality_holds: bool,
    pub status: Status,
    pub hypothesis: ConvexityReport,
    pub flags: Vec<Flag>,
    /// Auxiliary value: the tt6 bound with the constant its derivation produces.
    pub aux_rhs: Option<f64>,
    pub chain: Option<HadamardChain>,
}

fn slack_for(rhs: f64) -> f64 {
    BOUND_SLACK * (1.0 + rhs.abs())
}

// ---------------------------------------------------------------------------
// closed-form right-hand sides in terms of A = |f'(a)|, B = |f'(b)|

/// `(u, v) / max(u, v)` with the max returned separately; all the power
/// formulas are positively homogeneous of degree one in `(A, B)`.
fn normalized(a: f64, b: f64) -> (f64, f64, f64) {
    let m = a.max(b);
    if m > 0.0 && m.is_finite() {
        (a / m, b / m, m)
    } else {
        (a, b, 1.0)
    }
}

fn power_mean2(wa: f64, a: f64, wb: f64, b: f64, s: f64) -> f64 {
    (wa * a.powf(s) + wb * b.powf(s)).powf(1.0 / s)
}

pub fn formula_tt2(len: f64, a: f64, b: f64) -> f64 {
    len / 8.0 * (a + b)
}

pub fn formula_tt3(len: f64, a: f64, b: f64, p: f64) -> f64 {
    let r = p / (p - 1.0);
    let (x, y, m) = normalized(a, b);
    len / (2.0 * (p + 1.0).powf(1.0 / p)) * m * power_mean2(0.5, x, 0.5, y, r)
}

pub fn formula_tt5(len: f64, a: f64, b: f64, p: f64) -> f64 {
    let r = p / (p - 1.0);
    let (x, y, m) = normalized(a, b);
    let bracket = power_mean2(3.0, x, 1.0, y, r) + power_mean2(1.0, x, 3.0, y, r);
    len / 16.0 * (4.0 / (p + 1.0)).powf(1.0 / p) * m * bracket
}

pub fn formula_tt6(len: f64, a: f64, b: f64, p: f64) -> f64 {
    len / 4.0 * (4.0 / (p + 1.0)).powf(1.0 / p) * (a + b)
}

/// tt6 with the constant `3^{(p−1)/p} + 1` in place of its upper bound 4.
pub fn formula_tt6_proof_constant(len: f64, a: f64, b: f64, p: f64) -> f64 {
    let s = (p - 1.0) / p;
    len / 16.0 * (4.0 / (p + 1.0)).powf(1.0 / p) * (3f64.powf(s) + 1.0) * (a + b)
}

pub fn formula_z(len: f64, a: f64, b: f64, q: f64) -> f64 {
    let (x, y, m) = normalized(a, b);
    let bracket = power_mean2(2.0 / 3.0, x, 1.0 / 3.0, y, q) + power_mean2(1.0 / 3.0, x, 2.0 / 3.0, y, q);
    len / 8.0 * m * bracket
}

pub fn formula_z_relaxed(len: f64, a: f64, b: f64, q: f64) -> f64 {
    len / 8.0 * (2f64.powf(1.0 / q) + 1.0) / 3f64.powf(1.0 / q) * (a + b)
}

pub fn formula_quasi(len: f64, a: f64, b: f64) -> f64 {
    len / 4.0 * a.max(b)
}

pub fn formula_quasi_holder(len: f64, a: f64, b: f64, p: f64) -> f64 {
    // [max(A^r, B^r)]^{1/r} = max(A, B)
    len / (2.0 * (p + 1.0).powf(1.0 / p)) * a.max(b)
}

/// Right-hand side of `theorem` from the two derivative magnitudes.
pub fn rhs_from_slopes(
    theorem: TheoremId,
    len: f64,
    a: f64,
    b: f64,
    params: &HolderParams,
) -> Result<f64, BoundError> {
    Ok(match theorem {
        TheoremId::Chain2 => {
            return Err(BoundError::Parameter("the Hadamard chain has no derivative bound".into()))
        }
        TheoremId::Tt2 | TheoremId::Tt4 => formula_tt2(len, a, b),
        TheoremId::Tt3 => formula_tt3(len, a, b, params.p()?),
        TheoremId::Tt5 => formula_tt5(len, a, b, params.p()?),
        TheoremId::Tt6 => formula_tt6(len, a, b, params.p()?),
        TheoremId::Z => formula_z(len, a, b, params.q()?),
        TheoremId::ZRelaxed => formula_z_relaxed(len, a, b, params.q()?),
        TheoremId::QuasiTrapezoid | TheoremId::QuasiMidpoint => formula_quasi(len, a, b),
        TheoremId::QuasiTrapezoidHolder | TheoremId::QuasiMidpointHolder => {
            formula_quasi_holder(len, a, b, params.p()?)
        }
    })
}

fn slopes(f: &Expr, s: &PhiSegment) -> Result<(f64, f64), BoundError> {
    let d = f.differentiate();
    Ok((d.eval(s.start())?.norm(), d.eval(s.generator())?.norm()))
}

fn rhs_of(theorem: TheoremId, f: &Expr, s: &PhiSegment, params: HolderParams) -> Result<f64, BoundError> {
    let (a, b) = slopes(f, s)?;
    rhs_from_slopes(theorem, s.length_factor(), a, b, &params)
}

pub fn rhs_tt2(f: &Expr, s: &PhiSegment) -> Result<f64, BoundError> {
    rhs_of(TheoremId::Tt2, f, s, HolderParams::default())
}

pub fn rhs_tt3(f: &Expr, s: &PhiSegment, p: f64) -> Result<f64, BoundError> {
    rhs_of(TheoremId::Tt3, f, s, HolderParams::with_p(p))
}

pub fn rhs_tt4(f: &Expr, s: &PhiSegment) -> Result<f64, BoundError> {
    rhs_of(TheoremId::Tt4, f, s, HolderParams::default())
}

pub fn rhs_tt5(f: &Expr, s: &PhiSegment, p: f64) -> Result<f64, BoundError> {
    rhs_of(TheoremId::Tt5, f, s, HolderParams::with_p(p))
}

pub fn rhs_tt6(f: &Expr, s: &PhiSegment, p: f64) -> Result<f64, BoundError> {
    rhs_of(TheoremId::Tt6, f, s, HolderParams::with_p(p))
}

pub fn rhs_z(f: &Expr, s: &PhiSegment, q: f64) -> Result<f64, BoundError> {
    rhs_of(TheoremId::Z, f, s, HolderParams::with_q(q))
}

pub fn rhs_z_relaxed(f: &Expr, s: &PhiSegment, q: f64) -> Result<f64, BoundError> {
    rhs_of(TheoremId::ZRelaxed, f, s, HolderParams::with_q(q))
}

pub fn rhs_quasi(f: &Expr, s: &PhiSegment, side: Side) -> Result<f64, BoundError> {
    let id = match side {
        Side::Trapezoid => TheoremId::QuasiTrapezoid,
        Side::Midpoint => TheoremId::QuasiMidpoint,
    };
    rhs_of(id, f, s, HolderParams::default())
}

pub fn rhs_quasi_holder(f: &Expr, s: &PhiSegment, p: f64, side: Side) -> Result<f64, BoundError> {
    let id = match side {
        Side::Trapezoid => TheoremId::QuasiTrapezoidHolder,
        Side::Midpoint => TheoremId::QuasiMidpointHolder,
    };
    rhs_of(id, f, s, HolderParams::with_p(p))
}

/// `|mean − (f(a) + f(end))/2|`.
pub fn lhs_trapezoid(f: &Expr, s: &PhiSegment, tol: f64) -> Result<f64, BoundError> {
    let mean = segment_mean(f, s, tol)?;
    Ok((mean - (f.eval(s.start())? + f.eval(s.endpoint())?) / 2.0).norm())
}

/// `|mean − f(mid)|`.
pub fn lhs_midpoint(f: &Expr, s: &PhiSegment, tol: f64) -> Result<f64, BoundError> {
    let mean = segment_mean(f, s, tol)?;
    Ok((mean - f.eval(s.midpoint_point())?).norm())
}

// ---------------------------------------------------------------------------
// per-instance cache

/// Everything the theorems share for one `(f, segment)` pair.
#[derive(Debug, Clone)]
pub struct Instance {
    pub f: ScalarFn,
    pub segment: PhiSegment,
    pub tol: f64,
    pub grid: usize,
    pub mean: Complex64,
    pub f_start: Complex64,
    pub f_end: Complex64,
    pub f_mid: Complex64,
    pub f_generator: Complex64,
    /// `|f'(a)|`, `|f'(b)|`.
    pub slope_a: f64,
    pub slope_b: f64,
    /// `|f'|` along the path with anchors at `a` and `b`.
    pub slopes: PathSamples,
    pub codomain_positive: bool,
}

impl Instance {
    pub fn new(f: &ScalarFn, s: PhiSegment, tol: f64, grid: usize) -> Result<Self, BoundError> {
        Self::with_execution(f, s, tol, grid, Execution::Sequential)
    }

    pub fn with_execution(
        f: &ScalarFn,
        s: PhiSegment,
        tol: f64,
        grid: usize,
        exec: Execution,
    ) -> Result<Self, BoundError> {
        let mesh = SegmentGrid::new(s, grid)?;
        let mean = segment_mean(f.expr(), &s, tol)?;
        let slopes = PathSamples::sample(&mesh, exec, |z| f.abs_slope(z))?;
        let positive = |v: Complex64| v.re > 0.0 && v.im.abs() <= REAL_TOL * (1.0 + v.re.abs());
        let coarse = SegmentGrid::new(s, CHORD_GRID.min(grid))?;
        let codomain_positive = (0..coarse.len()).all(|k| f.value(coarse.point(k)).map_or(true, positive));
        Ok(Instance {
            mean,
            f_start: f.value(s.start())?,
            f_end: f.value(s.endpoint())?,
            f_mid: f.value(s.midpoint_point())?,
            f_generator: f.value(s.generator())?,
            slope_a: f.abs_slope(s.start())?,
            slope_b: f.abs_slope(s.generator())?,
            slopes,
            codomain_positive,
            f: f.clone(),
            segment: s,
            tol,
            grid,
        })
    }

    pub fn lhs(&self, side: Side) -> f64 {
        match side {
            Side::Trapezoid => (self.mean - (self.f_start + self.f_end) / 2.0).norm(),
            Side::Midpoint => (self.mean - self.f_mid).norm(),
        }
    }

    pub fn rhs(&self, theorem: TheoremId, params: &HolderParams) -> Result<f64, BoundError> {
        rhs_from_slopes(theorem, self.segment.length_factor(), self.slope_a, self.slope_b, params)
    }

    fn base_flags(&self) -> Vec<Flag> {
        let mut flags = Vec::new();
        if !self.codomain_positive {
            flags.push(Flag::CodomainNotPositive);
        }
        if !self.segment.in_theorem_range() {
            flags.push(Flag::PhiOutsideTheoremRange);
        }
        flags
    }

    /// Evaluates one theorem on this instance.
    pub fn evaluate(&self, theorem: TheoremId, params: &HolderParams) -> Result<BoundResult, BoundError> {
        let Some((kind, exponent)) = theorem.hypothesis(params)? else {
            return self.evaluate_chain();
        };
        let side = theorem.side().expect("derivative bounds have a side");
        let samples = if exponent == 1.0 { self.slopes.clone() } else { self.slopes.powered(exponent) };
        let target = if exponent == 1.0 { "|f'|".to_string() } else { format!("|f'|^{exponent}") };
        let hypothesis =
            check_membership_with(&samples, kind, DEFAULT_SLACK, PairMode::Anchored, Execution::Sequential, &target)?;
        let lhs = self.lhs(side);
        let rhs = self.rhs(theorem, params)?;
        let mut flags = self.base_flags();
        if hypothesis.perturbed_nodes > 0 {
            flags.push(Flag::PerturbedNodes);
        }
        if theorem == TheoremId::QuasiMidpointHolder {
            flags.push(Flag::ProofCitesTrapezoidIdentity);
        }
        let aux_rhs = if theorem == TheoremId::Tt6 {
            Some(formula_tt6_proof_constant(self.segment.length_factor(), self.slope_a, self.slope_b, params.p()?))
        } else {
            None
        };
        let slack = slack_for(rhs);
        Ok(assemble(theorem, lhs, rhs, slack, lhs <= rhs + slack, hypothesis, flags, aux_rhs, None))
    }

    fn evaluate_chain(&self) -> Result<BoundResult, BoundError> {
        let s = self.segment;
        let grid = SegmentGrid::new(s, self.grid)?;
        let values = sample_real(self.f.expr(), &grid, Execution::Sequential)?;
        let chain = chain_from_values(self.mean, self.f_mid, self.f_start, self.f_end, self.f_generator)?;
        let mut hypothesis = check_membership_with(
            &values,
            ClassKind::PhiConvex,
            DEFAULT_SLACK,
            PairMode::Anchored,
            Execution::Sequential,
            "f",
        )?;
        if hypothesis.certified() {
            let coarse = SegmentGrid::new(s, CHORD_GRID.min(self.grid))?;
            let chords = sample_real(self.f.expr(), &coarse, Execution::Sequential)?;
            let along = check_membership_with(
                &chords,
                ClassKind::PhiConvex,
                DEFAULT_SLACK,
                PairMode::AllPairs,
                Execution::Sequential,
                "f",
            )?;
            if !along.certified() {
                hypothesis = along;
            }
        }
        let mut flags = self.base_flags();
        if hypothesis.perturbed_nodes > 0 {
            flags.push(Flag::PerturbedNodes);
        }
        if chain.endpoint_exceeds_generator {
            flags.push(Flag::EndpointExceedsGenerator);
        }
        let lhs = chain.mean - chain.midpoint_value;
        let rhs = chain.generator_average - chain.midpoint_value;
        let holds = chain.all_hold();
        Ok(assemble(TheoremId::Chain2, lhs, rhs, chain.slack, holds, hypothesis, flags, None, Some(chain)))
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    theorem: TheoremId,
    lhs: f64,
    rhs: f64,
    slack: f64,
    inequality_holds: bool,
    hypothesis: ConvexityReport,
    flags: Vec<Flag>,
    aux_rhs: Option<f64>,
    chain: Option<HadamardChain>,
) -> BoundResult {
    let status = if !hypothesis.certified() {
        Status::HypothesisFalsified
    } else if rhs == 0.0 && lhs.abs() <= slack {
        Status::Degenerate
    } else if !inequality_holds {
        Status::ViolatedWithHypothesis
    } else {
        Status::Holds
    };
    let sharpness = if rhs > 0.0 {
        Some(lhs / rhs)
    } else if lhs.abs() <= slack {
        Some(0.0)
    } else {
        None
    };
    BoundResult {
        theorem,
        lhs,
        rhs,
        margin: rhs - lhs,
        sharpness,
        slack,
        inequality_holds,
        status,
        hypothesis,
        flags,
        aux_rhs,
        chain,
    }
}

fn real(v: Complex64) -> Result<f64, BoundError> {
    if v.im.abs() > REAL_TOL * (1.0 + v.re.abs()) {
        return Err(BoundError::NonReal { value: v });
    }
    Ok(v.re)
}

fn chain_from_values(
    mean: Complex64,
    f_mid: Complex64,
    f_start: Complex64,
    f_end: Complex64,
    f_generator: Complex64,
) -> Result<HadamardChain, BoundError> {
    let (mean, mid, start, end, gen) = (real(mean)?, real(f_mid)?, real(f_start)?, real(f_end)?, real(f_generator)?);
    let trapezoid = (start + end) / 2.0;
    let generator_average = (start + gen) / 2.0;
    let scale = [mean, mid, trapezoid, generator_average].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let slack = slack_for(scale);
    Ok(HadamardChain {
        midpoint_value: mid,
        mean,
        trapezoid,
        generator_average,
        midpoint_le_mean: mid <= mean + slack,
        mean_le_trapezoid: mean <= trapezoid + slack,
        trapezoid_le_generator: trapezoid <= generator_average + slack,
        endpoint_exceeds_generator: end > gen + slack,
        slack,
    })
}

/// The four-term chain for `f` on `s`. Requires `f` real along the path.
pub fn check_hadamard_chain(f: &Expr, s: &PhiSegment, tol: f64, grid: usize) -> Result<HadamardChain, BoundError> {
    SegmentGrid::new(*s, grid)?;
    let mean = segment_mean(f, s, tol)?;
    chain_from_values(mean, f.eval(s.midpoint_point())?, f.eval(s.start())?, f.eval(s.endpoint())?, f.eval(s.generator())?)
}

/// One-shot dispatcher: hypothesis check, both sides, status.
pub fn evaluate(
    theorem: TheoremId,
    f: &Expr,
    s: &PhiSegment,
    params: &HolderParams,
    tol: f64,
    grid: usize,
) -> Result<BoundResult, BoundError> {
    Instance::new(&ScalarFn::new(f.clone()), *s, tol, grid)?.evaluate(theorem, params)
}
