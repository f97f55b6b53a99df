//! Grid-based membership tests for φ-convex, quasi-φ-convex and
//! log-φ-convex functions along one rotated segment.
//!
//! A quantity `g` is sampled on the path nodes `x(t_k)` and compared with the
//! class bound built from two anchor values: `g(u)` at `u = a` and `g(v)` at
//! the real generator `v = b`. For `φ = 0` the generator is the path end.
//! Verdicts only speak for the sampled nodes, hence the `OnGrid` naming.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exec::{map_indexed, Execution};
use crate::expr::{EvalError, Expr};
use crate::segment::{PhiSegment, SegmentError, SegmentGrid};

pub const DEFAULT_GRID: usize = 1025;
pub const DEFAULT_SLACK: f64 = 1e-9;
/// Shift applied to a node whose value is undefined (e.g. `abs` at 0).
pub const PERTURBATION: f64 = 1e-9;
/// Imaginary parts above this (relative to `1 + |re|`) make a value non-real.
pub const REAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    PhiConvex,
    QuasiPhiConvex,
    LogPhiConvex,
}

impl ClassKind {
    /// Upper bound at path parameter `lambda` between anchor values `gu`, `gv`.
    pub fn bound(self, gu: f64, gv: f64, lambda: f64) -> f64 {
        match self {
            ClassKind::PhiConvex => (1.0 - lambda) * gu + lambda * gv,
            ClassKind::QuasiPhiConvex => gu.max(gv),
            ClassKind::LogPhiConvex => ((1.0 - lambda) * gu.ln() + lambda * gv.ln()).exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedOnGrid,
    Falsified,
}

/// Which `(u, v)` pairs are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    /// Only the segment's own pair `(a, b)`.
    #[default]
    Anchored,
    /// The anchored pair plus every pair of grid nodes along the path.
    AllPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Path parameter of `u` (0 for the anchored pair).
    pub t1: f64,
    /// Path parameter of `v` (1 for the anchored pair, standing for the generator).
    pub t2: f64,
    pub lambda: f64,
    pub violation: f64,
}

impl Witness {
    fn beats(&self, other: &Witness) -> bool {
        match self.violation.total_cmp(&other.violation) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                (self.t1, self.t2, self.lambda) < (other.t1, other.t2, other.lambda)
            }
        }
    }
}

fn pick(a: Option<Witness>, b: Option<Witness>) -> Option<Witness> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.beats(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub kind: ClassKind,
    /// What was tested, e.g. `|f'|^2`.
    pub target: String,
    pub verdict: Verdict,
    /// Worst violation; present whenever the verdict is `Falsified`.
    pub witness: Option<Witness>,
    /// Largest `g − bound` seen (negative when every node has room).
    pub max_violation: f64,
    pub grid: usize,
    /// Absolute slack applied to each comparison.
    pub slack: f64,
    pub mode: PairMode,
    pub perturbed_nodes: usize,
}

impl ConvexityReport {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::CertifiedOnGrid
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConvexityError {
    #[error("log-convexity needs positive values; got {value} at t={t}")]
    NonPositive { t: f64, value: f64 },
    #[error("value {value} at t={t} is not real")]
    NonReal { t: f64, value: Complex64 },
    #[error("sample is not a number at t={t}")]
    NotANumber { t: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Segment(#[from] SegmentError),
}

/// Values of a real quantity along the path plus its two anchor values.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSamples {
    pub t: Vec<f64>,
    pub values: Vec<f64>,
    pub anchor_u: f64,
    pub anchor_v: f64,
    pub perturbed: usize,
}

impl PathSamples {
    /// Samples built from a function of `t` alone; anchors are `g(0)` and `g(1)`.
    pub fn from_fn(n: usize, g: impl Fn(f64) -> f64) -> Self {
        let t: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
        let values: Vec<f64> = t.iter().map(|&t| g(t)).collect();
        PathSamples {
            anchor_u: values[0],
            anchor_v: values[n - 1],
            t,
            values,
            perturbed: 0,
        }
    }

    /// Samples `g` at every grid node and at the anchors `a` and `b`.
    ///
    /// A node where `g` fails is retried once at `t ± 1e-9`; the count of such
    /// nodes is kept in `perturbed`.
    pub fn sample<G>(grid: &SegmentGrid, exec: Execution, g: G) -> Result<Self, EvalError>
    where
        G: Fn(Complex64) -> Result<f64, EvalError> + Sync + Send,
    {
        let seg = grid.segment;
        let at = |t: f64| -> Result<(f64, f64, bool), EvalError> {
            match g(seg.at(t)) {
                Ok(v) => Ok((t, v, false)),
                Err(first) => {
                    let shifted = if t + PERTURBATION <= 1.0 { t + PERTURBATION } else { t - PERTURBATION };
                    g(seg.at(shifted)).map(|v| (shifted, v, true)).map_err(|_| first)
                }
            }
        };
        let nodes = map_indexed(exec, grid.len(), |k| at(grid.t(k)));
        let mut t = Vec::with_capacity(nodes.len());
        let mut values = Vec::with_capacity(nodes.len());
        let mut perturbed = 0;
        for node in nodes {
            let (tk, v, moved) = node?;
            t.push(tk);
            values.push(v);
            perturbed += usize::from(moved);
        }
        let (anchor_u, moved_u) = match g(seg.start()) {
            Ok(v) => (v, false),
            Err(first) => (g(seg.at(PERTURBATION)).map_err(|_| first)?, true),
        };
        let b = seg.generator();
        let (anchor_v, moved_v) = match g(b) {
            Ok(v) => (v, false),
            Err(first) => {
                let back = Complex64::new(seg.b() - PERTURBATION * seg.length_factor(), 0.0);
                (g(back).map_err(|_| first)?, true)
            }
        };
        perturbed += usize::from(moved_u) + usize::from(moved_v);
        Ok(PathSamples { t, values, anchor_u, anchor_v, perturbed })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Larger anchor magnitude; slack is measured against it.
    pub fn scale(&self) -> f64 {
        self.anchor_u.abs().max(self.anchor_v.abs())
    }

    /// `g^r` divided by the larger anchor's `g^r`.
    ///
    /// All three class inequalities are invariant under a positive common
    /// factor, so this only keeps large exponents in floating-point range.
    pub fn powered(&self, r: f64) -> PathSamples {
        let m = self.anchor_u.abs().max(self.anchor_v.abs());
        let m = if m > 0.0 && m.is_finite() { m } else { 1.0 };
        let p = |v: f64| (v / m).powf(r);
        PathSamples {
            t: self.t.clone(),
            values: self.values.iter().map(|&v| p(v)).collect(),
            anchor_u: p(self.anchor_u),
            anchor_v: p(self.anchor_v),
            perturbed: self.perturbed,
        }
    }
}

fn violation(g: f64, bound: f64) -> f64 {
    let v = g - bound;
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn anchored_worst(s: &PathSamples, kind: ClassKind) -> Option<Witness> {
    let mut best: Option<Witness> = None;
    for (&t, &g) in s.t.iter().zip(&s.values) {
        let w = Witness {
            t1: 0.0,
            t2: 1.0,
            lambda: t,
            violation: violation(g, kind.bound(s.anchor_u, s.anchor_v, t)),
        };
        best = pick(best, Some(w));
    }
    best
}

fn pairs_worst(s: &PathSamples, kind: ClassKind, exec: Execution) -> Option<Witness> {
    let n = s.len();
    let per_start = map_indexed(exec, n, |i| {
        let mut best: Option<Witness> = None;
        for j in i + 2..n {
            let (ti, tj) = (s.t[i], s.t[j]);
            for k in i + 1..j {
                let lambda = (s.t[k] - ti) / (tj - ti);
                let w = Witness {
                    t1: ti,
                    t2: tj,
                    lambda,
                    violation: violation(s.values[k], kind.bound(s.values[i], s.values[j], lambda)),
                };
                best = pick(best, Some(w));
            }
        }
        best
    });
    per_start.into_iter().fold(None, pick)
}

fn check_positive(s: &PathSamples) -> Result<(), ConvexityError> {
    if s.anchor_u <= 0.0 {
        return Err(ConvexityError::NonPositive { t: 0.0, value: s.anchor_u });
    }
    if s.anchor_v <= 0.0 {
        return Err(ConvexityError::NonPositive { t: 1.0, value: s.anchor_v });
    }
    for (&t, &v) in s.t.iter().zip(&s.values) {
        if v.is_nan() {
            return Err(ConvexityError::NotANumber { t });
        }
        if v <= 0.0 {
            return Err(ConvexityError::NonPositive { t, value: v });
        }
    }
    Ok(())
}

/// Anchored membership test with the given relative slack.
pub fn check_membership(
    samples: &PathSamples,
    kind: ClassKind,
    slack: f64,
) -> Result<ConvexityReport, ConvexityError> {
    check_membership_with(samples, kind, slack, PairMode::Anchored, Execution::Sequential, "g")
}

/// Full membership test. The absolute slack is `slack·(1 + scale)`, where
/// `scale` is the larger anchor magnitude.
pub fn check_membership_with(
    samples: &PathSamples,
    kind: ClassKind,
    slack: f64,
    mode: PairMode,
    exec: Execution,
    target: &str,
) -> Result<ConvexityReport, ConvexityError> {
    if kind == ClassKind::LogPhiConvex {
        check_positive(samples)?;
    }
    let mut worst = anchored_worst(samples, kind);
    if mode == PairMode::AllPairs {
        worst = pick(worst, pairs_worst(samples, kind, exec));
    }
    let abs_slack = slack * (1.0 + samples.scale());
    let max_violation = worst.map_or(f64::NEG_INFINITY, |w| w.violation);
    let falsified = max_violation > abs_slack;
    let cap = |w: Witness| Witness { violation: w.violation.min(f64::MAX), ..w };
    Ok(ConvexityReport {
        kind,
        target: target.to_string(),
        verdict: if falsified { Verdict::Falsified } else { Verdict::CertifiedOnGrid },
        witness: if falsified { worst.map(cap) } else { None },
        max_violation: max_violation.clamp(-f64::MAX, f64::MAX),
        grid: samples.len(),
        slack: abs_slack,
        mode,
        perturbed_nodes: samples.perturbed,
    })
}

/// Samples a real-valued `f` along the segment, rejecting non-real values.
pub fn sample_real(f: &Expr, grid: &SegmentGrid, exec: Execution) -> Result<PathSamples, ConvexityError> {
    let real = |z: Complex64| -> Result<f64, EvalError> { f.eval(z).map(|v| v.re) };
    let samples = PathSamples::sample(grid, exec, real)?;
    let seg = grid.segment;
    let check = |t: f64, z: Complex64| -> Result<(), ConvexityError> {
        let v = f.eval(z)?;
        if v.im.abs() > REAL_TOL * (1.0 + v.re.abs()) {
            return Err(ConvexityError::NonReal { t, value: v });
        }
        Ok(())
    };
    for &t in &samples.t {
        check(t, seg.at(t))?;
    }
    check(0.0, seg.start())?;
    check(1.0, seg.generator())?;
    Ok(samples)
}

/// The three class verdicts for `f` itself and the pointwise ordering of
/// their bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicationChain {
    pub log_phi_convex: ConvexityReport,
    pub phi_convex: ConvexityReport,
    pub quasi_phi_convex: ConvexityReport,
    /// `log bound ≤ φ bound ≤ quasi bound` at every node, within slack.
    pub bounds_ordered: bool,
    /// Largest excess of a lower bound over the next one in the chain.
    pub worst_ordering_gap: f64,
    /// Certified(log) ⇒ certified(φ) ⇒ certified(quasi).
    pub implication_respected: bool,
}

pub fn check_implication_chain(
    f: &Expr,
    s: &PhiSegment,
    grid: usize,
    slack: f64,
) -> Result<ImplicationChain, ConvexityError> {
    let grid = SegmentGrid::new(*s, grid)?;
    let samples = sample_real(f, &grid, Execution::Sequential)?;
    check_positive(&samples)?;
    implication_chain_from(&samples, slack)
}

pub fn implication_chain_from(samples: &PathSamples, slack: f64) -> Result<ImplicationChain, ConvexityError> {
    let report = |kind| {
        check_membership_with(samples, kind, slack, PairMode::Anchored, Execution::Sequential, "f")
    };
    let log = report(ClassKind::LogPhiConvex)?;
    let phi = report(ClassKind::PhiConvex)?;
    let quasi = report(ClassKind::QuasiPhiConvex)?;
    let (gu, gv) = (samples.anchor_u, samples.anchor_v);
    let abs_slack = slack * (1.0 + samples.scale());
    let worst_gap = samples
        .t
        .iter()
        .map(|&t| {
            let lb = ClassKind::LogPhiConvex.bound(gu, gv, t);
            let pb = ClassKind::PhiConvex.bound(gu, gv, t);
            let qb = ClassKind::QuasiPhiConvex.bound(gu, gv, t);
            (lb - pb).max(pb - qb)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let implication_respected =
        (!log.certified() || phi.certified()) && (!phi.certified() || quasi.certified());
    Ok(ImplicationChain {
        bounds_ordered: worst_gap <= abs_slack,
        worst_ordering_gap: worst_gap,
        implication_respected,
        log_phi_convex: log,
        phi_convex: phi,
        quasi_phi_convex: quasi,
    })
}
