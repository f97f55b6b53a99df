//! Built-in test functions with the segment ranges they are safe on.

use std::f64::consts::PI;

use serde::Serialize;

/// Expected verdicts on real segments (`φ = 0`) inside the safe ranges.
/// `None` means the verdict depends on the segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Expected {
    pub slope_phi_convex: Option<bool>,
    pub slope_quasi_phi_convex: Option<bool>,
    pub f_phi_convex: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    pub expr: String,
    pub note: String,
    /// Range for the start point `a`.
    pub a_range: (f64, f64),
    /// Range for `b − a`.
    pub len_range: (f64, f64),
    /// Fixed angle choices; `None` uses the sampler's angles.
    pub phis: Option<Vec<f64>>,
    /// Holomorphic with no singularity reachable from the safe ranges.
    pub smooth: bool,
    /// `f > 0` on every real point the safe ranges reach.
    pub positive: bool,
    pub expected: Expected,
}

struct Spec {
    id: &'static str,
    expr: &'static str,
    note: &'static str,
    a: (f64, f64),
    smooth: bool,
    positive: bool,
    real_only: bool,
    expected: [Option<bool>; 3],
}

const WIDE: (f64, f64) = (-2.0, 2.0);
const RIGHT: (f64, f64) = (0.2, 2.0);

const SPECS: [Spec; 15] = [
    Spec { id: "square", expr: "x^2", note: "entire; |f'| = 2|x|", a: WIDE, smooth: true, positive: false, real_only: false, expected: [Some(true), Some(true), Some(true)] },
    Spec { id: "square_plus_one", expr: "x^2+1", note: "entire; positive on the real line", a: WIDE, smooth: true, positive: true, real_only: false, expected: [Some(true), Some(true), Some(true)] },
    Spec { id: "exp", expr: "exp(x)", note: "entire; log-convex", a: WIDE, smooth: true, positive: true, real_only: false, expected: [Some(true), Some(true), Some(true)] },
    Spec { id: "cubic", expr: "x^3+x", note: "entire; |f'| = 3x^2 + 1 on the real line", a: WIDE, smooth: true, positive: false, real_only: false, expected: [Some(true), Some(true), None] },
    Spec { id: "sine", expr: "sin(x)", note: "entire; |f'| = |cos x| changes shape", a: WIDE, smooth: true, positive: false, real_only: false, expected: [None, None, None] },
    Spec { id: "cosh2", expr: "exp(x)+exp(-x)", note: "entire; |f'| = 2|sinh x|", a: WIDE, smooth: true, positive: true, real_only: false, expected: [Some(true), Some(true), Some(true)] },
    Spec { id: "neg_abs", expr: "-abs(x)", note: "not convex; linear along each real path, f' undefined at 0", a: WIDE, smooth: false, positive: false, real_only: true, expected: [Some(true), Some(true), None] },
    Spec { id: "log", expr: "ln(x)", note: "pole at 0, branch cut on the negative axis", a: RIGHT, smooth: true, positive: false, real_only: false, expected: [Some(true), Some(true), Some(false)] },
    Spec { id: "sqrt", expr: "sqrt(x)", note: "branch point at 0", a: RIGHT, smooth: true, positive: true, real_only: false, expected: [Some(true), Some(true), Some(false)] },
    Spec { id: "recip", expr: "1/x", note: "pole at 0", a: RIGHT, smooth: true, positive: true, real_only: false, expected: [Some(true), Some(true), Some(true)] },
    Spec { id: "abs_sq", expr: "abs(x)^2+1", note: "equals x^2 + 1 on the real line; not holomorphic", a: WIDE, smooth: false, positive: true, real_only: true, expected: [Some(true), Some(true), Some(true)] },
    Spec { id: "staircase", expr: "x+sin(x)", note: "monotone, |f'| = 1 + cos x is not convex", a: WIDE, smooth: true, positive: false, real_only: false, expected: [None, None, None] },
    Spec { id: "double_well", expr: "x^4-2*x^2", note: "entire; two minima", a: WIDE, smooth: true, positive: false, real_only: false, expected: [None, None, None] },
    Spec { id: "const", expr: "3", note: "zero derivative", a: WIDE, smooth: true, positive: true, real_only: false, expected: [Some(true), Some(true), Some(true)] },
    Spec { id: "linear", expr: "2*x+1", note: "both midpoint and trapezoid rules exact", a: WIDE, smooth: true, positive: false, real_only: false, expected: [Some(true), Some(true), Some(true)] },
];

/// The built-in corpus in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    SPECS
        .iter()
        .map(|s| CorpusEntry {
            id: s.id.to_string(),
            expr: s.expr.to_string(),
            note: s.note.to_string(),
            a_range: s.a,
            len_range: (0.1, 3.0),
            // abs is not holomorphic, so only paths along the real axis are
            // meaningful; pi reflects the path to the left of a
            phis: s.real_only.then(|| vec![0.0, PI]),
            smooth: s.smooth,
            positive: s.positive,
            expected: Expected {
                slope_phi_convex: s.expected[0],
                slope_quasi_phi_convex: s.expected[1],
                f_phi_convex: s.expected[2],
            },
        })
        .collect()
}

pub fn find(id: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.id == id)
}

/// An ad-hoc entry from a config file; it uses the sampler ranges as given.
pub fn custom(id: &str, expr: &str) -> CorpusEntry {
    CorpusEntry {
        id: id.to_string(),
        expr: expr.to_string(),
        note: "user supplied".to_string(),
        a_range: (f64::NEG_INFINITY, f64::INFINITY),
        len_range: (0.0, f64::INFINITY),
        phis: None,
        smooth: false,
        positive: false,
        expected: Expected::default(),
    }
}
