//! Static descriptions of each bound.

use crate::bounds::{TheoremId, UnknownTheorem};

struct Entry {
    title: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    hypothesis: &'static str,
    params: &'static str,
    note: &'static str,
}

const TRAP: &str = "|mean − (f(a) + f(a + e^{iφ}(b−a)))/2|";
const MID: &str = "|mean − f(a + e^{iφ}(b−a)/2)|";

fn entry(id: TheoremId) -> Entry {
    match id {
        TheoremId::Chain2 => Entry {
            title: "Hadamard chain",
            lhs: "f(mid) ≤ mean ≤ (f(a) + f(a + e^{iφ}(b−a)))/2",
            rhs: "≤ (f(a) + f(b))/2",
            hypothesis: "f φ-convex: f(a + t e^{iφ}(b−a)) ≤ (1−t) f(a) + t f(b), plus chord convexity along the path",
            params: "none",
            note: "f must be real on the path; the last link needs f(a + e^{iφ}(b−a)) ≤ f(b)",
        },
        TheoremId::Tt2 => Entry {
            title: "trapezoid bound",
            lhs: TRAP,
            rhs: "(b−a)/8 (|f'(a)|+|f'(b)|)",
            hypothesis: "|f'| φ-convex",
            params: "none",
            note: "",
        },
        TheoremId::Tt3 => Entry {
            title: "trapezoid bound, Hölder form",
            lhs: TRAP,
            rhs: "(b−a)/(2 (p+1)^(1/p)) ((|f'(a)|^r + |f'(b)|^r)/2)^(1/r),  r = p/(p−1)",
            hypothesis: "|f'|^r φ-convex",
            params: "p > 1",
            note: "",
        },
        TheoremId::Tt4 => Entry {
            title: "midpoint bound",
            lhs: MID,
            rhs: "(b−a)/8 (|f'(a)|+|f'(b)|)",
            hypothesis: "|f'| φ-convex",
            params: "none",
            note: "",
        },
        TheoremId::Tt5 => Entry {
            title: "midpoint bound, Hölder form",
            lhs: MID,
            rhs: "(b−a)/16 (4/(p+1))^(1/p) [(3|f'(a)|^r + |f'(b)|^r)^(1/r) + (|f'(a)|^r + 3|f'(b)|^r)^(1/r)],  r = p/(p−1)",
            hypothesis: "|f'|^r φ-convex",
            params: "p > 1",
            note: "",
        },
        TheoremId::Tt6 => Entry {
            title: "midpoint bound, relaxed Hölder form",
            lhs: MID,
            rhs: "(b−a)/4 (4/(p+1))^(1/p) (|f'(a)|+|f'(b)|)",
            hypothesis: "|f'|^r φ-convex, r = p/(p−1)",
            params: "p > 1",
            note: "reports aux_rhs = (b−a)/16 (4/(p+1))^(1/p) (3^(1/r) + 1) (|f'(a)|+|f'(b)|), the constant before 3^(1/r) + 1 ≤ 4 is applied",
        },
        TheoremId::Z => Entry {
            title: "midpoint bound, power-mean form",
            lhs: MID,
            rhs: "(b−a)/8 [((2|f'(a)|^q + |f'(b)|^q)/3)^(1/q) + ((|f'(a)|^q + 2|f'(b)|^q)/3)^(1/q)]",
            hypothesis: "|f'|^q φ-convex",
            params: "q ≥ 1",
            note: "at q = 1 this equals (b−a)/8 (|f'(a)|+|f'(b)|)",
        },
        TheoremId::ZRelaxed => Entry {
            title: "midpoint bound, relaxed power-mean form",
            lhs: MID,
            rhs: "(b−a)/8 (2^(1/q) + 1)/3^(1/q) (|f'(a)|+|f'(b)|)",
            hypothesis: "|f'|^q φ-convex",
            params: "q ≥ 1",
            note: "never smaller than the power-mean form",
        },
        TheoremId::QuasiTrapezoid => Entry {
            title: "trapezoid bound, quasi-convex derivative",
            lhs: TRAP,
            rhs: "(b−a)/4 max(|f'(a)|, |f'(b)|)",
            hypothesis: "|f'| quasi-φ-convex",
            params: "none",
            note: "",
        },
        TheoremId::QuasiTrapezoidHolder => Entry {
            title: "trapezoid bound, quasi-convex derivative, Hölder form",
            lhs: TRAP,
            rhs: "(b−a)/(2 (p+1)^(1/p)) [max(|f'(a)|^r, |f'(b)|^r)]^(1/r),  r = p/(p−1)",
            hypothesis: "|f'|^r quasi-φ-convex",
            params: "p > 1",
            note: "",
        },
        TheoremId::QuasiMidpoint => Entry {
            title: "midpoint bound, quasi-convex derivative",
            lhs: MID,
            rhs: "(b−a)/4 max(|f'(a)|, |f'(b)|)",
            hypothesis: "|f'| quasi-φ-convex",
            params: "none",
            note: "",
        },
        TheoremId::QuasiMidpointHolder => Entry {
            title: "midpoint bound, quasi-convex derivative, Hölder form",
            lhs: MID,
            rhs: "(b−a)/(2 (p+1)^(1/p)) [max(|f'(a)|^r, |f'(b)|^r)]^(1/r),  r = p/(p−1)",
            hypothesis: "|f'|^r quasi-φ-convex",
            params: "p > 1",
            note: "its derivation starts from the trapezoid identity; results carry the proof_cites_trapezoid_identity flag",
        },
    }
}

/// Formula, hypothesis and parameters for a theorem id.
pub fn explain(id: &str) -> Result<String, UnknownTheorem> {
    let theorem: TheoremId = id.parse()?;
    let e = entry(theorem);
    let mut text = format!(
        "{theorem}: {}\n  lhs:        {}\n  rhs:        {}\n  hypothesis: {}\n  parameters: {}\n",
        e.title, e.lhs, e.rhs, e.hypothesis, e.params
    );
    if !e.note.is_empty() {
        text.push_str(&format!("  note:       {}\n", e.note));
    }
    text.push_str("  mean = ∫₀¹ f(a + t e^{iφ}(b−a)) dt; (b−a) is the modulus of e^{iφ}(b−a)\n");
    Ok(text)
}
