use num_complex::Complex64;

use super::{BinOp, Expr, Func};

/// Why an expression has no finite value at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    /// Division by zero or `ln(0)`.
    Pole,
    /// Principal-branch function evaluated on its cut (the negative real axis).
    BranchCut,
    /// Finite inputs produced a non-finite result.
    Overflow,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{kind:?} while evaluating `{subexpr}` at {at}")]
pub struct EvalError {
    pub kind: DomainKind,
    /// Rendered text of the node that failed.
    pub subexpr: String,
    pub at: Complex64,
}

fn fail(kind: DomainKind, node: &Expr, at: Complex64) -> EvalError {
    EvalError { kind, subexpr: node.render(), at }
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re < 0.0
}

fn checked(v: Complex64, node: &Expr, at: Complex64) -> Result<Complex64, EvalError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(fail(DomainKind::Overflow, node, at))
    }
}

fn integer_power(u: Complex64, n: i32) -> Complex64 {
    if n >= 0 {
        u.powi(n)
    } else {
        u.powi(-n).inv()
    }
}

pub(crate) fn eval(e: &Expr, z: Complex64) -> Result<Complex64, EvalError> {
    let v = match e {
        Expr::Const(c) => Complex64::new(*c, 0.0),
        Expr::Var => z,
        Expr::Neg(u) => -eval(u, z)?,
        Expr::Binary(op, l, r) => {
            let a = eval(l, z)?;
            let b = eval(r, z)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == Complex64::new(0.0, 0.0) {
                        return Err(fail(DomainKind::Pole, e, z));
                    }
                    a / b
                }
            }
        }
        Expr::Pow(u, c) => {
            let base = eval(u, z)?;
            let zero = base == Complex64::new(0.0, 0.0);
            if c.fract() == 0.0 && c.abs() <= i32::MAX as f64 {
                if zero && *c < 0.0 {
                    return Err(fail(DomainKind::Pole, e, z));
                }
                integer_power(base, *c as i32)
            } else if zero {
                if *c > 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    return Err(fail(DomainKind::Pole, e, z));
                }
            } else if on_cut(base) {
                return Err(fail(DomainKind::BranchCut, e, z));
            } else {
                (base.ln() * c).exp()
            }
        }
        Expr::Call(f, u) => {
            let w = eval(u, z)?;
            match f {
                Func::Exp => w.exp(),
                Func::Sin => w.sin(),
                Func::Cos => w.cos(),
                Func::Abs => Complex64::new(w.norm(), 0.0),
                Func::Ln => {
                    if w == Complex64::new(0.0, 0.0) {
                        return Err(fail(DomainKind::Pole, e, z));
                    }
                    if on_cut(w) {
                        return Err(fail(DomainKind::BranchCut, e, z));
                    }
                    w.ln()
                }
                Func::Sqrt => {
                    if on_cut(w) {
                        return Err(fail(DomainKind::BranchCut, e, z));
                    }
                    w.sqrt()
                }
            }
        }
    };
    checked(v, e, z)
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ev(src: &str, z: Complex64) -> Result<Complex64, EvalError> {
        parse(src).unwrap().eval(z)
    }

    #[test]
    fn spot_values() {
        assert_eq!(ev("x^2", c(1.0, 1.0)).unwrap(), c(0.0, 2.0));
        assert_eq!(ev("abs(x)", c(3.0, 4.0)).unwrap(), c(5.0, 0.0));
        assert!((ev("exp(x)", c(0.0, std::f64::consts::PI)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(ev("sqrt(x)", c(4.0, 0.0)).unwrap(), c(2.0, 0.0));
        assert_eq!(ev("x^-2", c(2.0, 0.0)).unwrap(), c(0.25, 0.0));
    }

    #[test]
    fn ln_at_zero_is_a_pole() {
        let err = ev("ln(x)", c(0.0, 0.0)).unwrap_err();
        assert_eq!(err.kind, DomainKind::Pole);
        assert_eq!(err.subexpr, "ln(x)");
    }

    #[test]
    fn branch_cuts_are_errors() {
        assert_eq!(ev("ln(x)", c(-1.0, 0.0)).unwrap_err().kind, DomainKind::BranchCut);
        assert_eq!(ev("sqrt(x)", c(-4.0, 0.0)).unwrap_err().kind, DomainKind::BranchCut);
        assert_eq!(ev("x^0.5", c(-4.0, 0.0)).unwrap_err().kind, DomainKind::BranchCut);
        // just off the cut the principal branch applies
        let v = ev("ln(x)", c(-1.0, 1e-300)).unwrap();
        assert!((v.im - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn poles_and_overflow() {
        assert_eq!(ev("1/x", c(0.0, 0.0)).unwrap_err().kind, DomainKind::Pole);
        assert_eq!(ev("x^-1", c(0.0, 0.0)).unwrap_err().kind, DomainKind::Pole);
        assert_eq!(ev("x/abs(x)", c(0.0, 0.0)).unwrap_err().kind, DomainKind::Pole);
        assert_eq!(ev("exp(x)", c(1000.0, 0.0)).unwrap_err().kind, DomainKind::Overflow);
        let err = ev("1+exp(exp(x))", c(10.0, 0.0)).unwrap_err();
        assert_eq!(err.subexpr, "exp(exp(x))");
    }

    #[test]
    fn error_names_innermost_failing_node() {
        let err = ev("sin(x)+ln(x-1)", c(1.0, 0.0)).unwrap_err();
        assert_eq!(err.subexpr, "ln(x-1)");
        assert_eq!(err.at, c(1.0, 0.0));
    }

    #[test]
    fn real_points_stay_real() {
        for src in ["x^2+1", "exp(x)*sin(x)", "cos(x)/(x^2+1)", "x^3-2*x"] {
            for k in 0..20 {
                let x = -2.0 + 0.21 * k as f64;
                let v = ev(src, c(x, 0.0)).unwrap();
                assert!(v.im.abs() <= 1e-12, "{src} at {x}: {v}");
            }
        }
    }
}
