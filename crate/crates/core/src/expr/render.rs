use std::f64::consts::{E, PI};
use std::fmt;

use super::{BinOp, Expr};

// Binding strength used to decide where parentheses are needed.
const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_NEG: u8 = 3;
const P_POW: u8 = 4;
const P_ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Const(c) if c.is_sign_negative() && *c != 0.0 => P_NEG,
        Expr::Const(_) | Expr::Var | Expr::Call(..) => P_ATOM,
        Expr::Neg(_) => P_NEG,
        Expr::Pow(..) => P_POW,
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => P_ADD,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => P_MUL,
    }
}

fn leads_with_minus(e: &Expr) -> bool {
    match e {
        Expr::Const(c) => c.is_sign_negative() && *c != 0.0,
        Expr::Neg(_) => true,
        Expr::Binary(_, l, _) => leads_with_minus(l),
        _ => false,
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    if c == PI {
        f.write_str("pi")
    } else if c == E {
        f.write_str("e")
    } else if c == 0.0 {
        // `-0` would fold back to -0.0, which compares equal anyway
        f.write_str("0")
    } else {
        write!(f, "{c}")
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write_number(f, *c),
            Expr::Var => f.write_str("x"),
            Expr::Neg(u) => {
                f.write_str("-")?;
                // `-2` would parse as a folded literal, so keep the negation visible
                let bare_literal = matches!(**u, Expr::Const(c) if c != PI && c != E);
                write_wrapped(f, u, bare_literal || precedence(u) < P_NEG)
            }
            Expr::Binary(op, l, r) => {
                let p = precedence(self);
                write_wrapped(f, l, precedence(l) < p)?;
                write!(f, "{}", op.symbol())?;
                write_wrapped(f, r, precedence(r) <= p || leads_with_minus(r))
            }
            Expr::Pow(base, exponent) => {
                write_wrapped(f, base, precedence(base) < P_ATOM)?;
                f.write_str("^")?;
                write_number(f, *exponent)
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;

    fn roundtrip(src: &str) -> String {
        let e = parse(src).unwrap();
        let text = e.render();
        assert_eq!(parse(&text).unwrap(), e, "{src} -> {text}");
        text
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(roundtrip("x^2"), "x^2");
        assert_eq!(roundtrip("-abs(x)"), "-abs(x)");
        assert_eq!(roundtrip("exp(x) + 3 * x"), "exp(x)+3*x");
        assert_eq!(roundtrip("(x+1)*(x-1)"), "(x+1)*(x-1)");
        assert_eq!(roundtrip("x-(1-x)"), "x-(1-x)");
        assert_eq!(roundtrip("x-(-2)"), "x-(-2)");
        assert_eq!(roundtrip("-(2)"), "-(2)");
        assert_eq!(roundtrip("(-x)^2"), "(-x)^2");
        assert_eq!(roundtrip("(x^2)^3"), "(x^2)^3");
        assert_eq!(roundtrip("x^-1.5"), "x^-1.5");
        assert_eq!(roundtrip("2*pi*x"), "2*pi*x");
        assert_eq!(roundtrip("-pi"), "-pi");
        assert_eq!(roundtrip("--x"), "--x");
        assert_eq!(roundtrip("-(x/abs(x))"), "-(x/abs(x))");
    }

    #[test]
    fn awkward_constants_roundtrip() {
        roundtrip("x^(1/3)");
        roundtrip("0.1+x*1e-300");
        roundtrip("123456789012345680000*x");
        roundtrip("sqrt(2)^2");
    }
}
