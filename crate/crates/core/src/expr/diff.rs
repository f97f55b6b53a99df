//! Symbolic differentiation with local constant folding.

use super::{BinOp, Expr, Func};

fn as_const(e: &Expr) -> Option<f64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn finite_const(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Expr::Const(v))
}

pub(crate) fn neg(u: Expr) -> Expr {
    match u {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

pub(crate) fn add(l: Expr, r: Expr) -> Expr {
    match (as_const(&l), as_const(&r)) {
        (Some(a), Some(b)) => finite_const(a + b).unwrap_or_else(|| bin(BinOp::Add, l, r)),
        (Some(a), None) if a == 0.0 => r,
        (None, Some(b)) if b == 0.0 => l,
        _ => bin(BinOp::Add, l, r),
    }
}

pub(crate) fn sub(l: Expr, r: Expr) -> Expr {
    match (as_const(&l), as_const(&r)) {
        (Some(a), Some(b)) => finite_const(a - b).unwrap_or_else(|| bin(BinOp::Sub, l, r)),
        (Some(a), None) if a == 0.0 => neg(r),
        (None, Some(b)) if b == 0.0 => l,
        _ => bin(BinOp::Sub, l, r),
    }
}

pub(crate) fn mul(l: Expr, r: Expr) -> Expr {
    match (as_const(&l), as_const(&r)) {
        (Some(a), Some(b)) => finite_const(a * b).unwrap_or_else(|| bin(BinOp::Mul, l, r)),
        (Some(a), _) | (_, Some(a)) if a == 0.0 => Expr::Const(0.0),
        (Some(a), None) if a == 1.0 => r,
        (None, Some(b)) if b == 1.0 => l,
        (Some(a), None) if a == -1.0 => neg(r),
        (None, Some(b)) if b == -1.0 => neg(l),
        _ => bin(BinOp::Mul, l, r),
    }
}

pub(crate) fn div(l: Expr, r: Expr) -> Expr {
    match (as_const(&l), as_const(&r)) {
        (Some(a), Some(b)) if b != 0.0 => {
            finite_const(a / b).unwrap_or_else(|| bin(BinOp::Div, l, r))
        }
        (None, Some(b)) if b == 1.0 => l,
        (Some(a), None) if a == 0.0 => Expr::Const(0.0),
        _ => bin(BinOp::Div, l, r),
    }
}

pub(crate) fn pow(base: Expr, exponent: f64) -> Expr {
    if exponent == 1.0 {
        return base;
    }
    if exponent == 0.0 {
        return Expr::Const(1.0);
    }
    if let Some(c) = as_const(&base) {
        if c > 0.0 || exponent.fract() == 0.0 {
            if let Some(folded) = finite_const(c.powf(exponent)) {
                return folded;
            }
        }
    }
    Expr::Pow(Box::new(base), exponent)
}

fn call(f: Func, arg: Expr) -> Expr {
    Expr::Call(f, Box::new(arg))
}

fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
    Expr::Binary(op, Box::new(l), Box::new(r))
}

/// d/dx by the usual rules. `abs` differentiates to `x/abs(x)`, undefined at 0.
pub(crate) fn derivative(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Neg(u) => neg(derivative(u)),
        Expr::Binary(op, l, r) => {
            let (dl, dr) = (derivative(l), derivative(r));
            let (l, r) = ((**l).clone(), (**r).clone());
            match op {
                BinOp::Add => add(dl, dr),
                BinOp::Sub => sub(dl, dr),
                BinOp::Mul => add(mul(dl, r.clone()), mul(l, dr)),
                BinOp::Div => div(sub(mul(dl, r.clone()), mul(l, dr)), pow(r, 2.0)),
            }
        }
        Expr::Pow(u, c) => {
            let du = derivative(u);
            mul(mul(Expr::Const(*c), pow((**u).clone(), c - 1.0)), du)
        }
        Expr::Call(f, u) => {
            let du = derivative(u);
            let u = (**u).clone();
            match f {
                Func::Exp => mul(call(Func::Exp, u), du),
                Func::Ln => div(du, u),
                Func::Sin => mul(call(Func::Cos, u), du),
                Func::Cos => neg(mul(call(Func::Sin, u), du)),
                Func::Abs => mul(div(u.clone(), call(Func::Abs, u)), du),
                Func::Sqrt => div(du, mul(Expr::Const(2.0), call(Func::Sqrt, u))),
            }
        }
    }
}
