//! Expression front end: a small elementary-function language in one
//! variable `x`, with symbolic differentiation and complex evaluation.
//!
//! Grammar (highest precedence first):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          -- right associative
//! primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func    := exp | ln | sin | cos | abs | sqrt
//! ```
//!
//! Exponents must be constant; they are folded to a real number at parse
//! time. A `-` written directly in front of a numeric literal folds into the
//! literal, so `-2` is the constant `-2` while `-(2)` stays a negation.

mod diff;
mod eval;
mod parse;
mod render;

pub use eval::{DomainKind, EvalError};
pub use parse::{parse, ParseError};

use num_complex::Complex64;

/// Binary arithmetic operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// Built-in functions of one argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Abs,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Exp, Func::Ln, Func::Sin, Func::Cos, Func::Abs, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Immutable expression tree over the single variable `x`.
///
/// Structural equality compares constants bit-for-bit through `f64::eq`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// Power with a constant real exponent.
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(u) | Expr::Pow(u, _) | Expr::Call(_, u) => 1 + u.size(),
            Expr::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// True when the tree does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Neg(u) | Expr::Pow(u, _) | Expr::Call(_, u) => u.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    /// True when some node applies `f`.
    pub fn uses(&self, f: Func) -> bool {
        match self {
            Expr::Const(_) | Expr::Var => false,
            Expr::Call(g, u) => *g == f || u.uses(f),
            Expr::Neg(u) | Expr::Pow(u, _) => u.uses(f),
            Expr::Binary(_, l, r) => l.uses(f) || r.uses(f),
        }
    }

    /// Canonical text; `parse(&e.render())` reproduces `e` structurally.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Symbolic derivative with respect to `x`.
    pub fn differentiate(&self) -> Expr {
        diff::derivative(self)
    }

    /// Evaluates at a complex point using principal branches.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        eval::eval(self, z)
    }

    /// Evaluates at a real point.
    pub fn eval_real(&self, x: f64) -> Result<Complex64, EvalError> {
        eval::eval(self, Complex64::new(x, 0.0))
    }
}

/// Free-function form of [`Expr::differentiate`].
pub fn differentiate(e: &Expr) -> Expr {
    e.differentiate()
}

/// Free-function form of [`Expr::eval`].
pub fn eval(e: &Expr, z: Complex64) -> Result<Complex64, EvalError> {
    e.eval(z)
}

/// `|f'(z)|`, differentiating `e` on every call. Hot loops should hold a
/// [`ScalarFn`] instead.
pub fn eval_abs_deriv(e: &Expr, z: Complex64) -> Result<f64, EvalError> {
    Ok(e.differentiate().eval(z)?.norm())
}

/// A function together with its symbolic derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFn {
    expr: Expr,
    deriv: Expr,
}

impl ScalarFn {
    pub fn new(expr: Expr) -> Self {
        let deriv = expr.differentiate();
        ScalarFn { expr, deriv }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        Ok(ScalarFn::new(parse(src)?))
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn deriv(&self) -> &Expr {
        &self.deriv
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64, EvalError> {
        self.expr.eval(z)
    }

    pub fn slope(&self, z: Complex64) -> Result<Complex64, EvalError> {
        self.deriv.eval(z)
    }

    pub fn abs_slope(&self, z: Complex64) -> Result<f64, EvalError> {
        Ok(self.deriv.eval(z)?.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn abs_deriv_examples() {
        let sq = parse("x^2").unwrap();
        assert_eq!(eval_abs_deriv(&sq, c(0.5, 0.0)).unwrap(), 1.0);
        assert_eq!(eval_abs_deriv(&sq, c(0.0, 1.0)).unwrap(), 2.0);
    }

    #[test]
    fn abs_deriv_of_negated_abs_matches_finite_difference() {
        let e = parse("-abs(x)").unwrap();
        let h = 1e-6;
        let fd = |x: f64| {
            (e.eval_real(x + h).unwrap().re - e.eval_real(x - h).unwrap().re) / (2.0 * h)
        };
        let got = eval_abs_deriv(&e, c(-2.0, 0.0)).unwrap();
        assert!((got - fd(-2.0).abs()).abs() < 1e-6);
        assert!((got - 1.0).abs() < 1e-12);
    }

    #[test]
    fn abs_deriv_propagates_domain_error() {
        let e = parse("abs(x)").unwrap();
        assert!(eval_abs_deriv(&e, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn scalar_fn_caches_derivative() {
        let f = ScalarFn::parse("exp(x)+3*x").unwrap();
        assert_eq!(f.deriv().render(), "exp(x)+3");
        assert!((f.abs_slope(c(0.0, 0.0)).unwrap() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn uses_and_constness() {
        let e = parse("sin(abs(x))*2").unwrap();
        assert!(e.uses(Func::Abs));
        assert!(!e.uses(Func::Ln));
        assert!(!e.is_constant());
        assert!(parse("pi*2").unwrap().is_constant());
    }
}
