//! Closed-form scalar expressions over chart coordinates.
//!
//! An [`Expr`] is parsed from the small grammar accepted by [`parse`]:
//! decimal literals, named parameters, coordinate references, unary minus,
//! the binary operators `+ - * / ^` and the functions
//! `sin cos tan exp log sqrt`. Exponents must be free of coordinates so that
//! [`derive`] never needs a `x^y` rule.
//!
//! Expressions evaluate over any [`Scalar`], which is how the same metric
//! component yields a number or a second-order jet.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

pub use parse::{parse, parse_with, ParseError, Symbols};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Sin, Func::Cos, Func::Tan, Func::Exp, Func::Log, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply<S: Scalar>(self, x: &S) -> S {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Exp => x.exp(),
            Func::Log => x.ln(),
            Func::Sqrt => x.sqrt(),
        }
    }

    /// `None` when `x` lies outside the function's domain.
    fn check_domain(self, x: f64) -> Option<&'static str> {
        match self {
            Func::Log if x <= 0.0 => Some("log of non-positive value"),
            Func::Sqrt if x < 0.0 => Some("sqrt of negative value"),
            _ => None,
        }
    }
}

/// Abstract syntax tree of a closed-form scalar expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Param(String),
    Coord(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Built-in parameter always available to expressions.
pub const PI_PARAM: &str = "pi";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("domain error: {reason} in `{subexpr}` (argument {value})")]
    Domain {
        reason: &'static str,
        subexpr: String,
        value: f64,
    },
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("exponent `{0}` depends on a coordinate")]
    NonConstantExponent(String),
}

/// Name bindings for evaluation: coordinates carry values in the chosen
/// scalar algebra, parameters are plain numbers.
#[derive(Debug, Clone)]
pub struct EvalEnv<S> {
    coords: Vec<(String, S)>,
    params: BTreeMap<String, f64>,
}

impl<S> Default for EvalEnv<S> {
    fn default() -> Self {
        EvalEnv {
            coords: Vec::new(),
            params: BTreeMap::new(),
        }
    }
}

impl<S: Clone> EvalEnv<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_coord(mut self, name: impl Into<String>, value: S) -> Self {
        self.set_coord(name, value);
        self
    }

    pub fn with_param(mut self, name: impl Into<String>, value: f64) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    pub fn set_coord(&mut self, name: impl Into<String>, value: S) {
        let name = name.into();
        match self.coords.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.coords.push((name, value)),
        }
    }

    pub fn set_params<'a>(&mut self, params: impl IntoIterator<Item = (&'a String, &'a f64)>) {
        for (k, v) in params {
            self.params.insert(k.clone(), *v);
        }
    }

    fn coord(&self, name: &str) -> Option<&S> {
        self.coords.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn param(&self, name: &str) -> Option<f64> {
        match self.params.get(name) {
            Some(v) => Some(*v),
            None if name == PI_PARAM => Some(std::f64::consts::PI),
            None => None,
        }
    }
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn coord(name: impl Into<String>) -> Expr {
        Expr::Coord(name.into())
    }

    pub fn param(name: impl Into<String>) -> Expr {
        Expr::Param(name.into())
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    fn is_one(&self) -> bool {
        self.as_const() == Some(1.0)
    }

    /// True when no coordinate is referenced anywhere in the tree.
    pub fn is_coordinate_free(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Param(_) => true,
            Expr::Coord(_) => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_coordinate_free(),
            Expr::Binary(_, a, b) => a.is_coordinate_free() && b.is_coordinate_free(),
        }
    }

    /// Every coordinate name referenced, in first-seen order.
    pub fn coordinates(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit_names(&mut |e| {
            if let Expr::Coord(n) = e {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        });
        out
    }

    /// Every parameter name referenced, in first-seen order.
    pub fn parameters(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit_names(&mut |e| {
            if let Expr::Param(n) = e {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        });
        out
    }

    fn visit_names(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Neg(a) | Expr::Call(_, a) => a.visit_names(f),
            Expr::Binary(_, a, b) => {
                a.visit_names(f);
                b.visit_names(f);
            }
            _ => {}
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Param(_) | Expr::Coord(_) => 1,
            Expr::Neg(a) | Expr::Call(_, a) => 1 + a.size(),
            Expr::Binary(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    // Folding constructors. These only fold literal arithmetic and the
    // additive/multiplicative identities; there is no simplifier beyond that.

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(c) => Expr::Const(-c),
            a => Expr::Neg(Box::new(a)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x + y),
            (Some(x), _) if x == 0.0 => b,
            (_, Some(y)) if y == 0.0 => a,
            _ => Expr::Binary(BinOp::Add, Box::new(a), Box::new(b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x - y),
            (Some(x), _) if x == 0.0 => Expr::neg(b),
            (_, Some(y)) if y == 0.0 => a,
            _ => Expr::Binary(BinOp::Sub, Box::new(a), Box::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        if a.is_zero() || b.is_zero() {
            return Expr::Const(0.0);
        }
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x * y),
            _ if a.is_one() => b,
            _ if b.is_one() => a,
            _ => Expr::Binary(BinOp::Mul, Box::new(a), Box::new(b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if y != 0.0 && (x / y).is_finite() => Expr::Const(x / y),
            (Some(x), _) if x == 0.0 => Expr::Const(0.0),
            (_, Some(y)) if y == 1.0 => a,
            _ => Expr::Binary(BinOp::Div, Box::new(a), Box::new(b)),
        }
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (_, Some(y)) if y == 0.0 => Expr::Const(1.0),
            (_, Some(y)) if y == 1.0 => a,
            (Some(x), Some(y)) if (x > 0.0 || y.fract() == 0.0) && x.powf(y).is_finite() => Expr::Const(x.powf(y)),
            _ => Expr::Binary(BinOp::Pow, Box::new(a), Box::new(b)),
        }
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        if let Some(x) = a.as_const() {
            if f.check_domain(x).is_none() && f.apply(&x).is_finite() {
                return Expr::Const(f.apply(&x));
            }
        }
        Expr::Call(f, Box::new(a))
    }

    /// Evaluates the expression over the scalar algebra `S`.
    ///
    /// `proto` fixes the algebra for constants (for jets: the dimension).
    pub fn eval<S: Scalar>(&self, env: &EvalEnv<S>, proto: &S) -> Result<S, EvalError> {
        match self {
            Expr::Const(c) => Ok(proto.lift(*c)),
            Expr::Param(name) => env
                .param(name)
                .map(|v| proto.lift(v))
                .ok_or_else(|| EvalError::Unbound(name.clone())),
            Expr::Coord(name) => env.coord(name).cloned().ok_or_else(|| EvalError::Unbound(name.clone())),
            Expr::Neg(a) => Ok(-a.eval(env, proto)?),
            Expr::Call(f, a) => {
                let x = a.eval(env, proto)?;
                if let Some(reason) = f.check_domain(x.value()) {
                    return Err(EvalError::Domain {
                        reason,
                        subexpr: self.to_string(),
                        value: x.value(),
                    });
                }
                Ok(f.apply(&x))
            }
            Expr::Binary(op, a, b) => {
                if *op == BinOp::Pow {
                    return self.eval_pow(a, b, env, proto);
                }
                let x = a.eval(env, proto)?;
                let y = b.eval(env, proto)?;
                Ok(match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y.value() == 0.0 {
                            return Err(EvalError::Domain {
                                reason: "division by zero",
                                subexpr: self.to_string(),
                                value: 0.0,
                            });
                        }
                        x / y
                    }
                    BinOp::Pow => unreachable!(),
                })
            }
        }
    }

    fn eval_pow<S: Scalar>(&self, base: &Expr, exponent: &Expr, env: &EvalEnv<S>, proto: &S) -> Result<S, EvalError> {
        if !exponent.is_coordinate_free() {
            return Err(EvalError::NonConstantExponent(exponent.to_string()));
        }
        let e = exponent.eval(env, proto)?.value();
        let x = base.eval(env, proto)?;
        let v = x.value();
        if v < 0.0 && e.fract() != 0.0 {
            return Err(EvalError::Domain {
                reason: "fractional power of negative value",
                subexpr: self.to_string(),
                value: v,
            });
        }
        if v == 0.0 && e < 0.0 {
            return Err(EvalError::Domain {
                reason: "division by zero",
                subexpr: self.to_string(),
                value: v,
            });
        }
        Ok(x.powf(e))
    }

    /// Convenience evaluation over plain numbers.
    pub fn eval_f64(&self, env: &EvalEnv<f64>) -> Result<f64, EvalError> {
        self.eval(env, &0.0)
    }
}

/// Symbolic partial derivative with respect to coordinate `coord`.
///
/// Parameters are constants. The result is only constant-folded, never
/// simplified further.
pub fn derive(e: &Expr, coord: &str) -> Expr {
    match e {
        Expr::Const(_) | Expr::Param(_) => Expr::Const(0.0),
        Expr::Coord(c) => Expr::Const(if c == coord { 1.0 } else { 0.0 }),
        Expr::Neg(a) => Expr::neg(derive(a, coord)),
        Expr::Binary(op, a, b) => {
            let (a, b) = (a.as_ref(), b.as_ref());
            match op {
                BinOp::Add => Expr::add(derive(a, coord), derive(b, coord)),
                BinOp::Sub => Expr::sub(derive(a, coord), derive(b, coord)),
                BinOp::Mul => Expr::add(
                    Expr::mul(derive(a, coord), b.clone()),
                    Expr::mul(a.clone(), derive(b, coord)),
                ),
                BinOp::Div => {
                    let da = derive(a, coord);
                    let db = derive(b, coord);
                    if db.is_zero() {
                        Expr::div(da, b.clone())
                    } else {
                        Expr::div(
                            Expr::sub(Expr::mul(da, b.clone()), Expr::mul(a.clone(), db)),
                            Expr::pow(b.clone(), Expr::Const(2.0)),
                        )
                    }
                }
                BinOp::Pow => {
                    let da = derive(a, coord);
                    if da.is_zero() {
                        return Expr::Const(0.0);
                    }
                    let lowered = Expr::sub(b.clone(), Expr::Const(1.0));
                    Expr::mul(Expr::mul(b.clone(), Expr::pow(a.clone(), lowered)), da)
                }
            }
        }
        Expr::Call(f, a) => {
            let da = derive(a, coord);
            if da.is_zero() {
                return Expr::Const(0.0);
            }
            let a = a.as_ref().clone();
            let outer = match f {
                Func::Sin => Expr::call(Func::Cos, a),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, a)),
                Func::Tan => return Expr::div(da, Expr::pow(Expr::call(Func::Cos, a), Expr::Const(2.0))),
                Func::Exp => Expr::call(Func::Exp, a),
                Func::Log => return Expr::div(da, a),
                Func::Sqrt => return Expr::div(da, Expr::mul(Expr::Const(2.0), Expr::call(Func::Sqrt, a))),
            };
            Expr::mul(outer, da)
        }
    }
}

// Printing. Negative constants bind like unary minus so that printing and
// re-parsing reproduces the same tree.

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Const(c) if c.is_sign_negative() => 3,
        Expr::Const(_) | Expr::Param(_) | Expr::Coord(_) | Expr::Call(..) => 5,
        Expr::Neg(_) => 3,
        Expr::Binary(op, ..) => op.precedence(),
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Param(n) | Expr::Coord(n) => f.write_str(n),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, precedence(a) < 3)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                if *op == BinOp::Pow {
                    write_child(f, a, precedence(a) <= p)?;
                    f.write_str("^")?;
                    write_child(f, b, precedence(b) < 3)
                } else {
                    write_child(f, a, precedence(a) < p)?;
                    match op {
                        BinOp::Add | BinOp::Sub => write!(f, " {} ", op.symbol())?,
                        _ => f.write_str(op.symbol())?,
                    }
                    write_child(f, b, precedence(b) <= p)
                }
            }
        }
    }
}
