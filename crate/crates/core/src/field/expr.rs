use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Space-time coordinate an expression may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    X1,
    X2,
    X3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::T, Var::X1, Var::X2, Var::X3];
    pub const SPACE: [Var; 3] = [Var::X1, Var::X2, Var::X3];

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::X3 => "x3",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unary {
    Neg,
    Sin,
    Cos,
    Exp,
    Sqrt,
    Ln,
}

impl Unary {
    pub fn function(name: &str) -> Option<Unary> {
        match name {
            "sin" => Some(Unary::Sin),
            "cos" => Some(Unary::Cos),
            "exp" => Some(Unary::Exp),
            "sqrt" => Some(Unary::Sqrt),
            "ln" => Some(Unary::Ln),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Unary::Neg => "-",
            Unary::Sin => "sin",
            Unary::Cos => "cos",
            Unary::Exp => "exp",
            Unary::Sqrt => "sqrt",
            Unary::Ln => "ln",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Binary {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl Binary {
    fn symbol(self) -> char {
        match self {
            Binary::Add => '+',
            Binary::Sub => '-',
            Binary::Mul => '*',
            Binary::Div => '/',
            Binary::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            Binary::Add | Binary::Sub => 1,
            Binary::Mul | Binary::Div => 2,
            Binary::Pow => 4,
        }
    }
}

/// Expression tree. Subtrees are shared, so cloning is cheap.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Param(String),
    Unary(Unary, Arc<Expr>),
    Binary(Binary, Arc<Expr>, Arc<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalErrorKind {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("argument outside the real domain")]
    Domain,
    #[error("unbound parameter {0:?}")]
    Unbound(String),
}

/// Evaluation failure at the printed subexpression `node`.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("{kind} in `{node}`")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub node: String,
}

/// Values of `t, x1, x2, x3`.
pub type Point = [f64; 4];

pub type Params = BTreeMap<String, f64>;

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn param(name: &str) -> Expr {
        Expr::Param(name.to_string())
    }

    fn as_num(&self) -> Option<f64> {
        match self {
            Expr::Num(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_num() == Some(0.0)
    }

    pub fn neg(&self) -> Expr {
        match self {
            Expr::Num(v) if *v == 0.0 => Expr::Num(0.0),
            Expr::Unary(Unary::Neg, a) => (**a).clone(),
            _ => Expr::Unary(Unary::Neg, Arc::new(self.clone())),
        }
    }

    pub fn unary(op: Unary, a: &Expr) -> Expr {
        if op == Unary::Neg {
            return a.neg();
        }
        Expr::Unary(op, Arc::new(a.clone()))
    }

    fn raw(op: Binary, a: &Expr, b: &Expr) -> Expr {
        Expr::Binary(op, Arc::new(a.clone()), Arc::new(b.clone()))
    }

    /// Binary node with literal folding and the identities `0 + a`, `1·a`,
    /// `0·a`, `a^1`.
    pub fn binary(op: Binary, a: &Expr, b: &Expr) -> Expr {
        if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
            let v = match op {
                Binary::Add => Some(x + y),
                Binary::Sub => Some(x - y),
                Binary::Mul => Some(x * y),
                Binary::Div if y != 0.0 => Some(x / y),
                Binary::Pow if x > 0.0 || y.fract() == 0.0 => Some(x.powf(y)),
                _ => None,
            };
            if let Some(v) = v.filter(|v| v.is_finite()) {
                return if v < 0.0 { Expr::Num(-v).neg() } else { Expr::Num(v) };
            }
        }
        let (za, zb) = (a.is_zero(), b.is_zero());
        let (oa, ob) = (a.as_num() == Some(1.0), b.as_num() == Some(1.0));
        match op {
            Binary::Add if za => b.clone(),
            Binary::Add | Binary::Sub if zb => a.clone(),
            Binary::Sub if za => b.neg(),
            Binary::Mul if za || zb => Expr::Num(0.0),
            Binary::Mul if oa => b.clone(),
            Binary::Mul | Binary::Div if ob => a.clone(),
            Binary::Div if za => Expr::Num(0.0),
            Binary::Pow if ob => a.clone(),
            Binary::Pow if zb => Expr::Num(1.0),
            _ => Expr::raw(op, a, b),
        }
    }

    pub fn add(&self, b: &Expr) -> Expr {
        Expr::binary(Binary::Add, self, b)
    }

    pub fn sub(&self, b: &Expr) -> Expr {
        Expr::binary(Binary::Sub, self, b)
    }

    pub fn mul(&self, b: &Expr) -> Expr {
        Expr::binary(Binary::Mul, self, b)
    }

    pub fn div(&self, b: &Expr) -> Expr {
        Expr::binary(Binary::Div, self, b)
    }

    pub fn pow(&self, b: &Expr) -> Expr {
        Expr::binary(Binary::Pow, self, b)
    }

    /// Free parameter names, sorted.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Param(p) => out.push(p.clone()),
            Expr::Unary(_, a) => a.collect_params(out),
            Expr::Binary(_, a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            _ => {}
        }
    }

    pub fn eval(&self, point: &Point, params: &Params) -> Result<f64, EvalError> {
        let fail = |kind| Err(EvalError { kind, node: self.to_string() });
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Var(v) => Ok(point[v.slot()]),
            Expr::Param(p) => match params.get(p) {
                Some(v) => Ok(*v),
                None => fail(EvalErrorKind::Unbound(p.clone())),
            },
            Expr::Unary(op, a) => {
                let x = a.eval(point, params)?;
                match op {
                    Unary::Neg => Ok(-x),
                    Unary::Sin => Ok(x.sin()),
                    Unary::Cos => Ok(x.cos()),
                    Unary::Exp => Ok(x.exp()),
                    Unary::Sqrt if x < 0.0 => fail(EvalErrorKind::NegativeSqrt),
                    Unary::Sqrt => Ok(x.sqrt()),
                    Unary::Ln if x <= 0.0 => fail(EvalErrorKind::Domain),
                    Unary::Ln => Ok(x.ln()),
                }
            }
            Expr::Binary(op, a, b) => {
                let x = a.eval(point, params)?;
                let y = b.eval(point, params)?;
                match op {
                    Binary::Add => Ok(x + y),
                    Binary::Sub => Ok(x - y),
                    Binary::Mul => Ok(x * y),
                    Binary::Div if y == 0.0 => fail(EvalErrorKind::DivisionByZero),
                    Binary::Div => Ok(x / y),
                    Binary::Pow => {
                        let v = x.powf(y);
                        if v.is_nan() {
                            fail(EvalErrorKind::Domain)
                        } else if x == 0.0 && y < 0.0 {
                            fail(EvalErrorKind::DivisionByZero)
                        } else {
                            Ok(v)
                        }
                    }
                }
            }
        }
    }

    /// Symbolic partial derivative.
    pub fn differentiate(&self, v: Var) -> Expr {
        match self {
            Expr::Num(_) | Expr::Param(_) => Expr::Num(0.0),
            Expr::Var(w) => Expr::Num(if *w == v { 1.0 } else { 0.0 }),
            Expr::Unary(op, a) => {
                let da = a.differentiate(v);
                if da.is_zero() {
                    return Expr::Num(0.0);
                }
                match op {
                    Unary::Neg => da.neg(),
                    Unary::Sin => Expr::unary(Unary::Cos, a).mul(&da),
                    Unary::Cos => Expr::unary(Unary::Sin, a).mul(&da).neg(),
                    Unary::Exp => self.mul(&da),
                    Unary::Sqrt => da.div(&Expr::Num(2.0).mul(self)),
                    Unary::Ln => da.div(a),
                }
            }
            Expr::Binary(op, a, b) => {
                let (da, db) = (a.differentiate(v), b.differentiate(v));
                match op {
                    Binary::Add => da.add(&db),
                    Binary::Sub => da.sub(&db),
                    Binary::Mul => da.mul(b).add(&a.mul(&db)),
                    Binary::Div => da.mul(b).sub(&a.mul(&db)).div(&b.pow(&Expr::Num(2.0))),
                    Binary::Pow => {
                        let power = if db.is_zero() {
                            Expr::Num(0.0)
                        } else {
                            self.mul(&Expr::unary(Unary::Ln, a)).mul(&db)
                        };
                        let base = if da.is_zero() {
                            Expr::Num(0.0)
                        } else {
                            b.mul(&a.pow(&b.sub(&Expr::Num(1.0)))).mul(&da)
                        };
                        base.add(&power)
                    }
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, _, _) => op.precedence(),
            Expr::Unary(Unary::Neg, _) => 3,
            _ => 5,
        }
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    if v < 0.0 {
        write!(f, "(-{})", -v)
    } else {
        write!(f, "{v}")
    }
}

fn wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write_num(f, *v),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Param(p) => f.write_str(p),
            Expr::Unary(Unary::Neg, a) => {
                f.write_str("-")?;
                wrapped(f, a, a.precedence() < 3)
            }
            Expr::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Expr::Binary(op, a, b) => {
                let p = op.precedence();
                if *op == Binary::Pow {
                    wrapped(f, a, a.precedence() <= p)?;
                    f.write_str("^")?;
                    wrapped(f, b, b.precedence() < 3)
                } else {
                    wrapped(f, a, a.precedence() < p)?;
                    write!(f, "{}", op.symbol())?;
                    wrapped(f, b, b.precedence() <= p)
                }
            }
        }
    }
}
