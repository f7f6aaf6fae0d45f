//! Expression language over scalars, spinors and current elements.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := "-" factor | scalar atom? | atom
//! atom   := primary ("^" int)?
//! primary:= "I" | "J" | "kappa" | "kappastar" | "mu" | "lambda" | "lambdastar"
//!         | "z1" | "z2" | "z1~" | "z2~" | "i"
//!         | "phi" ("+" | "-") "(" int "," int "," int ")"
//!         | "v" "(" int ";" int "," int ")"
//!         | "[" expr "," expr "]"
//!         | func "(" expr ")"
//!         | "(" expr ")" | "(" expr "|" expr ")"
//!         | "tensor" "(" expr "," mat ")" | "ak" "(" int ")" | "nder"
//! mat    := "E" "(" int "," int ")" | "H" "(" int ")"
//! scalar := int ("/" int)? "i"?
//! ```
//!
//! `(u | v)` builds a spinor from two function-valued expressions; inside
//! its components scalars are read as constant functions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value as Json;

use crate::basis::{basis_phi, basis_v, expand, radial_n, BasisIndex, Sign};
use crate::coeff::Gq;
use crate::current::{ghat_bracket, make_sl, CurrentElement, ExtendedElement, ScalarMatrix};
use crate::error::Error;
use crate::poly::Poly;
use crate::spinor::{DiracOp, Spinor};

const MAX_DEPTH: usize = 256;
const MAX_POWER: u32 = 64;
const MAX_VAR_DEGREE: u32 = 48;
const MAX_SIZE: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrontendError {
    Syntax {
        line: usize,
        column: usize,
        found: String,
        expected: Vec<String>,
    },
    Unbalanced {
        line: usize,
        column: usize,
        open: char,
    },
    TooDeep {
        line: usize,
        column: usize,
    },
    Kind {
        op: String,
        left: &'static str,
        right: &'static str,
    },
    Eval(Error),
}

impl fmt::Display for FrontendError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrontendError::Syntax {
                line,
                column,
                found,
                expected,
            } => write!(
                f,
                "syntax error at {line}:{column}: found {found}, expected one of: {}",
                expected.join(", ")
            ),
            FrontendError::Unbalanced { line, column, open } => {
                write!(f, "unbalanced '{open}' opened at {line}:{column}")
            }
            FrontendError::TooDeep { line, column } => {
                write!(f, "expression nested too deeply at {line}:{column}")
            }
            FrontendError::Kind { op, left, right } => {
                write!(f, "cannot apply {op} to {left} and {right}")
            }
            FrontendError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FrontendError {}

impl From<Error> for FrontendError {
    fn from(e: Error) -> Self {
        FrontendError::Eval(e)
    }
}

pub type FResult<T> = std::result::Result<T, FrontendError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("integer '{s}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> FResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Int(chars[start..i].iter().collect()),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: tl,
                col: tc,
            });
            continue;
        }
        if "+-*/()[],;|^~".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: tl,
                col: tc,
            });
            col += 1;
            i += 1;
            continue;
        }
        return Err(FrontendError::Syntax {
            line: tl,
            column: tc,
            found: format!("character {c:?}"),
            expected: vec!["expression".into()],
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sigma,
    Tau,
    Tr,
    Theta(u8),
    N,
    Dslash,
}

impl Func {
    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sigma" => Func::Sigma,
            "tau" => Func::Tau,
            "tr" => Func::Tr,
            "Theta0" => Func::Theta(0),
            "Theta1" => Func::Theta(1),
            "Theta2" => Func::Theta(2),
            "n" => Func::N,
            "Dslash" => Func::Dslash,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    I,
    J,
    Kappa,
    KappaStar,
    Mu,
    LambdaStar,
    Z1,
    Z1Bar,
    Z2,
    Z2Bar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mat {
    E(usize, usize),
    H(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(Gq),
    Named(Named),
    Basis(BasisIndex),
    V(u32, u32, u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
    Apply(Func, Box<Expr>),
    SpinorLit(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Mat),
    Central(u8),
    Nder,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

const ATOM_START: &[&str] = &[
    "integer", "'-'", "'('", "'['", "'I'", "'J'", "'kappa'", "'kappastar'", "'mu'", "'lambda'",
    "'lambdastar'", "'z1'", "'z2'", "'i'", "'phi'", "'v'", "'tensor'", "'ak'", "'nder'", "function name",
];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> FResult<T> {
        let t = self.peek();
        Err(FrontendError::Syntax {
            line: t.line,
            column: t.col,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> FResult<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("'{c}'")])
        }
    }

    /// Closing delimiter; a premature end or a wrong closer is reported as
    /// an unbalanced opener.
    fn close(&mut self, open: &Token, closer: char, also: &[&str]) -> FResult<()> {
        if self.is_sym(closer) {
            self.bump();
            return Ok(());
        }
        let at_close = matches!(self.peek().tok, Tok::End | Tok::Sym(')') | Tok::Sym(']'));
        if at_close {
            if let Tok::Sym(c) = open.tok {
                return Err(FrontendError::Unbalanced {
                    line: open.line,
                    column: open.col,
                    open: c,
                });
            }
        }
        let mut exp = vec![format!("'{closer}'")];
        exp.extend(also.iter().map(|s| s.to_string()));
        let exp_ref: Vec<&str> = exp.iter().map(String::as_str).collect();
        self.error(&exp_ref)
    }

    fn int(&mut self) -> FResult<u32> {
        match self.peek().tok.clone() {
            Tok::Int(s) => match s.parse::<u32>() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.error(&["integer below 2^32"]),
            },
            _ => self.error(&["integer"]),
        }
    }

    fn enter(&mut self) -> FResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek();
            return Err(FrontendError::TooDeep {
                line: t.line,
                column: t.col,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> FResult<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.bump();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> FResult<Expr> {
        let mut lhs = self.factor()?;
        while self.is_sym('*') {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> FResult<Expr> {
        self.enter()?;
        let out = if self.is_sym('-') {
            self.bump();
            Expr::Neg(Box::new(self.factor()?))
        } else if matches!(self.peek().tok, Tok::Int(_)) {
            let s = self.scalar()?;
            if self.starts_atom() {
                Expr::Mul(Box::new(s), Box::new(self.atom()?))
            } else {
                s
            }
        } else {
            self.atom()?
        };
        self.depth -= 1;
        Ok(out)
    }

    fn starts_atom(&self) -> bool {
        match &self.peek().tok {
            Tok::Ident(_) => true,
            Tok::Sym(c) => *c == '(' || *c == '[',
            _ => false,
        }
    }

    fn scalar(&mut self) -> FResult<Expr> {
        let num = match self.bump().tok {
            Tok::Int(s) => s,
            _ => unreachable!("scalar starts with an integer"),
        };
        let num: BigInt = num.parse().expect("digits");
        let mut value = BigRational::from_integer(num);
        if self.is_sym('/') {
            self.bump();
            let den = match self.peek().tok.clone() {
                Tok::Int(s) => {
                    self.bump();
                    s.parse::<BigInt>().expect("digits")
                }
                _ => return self.error(&["integer denominator"]),
            };
            if den == BigInt::from(0) {
                return self.error(&["nonzero denominator"]);
            }
            value /= BigRational::from_integer(den);
        }
        if self.peek().tok == Tok::Ident("i".into()) {
            self.bump();
            return Ok(Expr::Scalar(Gq::imag(value)));
        }
        Ok(Expr::Scalar(Gq::real(value)))
    }

    fn atom(&mut self) -> FResult<Expr> {
        let base = self.primary()?;
        if self.is_sym('^') {
            self.bump();
            let e = self.int()?;
            if e > MAX_POWER {
                return self.error(&["exponent at most 64"]);
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> FResult<Expr> {
        let t = self.peek().clone();
        match t.tok.clone() {
            Tok::Sym('(') => {
                self.bump();
                let a = self.expr()?;
                if self.is_sym('|') {
                    self.bump();
                    let b = self.expr()?;
                    self.close(&t, ')', &[])?;
                    return Ok(Expr::SpinorLit(Box::new(a), Box::new(b)));
                }
                self.close(&t, ')', &["'|'", "operator"])?;
                Ok(a)
            }
            Tok::Sym('[') => {
                self.bump();
                let a = self.expr()?;
                if !self.is_sym(',') {
                    if matches!(self.peek().tok, Tok::End | Tok::Sym(']') | Tok::Sym(')')) && !self.is_sym(']') {
                        return self.close(&t, ',', &[]).map(|_| unreachable!());
                    }
                    return self.error(&["','"]);
                }
                self.bump();
                let b = self.expr()?;
                self.close(&t, ']', &["operator"])?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::Ident(name) => {
                self.bump();
                self.ident(&name, &t)
            }
            _ => self.error(ATOM_START),
        }
    }

    fn ident(&mut self, name: &str, t: &Token) -> FResult<Expr> {
        let named = |n| Ok(Expr::Named(n));
        match name {
            "I" => named(Named::I),
            "J" => named(Named::J),
            "kappa" => named(Named::Kappa),
            "kappastar" => named(Named::KappaStar),
            "mu" | "lambda" => named(Named::Mu),
            "lambdastar" => named(Named::LambdaStar),
            "i" => Ok(Expr::Scalar(Gq::i())),
            "nder" => Ok(Expr::Nder),
            "z1" | "z2" => {
                let bar = self.is_sym('~');
                if bar {
                    self.bump();
                }
                named(match (name, bar) {
                    ("z1", false) => Named::Z1,
                    ("z1", true) => Named::Z1Bar,
                    ("z2", false) => Named::Z2,
                    _ => Named::Z2Bar,
                })
            }
            "phi" => {
                let sign = if self.is_sym('+') {
                    Sign::Plus
                } else if self.is_sym('-') {
                    Sign::Minus
                } else {
                    return self.error(&["'+'", "'-'"]);
                };
                self.bump();
                let open = self.peek().clone();
                self.expect_sym('(')?;
                let m = self.int()?;
                self.expect_sym(',')?;
                let l = self.int()?;
                self.expect_sym(',')?;
                let k = self.int()?;
                self.close(&open, ')', &[])?;
                match BasisIndex::new(sign, m, l, k) {
                    Ok(idx) => Ok(Expr::Basis(idx)),
                    Err(_) => Err(FrontendError::Syntax {
                        line: t.line,
                        column: t.col,
                        found: format!("index ({m},{l},{k})"),
                        expected: vec!["0 <= l <= m <= 48, 0 <= k <= m+1".into()],
                    }),
                }
            }
            "v" => {
                let open = self.peek().clone();
                self.expect_sym('(')?;
                let k = self.int()?;
                self.expect_sym(';')?;
                let l = self.int()?;
                self.expect_sym(',')?;
                let j = self.int()?;
                self.close(&open, ')', &[])?;
                if l.saturating_add(j) > MAX_VAR_DEGREE {
                    return Err(FrontendError::Syntax {
                        line: t.line,
                        column: t.col,
                        found: format!("degree {}", l as u64 + j as u64),
                        expected: vec!["degree at most 48".into()],
                    });
                }
                Ok(Expr::V(k, l, j))
            }
            "tensor" => {
                let open = self.peek().clone();
                self.expect_sym('(')?;
                let a = self.expr()?;
                self.expect_sym(',')?;
                let m = self.mat()?;
                self.close(&open, ')', &[])?;
                Ok(Expr::Tensor(Box::new(a), m))
            }
            "ak" => {
                let open = self.peek().clone();
                self.expect_sym('(')?;
                let k = self.int()?;
                if k > 2 {
                    return self.error(&["0", "1", "2"]);
                }
                self.close(&open, ')', &[])?;
                Ok(Expr::Central(k as u8))
            }
            other => match Func::from_name(other) {
                Some(func) => {
                    let open = self.peek().clone();
                    self.expect_sym('(')?;
                    let a = self.expr()?;
                    self.close(&open, ')', &["operator"])?;
                    Ok(Expr::Apply(func, Box::new(a)))
                }
                None => Err(FrontendError::Syntax {
                    line: t.line,
                    column: t.col,
                    found: format!("'{other}'"),
                    expected: ATOM_START.iter().map(|s| s.to_string()).collect(),
                }),
            },
        }
    }

    fn mat(&mut self) -> FResult<Mat> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(ref s) if s == "E" => {
                self.bump();
                let open = self.peek().clone();
                self.expect_sym('(')?;
                let i = self.int()?;
                self.expect_sym(',')?;
                let j = self.int()?;
                self.close(&open, ')', &[])?;
                Ok(Mat::E(i as usize, j as usize))
            }
            Tok::Ident(ref s) if s == "H" => {
                self.bump();
                let open = self.peek().clone();
                self.expect_sym('(')?;
                let i = self.int()?;
                self.close(&open, ')', &[])?;
                Ok(Mat::H(i as usize))
            }
            _ => self.error(&["'E'", "'H'"]),
        }
    }
}

pub fn parse(text: &str) -> FResult<Expr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        if matches!(p.peek().tok, Tok::Sym(')') | Tok::Sym(']')) {
            let t = p.peek();
            return Err(FrontendError::Syntax {
                line: t.line,
                column: t.col,
                found: format!("{} without matching opener", t.tok.describe()),
                expected: vec!["end of input".into(), "operator".into()],
            });
        }
        return p.error(&["end of input", "'+'", "'-'", "'*'"]);
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Gq),
    Spinor(Spinor),
    Current(CurrentElement),
    Extended(ExtendedElement),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Spinor(_) => "spinor",
            Value::Current(_) => "current",
            Value::Extended(_) => "extended",
        }
    }

    fn to_extended(&self) -> Option<ExtendedElement> {
        match self {
            Value::Current(c) => Some(ExtendedElement::from_current(c.clone())),
            Value::Extended(x) => Some(x.clone()),
            _ => None,
        }
    }
}

fn kind_err<T>(op: &str, a: &Value, b: &Value) -> FResult<T> {
    Err(FrontendError::Kind {
        op: op.into(),
        left: a.kind(),
        right: b.kind(),
    })
}

/// Evaluation context: matrix size for `tensor`, `ak` and `nder`.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub n: usize,
    /// Inside a `(u | v)` component scalars are constant functions.
    function_mode: bool,
}

impl Context {
    pub fn new(n: usize) -> Context {
        Context {
            n,
            function_mode: false,
        }
    }
}

fn function_of(v: Value, ctx: &Context) -> Value {
    match v {
        Value::Scalar(c) if ctx.function_mode => Value::Spinor(Spinor::identity().scale(&c)),
        other => other,
    }
}

fn add_values(op: &str, a: Value, b: Value, ctx: &Context, negate: bool) -> FResult<Value> {
    let (a, b) = (function_of(a, ctx), function_of(b, ctx));
    let sign = if negate { Gq::from_int(-1) } else { Gq::one() };
    Ok(match (&a, &b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + &(y * &sign)),
        (Value::Spinor(x), Value::Spinor(y)) => Value::Spinor(x.try_add(&y.scale(&sign))?),
        (Value::Current(x), Value::Current(y)) => Value::Current(x.try_add(&y.scale(&sign))?),
        (Value::Current(_) | Value::Extended(_), Value::Current(_) | Value::Extended(_)) => {
            let (x, y) = (a.to_extended().expect("matrix"), b.to_extended().expect("matrix"));
            Value::Extended(x.try_add(&y.scale(&sign))?)
        }
        _ => return kind_err(op, &a, &b),
    })
}

fn scale_value(v: &Value, c: &Gq) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(x * c),
        Value::Spinor(s) => Value::Spinor(s.scale(c)),
        Value::Current(m) => Value::Current(m.scale(c)),
        Value::Extended(x) => Value::Extended(x.scale(c)),
    }
}

fn mul_values(a: &Value, b: &Value) -> FResult<Value> {
    Ok(match (a, b) {
        (Value::Scalar(c), other) | (other, Value::Scalar(c)) => scale_value(other, c),
        (Value::Spinor(x), Value::Spinor(y)) => Value::Spinor(x.mul(y)?),
        (Value::Current(x), Value::Current(y)) => Value::Current(x.mul(y)?),
        _ => return kind_err("product", a, b),
    })
}

fn scalar_matrix(m: Mat, n: usize) -> FResult<ScalarMatrix> {
    let bad = |what: String| FrontendError::Eval(Error::BadIndex(what));
    match m {
        Mat::E(i, j) => {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(bad(format!("E({i},{j}) for n = {n}")));
            }
            Ok(ScalarMatrix::unit(n, i - 1, j - 1))
        }
        Mat::H(i) => {
            if i == 0 || i >= n {
                return Err(bad(format!("H({i}) for n = {n}")));
            }
            Ok(make_sl(n)?.h[i - 1].clone())
        }
    }
}

fn apply_func(func: Func, v: Value) -> FResult<Value> {
    let s = match (&v, func) {
        (Value::Spinor(s), _) => s,
        (Value::Current(m), Func::N) => return Ok(Value::Current(m.radial_n()?)),
        (Value::Extended(x), Func::N) => {
            let mut out = x.clone();
            out.mat = x.mat.radial_n()?;
            out.a = [Gq::zero(), Gq::zero(), Gq::zero()];
            out.t = Gq::zero();
            return Ok(Value::Extended(out));
        }
        _ => {
            return Err(FrontendError::Kind {
                op: format!("{func:?}").to_lowercase(),
                left: v.kind(),
                right: "nothing",
            })
        }
    };
    Ok(Value::Spinor(match func {
        Func::Sigma => s.sigma(),
        Func::Tau => s.tau(),
        Func::Tr => Spinor::new(s.trace(), Poly::zero(), s.space),
        Func::Theta(k) => s.theta_action(k)?,
        Func::N => radial_n(s)?,
        Func::Dslash => s.dirac(DiracOp::Tangential)?,
    }))
}

fn named_value(n: Named) -> Spinor {
    match n {
        Named::I => Spinor::identity(),
        Named::J => Spinor::j(),
        Named::Kappa => Spinor::kappa(),
        Named::KappaStar => Spinor::kappa_star(),
        Named::Mu => Spinor::mu(),
        Named::LambdaStar => Spinor::lambda_star(),
        Named::Z1 => Spinor::sphere(Poly::z1(), Poly::zero()),
        Named::Z1Bar => Spinor::sphere(Poly::z1bar(), Poly::zero()),
        Named::Z2 => Spinor::sphere(Poly::z2(), Poly::zero()),
        Named::Z2Bar => Spinor::sphere(Poly::z2bar(), Poly::zero()),
    }
}

fn component(v: Value, ctx: &Context) -> FResult<Poly> {
    match function_of(v, ctx) {
        Value::Spinor(s) if s.v.is_zero() => Ok(s.u),
        other => Err(FrontendError::Kind {
            op: "spinor component".into(),
            left: other.kind(),
            right: "function",
        }),
    }
}

pub fn eval(e: &Expr, ctx: &Context) -> FResult<Value> {
    Ok(match e {
        Expr::Scalar(c) => Value::Scalar(c.clone()),
        Expr::Named(n) => Value::Spinor(named_value(*n)),
        Expr::Basis(idx) => Value::Spinor(basis_phi(*idx)?),
        Expr::V(k, l, j) => Value::Spinor(Spinor::sphere(basis_v(*k, *l, *j), Poly::zero())),
        Expr::Neg(a) => scale_value(&eval(a, ctx)?, &Gq::from_int(-1)),
        Expr::Add(a, b) => add_values("sum", eval(a, ctx)?, eval(b, ctx)?, ctx, false)?,
        Expr::Sub(a, b) => add_values("difference", eval(a, ctx)?, eval(b, ctx)?, ctx, true)?,
        Expr::Mul(a, b) => mul_values(&eval(a, ctx)?, &eval(b, ctx)?)?,
        Expr::Pow(a, k) => {
            let base = eval(a, ctx)?;
            let mut acc = match &base {
                Value::Scalar(_) => Value::Scalar(Gq::one()),
                Value::Spinor(_) => Value::Spinor(Spinor::identity()),
                Value::Current(m) => {
                    let id = ScalarMatrix::identity(m.n);
                    Value::Current(CurrentElement::tensor(&Spinor::identity(), &id))
                }
                Value::Extended(_) => return kind_err("power", &base, &Value::Scalar(Gq::one())),
            };
            for _ in 0..*k {
                acc = mul_values(&acc, &base)?;
            }
            acc
        }
        Expr::Bracket(a, b) => {
            let (x, y) = (eval(a, ctx)?, eval(b, ctx)?);
            match (&x, &y) {
                (Value::Spinor(p), Value::Spinor(q)) => Value::Spinor(p.bracket(q)?),
                (Value::Current(p), Value::Current(q)) => Value::Current(p.bracket(q)?),
                (Value::Current(_) | Value::Extended(_), Value::Current(_) | Value::Extended(_)) => {
                    Value::Extended(ghat_bracket(&x.to_extended().expect("matrix"), &y.to_extended().expect("matrix"))?)
                }
                _ => return kind_err("bracket", &x, &y),
            }
        }
        Expr::Apply(f, a) => apply_func(*f, eval(a, ctx)?)?,
        Expr::SpinorLit(a, b) => {
            let inner = Context {
                function_mode: true,
                ..*ctx
            };
            let u = component(eval(a, &inner)?, &inner)?;
            let v = component(eval(b, &inner)?, &inner)?;
            Value::Spinor(Spinor::sphere(u, v))
        }
        Expr::Tensor(a, m) => {
            if ctx.n < 2 || ctx.n > MAX_SIZE {
                return Err(FrontendError::Eval(Error::BadRank(ctx.n)));
            }
            let x = scalar_matrix(*m, ctx.n)?;
            match eval(a, ctx)? {
                Value::Spinor(s) => Value::Current(CurrentElement::tensor(&s, &x)),
                Value::Scalar(c) => Value::Current(CurrentElement::tensor(&Spinor::identity().scale(&c), &x)),
                other => return kind_err("tensor", &other, &Value::Scalar(Gq::one())),
            }
        }
        Expr::Central(k) => Value::Extended(ExtendedElement::central(ctx.n, *k as usize)),
        Expr::Nder => Value::Extended(ExtendedElement::derivation(ctx.n)),
    })
}

pub fn eval_str(text: &str, n: usize) -> FResult<Value> {
    eval(&parse(text)?, &Context::new(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn to_json(v: &Value) -> Json {
    match v {
        Value::Scalar(c) => Json::String(c.to_string()),
        Value::Spinor(s) => s.to_json(),
        Value::Current(m) => m.to_json(),
        Value::Extended(x) => x.to_json(),
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Text => match v {
            Value::Scalar(c) => c.to_string(),
            Value::Spinor(s) => s.to_string(),
            Value::Current(m) => m.to_string(),
            Value::Extended(x) => x.to_string(),
        },
        Format::Json => to_json(v).to_string(),
    }
}

/// Expansion of a spinor-valued expression.
pub fn expand_value(v: &Value) -> FResult<crate::basis::Expansion> {
    match v {
        Value::Spinor(s) => Ok(expand(s)?),
        other => Err(FrontendError::Kind {
            op: "expand".into(),
            left: other.kind(),
            right: "nothing",
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn ev(s: &str) -> Value {
        eval_str(s, 2).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn parse_shapes() {
        assert_eq!(
            parse("kappa*mu").unwrap(),
            Expr::Mul(Box::new(Expr::Named(Named::Kappa)), Box::new(Expr::Named(Named::Mu)))
        );
        assert_eq!(
            parse("[phi+(1,0,1), phi-(0,0,0)]").unwrap(),
            Expr::Bracket(
                Box::new(Expr::Basis(BasisIndex::plus(1, 0, 1))),
                Box::new(Expr::Basis(BasisIndex::minus(0, 0, 0)))
            )
        );
        assert!(matches!(
            parse("[tensor(kappa,E(1,2)), nder]").unwrap(),
            Expr::Bracket(_, _)
        ));
    }

    #[test]
    fn eval_examples() {
        let expected = Spinor::sphere(Poly::z2(), Poly::z1bar()).scale(&Gq::new(rat(0, 1), rat(1, 2)));
        assert_eq!(ev("Theta0(kappa)"), Value::Spinor(expected));
        assert_eq!(ev("[kappa, mu] - (kappa*mu - mu*kappa)"), Value::Spinor(Spinor::zero(crate::spinor::Space::Sphere)));
        assert_eq!(ev("tr(J)"), Value::Spinor(Spinor::zero(crate::spinor::Space::Sphere)));
        assert_eq!(ev("2*kappa"), ev("kappa + kappa"));
        assert_eq!(ev("1/2i"), Value::Scalar(Gq::imag(rat(1, 2))));
        assert_eq!(ev("-3/2 kappa"), Value::Spinor(Spinor::kappa().scale(&Gq::from_ratio(-3, 2))));
        assert_eq!(ev("J^2"), Value::Spinor(-Spinor::identity()));
        assert_eq!(ev("v(1;1,0)"), Value::Spinor(Spinor::sphere(-Poly::z2bar(), Poly::zero())));
    }

    #[test]
    fn kind_errors() {
        let e = eval_str("kappa + 1", 2).unwrap_err();
        assert_eq!(
            e,
            FrontendError::Kind {
                op: "sum".into(),
                left: "spinor",
                right: "scalar"
            }
        );
        assert!(matches!(eval_str("[1, 2]", 2), Err(FrontendError::Kind { .. })));
        assert!(matches!(eval_str("tensor(kappa, E(3,1))", 2), Err(FrontendError::Eval(_))));
    }

    #[test]
    fn syntax_errors() {
        match parse("kappa +").unwrap_err() {
            FrontendError::Syntax { line, column, expected, .. } => {
                assert_eq!((line, column), (1, 8));
                assert!(expected.iter().any(|s| s == "'kappa'"));
            }
            e => panic!("{e:?}"),
        }
        assert_eq!(
            parse("[kappa, mu").unwrap_err(),
            FrontendError::Unbalanced { line: 1, column: 1, open: '[' }
        );
        assert_eq!(
            parse("\n  (kappa").unwrap_err(),
            FrontendError::Unbalanced { line: 2, column: 3, open: '(' }
        );
        assert!(matches!(parse("kappa)"), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse("kappa mu"), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse("phi+(1,2,0)"), Err(FrontendError::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(FrontendError::Syntax { .. })));
        let deep = "(".repeat(1000) + "I" + &")".repeat(1000);
        assert!(matches!(parse(&deep), Err(FrontendError::TooDeep { .. })));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Value::Spinor(Spinor::kappa()), Format::Text), "(z2 | -z1~)");
        assert_eq!(render(&Value::Scalar(Gq::from_int(-1)), Format::Text), "-1/1");
        let e = expand_value(&ev("(z2~ | 0)")).unwrap();
        assert_eq!(e.to_json().to_string(), r#"[[["+",1,1,2],"-1/2"]]"#);
    }

    #[test]
    fn render_parse_round_trip() {
        for text in ["kappa", "kappastar*mu + 1/3i*phi-(1,0,2)", "(1 + z1^2 | (1/2-1/3i)*z2~)", "tr(kappa)"] {
            let v = ev(text);
            let back = ev(&render(&v, Format::Text));
            assert_eq!(back, v, "{text}");
        }
    }

    #[test]
    fn matrix_values() {
        let v = ev("[tensor(kappa,E(1,2)), nder]");
        let Value::Extended(x) = v else { panic!() };
        let ke = ExtendedElement::tensor(&Spinor::kappa(), &ScalarMatrix::unit(2, 0, 1));
        assert_eq!(x, ke.scale(&Gq::from_ratio(-1, 2)));
        let v = ev("[tensor(I,E(1,2)), tensor(I,E(2,1))]");
        assert_eq!(
            v,
            Value::Current(CurrentElement::tensor(&Spinor::identity(), &make_sl(2).unwrap().h[0]))
        );
        assert!(matches!(ev("ak(0) + tensor(I,H(1))"), Value::Extended(_)));
    }
}
