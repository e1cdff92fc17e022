//! Arithmetic expressions for the perturbed bifunctions.
//!
//! Expressions are written over five variable namespaces with 1-based
//! indices: `p` (parameter), `z`/`x` (first space) and `w`/`y` (second
//! space), e.g. `(z1 - x1) * (p1^2 + 2)`. Grammar is standard infix with
//! precedence `^` > unary `-` > `*`,`/` > `+`,`-`; `^` takes an integer
//! literal exponent and binds right-associatively. Supported functions:
//! `abs`, `sqrt`, `min2`, `max2`.
//!
//! Parsed expressions are immutable and evaluation is pure, so they can be
//! shared freely across threads.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Variable namespace. `p` is the parameter point, `z`/`x` live in the first
/// space, `w`/`y` in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Namespace {
    P,
    Z,
    X,
    W,
    Y,
}

impl Namespace {
    pub fn letter(self) -> char {
        match self {
            Namespace::P => 'p',
            Namespace::Z => 'z',
            Namespace::X => 'x',
            Namespace::W => 'w',
            Namespace::Y => 'y',
        }
    }
}

impl fmt::Display for Namespace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A variable reference such as `z1` or `p2` (index is 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarRef {
    pub namespace: Namespace,
    pub index: usize,
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.namespace, self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Abs,
    Sqrt,
    Min2,
    Max2,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
            Func::Min2 => "min2",
            Func::Max2 => "max2",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Abs | Func::Sqrt => 1,
            Func::Min2 | Func::Max2 => 2,
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        match name {
            "abs" => Some(Func::Abs),
            "sqrt" => Some(Func::Sqrt),
            "min2" => Some(Func::Min2),
            "max2" => Some(Func::Max2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Var(VarRef),
    Neg(std::boxed::Box<Node>),
    Bin(BinOp, std::boxed::Box<Node>, std::boxed::Box<Node>),
    Pow(std::boxed::Box<Node>, i32),
    Call(Func, Vec<Node>),
}

/// A parsed, immutable expression.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    root: Node,
}

/// Syntax error with the byte offset and the offending token text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message} (found `{token}`)")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub token: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>, token: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
            token: token.into(),
        }
    }
}

/// Evaluation failure. These signal an ill-posed instance definition rather
/// than a recoverable condition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {0}")]
    SqrtOfNegative(f64),
    #[error("zero base raised to negative exponent {0}")]
    ZeroToNegativePower(i32),
    #[error("variable {var} is unbound (namespace holds {len} values)")]
    Unbound { var: VarRef, len: usize },
}

/// One value vector per namespace in use. Slices left empty are treated as
/// unbound; referencing them is an evaluation error.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bindings<'a> {
    pub p: &'a [f64],
    pub z: &'a [f64],
    pub x: &'a [f64],
    pub w: &'a [f64],
    pub y: &'a [f64],
}

impl<'a> Bindings<'a> {
    fn slot(&self, ns: Namespace) -> &'a [f64] {
        match ns {
            Namespace::P => self.p,
            Namespace::Z => self.z,
            Namespace::X => self.x,
            Namespace::W => self.w,
            Namespace::Y => self.y,
        }
    }
}

impl Expression {
    /// Parses `text` into an expression.
    pub fn parse(text: &str) -> Result<Expression, ParseError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            end: text.len(),
        };
        let root = parser.expression()?;
        if let Some(tok) = parser.peek() {
            return Err(ParseError::new(
                tok.offset,
                "unexpected trailing input",
                tok.text(),
            ));
        }
        Ok(Expression { root })
    }

    /// Evaluates the expression under `b`. Deterministic double-precision
    /// recursion; errors on division by zero and square roots of negatives.
    pub fn evaluate(&self, b: &Bindings<'_>) -> Result<f64, EvalError> {
        eval(&self.root, b)
    }

    /// The exact set of variables referenced by the expression.
    pub fn free_vars(&self) -> BTreeSet<VarRef> {
        let mut out = BTreeSet::new();
        collect_vars(&self.root, &mut out);
        out
    }
}

impl fmt::Display for Expression {
    /// Fully parenthesized canonical form; re-parsing it reproduces the AST.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(&self.root, f)
    }
}

fn write_node(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match node {
        Node::Const(c) => write!(f, "{}", c),
        Node::Var(v) => write!(f, "{}", v),
        Node::Neg(inner) => {
            write!(f, "(-")?;
            write_node(inner, f)?;
            write!(f, ")")
        }
        Node::Bin(op, a, b) => {
            write!(f, "(")?;
            write_node(a, f)?;
            write!(f, " {} ", op.symbol())?;
            write_node(b, f)?;
            write!(f, ")")
        }
        Node::Pow(base, exp) => {
            write!(f, "(")?;
            write_node(base, f)?;
            write!(f, "^{})", exp)
        }
        Node::Call(func, args) => {
            write!(f, "{}(", func.name())?;
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_node(arg, f)?;
            }
            write!(f, ")")
        }
    }
}

fn eval(node: &Node, b: &Bindings<'_>) -> Result<f64, EvalError> {
    match node {
        Node::Const(c) => Ok(*c),
        Node::Var(v) => {
            let slot = b.slot(v.namespace);
            slot.get(v.index - 1).copied().ok_or(EvalError::Unbound {
                var: *v,
                len: slot.len(),
            })
        }
        Node::Neg(inner) => Ok(-eval(inner, b)?),
        Node::Bin(op, a, c) => {
            let lhs = eval(a, b)?;
            let rhs = eval(c, b)?;
            match op {
                BinOp::Add => Ok(lhs + rhs),
                BinOp::Sub => Ok(lhs - rhs),
                BinOp::Mul => Ok(lhs * rhs),
                BinOp::Div => {
                    if rhs == 0.0 {
                        Err(EvalError::DivisionByZero)
                    } else {
                        Ok(lhs / rhs)
                    }
                }
            }
        }
        Node::Pow(base, exp) => {
            let v = eval(base, b)?;
            if v == 0.0 && *exp < 0 {
                Err(EvalError::ZeroToNegativePower(*exp))
            } else {
                Ok(v.powi(*exp))
            }
        }
        Node::Call(func, args) => match func {
            Func::Abs => Ok(eval(&args[0], b)?.abs()),
            Func::Sqrt => {
                let v = eval(&args[0], b)?;
                if v < 0.0 {
                    Err(EvalError::SqrtOfNegative(v))
                } else {
                    Ok(v.sqrt())
                }
            }
            Func::Min2 => Ok(eval(&args[0], b)?.min(eval(&args[1], b)?)),
            Func::Max2 => Ok(eval(&args[0], b)?.max(eval(&args[1], b)?)),
        },
    }
}

fn collect_vars(node: &Node, out: &mut BTreeSet<VarRef>) {
    match node {
        Node::Const(_) => {}
        Node::Var(v) => {
            out.insert(*v);
        }
        Node::Neg(inner) => collect_vars(inner, out),
        Node::Bin(_, a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Node::Pow(base, _) => collect_vars(base, out),
        Node::Call(_, args) => {
            for arg in args {
                collect_vars(arg, out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number { value: f64, integral: Option<i64> },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    kind: TokenKind,
    offset: usize,
    raw: String,
}

impl Token {
    fn text(&self) -> String {
        self.raw.clone()
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match b {
            b'+' => {
                i += 1;
                TokenKind::Plus
            }
            b'-' => {
                i += 1;
                TokenKind::Minus
            }
            b'*' => {
                i += 1;
                TokenKind::Star
            }
            b'/' => {
                i += 1;
                TokenKind::Slash
            }
            b'^' => {
                i += 1;
                TokenKind::Caret
            }
            b'(' => {
                i += 1;
                TokenKind::LParen
            }
            b')' => {
                i += 1;
                TokenKind::RParen
            }
            b',' => {
                i += 1;
                TokenKind::Comma
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut fractional = false;
                if i < bytes.len() && bytes[i] == b'.' {
                    fractional = true;
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::new(
                            start,
                            "malformed number literal",
                            &text[start..i],
                        ));
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    fractional = true;
                    i += 1;
                    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                        i += 1;
                    }
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::new(
                            start,
                            "malformed number literal",
                            &text[start..i],
                        ));
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let raw = &text[start..i];
                let value: f64 = raw.parse().map_err(|_| {
                    ParseError::new(start, "malformed number literal", raw)
                })?;
                let integral = if fractional { None } else { raw.parse::<i64>().ok() };
                TokenKind::Number { value, integral }
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                TokenKind::Ident(text[start..i].to_string())
            }
            _ => {
                let ch_len = text[start..].chars().next().map_or(1, |c| c.len_utf8());
                return Err(ParseError::new(
                    start,
                    "unexpected character",
                    &text[start..start + ch_len],
                ));
            }
        };
        tokens.push(Token {
            kind,
            offset: start,
            raw: text[start..i].to_string(),
        });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn eof_error(&self, message: &str) -> ParseError {
        ParseError::new(self.end, message, "end of input")
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        match self.next() {
            Some(tok) if tok.kind == kind => Ok(tok),
            Some(tok) => Err(ParseError::new(tok.offset, format!("expected {what}"), tok.text())),
            None => Err(self.eof_error(&format!("expected {what}"))),
        }
    }

    fn expression(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => break,
            };
            self.next();
            let rhs = self.term()?;
            lhs = Node::Bin(op, lhs.into(), rhs.into());
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => break,
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Node::Bin(op, lhs.into(), rhs.into());
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.next();
            let inner = self.unary()?;
            Ok(Node::Neg(inner.into()))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            self.next();
            let exp = self.exponent()?;
            Ok(Node::Pow(base.into(), exp))
        } else {
            Ok(base)
        }
    }

    /// Exponents are signed integer literals; a chained `^` folds
    /// right-associatively into a single integer.
    fn exponent(&mut self) -> Result<i32, ParseError> {
        let negative = if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.next();
            true
        } else {
            false
        };
        let tok = self
            .next()
            .ok_or_else(|| self.eof_error("expected an integer exponent"))?;
        let magnitude = match tok.kind {
            TokenKind::Number {
                integral: Some(v), ..
            } => v,
            TokenKind::Number { integral: None, .. } => {
                return Err(ParseError::new(
                    tok.offset,
                    "exponent must be an integer literal",
                    tok.text(),
                ))
            }
            _ => {
                return Err(ParseError::new(
                    tok.offset,
                    "expected an integer exponent",
                    tok.text(),
                ))
            }
        };
        let mut value = magnitude;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            self.next();
            let rest = self.exponent()?;
            if rest < 0 {
                return Err(ParseError::new(
                    tok.offset,
                    "chained exponent would be non-integer",
                    tok.text(),
                ));
            }
            value = magnitude
                .checked_pow(rest as u32)
                .ok_or_else(|| {
                    ParseError::new(tok.offset, "exponent overflows", tok.text())
                })?;
        }
        if negative {
            value = -value;
        }
        i32::try_from(value)
            .map_err(|_| ParseError::new(tok.offset, "exponent out of range", tok.text()))
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let tok = self
            .next()
            .ok_or_else(|| self.eof_error("expected an operand"))?;
        match tok.kind {
            TokenKind::Number { value, .. } => Ok(Node::Const(value)),
            TokenKind::LParen => {
                let inner = self.expression()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    self.expect(TokenKind::LParen, "`(` after function name")?;
                    let mut args = vec![self.expression()?];
                    while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Comma)) {
                        self.next();
                        args.push(self.expression()?);
                    }
                    self.expect(TokenKind::RParen, "`)`")?;
                    if args.len() != func.arity() {
                        return Err(ParseError::new(
                            tok.offset,
                            format!(
                                "{} takes {} argument(s), got {}",
                                func.name(),
                                func.arity(),
                                args.len()
                            ),
                            tok.text(),
                        ));
                    }
                    Ok(Node::Call(func, args))
                } else {
                    parse_var(&name)
                        .map(Node::Var)
                        .ok_or_else(|| ParseError::new(tok.offset, "unknown identifier", &name))
                }
            }
            _ => Err(ParseError::new(tok.offset, "expected an operand", tok.text())),
        }
    }
}

fn parse_var(name: &str) -> Option<VarRef> {
    let mut chars = name.chars();
    let ns = match chars.next()? {
        'p' => Namespace::P,
        'z' => Namespace::Z,
        'x' => Namespace::X,
        'w' => Namespace::W,
        'y' => Namespace::Y,
        _ => return None,
    };
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let index: usize = rest.parse().ok()?;
    if index == 0 {
        return None;
    }
    Some(VarRef {
        namespace: ns,
        index,
    })
}
