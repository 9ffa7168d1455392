//! Math-expression language for curve coordinates.
//!
//! Grammar (standard precedence, `^` right-associative and binding tighter
//! than unary minus, so `-s^2` parses as `-(s^2)`):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | identifier | identifier '(' sum ')' | '(' sum ')'
//! ```
//!
//! The curve parameter is the identifier `s`; `pi` and `e` are built-in
//! constants; `sin cos tan sqrt exp log atan` are the available functions.
//! Any other identifier is a named parameter that must be bound before
//! evaluation. Every node carries its source byte offset for error
//! reporting.

use crate::error::{Error, JetError, ParseError, Result};
use crate::jet::Jet;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sqrt,
    Exp,
    Log,
    Atan,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sqrt" => Func::Sqrt,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "atan" => Func::Atan,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Atan => "atan",
        }
    }
}

/// One expression node. Equality ignores source offsets, so a reparse of the
/// canonical serialization compares equal to the original tree.
#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Number(f64),
    /// The curve parameter `s`.
    Var,
    /// A named parameter bound at evaluation time.
    Param(String),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

/// A parsed coordinate expression.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprAst {
    pub root: Node,
}

impl ExprAst {
    pub fn parse(text: &str) -> Result<ExprAst, ParseError> {
        let tokens = lex(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let root = parser.parse_sum()?;
        match parser.peek() {
            Token::End(_) => Ok(ExprAst { root }),
            t => Err(ParseError::Syntax {
                offset: t.offset(),
                message: format!("unexpected `{}`", t.describe()),
            }),
        }
    }

    /// Names of all parameters referenced by the expression.
    pub fn referenced_params(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        collect_params(&self.root, &mut out);
        out
    }

    /// Check that every referenced parameter is bound to a finite value.
    pub fn validate_params(&self, params: &BTreeMap<String, f64>) -> Result<(), ParseError> {
        for (name, offset) in self.referenced_params() {
            match params.get(&name) {
                Some(v) if v.is_finite() => {}
                _ => return Err(ParseError::UnknownIdentifier { name, offset }),
            }
        }
        Ok(())
    }

    /// Evaluate as an order-5 jet in the curve parameter.
    pub fn eval_jet(&self, s: &Jet, params: &BTreeMap<String, f64>) -> Result<Jet> {
        eval_jet_node(&self.root, s, params)
    }

    /// Plain scalar evaluation with the same domain rules as the jet path.
    pub fn eval_f64(&self, s: f64, params: &BTreeMap<String, f64>) -> Result<f64> {
        eval_f64_node(&self.root, s, params)
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(&self.root, f)
    }
}

fn collect_params(node: &Node, out: &mut Vec<(String, usize)>) {
    match &node.kind {
        NodeKind::Param(name) => out.push((name.clone(), node.offset)),
        NodeKind::Neg(a) | NodeKind::Call(_, a) => collect_params(a, out),
        NodeKind::Binary(_, l, r) => {
            collect_params(l, out);
            collect_params(r, out);
        }
        NodeKind::Number(_) | NodeKind::Var => {}
    }
}

/// Canonical serialization: fully parenthesized, nonnegative literals with
/// explicit negation nodes, so reparsing yields an identical tree.
fn write_node(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match &node.kind {
        NodeKind::Number(v) => write!(f, "{v}"),
        NodeKind::Var => write!(f, "s"),
        NodeKind::Param(name) => write!(f, "{name}"),
        NodeKind::Neg(a) => {
            write!(f, "(-")?;
            write_node(a, f)?;
            write!(f, ")")
        }
        NodeKind::Binary(op, l, r) => {
            write!(f, "(")?;
            write_node(l, f)?;
            write!(f, " {} ", op.symbol())?;
            write_node(r, f)?;
            write!(f, ")")
        }
        NodeKind::Call(func, a) => {
            write!(f, "{}(", func.name())?;
            write_node(a, f)?;
            write!(f, ")")
        }
    }
}

fn eval_jet_node(node: &Node, s: &Jet, params: &BTreeMap<String, f64>) -> Result<Jet> {
    Ok(match &node.kind {
        NodeKind::Number(v) => Jet::constant(*v),
        NodeKind::Var => *s,
        NodeKind::Param(name) => match params.get(name) {
            Some(v) => Jet::constant(*v),
            None => {
                return Err(ParseError::UnknownIdentifier {
                    name: name.clone(),
                    offset: node.offset,
                }
                .into())
            }
        },
        NodeKind::Neg(a) => -eval_jet_node(a, s, params)?,
        NodeKind::Binary(op, l, r) => {
            let lv = eval_jet_node(l, s, params)?;
            let rv = eval_jet_node(r, s, params)?;
            match op {
                BinOp::Add => lv + rv,
                BinOp::Sub => lv - rv,
                BinOp::Mul => lv * rv,
                BinOp::Div => lv.div(&rv)?,
                BinOp::Pow => pow_jet(&lv, &rv)?,
            }
        }
        NodeKind::Call(func, a) => {
            let av = eval_jet_node(a, s, params)?;
            match func {
                Func::Sin => av.sin(),
                Func::Cos => av.cos(),
                Func::Tan => av.tan()?,
                Func::Sqrt => av.sqrt()?,
                Func::Exp => av.exp()?,
                Func::Log => av.ln()?,
                Func::Atan => av.atan(),
            }
        }
    })
}

/// Exponentiation rule: the exponent must evaluate to a constant. Integer
/// exponents expand by repeated multiplication (negative bases allowed);
/// anything else goes through `pow-by-real` and needs a positive base.
fn pow_jet(base: &Jet, exponent: &Jet) -> Result<Jet, JetError> {
    if exponent.c[1..].iter().any(|c| *c != 0.0) {
        return Err(JetError::new(
            "pow-by-real",
            "exponent must be constant",
            exponent.value(),
        ));
    }
    let e = exponent.value();
    if e.fract() == 0.0 && e.abs() <= 1e9 {
        base.powi(e as i64)
    } else {
        base.powf(e)
    }
}

fn eval_f64_node(node: &Node, s: f64, params: &BTreeMap<String, f64>) -> Result<f64> {
    let jet_err = |op: &'static str, reason: &'static str, v: f64| -> Error {
        JetError::new(op, reason, v).into()
    };
    Ok(match &node.kind {
        NodeKind::Number(v) => *v,
        NodeKind::Var => s,
        NodeKind::Param(name) => match params.get(name) {
            Some(v) => *v,
            None => {
                return Err(ParseError::UnknownIdentifier {
                    name: name.clone(),
                    offset: node.offset,
                }
                .into())
            }
        },
        NodeKind::Neg(a) => -eval_f64_node(a, s, params)?,
        NodeKind::Binary(op, l, r) => {
            let lv = eval_f64_node(l, s, params)?;
            let rv = eval_f64_node(r, s, params)?;
            match op {
                BinOp::Add => lv + rv,
                BinOp::Sub => lv - rv,
                BinOp::Mul => lv * rv,
                BinOp::Div => {
                    if rv == 0.0 {
                        return Err(jet_err("div", "division by zero value", 0.0));
                    }
                    lv / rv
                }
                BinOp::Pow => {
                    if rv.fract() == 0.0 && rv.abs() <= 1e9 {
                        lv.powi(rv as i32)
                    } else if lv <= 0.0 {
                        return Err(jet_err("pow-by-real", "base value must be positive", lv));
                    } else {
                        lv.powf(rv)
                    }
                }
            }
        }
        NodeKind::Call(func, a) => {
            let av = eval_f64_node(a, s, params)?;
            match func {
                Func::Sin => av.sin(),
                Func::Cos => av.cos(),
                Func::Tan => av.tan(),
                Func::Sqrt => {
                    if av <= 0.0 {
                        return Err(jet_err("sqrt", "argument value must be positive", av));
                    }
                    av.sqrt()
                }
                Func::Exp => av.exp(),
                Func::Log => {
                    if av <= 0.0 {
                        return Err(jet_err("log", "argument value must be positive", av));
                    }
                    av.ln()
                }
                Func::Atan => av.atan(),
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64, usize),
    Ident(String, usize),
    Plus(usize),
    Minus(usize),
    Star(usize),
    Slash(usize),
    Caret(usize),
    LParen(usize),
    RParen(usize),
    Comma(usize),
    End(usize),
}

impl Token {
    fn offset(&self) -> usize {
        match self {
            Token::Number(_, o)
            | Token::Ident(_, o)
            | Token::Plus(o)
            | Token::Minus(o)
            | Token::Star(o)
            | Token::Slash(o)
            | Token::Caret(o)
            | Token::LParen(o)
            | Token::RParen(o)
            | Token::Comma(o)
            | Token::End(o) => *o,
        }
    }

    fn describe(&self) -> String {
        match self {
            Token::Number(v, _) => format!("{v}"),
            Token::Ident(n, _) => n.clone(),
            Token::Plus(_) => "+".into(),
            Token::Minus(_) => "-".into(),
            Token::Star(_) => "*".into(),
            Token::Slash(_) => "/".into(),
            Token::Caret(_) => "^".into(),
            Token::LParen(_) => "(".into(),
            Token::RParen(_) => ")".into(),
            Token::Comma(_) => ",".into(),
            Token::End(_) => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Syntax {
            offset: 0,
            message: "empty expression".into(),
        });
    }
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => push_simple(&mut tokens, Token::Plus(i), &mut i),
            b'-' => push_simple(&mut tokens, Token::Minus(i), &mut i),
            b'*' => push_simple(&mut tokens, Token::Star(i), &mut i),
            b'/' => push_simple(&mut tokens, Token::Slash(i), &mut i),
            b'^' => push_simple(&mut tokens, Token::Caret(i), &mut i),
            b'(' => push_simple(&mut tokens, Token::LParen(i), &mut i),
            b')' => push_simple(&mut tokens, Token::RParen(i), &mut i),
            b',' => push_simple(&mut tokens, Token::Comma(i), &mut i),
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let slice = &text[start..i];
                let value: f64 = slice.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("malformed number `{slice}`"),
                })?;
                tokens.push(Token::Number(value, start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token::Ident(text[start..i].to_string(), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{}`", &text[i..i + 1]),
                })
            }
        }
    }
    tokens.push(Token::End(bytes.len()));
    Ok(tokens)
}

fn push_simple(tokens: &mut Vec<Token>, t: Token, i: &mut usize) {
    tokens.push(t);
    *i += 1;
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn parse_sum(&mut self) -> Result<Node, ParseError> {
        let mut node = self.parse_product()?;
        loop {
            let (op, offset) = match self.peek() {
                Token::Plus(o) => (BinOp::Add, *o),
                Token::Minus(o) => (BinOp::Sub, *o),
                _ => break,
            };
            self.bump();
            let rhs = self.parse_product()?;
            node = Node {
                kind: NodeKind::Binary(op, Box::new(node), Box::new(rhs)),
                offset,
            };
        }
        Ok(node)
    }

    fn parse_product(&mut self) -> Result<Node, ParseError> {
        let mut node = self.parse_unary()?;
        loop {
            let (op, offset) = match self.peek() {
                Token::Star(o) => (BinOp::Mul, *o),
                Token::Slash(o) => (BinOp::Div, *o),
                _ => break,
            };
            self.bump();
            let rhs = self.parse_unary()?;
            node = Node {
                kind: NodeKind::Binary(op, Box::new(node), Box::new(rhs)),
                offset,
            };
        }
        Ok(node)
    }

    fn parse_unary(&mut self) -> Result<Node, ParseError> {
        if let Token::Minus(offset) = *self.peek() {
            self.bump();
            let inner = self.parse_unary()?;
            return Ok(Node {
                kind: NodeKind::Neg(Box::new(inner)),
                offset,
            });
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Node, ParseError> {
        let base = self.parse_atom()?;
        if let Token::Caret(offset) = *self.peek() {
            self.bump();
            let exponent = self.parse_unary()?;
            return Ok(Node {
                kind: NodeKind::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)),
                offset,
            });
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Node, ParseError> {
        match self.bump() {
            Token::Number(v, offset) => Ok(Node {
                kind: NodeKind::Number(v),
                offset,
            }),
            Token::LParen(_) => {
                let inner = self.parse_sum()?;
                match self.bump() {
                    Token::RParen(_) => Ok(inner),
                    t => Err(ParseError::Syntax {
                        offset: t.offset(),
                        message: "expected `)`".into(),
                    }),
                }
            }
            Token::Ident(name, offset) => {
                if let Some(func) = Func::from_name(&name) {
                    return self.parse_call(func, &name, offset);
                }
                let kind = match name.as_str() {
                    "s" => NodeKind::Var,
                    "pi" => NodeKind::Number(std::f64::consts::PI),
                    "e" => NodeKind::Number(std::f64::consts::E),
                    _ => NodeKind::Param(name),
                };
                Ok(Node { kind, offset })
            }
            t => Err(ParseError::Syntax {
                offset: t.offset(),
                message: format!("expected a value, found `{}`", t.describe()),
            }),
        }
    }

    fn parse_call(&mut self, func: Func, name: &str, offset: usize) -> Result<Node, ParseError> {
        match self.bump() {
            Token::LParen(_) => {}
            t => {
                return Err(ParseError::WrongArity {
                    name: name.to_string(),
                    expected: 1,
                    got: 0,
                    offset: t.offset(),
                })
            }
        }
        let mut args = vec![self.parse_sum()?];
        loop {
            match self.bump() {
                Token::RParen(_) => break,
                Token::Comma(_) => args.push(self.parse_sum()?),
                t => {
                    return Err(ParseError::Syntax {
                        offset: t.offset(),
                        message: "expected `,` or `)`".into(),
                    })
                }
            }
        }
        if args.len() != 1 {
            return Err(ParseError::WrongArity {
                name: name.to_string(),
                expected: 1,
                got: args.len(),
                offset,
            });
        }
        Ok(Node {
            kind: NodeKind::Call(func, Box::new(args.pop().unwrap())),
            offset,
        })
    }
}
