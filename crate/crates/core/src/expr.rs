//! Arithmetic expression trees over formal variables.
//!
//! Surface grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | '(' expr ')' | identifier
//! ```
//!
//! Binary operators are left associative and unary minus binds tighter than
//! any binary operator. Identifiers are `[A-Za-z_][A-Za-z0-9_]*`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbolic::{Fraction, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div];

    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Ordered expression tree: the order of a node's children matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(Var),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }

    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn add(l: Expr, r: Expr) -> Expr {
        Expr::binary(BinOp::Add, l, r)
    }

    pub fn sub(l: Expr, r: Expr) -> Expr {
        Expr::binary(BinOp::Sub, l, r)
    }

    pub fn mul(l: Expr, r: Expr) -> Expr {
        Expr::binary(BinOp::Mul, l, r)
    }

    pub fn div(l: Expr, r: Expr) -> Expr {
        Expr::binary(BinOp::Div, l, r)
    }

    /// Leaf variables in left-to-right order.
    pub fn leaves(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Var(v) => out.push(*v),
            Expr::Neg(c) => c.collect_leaves(out),
            Expr::Binary(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Value in `Z(X)` as a canonical fraction.
    pub fn evaluate(&self) -> Result<Fraction> {
        match self {
            Expr::Var(v) => Ok(Fraction::var(*v)),
            Expr::Neg(c) => Ok(-c.evaluate()?),
            Expr::Binary(op, l, r) => {
                let (l, r) = (l.evaluate()?, r.evaluate()?);
                match op {
                    BinOp::Add => Ok(l.add(&r)),
                    BinOp::Sub => Ok(l.sub(&r)),
                    BinOp::Mul => Ok(l.mul(&r)),
                    BinOp::Div => l.div(&r),
                }
            }
        }
    }

    /// Rewrites every `a - b` as `a + (-b)` and cancels stacked negations.
    /// The result has no subtraction node and no negation directly above a
    /// negation.
    pub fn eliminate_subtraction(&self) -> Expr {
        self.push_minus(false)
    }

    fn push_minus(&self, negated: bool) -> Expr {
        let wrap = |e: Expr| if negated { Expr::neg(e) } else { e };
        match self {
            Expr::Var(v) => wrap(Expr::Var(*v)),
            Expr::Neg(c) => c.push_minus(!negated),
            Expr::Binary(BinOp::Sub, l, r) => {
                wrap(Expr::add(l.push_minus(false), r.push_minus(true)))
            }
            Expr::Binary(op, l, r) => {
                wrap(Expr::binary(*op, l.push_minus(false), r.push_minus(false)))
            }
        }
    }

    /// Renders with `x1, x2, ...` names.
    pub fn render(&self) -> String {
        self.render_with(&|v| format!("x{v}"))
    }

    /// Renders using the surface names recorded in `names`; variables not in
    /// the map fall back to `xN`.
    pub fn render_names(&self, names: &NameMap) -> String {
        self.render_with(&|v| names.name(v).map_or_else(|| format!("x{v}"), str::to_owned))
    }

    fn render_with(&self, name: &dyn Fn(Var) -> String) -> String {
        let mut out = String::new();
        self.write(&mut out, name);
        out
    }

    fn write(&self, out: &mut String, name: &dyn Fn(Var) -> String) {
        match self {
            Expr::Var(v) => out.push_str(&name(*v)),
            Expr::Neg(c) => {
                out.push('-');
                match c.as_ref() {
                    Expr::Var(_) => c.write(out, name),
                    _ => paren(out, |o| c.write(o, name)),
                }
            }
            Expr::Binary(op, l, r) => {
                let p = op.precedence();
                let needs_left = match l.as_ref() {
                    Expr::Var(_) => false,
                    Expr::Neg(_) => true,
                    Expr::Binary(lop, ..) => lop.precedence() < p,
                };
                let needs_right = match r.as_ref() {
                    Expr::Var(_) => false,
                    Expr::Neg(_) => true,
                    Expr::Binary(rop, ..) => rop.precedence() <= p,
                };
                if needs_left {
                    paren(out, |o| l.write(o, name));
                } else {
                    l.write(out, name);
                }
                out.push(' ');
                out.push(op.symbol());
                out.push(' ');
                if needs_right {
                    paren(out, |o| r.write(o, name));
                } else {
                    r.write(out, name);
                }
            }
        }
    }
}

fn paren(out: &mut String, inner: impl FnOnce(&mut String)) {
    out.push('(');
    inner(out);
    out.push(')');
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Renders a tree with `xN` names.
pub fn render(tree: &Expr) -> String {
    tree.render()
}

/// Bijection between surface identifiers and variable indices.
///
/// Identifiers of the form `xN` (`N >= 1`, no leading zero) are bound to
/// index `N`. Every other identifier receives the smallest index not yet
/// used, in order of first occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameMap {
    by_name: HashMap<String, Var>,
    by_index: HashMap<Var, String>,
}

impl NameMap {
    pub fn index(&self, name: &str) -> Option<Var> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, v: Var) -> Option<&str> {
        self.by_index.get(&v).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.by_name.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    /// `(index, name)` pairs sorted by index.
    pub fn entries(&self) -> Vec<(Var, &str)> {
        let mut e: Vec<_> = self
            .by_index
            .iter()
            .map(|(&v, n)| (v, n.as_str()))
            .collect();
        e.sort_unstable();
        e
    }

    fn from_identifiers<'a>(idents: impl IntoIterator<Item = &'a str> + Clone) -> NameMap {
        let mut map = NameMap::default();
        for id in idents.clone() {
            if let Some(v) = explicit_index(id) {
                map.bind(id, v);
            }
        }
        let mut next: Var = 1;
        for id in idents {
            if map.by_name.contains_key(id) {
                continue;
            }
            while map.by_index.contains_key(&next) {
                next += 1;
            }
            map.bind(id, next);
        }
        map
    }

    fn bind(&mut self, name: &str, v: Var) {
        self.by_name.insert(name.to_owned(), v);
        self.by_index.insert(v, name.to_owned());
    }
}

fn explicit_index(id: &str) -> Option<Var> {
    let digits = id.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

#[derive(Clone, Debug, PartialEq)]
enum Token<'a> {
    Ident(&'a str),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' | '-' | '*' | '/' => {
                chars.next();
                tokens.push((pos, Token::Op(c)));
            }
            '(' => {
                chars.next();
                tokens.push((pos, Token::LParen));
            }
            ')' => {
                chars.next();
                tokens.push((pos, Token::RParen));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = pos;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((pos, Token::Ident(&text[pos..end])));
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    message: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a, 'm> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
    names: &'m NameMap,
}

impl<'a> Parser<'a, '_> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(Token::Op(c @ ('*' | '/'))) = self.peek() {
            let op = if *c == '*' { BinOp::Mul } else { BinOp::Div };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(Expr::neg(self.factor()?))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some(Token::Ident(id)) => {
                self.pos += 1;
                Ok(Expr::Var(
                    self.names.index(id).expect("identifier was registered"),
                ))
            }
            Some(Token::Op(c)) => Err(self.error(format!("unexpected operator '{c}'"))),
            Some(Token::RParen) => Err(self.error("unexpected ')'")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn parse_tokens<'a>(
    text: &'a str,
    tokens: Vec<(usize, Token<'a>)>,
    names: &NameMap,
) -> Result<Expr> {
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        names,
    };
    let tree = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(tree)
}

/// Parses one expression, assigning variable indices from its identifiers.
pub fn parse(text: &str) -> Result<(Expr, NameMap)> {
    let (mut trees, names) = parse_many(&[text])?;
    Ok((trees.remove(0), names))
}

/// Parses several expressions against one shared [`NameMap`], so the same
/// identifier means the same variable in all of them.
pub fn parse_many(texts: &[&str]) -> Result<(Vec<Expr>, NameMap)> {
    let token_lists = texts
        .iter()
        .map(|t| tokenize(t))
        .collect::<Result<Vec<_>>>()?;
    let idents = token_lists.iter().flatten().filter_map(|(_, t)| match t {
        Token::Ident(id) => Some(*id),
        _ => None,
    });
    let names = NameMap::from_identifiers(idents);
    let trees = texts
        .iter()
        .zip(token_lists)
        .map(|(text, tokens)| parse_tokens(text, tokens, &names))
        .collect::<Result<Vec<_>>>()?;
    Ok((trees, names))
}
