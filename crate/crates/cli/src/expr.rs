//! Partition expressions.
//!
//! ```text
//! expr    := tensor (';' tensor)*          a ; b  is b written below a
//! tensor  := unary (('⊗' | 'ox') unary)*
//! unary   := '~'* atom ('*' | '~')*        * involutes, ~ reflects
//! atom    := literal | name | name '(' int ')' | call | '(' expr ')'
//! call    := nest(e,e,g) | mult(e,s,m) | pdouble(e,s) | sdouble(e,s)
//!          | rot(e,e) | wrot(e,e) | rotl(e,e) | wrotl(e,e)
//! ```

use std::fmt;

use partcalc::constructions::{self, ConstructionError};
use partcalc::named::NamedPartition;
use partcalc::partition::{compose, PartitionError};
use partcalc::text::{parse_literal_at, LiteralError};
use partcalc::{Construction, Partition};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(Partition),
    Named(NamedPartition),
    Tensor(Box<Expr>, Box<Expr>),
    /// `Then(a, b)`: `b` below `a`.
    Then(Box<Expr>, Box<Expr>),
    Involute(Box<Expr>),
    Reflect(Box<Expr>),
    Call(Call),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Callee {
    Nest,
    Mult,
    PartialDoubling,
    ShiftedDoubling,
    Rotate,
    WeakRotate,
    RotateLeft,
    WeakRotateLeft,
}

impl Callee {
    fn lookup(name: &str) -> Option<Self> {
        Some(match name {
            "nest" => Callee::Nest,
            "mult" => Callee::Mult,
            "pdouble" => Callee::PartialDoubling,
            "sdouble" => Callee::ShiftedDoubling,
            "rot" => Callee::Rotate,
            "wrot" => Callee::WeakRotate,
            "rotl" => Callee::RotateLeft,
            "wrotl" => Callee::WeakRotateLeft,
            _ => return None,
        })
    }

    /// `true` for partition arguments, `false` for integers.
    fn signature(self) -> &'static [bool] {
        match self {
            Callee::Nest => &[true, true, false],
            Callee::Mult => &[true, false, false],
            Callee::PartialDoubling | Callee::ShiftedDoubling => &[true, false],
            Callee::Rotate | Callee::WeakRotate | Callee::RotateLeft | Callee::WeakRotateLeft => &[true, true],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub callee: Callee,
    pub parts: Vec<Expr>,
    pub ints: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: expected {expected}")]
pub struct SyntaxError {
    pub position: usize,
    pub expected: String,
}

impl From<LiteralError> for SyntaxError {
    fn from(e: LiteralError) -> Self {
        let expected = match &e {
            LiteralError::Syntax { expected, .. } => expected.clone(),
            LiteralError::Invalid { source, .. } => format!("a valid partition ({source})"),
        };
        SyntaxError { position: e.offset(), expected }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

const TENSOR: &str = "⊗";

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError { position: self.pos, expected: expected.to_string() })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.fail(&format!("'{token}'"))
        }
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        let ident = &rest[..end];
        (!ident.is_empty() && !ident.starts_with(|c: char| c.is_ascii_digit())).then_some(ident)
    }

    fn int(&mut self) -> Result<usize, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return self.fail("an integer");
        }
        let value = rest[..end].parse().map_err(|_| SyntaxError { position: self.pos, expected: "a smaller integer".into() })?;
        self.pos += end;
        Ok(value)
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.tensor()?;
        while self.eat(";") {
            let below = self.tensor()?;
            acc = Expr::Then(Box::new(acc), Box::new(below));
        }
        Ok(acc)
    }

    fn tensor_op(&mut self) -> bool {
        if self.eat(TENSOR) {
            return true;
        }
        if self.peek_ident() == Some("ox") {
            self.pos += 2;
            return true;
        }
        false
    }

    fn tensor(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.unary()?;
        while self.tensor_op() {
            let right = self.unary()?;
            acc = Expr::Tensor(Box::new(acc), Box::new(right));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        let mut prefix = 0;
        while self.eat("~") {
            prefix += 1;
        }
        let mut e = self.atom()?;
        loop {
            if self.eat("*") {
                e = Expr::Involute(Box::new(e));
            } else if self.eat("~") {
                e = Expr::Reflect(Box::new(e));
            } else {
                break;
            }
        }
        for _ in 0..prefix {
            e = Expr::Reflect(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        self.skip_ws();
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        let start = self.pos;
        let Some(ident) = self.peek_ident() else {
            return self.fail("a partition name, literal, call or '('");
        };
        if ident == "P" {
            let (p, used) = parse_literal_at(self.text, start)?;
            self.pos = start + used;
            return Ok(Expr::Literal(p));
        }
        self.pos += ident.len();
        if let Some(callee) = Callee::lookup(ident) {
            self.expect("(")?;
            let mut parts = Vec::new();
            let mut ints = Vec::new();
            for (i, &is_part) in callee.signature().iter().enumerate() {
                if i > 0 {
                    self.expect(",")?;
                }
                if is_part {
                    parts.push(self.expr()?);
                } else {
                    ints.push(self.int()?);
                }
            }
            self.expect(")")?;
            return Ok(Expr::Call(Call { callee, parts, ints }));
        }
        let arg = if NamedPartition::takes_argument(ident) && self.eat("(") {
            let n = self.int()?;
            self.expect(")")?;
            Some(n)
        } else {
            None
        };
        match NamedPartition::lookup(ident, arg) {
            Some(named) => Ok(Expr::Named(named)),
            None => Err(SyntaxError { position: start, expected: "a known partition name".into() }),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// A partition with the loops removed while computing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub partition: Partition,
    pub loops: usize,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} loops={}", self.partition, self.loops)
    }
}

fn from_construction(c: Construction, operands: &[Value]) -> Value {
    let loops = c.removed_loops() + operands.iter().map(|v| v.loops).sum::<usize>();
    Value { partition: c.result, loops }
}

pub fn eval(e: &Expr) -> Result<Value, EvalError> {
    Ok(match e {
        Expr::Literal(p) => Value { partition: p.clone(), loops: 0 },
        Expr::Named(n) => Value { partition: n.build()?, loops: 0 },
        Expr::Tensor(a, b) => {
            let (a, b) = (eval(a)?, eval(b)?);
            Value { partition: a.partition.tensor(&b.partition), loops: a.loops + b.loops }
        }
        Expr::Then(top, below) => {
            let (top, below) = (eval(top)?, eval(below)?);
            let out = compose(&below.partition, &top.partition)?;
            Value { partition: out.result, loops: top.loops + below.loops + out.removed_loops }
        }
        Expr::Involute(a) => {
            let a = eval(a)?;
            Value { partition: a.partition.involute(), loops: a.loops }
        }
        Expr::Reflect(a) => {
            let a = eval(a)?;
            Value { partition: a.partition.reflect(), loops: a.loops }
        }
        Expr::Call(call) => {
            let parts = call.parts.iter().map(eval).collect::<Result<Vec<_>, _>>()?;
            let p = |i: usize| &parts[i].partition;
            let n = &call.ints;
            let c = match call.callee {
                Callee::Nest => constructions::nest(p(0), p(1), n[0])?,
                Callee::Mult => constructions::multi_nest(p(0), n[0], n[1])?,
                Callee::PartialDoubling => constructions::partial_doubling(p(0), n[0])?,
                Callee::ShiftedDoubling => constructions::shifted_doubling(p(0), n[0])?,
                Callee::Rotate => constructions::line_rotate(p(0), p(1))?,
                Callee::WeakRotate => constructions::weak_line_rotate(p(0), p(1))?,
                Callee::RotateLeft => constructions::line_rotate_left(p(0), p(1))?,
                Callee::WeakRotateLeft => constructions::weak_line_rotate_left(p(0), p(1))?,
            };
            from_construction(c, &parts)
        }
    })
}

/// Parses and evaluates in one go.
pub fn evaluate(text: &str) -> anyhow::Result<Value> {
    Ok(eval(&parse(text)?)?)
}

/// Splits at commas outside parentheses and braces.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}
