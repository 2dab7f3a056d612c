//! Literal text format.
//!
//! Canonical form: `P(k,l): {l1,l2}{u1,l3}`. Blocks follow canonical order
//! and points within a block read `Lower 1..l, Upper 1..k`. The empty
//! partition is written `P(0,0):`.
//!
//! Input also accepts the counterclockwise numbering `P(k,l)#{1,7,9}{2,5}...`
//! where `1..l` are the lower points left to right and `l+1..l+k` run along
//! the upper row from right to left.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::partition::{Partition, PartitionError, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },
    #[error("at byte {offset}: {source}")]
    Invalid {
        offset: usize,
        #[source]
        source: PartitionError,
    },
}

impl LiteralError {
    pub fn offset(&self) -> usize {
        match self {
            LiteralError::Syntax { offset, .. } | LiteralError::Invalid { offset, .. } => *offset,
        }
    }

    fn shifted(self, by: usize) -> Self {
        match self {
            LiteralError::Syntax { offset, expected } => LiteralError::Syntax { offset: offset + by, expected },
            LiteralError::Invalid { offset, source } => LiteralError::Invalid { offset: offset + by, source },
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{}):", self.upper(), self.lower())?;
        let blocks = self.blocks();
        if !blocks.is_empty() {
            f.write_str(" ")?;
        }
        for block in blocks {
            f.write_str("{")?;
            for (i, point) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{point}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn fail<T>(&self, expected: &str) -> Result<T, LiteralError> {
        Err(LiteralError::Syntax { offset: self.pos, expected: expected.to_string() })
    }

    fn expect(&mut self, byte: u8) -> Result<(), LiteralError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("'{}'", byte as char))
        }
    }

    fn number(&mut self) -> Result<usize, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("a number");
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| LiteralError::Syntax { offset: start, expected: "a number that fits".into() })
    }
}

/// Parses a literal at the start of `text`, returning it with the number of
/// bytes consumed. Trailing input is left alone.
pub fn parse_literal_prefix(text: &str) -> Result<(Partition, usize), LiteralError> {
    let mut c = Cursor { text, pos: 0 };
    c.skip_ws();
    let start = c.pos;
    c.expect(b'P')?;
    c.expect(b'(')?;
    let upper = c.number()?;
    c.expect(b',')?;
    let lower = c.number()?;
    c.expect(b')')?;
    c.skip_ws();
    let numeric_points = match c.peek() {
        Some(b':') => false,
        Some(b'#') => true,
        _ => return c.fail("':' or '#'"),
    };
    c.pos += 1;
    let mut blocks: Vec<Vec<Point>> = Vec::new();
    loop {
        let save = c.pos;
        c.skip_ws();
        if c.peek() != Some(b'{') {
            c.pos = save;
            break;
        }
        c.pos += 1;
        let mut block = Vec::new();
        loop {
            c.skip_ws();
            let point = if numeric_points {
                let at = c.pos;
                let n = c.number()?;
                if n == 0 || n > upper + lower {
                    return Err(LiteralError::Syntax {
                        offset: at,
                        expected: format!("a point number in 1..={}", upper + lower),
                    });
                }
                if n <= lower {
                    Point::lower(n)
                } else {
                    Point::upper(upper + 1 - (n - lower))
                }
            } else {
                match c.peek() {
                    Some(b'u') => {
                        c.pos += 1;
                        Point::upper(c.number()?)
                    }
                    Some(b'l') => {
                        c.pos += 1;
                        Point::lower(c.number()?)
                    }
                    _ => return c.fail("'u<i>' or 'l<j>'"),
                }
            };
            block.push(point);
            c.skip_ws();
            match c.peek() {
                Some(b',') => c.pos += 1,
                Some(b'}') => {
                    c.pos += 1;
                    break;
                }
                _ => return c.fail("',' or '}'"),
            }
        }
        blocks.push(block);
    }
    let partition =
        Partition::new(upper, lower, blocks).map_err(|source| LiteralError::Invalid { offset: start, source })?;
    Ok((partition, c.pos))
}

impl FromStr for Partition {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, used) = parse_literal_prefix(s)?;
        let rest = &s[used..];
        if rest.trim().is_empty() {
            Ok(p)
        } else {
            let offset = used + (rest.len() - rest.trim_start().len());
            Err(LiteralError::Syntax { offset, expected: "end of input".into() })
        }
    }
}

/// Parses a literal embedded at byte `offset` of a larger text, reporting
/// errors relative to the larger text.
pub fn parse_literal_at(text: &str, offset: usize) -> Result<(Partition, usize), LiteralError> {
    parse_literal_prefix(&text[offset..]).map_err(|e| e.shifted(offset))
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
