use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinearError;

pub type Rational = BigRational;

/// Dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinearError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinearError::Shape("rows have different lengths".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries given as `(numerator, denominator)` pairs per row.
    pub fn from_fractions(rows: &[&[(i64, i64)]]) -> Self {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&(p, q)| Rational::new(BigInt::from(p), BigInt::from(q))).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> =
            rows.iter().map(|row| row.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    /// Permutation matrix with a 1 at `(perm[j], j)`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self, LinearError> {
        if self.cols != other.rows {
            return Err(LinearError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Writes the matrix in the file format read by [`parse_matrix`].
impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reads `n <rows> <cols>` followed by `rows` lines of `cols` entries, each
/// an integer or `p/q`. The header may also be given as `<rows> <cols>`,
/// `<n> <rows> <cols>` or a single `<n>` for a square matrix. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix, LinearError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(LinearError::Parse { line: 1, message: "empty matrix file".into() })?;
    let mut tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() == Some(&"n") {
        tokens.remove(0);
    }
    let dims: Vec<usize> = tokens
        .iter()
        .map(|t| t.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| LinearError::Parse { line: header_line, message: format!("bad header '{header}'") })?;
    let (rows, cols) = match dims.as_slice() {
        [n] => (*n, *n),
        [r, c] | [_, r, c] => (*r, *c),
        _ => {
            return Err(LinearError::Parse { line: header_line, message: format!("bad header '{header}'") });
        }
    };
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, content) = lines
            .next()
            .ok_or(LinearError::Parse { line: header_line, message: format!("expected {rows} rows") })?;
        let entries: Vec<&str> = content.split_whitespace().collect();
        if entries.len() != cols {
            return Err(LinearError::Parse { line, message: format!("expected {cols} entries, found {}", entries.len()) });
        }
        for e in entries {
            let value: Rational =
                e.parse().map_err(|_| LinearError::Parse { line, message: format!("'{e}' is not a rational") })?;
            data.push(value);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(LinearError::Parse { line, message: "unexpected extra row".into() });
    }
    Ok(RationalMatrix { rows, cols, data })
}

/// Multi-index with 1-based values, written `(1,2,2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(pub Vec<usize>);

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Digits of `index` in base `n`, most significant first, as 0-based values.
pub(crate) fn digits(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_headers_and_fractions() {
        let m = parse_matrix("n 2 2\n3/5 -4/5\n4/5 3/5\n").unwrap();
        assert_eq!(m, RationalMatrix::from_fractions(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]]));
        assert_eq!(parse_matrix("2\n1 0\n0 1").unwrap(), RationalMatrix::identity(2));
        assert_eq!(parse_matrix("3 2 2\n1 0\n0 1").unwrap(), RationalMatrix::identity(2));
        assert!(matches!(parse_matrix("n 2 2\n1 0\n0 x"), Err(LinearError::Parse { line: 3, .. })));
        assert!(parse_matrix("n 2 2\n1 0").is_err());
    }

    #[test]
    fn display_round_trips() {
        let m = RationalMatrix::from_fractions(&[&[(1, 2), (0, 1)], &[(-7, 3), (2, 1)]]);
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn arithmetic() {
        let r = RationalMatrix::from_fractions(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]]);
        assert_eq!(r.mul(&r.transpose()).unwrap(), RationalMatrix::identity(2));
        assert_eq!(RationalMatrix::permutation(&[1, 2, 0])[(1, 0)], Rational::one());
    }
}
