use std::fmt;

use num_traits::{One, Zero};

use crate::partition::{Partition, Point};

use super::matrix::{digits, MultiIndex, Rational, RationalMatrix};
use super::tmap::t_map;
use super::LinearError;

/// First `(α, β)` in lexicographic order (α outer) where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} beta={} lhs={} rhs={}", self.alpha, self.beta, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Box<Counterexample>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "HOLDS"),
            Verdict::Fails(c) => write!(f, "FAILS {c}"),
        }
    }
}

/// `δ_p(α, β)`: 1 iff labelling the upper points by `α` and the lower points
/// by `β` is constant on every block.
pub fn delta(p: &Partition, alpha: &[usize], beta: &[usize]) -> Result<bool, LinearError> {
    if alpha.len() != p.upper() || beta.len() != p.lower() {
        return Err(LinearError::LengthMismatch {
            alpha: alpha.len(),
            beta: beta.len(),
            upper: p.upper(),
            lower: p.lower(),
        });
    }
    let mut value: Vec<Option<usize>> = vec![None; p.block_count()];
    let points = beta
        .iter()
        .enumerate()
        .map(|(j, &v)| (Point::lower(j + 1), v))
        .chain(alpha.iter().enumerate().map(|(i, &v)| (Point::upper(i + 1), v)));
    for (point, v) in points {
        let slot = &mut value[p.block_of(point) as usize];
        match slot {
            Some(w) if *w != v => return Ok(false),
            _ => *slot = Some(v),
        }
    }
    Ok(true)
}

struct BlockShape {
    upper: Vec<usize>,
    lower: Vec<usize>,
}

fn shapes(p: &Partition) -> Vec<BlockShape> {
    let mut out: Vec<BlockShape> =
        (0..p.block_count()).map(|_| BlockShape { upper: Vec::new(), lower: Vec::new() }).collect();
    for j in 0..p.lower() {
        out[p.block_of(Point::lower(j + 1)) as usize].lower.push(j);
    }
    for i in 0..p.upper() {
        out[p.block_of(Point::upper(i + 1)) as usize].upper.push(i);
    }
    out
}

fn square_size(u: &RationalMatrix) -> Result<usize, LinearError> {
    if !u.is_square() || u.rows() == 0 {
        return Err(LinearError::Shape(format!("expected a nonempty square matrix, got {}x{}", u.rows(), u.cols())));
    }
    Ok(u.rows())
}

/// Common value of `index` on `positions`, or `None` if it varies.
fn constant(index: &[usize], positions: &[usize]) -> Option<usize> {
    let first = index[*positions.first()?];
    positions.iter().all(|&i| index[i] == first).then_some(first)
}

/// `Σ_γ δ_p(γ,β) u_{γ1α1}⋯u_{γkαk}`, one factor per block.
fn relation_lhs(blocks: &[BlockShape], u: &RationalMatrix, alpha: &[usize], beta: &[usize]) -> Rational {
    let n = u.rows();
    let mut acc = Rational::one();
    for b in blocks {
        let factor = if b.lower.is_empty() {
            let mut s = Rational::zero();
            for v in 0..n {
                let mut t = Rational::one();
                for &i in &b.upper {
                    t *= &u[(v, alpha[i])];
                }
                s += t;
            }
            s
        } else {
            let Some(v) = constant(beta, &b.lower) else {
                return Rational::zero();
            };
            let mut t = Rational::one();
            for &i in &b.upper {
                t *= &u[(v, alpha[i])];
            }
            t
        };
        if factor.is_zero() {
            return factor;
        }
        acc *= factor;
    }
    acc
}

/// `Σ_{γ'} δ_p(α,γ') u_{β1γ1'}⋯u_{βlγl'}`, one factor per block.
fn relation_rhs(blocks: &[BlockShape], u: &RationalMatrix, alpha: &[usize], beta: &[usize]) -> Rational {
    let n = u.rows();
    let mut acc = Rational::one();
    for b in blocks {
        let factor = if b.upper.is_empty() {
            let mut s = Rational::zero();
            for v in 0..n {
                let mut t = Rational::one();
                for &j in &b.lower {
                    t *= &u[(beta[j], v)];
                }
                s += t;
            }
            s
        } else {
            let Some(v) = constant(alpha, &b.upper) else {
                return Rational::zero();
            };
            let mut t = Rational::one();
            for &j in &b.lower {
                t *= &u[(beta[j], v)];
            }
            t
        };
        if factor.is_zero() {
            return factor;
        }
        acc *= factor;
    }
    acc
}

fn counterexample(alpha: &[usize], beta: &[usize], lhs: Rational, rhs: Rational) -> Verdict {
    let one_based = |x: &[usize]| MultiIndex(x.iter().map(|v| v + 1).collect());
    Verdict::Fails(Box::new(Counterexample { alpha: one_based(alpha), beta: one_based(beta), lhs, rhs }))
}

/// Evaluates the relations `R(p)` for the scalar matrix `u` at every
/// `(α, β)`, α outer and β inner, both lexicographic.
pub fn check_relation(p: &Partition, u: &RationalMatrix) -> Result<Verdict, LinearError> {
    let n = square_size(u)?;
    let (k, l) = (p.upper(), p.lower());
    let blocks = shapes(p);
    for a in 0..n.pow(k as u32) {
        let alpha = digits(a, n, k);
        for b in 0..n.pow(l as u32) {
            let beta = digits(b, n, l);
            let lhs = relation_lhs(&blocks, u, &alpha, &beta);
            let rhs = relation_rhs(&blocks, u, &alpha, &beta);
            if lhs != rhs {
                return Ok(counterexample(&alpha, &beta, lhs, rhs));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `⊗_i u[:, idx_i]` as a dense vector of length `n^len`.
fn kron_columns(u: &RationalMatrix, idx: &[usize]) -> Vec<Rational> {
    let n = u.rows();
    let mut v = vec![Rational::one()];
    for &c in idx {
        let mut next = Vec::with_capacity(v.len() * n);
        for x in &v {
            for r in 0..n {
                next.push(x * &u[(r, c)]);
            }
        }
        v = next;
    }
    v
}

/// Compares `T_p u^{⊗k}` with `u^{⊗l} T_p` column by column. Scans in the
/// same order as [`check_relation`], so verdicts coincide exactly when the
/// two descriptions agree.
pub fn check_intertwiner(p: &Partition, u: &RationalMatrix) -> Result<Verdict, LinearError> {
    let n = square_size(u)?;
    let (k, l) = (p.upper(), p.lower());
    let tp = t_map(p, n);
    let by_column = tp.by_column();
    let rows = n.pow(l as u32);
    for a in 0..n.pow(k as u32) {
        let alpha = digits(a, n, k);
        let column = kron_columns(u, &alpha);
        let mut lhs = vec![Rational::zero(); rows];
        for &(r, c) in &tp.entries {
            if !column[c].is_zero() {
                lhs[r] += &column[c];
            }
        }
        let mut rhs = vec![Rational::zero(); rows];
        for &r in by_column.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
            let image = kron_columns(u, &digits(r, n, l));
            for (acc, x) in rhs.iter_mut().zip(image) {
                *acc += x;
            }
        }
        for (b, (x, y)) in lhs.into_iter().zip(rhs).enumerate() {
            if x != y {
                return Ok(counterexample(&alpha, &digits(b, n, l), x, y));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShadowVerdict {
    /// A factor does not satisfy `R(p)`, so there is nothing to check.
    Skipped(String),
    Holds,
    Fails(Box<Counterexample>),
}

/// If `u` and `v` satisfy `R(p)`, so does the product `uv`.
pub fn coproduct_shadow_check(p: &Partition, u: &RationalMatrix, v: &RationalMatrix) -> Result<ShadowVerdict, LinearError> {
    if u.rows() != v.rows() || !u.is_square() || !v.is_square() {
        return Err(LinearError::Shape("u and v must be square of the same size".into()));
    }
    if !check_relation(p, u)?.holds() {
        return Ok(ShadowVerdict::Skipped("u does not satisfy R(p)".into()));
    }
    if !check_relation(p, v)?.holds() {
        return Ok(ShadowVerdict::Skipped("v does not satisfy R(p)".into()));
    }
    Ok(match check_relation(p, &u.mul(v)?)? {
        Verdict::Holds => ShadowVerdict::Holds,
        Verdict::Fails(c) => ShadowVerdict::Fails(c),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeVerdict {
    /// `R(p)` for `u`.
    pub direct: Verdict,
    /// `R(p*)` for `uᵗ`.
    pub dual: Verdict,
    pub agree: bool,
}

/// `R(p)` holds for `u` iff `R(p*)` holds for the transpose.
pub fn antipode_shadow_check(p: &Partition, u: &RationalMatrix) -> Result<AntipodeVerdict, LinearError> {
    let direct = check_relation(p, u)?;
    let dual = check_relation(&p.involute(), &u.transpose())?;
    let agree = direct.holds() == dual.holds();
    Ok(AntipodeVerdict { direct, dual, agree })
}

/// Right inverse of `u` from `p ∈ P(0,l)` whose first block is `{1, r}`:
/// `t_ij = Σ δ_p(∅,(i,γ'_2,…,γ'_l)) u_{β_2γ'_2} ⋯ u_{jγ'_r} ⋯ u_{β_lγ'_l}`
/// with `β` constant on every other block (values `1, 2, …` cyclically in
/// canonical block order). Checks `u·t = 1` before returning.
pub fn right_inverse_witness(p: &Partition, u: &RationalMatrix) -> Result<RationalMatrix, LinearError> {
    let n = square_size(u)?;
    if !p.is_lower_only() || p.lower() < 2 {
        return Err(LinearError::Unsupported(format!("{p} is not in P(0,l) with l >= 2")));
    }
    let blocks = p.blocks();
    if blocks[0].len() != 2 {
        return Err(LinearError::Unsupported(format!(
            "the block of the first point of {p} has {} points; the witness needs exactly two",
            blocks[0].len()
        )));
    }
    if let Verdict::Fails(c) = check_relation(p, u)? {
        return Err(LinearError::RelationFails(c));
    }
    // Factor contributed by the blocks other than the first one.
    let mut scalar = Rational::one();
    for (idx, block) in blocks.iter().skip(1).enumerate() {
        let b = idx % n;
        let mut s = Rational::zero();
        for v in 0..n {
            let mut t = Rational::one();
            for _ in block {
                t *= &u[(b, v)];
            }
            s += t;
        }
        scalar *= s;
    }
    let t = u.transpose().scale(&scalar);
    if u.mul(&t)? != RationalMatrix::identity(n) {
        return Err(LinearError::VerificationFailed(format!("u*t is not the identity for {p}")));
    }
    Ok(t)
}
