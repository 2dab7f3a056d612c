//! Two-row set partitions and the four diagram operations.
//!
//! A partition in `P(k,l)` has `k` upper and `l` lower points. Points are
//! numbered left to right, 1-based, separately on each row. Internally a
//! partition is stored as a restricted-growth string over the positions
//! `Lower 1..l, Upper 1..k`, which makes structural equality, hashing and
//! ordering agree with block equality.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Row {
    Lower,
    Upper,
}

/// A point of a two-row diagram; `index` is 1-based within its row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub row: Row,
    pub index: usize,
}

impl Point {
    pub const fn upper(index: usize) -> Self {
        Point { row: Row::Upper, index }
    }

    pub const fn lower(index: usize) -> Self {
        Point { row: Row::Lower, index }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Upper => write!(f, "u{}", self.index),
            Row::Lower => write!(f, "l{}", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("point {0} appears in more than one block")]
    Overlap(Point),
    #[error("point {0} is not covered by any block")]
    Coverage(Point),
    #[error("point {point} is out of range for P({upper},{lower})")]
    Range { point: Point, upper: usize, lower: usize },
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("cannot compose: top partition has {top_lower} lower points, bottom has {bottom_upper} upper points")]
    ArityMismatch { top_lower: usize, bottom_upper: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A set partition of `upper` upper points and `lower` lower points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: usize,
    lower: usize,
    labels: Vec<u32>,
}

/// Result of vertical composition: the partition and the number of closed
/// components that consisted of middle points only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComposeOutcome {
    pub result: Partition,
    pub removed_loops: usize,
}

/// Summary of the block structure of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCensus {
    /// Block sizes in descending order.
    pub sizes: Vec<usize>,
    pub has_singleton: bool,
    /// Number of blocks meeting both rows.
    pub through_blocks: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn restricted_growth<T: Copy + Eq + std::hash::Hash>(raw: impl IntoIterator<Item = T>) -> Vec<u32> {
    let mut seen = std::collections::HashMap::new();
    raw.into_iter()
        .map(|x| {
            let next = seen.len() as u32;
            *seen.entry(x).or_insert(next)
        })
        .collect()
}

impl Partition {
    /// Builds a partition from an arbitrary block list, validating that the
    /// blocks are nonempty, disjoint, in range, and cover every point.
    pub fn new<B, P>(upper: usize, lower: usize, blocks: B) -> Result<Self, PartitionError>
    where
        B: IntoIterator<Item = P>,
        P: IntoIterator<Item = Point>,
    {
        let mut raw: Vec<Option<usize>> = vec![None; upper + lower];
        for (b, block) in blocks.into_iter().enumerate() {
            let mut empty = true;
            for point in block {
                empty = false;
                let in_range = point.index >= 1
                    && match point.row {
                        Row::Upper => point.index <= upper,
                        Row::Lower => point.index <= lower,
                    };
                if !in_range {
                    return Err(PartitionError::Range { point, upper, lower });
                }
                let pos = position_of(lower, point);
                match raw[pos] {
                    Some(other) if other != b => return Err(PartitionError::Overlap(point)),
                    _ => raw[pos] = Some(b),
                }
            }
            if empty {
                return Err(PartitionError::EmptyBlock);
            }
        }
        let mut labels = Vec::with_capacity(raw.len());
        for (pos, slot) in raw.iter().enumerate() {
            match slot {
                Some(b) => labels.push(*b),
                None => return Err(PartitionError::Coverage(point_of(lower, pos))),
            }
        }
        Ok(Partition { upper, lower, labels: restricted_growth(labels) })
    }

    /// Builds a partition from one block label per position, in the order
    /// `Lower 1..l, Upper 1..k`. Equal labels mean the same block.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(upper: usize, lower: usize, labels: &[T]) -> Self {
        assert_eq!(labels.len(), upper + lower, "one label per point");
        Partition { upper, lower, labels: restricted_growth(labels.iter().copied()) }
    }

    /// The partition in `P(0,0)`.
    pub fn empty() -> Self {
        Partition { upper: 0, lower: 0, labels: Vec::new() }
    }

    /// The identity string in `P(1,1)`.
    pub fn identity() -> Self {
        Partition { upper: 1, lower: 1, labels: vec![0, 0] }
    }

    /// `id^{⊗n}`.
    pub fn identity_power(n: usize) -> Self {
        let labels: Vec<usize> = (0..n).chain(0..n).collect();
        Partition::from_labels(n, n, &labels)
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn total_points(&self) -> usize {
        self.upper + self.lower
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| *m as usize + 1)
    }

    /// Canonical block labels, one per position in the order `Lower 1..l, Upper 1..k`.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn position(&self, point: Point) -> usize {
        position_of(self.lower, point)
    }

    pub fn point_at(&self, position: usize) -> Point {
        point_of(self.lower, position)
    }

    pub fn block_of(&self, point: Point) -> u32 {
        self.labels[self.position(point)]
    }

    pub fn same_block(&self, a: Point, b: Point) -> bool {
        self.block_of(a) == self.block_of(b)
    }

    /// Blocks in canonical order, each sorted `Lower 1..l, Upper 1..k`.
    pub fn blocks(&self) -> Vec<Vec<Point>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (pos, &label) in self.labels.iter().enumerate() {
            blocks[label as usize].push(self.point_at(pos));
        }
        blocks
    }

    pub fn is_lower_only(&self) -> bool {
        self.upper == 0
    }

    pub fn is_upper_only(&self) -> bool {
        self.lower == 0
    }

    /// True iff every block is a singleton (`↑^{⊗l}`, `↓^{⊗k}` and mixtures).
    pub fn is_all_singletons(&self) -> bool {
        self.block_count() == self.labels.len()
    }

    /// Horizontal concatenation `self ⊗ other`.
    pub fn tensor(&self, other: &Partition) -> Partition {
        let offset = self.block_count() as u32;
        let shifted = |labels: &[u32]| labels.iter().map(move |x| x + offset).collect::<Vec<_>>();
        let other_lower = shifted(&other.labels[..other.lower]);
        let other_upper = shifted(&other.labels[other.lower..]);
        let raw: Vec<u32> = self.labels[..self.lower]
            .iter()
            .copied()
            .chain(other_lower)
            .chain(self.labels[self.lower..].iter().copied())
            .chain(other_upper)
            .collect();
        Partition::from_labels(self.upper + other.upper, self.lower + other.lower, &raw)
    }

    /// Vertical composition `self · top`: `self` is written below `top`.
    pub fn compose(&self, top: &Partition) -> Result<ComposeOutcome, PartitionError> {
        compose(self, top)
    }

    /// Involution `p*`: turn the diagram upside down.
    pub fn involute(&self) -> Partition {
        let raw: Vec<u32> = self.labels[self.lower..]
            .iter()
            .chain(&self.labels[..self.lower])
            .copied()
            .collect();
        Partition::from_labels(self.lower, self.upper, &raw)
    }

    /// Vertical reflection `p̃`: mirror both rows at the vertical axis.
    pub fn reflect(&self) -> Partition {
        let raw: Vec<u32> = self.labels[..self.lower]
            .iter()
            .rev()
            .chain(self.labels[self.lower..].iter().rev())
            .copied()
            .collect();
        Partition::from_labels(self.upper, self.lower, &raw)
    }

    /// Planarity on the cyclic order `Lower 1..l`, then `Upper k..1`.
    pub fn is_noncrossing(&self) -> bool {
        let cyclic: Vec<u32> = self.labels[..self.lower]
            .iter()
            .chain(self.labels[self.lower..].iter().rev())
            .copied()
            .collect();
        let mut last = vec![0usize; self.block_count()];
        for (i, &b) in cyclic.iter().enumerate() {
            last[b as usize] = i;
        }
        let mut opened = vec![false; self.block_count()];
        let mut stack: Vec<u32> = Vec::new();
        for (i, &b) in cyclic.iter().enumerate() {
            if opened[b as usize] {
                if stack.last() != Some(&b) {
                    return false;
                }
                if last[b as usize] == i {
                    stack.pop();
                }
            } else {
                opened[b as usize] = true;
                if last[b as usize] != i {
                    stack.push(b);
                }
            }
        }
        true
    }

    /// Every block with `a` upper and `b` lower points has `a - b ∈ mℤ`.
    /// `m = 0` is read as `a = b`.
    pub fn grading_ok(&self, m: usize) -> bool {
        let mut balance = vec![0i64; self.block_count()];
        for (pos, &label) in self.labels.iter().enumerate() {
            balance[label as usize] += if pos < self.lower { -1 } else { 1 };
        }
        balance.iter().all(|d| if m == 0 { *d == 0 } else { d.rem_euclid(m as i64) == 0 })
    }

    pub fn census(&self) -> BlockCensus {
        let n = self.block_count();
        let mut sizes = vec![0usize; n];
        let mut rows = vec![(false, false); n];
        for (pos, &label) in self.labels.iter().enumerate() {
            sizes[label as usize] += 1;
            if pos < self.lower {
                rows[label as usize].0 = true;
            } else {
                rows[label as usize].1 = true;
            }
        }
        let through_blocks = rows.iter().filter(|(lo, up)| *lo && *up).count();
        let has_singleton = sizes.contains(&1);
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        BlockCensus { sizes, has_singleton, through_blocks }
    }
}

fn position_of(lower: usize, point: Point) -> usize {
    match point.row {
        Row::Lower => point.index - 1,
        Row::Upper => lower + point.index - 1,
    }
}

fn point_of(lower: usize, position: usize) -> Point {
    if position < lower {
        Point::lower(position + 1)
    } else {
        Point::upper(position - lower + 1)
    }
}

pub fn tensor(p: &Partition, q: &Partition) -> Partition {
    p.tensor(q)
}

/// `qp`: writes `q` below `p`, gluing the lower points of `p` to the upper
/// points of `q`. Requires `p.lower() == q.upper()`.
pub fn compose(q: &Partition, p: &Partition) -> Result<ComposeOutcome, PartitionError> {
    if p.lower != q.upper {
        return Err(PartitionError::ArityMismatch { top_lower: p.lower, bottom_upper: q.upper });
    }
    let np = p.labels.len();
    let nq = q.labels.len();
    // Nodes: 0..np are p's positions, np..np+nq are q's positions, then one
    // node per block of p and of q.
    let bp = p.block_count();
    let bq = q.block_count();
    let mut uf = UnionFind::new(np + nq + bp + bq);
    for (pos, &label) in p.labels.iter().enumerate() {
        uf.union(pos, np + nq + label as usize);
    }
    for (pos, &label) in q.labels.iter().enumerate() {
        uf.union(np + pos, np + nq + bp + label as usize);
    }
    for j in 0..p.lower {
        // p's lower point j+1 is glued to q's upper point j+1.
        uf.union(j, np + q.lower + j);
    }
    let mut surviving = Vec::with_capacity(q.lower + p.upper);
    for pos in 0..q.lower {
        surviving.push(np + pos);
    }
    for pos in p.lower..np {
        surviving.push(pos);
    }
    let roots: Vec<usize> = surviving.iter().map(|&x| uf.find(x)).collect();
    let mut alive = std::collections::HashSet::with_capacity(roots.len());
    alive.extend(roots.iter().copied());
    let mut loops = std::collections::HashSet::new();
    for j in 0..p.lower {
        let r = uf.find(j);
        if !alive.contains(&r) {
            loops.insert(r);
        }
    }
    Ok(ComposeOutcome {
        result: Partition::from_labels(p.upper, q.lower, &roots),
        removed_loops: loops.len(),
    })
}

pub fn involute(p: &Partition) -> Partition {
    p.involute()
}

pub fn reflect(p: &Partition) -> Partition {
    p.reflect()
}

/// Canonicalizes a raw block list; see [`Partition::new`].
pub fn canonicalize<B, P>(blocks: B, upper: usize, lower: usize) -> Result<Partition, PartitionError>
where
    B: IntoIterator<Item = P>,
    P: IntoIterator<Item = Point>,
{
    Partition::new(upper, lower, blocks)
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn lower_blocks(l: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(0, l, blocks.iter().map(|b| b.iter().map(|&i| Point::lower(i)))).unwrap()
    }

    #[test]
    fn canonical_order_is_independent_of_input_order() {
        let p = Partition::new(0, 2, [[Point::lower(2), Point::lower(1)]]).unwrap();
        assert_eq!(p.blocks(), vec![vec![Point::lower(1), Point::lower(2)]]);
        assert_eq!(p, named::pair());
    }

    #[test]
    fn overlap_coverage_range_errors() {
        let overlap = Partition::new(0, 2, vec![vec![Point::lower(1)], vec![Point::lower(1), Point::lower(2)]]);
        assert_eq!(overlap, Err(PartitionError::Overlap(Point::lower(1))));
        let missing = Partition::new(0, 2, vec![vec![Point::lower(1)]]);
        assert_eq!(missing, Err(PartitionError::Coverage(Point::lower(2))));
        let range = Partition::new(1, 0, vec![vec![Point::upper(2)]]);
        assert!(matches!(range, Err(PartitionError::Range { .. })));
        let empty = Partition::new(0, 0, vec![Vec::<Point>::new()]);
        assert_eq!(empty, Err(PartitionError::EmptyBlock));
    }

    #[test]
    fn tensor_examples() {
        let up = named::up1();
        assert_eq!(up.tensor(&up), lower_blocks(2, &[&[1], &[2]]));
        let pair = named::pair();
        assert_eq!(pair.tensor(&pair), lower_blocks(4, &[&[1, 2], &[3, 4]]));
        let t = named::id().tensor(&pair);
        assert_eq!((t.upper(), t.lower()), (1, 3));
        assert_eq!(
            t.blocks(),
            vec![vec![Point::lower(1), Point::upper(1)], vec![Point::lower(2), Point::lower(3)]]
        );
    }

    #[test]
    fn compose_examples() {
        let copair_pair = compose(&named::copair(), &named::pair()).unwrap();
        assert_eq!(copair_pair, ComposeOutcome { result: Partition::empty(), removed_loops: 1 });

        let four_pair = compose(&named::fourblock(), &named::pair()).unwrap();
        assert_eq!(four_pair, ComposeOutcome { result: named::pair(), removed_loops: 0 });

        for p in [named::up1(), named::id(), named::pair().involute().tensor(&named::id())] {
            if p.lower() == 1 {
                let out = compose(&named::id(), &p).unwrap();
                assert_eq!(out, ComposeOutcome { result: p.clone(), removed_loops: 0 });
            }
        }
    }

    #[test]
    fn compose_arity_mismatch() {
        let err = compose(&named::pair(), &named::pair()).unwrap_err();
        assert_eq!(err, PartitionError::ArityMismatch { top_lower: 2, bottom_upper: 0 });
    }

    #[test]
    fn involute_and_reflect_examples() {
        assert_eq!(named::pair().involute(), named::copair());
        let r = named::up1().tensor(&named::pair()).reflect();
        assert_eq!(r, lower_blocks(3, &[&[1, 2], &[3]]));
    }

    #[test]
    fn predicates() {
        assert!(!named::crossline().is_noncrossing());
        assert!(named::pair().tensor(&named::pair()).is_noncrossing());
        assert!(lower_blocks(4, &[&[1, 4], &[2, 3]]).is_noncrossing());
        assert!(named::block(3).grading_ok(3));
        assert!(!named::pair().grading_ok(3));
        let census = named::sigma(4).census();
        assert_eq!(census.sizes, vec![4, 2, 2]);
        assert!(!census.has_singleton);
        assert_eq!(census.through_blocks, 3);
    }

    #[test]
    fn noncrossing_uses_cyclic_order_across_rows() {
        // {U1,L2},{U2,L1} crosses; {U1,L1},{U2,L2} does not.
        let cross = Partition::new(2, 2, [[Point::upper(1), Point::lower(2)], [Point::upper(2), Point::lower(1)]]).unwrap();
        assert!(!cross.is_noncrossing());
        assert!(Partition::identity_power(2).is_noncrossing());
        // {U1,L1} with U2 nested under nothing: fourblock is noncrossing.
        assert!(named::fourblock().is_noncrossing());
    }
}
