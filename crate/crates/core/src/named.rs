//! Catalogue of the partitions that come up by name.

use std::fmt;

use crate::partition::{Partition, PartitionError, Point};

pub fn id() -> Partition {
    Partition::identity()
}

pub fn empty() -> Partition {
    Partition::empty()
}

/// `↑ ∈ P(0,1)`.
pub fn up1() -> Partition {
    Partition::from_labels(0, 1, &[0])
}

/// `↓ ∈ P(1,0)`.
pub fn down1() -> Partition {
    Partition::from_labels(1, 0, &[0])
}

/// `⊓ ∈ P(0,2)`.
pub fn pair() -> Partition {
    Partition::from_labels(0, 2, &[0, 0])
}

/// `⊔ ∈ P(2,0)`.
pub fn copair() -> Partition {
    Partition::from_labels(2, 0, &[0, 0])
}

/// `b_m`: one block on `m` lower points.
pub fn block(m: usize) -> Partition {
    Partition::from_labels(0, m, &vec![0; m])
}

/// All four points of `P(2,2)` in one block.
pub fn fourblock() -> Partition {
    Partition::from_labels(2, 2, &[0, 0, 0, 0])
}

/// `{L1,L3},{L2,L4} ∈ P(0,4)`.
pub fn crossline() -> Partition {
    Partition::from_labels(0, 4, &[0, 1, 0, 1])
}

/// Default four-point witness with a singleton and an even-gap pair:
/// `{L1,L3},{L2},{L4}`.
pub fn positioner() -> Partition {
    Partition::from_labels(0, 4, &[0, 1, 0, 2])
}

fn square_with(m: usize, name: &str, corner: &[Point], corner_split: bool) -> Result<Partition, PartitionError> {
    if m < 2 {
        return Err(PartitionError::InvalidParameter(format!("{name}(m) needs m >= 2, got {m}")));
    }
    // Corner indices may coincide for small m; labels take the union.
    let mut labels = vec![usize::MAX; 2 * m];
    let pos = |p: Point| match p.row {
        crate::partition::Row::Lower => p.index - 1,
        crate::partition::Row::Upper => m + p.index - 1,
    };
    for p in corner {
        let label = if corner_split && p.row == crate::partition::Row::Lower { 1 } else { 0 };
        labels[pos(*p)] = label;
    }
    let mut next = 2;
    for i in 1..=m {
        if labels[pos(Point::upper(i))] == usize::MAX && labels[pos(Point::lower(i))] == usize::MAX {
            labels[pos(Point::upper(i))] = next;
            labels[pos(Point::lower(i))] = next;
            next += 1;
        }
    }
    debug_assert!(labels.iter().all(|&x| x != usize::MAX));
    Ok(Partition::from_labels(m, m, &labels))
}

/// `π_m ∈ P(m,m)`: one block on `U1,U2,U(m-1),Um,L1,L2,L(m-1),Lm`, and
/// through pairs `{Ui,Li}` in between.
pub fn try_pi(m: usize) -> Result<Partition, PartitionError> {
    let idx = [1, 2, m.saturating_sub(1).max(1), m];
    let corner: Vec<Point> = idx.iter().flat_map(|&i| [Point::upper(i), Point::lower(i)]).collect();
    square_with(m, "pi", &corner, false)
}

/// `σ_m ∈ P(m,m)`: block `{U1,Um,L1,Lm}` and through pairs `{Ui,Li}` in between.
pub fn try_sigma(m: usize) -> Result<Partition, PartitionError> {
    let corner = [Point::upper(1), Point::upper(m), Point::lower(1), Point::lower(m)];
    square_with(m, "sigma", &corner, false)
}

/// `τ_m ∈ P(m,m)`: blocks `{U1,Um}`, `{L1,Lm}` and through pairs in between.
pub fn try_tau(m: usize) -> Result<Partition, PartitionError> {
    let corner = [Point::upper(1), Point::upper(m), Point::lower(1), Point::lower(m)];
    square_with(m, "tau", &corner, true)
}

/// Panics for `m < 2`; see [`try_pi`].
pub fn pi(m: usize) -> Partition {
    try_pi(m).expect("pi(m) needs m >= 2")
}

/// Panics for `m < 2`; see [`try_sigma`].
pub fn sigma(m: usize) -> Partition {
    try_sigma(m).expect("sigma(m) needs m >= 2")
}

/// Panics for `m < 2`; see [`try_tau`].
pub fn tau(m: usize) -> Partition {
    try_tau(m).expect("tau(m) needs m >= 2")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedPartition {
    Empty,
    Id,
    IdPower(usize),
    Up1,
    Down1,
    Pair,
    Copair,
    Block(usize),
    FourBlock,
    CrossLine,
    Positioner,
    Pi(usize),
    Sigma(usize),
    Tau(usize),
}

impl NamedPartition {
    /// Resolves a catalogue name with an optional integer argument.
    pub fn lookup(name: &str, arg: Option<usize>) -> Option<Self> {
        use NamedPartition::*;
        Some(match (name, arg) {
            ("empty", None) => Empty,
            ("id", None) => Id,
            ("id", Some(n)) => IdPower(n),
            ("up1" | "up", None) => Up1,
            ("down1" | "down", None) => Down1,
            ("pair", None) => Pair,
            ("copair", None) => Copair,
            ("b", Some(m)) => Block(m),
            ("fourblock", None) => FourBlock,
            ("crossline", None) => CrossLine,
            ("positioner", None) => Positioner,
            ("pi", Some(m)) => Pi(m),
            ("sigma", Some(m)) => Sigma(m),
            ("tau", Some(m)) => Tau(m),
            _ => return None,
        })
    }

    pub fn takes_argument(name: &str) -> bool {
        matches!(name, "b" | "pi" | "sigma" | "tau" | "id")
    }

    pub fn build(self) -> Result<Partition, PartitionError> {
        use NamedPartition::*;
        Ok(match self {
            Empty => empty(),
            Id => id(),
            IdPower(n) => Partition::identity_power(n),
            Up1 => up1(),
            Down1 => down1(),
            Pair => pair(),
            Copair => copair(),
            Block(0) => return Err(PartitionError::InvalidParameter("b(m) needs m >= 1".into())),
            Block(m) => block(m),
            FourBlock => fourblock(),
            CrossLine => crossline(),
            Positioner => positioner(),
            Pi(m) => try_pi(m)?,
            Sigma(m) => try_sigma(m)?,
            Tau(m) => try_tau(m)?,
        })
    }
}

impl fmt::Display for NamedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedPartition::*;
        match self {
            Empty => write!(f, "empty"),
            Id => write!(f, "id"),
            IdPower(n) => write!(f, "id({n})"),
            Up1 => write!(f, "up1"),
            Down1 => write!(f, "down1"),
            Pair => write!(f, "pair"),
            Copair => write!(f, "copair"),
            Block(m) => write!(f, "b({m})"),
            FourBlock => write!(f, "fourblock"),
            CrossLine => write!(f, "crossline"),
            Positioner => write!(f, "positioner"),
            Pi(m) => write!(f, "pi({m})"),
            Sigma(m) => write!(f, "sigma({m})"),
            Tau(m) => write!(f, "tau({m})"),
        }
    }
}
