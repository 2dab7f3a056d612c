//! Case analysis for one-row partitions `p ∈ P(0,l)`, `p ≠ ↑^{⊗l}`: which
//! structural case applies and what it implies about enforced orthogonality.

use std::fmt;

use serde::Serialize;

use crate::constructions::{self, ConstructionError};
use crate::named;
use crate::partition::{Partition, Point};
use crate::trace::{Construction, TraceBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    /// `l` odd.
    OddLength,
    /// `l` even, a singleton, and a same-block pair at odd distance.
    SingletonOddGap,
    /// `l` even, a singleton, and a same-block pair at even distance.
    SingletonEvenGap,
    /// `l` even, no singleton, a block of size at least three.
    NoSingletonBigBlock,
    /// `l` even and every block a pair; carries the `m` of the implied `τ_m`.
    AllPairs(usize),
}

impl Case {
    pub fn letter(self) -> String {
        match self {
            Case::OddLength => "A".into(),
            Case::SingletonOddGap => "B".into(),
            Case::SingletonEvenGap => "C".into(),
            Case::NoSingletonBigBlock => "D".into(),
            Case::AllPairs(m) => format!("E({m})"),
        }
    }

    pub fn clause(self) -> &'static str {
        match self {
            Case::OddLength => "(a) l odd: p enforces orthogonality",
            Case::SingletonOddGap => "(b) l even, singleton and a block pair at odd distance: p enforces orthogonality",
            Case::SingletonEvenGap => "(c) l even, singleton and a block pair at even distance: p implies the four-point positioner",
            Case::NoSingletonBigBlock => "(d) l even, no singleton, a block of size >= 3: p enforces orthogonality",
            Case::AllPairs(_) => "(e) l even, only pair blocks: p implies tau_m for the computed m",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    InPO,
    ImpliesEvenGapWitness,
    ImpliesTau(usize),
    None,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::InPO => write!(f, "InPO"),
            Conclusion::ImpliesEvenGapWitness => write!(f, "ImpliesEvenGapWitness"),
            Conclusion::ImpliesTau(m) => write!(f, "ImpliesTau({m})"),
            Conclusion::None => write!(f, "None"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthoClassification {
    pub cases: Vec<Case>,
    pub conclusion: Conclusion,
    /// The clause the conclusion rests on.
    pub clause: &'static str,
}

impl fmt::Display for OrthoClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.cases.iter().map(|c| c.letter()).collect();
        write!(f, "cases=[{}] conclusion={}", letters.join(","), self.conclusion)
    }
}

fn check(p: &Partition) -> Result<(), ConstructionError> {
    if !p.is_lower_only() || p.lower() == 0 {
        return Err(ConstructionError::Precondition(format!("{p} is not in P(0,l) with l >= 1")));
    }
    if p.is_all_singletons() {
        return Err(ConstructionError::Precondition(format!("{p} has only singleton blocks")));
    }
    Ok(())
}

/// `1 + min` over pair blocks `{s,t}` of the cyclic distance `min(t-s, l-(t-s))`.
fn pair_interval(p: &Partition) -> (usize, Vec<Point>) {
    let l = p.lower();
    p.blocks()
        .into_iter()
        .map(|b| {
            let d = b[1].index - b[0].index;
            (1 + d.min(l - d), b)
        })
        .min_by_key(|(m, _)| *m)
        .expect("nonempty")
}

pub fn classify_orthogonality(p: &Partition) -> Result<OrthoClassification, ConstructionError> {
    check(p)?;
    let l = p.lower();
    if l % 2 == 1 {
        let case = Case::OddLength;
        return Ok(OrthoClassification { cases: vec![case], conclusion: Conclusion::InPO, clause: case.clause() });
    }
    let census = p.census();
    let mut cases = Vec::new();
    let conclusion;
    let clause;
    if census.has_singleton {
        let (mut odd, mut even) = (false, false);
        for b in p.blocks() {
            for (i, x) in b.iter().enumerate() {
                for y in &b[i + 1..] {
                    if (y.index - x.index) % 2 == 1 {
                        odd = true;
                    } else {
                        even = true;
                    }
                }
            }
        }
        if odd {
            cases.push(Case::SingletonOddGap);
        }
        if even {
            cases.push(Case::SingletonEvenGap);
        }
        (conclusion, clause) = if odd {
            (Conclusion::InPO, Case::SingletonOddGap.clause())
        } else {
            (Conclusion::ImpliesEvenGapWitness, Case::SingletonEvenGap.clause())
        };
    } else if census.sizes[0] >= 3 {
        cases.push(Case::NoSingletonBigBlock);
        conclusion = Conclusion::InPO;
        clause = Case::NoSingletonBigBlock.clause();
    } else {
        let (m, _) = pair_interval(p);
        cases.push(Case::AllPairs(m));
        conclusion = if m == 2 { Conclusion::InPO } else { Conclusion::ImpliesTau(m) };
        clause = Case::AllPairs(m).clause();
    }
    Ok(OrthoClassification { cases, conclusion, clause })
}

/// For `p` with only pair blocks: rotates a pair of least cyclic distance to
/// `{1, m}` by line rotations and doubles the first `m` legs, giving `τ_m`.
/// Seeds: `p`, `p*`.
pub fn tau_witness(p: &Partition) -> Result<Construction, ConstructionError> {
    check(p)?;
    let l = p.lower();
    if l % 2 == 1 || p.census().sizes.iter().any(|&s| s != 2) {
        return Err(ConstructionError::Precondition(format!("{p} does not consist of pair blocks")));
    }
    let (m, block) = pair_interval(p);
    let (s, t) = (block[0].index, block[1].index);
    let first = if t - s + 1 == m { s } else { t };
    let p_star = p.involute();
    let mut b = TraceBuilder::new();
    let mut rotated = p.clone();
    let mut rotation = Construction::seed(p.clone());
    for _ in 1..first {
        let step = constructions::line_rotate(&rotated, &p_star)?;
        rotated = b.include(&step);
        rotation.trace.steps.extend(step.trace.steps);
        rotation.result = rotated.clone();
    }
    if first > 1 {
        b.include(&rotation.mirrored());
    }
    let doubled = constructions::partial_doubling(&rotated, m)?;
    let result = b.include(&doubled);
    debug_assert_eq!(result, named::tau(m));
    Ok(b.finish(result))
}
