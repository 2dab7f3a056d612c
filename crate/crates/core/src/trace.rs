//! Replayable records of how a partition was built from given seeds.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{compose, Partition, PartitionError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Tensor,
    Compose,
    Reflect,
    Involute,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Tensor => "tensor",
            Operation::Compose => "compose",
            Operation::Reflect => "reflect",
            Operation::Involute => "involute",
        })
    }
}

/// One operation application. For `Compose` the operands are `[bottom, top]`,
/// matching `compose(q, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub op: Operation,
    pub operands: Vec<Partition>,
    pub result: Partition,
    pub removed_loops: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: operand {operand} is neither a seed nor an earlier result")]
    UnknownOperand { step: usize, operand: Partition },
    #[error("step {step}: recomputed {recomputed} (loops={recomputed_loops}) but trace says {recorded} (loops={recorded_loops})")]
    Mismatch {
        step: usize,
        recomputed: Partition,
        recomputed_loops: usize,
        recorded: Partition,
        recorded_loops: usize,
    },
    #[error("step {step}: {source}")]
    Invalid {
        step: usize,
        #[source]
        source: PartitionError,
    },
    #[error("step {step}: {op} takes {expected} operand(s)")]
    Arity { step: usize, op: Operation, expected: &'static str },
    #[error("step {step}: {op} is not an allowed operation")]
    Forbidden { step: usize, op: Operation },
    #[error("trace ends in {actual}, expected {expected}")]
    WrongOutput { expected: Partition, actual: Partition },
}

pub fn apply(op: Operation, operands: &[Partition]) -> Result<(Partition, usize), PartitionError> {
    match op {
        Operation::Tensor => {
            Ok((operands.iter().fold(Partition::empty(), |acc, p| acc.tensor(p)), 0))
        }
        Operation::Compose => {
            let out = compose(&operands[0], &operands[1])?;
            Ok((out.result, out.removed_loops))
        }
        Operation::Reflect => Ok((operands[0].reflect(), 0)),
        Operation::Involute => Ok((operands[0].involute(), 0)),
    }
}

impl ConstructionTrace {
    pub fn total_removed_loops(&self) -> usize {
        self.steps.iter().map(|s| s.removed_loops).sum()
    }

    pub fn uses(&self, op: Operation) -> bool {
        self.steps.iter().any(|s| s.op == op)
    }

    /// Re-executes every step through the partition operations. Each operand
    /// must be a seed, the identity, the empty partition, or the result of an
    /// earlier step; only operations in `allowed` may occur. Returns the final partition, or
    /// `None` for a trace without steps.
    pub fn replay(&self, seeds: &[Partition], allowed: &[Operation]) -> Result<Option<Partition>, ReplayError> {
        let mut available: HashSet<Partition> = seeds.iter().cloned().collect();
        available.insert(Partition::identity());
        available.insert(Partition::empty());
        let mut last = None;
        for (i, step) in self.steps.iter().enumerate() {
            let n = i + 1;
            if !allowed.contains(&step.op) {
                return Err(ReplayError::Forbidden { step: n, op: step.op });
            }
            let arity_ok = match step.op {
                Operation::Tensor => true,
                Operation::Compose => step.operands.len() == 2,
                Operation::Reflect | Operation::Involute => step.operands.len() == 1,
            };
            if !arity_ok {
                let expected = if step.op == Operation::Compose { "2" } else { "1" };
                return Err(ReplayError::Arity { step: n, op: step.op, expected });
            }
            for operand in &step.operands {
                if !available.contains(operand) {
                    return Err(ReplayError::UnknownOperand { step: n, operand: operand.clone() });
                }
            }
            let (result, loops) =
                apply(step.op, &step.operands).map_err(|source| ReplayError::Invalid { step: n, source })?;
            if result != step.result || loops != step.removed_loops {
                return Err(ReplayError::Mismatch {
                    step: n,
                    recomputed: result,
                    recomputed_loops: loops,
                    recorded: step.result.clone(),
                    recorded_loops: step.removed_loops,
                });
            }
            available.insert(result.clone());
            last = Some(result);
        }
        Ok(last)
    }

    /// The same construction turned upside down: every operand and result is
    /// replaced by its involution and compositions swap their operands.
    /// Seeds of the mirrored trace are the involutions of the original seeds.
    pub fn mirrored(&self) -> ConstructionTrace {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let mut operands: Vec<Partition> = s.operands.iter().map(Partition::involute).collect();
                if s.op == Operation::Compose {
                    operands.swap(0, 1);
                }
                TraceStep { op: s.op, operands, result: s.result.involute(), removed_loops: s.removed_loops }
            })
            .collect();
        ConstructionTrace { steps }
    }

    /// Line-oriented rendering: `step <n>: <op> [<lit>] ... -> <lit> loops=<r>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("step {}: {}", i + 1, s.op));
            for operand in &s.operands {
                out.push_str(&format!(" [{operand}]"));
            }
            out.push_str(&format!(" -> {} loops={}\n", s.result, s.removed_loops));
        }
        out
    }
}

impl fmt::Display for ConstructionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A partition together with the trace that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub result: Partition,
    pub trace: ConstructionTrace,
}

impl Construction {
    /// A construction that is just one of its own seeds.
    pub fn seed(p: Partition) -> Self {
        Construction { result: p, trace: ConstructionTrace::default() }
    }

    pub fn removed_loops(&self) -> usize {
        self.trace.total_removed_loops()
    }

    /// Replays the trace from `seeds` with the generalized-category operations
    /// (tensor, compose, reflect) and checks that it ends in `self.result`.
    pub fn verify(&self, seeds: &[Partition]) -> Result<(), ReplayError> {
        self.verify_with(seeds, &[Operation::Tensor, Operation::Compose, Operation::Reflect])
    }

    pub fn verify_with(&self, seeds: &[Partition], allowed: &[Operation]) -> Result<(), ReplayError> {
        match self.trace.replay(seeds, allowed)? {
            Some(last) if last == self.result => Ok(()),
            Some(last) => Err(ReplayError::WrongOutput { expected: self.result.clone(), actual: last }),
            None if seeds.contains(&self.result) || self.result.total_points() == 0 || self.result == Partition::identity() => {
                Ok(())
            }
            None => Err(ReplayError::WrongOutput { expected: self.result.clone(), actual: Partition::empty() }),
        }
    }

    pub fn mirrored(&self) -> Construction {
        Construction { result: self.result.involute(), trace: self.trace.mirrored() }
    }
}

/// One factor of a horizontal product in [`TraceBuilder::tensor`].
#[derive(Clone, Copy)]
pub enum Factor<'a> {
    Ids(usize),
    Part(&'a Partition),
    Power(&'a Partition, usize),
}

/// Records operations while building a partition.
#[derive(Default)]
pub struct TraceBuilder {
    steps: Vec<TraceStep>,
}

impl TraceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Horizontal product of the factors, left to right. Identity powers and
    /// tensor powers are expanded into repeated operands; factors of width
    /// zero are dropped. A product with a single operand records nothing.
    pub fn tensor(&mut self, factors: &[Factor<'_>]) -> Partition {
        let id = Partition::identity();
        let mut operands: Vec<Partition> = Vec::new();
        for f in factors {
            match *f {
                Factor::Ids(n) => operands.extend(std::iter::repeat_n(id.clone(), n)),
                Factor::Part(p) => operands.push(p.clone()),
                Factor::Power(p, n) => operands.extend(std::iter::repeat_n(p.clone(), n)),
            }
        }
        if operands.len() == 1 {
            return operands.pop().unwrap();
        }
        let (result, _) = apply(Operation::Tensor, &operands).expect("tensor is total");
        self.steps.push(TraceStep { op: Operation::Tensor, operands, result: result.clone(), removed_loops: 0 });
        result
    }

    /// `bottom · top`.
    pub fn compose(&mut self, bottom: &Partition, top: &Partition) -> Result<Partition, PartitionError> {
        let out = compose(bottom, top)?;
        self.steps.push(TraceStep {
            op: Operation::Compose,
            operands: vec![bottom.clone(), top.clone()],
            result: out.result.clone(),
            removed_loops: out.removed_loops,
        });
        Ok(out.result)
    }

    /// Stacks layers from top to bottom: `layers[0]` is applied first.
    pub fn stack(&mut self, layers: &[Partition]) -> Result<Partition, PartitionError> {
        let mut acc = layers[0].clone();
        for layer in &layers[1..] {
            acc = self.compose(layer, &acc)?;
        }
        Ok(acc)
    }

    pub fn reflect(&mut self, p: &Partition) -> Partition {
        let result = p.reflect();
        self.steps.push(TraceStep {
            op: Operation::Reflect,
            operands: vec![p.clone()],
            result: result.clone(),
            removed_loops: 0,
        });
        result
    }

    pub fn extend(&mut self, trace: &ConstructionTrace) {
        self.steps.extend(trace.steps.iter().cloned());
    }

    /// Appends a sub-construction and returns its result.
    pub fn include(&mut self, c: &Construction) -> Partition {
        self.extend(&c.trace);
        c.result.clone()
    }

    pub fn finish(self, result: Partition) -> Construction {
        Construction { result, trace: ConstructionTrace { steps: self.steps } }
    }
}
