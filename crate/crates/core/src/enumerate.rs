//! Exhaustive enumeration of partition slices, closure checks on finite
//! slices, and the explicit generator words for graded noncrossing partitions.

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{multi_nest, ConstructionError};
use crate::named;
use crate::partition::Partition;
use crate::trace::{Construction, Factor, TraceBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Predicate {
    All,
    Noncrossing,
    /// Noncrossing with `#upper - #lower ∈ mℤ` on every block.
    Graded(usize),
}

impl Predicate {
    pub fn accepts(self, p: &Partition) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Noncrossing => p.is_noncrossing(),
            Predicate::Graded(m) => p.is_noncrossing() && p.grading_ok(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("P({upper},{lower}) has {count} partitions, more than the limit {limit}")]
    BoundExceeded { upper: usize, lower: usize, count: u128, limit: usize },
}

/// Bell number `B(n)`.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

pub const DEFAULT_LIMIT: usize = 2_000_000;

/// All partitions of `P(upper, lower)` accepted by `pred`, in
/// restricted-growth (canonical) order.
pub fn enumerate(pred: Predicate, upper: usize, lower: usize, limit: usize) -> Result<Vec<Partition>, EnumerateError> {
    let n = upper + lower;
    let count = bell(n);
    if count > limit as u128 {
        return Err(EnumerateError::BoundExceeded { upper, lower, count, limit });
    }
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    // Restricted growth strings: labels[i] <= 1 + max(labels[..i]).
    fn rec(i: usize, max: u32, labels: &mut Vec<u32>, upper: usize, lower: usize, pred: Predicate, out: &mut Vec<Partition>) {
        if i == labels.len() {
            let p = Partition::from_labels(upper, lower, labels);
            if pred.accepts(&p) {
                out.push(p);
            }
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for v in 0..=top {
            labels[i] = v;
            rec(i + 1, max.max(v), labels, upper, lower, pred, out);
        }
    }
    rec(0, 0, &mut labels, upper, lower, pred, &mut out);
    Ok(out)
}

/// Every accepted partition with at most `max_total_points` points.
pub fn enumerate_slice(pred: Predicate, max_total_points: usize, limit: usize) -> Result<Vec<Partition>, EnumerateError> {
    let mut out = Vec::new();
    for total in 0..=max_total_points {
        for upper in 0..=total {
            out.extend(enumerate(pred, upper, total - upper, limit)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub operation: &'static str,
    pub operands: Vec<Partition>,
    pub result: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    pub size: usize,
    pub checked: usize,
    pub closed: bool,
    /// At most `MAX_VIOLATIONS` witnesses.
    pub violations: Vec<Violation>,
}

const MAX_VIOLATIONS: usize = 20;

/// Checks that a finite slice is closed under tensor, composition,
/// reflection and involution whenever the result stays within
/// `max_total_points`, and contains the identity if it fits.
pub fn verify_generalized_category(set: &[Partition], max_total_points: usize) -> CategoryReport {
    let members: std::collections::HashSet<&Partition> = set.iter().collect();
    let mut violations = Vec::new();
    let mut checked = 0usize;
    let note = |operation: &'static str, operands: Vec<Partition>, result: Partition, violations: &mut Vec<Violation>| {
        if violations.len() < MAX_VIOLATIONS {
            violations.push(Violation { operation, operands, result });
        }
    };
    let id = Partition::identity();
    if max_total_points >= 2 && !members.contains(&id) {
        note("identity", Vec::new(), id, &mut violations);
    }
    let fits = |u: usize, l: usize| u + l <= max_total_points;
    for p in set {
        for (name, r) in [("reflect", p.reflect()), ("involute", p.involute())] {
            checked += 1;
            if !members.contains(&r) {
                note(name, vec![p.clone()], r, &mut violations);
            }
        }
        for q in set {
            if fits(p.upper() + q.upper(), p.lower() + q.lower()) {
                checked += 1;
                let t = p.tensor(q);
                if !members.contains(&t) {
                    note("tensor", vec![p.clone(), q.clone()], t, &mut violations);
                }
            }
            // q below p.
            if p.lower() == q.upper() && fits(p.upper(), q.lower()) {
                checked += 1;
                let c = crate::partition::compose(q, p).expect("arity checked").result;
                if !members.contains(&c) {
                    note("compose", vec![q.clone(), p.clone()], c, &mut violations);
                }
            }
        }
    }
    CategoryReport { size: set.len(), checked, closed: violations.is_empty(), violations }
}

fn require_generator_size(m: usize) -> Result<(), ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::Range(format!("the one-block generators need m >= 3, got {m}")));
    }
    Ok(())
}

/// `b_{jm}` built from `b_m` and `b_m*`:
/// `b_{2m} = (b_m* ⊗ id^{⊗2m}) · mult(b_m,1,3)` and
/// `b_{(n+1)m} = (id^{⊗(m+1)} ⊗ b_m* ⊗ id^{⊗(nm-1)}) · (b_{2m} ⊗ b_{nm})`.
pub fn block_multiple(m: usize, j: usize) -> Result<Construction, ConstructionError> {
    require_generator_size(m)?;
    if j == 0 {
        return Err(ConstructionError::Range("j must be at least 1".into()));
    }
    let bm = named::block(m);
    if j == 1 {
        return Ok(Construction::seed(bm));
    }
    let bm_star = bm.involute();
    let mut b = TraceBuilder::new();
    let nested = multi_nest(&bm, 1, 3)?;
    let nested = b.include(&nested);
    let cap = b.tensor(&[Factor::Part(&bm_star), Factor::Ids(2 * m)]);
    let double = b.compose(&cap, &nested)?;
    let mut acc = double.clone();
    for n in 2..j {
        let joined = b.tensor(&[Factor::Part(&double), Factor::Part(&acc)]);
        let cap = b.tensor(&[Factor::Ids(m + 1), Factor::Part(&bm_star), Factor::Ids(n * m - 1)]);
        acc = b.compose(&cap, &joined)?;
    }
    Ok(b.finish(acc))
}

/// One-block partition with `a` upper and `b` lower points, `a ≡ b (mod m)`,
/// built from `b_m` and `b_m*` by
/// `(b_m* ⊗ id^{⊗b}) · (id^{⊗c} ⊗ b_{ym} ⊗ b_{xm}*) · (b_m ⊗ id^{⊗a})`,
/// `x = ⌊a/m⌋ + 1`, `y = ⌊b/m⌋ + 1`, `c = b mod m`.
///
/// When `a, b > 0` are both multiples of `m` that word disconnects the two
/// rows (`c = 0`), so `(b_{a+m}* ⊗ id^{⊗b}) · (id^{⊗a} ⊗ b_{m+b})` is used.
pub fn single_block_word(m: usize, a: usize, b: usize) -> Result<Construction, ConstructionError> {
    require_generator_size(m)?;
    if a + b == 0 || a % m != b % m {
        return Err(ConstructionError::Precondition(format!(
            "a one-block partition in P({a},{b}) is not graded for m = {m}"
        )));
    }
    let bm = named::block(m);
    let bm_star = bm.involute();
    let mut tb = TraceBuilder::new();
    let result = if a > 0 && b > 0 && b % m == 0 {
        let upper_part = block_multiple(m, a / m + 1)?;
        let upper_part = tb.include(&upper_part.mirrored());
        let lower_part = block_multiple(m, b / m + 1)?;
        let lower_part = tb.include(&lower_part);
        let top = tb.tensor(&[Factor::Ids(a), Factor::Part(&lower_part)]);
        let bottom = tb.tensor(&[Factor::Part(&upper_part), Factor::Ids(b)]);
        tb.compose(&bottom, &top)?
    } else {
        let (x, y, c) = (a / m + 1, b / m + 1, b % m);
        let bym = block_multiple(m, y)?;
        let bym = tb.include(&bym);
        let bxm_star = block_multiple(m, x)?.mirrored();
        let bxm_star = tb.include(&bxm_star);
        let top = tb.tensor(&[Factor::Part(&bm), Factor::Ids(a)]);
        let middle = tb.tensor(&[Factor::Ids(c), Factor::Part(&bym), Factor::Part(&bxm_star)]);
        let bottom = tb.tensor(&[Factor::Part(&bm_star), Factor::Ids(b)]);
        tb.stack(&[top, middle, bottom])?
    };
    Ok(tb.finish(result))
}
