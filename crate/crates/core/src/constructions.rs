//! Partition transformers built only from tensor products, compositions and
//! reflections of their inputs. Every function returns a [`Construction`]
//! whose trace replays from the listed seeds.

use thiserror::Error;

use crate::named;
use crate::partition::{Partition, PartitionError, Point};
use crate::trace::{Construction, Factor, TraceBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} is not a projection (needs q = q* = qq)")]
    NotAProjection(Partition),
    #[error("construction produced {0}, which fails the defining property: {1}")]
    Verification(Partition, String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

fn require_lower_only(p: &Partition, what: &str) -> Result<()> {
    if p.is_lower_only() {
        Ok(())
    } else {
        Err(ConstructionError::Precondition(format!("{what} must have no upper points, got {p}")))
    }
}

fn require_upper_only(p: &Partition, what: &str) -> Result<()> {
    if p.is_upper_only() {
        Ok(())
    } else {
        Err(ConstructionError::Precondition(format!("{what} must have no lower points, got {p}")))
    }
}

fn same(p: &Partition, i: usize, j: usize) -> bool {
    p.same_block(Point::lower(i), Point::lower(j))
}

/// Places `q` between legs `gap` and `gap + 1` of `p`:
/// `(id^gap ⊗ q ⊗ id^(l-gap)) · p`. Seeds: `p`, `q`.
pub fn nest(p: &Partition, q: &Partition, gap: usize) -> Result<Construction> {
    require_lower_only(p, "p")?;
    require_lower_only(q, "q")?;
    let l = p.lower();
    if gap > l {
        return Err(ConstructionError::Range(format!("gap {gap} exceeds {l} legs")));
    }
    let mut b = TraceBuilder::new();
    let layer = b.tensor(&[Factor::Ids(gap), Factor::Part(q), Factor::Ids(l - gap)]);
    let result = b.compose(&layer, p)?;
    Ok(b.finish(result))
}

/// `mult(p,s,1) = p`, `mult(p,s,r) = nest(p, mult(p,s,r-1), s)`. Seed: `p`.
pub fn multi_nest(p: &Partition, s: usize, m: usize) -> Result<Construction> {
    require_lower_only(p, "p")?;
    let l = p.lower();
    if s == 0 || s > l {
        return Err(ConstructionError::Range(format!("s = {s} must lie in 1..={l}")));
    }
    if m == 0 {
        return Err(ConstructionError::Range("m must be at least 1".into()));
    }
    let mut b = TraceBuilder::new();
    let mut acc = p.clone();
    for _ in 1..m {
        let step = nest(p, &acc, s)?;
        acc = b.include(&step);
    }
    Ok(b.finish(acc))
}

/// Clause (a) of a line rotation: for `2 <= i < j <= l`, points `i, j` share
/// a block of `p` iff `i-1, j-1` share a block of `rotated`.
pub fn satisfies_weak_rotation(p: &Partition, rotated: &Partition) -> bool {
    let l = p.lower();
    if !p.is_lower_only() || !rotated.is_lower_only() || rotated.lower() != l {
        return false;
    }
    (2..=l).all(|i| (i + 1..=l).all(|j| same(p, i, j) == same(rotated, i - 1, j - 1)))
}

/// Clauses (a) and (b): additionally, `1, j` share a block of `p` iff
/// `j-1, l` share a block of `rotated`.
pub fn satisfies_rotation(p: &Partition, rotated: &Partition) -> bool {
    let l = p.lower();
    satisfies_weak_rotation(p, rotated) && (2..=l).all(|j| same(p, 1, j) == same(rotated, j - 1, l))
}

/// The unique partition satisfying both rotation clauses: point 1 moves to
/// the right end and every other point moves one step left.
pub fn cyclic_rotation(p: &Partition) -> Partition {
    let l = p.lower();
    if l == 0 {
        return p.clone();
    }
    let labels: Vec<u32> = (0..l).map(|i| p.labels()[(i + 1) % l]).collect();
    Partition::from_labels(0, l, &labels)
}

/// `(q^{⊗l} ⊗ id^{⊗l}) · (id^{⊗(kl-1)} ⊗ p ⊗ id) · p^{⊗k}` for `p ∈ P(0,l)`,
/// `q ∈ P(k,0)`. Seeds: `p`, `q`.
pub fn weak_line_rotate(p: &Partition, q: &Partition) -> Result<Construction> {
    require_lower_only(p, "p")?;
    require_upper_only(q, "q")?;
    let (l, k) = (p.lower(), q.upper());
    if l == 0 || k == 0 {
        return Err(ConstructionError::Precondition("rotation needs l >= 1 and k >= 1".into()));
    }
    let mut b = TraceBuilder::new();
    let top = b.tensor(&[Factor::Power(p, k)]);
    let middle = b.tensor(&[Factor::Ids(k * l - 1), Factor::Part(p), Factor::Ids(1)]);
    let bottom = b.tensor(&[Factor::Power(q, l), Factor::Ids(l)]);
    let result = b.stack(&[top, middle, bottom])?;
    if !satisfies_weak_rotation(p, &result) {
        return Err(ConstructionError::Verification(result, "weak rotation clause".into()));
    }
    Ok(b.finish(result))
}

/// Left-handed version: `reflect ∘ weak_line_rotate ∘ reflect`.
pub fn weak_line_rotate_left(p: &Partition, q: &Partition) -> Result<Construction> {
    let mut b = TraceBuilder::new();
    let rp = b.reflect(p);
    let rq = b.reflect(q);
    let inner = weak_line_rotate(&rp, &rq)?;
    let rotated = b.include(&inner);
    let result = b.reflect(&rotated);
    Ok(b.finish(result))
}

/// Brings a non-singleton point of `x ∈ P(0,k)` to the last position using
/// weak rotations (partner `partner ∈ P(k,0)`) followed by a reflection.
/// Returns `None` trace steps when `x` already qualifies.
fn last_point_connected(x: &Partition, partner: &Partition) -> Result<Construction> {
    let k = x.lower();
    if !same_block_elsewhere(x, k) {
        let first = (1..=k)
            .find(|&j| same_block_elsewhere(x, j))
            .ok_or_else(|| ConstructionError::Precondition(format!("{x} has only singleton blocks")))?;
        let mut b = TraceBuilder::new();
        let mut acc = x.clone();
        for _ in 1..first {
            let step = weak_line_rotate(&acc, partner)?;
            acc = b.include(&step);
        }
        let result = b.reflect(&acc);
        return Ok(b.finish(result));
    }
    Ok(Construction::seed(x.clone()))
}

fn same_block_elsewhere(x: &Partition, j: usize) -> bool {
    (1..=x.lower()).any(|i| i != j && same(x, i, j))
}

/// `(q' ⊗ id^{⊗l}) · (id^{⊗(k-1)} ⊗ p ⊗ id) · q*'`, where `q*'` is `q*`
/// prepared so that its last point is connected to an earlier one and `q'`
/// is its involution. Seeds: `p`, `q`, `q*`.
pub fn line_rotate(p: &Partition, q: &Partition) -> Result<Construction> {
    require_lower_only(p, "p")?;
    require_upper_only(q, "q")?;
    let (l, k) = (p.lower(), q.upper());
    if l == 0 || k == 0 {
        return Err(ConstructionError::Precondition("rotation needs l >= 1 and k >= 1".into()));
    }
    if q.is_all_singletons() {
        return Err(ConstructionError::Precondition(format!("{q} has only singleton blocks")));
    }
    let prepared = last_point_connected(&q.involute(), q)?;
    let mirror = prepared.mirrored();
    let mut b = TraceBuilder::new();
    let top = b.include(&prepared);
    let q_prime = b.include(&mirror);
    let middle = b.tensor(&[Factor::Ids(k - 1), Factor::Part(p), Factor::Ids(1)]);
    let bottom = b.tensor(&[Factor::Part(&q_prime), Factor::Ids(l)]);
    let result = b.stack(&[top, middle, bottom])?;
    if !satisfies_rotation(p, &result) {
        return Err(ConstructionError::Verification(result, "rotation clauses".into()));
    }
    Ok(b.finish(result))
}

/// Left-handed version: `reflect ∘ line_rotate ∘ reflect`.
pub fn line_rotate_left(p: &Partition, q: &Partition) -> Result<Construction> {
    let mut b = TraceBuilder::new();
    let rp = b.reflect(p);
    let rq = b.reflect(q);
    // The mirrored seed `q*` reflects to `(q̃)*`.
    let rq_star = b.reflect(&q.involute());
    debug_assert_eq!(rq_star, rq.involute());
    let inner = line_rotate(&rp, &rq)?;
    let rotated = b.include(&inner);
    let result = b.reflect(&rotated);
    Ok(b.finish(result))
}

/// `(id^{⊗s} ⊗ p̃*) · (p ⊗ id^{⊗s}) ∈ P(s,s)`. Seeds: `p`, `p*`.
pub fn shifted_doubling(p: &Partition, s: usize) -> Result<Construction> {
    require_lower_only(p, "p")?;
    let l = p.lower();
    if s == 0 || s > l {
        return Err(ConstructionError::Range(format!("s = {s} must lie in 1..={l}")));
    }
    let mut b = TraceBuilder::new();
    let mirrored = b.reflect(&p.involute());
    let top = b.tensor(&[Factor::Part(p), Factor::Ids(s)]);
    let bottom = b.tensor(&[Factor::Ids(s), Factor::Part(&mirrored)]);
    let result = b.compose(&bottom, &top)?;
    Ok(b.finish(result))
}

/// Doubling of `p ∈ P(0,l)` on its first `s` legs:
/// `(id^{⊗s} ⊗ M*) · ((p·p*) ⊗ id^{⊗(l-1)(l-s)}) · (id^{⊗s} ⊗ M)` with
/// `M = mult(p',1,l-s)` and `p'` the least weak rotation of `p` whose first
/// point is not a singleton. Seeds: `p`, `p*`.
pub fn partial_doubling(p: &Partition, s: usize) -> Result<Construction> {
    require_lower_only(p, "p")?;
    let l = p.lower();
    if p.is_all_singletons() {
        return Err(ConstructionError::Precondition(format!("{p} has only singleton blocks")));
    }
    if s == 0 || s > l {
        return Err(ConstructionError::Range(format!("s = {s} must lie in 1..={l}")));
    }
    let p_star = p.involute();
    let mut b = TraceBuilder::new();

    let nested = if s < l {
        let mut sub = TraceBuilder::new();
        let mut rotated = p.clone();
        while !same_block_elsewhere(&rotated, 1) {
            let step = weak_line_rotate(&rotated, &p_star)?;
            rotated = sub.include(&step);
        }
        let mult = multi_nest(&rotated, 1, l - s)?;
        let m = sub.include(&mult);
        Some(sub.finish(m))
    } else {
        None
    };

    let middle_core = b.compose(p, &p_star)?;
    let (top, bottom) = match &nested {
        Some(c) => {
            let m = b.include(c);
            let m_star = b.include(&c.mirrored());
            (
                b.tensor(&[Factor::Ids(s), Factor::Part(&m)]),
                b.tensor(&[Factor::Ids(s), Factor::Part(&m_star)]),
            )
        }
        None => (Partition::identity_power(s), Partition::identity_power(s)),
    };
    let middle = b.tensor(&[Factor::Part(&middle_core), Factor::Ids((l - 1) * (l - s))]);
    let result = if nested.is_some() {
        b.stack(&[top, middle, bottom])?
    } else {
        // With s = l the sandwich collapses to `p·p*`.
        middle
    };
    if !is_projection(&result) {
        return Err(ConstructionError::Verification(result, "q = q* = qq".into()));
    }
    Ok(b.finish(result))
}

/// `q = q* = qq`.
pub fn is_projection(q: &Partition) -> bool {
    q.upper() == q.lower()
        && q.involute() == *q
        && crate::partition::compose(q, q).map(|o| o.result == *q).unwrap_or(false)
}

/// For a projection `q`: whenever upper point `i` and lower point `j` share a
/// block, lower point `i` and upper point `j` are in that block too.
pub fn projection_symmetry_check(q: &Partition) -> Result<bool> {
    if !is_projection(q) {
        return Err(ConstructionError::NotAProjection(q.clone()));
    }
    let s = q.upper();
    Ok((1..=s).all(|i| {
        (1..=s).all(|j| {
            let v = q.block_of(Point::upper(i));
            v != q.block_of(Point::lower(j))
                || (q.block_of(Point::lower(i)) == v && q.block_of(Point::upper(j)) == v)
        })
    }))
}

/// `(p2^{⊗l} ⊗ id^{⊗(b-a)} ⊗ p2^{⊗l}) · (id^{⊗(kl-a)} ⊗ q ⊗ id^{⊗(kl-(s-b))})
/// · (p1^{⊗k} ⊗ id^{⊗(b-a)} ⊗ p1^{⊗k}) ∈ P(b-a, b-a)`.
/// Seeds: `q`, `p1 ∈ P(0,l)`, `p2 ∈ P(k,0)`. Accepts `0 <= a < b <= s`.
pub fn weak_restriction(q: &Partition, p1: &Partition, p2: &Partition, a: usize, b: usize) -> Result<Construction> {
    let s = q.upper();
    if q.lower() != s {
        return Err(ConstructionError::Precondition(format!("{q} is not in P(s,s)")));
    }
    require_lower_only(p1, "p1")?;
    require_upper_only(p2, "p2")?;
    let (l, k) = (p1.lower(), p2.upper());
    if l == 0 || k == 0 {
        return Err(ConstructionError::Precondition("p1 and p2 need at least one point".into()));
    }
    if a >= b || b > s {
        return Err(ConstructionError::Range(format!("need a < b <= {s}, got a = {a}, b = {b}")));
    }
    let kl = k * l;
    if kl < a || kl < s - b {
        return Err(ConstructionError::Range(format!("k*l = {kl} too small to cap {a} and {} points", s - b)));
    }
    let mut tb = TraceBuilder::new();
    let top = tb.tensor(&[Factor::Power(p1, k), Factor::Ids(b - a), Factor::Power(p1, k)]);
    let middle = tb.tensor(&[Factor::Ids(kl - a), Factor::Part(q), Factor::Ids(kl - (s - b))]);
    let bottom = tb.tensor(&[Factor::Power(p2, l), Factor::Ids(b - a), Factor::Power(p2, l)]);
    let result = tb.stack(&[top, middle, bottom])?;
    Ok(tb.finish(result))
}

/// `(id^{⊗(m-1)} ⊗ p) · (b_m ⊗ id^{⊗(k-1)}) ∈ P(k-1, l+m-1)`. Seeds: `p`, `b_m`.
pub fn m_rotation(p: &Partition, m: usize) -> Result<Construction> {
    let k = p.upper();
    if k == 0 {
        return Err(ConstructionError::Precondition(format!("{p} has no upper point to rotate")));
    }
    if m == 0 {
        return Err(ConstructionError::Range("m must be at least 1".into()));
    }
    let bm = named::block(m);
    let mut b = TraceBuilder::new();
    let top = b.tensor(&[Factor::Part(&bm), Factor::Ids(k - 1)]);
    let bottom = b.tensor(&[Factor::Ids(m - 1), Factor::Part(p)]);
    let result = b.compose(&bottom, &top)?;
    Ok(b.finish(result))
}
