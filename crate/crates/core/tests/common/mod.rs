//! Brute-force reference implementations shared by the integration suites.
//! None of these call into the library beyond building `Partition` values
//! from explicit block lists.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use partcalc::linear::RationalMatrix;
use partcalc::{Partition, Point};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Points in a fixed order: upper 1..k then lower 1..l.
pub fn points(k: usize, l: usize) -> Vec<Point> {
    (1..=k).map(Point::upper).chain((1..=l).map(Point::lower)).collect()
}

/// Every set partition of the `k + l` points, built by inserting the points
/// one at a time into an existing block or a new one.
pub fn brute_blocks(k: usize, l: usize) -> Vec<Vec<Vec<Point>>> {
    let mut acc: Vec<Vec<Vec<Point>>> = vec![Vec::new()];
    for pt in points(k, l) {
        let mut next = Vec::new();
        for blocks in &acc {
            for i in 0..blocks.len() {
                let mut b = blocks.clone();
                b[i].push(pt);
                next.push(b);
            }
            let mut b = blocks.clone();
            b.push(vec![pt]);
            next.push(b);
        }
        acc = next;
    }
    acc
}

pub fn brute_partitions(k: usize, l: usize) -> Vec<Partition> {
    brute_blocks(k, l).into_iter().map(|b| Partition::new(k, l, b).expect("valid blocks")).collect()
}

/// All partitions with `k <= max_upper`, `l <= max_lower`.
pub fn box_of(max_upper: usize, max_lower: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for k in 0..=max_upper {
        for l in 0..=max_lower {
            out.extend(brute_partitions(k, l));
        }
    }
    out
}

/// All partitions with at most `n` points in total.
pub fn up_to(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for total in 0..=n {
        for k in 0..=total {
            out.extend(brute_partitions(k, total - k));
        }
    }
    out
}

/// Block id of every point, looked up by scanning `blocks()`.
fn block_index(p: &Partition) -> Vec<(Point, usize)> {
    p.blocks().into_iter().enumerate().flat_map(|(i, b)| b.into_iter().map(move |pt| (pt, i))).collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// `q` below `p` via connected components of the glued graph. Returns the
/// composite and the number of components lying entirely in the middle row.
pub fn graph_compose(q: &Partition, p: &Partition) -> (Partition, usize) {
    assert_eq!(p.lower(), q.upper());
    let (k, m, l) = (p.upper(), p.lower(), q.lower());
    // Vertices: 0..k top, k..k+m middle, k+m..k+m+l bottom.
    let n = k + m + l;
    let mut parent: Vec<usize> = (0..n).collect();
    let vertex_p = |pt: Point| match pt.row {
        partcalc::Row::Upper => pt.index - 1,
        partcalc::Row::Lower => k + pt.index - 1,
    };
    let vertex_q = |pt: Point| match pt.row {
        partcalc::Row::Upper => k + pt.index - 1,
        partcalc::Row::Lower => k + m + pt.index - 1,
    };
    for b in p.blocks() {
        for w in b.windows(2) {
            let (a, c) = (find(&mut parent, vertex_p(w[0])), find(&mut parent, vertex_p(w[1])));
            parent[a] = c;
        }
    }
    for b in q.blocks() {
        for w in b.windows(2) {
            let (a, c) = (find(&mut parent, vertex_q(w[0])), find(&mut parent, vertex_q(w[1])));
            parent[a] = c;
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let outer: BTreeSet<usize> = (0..k).chain(k + m..n).map(|v| roots[v]).collect();
    let middle: BTreeSet<usize> = (k..k + m).map(|v| roots[v]).collect();
    let loops = middle.difference(&outer).count();
    let mut groups: Vec<(usize, Vec<Point>)> = Vec::new();
    for v in (0..k).chain(k + m..n) {
        let pt = if v < k { Point::upper(v + 1) } else { Point::lower(v - k - m + 1) };
        match groups.iter_mut().find(|(r, _)| *r == roots[v]) {
            Some((_, g)) => g.push(pt),
            None => groups.push((roots[v], vec![pt])),
        }
    }
    let result = Partition::new(k, l, groups.into_iter().map(|(_, g)| g)).expect("valid composite");
    (result, loops)
}

/// Crossing test on the cyclic order (lower left to right, then upper right
/// to left): a crossing is `a < b < c < d` with `a, c` in one block and
/// `b, d` in another.
pub fn brute_noncrossing(p: &Partition) -> bool {
    let (k, l) = (p.upper(), p.lower());
    let order: Vec<Point> = (1..=l).map(Point::lower).chain((1..=k).rev().map(Point::upper)).collect();
    let idx = block_index(p);
    let label = |pt: Point| idx.iter().find(|(x, _)| *x == pt).unwrap().1;
    let lab: Vec<usize> = order.iter().map(|&pt| label(pt)).collect();
    let n = lab.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if lab[a] == lab[c] && lab[b] == lab[d] && lab[a] != lab[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn catalan(n: usize) -> u64 {
    let mut c = 1u64;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Digits of `x` in base `n`, most significant first.
pub fn digits(mut x: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = x % n;
        x /= n;
    }
    out
}

/// `δ_p(α, β)` by checking every pair of points in a common block.
pub fn brute_delta(p: &Partition, alpha: &[usize], beta: &[usize]) -> bool {
    let value = |pt: Point| match pt.row {
        partcalc::Row::Upper => alpha[pt.index - 1],
        partcalc::Row::Lower => beta[pt.index - 1],
    };
    p.blocks().iter().all(|b| b.iter().all(|&x| value(x) == value(b[0])))
}

/// Dense `T_p` from a full scan of all `n^{k+l}` index pairs.
pub fn dense_t(p: &Partition, n: usize) -> Vec<Vec<u64>> {
    let (k, l) = (p.upper(), p.lower());
    let rows = n.pow(l as u32);
    let cols = n.pow(k as u32);
    let mut out = vec![vec![0u64; cols]; rows];
    for (r, row) in out.iter_mut().enumerate() {
        let beta = digits(r, n, l);
        for (c, x) in row.iter_mut().enumerate() {
            if brute_delta(p, &digits(c, n, k), &beta) {
                *x = 1;
            }
        }
    }
    out
}

pub fn dense_mul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum()).collect())
        .collect()
}

/// Sorted nonzero positions of a sparse Kronecker product.
pub fn sparse_kron(
    a: &[(usize, usize)],
    b: &[(usize, usize)],
    b_rows: usize,
    b_cols: usize,
) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &(r1, c1) in a {
        for &(r2, c2) in b {
            out.push((r1 * b_rows + r2, c1 * b_cols + c2));
        }
    }
    out.sort_unstable();
    out
}

/// Sparse product of 0/1 maps given as nonzero positions, as a sorted list
/// of `((row, col), multiplicity)`.
pub fn sparse_mul(a: &[(usize, usize)], b: &[(usize, usize)]) -> Vec<((usize, usize), u64)> {
    let mut by_col: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for &(r, c) in a {
        by_col.entry(c).or_default().push(r);
    }
    let mut terms = Vec::new();
    for &(mid, c) in b {
        for &r in by_col.get(&mid).map(Vec::as_slice).unwrap_or(&[]) {
            terms.push((r, c));
        }
    }
    terms.sort_unstable();
    let mut out: Vec<((usize, usize), u64)> = Vec::new();
    for t in terms {
        match out.last_mut() {
            Some((last, count)) if *last == t => *count += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// `R(p)` for the scalar matrix `u`, with both sides summed over every
/// `γ` and `γ'` and `δ_p` evaluated directly.
pub fn naive_relation(p: &Partition, u: &RationalMatrix) -> bool {
    let n = u.rows();
    let (k, l) = (p.upper(), p.lower());
    for a in 0..n.pow(k as u32) {
        let alpha = digits(a, n, k);
        for b in 0..n.pow(l as u32) {
            let beta = digits(b, n, l);
            let mut lhs = BigRational::zero();
            for g in 0..n.pow(k as u32) {
                let gamma = digits(g, n, k);
                if brute_delta(p, &gamma, &beta) {
                    let mut t = BigRational::one();
                    for i in 0..k {
                        t *= &u[(gamma[i], alpha[i])];
                    }
                    lhs += t;
                }
            }
            let mut rhs = BigRational::zero();
            for g in 0..n.pow(l as u32) {
                let gamma = digits(g, n, l);
                if brute_delta(p, &alpha, &gamma) {
                    let mut t = BigRational::one();
                    for j in 0..l {
                        t *= &u[(beta[j], gamma[j])];
                    }
                    rhs += t;
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Matrix with entries `p/q`, `p ∈ -5..=5`, `q ∈ 1..=5`.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=5))).collect())
        .collect();
    RationalMatrix::from_rows(rows).expect("square")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in all_permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

pub fn closing_example(a: i64) -> RationalMatrix {
    RationalMatrix::from_integers(&[&[a, 1 - a, 0], &[1 - a, 0, a], &[0, a, 1 - a]])
}

/// Named matrices the checkers are run on besides random ones.
pub fn structured_models() -> Vec<(String, RationalMatrix)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("identity({n})"), RationalMatrix::identity(n)));
    }
    for n in 2..=3 {
        for perm in all_permutations(n) {
            out.push((format!("permutation{perm:?}"), RationalMatrix::permutation(&perm)));
        }
    }
    out.push(("rotation(3/5,4/5)".into(), RationalMatrix::from_fractions(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]])));
    out.push(("rotation(5/13,12/13)".into(), RationalMatrix::from_fractions(&[&[(5, 13), (-12, 13)], &[(12, 13), (5, 13)]])));
    out.push(("reflection(3/5,4/5)".into(), RationalMatrix::from_fractions(&[&[(3, 5), (4, 5)], &[(4, 5), (-3, 5)]])));
    out.push(("signed".into(), RationalMatrix::from_integers(&[&[0, -1, 0], &[0, 0, 1], &[-1, 0, 0]])));
    out.push(("closing_example(2)".into(), closing_example(2)));
    out.push(("2*identity(2)".into(), RationalMatrix::identity(2).scale(&rat(2, 1))));
    out
}

/// Independent case analysis of a one-row partition: case letters and the
/// conclusion text. The `m` of the pair case is the smallest interval
/// length of a pair block over all cyclic relabellings of the row.
pub fn brute_classify(p: &Partition) -> (Vec<String>, String) {
    let l = p.lower();
    if l % 2 == 1 {
        return (vec!["A".into()], "InPO".into());
    }
    let blocks: Vec<Vec<usize>> = p.blocks().into_iter().map(|b| b.into_iter().map(|pt| pt.index).collect()).collect();
    if blocks.iter().any(|b| b.len() == 1) {
        let mut odd = false;
        let mut even = false;
        for b in &blocks {
            for &x in b {
                for &y in b {
                    if x < y {
                        if (y - x) % 2 == 1 {
                            odd = true;
                        } else {
                            even = true;
                        }
                    }
                }
            }
        }
        let mut cases = Vec::new();
        if odd {
            cases.push("B".into());
        }
        if even {
            cases.push("C".into());
        }
        let conclusion = if odd { "InPO" } else { "ImpliesEvenGapWitness" };
        return (cases, conclusion.into());
    }
    if blocks.iter().any(|b| b.len() >= 3) {
        return (vec!["D".into()], "InPO".into());
    }
    let mut m = usize::MAX;
    for shift in 0..l {
        for b in &blocks {
            let mut s = (b[0] - 1 + shift) % l;
            let mut t = (b[1] - 1 + shift) % l;
            if s > t {
                std::mem::swap(&mut s, &mut t);
            }
            m = m.min(t - s + 1);
        }
    }
    let conclusion = if m == 2 { "InPO".to_string() } else { format!("ImpliesTau({m})") };
    (vec![format!("E({m})")], conclusion)
}
