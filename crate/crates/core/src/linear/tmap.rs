use std::collections::{BTreeMap, HashMap};

use crate::partition::{compose, Partition, PartitionError};

use super::matrix::{digits, MultiIndex, Rational, RationalMatrix};

/// The 0/1 matrix of `T_p : (ℂ^n)^{⊗k} → (ℂ^n)^{⊗l}`, stored as its
/// nonzero positions. Rows and columns are flattened multi-indices, most
/// significant digit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensorMap {
    pub n: usize,
    pub partition: Partition,
    /// `(row, col)` pairs in increasing order.
    pub entries: Vec<(usize, usize)>,
}

/// One entry per assignment of a value in `0..n` to each block.
pub fn t_map(p: &Partition, n: usize) -> SparseTensorMap {
    assert!(n >= 1, "n must be positive");
    let blocks = p.block_count();
    let labels = p.labels();
    let (lower, upper) = (p.lower(), p.upper());
    let mut entries = Vec::with_capacity(n.pow(blocks as u32));
    let mut values = vec![0usize; blocks];
    loop {
        let mut row = 0;
        for &b in &labels[..lower] {
            row = row * n + values[b as usize];
        }
        let mut col = 0;
        for &b in &labels[lower..lower + upper] {
            col = col * n + values[b as usize];
        }
        entries.push((row, col));
        // Odometer over block values.
        let mut i = blocks;
        loop {
            if i == 0 {
                entries.sort_unstable();
                return SparseTensorMap { n, partition: p.clone(), entries };
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

impl SparseTensorMap {
    pub fn rows(&self) -> usize {
        self.n.pow(self.partition.lower() as u32)
    }

    pub fn cols(&self) -> usize {
        self.n.pow(self.partition.upper() as u32)
    }

    /// Nonzeros as `(row multi-index of length l, column multi-index of length k)`, 1-based.
    pub fn nonzeros(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let (l, k) = (self.partition.lower(), self.partition.upper());
        self.entries
            .iter()
            .map(|&(r, c)| {
                let one_based = |v: Vec<usize>| MultiIndex(v.into_iter().map(|x| x + 1).collect());
                (one_based(digits(r, self.n, l)), one_based(digits(c, self.n, k)))
            })
            .collect()
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows(), self.cols());
        for &(r, c) in &self.entries {
            m[(r, c)] = Rational::from_integer(1.into());
        }
        m
    }

    /// Column index → rows with a 1 in that column.
    pub(crate) fn by_column(&self) -> HashMap<usize, Vec<usize>> {
        let mut map: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(r, c) in &self.entries {
            map.entry(c).or_default().push(r);
        }
        map
    }

    /// 1-based `row col 1` lines.
    pub fn triplets(&self) -> String {
        self.entries.iter().map(|(r, c)| format!("{} {} 1\n", r + 1, c + 1)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeIdentity {
    /// Nonzero entries of `T_q · T_p`.
    pub lhs: Vec<((usize, usize), u64)>,
    /// Nonzero entries of `n^loops · T_{qp}`.
    pub rhs: Vec<((usize, usize), u64)>,
    pub factor: u64,
    pub holds: bool,
}

/// Compares `T_q · T_p` with `n^{removed_loops} · T_{qp}`.
pub fn compose_t_identity(q: &Partition, p: &Partition, n: usize) -> Result<ComposeIdentity, PartitionError> {
    let outcome = compose(q, p)?;
    let (tq, tp) = (t_map(q, n), t_map(p, n));
    let mut q_by_col: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(r, c) in &tq.entries {
        q_by_col.entry(c).or_default().push(r);
    }
    let mut product: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for &(mid, c) in &tp.entries {
        if let Some(rows) = q_by_col.get(&mid) {
            for &r in rows {
                *product.entry((r, c)).or_default() += 1;
            }
        }
    }
    let factor = (n as u64).pow(outcome.removed_loops as u32);
    let rhs: Vec<((usize, usize), u64)> = t_map(&outcome.result, n).entries.into_iter().map(|e| (e, factor)).collect();
    let lhs: Vec<((usize, usize), u64)> = product.into_iter().collect();
    let holds = lhs == rhs;
    Ok(ComposeIdentity { lhs, rhs, factor, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::*;

    #[test]
    fn small_maps() {
        assert_eq!(t_map(&up1(), 3).entries, vec![(0, 0), (1, 0), (2, 0)]);
        assert_eq!(t_map(&id(), 2).to_dense(), RationalMatrix::identity(2));
        assert_eq!(t_map(&pair(), 2).entries, vec![(0, 0), (3, 0)]);
        let nz = t_map(&pair(), 2).nonzeros();
        assert_eq!(nz[1].0, MultiIndex(vec![2, 2]));
        assert_eq!(t_map(&Partition::empty(), 4).entries, vec![(0, 0)]);
    }

    #[test]
    fn composition_factors() {
        let c = compose_t_identity(&copair(), &pair(), 3).unwrap();
        assert_eq!((c.factor, c.holds), (3, true));
        assert_eq!(c.lhs, vec![((0, 0), 3)]);
        let c = compose_t_identity(&fourblock(), &pair(), 2).unwrap();
        assert!(c.holds && c.factor == 1);
        assert!(compose_t_identity(&pair(), &pair(), 2).is_err());
    }
}
