use std::fmt;

use num_traits::One;

use crate::arith::{factorial, signed, ExactInt};
use crate::congruence::CongruenceInstance;
use crate::error::{Error, Result};

use super::union_find::UnionFind;

/// Set of index pairs `{u, v}` (0-based, `u < v < k`) whose coordinates are forced equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EqualityPattern {
    k: usize,
    edges: Vec<(usize, usize)>,
}

impl EqualityPattern {
    pub fn new(k: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            if u == v || v >= k {
                return Err(Error::usage(format!("invalid pair ({u}, {v}) for k = {k}")));
            }
            normalized.push((u, v));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(EqualityPattern {
            k,
            edges: normalized,
        })
    }

    pub fn empty(k: usize) -> Self {
        EqualityPattern {
            k,
            edges: Vec::new(),
        }
    }

    /// Every pair `{u, v}` with `u < v < k`.
    pub fn complete(k: usize) -> Self {
        EqualityPattern {
            k,
            edges: all_pairs(k).collect(),
        }
    }

    /// Bit `i` of `mask` selects the `i`-th pair of [`all_pairs`].
    pub fn from_mask(k: usize, mask: u64) -> Self {
        EqualityPattern {
            k,
            edges: all_pairs(k)
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p)
                .collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn components(&self) -> IndexPartition {
        let mut uf = UnionFind::new(self.k);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        IndexPartition::from_labels(&uf.labels())
    }
}

/// Pairs `(u, v)`, `u < v < k`, in lexicographic order.
pub fn all_pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |u| (u + 1..k).map(move |v| (u, v)))
}

/// Partition of `0..k` into blocks, blocks ordered by smallest element and
/// each block sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPartition {
    blocks: Vec<Vec<usize>>,
}

impl IndexPartition {
    /// `labels[i]` names the block of `i`; any labelling works.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (i, &label) in labels.iter().enumerate() {
            match seen.iter().find(|(l, _)| *l == label) {
                Some(&(_, b)) => blocks[b].push(i),
                None => {
                    seen.push((label, blocks.len()));
                    blocks.push(vec![i]);
                }
            }
        }
        IndexPartition { blocks }
    }

    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::usage("partition blocks must be nonempty"));
            }
            for &i in block {
                if i >= k || labels[i] != usize::MAX {
                    return Err(Error::usage(format!("index {i} out of range or repeated")));
                }
                labels[i] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::usage("partition blocks must cover 0..k"));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Moebius weight of the partition against the bottom of the partition
    /// lattice: `prod_B (-1)^(|B|-1) (|B|-1)!`.
    pub fn mobius_weight(&self) -> ExactInt {
        self.blocks.iter().fold(ExactInt::one(), |acc, block| {
            let w = signed(&factorial(block.len() - 1));
            if block.len() % 2 == 0 {
                acc * -w
            } else {
                acc * w
            }
        })
    }

    /// The congruence obtained by setting all coordinates in a block equal:
    /// one unknown per block, coefficient the sum over the block.
    pub fn merge(&self, inst: &CongruenceInstance) -> CongruenceInstance {
        let coeffs = self
            .blocks
            .iter()
            .map(|block| block.iter().map(|&i| &inst.coeffs()[i]).sum())
            .collect();
        CongruenceInstance::new(coeffs, inst.b().clone(), inst.n().clone())
            .expect("merged instance keeps a valid modulus")
    }
}

impl fmt::Display for IndexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Calls `visit(labels, blocks)` once for every set partition of `0..k`, given
/// as a restricted growth string: `labels[0] = 0` and each label is at most one
/// more than the largest label before it.
pub fn for_each_partition(k: usize, mut visit: impl FnMut(&[usize], usize)) {
    if k == 0 {
        visit(&[], 0);
        return;
    }
    let mut labels = vec![0usize; k];
    // prefix_max[i] = max(labels[..=i])
    let mut prefix_max = vec![0usize; k];
    loop {
        visit(&labels, prefix_max[k - 1] + 1);
        // rightmost position that can still be incremented
        let mut i = k - 1;
        while i > 0 && labels[i] > prefix_max[i - 1] {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        labels[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(labels[i]);
        for j in i + 1..k {
            labels[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_are_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (k, want) in bell.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for_each_partition(k, |labels, blocks| {
                let p = IndexPartition::from_labels(labels);
                assert_eq!(p.len(), blocks);
                assert!(seen.insert(p));
            });
            assert_eq!(seen.len(), *want, "k = {k}");
        }
    }

    #[test]
    fn canonical_block_order() {
        let p = IndexPartition::from_labels(&[7, 3, 7, 9, 3]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 4], vec![3]]);
        assert_eq!(p.to_string(), "{1,3} {2,5} {4}");
        let q = IndexPartition::new(5, vec![vec![3], vec![4, 1], vec![2, 0]]).unwrap();
        assert_eq!(p, q);
        assert!(IndexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(IndexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(IndexPartition::new(2, vec![vec![0, 1], vec![]]).is_err());
    }

    #[test]
    fn mobius_weights() {
        let w =
            |blocks: Vec<Vec<usize>>, k| IndexPartition::new(k, blocks).unwrap().mobius_weight();
        assert_eq!(w(vec![vec![0], vec![1], vec![2]], 3), ExactInt::from(1));
        assert_eq!(w(vec![vec![0, 1], vec![2]], 3), ExactInt::from(-1));
        assert_eq!(w(vec![vec![0, 1, 2]], 3), ExactInt::from(2));
        assert_eq!(w(vec![vec![0, 1, 2, 3]], 4), ExactInt::from(-6));
        assert_eq!(w(vec![vec![0, 1], vec![2, 3]], 4), ExactInt::from(1));
    }

    #[test]
    fn pattern_components() {
        let p = EqualityPattern::new(5, [(3, 0), (1, 4), (0, 3)]).unwrap();
        assert_eq!(p.edges(), &[(0, 3), (1, 4)]);
        assert_eq!(p.components().blocks(), &[vec![0, 3], vec![1, 4], vec![2]]);
        assert_eq!(EqualityPattern::complete(4).components().len(), 1);
        assert_eq!(EqualityPattern::empty(4).components().len(), 4);
        assert_eq!(
            EqualityPattern::from_mask(3, 0b101).edges(),
            &[(0, 1), (1, 2)]
        );
        assert!(EqualityPattern::new(3, [(1, 1)]).is_err());
        assert!(EqualityPattern::new(3, [(1, 3)]).is_err());
    }
}
