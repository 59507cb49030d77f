//! Hypothesis-free ground truth for distinct-coordinate counts.
//!
//! * [`brute_force_distinct`] walks every tuple with pairwise distinct entries.
//! * [`iep_edge_subsets`] is inclusion-exclusion over every set `S` of forced
//!   equalities `x_u = x_v`: `sum_S (-1)^|S| N(S)`.
//! * [`iep_partitions`] groups those sets by the partition their graph induces
//!   and replaces each group's signed size by the Moebius weight
//!   `prod_B (-1)^(|B|-1) (|B|-1)!`.
//!
//! `N(S)` is [`pattern_count`]: merge the coordinates in each connected
//! component of `S` and apply Lehmer's count to the smaller congruence.

mod partition;
mod union_find;

pub use partition::{all_pairs, for_each_partition, EqualityPattern, IndexPartition};
pub use union_find::UnionFind;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{factorial, signed, to_count, ExactCount, ExactInt};
use crate::congruence::{lehmer_count, CongruenceInstance};
use crate::error::{Error, Result};

/// Default cap on `n^k` for [`brute_force_distinct`].
pub const DEFAULT_TUPLE_BUDGET: u64 = 100_000_000;
/// Largest `k` for [`iep_edge_subsets`]: `2^C(5,2) = 1024` terms.
pub const EDGE_SUBSET_MAX_K: usize = 5;
/// Largest `k` for [`iep_partitions`]: Bell(12) = 4213597 terms.
pub const PARTITION_MAX_K: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceRun {
    pub count: ExactCount,
    /// Complete tuples whose congruence was evaluated.
    pub evaluated: u64,
}

pub fn brute_force_distinct(inst: &CongruenceInstance) -> Result<ExactCount> {
    Ok(brute_force_distinct_with(inst, DEFAULT_TUPLE_BUDGET, 1)?.count)
}

/// Exhaustive count over `Z_n^k` in lexicographic order, pruning any branch
/// that repeats a coordinate. `threads > 1` splits the first coordinate.
pub fn brute_force_distinct_with(
    inst: &CongruenceInstance,
    budget: u64,
    threads: usize,
) -> Result<BruteForceRun> {
    let k = inst.k();
    if ExactInt::from(k) > *inst.n() {
        return Ok(BruteForceRun {
            count: ExactCount::zero(),
            evaluated: 0,
        });
    }
    let space = num_traits::pow(inst.n().clone(), k);
    if space > ExactInt::from(budget) {
        return Err(Error::resource(format!(
            "brute force needs n^k = {space} tuple evaluations, budget is {budget}"
        )));
    }
    // n^k <= budget, so n and every partial product fit in u64
    let n = inst.n().to_u64().expect("n within budget");
    let coeffs: Vec<u64> = inst.coeffs().iter().map(|a| a.to_u64().unwrap()).collect();
    let b = inst.b().to_u64().unwrap();

    let firsts: Vec<u64> = (0..n).collect();
    let threads = threads.clamp(1, firsts.len().max(1));
    let (count, evaluated) = if threads == 1 {
        brute_from(&coeffs, b, n, &firsts)
    } else {
        let chunks: Vec<Vec<u64>> = (0..threads)
            .map(|t| firsts.iter().copied().skip(t).step_by(threads).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| scope.spawn(|| brute_from(&coeffs, b, n, chunk)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("brute force worker panicked"))
                .fold((0, 0), |(c, e), (c2, e2)| (c + c2, e + e2))
        })
    };
    Ok(BruteForceRun {
        count: ExactCount::from(count),
        evaluated,
    })
}

fn brute_from(coeffs: &[u64], b: u64, n: u64, firsts: &[u64]) -> (u64, u64) {
    struct Walk<'a> {
        coeffs: &'a [u64],
        b: u64,
        n: u64,
        used: Vec<bool>,
        count: u64,
        evaluated: u64,
    }

    impl Walk<'_> {
        fn descend(&mut self, depth: usize, partial: u64) {
            if depth == self.coeffs.len() {
                self.evaluated += 1;
                if partial == self.b {
                    self.count += 1;
                }
                return;
            }
            for x in 0..self.n {
                if self.used[x as usize] {
                    continue;
                }
                self.used[x as usize] = true;
                let next = (partial + self.coeffs[depth] * x % self.n) % self.n;
                self.descend(depth + 1, next);
                self.used[x as usize] = false;
            }
        }
    }

    let mut walk = Walk {
        coeffs,
        b,
        n,
        used: vec![false; n as usize],
        count: 0,
        evaluated: 0,
    };
    for &x in firsts {
        walk.used[x as usize] = true;
        walk.descend(1, coeffs[0] * x % n);
        walk.used[x as usize] = false;
    }
    (walk.count, walk.evaluated)
}

/// `N(S)`: solutions with `x_u = x_v` for every pair in the pattern.
pub fn pattern_count(inst: &CongruenceInstance, pattern: &EqualityPattern) -> Result<ExactCount> {
    if pattern.k() != inst.k() {
        return Err(Error::usage(format!(
            "pattern is on {} indices, instance has k = {}",
            pattern.k(),
            inst.k()
        )));
    }
    Ok(lehmer_count(&pattern.components().merge(inst)))
}

/// Per-`k` lookup from edge-subset bitmask to induced partition.
struct EdgeSubsetTable {
    partitions: Vec<IndexPartition>,
    partition_of: Vec<u16>,
}

fn edge_subset_table(k: usize) -> &'static EdgeSubsetTable {
    static TABLES: OnceLock<Vec<EdgeSubsetTable>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=EDGE_SUBSET_MAX_K)
            .map(|k| {
                let pairs = k * k.saturating_sub(1) / 2;
                let mut index: BTreeMap<IndexPartition, u16> = BTreeMap::new();
                let mut partitions = Vec::new();
                let partition_of = (0..1u64 << pairs)
                    .map(|mask| {
                        let p = EqualityPattern::from_mask(k, mask).components();
                        *index.entry(p.clone()).or_insert_with(|| {
                            partitions.push(p);
                            (partitions.len() - 1) as u16
                        })
                    })
                    .collect();
                EdgeSubsetTable {
                    partitions,
                    partition_of,
                }
            })
            .collect()
    });
    &tables[k]
}

/// Inclusion-exclusion over all `2^C(k,2)` sets of forced equalities.
pub fn iep_edge_subsets(inst: &CongruenceInstance) -> Result<ExactCount> {
    let k = inst.k();
    if k > EDGE_SUBSET_MAX_K {
        return Err(Error::resource(format!(
            "edge-subset inclusion-exclusion is limited to k <= {EDGE_SUBSET_MAX_K} \
             (got k = {k}); use iep-partitions"
        )));
    }
    let table = edge_subset_table(k);
    // N(S) depends on S only through its components; evaluate once per partition.
    let counts: Vec<ExactCount> = table
        .partitions
        .iter()
        .map(|p| lehmer_count(&p.merge(inst)))
        .collect();

    let total = match counts
        .iter()
        .map(ToPrimitive::to_i64)
        .collect::<Option<Vec<i64>>>()
    {
        // at most 1024 terms of magnitude < 2^63: the sum cannot leave i128
        Some(small) => ExactInt::from(
            table
                .partition_of
                .iter()
                .enumerate()
                .map(|(mask, &p)| {
                    let v = small[p as usize] as i128;
                    if mask.count_ones() % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .sum::<i128>(),
        ),
        None => table
            .partition_of
            .iter()
            .enumerate()
            .fold(ExactInt::zero(), |acc, (mask, &p)| {
                let v = signed(&counts[p as usize]);
                if mask.count_ones() % 2 == 0 {
                    acc + v
                } else {
                    acc - v
                }
            }),
    };
    Ok(to_count(total))
}

/// Inclusion-exclusion compressed to one term per set partition of the indices.
pub fn iep_partitions(inst: &CongruenceInstance) -> Result<ExactCount> {
    let k = inst.k();
    if k > PARTITION_MAX_K {
        return Err(Error::resource(format!(
            "partition inclusion-exclusion is limited to k <= {PARTITION_MAX_K} (got k = {k})"
        )));
    }
    if let Some(total) = iep_partitions_small(inst) {
        return Ok(to_count(ExactInt::from(total)));
    }
    let mut total = ExactInt::zero();
    for_each_partition(k, |labels, _| {
        let partition = IndexPartition::from_labels(labels);
        total += partition.mobius_weight() * signed(&lehmer_count(&partition.merge(inst)));
    });
    Ok(to_count(total))
}

/// Same sum in `i128` when `k! * n^k` fits, which bounds every partial sum
/// (the absolute Moebius weights sum to `k!` and each count is at most `n^k`).
fn iep_partitions_small(inst: &CongruenceInstance) -> Option<i128> {
    let k = inst.k();
    let bound = signed(&factorial(k)) * num_traits::pow(inst.n().clone(), k);
    bound.to_i128()?;
    let n = inst.n().to_u64()? as i128;
    let coeffs: Vec<i128> = inst.coeffs().iter().map(|a| a.to_i128().unwrap()).collect();
    let b = inst.b().to_i128().unwrap();
    let block_weight: Vec<i128> = (0..=k)
        .map(|size| {
            if size == 0 {
                return 0;
            }
            let f = factorial(size - 1).to_i128().unwrap();
            if size % 2 == 0 {
                -f
            } else {
                f
            }
        })
        .collect();

    let mut sums = vec![0i128; k];
    let mut sizes = vec![0usize; k];
    let mut total = 0i128;
    for_each_partition(k, |labels, blocks| {
        sums[..blocks].iter_mut().for_each(|s| *s = 0);
        sizes[..blocks].iter_mut().for_each(|s| *s = 0);
        for (i, &l) in labels.iter().enumerate() {
            sums[l] += coeffs[i];
            sizes[l] += 1;
        }
        let l = sums[..blocks].iter().fold(n, |g, s| g.gcd(s));
        if b % l != 0 {
            return;
        }
        let weight: i128 = sizes[..blocks].iter().map(|&s| block_weight[s]).product();
        total += weight * l * n.pow(blocks as u32 - 1);
    });
    Some(total)
}
