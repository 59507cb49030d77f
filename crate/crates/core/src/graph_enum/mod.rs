//! Labeled simple graphs counted by vertices, edges and connected components.
//!
//! `g'(e, k)` counts connected graphs on `k` labeled vertices with `e` edges and
//! `g(c, e, k)` counts all graphs with exactly `c` components. Both tables are
//! filled by the usual "component of vertex 1" decomposition: pick the `j - 1`
//! other vertices sharing a component with vertex 1, connect them with `e1`
//! edges, and recurse on the remaining `k - j` vertices.
//!
//! The alternating sums over edges are computed from the tables, never from
//! their closed forms, so that the closed forms can be checked against them.

mod series;

pub use series::{
    deformed_exp_truncated, rr_series_term, series_log, series_pow, BivariateSeries, Rational,
    SeriesPoly,
};

use num_traits::{One, Zero};

use crate::arith::{binomial_usize, signed, ExactCount, ExactInt};
use crate::error::{Error, Result};

/// Largest table size accepted unless a caller raises the cap explicitly.
pub const DEFAULT_K_MAX_CAP: usize = 30;

fn edge_slots(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

#[derive(Clone, Debug)]
pub struct GraphCountTable {
    k_max: usize,
    /// `connected[k][e] = g'(e, k)`, `e` in `0..=C(k,2)`.
    connected: Vec<Vec<ExactCount>>,
    /// `components[k][c][e] = g(c, e, k)`; absent when only `g'` was requested.
    components: Option<Vec<Vec<Vec<ExactCount>>>>,
}

/// Builds the `g'(e, k)` part of the table for `1 <= k <= k_max`.
pub fn connected_counts(k_max: usize) -> Result<GraphCountTable> {
    GraphCountTable::build(k_max, false, DEFAULT_K_MAX_CAP)
}

/// Builds both `g'(e, k)` and `g(c, e, k)` for `1 <= k <= k_max`.
pub fn component_counts(k_max: usize) -> Result<GraphCountTable> {
    GraphCountTable::build(k_max, true, DEFAULT_K_MAX_CAP)
}

impl GraphCountTable {
    pub fn build(k_max: usize, with_components: bool, cap: usize) -> Result<Self> {
        if k_max == 0 || k_max > cap {
            return Err(Error::usage(format!(
                "k_max must be in 1..={cap}, got {k_max}"
            )));
        }
        let connected = build_connected(k_max);
        let components = with_components.then(|| build_components(k_max, &connected));
        Ok(GraphCountTable {
            k_max,
            connected,
            components,
        })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn has_components(&self) -> bool {
        self.components.is_some()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.k_max {
            return Err(Error::usage(format!(
                "k = {k} outside table range 1..={}",
                self.k_max
            )));
        }
        Ok(())
    }

    fn components_table(&self) -> Result<&Vec<Vec<Vec<ExactCount>>>> {
        self.components
            .as_ref()
            .ok_or_else(|| Error::usage("table was built without component counts"))
    }

    /// `g'(e, k)`; zero for edge counts outside `0..=C(k,2)`.
    pub fn gprime(&self, e: usize, k: usize) -> Result<ExactCount> {
        self.check_k(k)?;
        Ok(self.connected[k].get(e).cloned().unwrap_or_default())
    }

    /// `g(c, e, k)`; zero outside the populated ranges.
    pub fn g(&self, c: usize, e: usize, k: usize) -> Result<ExactCount> {
        self.check_k(k)?;
        let table = self.components_table()?;
        Ok(table[k]
            .get(c)
            .and_then(|row| row.get(e))
            .cloned()
            .unwrap_or_default())
    }

    /// `sum_e (-1)^e g'(e, k)` straight from the table.
    pub fn alt_sum_connected(&self, k: usize) -> Result<ExactInt> {
        self.check_k(k)?;
        Ok(alternating(&self.connected[k]))
    }

    /// `sum_e sum_{c=1..k} (-1)^e n^c g(c, e, k)` straight from the table.
    pub fn alt_sum_all(&self, k: usize, n: &ExactInt) -> Result<ExactInt> {
        self.check_k(k)?;
        if n < &ExactInt::one() {
            return Err(Error::domain(format!("alt_sum_all needs n >= 1, got {n}")));
        }
        let table = self.components_table()?;
        let mut total = ExactInt::zero();
        let mut n_pow = ExactInt::one();
        for row in table[k].iter().skip(1) {
            n_pow *= n;
            total += &n_pow * alternating(row);
        }
        Ok(total)
    }

    /// `g'(e, k)` rows as `(e, k, count)` in increasing `k`, then `e`.
    pub fn connected_rows(&self) -> impl Iterator<Item = (usize, usize, &ExactCount)> {
        self.connected
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(e, v)| (e, k, v)))
    }

    /// `g(c, e, k)` rows as `(c, e, k, count)` in increasing `k`, then `c`, then `e`.
    pub fn component_rows(&self) -> Result<Vec<(usize, usize, usize, &ExactCount)>> {
        let table = self.components_table()?;
        let mut rows = Vec::new();
        for (k, by_c) in table.iter().enumerate().skip(1) {
            for (c, by_e) in by_c.iter().enumerate().skip(1) {
                for (e, v) in by_e.iter().enumerate() {
                    rows.push((c, e, k, v));
                }
            }
        }
        Ok(rows)
    }
}

fn alternating(row: &[ExactCount]) -> ExactInt {
    row.iter()
        .enumerate()
        .fold(ExactInt::zero(), |acc, (e, v)| {
            if e % 2 == 0 {
                acc + signed(v)
            } else {
                acc - signed(v)
            }
        })
}

fn build_connected(k_max: usize) -> Vec<Vec<ExactCount>> {
    // all[m][e] = C(C(m,2), e): every graph on m labeled vertices with e edges.
    let all: Vec<Vec<ExactCount>> = (0..=k_max)
        .map(|m| {
            let slots = edge_slots(m);
            (0..=slots).map(|e| binomial_usize(slots, e)).collect()
        })
        .collect();

    let mut connected: Vec<Vec<ExactCount>> = vec![Vec::new(); k_max + 1];
    for k in 1..=k_max {
        let mut row = all[k].clone();
        for j in 1..k {
            let ways = binomial_usize(k - 1, j - 1);
            for (e1, conn) in connected[j].iter().enumerate() {
                if conn.is_zero() {
                    continue;
                }
                let weight = &ways * conn;
                for (e2, rest) in all[k - j].iter().enumerate() {
                    row[e1 + e2] -= &weight * rest;
                }
            }
        }
        connected[k] = row;
    }
    connected
}

fn build_components(k_max: usize, connected: &[Vec<ExactCount>]) -> Vec<Vec<Vec<ExactCount>>> {
    let mut table: Vec<Vec<Vec<ExactCount>>> = Vec::with_capacity(k_max + 1);
    // the empty vertex set has exactly one graph, with zero components
    table.push(vec![vec![ExactCount::one()]]);
    for k in 1..=k_max {
        let slots = edge_slots(k);
        let mut by_c = vec![vec![ExactCount::zero(); slots + 1]; k + 1];
        for j in 1..=k {
            let ways = binomial_usize(k - 1, j - 1);
            let rest = &table[k - j];
            for (c_rest, rest_by_e) in rest.iter().enumerate() {
                for (e1, conn) in connected[j].iter().enumerate() {
                    if conn.is_zero() {
                        continue;
                    }
                    let weight = &ways * conn;
                    for (e2, r) in rest_by_e.iter().enumerate() {
                        if !r.is_zero() {
                            by_c[c_rest + 1][e1 + e2] += &weight * r;
                        }
                    }
                }
            }
        }
        table.push(by_c);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;

    fn count(v: u64) -> ExactCount {
        ExactCount::from(v)
    }

    #[test]
    fn connected_examples() {
        let t = connected_counts(5).unwrap();
        assert_eq!(t.gprime(2, 3).unwrap(), count(3));
        assert_eq!(t.gprime(3, 3).unwrap(), count(1));
        assert_eq!(t.gprime(0, 1).unwrap(), count(1));
        assert_eq!(t.gprime(1, 3).unwrap(), count(0));
        assert_eq!(t.gprime(99, 3).unwrap(), count(0));
        assert!(!t.has_components());
        assert!(t.g(1, 0, 1).is_err());
    }

    #[test]
    fn component_examples() {
        let t = component_counts(5).unwrap();
        assert_eq!(t.g(2, 1, 3).unwrap(), count(3));
        assert_eq!(t.g(3, 0, 3).unwrap(), count(1));
        for e in 0..=6 {
            assert_eq!(t.g(1, e, 4).unwrap(), t.gprime(e, 4).unwrap());
        }
    }

    #[test]
    fn table_invariants() {
        let t = component_counts(9).unwrap();
        for k in 1..=9 {
            let slots = edge_slots(k);
            let mut total = ExactCount::zero();
            for c in 1..=k {
                for e in 0..=slots {
                    total += t.g(c, e, k).unwrap();
                }
            }
            assert_eq!(total, ExactCount::one() << slots, "k = {k}");
            for e in 0..k.saturating_sub(1) {
                assert!(t.gprime(e, k).unwrap().is_zero());
            }
            for e in 0..=slots {
                assert_eq!(t.g(1, e, k).unwrap(), t.gprime(e, k).unwrap());
            }
        }
    }

    #[test]
    fn connected_totals_sequence() {
        // OEIS A001187
        let expected = [1u64, 1, 4, 38, 728, 26704, 1866256, 251548592];
        let t = connected_counts(8).unwrap();
        for (i, want) in expected.iter().enumerate() {
            let k = i + 1;
            let total: ExactCount = (0..=edge_slots(k)).map(|e| t.gprime(e, k).unwrap()).sum();
            assert_eq!(total, count(*want), "k = {k}");
        }
    }

    #[test]
    fn trees_are_cayley() {
        let t = connected_counts(12).unwrap();
        for k in 2..=12usize {
            assert_eq!(
                t.gprime(k - 1, k).unwrap(),
                ExactCount::from(k).pow(k as u32 - 2)
            );
        }
    }

    #[test]
    fn alt_sum_examples() {
        let t = component_counts(6).unwrap();
        assert_eq!(t.alt_sum_connected(3).unwrap(), ExactInt::from(2));
        assert_eq!(t.alt_sum_connected(1).unwrap(), ExactInt::from(1));
        assert_eq!(t.alt_sum_connected(4).unwrap(), ExactInt::from(-6));
        assert_eq!(
            t.alt_sum_all(2, &ExactInt::from(5)).unwrap(),
            ExactInt::from(20)
        );
        assert_eq!(
            t.alt_sum_all(1, &ExactInt::from(7)).unwrap(),
            ExactInt::from(7)
        );
        assert_eq!(
            t.alt_sum_all(3, &ExactInt::from(3)).unwrap(),
            ExactInt::from(6)
        );
        assert!(matches!(t.alt_sum_connected(7), Err(Error::Usage(_))));
        assert!(matches!(t.alt_sum_connected(0), Err(Error::Usage(_))));
        assert!(t.alt_sum_all(2, &ExactInt::from(0)).is_err());
    }

    #[test]
    fn alt_sums_match_closed_forms() {
        let t = component_counts(12).unwrap();
        for k in 1..=12usize {
            let fact = signed(&factorial(k - 1));
            let want = if k % 2 == 1 { fact } else { -fact };
            assert_eq!(t.alt_sum_connected(k).unwrap(), want, "k = {k}");
        }
        for k in 1..=10usize {
            for n in 1..=12u32 {
                let n = ExactInt::from(n);
                let want = signed(&factorial(k))
                    * signed(&crate::arith::binomial(&n, &ExactInt::from(k)).unwrap());
                assert_eq!(t.alt_sum_all(k, &n).unwrap(), want);
            }
        }
    }

    #[test]
    fn size_limits() {
        assert!(matches!(connected_counts(0), Err(Error::Usage(_))));
        assert!(matches!(connected_counts(31), Err(Error::Usage(_))));
        assert!(GraphCountTable::build(31, false, 40).is_ok());
    }

    #[test]
    fn cap_size_connected_table_builds() {
        let t = connected_counts(DEFAULT_K_MAX_CAP).unwrap();
        let k = DEFAULT_K_MAX_CAP;
        assert_eq!(t.gprime(edge_slots(k), k).unwrap(), count(1));
        assert_eq!(
            t.gprime(k - 1, k).unwrap(),
            ExactCount::from(k).pow(k as u32 - 2)
        );
    }
}
