//! Plain enumerators shared by the integration suites. Nothing here calls into
//! the library's counting code.

#![allow(dead_code)]

use std::collections::HashMap;

/// Calls `visit` with every vector in `[lo, hi)^k`, first index fastest.
pub fn for_each_vector(k: usize, lo: i64, hi: i64, mut visit: impl FnMut(&[i64])) {
    let mut v = vec![lo; k];
    if hi <= lo {
        return;
    }
    loop {
        visit(&v);
        let mut i = 0;
        while i < k {
            v[i] += 1;
            if v[i] < hi {
                break;
            }
            v[i] = lo;
            i += 1;
        }
        if i == k {
            return;
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// For fixed coefficients, the number of tuples in `Z_n^k` hitting each
/// residue `b`, keeping only tuples accepted by `keep`.
pub fn residue_histogram(coeffs: &[i64], n: i64, keep: impl Fn(&[i64]) -> bool) -> Vec<u64> {
    let mut hist = vec![0u64; n as usize];
    for_each_vector(coeffs.len(), 0, n, |x| {
        if keep(x) {
            let s: i64 = coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            hist[s.rem_euclid(n) as usize] += 1;
        }
    });
    hist
}

pub fn all_distinct(x: &[i64]) -> bool {
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| x[i] != x[j]))
}

pub fn all_units(n: i64) -> impl Fn(&[i64]) -> bool {
    move |x: &[i64]| x.iter().all(|&v| gcd(v, n) == 1)
}

/// Distinct-coordinate solution counts for every `b`, by exhaustive search.
pub fn distinct_histogram(coeffs: &[i64], n: i64) -> Vec<u64> {
    residue_histogram(coeffs, n, all_distinct)
}

/// `n (n-1) ... (n-k+1)`, clamped at zero.
pub fn arrangements(n: i64, k: usize) -> u64 {
    (0..k as i64).map(|i| (n - i).max(0) as u64).product()
}

/// `g(c, e, k)` by looking at all `2^C(k,2)` edge subsets and counting
/// components with a depth-first search.
pub fn enumerate_graphs(k: usize) -> HashMap<(usize, usize), u64> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
        .collect();
    let mut tally = HashMap::new();
    for mask in 0u64..1 << pairs.len() {
        let mut adj = vec![Vec::new(); k];
        let mut edges = 0;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u].push(v);
                adj[v].push(u);
                edges += 1;
            }
        }
        let mut seen = vec![false; k];
        let mut components = 0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        *tally.entry((components, edges)).or_insert(0) += 1;
    }
    tally
}

pub fn factorial(m: u64) -> u64 {
    (1..=m).product()
}

pub fn smallest_prime_factor(n: i64) -> i64 {
    (2..=n).find(|p| n % p == 0).unwrap_or(n)
}
