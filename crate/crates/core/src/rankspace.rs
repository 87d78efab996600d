//! Rank vectors, partitions of the search space into rank levels, and exact
//! counting of rank-invariant function classes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::hypercube::{next_permutation, Cap, Dimension};

/// Rank assignment over all `2^n` nodes; rank 1 is best (minimisation).
///
/// Ranks are surjective onto `1..=k`. Letters `A, B, …` are used only when
/// rendering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankVector {
    n: Dimension,
    ranks: Vec<u32>,
}

impl RankVector {
    pub fn new(n: Dimension, ranks: Vec<u32>) -> Result<Self> {
        if ranks.len() != n.nodes() {
            return domain(format!("rank vector has {} entries, expected {}", ranks.len(), n.nodes()));
        }
        let k = ranks.iter().copied().max().unwrap_or(0);
        let mut present = vec![false; k as usize];
        for &r in &ranks {
            if r == 0 {
                return domain("ranks start at 1");
            }
            present[r as usize - 1] = true;
        }
        if let Some(missing) = present.iter().position(|p| !p) {
            return domain(format!("rank {} is unused; ranks must cover 1..={k}", missing + 1));
        }
        Ok(RankVector { n, ranks })
    }

    /// Builds from letters, e.g. `"CADB"`; the length fixes the dimension.
    pub fn from_letters(letters: &str) -> Result<Self> {
        let len = letters.chars().count();
        if !len.is_power_of_two() || len < 2 {
            return domain(format!("{len} letters is not a hypercube size"));
        }
        let n = Dimension::new(len.trailing_zeros())?;
        let ranks = letters
            .chars()
            .map(|c| match c {
                'A'..='Z' => Ok(c as u32 - 'A' as u32 + 1),
                _ => domain(format!("invalid rank letter {c:?}")),
            })
            .collect::<Result<_>>()?;
        RankVector::new(n, ranks)
    }

    pub(crate) fn from_trusted(n: Dimension, ranks: Vec<u32>) -> Self {
        debug_assert!(RankVector::new(n, ranks.clone()).is_ok());
        RankVector { n, ranks }
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// Number of distinct ranks.
    pub fn k(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn rank(&self, node: usize) -> u32 {
        self.ranks[node]
    }

    /// Letter rendering; ranks beyond 26 fall back to `[r]`.
    pub fn letters(&self) -> String {
        self.ranks.iter().map(|&r| rank_letter(r)).collect()
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters())
    }
}

pub fn rank_letter(rank: u32) -> String {
    match rank {
        1..=26 => char::from(b'A' + (rank - 1) as u8).to_string(),
        _ => format!("[{rank}]"),
    }
}

/// Ranks a fitness table under minimisation: entry `i` is one plus the number
/// of distinct values strictly smaller than `fitness[i]`. Ties are exact
/// floating-point equality.
pub fn rank_of(fitness: &[f64], n: Dimension) -> Result<RankVector> {
    if fitness.len() != n.nodes() {
        return domain(format!("expected {} fitness values for n = {n}, got {}", n.nodes(), fitness.len()));
    }
    if let Some(bad) = fitness.iter().find(|v| !v.is_finite()) {
        return domain(format!("fitness value {bad} is not finite"));
    }
    let mut levels = fitness.to_vec();
    levels.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    levels.dedup();
    let ranks = fitness
        .iter()
        .map(|v| {
            let below = levels.partition_point(|l| l.partial_cmp(v) == Some(Ordering::Less));
            below as u32 + 1
        })
        .collect();
    Ok(RankVector::from_trusted(n, ranks))
}

/// Sizes of the rank levels, `(λ_1, …, λ_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return domain(format!("partition parts must be positive, got {parts:?}"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn partition_of(rv: &RankVector) -> Partition {
    let mut counts = vec![0u32; rv.k() as usize];
    for &r in &rv.ranks {
        counts[r as usize - 1] += 1;
    }
    Partition(counts)
}

/// Enumerates the partitions of `2^n` into `k` positive parts.
///
/// Each partition is `(1,…,1) + λ'` where the `u = 2^n - k` surplus units are
/// described by a non-decreasing vector `v ∈ {1..k}^u` giving the part each
/// unit lands in. `v` is advanced by incrementing its last component, or,
/// when that is saturated, by raising the last non-saturated component and
/// resetting everything after it to the same value.
pub struct Partitions {
    k: u32,
    v: Option<Vec<u32>>,
}

impl Partitions {
    fn current(&self) -> Option<Partition> {
        let v = self.v.as_ref()?;
        let mut parts = vec![1u32; self.k as usize];
        for &j in v {
            parts[j as usize - 1] += 1;
        }
        Some(Partition(parts))
    }

    fn advance(&mut self) {
        let k = self.k;
        let Some(v) = self.v.as_mut() else { return };
        match v.iter().rposition(|&vj| vj < k) {
            Some(j) => {
                let raised = v[j] + 1;
                v[j..].iter_mut().for_each(|vi| *vi = raised);
            }
            None => self.v = None,
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let out = self.current()?;
        self.advance();
        Some(out)
    }
}

pub fn partitions(n: Dimension, k: u32) -> Result<Partitions> {
    let size = n.nodes() as u64;
    if k == 0 || k as u64 > size {
        return domain(format!("k must be in 1..={size}, got {k}"));
    }
    let surplus = (size - k as u64) as usize;
    Ok(Partitions { k, v: Some(vec![1; surplus]) })
}

pub fn enumerate_partitions(n: Dimension, k: u32) -> Result<Vec<Partition>> {
    Ok(partitions(n, k)?.collect())
}

/// Every partition of `2^n`, ordered by `k` then by the enumeration order.
pub fn all_partitions(n: Dimension) -> impl Iterator<Item = Partition> {
    (1..=n.nodes() as u32).flat_map(move |k| partitions(n, k).expect("k in range"))
}

pub fn factorial(m: u64) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(m: u64, j: u64) -> BigUint {
    if j > m {
        return BigUint::zero();
    }
    let j = j.min(m - j);
    (0..j).fold(BigUint::one(), |acc, i| acc * (m - i) / (i + 1))
}

/// `F_λ = 2^n! / ∏ λ_j!`, the number of rank vectors with level sizes `λ`.
pub fn count_rank_functions(lambda: &Partition, n: Dimension) -> Result<BigUint> {
    let size = n.nodes() as u64;
    if lambda.total() != size {
        return domain(format!("partition {lambda} does not sum to {size}"));
    }
    let denom = lambda.0.iter().fold(BigUint::one(), |acc, &p| acc * factorial(p as u64));
    Ok(factorial(size) / denom)
}

/// Number of partitions of `2^n` into `k` positive parts, `C(2^n - 1, k - 1)`.
pub fn partition_count(n: Dimension, k: u32) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    binomial(n.nodes() as u64 - 1, k as u64 - 1)
}

/// Exact counts of rank vectors by number of ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingCounts {
    /// `per_k[k - 1]` = number of rank vectors with exactly `k` ranks.
    pub per_k: Vec<BigUint>,
    pub total: BigUint,
}

/// Counts rank vectors for any `n` using surjection numbers:
/// the vectors with `k` ranks are the surjections of `2^n` nodes onto `k`
/// levels, `Σ_j (-1)^j C(k, j) (k - j)^m`.
pub fn count_rankings(n: Dimension) -> RankingCounts {
    let m = n.nodes() as u64;
    let per_k: Vec<BigUint> = (1..=m).map(|k| surjections(m, k)).collect();
    let total = per_k.iter().sum();
    RankingCounts { per_k, total }
}

fn surjections(m: u64, k: u64) -> BigUint {
    let mut positive = BigUint::zero();
    let mut negative = BigUint::zero();
    for j in 0..=k {
        let term = binomial(k, j) * BigUint::from(k - j).pow(m as u32);
        if j % 2 == 0 {
            positive += term;
        } else {
            negative += term;
        }
    }
    positive - negative
}

/// Streams the rank vectors with level sizes `λ` in lexicographic order.
pub struct RankVectors {
    n: Dimension,
    current: Option<Vec<u32>>,
}

impl Iterator for RankVectors {
    type Item = RankVector;

    fn next(&mut self) -> Option<RankVector> {
        let ranks = self.current.as_mut()?;
        let out = RankVector::from_trusted(self.n, ranks.clone());
        if !next_permutation(ranks) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_rank_vectors(lambda: &Partition, n: Dimension, cap: Cap) -> Result<RankVectors> {
    cap.check(n)?;
    if lambda.total() != n.nodes() as u64 {
        return domain(format!("partition {lambda} does not sum to {}", n.nodes()));
    }
    let first: Vec<u32> = lambda
        .0
        .iter()
        .enumerate()
        .flat_map(|(i, &count)| std::iter::repeat_n(i as u32 + 1, count as usize))
        .collect();
    Ok(RankVectors { n, current: Some(first) })
}
