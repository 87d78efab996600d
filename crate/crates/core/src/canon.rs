//! Canonical forms of rank vectors under the hypercube automorphism group,
//! and aggregation of the full enumeration into invariant landscape classes.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::hypercube::{all_automorphisms, Automorphism, Cap, Dimension};
use crate::rankspace::{all_partitions, enumerate_rank_vectors, factorial, Partition, RankVector};

/// Lexicographically smallest member of an orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(RankVector);

impl CanonicalForm {
    pub fn rank_vector(&self) -> &RankVector {
        &self.0
    }

    pub fn into_rank_vector(self) -> RankVector {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbitInfo {
    /// Distinct rank vectors in the class.
    pub orbit_size: u64,
    /// Automorphisms fixing the rank vector.
    pub stabilizer_order: u64,
}

/// `(f ∘ τ)`: the output at node `x` is `rv[a(x)]`.
pub fn transform(a: &Automorphism, rv: &RankVector) -> Result<RankVector> {
    if a.dimension() != rv.dimension() {
        return domain(format!(
            "automorphism of n = {} applied to rank vector of n = {}",
            a.dimension(),
            rv.dimension()
        ));
    }
    let ranks = (0..rv.ranks().len()).map(|x| rv.rank(a.apply_index(x))).collect();
    Ok(RankVector::from_trusted(rv.dimension(), ranks))
}

/// The automorphism group of one dimension, materialised as node maps.
pub struct Canonicalizer {
    n: Dimension,
    tables: Vec<Vec<usize>>,
}

impl Canonicalizer {
    pub fn new(n: Dimension, cap: Cap) -> Result<Self> {
        let tables = all_automorphisms(n, cap)?.iter().map(Automorphism::action_table).collect();
        Ok(Canonicalizer { n, tables })
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn group_order(&self) -> u64 {
        self.tables.len() as u64
    }

    pub fn canonicalize(&self, rv: &RankVector) -> Result<(CanonicalForm, OrbitInfo)> {
        if rv.dimension() != self.n {
            return domain(format!("rank vector of n = {} given to canonicalizer for n = {}", rv.dimension(), self.n));
        }
        Ok(self.canonicalize_ranks(rv.ranks()))
    }

    fn canonicalize_ranks(&self, ranks: &[u32]) -> (CanonicalForm, OrbitInfo) {
        let mut best = ranks.to_vec();
        let mut stabilizer = 0u64;
        for table in &self.tables {
            let image = |x: usize| ranks[table[x]];
            if (0..ranks.len()).all(|x| image(x) == ranks[x]) {
                stabilizer += 1;
            }
            let order = (0..ranks.len())
                .map(|x| image(x).cmp(&best[x]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal);
            if order == Ordering::Less {
                best.iter_mut().enumerate().for_each(|(x, b)| *b = image(x));
            }
        }
        let group = self.tables.len() as u64;
        let info = OrbitInfo { orbit_size: group / stabilizer, stabilizer_order: stabilizer };
        (CanonicalForm(RankVector::from_trusted(self.n, best)), info)
    }
}

/// Canonical form and orbit data of `rv`, building the group on the fly.
pub fn canonicalize(rv: &RankVector, cap: Cap) -> Result<(CanonicalForm, OrbitInfo)> {
    Canonicalizer::new(rv.dimension(), cap)?.canonicalize(rv)
}

/// One invariant landscape class found by [`classify_all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub canonical: CanonicalForm,
    pub orbit: OrbitInfo,
    /// Enumerated rank vectors that mapped to this class; equals the orbit
    /// size when the enumeration is complete.
    pub members: u64,
}

type ClassTable = HashMap<Vec<u32>, (OrbitInfo, u64)>;

fn classify_partition(canon: &Canonicalizer, lambda: &Partition, cap: Cap) -> Result<ClassTable> {
    let mut table = ClassTable::new();
    for rv in enumerate_rank_vectors(lambda, canon.n, cap)? {
        let (form, info) = canon.canonicalize_ranks(rv.ranks());
        table.entry(form.0.ranks().to_vec()).or_insert((info, 0)).1 += 1;
    }
    Ok(table)
}

fn merge(mut a: ClassTable, b: ClassTable) -> ClassTable {
    for (key, (info, count)) in b {
        let entry = a.entry(key).or_insert((info, 0));
        debug_assert_eq!(entry.0, info);
        entry.1 += count;
    }
    a
}

fn finish(n: Dimension, table: ClassTable) -> Vec<ClassInfo> {
    let mut classes: Vec<ClassInfo> = table
        .into_iter()
        .map(|(ranks, (orbit, members))| ClassInfo {
            canonical: CanonicalForm(RankVector::from_trusted(n, ranks)),
            orbit,
            members,
        })
        .collect();
    classes.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    classes
}

/// Enumerates every rank vector of dimension `n` and groups them into
/// classes sorted by canonical form; the index in this order is the class ID.
/// Partitions are processed in parallel and merged by canonical key.
pub fn classify_all(n: Dimension, cap: Cap) -> Result<Vec<ClassInfo>> {
    let canon = Canonicalizer::new(n, cap)?;
    let lambdas: Vec<Partition> = all_partitions(n).collect();
    let table = lambdas
        .par_iter()
        .map(|lambda| classify_partition(&canon, lambda, cap))
        .try_reduce(ClassTable::new, |a, b| Ok(merge(a, b)))?;
    Ok(finish(n, table))
}

/// Single-threaded [`classify_all`]; output is identical.
pub fn classify_all_serial(n: Dimension, cap: Cap) -> Result<Vec<ClassInfo>> {
    let canon = Canonicalizer::new(n, cap)?;
    let mut table = ClassTable::new();
    for lambda in all_partitions(n) {
        table = merge(table, classify_partition(&canon, &lambda, cap)?);
    }
    Ok(finish(n, table))
}

/// Injective classes, `(2^n - 1)! / n!`; every injective ranking has a
/// trivial stabilizer so the count is exact.
pub fn count_injective_classes(n: Dimension) -> BigUint {
    factorial(n.nodes() as u64 - 1) / factorial(n.get() as u64)
}
