//! The class inventory: one record per invariant landscape class with its
//! orbit data, properties and hill-climber performance.

mod io;
mod stats;

pub use io::{read_atlas, write_atlas, write_table, FORMAT_TAG, TABLE_FORMAT_TAG};
pub use stats::{percentage, stats, CdfPoint, CrossTabRow, Summary, Tally};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::canon::{classify_all, Canonicalizer, ClassInfo};
use crate::climb::{analyze_best, analyze_first, ClimbReport};
use crate::error::{domain, Error, Result};
use crate::hypercube::{Cap, Dimension};
use crate::props::{analyze, PropertyReport};
use crate::rankspace::{partition_of, rank_of, Partition, RankVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub n: Dimension,
    /// Index in lexicographic order of canonical forms.
    pub class_id: usize,
    pub canonical_ranks: RankVector,
    pub partition: Partition,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub properties: PropertyReport,
    pub perf_best: ClimbReport,
    pub perf_first: ClimbReport,
}

impl ClassRecord {
    fn from_class(class_id: usize, class: ClassInfo) -> Self {
        let rv = class.canonical.into_rank_vector();
        ClassRecord {
            n: rv.dimension(),
            class_id,
            partition: partition_of(&rv),
            orbit_size: class.orbit.orbit_size,
            stabilizer_order: class.orbit.stabilizer_order,
            properties: analyze(&rv),
            perf_best: analyze_best(&rv),
            perf_first: analyze_first(&rv),
            canonical_ranks: rv,
        }
    }

    /// Recomputes every derived field from the canonical ranks and reports
    /// whether the stored values agree.
    pub fn is_consistent(&self, canon: &Canonicalizer) -> bool {
        let rv = &self.canonical_ranks;
        let Ok((form, orbit)) = canon.canonicalize(rv) else {
            return false;
        };
        form.rank_vector() == rv
            && orbit.orbit_size == self.orbit_size
            && orbit.stabilizer_order == self.stabilizer_order
            && partition_of(rv) == self.partition
            && analyze(rv) == self.properties
            && analyze_best(rv) == self.perf_best
            && analyze_first(rv) == self.perf_first
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub format: String,
    pub n: Dimension,
    pub classes: usize,
    pub total_rankings: BigUint,
    /// SHA-256 over the serialized record lines.
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atlas {
    pub records: Vec<ClassRecord>,
    pub provenance: Provenance,
}

impl Atlas {
    pub fn dimension(&self) -> Dimension {
        self.provenance.n
    }

    pub fn get(&self, class_id: usize) -> Result<&ClassRecord> {
        self.records
            .get(class_id)
            .ok_or_else(|| Error::NotFound(format!("class {class_id} (atlas has {} classes)", self.records.len())))
    }

    /// Finds the class of a rank vector by canonical form.
    pub fn lookup_ranks(&self, rv: &RankVector) -> Result<&ClassRecord> {
        let n = self.dimension();
        if rv.dimension() != n {
            return Err(Error::NotFound(format!("dimension {} (atlas holds n = {n})", rv.dimension())));
        }
        let canon = Canonicalizer::new(n, Cap(n.get()))?;
        let (form, _) = canon.canonicalize(rv)?;
        let key = form.rank_vector();
        self.records
            .binary_search_by(|r| r.canonical_ranks.cmp(key))
            .map(|i| &self.records[i])
            .map_err(|_| Error::NotFound(format!("canonical form {key} is not in the atlas")))
    }

    /// Ranks a fitness table and finds its class.
    pub fn lookup(&self, fitness: &[f64]) -> Result<&ClassRecord> {
        let n = self.dimension();
        if fitness.len() != n.nodes() {
            return Err(Error::NotFound(format!(
                "no classes for {} values (atlas holds n = {n}, {} values)",
                fitness.len(),
                n.nodes()
            )));
        }
        self.lookup_ranks(&rank_of(fitness, n)?)
    }

    /// Checks every record against a fresh recomputation.
    pub fn audit(&self) -> Result<()> {
        let n = self.dimension();
        let canon = Canonicalizer::new(n, Cap(n.get()))?;
        match self.records.par_iter().find_any(|r| !r.is_consistent(&canon)) {
            Some(r) => Err(Error::Format(format!("record {} does not match its canonical ranks", r.class_id))),
            None => Ok(()),
        }
    }
}

/// Classifies every rank landscape of dimension `n` and analyses each class.
pub fn build(n: Dimension, cap: Cap) -> Result<Atlas> {
    let classes = classify_all(n, cap)?;
    let records: Vec<ClassRecord> = classes
        .into_par_iter()
        .enumerate()
        .map(|(id, class)| ClassRecord::from_class(id, class))
        .collect();
    assemble(n, records)
}

pub(crate) fn assemble(n: Dimension, records: Vec<ClassRecord>) -> Result<Atlas> {
    if records.is_empty() {
        return domain("an atlas needs at least one class");
    }
    let total_rankings = records.iter().map(|r| BigUint::from(r.orbit_size)).sum();
    let digest = io::digest(&records)?;
    let provenance = Provenance { format: FORMAT_TAG.to_string(), n, classes: records.len(), total_rankings, digest };
    Ok(Atlas { records, provenance })
}
