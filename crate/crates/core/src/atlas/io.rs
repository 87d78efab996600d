//! Line-delimited atlas persistence and flat CSV export.
//!
//! An atlas file is a JSON header line followed by one JSON record per line.
//! The header carries the format tag, dimension, class count, total number of
//! rankings and a SHA-256 digest of the record lines (each including its
//! trailing newline).

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{assemble, Atlas, ClassRecord};
use crate::climb::ClimbReport;
use crate::error::{Error, Result};
use crate::hypercube::Dimension;
use crate::props::PropertyReport;
use crate::rankspace::{partition_of, Partition, RankVector};
use crate::rational::to_decimal;

pub const FORMAT_TAG: &str = "rankland-atlas/1";
pub const TABLE_FORMAT_TAG: &str = "rankland-table/1";

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    n: Dimension,
    classes: usize,
    total_rankings: String,
    digest: String,
}

#[derive(Serialize, Deserialize)]
struct RecordLine {
    class_id: usize,
    ranks: Vec<u32>,
    letters: String,
    partition: Vec<u32>,
    orbit_size: u64,
    stabilizer_order: u64,
    properties: PropertyReport,
    best: ClimbReport,
    first: ClimbReport,
}

impl RecordLine {
    fn from_record(r: &ClassRecord) -> Self {
        RecordLine {
            class_id: r.class_id,
            ranks: r.canonical_ranks.ranks().to_vec(),
            letters: r.canonical_ranks.letters(),
            partition: r.partition.parts().to_vec(),
            orbit_size: r.orbit_size,
            stabilizer_order: r.stabilizer_order,
            properties: r.properties.clone(),
            best: r.perf_best.clone(),
            first: r.perf_first.clone(),
        }
    }

    fn into_record(self, n: Dimension) -> Result<ClassRecord> {
        let canonical_ranks = RankVector::new(n, self.ranks)?;
        let partition = Partition::new(self.partition)?;
        if partition != partition_of(&canonical_ranks) {
            return Err(Error::Format(format!("class {}: partition does not match ranks", self.class_id)));
        }
        Ok(ClassRecord {
            n,
            class_id: self.class_id,
            canonical_ranks,
            partition,
            orbit_size: self.orbit_size,
            stabilizer_order: self.stabilizer_order,
            properties: self.properties,
            perf_best: self.best,
            perf_first: self.first,
        })
    }
}

fn record_line(r: &ClassRecord) -> Result<String> {
    serde_json::to_string(&RecordLine::from_record(r)).map_err(|e| Error::Format(e.to_string()))
}

pub(crate) fn digest(records: &[ClassRecord]) -> Result<String> {
    let mut hasher = Sha256::new();
    for r in records {
        hasher.update(record_line(r)?.as_bytes());
        hasher.update(b"\n");
    }
    Ok(format!("sha256:{}", hex::encode(hasher.finalize())))
}

pub fn write_atlas<W: Write>(atlas: &Atlas, mut out: W) -> Result<()> {
    let p = &atlas.provenance;
    let header = Header {
        format: p.format.clone(),
        n: p.n,
        classes: p.classes,
        total_rankings: p.total_rankings.to_string(),
        digest: p.digest.clone(),
    };
    let header = serde_json::to_string(&header).map_err(|e| Error::Format(e.to_string()))?;
    writeln!(out, "{header}")?;
    for r in &atlas.records {
        writeln!(out, "{}", record_line(r)?)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_atlas<R: BufRead>(input: R) -> Result<Atlas> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Format("empty atlas file".into()))??;
    let header: Header =
        serde_json::from_str(&header).map_err(|e| Error::Format(format!("bad header: {e}")))?;
    if header.format != FORMAT_TAG {
        return Err(Error::Format(format!("unsupported format {:?}, expected {FORMAT_TAG:?}", header.format)));
    }
    let mut records = Vec::with_capacity(header.classes);
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let wire: RecordLine =
            serde_json::from_str(&line).map_err(|e| Error::Format(format!("record {i}: {e}")))?;
        if wire.class_id != i {
            return Err(Error::Format(format!("record {i} carries class id {}", wire.class_id)));
        }
        records.push(wire.into_record(header.n)?);
    }
    if records.len() != header.classes {
        return Err(Error::Format(format!("header announces {} classes, found {}", header.classes, records.len())));
    }
    if records.windows(2).any(|w| w[0].canonical_ranks >= w[1].canonical_ranks) {
        return Err(Error::Format("records are not sorted by canonical form".into()));
    }
    let atlas = assemble(header.n, records)?;
    if atlas.provenance.digest != header.digest {
        return Err(Error::Format(format!(
            "digest mismatch: header {} but records hash to {}",
            header.digest, atlas.provenance.digest
        )));
    }
    if atlas.provenance.total_rankings.to_string() != header.total_rankings {
        return Err(Error::Format("orbit sizes do not sum to the announced total".into()));
    }
    Ok(atlas)
}

/// Flat export, one row per class with decimal values only. The first line is
/// a `#` comment carrying the format tag.
pub fn write_table<W: Write>(atlas: &Atlas, mut out: W) -> Result<()> {
    writeln!(out, "# {TABLE_FORMAT_TAG} n={}", atlas.dimension())?;
    let mut w = csv::Writer::from_writer(out);
    let perf_cols = ["success_rate", "exp_steps_success", "exp_evals_success", "exp_steps_fail", "exp_evals_fail", "ert"];
    let mut header: Vec<String> = [
        "class_id", "ranks", "k", "partition", "orbit_size", "stabilizer_order", "global_optima",
        "strict_suboptima", "weak_suboptima", "neutral_edges", "neutral_degree", "neutral_networks",
        "optimal_plateaus", "suboptimal_plateaus", "deceptive", "neutral", "plateau",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for prefix in ["best", "first"] {
        header.extend(perf_cols.iter().map(|c| format!("{prefix}_{c}")));
    }
    w.write_record(&header).map_err(csv_error)?;

    let dec = |r: &crate::rational::Rational| to_decimal(r, 6);
    let opt = |r: &Option<crate::rational::Rational>| r.as_ref().map(dec).unwrap_or_default();
    for r in &atlas.records {
        let p = &r.properties;
        let parts: Vec<String> = r.partition.parts().iter().map(u32::to_string).collect();
        let mut row = vec![
            r.class_id.to_string(),
            r.canonical_ranks.letters(),
            p.k_ranks.to_string(),
            parts.join("-"),
            r.orbit_size.to_string(),
            r.stabilizer_order.to_string(),
            p.global_optima.to_string(),
            p.strict_suboptima.to_string(),
            p.weak_suboptima.to_string(),
            p.neutral_edges.to_string(),
            p.neutral_node_count.to_string(),
            p.neutral_networks.to_string(),
            p.optimal_plateaus.to_string(),
            p.suboptimal_plateaus.to_string(),
            format!("{:?}", p.deceptive).to_lowercase(),
            p.neutral.to_string(),
            p.plateau.to_string(),
        ];
        for perf in [&r.perf_best, &r.perf_first] {
            row.extend([
                dec(&perf.success_rate),
                dec(&perf.exp_steps_success),
                dec(&perf.exp_evals_success),
                opt(&perf.exp_steps_fail),
                opt(&perf.exp_evals_fail),
                dec(&perf.multistart_ert),
            ]);
        }
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Format(e.to_string())
}
