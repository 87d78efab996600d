//! Aggregate statistics over an atlas.

use std::collections::BTreeMap;

use super::Atlas;
use crate::climb::{compare, ClimbReport, Verdict};
use crate::hypercube::Dimension;
use crate::rational::{ratio, to_decimal, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossTabRow {
    pub deceptive: bool,
    pub neutral: bool,
    pub plateau: bool,
    pub count: u64,
    /// Two decimals, computed from the exact count.
    pub percentage: String,
}

/// Best- versus first-improvement outcomes across classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub best_better: u64,
    pub first_better: u64,
    pub equal: u64,
}

impl Tally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Better => self.best_better += 1,
            Verdict::Worse => self.first_better += 1,
            Verdict::Equal => self.equal += 1,
        }
    }
}

/// Number of classes whose metric is at most `threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdfPoint {
    pub threshold: Rational,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub n: Dimension,
    pub classes: u64,
    pub crosstab: Vec<CrossTabRow>,
    /// Named histograms, value → number of classes.
    pub histograms: Vec<(&'static str, BTreeMap<u64, u64>)>,
    pub success: Tally,
    pub ert: Tally,
    pub injective: u64,
    pub multiple_global_optima: u64,
    pub deceptive: u64,
    pub neutral: u64,
    pub plateau: u64,
    pub cdf_success_best: Vec<CdfPoint>,
    pub cdf_success_first: Vec<CdfPoint>,
    pub cdf_ert_best: Vec<CdfPoint>,
    pub cdf_ert_first: Vec<CdfPoint>,
}

pub fn percentage(count: u64, total: u64) -> String {
    to_decimal(&(ratio(count as i64, total as i64) * ratio(100, 1)), 2)
}

fn cdf<'a>(reports: impl Iterator<Item = &'a ClimbReport>, metric: fn(&ClimbReport) -> &Rational) -> Vec<CdfPoint> {
    let mut counts: BTreeMap<Rational, u64> = BTreeMap::new();
    for r in reports {
        *counts.entry(metric(r).clone()).or_default() += 1;
    }
    let mut running = 0;
    counts
        .into_iter()
        .map(|(threshold, c)| {
            running += c;
            CdfPoint { threshold, count: running }
        })
        .collect()
}

pub fn stats(atlas: &Atlas) -> Summary {
    let records = &atlas.records;
    let classes = records.len() as u64;
    let n = atlas.dimension();

    let order = [
        (false, false, false),
        (true, false, false),
        (false, true, false),
        (true, true, false),
        (false, true, true),
        (true, true, true),
        (true, false, true),
        (false, false, true),
    ];
    let crosstab = order
        .iter()
        .enumerate()
        .filter_map(|(i, &(deceptive, neutral, plateau))| {
            let count = records
                .iter()
                .filter(|r| {
                    let p = &r.properties;
                    (p.deceptive.is_deceptive(), p.neutral, p.plateau) == (deceptive, neutral, plateau)
                })
                .count() as u64;
            // The last two combinations are impossible (plateaus are neutral)
            // and only listed if they ever occur.
            (i < 6 || count > 0).then(|| CrossTabRow {
                deceptive,
                neutral,
                plateau,
                count,
                percentage: percentage(count, classes),
            })
        })
        .collect();

    let histogram = |f: &dyn Fn(&super::ClassRecord) -> u64| {
        let mut h = BTreeMap::new();
        for r in records {
            *h.entry(f(r)).or_default() += 1;
        }
        h
    };
    let histograms = vec![
        ("ranks", histogram(&|r| r.properties.k_ranks as u64)),
        ("symmetries", histogram(&|r| r.orbit_size)),
        ("global_optima", histogram(&|r| r.properties.global_optima as u64)),
        ("suboptima", histogram(&|r| r.properties.suboptima() as u64)),
        ("neutral_edges", histogram(&|r| r.properties.neutral_edges as u64)),
        ("plateaus", histogram(&|r| r.properties.plateaus() as u64)),
        ("suboptimal_plateaus", histogram(&|r| r.properties.suboptimal_plateaus as u64)),
    ];

    let mut success = Tally::default();
    let mut ert = Tally::default();
    for r in records {
        let c = compare(&r.perf_best, &r.perf_first);
        success.add(c.success);
        ert.add(c.ert);
    }

    let count = |f: &dyn Fn(&super::ClassRecord) -> bool| records.iter().filter(|r| f(r)).count() as u64;
    let size = n.nodes() as u32;

    Summary {
        n,
        classes,
        crosstab,
        histograms,
        success,
        ert,
        injective: count(&|r| r.properties.k_ranks == size),
        multiple_global_optima: count(&|r| r.properties.global_optima >= 2),
        deceptive: count(&|r| r.properties.deceptive.is_deceptive()),
        neutral: count(&|r| r.properties.neutral),
        plateau: count(&|r| r.properties.plateau),
        cdf_success_best: cdf(records.iter().map(|r| &r.perf_best), |p| &p.success_rate),
        cdf_success_first: cdf(records.iter().map(|r| &r.perf_first), |p| &p.success_rate),
        cdf_ert_best: cdf(records.iter().map(|r| &r.perf_best), |p| &p.multistart_ert),
        cdf_ert_first: cdf(records.iter().map(|r| &r.perf_first), |p| &p.multistart_ert),
    }
}
