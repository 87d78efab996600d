//! Exact performance of best- and first-improvement hill climbers.
//!
//! Both climbers start from a uniformly random node, only take strictly
//! improving moves, and stop when no neighbor is strictly better. Because
//! every move lowers the rank, the move graph is acyclic and the absorption
//! probabilities and expected costs follow from a single pass over the nodes
//! in increasing rank order.
//!
//! Evaluation accounting:
//! * both climbers pay one evaluation for the starting node;
//! * best improvement scans all `n` neighbors at every visited node,
//!   including the final one;
//! * first improvement scans neighbors in a uniformly random order and stops
//!   at the first improving one. With `m` improving neighbors among `n` the
//!   expected scan length is `(n + 1) / (m + 1)`; a terminal node costs `n`.
//!   The identity of the first improving neighbor is uniform over the `m`
//!   candidates and independent of the scan length.
//!
//! Multi-start runtime restarts from a fresh uniform node after every failure:
//! `ERT = E_s + (1 - p) / p * E_f`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::hypercube::neighbor_indices;
use crate::rankspace::RankVector;
use crate::rational::{integer, ratio, serde_exact, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Best,
    First,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClimbReport {
    #[serde(with = "serde_exact")]
    pub success_rate: Rational,
    #[serde(with = "serde_exact")]
    pub exp_steps_success: Rational,
    #[serde(with = "serde_exact")]
    pub exp_evals_success: Rational,
    /// Absent when every start succeeds.
    #[serde(with = "serde_exact::option")]
    pub exp_steps_fail: Option<Rational>,
    #[serde(with = "serde_exact::option")]
    pub exp_evals_fail: Option<Rational>,
    #[serde(with = "serde_exact")]
    pub multistart_ert: Rational,
}

/// Per-node expectations, each weighted by the success or failure indicator.
#[derive(Clone)]
struct Absorption {
    success: Rational,
    evals_success: Rational,
    evals_fail: Rational,
    steps_success: Rational,
    steps_fail: Rational,
}

/// Improving moves out of `x`: the successor set and the evaluations spent
/// scanning `x`. An empty successor set means `x` is terminal.
fn moves(rv: &RankVector, x: usize, strategy: Strategy) -> (Vec<usize>, Rational) {
    let n = rv.dimension();
    let rank = rv.rank(x);
    let better: Vec<usize> = neighbor_indices(x, n).filter(|&y| rv.rank(y) < rank).collect();
    let full_scan = integer(n.get() as i64);
    if better.is_empty() {
        return (better, full_scan);
    }
    match strategy {
        Strategy::Best => {
            let best = better.iter().map(|&y| rv.rank(y)).min().expect("non-empty");
            (better.into_iter().filter(|&y| rv.rank(y) == best).collect(), full_scan)
        }
        Strategy::First => {
            let cost = ratio(n.get() as i64 + 1, better.len() as i64 + 1);
            (better, cost)
        }
    }
}

pub fn analyze(rv: &RankVector, strategy: Strategy) -> ClimbReport {
    let size = rv.dimension().nodes();
    let zero = integer(0);
    let one = integer(1);
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&x| rv.rank(x));

    let mut table: Vec<Option<Absorption>> = vec![None; size];
    for &x in &order {
        let (next, cost) = moves(rv, x, strategy);
        let node = if next.is_empty() {
            let success = if rv.rank(x) == 1 { one.clone() } else { zero.clone() };
            Absorption {
                evals_success: &cost * &success,
                evals_fail: &cost * (&one - &success),
                success,
                steps_success: zero.clone(),
                steps_fail: zero.clone(),
            }
        } else {
            let weight = ratio(1, next.len() as i64);
            let mut acc = Absorption {
                success: zero.clone(),
                evals_success: zero.clone(),
                evals_fail: zero.clone(),
                steps_success: zero.clone(),
                steps_fail: zero.clone(),
            };
            for &y in &next {
                assert!(rv.rank(y) < rv.rank(x), "move must strictly improve");
                let child = table[y].as_ref().expect("successors have lower rank and are already solved");
                acc.success += &weight * &child.success;
                acc.evals_success += &weight * &child.evals_success;
                acc.evals_fail += &weight * &child.evals_fail;
                acc.steps_success += &weight * &child.steps_success;
                acc.steps_fail += &weight * &child.steps_fail;
            }
            let fail = &one - &acc.success;
            acc.evals_success += &cost * &acc.success;
            acc.evals_fail += &cost * &fail;
            acc.steps_success += &acc.success;
            acc.steps_fail += fail;
            acc
        };
        table[x] = Some(node);
    }

    let starts = ratio(1, size as i64);
    let mean = |field: fn(&Absorption) -> &Rational| -> Rational {
        table.iter().map(|a| field(a.as_ref().expect("solved"))).sum::<Rational>() * &starts
    };
    let p = mean(|a| &a.success);
    assert!(p >= starts, "starting on a global optimum always succeeds");
    let q = &one - &p;

    let exp_steps_success = mean(|a| &a.steps_success) / &p;
    let exp_evals_success = &one + mean(|a| &a.evals_success) / &p;
    let (exp_steps_fail, exp_evals_fail) = if q == zero {
        (None, None)
    } else {
        (Some(mean(|a| &a.steps_fail) / &q), Some(&one + mean(|a| &a.evals_fail) / &q))
    };
    let multistart_ert = match &exp_evals_fail {
        Some(ef) => &exp_evals_success + &q / &p * ef,
        None => exp_evals_success.clone(),
    };

    ClimbReport {
        success_rate: p,
        exp_steps_success,
        exp_evals_success,
        exp_steps_fail,
        exp_evals_fail,
        multistart_ert,
    }
}

pub fn analyze_best(rv: &RankVector) -> ClimbReport {
    analyze(rv, Strategy::Best)
}

pub fn analyze_first(rv: &RankVector) -> ClimbReport {
    analyze(rv, Strategy::First)
}

/// Outcome for the first report relative to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Better,
    Worse,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    /// Higher success rate is better.
    pub success: Verdict,
    /// Lower multi-start ERT is better.
    pub ert: Verdict,
}

fn verdict(ord: Ordering) -> Verdict {
    match ord {
        Ordering::Greater => Verdict::Better,
        Ordering::Less => Verdict::Worse,
        Ordering::Equal => Verdict::Equal,
    }
}

/// Compares `a` against `b` (typically best- against first-improvement).
pub fn compare(a: &ClimbReport, b: &ClimbReport) -> Comparison {
    Comparison {
        success: verdict(a.success_rate.cmp(&b.success_rate)),
        ert: verdict(b.multistart_ert.cmp(&a.multistart_ert)),
    }
}
