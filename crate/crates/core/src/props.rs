//! Topological properties of a rank landscape: optima, traps, neutrality and
//! plateaus.

use serde::{Deserialize, Serialize};

use crate::hypercube::neighbor_indices;
use crate::rankspace::RankVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Deceptive {
    None,
    /// Only non-strict suboptima (each has an equal-rank neighbor).
    Weak,
    /// At least one strict suboptimum.
    Strict,
}

impl Deceptive {
    pub fn is_deceptive(self) -> bool {
        self != Deceptive::None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PropertyReport {
    pub k_ranks: u32,
    pub global_optima: u32,
    pub strict_suboptima: u32,
    pub weak_suboptima: u32,
    pub neutral_edges: u32,
    /// Nodes incident to at least one neutral edge.
    pub neutral_node_count: u32,
    pub neutral_networks: u32,
    pub optimal_plateaus: u32,
    pub suboptimal_plateaus: u32,
    pub deceptive: Deceptive,
    pub neutral: bool,
    pub plateau: bool,
}

impl PropertyReport {
    pub fn suboptima(&self) -> u32 {
        self.strict_suboptima + self.weak_suboptima
    }

    pub fn plateaus(&self) -> u32 {
        self.optimal_plateaus + self.suboptimal_plateaus
    }
}

/// Role of a single node, used for rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRole {
    GlobalOptimum,
    StrictSuboptimum,
    WeakSuboptimum,
    Other,
}

pub fn node_roles(rv: &RankVector) -> Vec<NodeRole> {
    let n = rv.dimension();
    (0..n.nodes())
        .map(|x| {
            let r = rv.rank(x);
            if r == 1 {
                return NodeRole::GlobalOptimum;
            }
            let mut equal = false;
            for y in neighbor_indices(x, n) {
                match rv.rank(y) {
                    ry if ry < r => return NodeRole::Other,
                    ry if ry == r => equal = true,
                    _ => {}
                }
            }
            if equal {
                NodeRole::WeakSuboptimum
            } else {
                NodeRole::StrictSuboptimum
            }
        })
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn analyze(rv: &RankVector) -> PropertyReport {
    let n = rv.dimension();
    let size = n.nodes();
    let roles = node_roles(rv);
    let local_opt: Vec<bool> = (0..size)
        .map(|x| neighbor_indices(x, n).all(|y| rv.rank(y) >= rv.rank(x)))
        .collect();

    let mut parent: Vec<usize> = (0..size).collect();
    let mut neutral_edges = 0;
    let mut incident = vec![false; size];
    for x in 0..size {
        for y in neighbor_indices(x, n).filter(|&y| y > x && rv.rank(y) == rv.rank(x)) {
            neutral_edges += 1;
            incident[x] = true;
            incident[y] = true;
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
    }

    // Per neutral network: (all members locally optimal, shared rank).
    let mut networks: Vec<Option<(bool, u32)>> = vec![None; size];
    for x in (0..size).filter(|&x| incident[x]) {
        let root = find(&mut parent, x);
        let entry = networks[root].get_or_insert((true, rv.rank(x)));
        entry.0 &= local_opt[x];
    }
    let networks: Vec<(bool, u32)> = networks.into_iter().flatten().collect();
    let optimal_plateaus = networks.iter().filter(|&&(opt, r)| opt && r == 1).count() as u32;
    let suboptimal_plateaus = networks.iter().filter(|&&(opt, r)| opt && r > 1).count() as u32;

    let count = |role| roles.iter().filter(|&&r| r == role).count() as u32;
    let strict_suboptima = count(NodeRole::StrictSuboptimum);
    let weak_suboptima = count(NodeRole::WeakSuboptimum);
    let deceptive = if strict_suboptima > 0 {
        Deceptive::Strict
    } else if weak_suboptima > 0 {
        Deceptive::Weak
    } else {
        Deceptive::None
    };

    PropertyReport {
        k_ranks: rv.k(),
        global_optima: count(NodeRole::GlobalOptimum),
        strict_suboptima,
        weak_suboptima,
        neutral_edges,
        neutral_node_count: incident.iter().filter(|&&i| i).count() as u32,
        neutral_networks: networks.len() as u32,
        optimal_plateaus,
        suboptimal_plateaus,
        deceptive,
        neutral: neutral_edges > 0,
        plateau: optimal_plateaus + suboptimal_plateaus > 0,
    }
}
