//! Dot-language rendering of a landscape class.
//!
//! Nodes are filled in blue, darker for better ranks, except for global
//! optima (yellow), strict suboptima (pink) and weak suboptima (orange).
//! Improving edges point from the worse to the better node; neutral edges are
//! undirected, dashed and gray.

use std::fmt::Write;

use rankland_core::atlas::ClassRecord;
use rankland_core::props::{node_roles, NodeRole};
use rankland_core::rankspace::rank_letter;
use rankland_core::Node;

const GLOBAL: &str = "#ffe45c";
const STRICT: &str = "#f7a1c4";
const WEAK: &str = "#ffa64d";
const LIGHT: (u8, u8, u8) = (0xde, 0xeb, 0xf7);
const DARK: (u8, u8, u8) = (0x08, 0x30, 0x6b);

/// Blue fill for `rank` out of `k`, and whether it needs light text.
fn shade(rank: u32, k: u32) -> (String, bool) {
    let t = if k <= 1 { 1.0 } else { (k - rank) as f64 / (k - 1) as f64 };
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * t).round() as u8;
    let (r, g, b) = (mix(LIGHT.0, DARK.0), mix(LIGHT.1, DARK.1), mix(LIGHT.2, DARK.2));
    (format!("#{r:02x}{g:02x}{b:02x}"), t > 0.5)
}

pub fn dot(record: &ClassRecord) -> String {
    let rv = &record.canonical_ranks;
    let n = rv.dimension();
    let k = rv.k();
    let roles = node_roles(rv);
    let name = |x: usize| Node::new(x as u32, n).expect("node in range").bitstring(n);

    let mut s = String::new();
    writeln!(s, "digraph class_{} {{", record.class_id).unwrap();
    writeln!(s, "  graph [label=\"n = {n}, class {}: {rv}\", labelloc=t];", record.class_id).unwrap();
    writeln!(s, "  node [shape=circle, style=filled, fontname=\"Helvetica\"];").unwrap();
    for (x, role) in roles.iter().enumerate() {
        let rank = rv.rank(x);
        let (fill, light_text) = match role {
            NodeRole::GlobalOptimum => (GLOBAL.to_string(), false),
            NodeRole::StrictSuboptimum => (STRICT.to_string(), false),
            NodeRole::WeakSuboptimum => (WEAK.to_string(), false),
            NodeRole::Other => shade(rank, k),
        };
        let font = if light_text { "white" } else { "black" };
        writeln!(
            s,
            "  \"{0}\" [label=\"{0}\\n{1}\", fillcolor=\"{fill}\", fontcolor={font}];",
            name(x),
            rank_letter(rank)
        )
        .unwrap();
    }
    for x in 0..n.nodes() {
        for bit in 0..n.get() {
            let y = x ^ (1 << bit);
            let (rx, ry) = (rv.rank(x), rv.rank(y));
            if rx == ry && x < y {
                writeln!(s, "  \"{}\" -> \"{}\" [dir=none, style=dashed, color=gray];", name(x), name(y)).unwrap();
            } else if rx > ry {
                writeln!(s, "  \"{}\" -> \"{}\";", name(x), name(y)).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rankland_core::atlas::build;
    use rankland_core::{Cap, Dimension, RankVector};

    #[test]
    fn shading_is_darker_for_better_ranks() {
        assert_eq!(shade(1, 4).0, "#08306b");
        assert_eq!(shade(4, 4).0, "#deebf7");
        assert!(shade(2, 4).1);
        assert!(!shade(3, 4).1);
    }

    #[test]
    fn trap_class_colors() {
        let n = Dimension::new(2).unwrap();
        let atlas = build(n, Cap::default()).unwrap();
        let rv = RankVector::new(n, vec![2, 3, 4, 1]).unwrap();
        let record = atlas.lookup_ranks(&rv).unwrap();
        let text = dot(record);
        // The canonical form of this class puts the optimum at 00 and the trap at 11.
        assert_eq!(record.canonical_ranks.ranks(), &[1, 3, 4, 2]);
        assert!(text.contains(&format!("\"00\" [label=\"00\\nA\", fillcolor=\"{GLOBAL}\"")));
        assert!(text.contains(&format!("\"11\" [label=\"11\\nB\", fillcolor=\"{STRICT}\"")));
        assert_eq!(text.matches(" -> ").count(), 4);
        assert!(!text.contains("dashed"));
    }
}
