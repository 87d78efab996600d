//! Self-check against the published inventory numbers.
//!
//! `fast` covers n ≤ 2 and finishes well under a second; `full` adds the
//! three-dimensional inventory and a Monte-Carlo cross-check of the exact
//! success rates.

use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankland_core::atlas::{build, stats, Atlas};
use rankland_core::canon::{classify_all, count_injective_classes};
use rankland_core::climb::{ClimbReport, Strategy};
use rankland_core::rankspace::{all_partitions, count_rankings};
use rankland_core::rational::{to_decimal, to_f64};
use rankland_core::sim::{estimate, Estimate};
use rankland_core::{Cap, Dimension};

use crate::Level;

type Check = Result<String, String>;

/// One row per class: (global optima, suboptima, neutral networks, optimal
/// plateaus, suboptimal plateaus, neutral degree).
const PROPERTIES_2D: [[u32; 6]; 14] = [
    [1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [2, 0, 1, 1, 0, 2],
    [2, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 2],
    [1, 0, 1, 0, 0, 2],
    [1, 1, 0, 0, 0, 0],
    [3, 0, 1, 1, 0, 3],
    [2, 0, 2, 1, 0, 4],
    [2, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 3],
    [4, 0, 1, 1, 0, 4],
];

/// Success, steps and evaluations on success, on failure, and ERT.
const BEST_2D: [&str; 14] = [
    "1.000 1.000 5.000 - - 5.000",
    "1.000 1.000 5.000 - - 5.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 0.500 4.000 - - 4.000",
    "1.000 0.500 4.000 - - 4.000",
    "1.000 1.000 5.000 - - 5.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 1.000 5.000 - - 5.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 0.250 3.500 - - 3.500",
    "1.000 0.500 4.000 - - 4.000",
    "1.000 0.500 4.000 - - 4.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 0.000 3.000 - - 3.000",
];

const FIRST_2D: [&str; 14] = [
    "1.000 1.000 4.375 - - 4.375",
    "1.000 1.250 4.750 - - 4.750",
    "0.500 0.500 3.500 0.500 3.500 7.000",
    "1.000 0.625 3.812 - - 3.812",
    "1.000 0.500 3.500 - - 3.500",
    "1.000 1.000 4.375 - - 4.375",
    "0.625 0.600 3.800 0.333 3.333 5.800",
    "1.000 1.000 4.500 - - 4.500",
    "0.500 0.500 3.500 0.500 3.500 7.000",
    "1.000 0.250 3.250 - - 3.250",
    "1.000 0.500 3.750 - - 3.750",
    "1.000 0.500 3.500 - - 3.500",
    "0.750 0.667 4.000 0.000 3.000 5.000",
    "1.000 0.000 3.000 - - 3.000",
];

fn dim(n: u32) -> Dimension {
    Dimension::new(n).expect("small dimension")
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, expected: T) -> Result<(), String> {
    if got == expected {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected:?}, got {got:?}"))
    }
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn perf_row(r: &ClimbReport) -> String {
    let opt = |v: &Option<_>| v.as_ref().map(|v| to_decimal(v, 3)).unwrap_or_else(|| "-".into());
    [
        to_decimal(&r.success_rate, 3),
        to_decimal(&r.exp_steps_success, 3),
        to_decimal(&r.exp_evals_success, 3),
        opt(&r.exp_steps_fail),
        opt(&r.exp_evals_fail),
        to_decimal(&r.multistart_ert, 3),
    ]
    .join(" ")
}

fn counts_small() -> Check {
    expect("n=1 rankings", count_rankings(dim(1)).total, BigUint::from(3u32))?;
    expect("n=2 rankings", count_rankings(dim(2)).total, BigUint::from(75u32))?;
    expect("n=2 partitions", all_partitions(dim(2)).count(), 8)?;
    Ok("3 / 75 rankings, 8 partitions".into())
}

fn classes_small(a2: &Atlas) -> Check {
    let a1 = classify_all(dim(1), Cap(1)).map_err(|e| e.to_string())?;
    expect("n=1 classes", a1.len(), 2)?;
    expect("n=2 classes", a2.records.len(), 14)?;
    expect("n=2 injective", count_injective_classes(dim(2)), BigUint::from(3u32))?;
    let orbits = sorted(a2.records.iter().map(|r| r.orbit_size).collect());
    expect("n=2 orbit sizes", orbits, vec![1, 2, 4, 4, 4, 4, 4, 4, 8, 8, 8, 8, 8, 8])?;
    Ok("2 / 14 classes, orbit sizes {8×6, 4×6, 2, 1}".into())
}

fn tables_2d(a2: &Atlas) -> Check {
    let rows = |f: &dyn Fn(usize) -> String| sorted((0..14).map(f).collect::<Vec<_>>());
    let got = rows(&|i| {
        let r = &a2.records[i];
        let p = &r.properties;
        let props = [
            p.global_optima,
            p.suboptima(),
            p.neutral_networks,
            p.optimal_plateaus,
            p.suboptimal_plateaus,
            p.neutral_node_count,
        ];
        format!("{props:?} | {} | {}", perf_row(&r.perf_best), perf_row(&r.perf_first))
    });
    let expected = rows(&|i| format!("{:?} | {} | {}", PROPERTIES_2D[i], BEST_2D[i], FIRST_2D[i]));
    for (g, e) in got.iter().zip(&expected) {
        expect("2D class row", g, e)?;
    }
    Ok("property, best- and first-improvement tables match row for row".into())
}

fn summary_small(a2: &Atlas) -> Check {
    let s = stats(a2);
    expect("n=2 deceptive", s.deceptive, 4)?;
    expect("n=2 success (first better)", s.success.first_better, 0)?;
    expect("n=2 ERT (first faster, best faster)", (s.ert.first_better, s.ert.best_better), (10, 3))?;
    Ok("4 deceptive; first improvement faster on 10, slower on 3".into())
}

fn counts_large() -> Check {
    let c3 = count_rankings(dim(3));
    expect("n=3 rankings", c3.total, BigUint::from(545_835u32))?;
    let per_k: Vec<BigUint> =
        [1u32, 254, 5796, 40824, 126000, 191520, 141120, 40320].into_iter().map(BigUint::from).collect();
    expect("n=3 per k", c3.per_k, per_k)?;
    let c4 = count_rankings(dim(4));
    expect("n=4 k=16", c4.per_k[15].to_string(), "20922789888000".to_string())?;
    expect("n=4 partitions", all_partitions(dim(4)).count(), 32_768)?;
    Ok("545835 rankings, per-k table, n=4 spot values".into())
}

fn classes_large(a3: &Atlas) -> Check {
    expect("n=3 classes", a3.records.len(), 11_991)?;
    let injective = a3.records.iter().filter(|r| r.properties.k_ranks == 8).count();
    expect("n=3 injective", injective, 840)?;
    expect("n=3 orbit total", a3.provenance.total_rankings.clone(), BigUint::from(545_835u32))?;
    Ok("11991 classes, 840 injective, orbits cover 545835 rankings".into())
}

fn crosstab(a3: &Atlas) -> Check {
    let s = stats(a3);
    let counts: Vec<u64> = s.crosstab.iter().map(|r| r.count).collect();
    expect("cross-tab", counts, vec![1233, 3175, 1098, 4130, 1130, 1225])?;
    Ok("1233 / 3175 / 1098 / 4130 / 1130 / 1225".into())
}

fn tallies(a3: &Atlas) -> Check {
    let s = stats(a3);
    let success = (s.success.best_better, s.success.first_better, s.success.equal);
    expect("success (best better, first better, equal)", success, (7268, 653, 4070))?;
    let ert = (s.ert.first_better, s.ert.best_better, s.ert.equal);
    expect("ERT (first faster, best faster, equal)", ert, (7064, 4916, 11))?;
    Ok("success 7268/653/4070, ERT 7064/4916/11".into())
}

fn shares(a3: &Atlas) -> Check {
    let s = stats(a3);
    let pct = |c: u64| 100.0 * c as f64 / s.classes as f64;
    expect("deceptive", s.deceptive, 8530)?;
    for (what, count, target) in [
        ("injective", s.injective, 7.0),
        ("multiple global optima", s.multiple_global_optima, 30.0),
        ("deceptive", s.deceptive, 71.1),
    ] {
        if (pct(count) - target).abs() > 0.5 {
            return Err(format!("{what}: {count} classes = {:.2}%, expected {target}% ± 0.5", pct(count)));
        }
    }
    Ok("injective 7.0%, multiple optima ≈ 30%, deceptive 71.1%".into())
}

fn monte_carlo(a3: &Atlas, seed: u64, runs: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let r = &a3.records[rng.gen_range(0..a3.records.len())];
        for (strategy, exact) in [(Strategy::Best, &r.perf_best), (Strategy::First, &r.perf_first)] {
            let p = to_f64(&exact.success_rate);
            let est = estimate(&r.canonical_ranks, strategy, runs, &mut rng);
            let se = Estimate::standard_error(runs, p);
            let dev = (est.success_rate() - p).abs();
            if dev > 3.0 * se {
                return Err(format!(
                    "class {} {strategy:?}: simulated {:.5}, exact {p:.5}, {:.1} standard errors",
                    r.class_id,
                    est.success_rate(),
                    dev / se
                ));
            }
            if se > 0.0 {
                worst = worst.max(dev / se);
            }
        }
    }
    Ok(format!("20 classes × 2 climbers × {runs} runs, worst deviation {worst:.2} SE"))
}

/// Runs the checks for `level`, printing one line each. Returns whether all
/// of them passed.
pub fn run(out: &mut impl Write, level: Level, cap: Cap, seed: u64, runs: u64) -> Result<bool, rankland_core::Error> {
    let start = Instant::now();
    let a2 = build(dim(2), cap)?;
    let mut results: Vec<(&str, Check)> = vec![
        ("counts n<=2", counts_small()),
        ("classes n<=2", classes_small(&a2)),
        ("2D tables", tables_2d(&a2)),
        ("2D summary", summary_small(&a2)),
    ];
    if level == Level::Full {
        let a3 = build(dim(3), cap)?;
        results.push(("counts n=3,4", counts_large()));
        results.push(("classes n=3", classes_large(&a3)));
        results.push(("audit n=3", a3.audit().map(|()| "every record recomputes identically".into()).map_err(|e| e.to_string())));
        results.push(("cross-tab n=3", crosstab(&a3)));
        results.push(("tallies n=3", tallies(&a3)));
        results.push(("shares n=3", shares(&a3)));
        results.push(("monte carlo n=3", monte_carlo(&a3, seed, runs)));
    }
    let mut failed = 0;
    for (name, result) in &results {
        let line = match result {
            Ok(detail) => format!("ok    {name}: {detail}"),
            Err(diff) => {
                failed += 1;
                format!("FAIL  {name}: {diff}")
            }
        };
        writeln!(out, "{line}")?;
    }
    writeln!(
        out,
        "{} checks, {failed} failed ({:.2}s)",
        results.len(),
        start.elapsed().as_secs_f64()
    )?;
    Ok(failed == 0)
}
