//! Acceptance suite: reproduces the published inventory numbers and runs the
//! invariance, orbit and simulation checks. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankland_core::atlas::{build, stats, Atlas};
use rankland_core::canon::{canonicalize, classify_all, count_injective_classes, transform, Canonicalizer};
use rankland_core::climb::{analyze_best, analyze_first, ClimbReport, Strategy};
use rankland_core::hypercube::{all_automorphisms, Automorphism, Cap, Dimension};
use rankland_core::props::analyze;
use rankland_core::rankspace::{
    all_partitions, count_rankings, enumerate_rank_vectors, partition_count, rank_of, RankVector,
};
use rankland_core::rational::{integer, ratio, to_decimal, to_f64, Rational};
use rankland_core::sim::{estimate, Estimate};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, expected: T) -> Result<(), String> {
    ensure(got == expected, format!("{what}: expected {expected:?}, got {got:?}"))
}

fn big(v: &str) -> BigUint {
    v.parse().unwrap()
}

struct Atlases {
    n2: Atlas,
    n3: Atlas,
}

// ---------------------------------------------------------------------------
// Reference tables for the 14 two-dimensional classes, in reference id order.
// ---------------------------------------------------------------------------

/// (global optima, suboptima, neutral networks, optimal plateaus,
///  suboptimal plateaus, neutral degree)
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

/// Printed rows: success, steps (ok), evals (ok), steps (fail), evals (fail), ERT.
const BEST_2D: [&str; 14] = [
    "1.000 1.000 5.000 -- -- 5.000",
    "1.000 1.000 5.000 -- -- 5.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 0.500 4.000 -- -- 4.000",
    "1.000 0.500 4.000 -- -- 4.000",
    "1.000 1.000 5.000 -- -- 5.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 1.000 5.000 -- -- 5.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 0.250 3.500 -- -- 3.500",
    "1.000 0.500 4.000 -- -- 4.000",
    "1.000 0.500 4.000 -- -- 4.000",
    "0.750 0.667 4.333 0.000 3.000 5.333",
    "1.000 0.000 3.000 -- -- 3.000",
];

const FIRST_2D: [&str; 14] = [
    "1.000 1.000 4.375 -- -- 4.375",
    "1.000 1.250 4.750 -- -- 4.750",
    "0.500 0.500 3.500 0.500 3.500 7.000",
    "1.000 0.625 3.812 -- -- 3.812",
    "1.000 0.500 3.500 -- -- 3.500",
    "1.000 1.000 4.375 -- -- 4.375",
    "0.625 0.600 3.800 0.333 3.333 5.800",
    "1.000 1.000 4.500 -- -- 4.500",
    "0.500 0.500 3.500 0.500 3.500 7.000",
    "1.000 0.250 3.250 -- -- 3.250",
    "1.000 0.500 3.750 -- -- 3.750",
    "1.000 0.500 3.500 -- -- 3.500",
    "0.750 0.667 4.000 0.000 3.000 5.000",
    "1.000 0.000 3.000 -- -- 3.000",
];

type ExactRow = (Rational, Rational, Rational, Option<Rational>, Option<Rational>, Rational);

fn full(steps: Rational, evals: Rational) -> ExactRow {
    (integer(1), steps, evals.clone(), None, None, evals)
}

fn partial(p: Rational, ss: Rational, es: Rational, sf: Rational, ef: Rational, ert: Rational) -> ExactRow {
    (p, ss, es, Some(sf), Some(ef), ert)
}

fn best_exact() -> Vec<ExactRow> {
    let trap = || partial(ratio(3, 4), ratio(2, 3), ratio(13, 3), integer(0), integer(3), ratio(16, 3));
    vec![
        full(integer(1), integer(5)),
        full(integer(1), integer(5)),
        trap(),
        full(ratio(1, 2), integer(4)),
        full(ratio(1, 2), integer(4)),
        full(integer(1), integer(5)),
        trap(),
        full(integer(1), integer(5)),
        trap(),
        full(ratio(1, 4), ratio(7, 2)),
        full(ratio(1, 2), integer(4)),
        full(ratio(1, 2), integer(4)),
        trap(),
        full(integer(0), integer(3)),
    ]
}

fn first_exact() -> Vec<ExactRow> {
    let half = || partial(ratio(1, 2), ratio(1, 2), ratio(7, 2), ratio(1, 2), ratio(7, 2), integer(7));
    vec![
        full(integer(1), ratio(35, 8)),
        full(ratio(5, 4), ratio(19, 4)),
        half(),
        full(ratio(5, 8), ratio(61, 16)),
        full(ratio(1, 2), ratio(7, 2)),
        full(integer(1), ratio(35, 8)),
        partial(ratio(5, 8), ratio(3, 5), ratio(19, 5), ratio(1, 3), ratio(10, 3), ratio(29, 5)),
        full(integer(1), ratio(9, 2)),
        half(),
        full(ratio(1, 4), ratio(13, 4)),
        full(ratio(1, 2), ratio(15, 4)),
        full(ratio(1, 2), ratio(7, 2)),
        partial(ratio(3, 4), ratio(2, 3), integer(4), integer(0), integer(3), integer(5)),
        full(integer(0), integer(3)),
    ]
}

fn exact_row(r: &ClimbReport) -> ExactRow {
    (
        r.success_rate.clone(),
        r.exp_steps_success.clone(),
        r.exp_evals_success.clone(),
        r.exp_steps_fail.clone(),
        r.exp_evals_fail.clone(),
        r.multistart_ert.clone(),
    )
}

fn row_values(r: &ClimbReport) -> Vec<Option<&Rational>> {
    vec![
        Some(&r.success_rate),
        Some(&r.exp_steps_success),
        Some(&r.exp_evals_success),
        r.exp_steps_fail.as_ref(),
        r.exp_evals_fail.as_ref(),
        Some(&r.multistart_ert),
    ]
}

fn printed_row(r: &ClimbReport) -> String {
    row_values(r)
        .into_iter()
        .map(|v| v.map(|v| to_decimal(v, 3)).unwrap_or_else(|| "--".into()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn sort_exact(mut rows: Vec<ExactRow>) -> Vec<ExactRow> {
    rows.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    rows
}

fn props_row(rv: &RankVector) -> [u32; 6] {
    let p = analyze(rv);
    [p.global_optima, p.suboptima(), p.neutral_networks, p.optimal_plateaus, p.suboptimal_plateaus, p.neutral_node_count]
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

fn c1_counting() -> Outcome {
    let start = Instant::now();
    eq("n=2 total", count_rankings(dim(2)).total, BigUint::from(75u32))?;
    let n3 = count_rankings(dim(3));
    eq("n=3 total", n3.total.clone(), BigUint::from(545_835u32))?;
    let per_k: Vec<BigUint> =
        [1u32, 254, 5796, 40824, 126000, 191520, 141120, 40320].iter().map(|&v| BigUint::from(v)).collect();
    eq("n=3 per-k", n3.per_k, per_k)?;
    let n4: Vec<BigUint> = [
        "1", "65534", "42850116", "4123173624", "131542866000", "1969147121760", "16540688324160",
        "86355926616960", "297846188640000", "703098107712000", "1155068769254400", "1320663933388800",
        "1031319184896000", "524813313024000", "156920924160000", "20922789888000",
    ]
    .iter()
    .map(|s| big(s))
    .collect();
    let c4 = count_rankings(dim(4));
    eq("n=4 per-k", c4.per_k, n4)?;
    // The n=4 total is only quoted as ≈ 2^52.23, truncated to two decimals.
    let log2 = c4.total.to_f64().unwrap().log2();
    ensure((log2 * 100.0).floor() == 5223.0, format!("n=4 total is 2^{log2:.4}"))?;
    for (n, expected) in [(2u32, 8u64), (3, 128), (4, 32_768)] {
        let by_formula: BigUint = (1..=1u32 << n).map(|k| partition_count(dim(n), k)).sum();
        eq(&format!("n={n} partitions (formula)"), by_formula, BigUint::from(expected))?;
        eq(&format!("n={n} partitions (enumerated)"), all_partitions(dim(n)).count() as u64, expected)?;
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, format!("counting took {elapsed:.2}s"))?;
    Ok(format!("75 / 545835 / n=4 table exact; partitions 8/128/32768 ({elapsed:.3}s)"))
}

fn c2_class_counts(a: &Atlases) -> Outcome {
    let n1 = classify_all(dim(1), Cap::default()).map_err(|e| e.to_string())?;
    let mut got = vec![n1.len()];
    let mut injective = vec![n1.iter().filter(|c| c.canonical.rank_vector().k() == 2).count() as u64];
    eq("n=1 orbit total", n1.iter().map(|c| c.orbit.orbit_size).sum::<u64>(), 3)?;
    for (n, atlas) in [(2u32, &a.n2), (3, &a.n3)] {
        got.push(atlas.records.len());
        let size = 1u32 << n;
        injective.push(atlas.records.iter().filter(|r| r.properties.k_ranks == size).count() as u64);
        let total: u64 = atlas.records.iter().map(|r| r.orbit_size).sum();
        eq(&format!("n={n} Σ orbit"), BigUint::from(total), count_rankings(dim(n)).total)?;
    }
    eq("class counts", got, vec![2, 14, 11_991])?;
    eq("injective classes", injective.clone(), vec![1, 3, 840])?;
    for (i, n) in (1..=3).enumerate() {
        eq("injective formula", count_injective_classes(dim(n)), BigUint::from(injective[i]))?;
    }
    Ok("2 / 14 / 11991 classes; injective 1 / 3 / 840; orbit sums match".into())
}

fn c3_orbits_2d(a: &Atlases) -> Outcome {
    let sizes = sorted(a.n2.records.iter().map(|r| r.orbit_size).collect());
    eq("orbit sizes", sizes, sorted(vec![8, 8, 8, 8, 8, 8, 4, 4, 4, 4, 4, 4, 2, 1]))?;
    Ok("{8×6, 4×6, 2, 1}".into())
}

fn c4_properties_2d(a: &Atlases) -> Outcome {
    let got = sorted(a.n2.records.iter().map(|r| props_row(&r.canonical_ranks)).collect());
    let expected = sorted(PROPERTIES_2D.to_vec());
    eq("property rows", got, expected)?;
    Ok("14 property rows match as a multiset".into())
}

fn c5_performance_2d(a: &Atlases) -> Outcome {
    let records = &a.n2.records;
    let best: Vec<ExactRow> = records.iter().map(|r| exact_row(&r.perf_best)).collect();
    let first: Vec<ExactRow> = records.iter().map(|r| exact_row(&r.perf_first)).collect();
    ensure(sort_exact(best) == sort_exact(best_exact()), "best-improvement exact rows differ")?;
    ensure(sort_exact(first) == sort_exact(first_exact()), "first-improvement exact rows differ")?;

    // Joint check: each class pairs its property row with both performance rows.
    let joint = |props: [u32; 6], b: &str, f: &str| format!("{props:?} | {b} | {f}");
    let got = sorted(
        records
            .iter()
            .map(|r| joint(props_row(&r.canonical_ranks), &printed_row(&r.perf_best), &printed_row(&r.perf_first)))
            .collect(),
    );
    let expected = sorted((0..14).map(|i| joint(PROPERTIES_2D[i], BEST_2D[i], FIRST_2D[i])).collect());
    eq("joint per-class rows", got, expected)?;

    // Printed decimals are within 5e-4 of the exact values; 61/16 sits exactly
    // on the boundary, hence the float slack.
    for r in records {
        for report in [&r.perf_best, &r.perf_first] {
            for v in row_values(report).into_iter().flatten() {
                let shown: f64 = to_decimal(v, 3).parse().unwrap();
                ensure((shown - to_f64(v)).abs() <= 5e-4 + 1e-12, format!("rounding of {v} drifts"))?;
            }
        }
    }
    Ok("best and first tables match exactly (13/3, 35/8, 61/16, 29/5, ...)".into())
}

fn c6_crosstab(a: &Atlases) -> Outcome {
    let s = stats(&a.n3);
    let counts: Vec<u64> = s.crosstab.iter().map(|r| r.count).collect();
    eq("cross-tab", counts, vec![1233, 3175, 1098, 4130, 1130, 1225])?;
    let pct: Vec<&str> = s.crosstab.iter().map(|r| r.percentage.as_str()).collect();
    eq("percentages", pct, vec!["10.28", "26.48", "9.16", "34.44", "9.42", "10.22"])?;
    eq("total", s.classes, 11_991)?;
    Ok("1233 / 3175 / 1098 / 4130 / 1130 / 1225".into())
}

fn c7_tallies(a: &Atlases) -> Outcome {
    let s = stats(&a.n3);
    let success = (s.success.best_better, s.success.first_better, s.success.equal);
    let ert = (s.ert.first_better, s.ert.best_better, s.ert.equal);
    eq("success tally (best, first, equal)", success, (7268, 653, 4070))?;
    eq("ERT tally (first faster, best faster, equal)", ert, (7064, 4916, 11))
        .map_err(|e| format!("{e}; success tally {success:?} matches"))?;
    Ok("success 7268/653/4070; ERT 7064/4916/11".into())
}

fn c8_shares(a: &Atlases) -> Outcome {
    let s = stats(&a.n3);
    let pct = |c: u64| 100.0 * c as f64 / s.classes as f64;
    eq("injective", s.injective, 840)?;
    ensure((pct(s.injective) - 7.0).abs() <= 0.5, format!("injective share {:.2}%", pct(s.injective)))?;
    let multi = pct(s.multiple_global_optima);
    ensure((multi - 30.0).abs() <= 0.5, format!("multiple global optima share {multi:.2}%"))?;
    eq("deceptive", s.deceptive, 3175 + 4130 + 1225)?;
    let dec = pct(s.deceptive);
    ensure(dec > 70.0 && (dec - 71.1).abs() <= 0.5, format!("deceptive share {dec:.2}%"))?;
    Ok(format!(
        "injective 840 ({:.1}%), ≥2 global optima {} ({multi:.1}%), deceptive {} ({dec:.1}%)",
        pct(s.injective),
        s.multiple_global_optima,
        s.deceptive
    ))
}

fn c9_properties(a: &Atlases) -> Outcome {
    // Exhaustive invariance for n ≤ 2.
    for n in 1..=2 {
        let n = dim(n);
        let group = all_automorphisms(n, Cap::default()).unwrap();
        for lambda in all_partitions(n) {
            for rv in enumerate_rank_vectors(&lambda, n, Cap::default()).unwrap() {
                let base = (canonicalize(&rv, Cap::default()).unwrap(), analyze(&rv), analyze_best(&rv), analyze_first(&rv));
                for g in &group {
                    let t = transform(g, &rv).unwrap();
                    let moved = (canonicalize(&t, Cap::default()).unwrap(), analyze(&t), analyze_best(&t), analyze_first(&t));
                    ensure(moved == base, format!("n={n}: {rv} vs {t} under {g}"))?;
                }
            }
        }
    }

    // Random (rank vector, automorphism) pairs for n = 3.
    let n3 = dim(3);
    let canon = Canonicalizer::new(n3, Cap::default()).unwrap();
    let group = all_automorphisms(n3, Cap::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pairs = 1_000;
    for _ in 0..pairs {
        let fitness: Vec<f64> = (0..8).map(|_| rng.gen_range(0..8) as f64).collect();
        let rv = rank_of(&fitness, n3).unwrap();
        let g: &Automorphism = &group[rng.gen_range(0..group.len())];
        let t = transform(g, &rv).unwrap();
        let lhs = (canon.canonicalize(&rv).unwrap(), analyze(&rv), analyze_best(&rv), analyze_first(&rv));
        let rhs = (canon.canonicalize(&t).unwrap(), analyze(&t), analyze_best(&t), analyze_first(&t));
        ensure(lhs == rhs, format!("n=3: {rv} vs {t} under {g}"))?;

        // Strictly monotone transformations of the fitness keep the ranks.
        let affine: Vec<f64> = fitness.iter().map(|x| 2.0 * x + 1.0).collect();
        let exp: Vec<f64> = fitness.iter().map(|x| x.exp()).collect();
        ensure(rank_of(&affine, n3).unwrap() == rv && rank_of(&exp, n3).unwrap() == rv, "monotone invariance")?;
    }

    // Orbit-stabilizer on every class, with the orbit counted explicitly.
    for atlas in [&a.n2, &a.n3] {
        let n = atlas.dimension();
        let group = all_automorphisms(n, Cap::default()).unwrap();
        for r in &atlas.records {
            ensure(r.orbit_size * r.stabilizer_order == n.group_order(), format!("class {}", r.class_id))?;
            let orbit: HashSet<RankVector> = group.iter().map(|g| transform(g, &r.canonical_ranks).unwrap()).collect();
            ensure(orbit.len() as u64 == r.orbit_size, format!("class {} orbit", r.class_id))?;
        }
    }

    // Monte-Carlo agreement on 20 random classes.
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let runs = 1_000_000;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let r = &a.n3.records[rng.gen_range(0..a.n3.records.len())];
        for strategy in [Strategy::Best, Strategy::First] {
            let exact = if strategy == Strategy::Best { &r.perf_best } else { &r.perf_first };
            let p = to_f64(&exact.success_rate);
            let est = estimate(&r.canonical_ranks, strategy, runs, &mut rng);
            let se = Estimate::standard_error(runs, p);
            let dev = (est.success_rate() - p).abs();
            if se == 0.0 {
                ensure(dev == 0.0, format!("class {} {strategy:?}: deterministic success expected", r.class_id))?;
            } else {
                worst = worst.max(dev / se);
                ensure(dev <= 3.0 * se, format!("class {} {strategy:?}: {dev:.5} > 3 SE ({se:.5})", r.class_id))?;
            }
        }
    }
    Ok(format!("invariance exhaustive n≤2 + {pairs} pairs n=3; orbit-stabilizer on all classes; MC worst {worst:.2} SE"))
}

fn c10_worked_example(a: &Atlases) -> Outcome {
    let n3 = dim(3);
    // Two adjacent rank-B traps forming a suboptimal plateau.
    let d = RankVector::new(n3, vec![2, 2, 5, 3, 7, 4, 6, 1]).unwrap();
    // One rank-B trap; the other B node sits next to the optimum.
    let e = RankVector::new(n3, vec![2, 4, 5, 2, 7, 3, 6, 1]).unwrap();

    let pd = analyze(&d);
    ensure(pd.suboptimal_plateaus == 1 && pd.weak_suboptima == 2 && pd.k_ranks == 7, format!("{d} signature: {pd:?}"))?;
    let pe = analyze(&e);
    ensure(pe.suboptimal_plateaus == 0 && pe.strict_suboptima == 1 && pe.k_ranks == 7, format!("{e} signature: {pe:?}"))?;

    eq("plateau-trap success", analyze_best(&d).success_rate, ratio(1, 2))?;
    eq("single-trap success", analyze_best(&e).success_rate, ratio(5, 8))?;

    let cd = a.n3.lookup_ranks(&d).map_err(|e| e.to_string())?;
    let ce = a.n3.lookup_ranks(&e).map_err(|e| e.to_string())?;
    ensure(cd.class_id != ce.class_id, "the two landscapes must be in different classes")?;
    eq("plateau-trap class success", cd.perf_best.success_rate.clone(), ratio(1, 2))?;
    eq("single-trap class success", ce.perf_best.success_rate.clone(), ratio(5, 8))?;

    // Bit-flip translation and the swap of the first two variables keep the class.
    let flip = Automorphism::translation(n3, 0b010).unwrap();
    let swap = Automorphism::rotation(n3, vec![0, 2, 1]).unwrap();
    for g in [flip.clone(), swap.clone(), swap.compose(&flip).unwrap()] {
        let t = transform(&g, &d).unwrap();
        eq("moved plateau-trap class", a.n3.lookup_ranks(&t).map_err(|e| e.to_string())?.class_id, cd.class_id)?;
    }
    Ok(format!("plateau-trap class {} succeeds 1/2, single-trap class {} succeeds 5/8", cd.class_id, ce.class_id))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let n2 = build(dim(2), Cap::default()).expect("n=2 atlas");
    let n3 = build(dim(3), Cap::default()).expect("n=3 atlas");
    let atlases = Atlases { n2, n3 };
    println!("atlases built in {:.2}s", start.elapsed().as_secs_f64());

    let criteria: Vec<Criterion> = vec![
        ("1 counting", Box::new(c1_counting)),
        ("2 class counts", Box::new(|| c2_class_counts(&atlases))),
        ("3 n=2 orbit structure", Box::new(|| c3_orbits_2d(&atlases))),
        ("4 n=2 properties", Box::new(|| c4_properties_2d(&atlases))),
        ("5 n=2 performance", Box::new(|| c5_performance_2d(&atlases))),
        ("6 n=3 property cross-tab", Box::new(|| c6_crosstab(&atlases))),
        ("7 n=3 performance tallies", Box::new(|| c7_tallies(&atlases))),
        ("8 n=3 headline shares", Box::new(|| c8_shares(&atlases))),
        ("9 property-based suites", Box::new(|| c9_properties(&atlases))),
        ("10 worked example", Box::new(|| c10_worked_example(&atlases))),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.2}s]", t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} criteria, {failed} failed, {:.2}s total", 10, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
