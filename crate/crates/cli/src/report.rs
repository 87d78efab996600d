//! Plain-text and CSV output for records and summaries.

use std::io::{self, Write};
use std::path::Path;

use rankland_core::atlas::{percentage, CdfPoint, ClassRecord, Summary};
use rankland_core::climb::ClimbReport;
use rankland_core::rational::{to_decimal, to_exact, Rational};
use rankland_core::Error;

const PERF_PLACES: u32 = 3;

fn dec(r: &Rational) -> String {
    to_decimal(r, PERF_PLACES)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn perf_cells(r: &ClimbReport, render: fn(&Rational) -> String) -> [String; 6] {
    let opt = |v: &Option<Rational>| v.as_ref().map(render).unwrap_or_else(|| "-".into());
    [
        render(&r.success_rate),
        render(&r.exp_steps_success),
        render(&r.exp_evals_success),
        opt(&r.exp_steps_fail),
        opt(&r.exp_evals_fail),
        render(&r.multistart_ert),
    ]
}

pub fn record(out: &mut impl Write, r: &ClassRecord, classes: usize) -> io::Result<()> {
    let rv = &r.canonical_ranks;
    let p = &r.properties;
    let ranks: Vec<String> = rv.ranks().iter().map(u32::to_string).collect();
    writeln!(out, "class {} of {classes} (n = {})", r.class_id, r.n)?;
    writeln!(out, "canonical ranks   {rv} ({})", ranks.join(","))?;
    writeln!(out, "partition         {}", r.partition)?;
    writeln!(out, "orbit size        {} (stabilizer order {})", r.orbit_size, r.stabilizer_order)?;
    writeln!(out)?;
    writeln!(out, "ranks             {}", p.k_ranks)?;
    writeln!(out, "global optima     {}", p.global_optima)?;
    writeln!(out, "suboptima         {} strict, {} weak", p.strict_suboptima, p.weak_suboptima)?;
    writeln!(out, "neutral edges     {} (neutral degree {})", p.neutral_edges, p.neutral_node_count)?;
    writeln!(out, "neutral networks  {}", p.neutral_networks)?;
    writeln!(out, "plateaus          {} optimal, {} suboptimal", p.optimal_plateaus, p.suboptimal_plateaus)?;
    writeln!(
        out,
        "deceptive         {}; neutral {}; plateau {}",
        format!("{:?}", p.deceptive).to_lowercase(),
        yes_no(p.neutral),
        yes_no(p.plateau)
    )?;
    writeln!(out)?;
    writeln!(
        out,
        "{:<14}{:>10}{:>12}{:>12}{:>12}{:>12}{:>12}",
        "climber", "success", "steps ok", "evals ok", "steps fail", "evals fail", "ERT"
    )?;
    for (name, perf) in [("best", &r.perf_best), ("first", &r.perf_first)] {
        for (label, cells) in [(name.to_string(), perf_cells(perf, dec)), (String::new(), perf_cells(perf, to_exact))] {
            writeln!(
                out,
                "{label:<14}{:>10}{:>12}{:>12}{:>12}{:>12}{:>12}",
                cells[0], cells[1], cells[2], cells[3], cells[4], cells[5]
            )?;
        }
    }
    Ok(())
}

pub fn summary(out: &mut impl Write, s: &Summary) -> io::Result<()> {
    let pct = |c: u64| percentage(c, s.classes);
    writeln!(out, "n = {}: {} classes", s.n, s.classes)?;
    writeln!(out)?;
    writeln!(out, "{:<10}{:<9}{:<9}{:>8}{:>9}", "deceptive", "neutral", "plateau", "classes", "%")?;
    for row in &s.crosstab {
        writeln!(
            out,
            "{:<10}{:<9}{:<9}{:>8}{:>9}",
            yes_no(row.deceptive),
            yes_no(row.neutral),
            yes_no(row.plateau),
            row.count,
            row.percentage
        )?;
    }
    writeln!(out)?;
    for (label, count) in [
        ("injective", s.injective),
        ("multiple global optima", s.multiple_global_optima),
        ("deceptive", s.deceptive),
        ("neutral", s.neutral),
        ("plateau", s.plateau),
    ] {
        writeln!(out, "{label:<24}{count:>8}{:>9}%", pct(count))?;
    }
    writeln!(out)?;
    writeln!(out, "{:<10}{:>14}{:>14}{:>10}", "metric", "best better", "first better", "equal")?;
    for (label, t) in [("success", s.success), ("ERT", s.ert)] {
        writeln!(out, "{label:<10}{:>14}{:>14}{:>10}", t.best_better, t.first_better, t.equal)?;
    }
    for (name, h) in &s.histograms {
        writeln!(out)?;
        writeln!(out, "{name}")?;
        for (value, count) in h {
            writeln!(out, "  {value:>6}{count:>8}")?;
        }
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Format(e.to_string())
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), Error> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn cdf_rows(points: &[CdfPoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| vec![to_decimal(&p.threshold, 6), to_exact(&p.threshold), p.count.to_string()])
        .collect()
}

/// Writes `crosstab.csv`, `histograms.csv`, `tallies.csv` and one
/// cumulative-distribution file per metric and climber.
pub fn summary_csv(dir: &Path, s: &Summary) -> Result<(), Error> {
    write_csv(
        &dir.join("crosstab.csv"),
        &["deceptive", "neutral", "plateau", "classes", "percentage"],
        s.crosstab.iter().map(|r| {
            vec![r.deceptive.to_string(), r.neutral.to_string(), r.plateau.to_string(), r.count.to_string(), r.percentage.clone()]
        }),
    )?;
    write_csv(
        &dir.join("histograms.csv"),
        &["property", "value", "classes"],
        s.histograms
            .iter()
            .flat_map(|(name, h)| h.iter().map(move |(v, c)| vec![name.to_string(), v.to_string(), c.to_string()])),
    )?;
    write_csv(
        &dir.join("tallies.csv"),
        &["metric", "best_better", "first_better", "equal"],
        [("success", s.success), ("ert", s.ert)]
            .into_iter()
            .map(|(m, t)| vec![m.to_string(), t.best_better.to_string(), t.first_better.to_string(), t.equal.to_string()]),
    )?;
    for (file, points) in [
        ("cdf_success_best.csv", &s.cdf_success_best),
        ("cdf_success_first.csv", &s.cdf_success_first),
        ("cdf_ert_best.csv", &s.cdf_ert_best),
        ("cdf_ert_first.csv", &s.cdf_ert_first),
    ] {
        write_csv(&dir.join(file), &["threshold", "threshold_exact", "classes"], cdf_rows(points))?;
    }
    Ok(())
}
