mod render;
mod report;
mod verify;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankland_core::atlas::{self, Atlas};
use rankland_core::canon::count_injective_classes;
use rankland_core::rankspace::{count_rankings, partition_count};
use rankland_core::{Cap, Dimension, Error};

#[derive(Parser)]
#[command(name = "rankland", version, about = "Inventory of low-dimensional pseudo-Boolean rank landscapes")]
struct Cli {
    /// Largest dimension for which exhaustive enumeration is allowed.
    #[arg(long, global = true, default_value_t = 3)]
    max_n: u32,

    /// Round fitness values to multiples of this step before ranking (0 keeps
    /// exact ties only).
    #[arg(long, global = true, default_value_t = 0.0)]
    tie_epsilon: f64,

    /// Seed for the simulation checks.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print partition and ranking counts per number of ranks.
    Counts {
        #[arg(long)]
        n: u32,
    },
    /// Enumerate and analyse every class of dimension n and write the atlas.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
        /// Also write the flat CSV table.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Find the class of a fitness table.
    Lookup {
        #[command(flatten)]
        source: Source,
        /// Comma-separated fitness values, node 0…0 first.
        #[arg(long, allow_hyphen_values = true)]
        fitness: String,
    },
    /// Write a class as a dot graph.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        class_id: usize,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarise an atlas: cross-tab, histograms, tallies and distributions.
    Stats {
        #[command(flatten)]
        source: Source,
        /// Directory for the CSV summaries.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
    },
    /// Check the inventory against reference values.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        /// Simulated climbs per class and climber in the full check.
        #[arg(long, default_value_t = 1_000_000)]
        runs: u64,
    },
}

/// Where an atlas comes from: a file, or built in memory for `--n`.
#[derive(Args)]
struct Source {
    /// Atlas file written by `build`.
    #[arg(long)]
    atlas: Option<PathBuf>,
    /// Dimension; builds the atlas in memory when no file is given.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

enum Failure {
    Usage(String),
    Core(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(Error::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) | Error::NotFound(_) => 2,
                Error::Capacity { .. } => 3,
                Error::Format(_) | Error::Io(_) => 4,
            })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if !(cli.tie_epsilon.is_finite() && cli.tie_epsilon >= 0.0) {
        return Err(Failure::Usage(format!("--tie-epsilon must be a finite non-negative number, got {}", cli.tie_epsilon)));
    }
    let cap = Cap(cli.max_n);
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Counts { n } => counts(&mut out, Dimension::new(*n)?),
        Command::Build { n, out: path, csv } => {
            let start = Instant::now();
            let atlas = atlas::build(Dimension::new(*n)?, cap)?;
            atlas::write_atlas(&atlas, BufWriter::new(File::create(path)?))?;
            if let Some(csv) = csv {
                atlas::write_table(&atlas, BufWriter::new(File::create(csv)?))?;
            }
            writeln!(
                out,
                "wrote {} classes for n = {n} ({} rankings) to {} in {:.2}s",
                atlas.records.len(),
                atlas.provenance.total_rankings,
                path.display(),
                start.elapsed().as_secs_f64()
            )?;
            Ok(())
        }
        Command::Lookup { source, fitness } => {
            let mut values = parse_fitness(fitness)?;
            if cli.tie_epsilon > 0.0 {
                for v in &mut values {
                    *v = (*v / cli.tie_epsilon).round() * cli.tie_epsilon;
                }
            }
            let n = match source.n {
                Some(n) => Some(Dimension::new(n)?),
                None if source.atlas.is_none() => Some(dimension_of(values.len())?),
                None => None,
            };
            let expected = |n: Dimension| -> Outcome {
                if values.len() == n.nodes() {
                    Ok(())
                } else {
                    Err(Failure::Usage(format!("n = {n} needs {} fitness values, got {}", n.nodes(), values.len())))
                }
            };
            if let Some(n) = n {
                expected(n)?;
            }
            let atlas = load(&Source { atlas: source.atlas.clone(), n: n.map(Dimension::get) }, cap)?;
            expected(atlas.dimension())?;
            let record = atlas.lookup(&values)?;
            report::record(&mut out, record, atlas.records.len())?;
            Ok(())
        }
        Command::Render { source, class_id, out: path } => {
            let atlas = load(source, cap)?;
            let dot = render::dot(atlas.get(*class_id)?);
            match path {
                Some(path) => std::fs::write(path, dot)?,
                None => out.write_all(dot.as_bytes())?,
            }
            Ok(())
        }
        Command::Stats { source, csv_dir } => {
            let atlas = load(source, cap)?;
            let summary = atlas::stats(&atlas);
            report::summary(&mut out, &summary)?;
            if let Some(dir) = csv_dir {
                std::fs::create_dir_all(dir)?;
                report::summary_csv(dir, &summary)?;
                writeln!(out, "\nCSV summaries written to {}", dir.display())?;
            }
            Ok(())
        }
        Command::Verify { level, runs } => {
            let passed = verify::run(&mut out, *level, cap, cli.seed, *runs)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn counts(out: &mut impl Write, n: Dimension) -> Outcome {
    let c = count_rankings(n);
    let partitions: Vec<_> = (1..=n.nodes() as u32).map(|k| partition_count(n, k)).collect();
    let total_partitions: num_bigint::BigUint = partitions.iter().sum();
    writeln!(out, "n = {n}: {} nodes", n.nodes())?;
    writeln!(out, "{:>6}  {:>12}  {:>28}", "k", "partitions", "rankings")?;
    for (k, (p, f)) in partitions.iter().zip(&c.per_k).enumerate() {
        writeln!(out, "{:>6}  {p:>12}  {f:>28}", k + 1)?;
    }
    writeln!(out, "{:>6}  {total_partitions:>12}  {:>28}", "total", c.total)?;
    writeln!(out, "injective classes: {}", count_injective_classes(n))?;
    Ok(())
}

fn parse_fitness(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Usage(format!("not a finite number in --fitness: {s:?}")))
        })
        .collect()
}

fn dimension_of(len: usize) -> Result<Dimension, Failure> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Failure::Usage(format!("{len} fitness values is not 2^n for any n ≥ 1; pass --n")));
    }
    Ok(Dimension::new(len.trailing_zeros())?)
}

fn load(source: &Source, cap: Cap) -> Result<Atlas, Failure> {
    match (&source.atlas, source.n) {
        (Some(path), n) => {
            let atlas = read(path)?;
            if let Some(n) = n {
                if atlas.dimension().get() != n {
                    return Err(Failure::Core(Error::NotFound(format!(
                        "{} holds n = {}, not n = {n}",
                        path.display(),
                        atlas.dimension()
                    ))));
                }
            }
            Ok(atlas)
        }
        (None, Some(n)) => Ok(atlas::build(Dimension::new(n)?, cap)?),
        (None, None) => Err(Failure::Usage("pass --atlas <file> or --n <dimension>".into())),
    }
}

fn read(path: &Path) -> Result<Atlas, Failure> {
    let file = File::open(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    Ok(atlas::read_atlas(BufReader::new(file))?)
}
