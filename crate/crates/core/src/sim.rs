//! Stochastic simulation of the hill climbers, used to cross-check the exact
//! analysis in [`crate::climb`].

use rand::seq::SliceRandom;
use rand::Rng;

use crate::climb::Strategy;
use crate::rankspace::RankVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub success: bool,
    pub steps: u64,
    pub evals: u64,
}

/// Runs one climb from a uniformly random start, evaluating neighbors one at
/// a time.
pub fn run<R: Rng + ?Sized>(rv: &RankVector, strategy: Strategy, rng: &mut R) -> Run {
    let n = rv.dimension().get() as usize;
    let mut x = rng.gen_range(0..rv.dimension().nodes());
    let mut evals = 1;
    let mut steps = 0;
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let current = rv.rank(x);
        let next = match strategy {
            Strategy::Best => {
                evals += n as u64;
                let best = (0..n).map(|b| rv.rank(x ^ (1 << b))).min().unwrap_or(current);
                if best >= current {
                    None
                } else {
                    let ties: Vec<usize> =
                        (0..n).map(|b| x ^ (1 << b)).filter(|&y| rv.rank(y) == best).collect();
                    ties.choose(rng).copied()
                }
            }
            Strategy::First => {
                order.shuffle(rng);
                let mut found = None;
                for &b in &order {
                    evals += 1;
                    let y = x ^ (1 << b);
                    if rv.rank(y) < current {
                        found = Some(y);
                        break;
                    }
                }
                found
            }
        };
        match next {
            Some(y) => {
                x = y;
                steps += 1;
            }
            None => return Run { success: current == 1, steps, evals },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub runs: u64,
    pub successes: u64,
    pub mean_evals: f64,
}

impl Estimate {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.runs as f64
    }

    /// Binomial standard error of the success rate, evaluated at `p`.
    pub fn standard_error(runs: u64, p: f64) -> f64 {
        (p * (1.0 - p) / runs as f64).sqrt()
    }
}

pub fn estimate<R: Rng + ?Sized>(rv: &RankVector, strategy: Strategy, runs: u64, rng: &mut R) -> Estimate {
    let mut successes = 0;
    let mut evals = 0u64;
    for _ in 0..runs {
        let r = run(rv, strategy, rng);
        successes += r.success as u64;
        evals += r.evals;
    }
    Estimate { runs, successes, mean_evals: evals as f64 / runs as f64 }
}
