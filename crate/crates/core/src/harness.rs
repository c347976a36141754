//! Empirical cost measurement: seeded semiprime generation, database scans,
//! CSV reporting, and strategy comparison.
//!
//! Cost is the metric that matters here: the number of multiplier values
//! that had to be tested before one succeeded. Wall-clock time is recorded
//! as a courtesy but carries no methodological weight.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::arith::{Natural, Rational};
use crate::db::{Recipe, TestDatabase};
use crate::error::Error;
use crate::factor::{try_multiplier, TestOutcome};
use crate::yields::is_prime_u64;

/// Name of the pseudo-random generator recorded in CSV metadata. The
/// generator is part of the reproducibility contract: same name + seed +
/// parameters means byte-identical sample sets.
pub const GENERATOR_NAME: &str = "chacha20";

/// Largest prime bit length the verified small-prime table covers.
pub const PRIME_TABLE_MAX_BITS: u32 = 20;

/// A semiprime with known factors, used as ground truth by the benchmark.
///
/// Factors are stored smaller-first, so the imbalance ratio is `r = q/p > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiprimeSpec {
    pub p: Natural,
    pub q: Natural,
    pub n: Natural,
    pub r: Rational,
}

impl SemiprimeSpec {
    /// Builds a spec from two distinct odd primes (in either order). Both
    /// values are re-verified by trial division.
    pub fn new(a: Natural, b: Natural) -> Result<Self, Error> {
        let check = |x: &Natural| -> Result<u64, Error> {
            let v = x.to_u64().ok_or_else(|| {
                Error::InvalidSemiprime(format!("{x} is beyond the verified prime table"))
            })?;
            if v == 2 || !is_prime_u64(v) {
                return Err(Error::InvalidSemiprime(format!("{x} is not an odd prime")));
            }
            Ok(v)
        };
        let (av, bv) = (check(&a)?, check(&b)?);
        if av == bv {
            return Err(Error::InvalidSemiprime("prime factors must be distinct".into()));
        }
        let (p, q) = if av < bv { (a, b) } else { (b, a) };
        let n = &p * &q;
        let r = Rational::new(q.clone(), p.clone());
        Ok(SemiprimeSpec { p, q, n, r })
    }
}

/// One cost measurement: a modulus scanned against one database.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub n: Natural,
    pub recipe: Recipe,
    /// Number of multiplier values actually tested (skipped values, i.e.
    /// those with `d >= N/2`, do not count).
    pub cost: u64,
    pub success: bool,
    pub winning_d: Option<Natural>,
    /// Factor pair, smaller-first, when the scan succeeded.
    pub factors: Option<(Natural, Natural)>,
    pub elapsed: Duration,
}

/// Scans `db` in ascending order and reports the first multiplier that
/// factors `n`.
///
/// Values `d >= n/2` are outside the test's validity range; since the
/// database is ascending they form a suffix, so the scan simply stops when
/// it reaches them. Failure (exhaustion or hitting `max_scan`) is a recorded
/// outcome, not an error.
pub fn factor_with_db(n: &Natural, db: &TestDatabase, max_scan: Option<u64>) -> BenchRecord {
    let start = Instant::now();
    let mut tested = 0u64;
    let mut found = None;
    if *n >= Natural::from(4u32) {
        for d in db.iter() {
            if (&d << 1usize) >= *n {
                break;
            }
            if max_scan.is_some_and(|cap| tested >= cap) {
                break;
            }
            tested += 1;
            if let Ok(TestOutcome::Factored(res)) = try_multiplier(n, &d) {
                found = Some(res);
                break;
            }
        }
    }
    match found {
        Some(res) => BenchRecord {
            n: n.clone(),
            recipe: db.recipe().clone(),
            cost: tested,
            success: true,
            winning_d: Some(res.multiplier),
            factors: Some(res.factors),
            elapsed: start.elapsed(),
        },
        None => BenchRecord {
            n: n.clone(),
            recipe: db.recipe().clone(),
            cost: tested,
            success: false,
            winning_d: None,
            factors: None,
            elapsed: start.elapsed(),
        },
    }
}

fn odd_primes_with_bit_length(bits: u32) -> Vec<u64> {
    let hi = 1u64 << bits;
    let lo = hi >> 1;
    let mut composite = vec![false; hi as usize];
    let mut primes = Vec::new();
    for candidate in 2..hi {
        if !composite[candidate as usize] {
            if candidate >= lo && candidate != 2 {
                primes.push(candidate);
            }
            let mut multiple = candidate * candidate;
            while multiple < hi {
                composite[multiple as usize] = true;
                multiple += candidate;
            }
        }
    }
    primes
}

/// Draws `n_samples` deterministic pseudo-random pairs of distinct odd
/// primes with exactly `bit_size` bits, optionally rejecting pairs whose
/// imbalance ratio exceeds `r_max`.
///
/// Identical arguments always produce the identical sample list.
pub fn generate_semiprimes(
    bit_size: u32,
    n_samples: usize,
    seed: u64,
    r_max: Option<&Rational>,
) -> Result<Vec<SemiprimeSpec>, Error> {
    if !(2..=PRIME_TABLE_MAX_BITS).contains(&bit_size) {
        return Err(Error::InvalidInput(format!(
            "bit_size must be between 2 and {PRIME_TABLE_MAX_BITS}, got {bit_size}"
        )));
    }
    let primes = odd_primes_with_bit_length(bit_size);
    if primes.len() < 2 {
        return Err(Error::Unsatisfiable(format!(
            "need two distinct odd primes of {bit_size} bits, table has {}",
            primes.len()
        )));
    }
    if let Some(rm) = r_max {
        if *rm <= Rational::from_integer(Natural::from(1u32)) {
            return Err(Error::Unsatisfiable(
                "no pair of distinct primes has ratio <= 1".into(),
            ));
        }
    }

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let budget = (n_samples as u64).saturating_mul(1000) + 1000;
    let mut attempts = 0u64;
    let mut out = Vec::with_capacity(n_samples);
    while out.len() < n_samples {
        attempts += 1;
        if attempts > budget {
            return Err(Error::Unsatisfiable(format!(
                "gave up after {budget} draws: constraints too tight \
                 (bit_size={bit_size}, n_samples={n_samples})"
            )));
        }
        let i = (rng.next_u64() % primes.len() as u64) as usize;
        let j = (rng.next_u64() % primes.len() as u64) as usize;
        if i == j {
            continue;
        }
        let (p, q) = (primes[i].min(primes[j]), primes[i].max(primes[j]));
        let r = Rational::new(Natural::from(q), Natural::from(p));
        if let Some(rm) = r_max {
            if r > *rm {
                continue;
            }
        }
        out.push(SemiprimeSpec {
            p: Natural::from(p),
            q: Natural::from(q),
            n: Natural::from(p) * Natural::from(q),
            r,
        });
    }
    Ok(out)
}

/// A benchmark row: the ground-truth spec together with its measurement.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub spec: SemiprimeSpec,
    pub record: BenchRecord,
}

/// Per-recipe aggregate over a benchmark run.
#[derive(Debug, Clone)]
pub struct RecipeSummary {
    pub recipe: Recipe,
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_cost: f64,
    pub cost_q1: f64,
    pub cost_median: f64,
    pub cost_q3: f64,
}

/// Runs every spec against every recipe (spec-major order). Cells are
/// measured in parallel but merged in input order, so the result is
/// deterministic.
pub fn compare_strategies(
    specs: &[SemiprimeSpec],
    recipes: &[Recipe],
    max_scan: Option<u64>,
) -> Result<(Vec<BenchRow>, Vec<RecipeSummary>), Error> {
    let dbs: Vec<TestDatabase> = recipes
        .iter()
        .map(|r| TestDatabase::from_recipe(r.clone()))
        .collect::<Result<_, _>>()?;
    let cells: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|i| (0..dbs.len()).map(move |j| (i, j)))
        .collect();
    let rows: Vec<BenchRow> = cells
        .par_iter()
        .map(|&(i, j)| BenchRow {
            spec: specs[i].clone(),
            record: factor_with_db(&specs[i].n, &dbs[j], max_scan),
        })
        .collect();

    let mut summaries = Vec::with_capacity(recipes.len());
    for (j, recipe) in recipes.iter().enumerate() {
        let costs: Vec<u64> = rows
            .iter()
            .skip(j)
            .step_by(recipes.len().max(1))
            .map(|row| row.record.cost)
            .collect();
        let successes = rows
            .iter()
            .skip(j)
            .step_by(recipes.len().max(1))
            .filter(|row| row.record.success)
            .count();
        summaries.push(summarize_one(recipe.clone(), &costs, successes));
    }
    Ok((rows, summaries))
}

fn summarize_one(recipe: Recipe, costs: &[u64], successes: usize) -> RecipeSummary {
    let runs = costs.len();
    let mut sorted = costs.to_vec();
    sorted.sort_unstable();
    let mean = if runs == 0 {
        0.0
    } else {
        sorted.iter().sum::<u64>() as f64 / runs as f64
    };
    RecipeSummary {
        recipe,
        runs,
        successes,
        success_rate: if runs == 0 {
            0.0
        } else {
            successes as f64 / runs as f64
        },
        mean_cost: mean,
        cost_q1: percentile(&sorted, 0.25),
        cost_median: percentile(&sorted, 0.5),
        cost_q3: percentile(&sorted, 0.75),
    }
}

/// Linear-interpolation percentile of an ascending slice.
fn percentile(sorted: &[u64], p: f64) -> f64 {
    match sorted.len() {
        0 => 0.0,
        1 => sorted[0] as f64,
        len => {
            let pos = p * (len - 1) as f64;
            let lo = pos.floor() as usize;
            let frac = pos - lo as f64;
            if lo + 1 < len {
                sorted[lo] as f64 * (1.0 - frac) + sorted[lo + 1] as f64 * frac
            } else {
                sorted[lo] as f64
            }
        }
    }
}

/// Metadata recorded at the top of a benchmark CSV so a run can be
/// reproduced exactly.
#[derive(Debug, Clone)]
pub struct CsvMeta {
    pub seed: u64,
    pub bits: u32,
    pub count: usize,
}

/// Writes benchmark rows as CSV. The column header is fixed; a `#` metadata
/// line with the generator name and seed precedes it when `meta` is given.
pub fn write_csv<W: Write>(
    out: &mut W,
    meta: Option<&CsvMeta>,
    rows: &[BenchRow],
) -> io::Result<()> {
    if let Some(meta) = meta {
        writeln!(
            out,
            "# rng={GENERATOR_NAME} seed={} bits={} count={}",
            meta.seed, meta.bits, meta.count
        )?;
    }
    writeln!(out, "N,p,q,R_num,R_den,recipe,cost,success,winning_d,elapsed_ms")?;
    for row in rows {
        let winning = row
            .record
            .winning_d
            .as_ref()
            .map(|d| d.to_string())
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            row.spec.n,
            row.spec.p,
            row.spec.q,
            row.spec.r.numer(),
            row.spec.r.denom(),
            row.record.recipe,
            row.record.cost,
            row.record.success,
            winning,
            row.record.elapsed.as_millis()
        )?;
    }
    Ok(())
}

/// Renders summaries as an aligned text block (one line per recipe).
pub fn render_summary(summaries: &[RecipeSummary]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<32} {:>6} {:>6} {:>6} {:>10} {:>8} {:>8} {:>8}\n",
        "recipe", "runs", "ok", "rate", "mean_cost", "q1", "median", "q3"
    ));
    for s in summaries {
        out.push_str(&format!(
            "{:<32} {:>6} {:>6} {:>6.3} {:>10.2} {:>8.2} {:>8.2} {:>8.2}\n",
            s.recipe.to_string(),
            s.runs,
            s.successes,
            s.success_rate,
            s.mean_cost,
            s.cost_q1,
            s.cost_median,
            s.cost_q3
        ));
    }
    out
}
