//! Multiplier databases: consecutive integers `1..=m`, divisor databases of
//! an integer `B`, the builders for interesting `B` (factorial, primorial,
//! lcm), and the capacity heuristics that predict which moduli a database
//! can factor.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{Natural, Rational};
use crate::error::Error;
use crate::yields::{factorize_small, is_prime_u64, yield_closed_form, DEFAULT_FACTOR_BOUND};

/// How the integer `B` behind a divisor database was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BSource {
    Explicit,
    Factorial(u32),
    Primorial(u32),
    LcmUpTo(u32),
}

/// Construction recipe for a test database.
///
/// Text form (shared by every CLI subcommand): `consecutive:m`,
/// `divisors:B`, `divisors:factorial:n`, `divisors:primorial:k`,
/// `divisors:lcm:m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    /// The consecutive integers `1..=m`.
    Consecutive { m: Natural },
    /// All divisors of `b` in ascending order.
    Divisors { b: Natural, source: BSource },
}

impl Recipe {
    pub fn parse(text: &str) -> Result<Recipe, Error> {
        text.parse()
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::BadRecipe {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let natural = |digits: &str, what: &str| -> Result<Natural, Error> {
            digits
                .parse::<Natural>()
                .map_err(|_| bad(&format!("{what} must be a decimal integer")))
        };
        let param = |digits: &str, what: &str| -> Result<u32, Error> {
            let value: u32 = digits
                .parse()
                .map_err(|_| bad(&format!("{what} must be a small decimal integer")))?;
            if value == 0 {
                return Err(bad(&format!("{what} must be at least 1")));
            }
            Ok(value)
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["consecutive", m] => Ok(Recipe::Consecutive {
                m: natural(m, "m")?,
            }),
            ["divisors", b] => {
                let b = natural(b, "B")?;
                if b.is_zero() {
                    return Err(bad("B must be at least 1"));
                }
                Ok(Recipe::Divisors {
                    b,
                    source: BSource::Explicit,
                })
            }
            ["divisors", "factorial", n] => {
                let n = param(n, "n")?;
                Ok(Recipe::Divisors {
                    b: factorial(n)?,
                    source: BSource::Factorial(n),
                })
            }
            ["divisors", "primorial", k] => {
                let k = param(k, "k")?;
                Ok(Recipe::Divisors {
                    b: primorial(k)?,
                    source: BSource::Primorial(k),
                })
            }
            ["divisors", "lcm", m] => {
                let m = param(m, "m")?;
                Ok(Recipe::Divisors {
                    b: lcm_upto(m)?,
                    source: BSource::LcmUpTo(m),
                })
            }
            _ => Err(bad(
                "expected consecutive:m, divisors:B, divisors:factorial:n, \
                 divisors:primorial:k or divisors:lcm:m",
            )),
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Consecutive { m } => write!(f, "consecutive:{m}"),
            Recipe::Divisors { b, source } => match source {
                BSource::Explicit => write!(f, "divisors:{b}"),
                BSource::Factorial(n) => write!(f, "divisors:factorial:{n}"),
                BSource::Primorial(k) => write!(f, "divisors:primorial:{k}"),
                BSource::LcmUpTo(m) => write!(f, "divisors:lcm:{m}"),
            },
        }
    }
}

/// `n!`, rejected once it exceeds [`DEFAULT_FACTOR_BOUND`].
pub fn factorial(n: u32) -> Result<Natural, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("factorial parameter must be >= 1".into()));
    }
    let bound = Natural::from(DEFAULT_FACTOR_BOUND);
    let mut acc = Natural::one();
    for i in 1..=n {
        acc *= Natural::from(i);
        if acc > bound {
            return Err(Error::BoundExceeded {
                context: format!("factorial({n})"),
                value: acc,
                bound,
            });
        }
    }
    Ok(acc)
}

/// Product of the first `k` primes, rejected once it exceeds
/// [`DEFAULT_FACTOR_BOUND`].
pub fn primorial(k: u32) -> Result<Natural, Error> {
    if k == 0 {
        return Err(Error::InvalidInput("primorial parameter must be >= 1".into()));
    }
    let bound = Natural::from(DEFAULT_FACTOR_BOUND);
    let mut acc = Natural::one();
    let mut found = 0u32;
    let mut candidate = 2u64;
    while found < k {
        if is_prime_u64(candidate) {
            acc *= Natural::from(candidate);
            found += 1;
            if acc > bound {
                return Err(Error::BoundExceeded {
                    context: format!("primorial({k})"),
                    value: acc,
                    bound,
                });
            }
        }
        candidate += 1;
    }
    Ok(acc)
}

/// `lcm(1, 2, ..., m)`, rejected once it exceeds [`DEFAULT_FACTOR_BOUND`].
pub fn lcm_upto(m: u32) -> Result<Natural, Error> {
    if m == 0 {
        return Err(Error::InvalidInput("lcm parameter must be >= 1".into()));
    }
    let bound = Natural::from(DEFAULT_FACTOR_BOUND);
    let mut acc = Natural::one();
    for i in 1..=m {
        acc = acc.lcm(&Natural::from(i));
        if acc > bound {
            return Err(Error::BoundExceeded {
                context: format!("lcm_upto({m})"),
                value: acc,
                bound,
            });
        }
    }
    Ok(acc)
}

/// An ordered ascending database of multiplier values.
///
/// Consecutive databases are never materialized; iteration counts upward, so
/// `consecutive:1000000000000` is as cheap to create as `consecutive:5`.
#[derive(Debug, Clone)]
pub struct TestDatabase {
    recipe: Recipe,
    values: Values,
}

#[derive(Debug, Clone)]
enum Values {
    Range { m: Natural },
    List(Vec<Natural>),
}

impl TestDatabase {
    /// The database `[1, 2, ..., m]`. `m = 0` gives the empty database.
    pub fn consecutive(m: Natural) -> Self {
        TestDatabase {
            recipe: Recipe::Consecutive { m: m.clone() },
            values: Values::Range { m },
        }
    }

    /// The divisors of `b` in ascending order.
    pub fn divisors_of(b: Natural) -> Result<Self, Error> {
        Self::from_recipe(Recipe::Divisors {
            b,
            source: BSource::Explicit,
        })
    }

    pub fn from_recipe(recipe: Recipe) -> Result<Self, Error> {
        let values = match &recipe {
            Recipe::Consecutive { m } => Values::Range { m: m.clone() },
            Recipe::Divisors { b, .. } => {
                Values::List(factorize_small(b)?.divisors_ascending())
            }
        };
        Ok(TestDatabase { recipe, values })
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    /// Number of entries: `m` for a consecutive database, `tau(B)` for a
    /// divisor database.
    pub fn len(&self) -> Natural {
        match &self.values {
            Values::Range { m } => m.clone(),
            Values::List(v) => Natural::from(v.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len().is_zero()
    }

    /// Ascending iteration over the values.
    pub fn iter(&self) -> DbIter<'_> {
        match &self.values {
            Values::Range { m } => DbIter::Range {
                next: Natural::one(),
                end: m,
            },
            Values::List(v) => DbIter::List(v.iter()),
        }
    }
}

pub enum DbIter<'a> {
    Range { next: Natural, end: &'a Natural },
    List(std::slice::Iter<'a, Natural>),
}

impl Iterator for DbIter<'_> {
    type Item = Natural;

    fn next(&mut self) -> Option<Natural> {
        match self {
            DbIter::Range { next, end } => {
                if *next > **end {
                    return None;
                }
                let current = next.clone();
                *next += 1u32;
                Some(current)
            }
            DbIter::List(iter) => iter.next().cloned(),
        }
    }
}

/// Capacity heuristic for a consecutive database: `[1..=m]` has a good
/// chance of factoring `N = pq` with imbalance `R = q/p` when
/// `N <= m^3 / R`. Evaluated exactly by cross-multiplication.
pub fn consecutive_capacity_ok(n: &Natural, m: &Natural, r: &Rational) -> bool {
    n * r.numer() <= &(m * m) * m * r.denom()
}

/// Capacity heuristic for a divisor database: the closed-form yield of
/// `b`'s divisor database must be at least `(N*R)^(1/4) * B^(1/8)`. Both
/// sides are raised to the 8th power so the comparison is exact.
pub fn divisor_capacity_ok(n: &Natural, b: &Natural, r: &Rational) -> Result<bool, Error> {
    let y1 = yield_closed_form(&factorize_small(b)?);
    let lhs = y1.pow(8) * r.denom() * r.denom();
    let rhs = &(n * n) * &(r.numer() * r.numer()) * b;
    Ok(lhs >= rhs)
}

/// Smallest `m` for which [`consecutive_capacity_ok`] holds, i.e. the
/// smallest `m` with `m^3 * R_den >= N * R_num`. Never returns less than 1.
pub fn smallest_capable_m(n: &Natural, r: &Rational) -> Natural {
    let target = n * r.numer();
    let den = r.denom();
    let cube = |m: &Natural| &(m * m) * m;
    let mut m = (&target / den).cbrt();
    while &cube(&m) * den < target {
        m += 1u32;
    }
    while m > Natural::one() {
        let prev = &m - 1u32;
        if &cube(&prev) * den >= target {
            m = prev;
        } else {
            break;
        }
    }
    m.max(Natural::one())
}

/// A modulus paired with its (assumed) factor-imbalance ratio, for asking
/// capacity questions about candidate databases.
///
/// `R` is unknowable while `N` is still unfactored; callers supply it as an
/// assumption and the harness back-fills the true value after the fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityParams {
    n: Natural,
    r: Rational,
}

impl CapacityParams {
    /// Requires `r > 1`.
    pub fn new(n: Natural, r: Rational) -> Result<Self, Error> {
        if r <= Rational::one() {
            return Err(Error::RatioNotAboveOne {
                num: r.numer().clone(),
                den: r.denom().clone(),
            });
        }
        Ok(CapacityParams { n, r })
    }

    pub fn modulus(&self) -> &Natural {
        &self.n
    }

    pub fn ratio(&self) -> &Rational {
        &self.r
    }

    pub fn consecutive_ok(&self, m: &Natural) -> bool {
        consecutive_capacity_ok(&self.n, m, &self.r)
    }

    pub fn divisors_ok(&self, b: &Natural) -> Result<bool, Error> {
        divisor_capacity_ok(&self.n, b, &self.r)
    }

    pub fn smallest_consecutive_m(&self) -> Natural {
        smallest_capable_m(&self.n, &self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yields::{tau, yield_prefix_counts};

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    fn ratio(num: u64, den: u64) -> Rational {
        Rational::new(nat(num), nat(den))
    }

    fn collect(db: &TestDatabase) -> Vec<u64> {
        db.iter().map(|v| u64::try_from(&v).unwrap()).collect()
    }

    #[test]
    fn consecutive_examples() {
        let db = TestDatabase::consecutive(nat(5));
        assert_eq!(collect(&db), vec![1, 2, 3, 4, 5]);
        assert_eq!(db.len(), nat(5));

        let db = TestDatabase::consecutive(nat(1));
        assert_eq!(collect(&db), vec![1]);

        let db = TestDatabase::consecutive(nat(200));
        assert_eq!(db.iter().nth(169), Some(nat(170)));

        assert!(TestDatabase::consecutive(nat(0)).is_empty());
    }

    #[test]
    fn consecutive_is_lazy() {
        let db = TestDatabase::consecutive(Natural::from(10u64).pow(18));
        let head: Vec<Natural> = db.iter().take(3).collect();
        assert_eq!(head, vec![nat(1), nat(2), nat(3)]);
    }

    #[test]
    fn divisor_examples() {
        let db = TestDatabase::divisors_of(nat(12)).unwrap();
        assert_eq!(collect(&db), vec![1, 2, 3, 4, 6, 12]);
        let db = TestDatabase::divisors_of(nat(30)).unwrap();
        assert_eq!(collect(&db), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        let db = TestDatabase::divisors_of(nat(13)).unwrap();
        assert_eq!(collect(&db), vec![1, 13]);
    }

    #[test]
    fn divisor_db_length_is_tau_to_1e4() {
        for b in 1u64..=10_000 {
            let db = TestDatabase::divisors_of(nat(b)).unwrap();
            assert_eq!(db.len(), tau(&nat(b)), "length != tau at B = {b}");
        }
    }

    #[test]
    fn builder_examples() {
        assert_eq!(factorial(4).unwrap(), nat(24));
        assert_eq!(primorial(3).unwrap(), nat(30));
        assert_eq!(lcm_upto(6).unwrap(), nat(60));
        assert_eq!(primorial(1).unwrap(), nat(2));
    }

    #[test]
    fn builder_bounds() {
        // 14! fits under 10^12, 15! does not
        assert!(factorial(14).is_ok());
        assert!(matches!(factorial(15), Err(Error::BoundExceeded { .. })));
        // primorial(11) = 200560490130, primorial(12) brings in 37
        assert!(primorial(11).is_ok());
        assert!(matches!(primorial(12), Err(Error::BoundExceeded { .. })));
        // lcm(1..=28) = 80313433200, the 29 pushes it over
        assert!(lcm_upto(28).is_ok());
        assert!(matches!(lcm_upto(29), Err(Error::BoundExceeded { .. })));
        // parameter 0 rejected for all three
        assert!(factorial(0).is_err());
        assert!(primorial(0).is_err());
        assert!(lcm_upto(0).is_err());
    }

    #[test]
    fn recipe_parse_and_display() {
        let cases = [
            "consecutive:5",
            "divisors:12",
            "divisors:factorial:4",
            "divisors:primorial:3",
            "divisors:lcm:6",
        ];
        for text in cases {
            let recipe = Recipe::parse(text).unwrap();
            assert_eq!(recipe.to_string(), text);
        }
        assert_eq!(
            Recipe::parse("divisors:factorial:4").unwrap(),
            Recipe::Divisors {
                b: nat(24),
                source: BSource::Factorial(4)
            }
        );
    }

    #[test]
    fn recipe_parse_rejects_garbage() {
        for text in [
            "",
            "consecutive",
            "consecutive:",
            "consecutive:-3",
            "consecutive:big",
            "divisors",
            "divisors:0",
            "divisors:factorial:0",
            "divisors:primorial:x",
            "divisors:lcm:3:4",
            "primes:10",
        ] {
            assert!(Recipe::parse(text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn recipe_database_matches_builder() {
        let db = TestDatabase::from_recipe(Recipe::parse("divisors:factorial:4").unwrap()).unwrap();
        assert_eq!(collect(&db), vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(db.recipe().to_string(), "divisors:factorial:4");
    }

    #[test]
    fn consecutive_capacity_examples() {
        assert!(consecutive_capacity_ok(&nat(1000), &nat(100), &ratio(2, 1)));
        assert!(!consecutive_capacity_ok(&nat(1_000_000), &nat(100), &ratio(2, 1)));
        // N = m^3 with any R > 1 fails the boundary
        let m = nat(50);
        let n = &(&m * &m) * &m;
        assert!(!consecutive_capacity_ok(&n, &m, &ratio(1_000_001, 1_000_000)));
        assert!(consecutive_capacity_ok(&n, &m, &ratio(1, 1)));
    }

    #[test]
    fn divisor_capacity_examples() {
        // B = 30 has Y1 = 27; 27^8 = 282429536481 >= 100^2 * 2^2 * 30
        assert!(divisor_capacity_ok(&nat(100), &nat(30), &ratio(2, 1)).unwrap());
        // B = 1 has Y1 = 1, which can never cover N >= 2
        assert!(!divisor_capacity_ok(&nat(2), &nat(1), &ratio(2, 1)).unwrap());
        // exact equality counts as capable: Y1(4)^8 * 2^2 = 25^2 * 25^2 * 4
        assert!(divisor_capacity_ok(&nat(25), &nat(4), &ratio(25, 2)).unwrap());
        // one more than the equality point fails
        assert!(!divisor_capacity_ok(&nat(26), &nat(4), &ratio(25, 2)).unwrap());
    }

    #[test]
    fn smallest_capable_m_is_minimal() {
        for (n, r) in [
            (nat(1000), ratio(2, 1)),
            (nat(524_287), ratio(3, 2)),
            (nat(1), ratio(9, 8)),
            (nat(1_000_000), ratio(4, 1)),
        ] {
            let m = smallest_capable_m(&n, &r);
            assert!(consecutive_capacity_ok(&n, &m, &r), "m too small for {n}");
            if m > nat(1) {
                let prev = &m - 1u32;
                assert!(!consecutive_capacity_ok(&n, &prev, &r), "m not minimal for {n}");
            }
        }
    }

    #[test]
    fn capacity_params_validation() {
        assert!(CapacityParams::new(nat(100), ratio(3, 2)).is_ok());
        assert!(matches!(
            CapacityParams::new(nat(100), ratio(1, 1)),
            Err(Error::RatioNotAboveOne { .. })
        ));
        assert!(CapacityParams::new(nat(100), ratio(2, 4)).is_err());
    }

    #[test]
    fn consecutive_yield_bounds_to_300() {
        // m - 1 <= Y(D0(m)) for m >= 2, m <= Y(D0(m)) for m >= 6, and
        // Y(D0(m)) <= sum of tau(k) for k <= m
        let counts = yield_prefix_counts(300);
        let mut tau_sum = 0u64;
        for m in 1u64..=300 {
            tau_sum += u64::try_from(&tau(&nat(m))).unwrap();
            let y = counts[m as usize - 1];
            if m >= 2 {
                assert!(y >= m - 1, "Y(D0({m})) = {y} below m - 1");
            }
            if m >= 6 {
                assert!(y >= m, "Y(D0({m})) = {y} below m");
            }
            assert!(y <= tau_sum, "Y(D0({m})) = {y} above divisor sum {tau_sum}");
        }
    }
}
