//! The yield function: counting the distinct reduced fractions realized by a
//! multiplier or a set of multipliers, plus divisor counting, trial-division
//! factorization, and the closed-form yield of a divisor database.
//!
//! A multiplier `d` *realizes* the reduced fraction `x/y` (with
//! `0 < x/y < 1`) when `x*y*z^2 = d` for some integer `z`. The yield of `d`
//! is the number of distinct fractions realized; the yield of a set is the
//! size of the union. More realized fractions means more chances for one of
//! them to approximate the hidden factor ratio p/q closely enough to factor.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Natural;
use crate::error::Error;

/// Largest integer the trial-division factorizer accepts by default.
///
/// The toolkit measures factoring cost; it must not quietly pretend to
/// factor arbitrary integers itself.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000_000;

/// A fraction `x/y` in lowest terms with `0 < x/y < 1`.
///
/// Ordered by value (cross-multiplication), so sets of fractions iterate
/// ascending. Serializes as `x/y` in decimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    num: Natural,
    den: Natural,
}

impl ReducedFraction {
    /// Builds a fraction, reducing to lowest terms. The value must lie
    /// strictly between 0 and 1.
    pub fn new(num: Natural, den: Natural) -> Result<Self, Error> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::InvalidInput(
                "fraction numerator and denominator must be positive".into(),
            ));
        }
        if num >= den {
            return Err(Error::InvalidInput(
                "fraction must lie strictly between 0 and 1".into(),
            ));
        }
        let g = num.gcd(&den);
        Ok(ReducedFraction {
            num: num / &g,
            den: den / &g,
        })
    }

    pub fn numer(&self) -> &Natural {
        &self.num
    }

    pub fn denom(&self) -> &Natural {
        &self.den
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All reduced fractions realized by `d`: for each square divisor `z^2` of
/// `d`, every divisor pair `a < b` of `d / z^2` contributes `a/b` reduced.
pub fn fractions_of(d: &Natural) -> BTreeSet<ReducedFraction> {
    let mut out = BTreeSet::new();
    match d.to_u64() {
        Some(d64) => collect_fractions_u64(d64, &mut out),
        None => collect_fractions_big(d, &mut out),
    }
    out
}

fn collect_fractions_u64(d: u64, out: &mut BTreeSet<ReducedFraction>) {
    let mut z = 1u64;
    while z.checked_mul(z).is_some_and(|zz| zz <= d && d > 0) {
        let zz = z * z;
        if d.is_multiple_of(zz) {
            let e = d / zz;
            let mut a = 1u64;
            while a.checked_mul(a).is_some_and(|aa| aa < e) {
                if e.is_multiple_of(a) {
                    let b = e / a;
                    let g = a.gcd(&b);
                    out.insert(ReducedFraction {
                        num: Natural::from(a / g),
                        den: Natural::from(b / g),
                    });
                }
                a += 1;
            }
        }
        z += 1;
    }
}

fn collect_fractions_big(d: &Natural, out: &mut BTreeSet<ReducedFraction>) {
    let mut z = Natural::one();
    while &(&z * &z) <= d {
        let zz = &z * &z;
        if (d % &zz).is_zero() {
            let e = d / &zz;
            let mut a = Natural::one();
            while &a * &a < e {
                if (&e % &a).is_zero() {
                    let b = &e / &a;
                    let g = a.gcd(&b);
                    out.insert(ReducedFraction {
                        num: &a / &g,
                        den: &b / &g,
                    });
                }
                a += 1u32;
            }
        }
        z += 1u32;
    }
}

/// Number of distinct reduced fractions realized by `d`.
pub fn yield_of(d: &Natural) -> u64 {
    fractions_of(d).len() as u64
}

/// The union of realized fractions over a set of multipliers. Overlaps
/// collapse: a fraction realized by two members counts once.
pub fn fractions_of_set(set: &[Natural]) -> BTreeSet<ReducedFraction> {
    let mut out = BTreeSet::new();
    for d in set {
        match d.to_u64() {
            Some(d64) => collect_fractions_u64(d64, &mut out),
            None => collect_fractions_big(d, &mut out),
        }
    }
    out
}

/// Number of distinct reduced fractions realized by any member of the set.
pub fn yield_of_set(set: &[Natural]) -> u64 {
    fractions_of_set(set).len() as u64
}

/// Yields of the consecutive databases `[1..=1], [1..=2], ..., [1..=m_max]`,
/// computed in one incremental pass. Entry `i` is the yield of `[1..=i+1]`.
pub fn yield_prefix_counts(m_max: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(m_max as usize);
    let mut acc = BTreeSet::new();
    for d in 1..=m_max {
        collect_fractions_u64(d, &mut acc);
        out.push(acc.len() as u64);
    }
    out
}

/// Divisor count of `d` by direct pair scan.
pub fn tau(d: &Natural) -> Natural {
    match d.to_u64() {
        Some(0) => Natural::zero(),
        Some(d64) => {
            let mut count = 0u64;
            let mut a = 1u64;
            while a.checked_mul(a).is_some_and(|aa| aa <= d64) {
                if d64 % a == 0 {
                    count += if a * a == d64 { 1 } else { 2 };
                }
                a += 1;
            }
            Natural::from(count)
        }
        None => {
            let mut count = Natural::zero();
            let mut a = Natural::one();
            while &(&a * &a) <= d {
                if (d % &a).is_zero() {
                    count += if &(&a * &a) == d { 1u32 } else { 2u32 };
                }
                a += 1u32;
            }
            count
        }
    }
}

/// Prime-power factorization `p1^r1 * p2^r2 * ... * pk^rk` with strictly
/// increasing primes and exponents >= 1. The empty factorization represents
/// the integer 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerFactorization {
    terms: Vec<(Natural, u32)>,
}

impl PrimePowerFactorization {
    /// Validates and wraps explicit terms: primes strictly increasing, every
    /// exponent >= 1, every base actually prime.
    pub fn new(terms: Vec<(Natural, u32)>) -> Result<Self, Error> {
        let mut prev: Option<&Natural> = None;
        for (p, r) in &terms {
            if *r == 0 {
                return Err(Error::InvalidInput("exponents must be >= 1".into()));
            }
            if !is_small_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if let Some(prev) = prev {
                if prev >= p {
                    return Err(Error::InvalidInput(
                        "primes must be strictly increasing".into(),
                    ));
                }
            }
            prev = Some(p);
        }
        Ok(PrimePowerFactorization { terms })
    }

    pub fn terms(&self) -> &[(Natural, u32)] {
        &self.terms
    }

    /// Reconstructs the factored integer.
    pub fn value(&self) -> Natural {
        let mut v = Natural::one();
        for (p, r) in &self.terms {
            v *= p.pow(*r);
        }
        v
    }

    /// `tau` of the factored integer: the product of `(r_i + 1)`.
    pub fn divisor_count(&self) -> Natural {
        let mut c = Natural::one();
        for (_, r) in &self.terms {
            c *= Natural::from(r + 1);
        }
        c
    }

    /// All divisors of the factored integer in increasing order.
    pub fn divisors_ascending(&self) -> Vec<Natural> {
        let mut divisors = vec![Natural::one()];
        for (p, r) in &self.terms {
            let mut next = Vec::with_capacity(divisors.len() * (*r as usize + 1));
            let mut power = Natural::one();
            for _ in 0..=*r {
                for d in &divisors {
                    next.push(d * &power);
                }
                power *= p;
            }
            divisors = next;
        }
        divisors.sort_unstable();
        divisors
    }
}

fn is_small_prime(p: &Natural) -> bool {
    p.to_u64().is_some_and(is_prime_u64)
}

/// Trial-division primality for table-sized integers.
pub(crate) fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut a = 3u64;
    while a.checked_mul(a).is_some_and(|aa| aa <= p) {
        if p.is_multiple_of(a) {
            return false;
        }
        a += 2;
    }
    true
}

/// Exact factorization by trial division under [`DEFAULT_FACTOR_BOUND`].
pub fn factorize_small(b: &Natural) -> Result<PrimePowerFactorization, Error> {
    factorize_small_bounded(b, &Natural::from(DEFAULT_FACTOR_BOUND))
}

/// Exact factorization by trial division with an explicit bound. Inputs
/// above the bound are rejected: factoring arbitrary integers is the problem
/// under study, not a service this toolkit provides.
pub fn factorize_small_bounded(
    b: &Natural,
    bound: &Natural,
) -> Result<PrimePowerFactorization, Error> {
    if b.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    if b > bound {
        return Err(Error::BoundExceeded {
            context: "trial-division factorization".into(),
            value: b.clone(),
            bound: bound.clone(),
        });
    }
    let mut terms: Vec<(Natural, u32)> = Vec::new();
    if let Some(mut rem) = b.to_u64() {
        let mut push = |p: u64, r: u32| terms.push((Natural::from(p), r));
        let strip = |rem: &mut u64, p: u64| {
            let mut r = 0u32;
            while (*rem).is_multiple_of(p) {
                *rem /= p;
                r += 1;
            }
            r
        };
        for p in [2u64, 3] {
            let r = strip(&mut rem, p);
            if r > 0 {
                push(p, r);
            }
        }
        // 6k +- 1 wheel
        let mut p = 5u64;
        while p.checked_mul(p).is_some_and(|pp| pp <= rem) {
            for q in [p, p + 2] {
                let r = strip(&mut rem, q);
                if r > 0 {
                    push(q, r);
                }
            }
            p += 6;
        }
        if rem > 1 {
            push(rem, 1);
        }
    } else {
        // only reachable with a bound above u64::MAX
        let mut rem = b.clone();
        let mut p = Natural::from(2u32);
        while (&p * &p) <= rem {
            let mut r = 0u32;
            while (&rem % &p).is_zero() {
                rem /= &p;
                r += 1;
            }
            if r > 0 {
                terms.push((p.clone(), r));
            }
            p += if p == Natural::from(2u32) { 1u32 } else { 2u32 };
        }
        if rem > Natural::one() {
            terms.push((rem, 1));
        }
    }
    Ok(PrimePowerFactorization { terms })
}

/// Closed-form yield of the full divisor database of `B`: the product of
/// `(2*r_i + 1)` over the prime-power factorization of `B`.
///
/// Counts ordered coprime pairs `(x, y)` with `x*y` dividing `B`, including
/// the pair `(1, 1)`; see [`yield_closed_form_strict`] for the count that
/// matches the strict `0 < x/y < 1` definition.
pub fn yield_closed_form(fact: &PrimePowerFactorization) -> Natural {
    let mut y = Natural::one();
    for (_, r) in fact.terms() {
        y *= Natural::from(2 * r + 1);
    }
    y
}

/// Yield of the full divisor database of `B` under the strict fraction
/// definition: `(product(2*r_i + 1) - 1) / 2`.
///
/// Dropping the pair `(1, 1)` and collapsing `(x, y)` with `(y, x)` turns
/// the ordered-pair count into the number of fractions strictly between
/// 0 and 1.
pub fn yield_closed_form_strict(fact: &PrimePowerFactorization) -> Natural {
    (yield_closed_form(fact) - 1u32) >> 1
}
