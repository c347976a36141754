//! The ceiling-square gap test and multiplier-based factoring.
//!
//! For a nonnegative integer `n` let `c = ceil_2sqrt(n)`. The *gap*
//! `g(n) = c^2 - 4n` is zero exactly when `n` is a perfect square, and the
//! iterated gap `g(g(n))` is zero exactly when `n` splits as `n = u*v` with
//! `|sqrt(u) - sqrt(v)| <= 1`. Scanning multipliers `d` and testing the
//! iterated gap of `N*d` recovers factors of `N` through gcds.

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{ceil_2sqrt, exact_sqrt, isqrt, Natural};
use crate::error::Error;

/// The gap `ceil_2sqrt(n)^2 - 4n`. Always nonnegative; zero iff `n` is a
/// perfect square.
pub fn gap(n: &Natural) -> Natural {
    let c = ceil_2sqrt(n);
    &c * &c - (n << 2usize)
}

/// The iterated gap `gap(gap(n))`. Zero iff `n` has a factorization
/// `n = u*v` with `|sqrt(u) - sqrt(v)| <= 1`.
pub fn iterated_gap(n: &Natural) -> Natural {
    gap(&gap(n))
}

/// Recovers the near-balanced factor pair of `n` when the iterated gap
/// vanishes.
///
/// Returns `(hi, lo)` with `hi * lo = n` and `|sqrt(hi) - sqrt(lo)| <= 1`,
/// or `None` when no such pair exists. A perfect square yields its root
/// twice.
pub fn recover_close_factors(n: &Natural) -> Option<(Natural, Natural)> {
    let g = gap(n);
    if g.is_zero() {
        let root = isqrt(n);
        return Some((root.clone(), root));
    }
    // iterated_gap(n) = 0 exactly when gap(n) is a perfect square
    let root = exact_sqrt(&g)?;
    let c = ceil_2sqrt(n);
    // c and root have equal parity (c^2 - root^2 = 4n), so both halves are
    // exact.
    let hi = (&c + &root) >> 1;
    let lo = (&c - &root) >> 1;
    debug_assert_eq!(&hi * &lo, *n);
    Some((hi, lo))
}

/// Outcome of testing one multiplier against a modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestOutcome {
    /// The iterated gap vanished and gcd extraction produced a nontrivial
    /// factor pair.
    Factored(FactorResult),
    /// The iterated gap vanished but only trivial divisors emerged.
    Degenerate,
    /// The iterated gap did not vanish; this multiplier tells us nothing.
    Miss,
}

/// A successful multiplier test: the balanced split of `N*d` and the factor
/// pair of `N` extracted from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorResult {
    /// The multiplier that passed the test.
    pub multiplier: Natural,
    /// Square root of `gap(N*d)`; equals `split_hi - split_lo`.
    pub gap_root: Natural,
    /// Larger half of the balanced split of `N*d`.
    pub split_hi: Natural,
    /// Smaller half of the balanced split of `N*d`.
    pub split_lo: Natural,
    /// Factor pair of `N`, stored smaller-first. Satisfies
    /// `factors.0 * factors.1 = N` with both factors strictly between 1
    /// and `N`.
    pub factors: (Natural, Natural),
}

/// Tests multiplier `d` against `n`: computes the iterated gap of `n*d` and,
/// when it vanishes, extracts factors of `n` as `gcd(n, hi)` and
/// `gcd(n, lo)`.
///
/// Requires `n >= 4` and `1 <= d < n/2`; the range bound on `d` is what
/// guarantees the two prime factors of a semiprime land in different halves
/// of the split.
pub fn try_multiplier(n: &Natural, d: &Natural) -> Result<TestOutcome, Error> {
    if *n < Natural::from(4u32) {
        return Err(Error::ModulusTooSmall { n: n.clone() });
    }
    if d.is_zero() || (d << 1usize) >= *n {
        return Err(Error::MultiplierOutOfRange {
            n: n.clone(),
            d: d.clone(),
        });
    }

    let nd = n * d;
    let g = gap(&nd);
    let gap_root = if g.is_zero() {
        // n*d itself a perfect square: treat as the balanced split with
        // equal halves.
        Natural::zero()
    } else {
        match exact_sqrt(&g) {
            Some(root) => root,
            None => return Ok(TestOutcome::Miss),
        }
    };

    let c = ceil_2sqrt(&nd);
    let hi = (&c + &gap_root) >> 1;
    let lo = (&c - &gap_root) >> 1;
    debug_assert_eq!(&hi * &lo, nd);

    let one = Natural::one();
    let nontrivial = |x: &Natural| *x > one && x < n;
    let a = num_integer::Integer::gcd(n, &hi);
    let b = num_integer::Integer::gcd(n, &lo);

    let pair = if &a * &b == *n && nontrivial(&a) && nontrivial(&b) {
        Some((a, b))
    } else if nontrivial(&a) {
        let rest = n / &a;
        Some((a, rest))
    } else if nontrivial(&b) {
        let rest = n / &b;
        Some((rest, b))
    } else {
        None
    };

    Ok(match pair {
        None => TestOutcome::Degenerate,
        Some((x, y)) => {
            let factors = if x <= y { (x, y) } else { (y, x) };
            TestOutcome::Factored(FactorResult {
                multiplier: d.clone(),
                gap_root,
                split_hi: hi,
                split_lo: lo,
                factors,
            })
        }
    })
}

/// Ground-truth oracle for the multiplier test when the factors are known:
/// `d` works for `N = p*q` iff `d` factors as `d = x*y` with
/// `|sqrt(p*y) - sqrt(q*x)| <= 1`.
///
/// The surd inequality is decided in pure integer arithmetic:
/// `|sqrt(A) - sqrt(B)| <= 1  <=>  (A + B - 1)^2 <= 4*A*B` (with the
/// degenerate zero cases handled directly), so no boundary case is ever
/// misjudged by rounding.
pub fn split_oracle(p: &Natural, q: &Natural, d: &Natural) -> bool {
    if d.is_zero() {
        return false;
    }
    if let (Some(pu), Some(qu), Some(du)) = (p.to_u64(), q.to_u64(), d.to_u64()) {
        let worst = (pu.max(qu) as u128).checked_mul(du as u128);
        if let Some(w) = worst {
            if w < (1u128 << 63) {
                return split_oracle_u64(pu, qu, du);
            }
        }
    }
    split_oracle_big(p, q, d)
}

fn surd_close_u128(a: u128, b: u128) -> bool {
    if a == 0 || b == 0 {
        return a.max(b) <= 1;
    }
    let s = a + b - 1;
    s * s <= 4 * a * b
}

fn split_oracle_u64(p: u64, q: u64, d: u64) -> bool {
    let (p, q, d) = (p as u128, q as u128, d as u128);
    let mut x = 1u128;
    while x * x <= d {
        if d % x == 0 {
            let y = d / x;
            if surd_close_u128(p * y, q * x) || surd_close_u128(p * x, q * y) {
                return true;
            }
        }
        x += 1;
    }
    false
}

fn surd_close_big(a: &Natural, b: &Natural) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.max(b) <= &Natural::one();
    }
    let s = a + b - 1u32;
    &s * &s <= (a * b) << 2usize
}

fn split_oracle_big(p: &Natural, q: &Natural, d: &Natural) -> bool {
    let mut x = Natural::one();
    while &x * &x <= *d {
        if (d % &x).is_zero() {
            let y = d / &x;
            if surd_close_big(&(p * &y), &(q * &x)) || surd_close_big(&(p * &x), &(q * &y)) {
                return true;
            }
        }
        x += 1u32;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gap(&nat(176_039)), nat(1444));
        assert_eq!(gap(&nat(25)), nat(0));
        assert_eq!(gap(&nat(99)), nat(4));
        assert_eq!(gap(&nat(0)), nat(0));
    }

    #[test]
    fn iterated_gap_examples() {
        assert_eq!(iterated_gap(&nat(99)), nat(0));
        assert_eq!(iterated_gap(&nat(25)), nat(0));
        assert_eq!(iterated_gap(&nat(188_828_690)), nat(0));
        assert_ne!(iterated_gap(&nat(1_110_757)), nat(0));
    }

    #[test]
    fn gap_zero_iff_square_to_1e6() {
        // independent square detector: walk the next root alongside n
        let mut root = 0u64;
        for n in 0u64..=1_000_000 {
            while root * root < n {
                root += 1;
            }
            let is_square = root * root == n;
            assert_eq!(
                gap(&nat(n)).is_zero(),
                is_square,
                "gap({n}) zero-ness disagrees with square oracle"
            );
        }
    }

    /// Brute-force oracle for the iterated gap: some divisor pair u*v = n
    /// satisfies the integer form of |sqrt(u) - sqrt(v)| <= 1.
    fn has_close_divisor_pair(n: u64) -> bool {
        let mut u = 1u64;
        while u * u <= n {
            if n.is_multiple_of(u) {
                let v = n / u;
                // u <= v; close iff u = v or (u + v - 1)^2 <= 4uv
                if u == v || (u + v - 1) * (u + v - 1) <= 4 * u * v {
                    return true;
                }
            }
            u += 1;
        }
        false
    }

    #[test]
    fn iterated_gap_zero_iff_close_pair_to_2e4() {
        for n in 1u64..=20_000 {
            assert_eq!(
                iterated_gap(&nat(n)).is_zero(),
                has_close_divisor_pair(n),
                "iterated gap disagrees with divisor-scan oracle at {n}"
            );
        }
    }

    #[test]
    fn recover_close_factors_examples() {
        assert_eq!(recover_close_factors(&nat(176_039)), Some((nat(439), nat(401))));
        assert_eq!(recover_close_factors(&nat(99)), Some((nat(11), nat(9))));
        assert_eq!(recover_close_factors(&nat(36)), Some((nat(6), nat(6))));
        assert_eq!(recover_close_factors(&nat(1_110_757)), None);
    }

    #[test]
    fn recover_matches_divisor_scan_oracle() {
        // oracle: the unique divisor pair with |sqrt(u)-sqrt(v)| <= 1, found
        // exhaustively
        for n in 1u64..=5_000 {
            let got = recover_close_factors(&nat(n));
            match got {
                None => assert!(!has_close_divisor_pair(n)),
                Some((hi, lo)) => {
                    let (hi, lo) = (u64::try_from(&hi).unwrap(), u64::try_from(&lo).unwrap());
                    assert_eq!(hi * lo, n);
                    assert!(hi >= lo);
                    assert!(lo == hi || (hi + lo - 1) * (hi + lo - 1) <= 4 * hi * lo);
                }
            }
        }
    }

    #[test]
    fn try_multiplier_with_170_splits_1110757() {
        let out = try_multiplier(&nat(1_110_757), &nat(170)).unwrap();
        match out {
            TestOutcome::Factored(res) => {
                assert_eq!(res.gap_root, nat(23));
                assert_eq!(res.split_hi, nat(13_753));
                assert_eq!(res.split_lo, nat(13_730));
                assert_eq!(res.factors, (nat(809), nat(1373)));
            }
            other => panic!("expected Factored, got {other:?}"),
        }
    }

    #[test]
    fn try_multiplier_with_unit_d_splits_176039() {
        let out = try_multiplier(&nat(176_039), &nat(1)).unwrap();
        match out {
            TestOutcome::Factored(res) => {
                assert_eq!(res.gap_root, nat(38));
                assert_eq!(res.split_hi, nat(439));
                assert_eq!(res.split_lo, nat(401));
                assert_eq!(res.factors, (nat(401), nat(439)));
            }
            other => panic!("expected Factored, got {other:?}"),
        }
    }

    #[test]
    fn try_multiplier_miss_and_degenerate() {
        assert_eq!(
            try_multiplier(&nat(1_110_757), &nat(1)).unwrap(),
            TestOutcome::Miss
        );
        // N = 7 (prime), d = 3: 21 = 7 * 3 is a close split but both gcds
        // are trivial.
        assert_eq!(try_multiplier(&nat(7), &nat(3)).unwrap(), TestOutcome::Degenerate);
    }

    #[test]
    fn try_multiplier_perfect_square_modulus() {
        let out = try_multiplier(&nat(4), &nat(1)).unwrap();
        match out {
            TestOutcome::Factored(res) => {
                assert_eq!(res.gap_root, nat(0));
                assert_eq!(res.split_hi, nat(2));
                assert_eq!(res.split_lo, nat(2));
                assert_eq!(res.factors, (nat(2), nat(2)));
            }
            other => panic!("expected Factored, got {other:?}"),
        }
    }

    #[test]
    fn try_multiplier_range_errors() {
        assert!(matches!(
            try_multiplier(&nat(3), &nat(1)),
            Err(Error::ModulusTooSmall { .. })
        ));
        assert!(matches!(
            try_multiplier(&nat(15), &nat(0)),
            Err(Error::MultiplierOutOfRange { .. })
        ));
        // d = N/2 exactly is out of range
        assert!(matches!(
            try_multiplier(&nat(16), &nat(8)),
            Err(Error::MultiplierOutOfRange { .. })
        ));
        assert!(try_multiplier(&nat(16), &nat(7)).is_ok());
    }

    #[test]
    fn split_oracle_examples() {
        assert!(split_oracle(&nat(1373), &nat(809), &nat(170)));
        assert!(!split_oracle(&nat(1373), &nat(809), &nat(1)));
        // p = q: any perfect-square d splits evenly
        assert!(split_oracle(&nat(13), &nat(13), &nat(36)));
        assert!(split_oracle(&nat(13), &nat(13), &nat(1)));
    }

    #[test]
    fn split_oracle_big_path_agrees_with_fast_path() {
        // same inputs through both code paths must agree
        for p in [809u64, 1373, 199] {
            for q in [809u64, 101, 97] {
                for d in 1u64..=120 {
                    assert_eq!(
                        split_oracle_big(&nat(p), &nat(q), &nat(d)),
                        split_oracle_u64(p, q, d),
                        "paths disagree at p={p} q={q} d={d}"
                    );
                }
            }
        }
        // p and q within 14 of each other: every perfect-square d splits
        // evenly, even far above the u64 fast-path cutoff
        let p = Natural::from(u64::MAX) * 4u32 + 3u32;
        let q = &p + 14u32;
        assert!(split_oracle(&p, &q, &nat(36)));
        assert!(split_oracle(&p, &q, &nat(1)));
    }

    /// Reduced-range version of the full oracle-equivalence sweep run by the
    /// acceptance suite: p, q < 60, d < min(N/2, 500).
    #[test]
    fn multiplier_test_matches_split_oracle_small() {
        let primes: Vec<u64> = vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];
        for (i, &p) in primes.iter().enumerate() {
            for &q in &primes[i + 1..] {
                let n = nat(p * q);
                let mut d = 1u64;
                while d < 500 && 2 * d < p * q {
                    let expected = split_oracle(&nat(p), &nat(q), &nat(d));
                    match try_multiplier(&n, &nat(d)).unwrap() {
                        TestOutcome::Factored(res) => {
                            assert!(expected, "N={n} d={d}: factored but oracle says no");
                            assert_eq!(res.factors, (nat(p.min(q)), nat(p.max(q))));
                        }
                        TestOutcome::Miss | TestOutcome::Degenerate => {
                            assert!(!expected, "N={n} d={d}: oracle says yes but no factor");
                        }
                    }
                    d += 1;
                }
            }
        }
    }

    proptest! {
        /// Every successful test result reconstructs: hi*lo = N*d,
        /// hi - lo = gap_root, hi + lo = ceil_2sqrt(N*d), and the factors
        /// multiply back to N.
        #[test]
        fn factor_result_reconstruction(n in 4u64..200_000, d in 1u64..500) {
            prop_assume!(2 * d < n);
            let (nb, db) = (nat(n), nat(d));
            if let TestOutcome::Factored(res) = try_multiplier(&nb, &db).unwrap() {
                let nd = &nb * &db;
                prop_assert_eq!(&res.split_hi * &res.split_lo, nd.clone());
                prop_assert_eq!(&res.split_hi - &res.split_lo, res.gap_root.clone());
                prop_assert_eq!(&res.split_hi + &res.split_lo, ceil_2sqrt(&nd));
                prop_assert_eq!(&res.factors.0 * &res.factors.1, nb.clone());
                prop_assert!(res.factors.0 <= res.factors.1);
                prop_assert!(res.factors.0 > Natural::from(1u32));
                prop_assert!(res.factors.1 < nb);
            }
        }
    }
}
