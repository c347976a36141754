//! Exact arbitrary-precision primitives: integer square root, the exact
//! ceiling of 2*sqrt(x), perfect-square detection, and gcd.
//!
//! Everything here is pure integer arithmetic; no floating point is used
//! anywhere, so results are exact at every magnitude.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;

/// Arbitrary-precision nonnegative integer. All quantities in this crate
/// (moduli, multipliers, database values, yields) are `Natural`s and cross
/// external boundaries as plain decimal strings.
pub type Natural = num_bigint::BigUint;

/// Exact positive rational, used for the factor-imbalance ratio R = q/p.
pub type Rational = num_rational::Ratio<Natural>;

/// Floor of the square root: the unique `s` with `s^2 <= n < (s+1)^2`.
///
/// Newton's integer iteration seeded from the bit length, so the result is
/// exact regardless of magnitude.
pub fn isqrt(n: &Natural) -> Natural {
    if n.is_zero() {
        return Natural::zero();
    }
    // 2^ceil(bits/2) >= sqrt(n), so the iteration descends onto the root.
    let mut x: Natural = Natural::one() << (n.bits().div_ceil(2) as usize);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Smallest integer `c` with `c >= 2*sqrt(n)`, computed exactly.
///
/// `c = isqrt(4n)`, bumped by one unless `4n` is a perfect square
/// (`2*sqrt(n)` is an integer exactly when `4n` is a square).
pub fn ceil_2sqrt(n: &Natural) -> Natural {
    let four_n = n << 2usize;
    let s = isqrt(&four_n);
    if &s * &s == four_n {
        s
    } else {
        s + 1u32
    }
}

/// Returns the exact square root when `n` is a perfect square, else `None`.
pub fn exact_sqrt(n: &Natural) -> Option<Natural> {
    // Squares are 0, 1, 4 or 9 mod 16; the bitmask rejects most non-squares
    // before paying for an isqrt.
    let low = n.iter_u64_digits().next().unwrap_or(0);
    if !matches!(low & 0xF, 0 | 1 | 4 | 9) {
        return None;
    }
    let s = isqrt(n);
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// True iff `n` is a perfect square.
pub fn is_perfect_square(n: &Natural) -> bool {
    exact_sqrt(n).is_some()
}

/// Greatest common divisor. Rejects the undefined `gcd(0, 0)`.
pub fn gcd(a: &Natural, b: &Natural) -> Result<Natural, Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdUndefined);
    }
    Ok(a.gcd(b))
}
