//! Exact integer factoring via the ceiling-square gap test.
//!
//! A semiprime `N = p*q` is cracked by finding a multiplier `d < N/2` for
//! which the iterated gap of `N*d` vanishes; the factors then fall out of
//! two gcds. The crate provides the exact arithmetic behind the test
//! ([`arith`], [`factor`]), the yield function that measures how many
//! factor ratios a multiplier set can approximate ([`yields`]), database
//! constructions and capacity heuristics ([`db`]), and a seeded benchmark
//! harness that measures factoring cost per database family ([`harness`]).
//!
//! All core quantities are arbitrary-precision [`Natural`]s and every
//! comparison is done in exact integer or rational arithmetic; no floating
//! point touches any decision.

pub mod arith;
pub mod db;
mod error;
pub mod factor;
pub mod harness;
pub mod yields;

pub use arith::{Natural, Rational};
pub use error::Error;
