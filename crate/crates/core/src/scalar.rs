//! Integer backends for the exact rational scalars used throughout the crate.
//!
//! Phases, average indices and Euler averages are all `Ratio<T>` for some
//! [`Int`] backend. `i64` is fast and sufficient for every desk-scale run;
//! `BigInt` removes the overflow ceiling for hand-written profile documents.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Signed integer type usable as the numerator/denominator of an exact phase.
pub trait Int:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Lifts a machine integer into the backend.
///
/// # Panics
/// If `v` does not fit the backend, which cannot happen for `i64` or wider.
pub fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("integer backend narrower than i64")
}

pub fn count<T: Int>(v: u64) -> T {
    T::from_u64(v).expect("integer backend narrower than u64")
}

/// The reduced fraction `numer/denom`.
pub fn ratio<T: Int>(numer: i64, denom: i64) -> Ratio<T> {
    Ratio::new(int(numer), int(denom))
}

pub fn from_count<T: Int>(v: u64) -> Ratio<T> {
    Ratio::from_integer(count(v))
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn format_ratio<T: Int>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`. Whitespace around the parts is
/// rejected; a zero denominator is rejected.
pub fn parse_ratio<T: Int>(s: &str) -> Option<Ratio<T>> {
    let (numer, denom) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let valid = |part: &str, signed: bool| {
        let digits = if signed {
            part.strip_prefix('-').unwrap_or(part)
        } else {
            part
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(numer, true) || !valid(denom, false) {
        return None;
    }
    let numer: T = numer.parse().ok()?;
    let denom: T = denom.parse().ok()?;
    if denom.is_zero() {
        return None;
    }
    Some(Ratio::new(numer, denom))
}

/// Decimal approximation for log lines only.
pub fn approx<T: Int>(r: &Ratio<T>) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `floor(r)` as a machine integer, if it fits.
pub(crate) fn floor_u64<T: Int>(r: &Ratio<T>) -> Option<u64> {
    r.floor().to_integer().to_u64()
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parse_and_format() {
        let r: Ratio<i64> = parse_ratio("10/97").unwrap();
        assert_eq!(r, ratio(10, 97));
        assert_eq!(format_ratio(&r), "10/97");
        assert_eq!(format_ratio(&parse_ratio::<i64>("4/2").unwrap()), "2/1");
        assert_eq!(parse_ratio::<i64>("-3"), Some(ratio(-3, 1)));
        let big: Ratio<BigInt> = parse_ratio("123456789012345678901234567891/2").unwrap();
        assert_eq!(big.denom(), &BigInt::from(2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "a/2", "1/-2", " 1/2", "1/2/3", "1.5", "/3", "3/"] {
            assert!(parse_ratio::<i64>(bad).is_none(), "{bad:?} accepted");
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(499) && is_prime(9973) && is_prime(20011));
        assert!(!is_prime(20013));
    }
}
