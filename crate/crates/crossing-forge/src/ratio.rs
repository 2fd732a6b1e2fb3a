//! Exact rational arithmetic helpers.
//!
//! All charge and bound computations are done in `BigRational`; floating
//! point only ever appears in clearly-marked display fields. Rationals are
//! rendered in lowest terms as `p/q` (or a bare integer) with the sign on
//! the numerator, which `BigRational`'s `Display` already guarantees.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Ratio = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Ratio {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Ratio {
    BigRational::from_integer(BigInt::from(n))
}

pub fn int_u(n: u64) -> Ratio {
    BigRational::from_integer(BigInt::from(n))
}

/// Render in lowest terms: `"2"`, `"-12/13"`, `"0"`.
pub fn fmt_ratio(r: &Ratio) -> String {
    r.to_string()
}

/// Parse `"p/q"` or a bare integer.
pub fn parse_ratio(s: &str) -> Option<Ratio> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Smallest integer >= r, as a rational.
pub fn ceil_ratio(r: &Ratio) -> Ratio {
    r.ceil()
}

/// Approximate decimal rendering for display-only fields.
pub fn approx_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// True iff `a/b` (b > 0) squared is at most `c`, i.e. a^2 <= c * b^2.
/// Used to compare square roots exactly without floats.
pub fn sqrt_le(square: &Ratio, bound: &Ratio) -> bool {
    debug_assert!(!square.is_negative());
    square <= &(bound * bound)
}

pub fn one() -> Ratio {
    BigRational::one()
}

pub fn zero() -> Ratio {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_in_lowest_terms_with_sign_on_numerator() {
        assert_eq!(fmt_ratio(&ratio(2, 4)), "1/2");
        assert_eq!(fmt_ratio(&ratio(-24, 26)), "-12/13");
        assert_eq!(fmt_ratio(&ratio(6, -13)), "-6/13");
        assert_eq!(fmt_ratio(&int(7)), "7");
        assert_eq!(fmt_ratio(&ratio(0, 5)), "0");
    }

    #[test]
    fn parses_its_own_output() {
        for r in [ratio(1, 3), ratio(-203, 9), int(42), zero()] {
            assert_eq!(parse_ratio(&fmt_ratio(&r)).unwrap(), r);
        }
        assert!(parse_ratio("1/0").is_none());
        assert!(parse_ratio("x").is_none());
    }

    #[test]
    fn ceil_matches_integer_arithmetic() {
        assert_eq!(ceil_ratio(&ratio(7, 3)), int(3));
        assert_eq!(ceil_ratio(&ratio(-7, 3)), int(-2));
        assert_eq!(ceil_ratio(&int(5)), int(5));
    }

    #[test]
    fn exact_square_root_comparison() {
        // 41209/3000 = 13.7363..; check against 13.74 squared style bounds
        assert!(sqrt_le(&ratio(41209, 600), &ratio(83, 10)));
        assert!(!sqrt_le(&ratio(41209, 600), &ratio(82, 10)));
    }
}
