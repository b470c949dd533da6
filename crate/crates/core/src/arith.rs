//! Exact integer primitives.
//!
//! Everything in the engine is carried as [`Int`], a 128-bit signed integer.
//! Generators are capped at [`MAX_GENERATOR`], which keeps every derived
//! quantity (worst case around `a*b*c < 2^93`) far from the edge; the checked
//! helpers below still report overflow instead of wrapping.

use crate::error::ArithError;

pub type Int = i128;

/// Largest generator accepted at the public entry points (`2^31 - 1`).
pub const MAX_GENERATOR: Int = (1 << 31) - 1;

pub fn add(x: Int, y: Int) -> Result<Int, ArithError> {
    x.checked_add(y).ok_or(ArithError::Overflow)
}

pub fn sub(x: Int, y: Int) -> Result<Int, ArithError> {
    x.checked_sub(y).ok_or(ArithError::Overflow)
}

pub fn mul(x: Int, y: Int) -> Result<Int, ArithError> {
    x.checked_mul(y).ok_or(ArithError::Overflow)
}

/// Floor division. `d` must be positive.
pub fn floor_div(n: Int, d: Int) -> Result<Int, ArithError> {
    if d <= 0 {
        return Err(ArithError::NonPositiveDivisor(d));
    }
    Ok(n.div_euclid(d))
}

/// Ceiling division. `d` must be positive.
pub fn ceil_div(n: Int, d: Int) -> Result<Int, ArithError> {
    if d <= 0 {
        return Err(ArithError::NonPositiveDivisor(d));
    }
    Ok(-((-n).div_euclid(d)))
}

/// Canonical residue of `z` modulo `n`, always in `0..n`.
pub fn modulo(z: Int, n: Int) -> Result<Int, ArithError> {
    if n <= 0 {
        return Err(ArithError::NonPositiveDivisor(n));
    }
    Ok(z.rem_euclid(n))
}

pub fn gcd(x: Int, y: Int) -> Result<Int, ArithError> {
    if x < 0 || y < 0 {
        return Err(ArithError::Negative);
    }
    if x == 0 && y == 0 {
        return Err(ArithError::GcdOfZeros);
    }
    let (mut x, mut y) = (x, y);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    Ok(x)
}

/// Inverse of `x` modulo `n`, in `1..n`.
pub fn mod_inverse(x: Int, n: Int) -> Result<Int, ArithError> {
    if n < 2 {
        return Err(ArithError::NotInvertible { x, n });
    }
    let x = x.rem_euclid(n);
    // extended Euclid on (x, n), tracking only the coefficient of x
    let (mut old_r, mut r) = (x, n);
    let (mut old_s, mut s) = (1 as Int, 0 as Int);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return Err(ArithError::NotInvertible { x, n });
    }
    Ok(old_s.rem_euclid(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(12, 18), Ok(6));
        assert_eq!(gcd(1, 999), Ok(1));
        assert_eq!(gcd(15, 11), Ok(1));
        assert_eq!(gcd(7, 0), Ok(7));
        assert_eq!(gcd(0, 0), Err(ArithError::GcdOfZeros));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(15, 11), Ok(3));
        assert_eq!(mod_inverse(1, 7), Ok(1));
        assert!(matches!(
            mod_inverse(6, 4),
            Err(ArithError::NotInvertible { .. })
        ));
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(floor_div(-3, 7), Ok(-1));
        assert_eq!(ceil_div(3, 7), Ok(1));
        assert_eq!(ceil_div(-3, 7), Ok(0));
        assert_eq!(ceil_div(14, 7), Ok(2));
        assert_eq!(modulo(-3, 7), Ok(4));
        assert!(floor_div(1, 0).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(mul(Int::MAX, 2), Err(ArithError::Overflow));
        assert_eq!(add(Int::MAX, 1), Err(ArithError::Overflow));
        assert_eq!(sub(Int::MIN, 1), Err(ArithError::Overflow));
    }

    proptest! {
        #[test]
        fn inverse_round_trips(x in 0i64..1_000_000, n in 2i64..1_000_000) {
            let (x, n) = (x as Int, n as Int);
            prop_assume!(gcd(x % n, n).unwrap() == 1);
            let z = mod_inverse(x, n).unwrap();
            prop_assert!((1..n).contains(&z) || n == 1);
            prop_assert_eq!((x * z).rem_euclid(n), 1);
        }

        #[test]
        fn gcd_laws(x in 0i64..1_000_000_000, y in 1i64..1_000_000_000) {
            let (x, y) = (x as Int, y as Int);
            prop_assert_eq!(gcd(x, y), gcd(y, x));
            prop_assert_eq!(gcd(x, y), gcd(y, x % y));
        }
    }
}
