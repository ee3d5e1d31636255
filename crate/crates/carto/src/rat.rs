//! Shared exact-arithmetic helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient type used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer square root of a non-negative `BigInt`, together with whether the
/// input was a perfect square.
pub fn bigint_sqrt(n: &BigInt) -> (BigInt, bool) {
    assert!(!n.is_negative(), "bigint_sqrt of negative value");
    let r = n.sqrt();
    let exact = &r * &r == *n;
    (r, exact)
}

/// Exact square root of a non-negative rational, if it is a rational square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let (sn, okn) = bigint_sqrt(x.numer());
    let (sd, okd) = bigint_sqrt(x.denom());
    if okn && okd {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Convert an exact rational to `f64` (numerator/denominator division, so it
/// stays finite even when both parts overflow `f64` individually).
pub fn rat_to_f64(x: &Rat) -> f64 {
    // Scale down by a common power of two to keep both parts representable.
    let bits = x.numer().bits().max(x.denom().bits());
    if bits <= 900 {
        let n = bigint_to_f64(x.numer());
        let d = bigint_to_f64(x.denom());
        return n / d;
    }
    let shift = bits - 512;
    let n = bigint_to_f64(&(x.numer() >> shift));
    let d = bigint_to_f64(&(x.denom() >> shift));
    n / d
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::INFINITY)
}

/// One as a rational.
pub fn one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_recognizes_squares() {
        assert_eq!(rat_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rat_sqrt(&rat(2)), None);
        assert_eq!(rat_sqrt(&rat(0)), Some(rat(0)));
        assert_eq!(rat_sqrt(&rat(-1)), None);
    }

    #[test]
    fn huge_rational_to_f64() {
        let big: BigInt = BigInt::from(12).pow(400);
        let x = Rat::new(big.clone() * 3, big);
        assert!((rat_to_f64(&x) - 3.0).abs() < 1e-12);
    }
}
