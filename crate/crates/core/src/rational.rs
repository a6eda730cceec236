//! Exact rational arithmetic used by every combinatorial integral.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Best-effort conversion to `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(x) = r.to_f64() {
        return x;
    }
    // Both parts may overflow f64 while the quotient does not.
    let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Converts a finite `f64` to the exact rational it represents.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Arithmetic mean of a nonempty sequence.
pub fn mean<'a, I>(values: I) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut sum = Rational::zero();
    let mut n = 0i64;
    for v in values {
        sum += v;
        n += 1;
    }
    assert!(n > 0, "mean of an empty sequence");
    sum / int(n)
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_of_vertex_values() {
        let v = [int(0), int(1)];
        assert_eq!(mean(&v), rat(1, 2));
    }

    #[test]
    fn float_roundtrip() {
        assert_eq!(from_f64(0.25).unwrap(), rat(1, 4));
        assert_eq!(to_f64(&rat(-3, 8)), -0.375);
    }
}
