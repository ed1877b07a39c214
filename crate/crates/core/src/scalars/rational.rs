use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng as _, RngCore};
use serde_json::Value;

use super::{Field, FieldDescriptor, Ring, SAMPLE_BOUND};
use crate::error::{Error, Result};

/// The field of rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::schema(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::schema(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Ring for Rationals {
    type Elem = BigRational;
    type Base = Rationals;

    fn base(&self) -> &Self {
        self
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    // Integer fast paths skip the gcd normalization.
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() + b.numer());
        }
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() - b.numer());
        }
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            return BigRational::zero();
        }
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn conj(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn embed(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn degree(&self) -> usize {
        1
    }
    fn to_base_coords(&self, a: &BigRational) -> Vec<BigRational> {
        vec![a.clone()]
    }
    fn from_base_coords(&self, c: &[BigRational]) -> BigRational {
        c[0].clone()
    }
    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        BigRational::from_integer(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND).into())
    }
    fn cardinality(&self) -> Option<u128> {
        None
    }
    fn element_at(&self, _idx: u128) -> BigRational {
        panic!("the rationals cannot be enumerated")
    }
    fn parse(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(i.into()))
                .ok_or_else(|| Error::schema(format!("rational must be an integer or \"p/q\", got {n}"))),
            _ => Err(Error::schema(format!("expected a rational scalar, got {v}"))),
        }
    }
    fn ring_value(&self) -> Value {
        serde_json::json!({ "field": self.descriptor().to_value(), "extension": null })
    }
    fn emit(&self, a: &BigRational) -> Value {
        if a.is_integer() {
            Value::String(a.numer().to_string())
        } else {
            Value::String(format!("{}/{}", a.numer(), a.denom()))
        }
    }
}

impl Field for Rationals {
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn is_square(&self, a: &BigRational) -> bool {
        // a = n/d in lowest terms is a square iff n·d is a perfect square.
        int_sqrt_exact(&(a.numer() * a.denom())).is_some()
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        let n = int_sqrt_exact(a.numer())?;
        let d = int_sqrt_exact(a.denom())?;
        Some(BigRational::new(n, d))
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parse_and_emit() {
        let f = Rationals;
        assert_eq!(q("6/4"), q("3/2"));
        assert_eq!(f.emit(&q("6/4")), Value::String("3/2".into()));
        assert_eq!(f.emit(&q("-8/2")), Value::String("-4".into()));
        assert_eq!(f.parse(&serde_json::json!(7)).unwrap(), q("7"));
        assert!(f.parse(&serde_json::json!("1/0")).is_err());
        assert!(f.parse(&serde_json::json!("x")).is_err());
    }

    #[test]
    fn squares() {
        let f = Rationals;
        assert!(f.is_square(&q("9/4")));
        assert!(f.is_square(&q("0")));
        assert!(!f.is_square(&q("2")));
        assert!(!f.is_square(&q("-1")));
        assert!(!f.is_square(&q("8/9")));
        assert!(!f.is_square(&q("12")));
        assert_eq!(f.sqrt(&q("9/4")), Some(q("3/2")));
        assert_eq!(f.sqrt(&q("2")), None);
    }
}
