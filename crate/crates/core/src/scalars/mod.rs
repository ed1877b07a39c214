//! Exact scalars: the base field `F` (rationals or a prime field) and
//! quadratic étale extensions `K/F` with their conjugation, norm and trace.
//!
//! All arithmetic goes through a ring object (`Ring`), since prime fields and
//! extensions carry runtime parameters. Elements are plain values.

mod etale;
mod prime;
mod rational;

use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;
use serde_json::Value;

pub use etale::{EtaleExtension, EtaleKind, KElement};
pub use prime::PrimeField;
pub use rational::Rationals;

use crate::error::Result;

/// Integer coordinates of sampled points lie in `[-SAMPLE_BOUND, SAMPLE_BOUND]`
/// over the rationals.
pub const SAMPLE_BOUND: i64 = 10;

/// A commutative coefficient ring: either the base field itself or a
/// quadratic étale extension of it.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;
    type Base: Field;

    fn base(&self) -> &Self::Base;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, `None` for non-units (including zero divisors).
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The conjugation σ; the identity on a base field.
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    /// Embedding `F -> R`.
    fn embed(&self, a: &<Self::Base as Ring>::Elem) -> Self::Elem;

    /// Dimension of the ring over its base field (1 or 2).
    fn degree(&self) -> usize;
    /// Coordinates over the base field, `degree()` of them.
    fn to_base_coords(&self, a: &Self::Elem) -> Vec<<Self::Base as Ring>::Elem>;
    fn from_base_coords(&self, c: &[<Self::Base as Ring>::Elem]) -> Self::Elem;

    /// A pseudo-random element: uniform for finite rings, small integer
    /// coordinates over the rationals.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Number of elements, `None` when infinite.
    fn cardinality(&self) -> Option<u128>;
    /// The `idx`-th element in a fixed enumeration (finite rings only).
    fn element_at(&self, idx: u128) -> Self::Elem;

    fn parse(&self, v: &Value) -> Result<Self::Elem>;
    fn emit(&self, a: &Self::Elem) -> Value;
    /// Document form `{"field": .., "extension": ..}`.
    fn ring_value(&self) -> Value;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base().from_int(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        acc
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }
}

/// A field of characteristic not 2 or 3.
pub trait Field: Ring<Base = Self> {
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_square(&self, a: &Self::Elem) -> bool;
    /// A canonical square root: non-negative over the rationals, the smaller
    /// representative over a prime field.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn descriptor(&self) -> FieldDescriptor;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// Serializable identification of a base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
}

impl FieldDescriptor {
    pub fn to_value(self) -> Value {
        match self {
            FieldDescriptor::Rationals => Value::String("Q".into()),
            FieldDescriptor::Prime(p) => serde_json::json!({ "prime": p }),
        }
    }
}

/// A base field chosen at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyField {
    Rational(Rationals),
    Prime(PrimeField),
}

impl AnyField {
    pub fn from_value(v: &Value) -> Result<Self> {
        use crate::error::Error;
        match v {
            Value::String(s) if s == "Q" => Ok(AnyField::Rational(Rationals)),
            Value::Object(m) if m.len() == 1 && m.contains_key("prime") => {
                let p = m["prime"]
                    .as_u64()
                    .ok_or_else(|| Error::schema("`prime` must be a positive integer"))?;
                Ok(AnyField::Prime(PrimeField::new(p)?))
            }
            _ => Err(Error::schema(format!(
                "field must be \"Q\" or {{\"prime\": p}}, got {v}"
            ))),
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, |$f:ident| $body:expr) => {
        match $any {
            $crate::scalars::AnyField::Rational($f) => $body,
            $crate::scalars::AnyField::Prime($f) => $body,
        }
    };
}
