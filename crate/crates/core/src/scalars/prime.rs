use rand::{Rng as _, RngCore};
use serde_json::Value;

use super::{Field, FieldDescriptor, Ring};
use crate::error::{Error, Result};

/// Largest supported modulus; keeps products of two residues inside a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The prime field `F_p` for a prime `5 <= p <= 2^31 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    // floor(2^64 / p), for Barrett reduction.
    barrett: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || p == 3 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::TooLarge(format!("prime {p} exceeds {MAX_PRIME}")));
        }
        Ok(PrimeField { p, barrett: (u128::from(u64::MAX) + 1).div_euclid(u128::from(p)) as u64 })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.barrett)) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    pub fn residue(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn legendre_is_one(&self, a: u64) -> bool {
        self.pow(&a, (self.p - 1) / 2) == 1
    }

    // Tonelli–Shanks.
    fn tonelli(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if !self.legendre_is_one(a) {
            return None;
        }
        let p = self.p;
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.legendre_is_one(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(&a, q);
        let mut r = self.pow(&a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    type Base = PrimeField;

    fn base(&self) -> &Self {
        self
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a * b)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(a, self.p - 2))
    }
    #[inline]
    fn conj(&self, a: &u64) -> u64 {
        *a
    }
    #[inline]
    fn embed(&self, a: &u64) -> u64 {
        *a
    }
    fn degree(&self) -> usize {
        1
    }
    fn to_base_coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_base_coords(&self, c: &[u64]) -> u64 {
        c[0]
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn cardinality(&self) -> Option<u128> {
        Some(u128::from(self.p))
    }
    fn element_at(&self, idx: u128) -> u64 {
        (idx % u128::from(self.p)) as u64
    }
    fn parse(&self, v: &Value) -> Result<u64> {
        let n = match v {
            Value::Number(n) => n.as_i64(),
            Value::String(s) => s.trim().parse::<i64>().ok(),
            _ => None,
        }
        .ok_or_else(|| Error::schema(format!("expected an integer residue mod {}, got {v}", self.p)))?;
        Ok(self.residue(n))
    }
    fn ring_value(&self) -> Value {
        serde_json::json!({ "field": self.descriptor().to_value(), "extension": null })
    }
    fn emit(&self, a: &u64) -> Value {
        Value::from(*a)
    }
}

impl Field for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        self.residue(n)
    }
    fn is_square(&self, a: &u64) -> bool {
        *a == 0 || self.legendre_is_one(*a)
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        self.tonelli(*a).map(|r| r.min(self.p - r))
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
}
