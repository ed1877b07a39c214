use rand::RngCore;
use serde_json::Value;

use super::{Field, Ring};
use crate::error::{Error, Result};

/// An element `u + v·x` of `F[x]/(x² − μ)`, or the pair `(u, v)` of `F ⊕ F`.
///
/// The pair `(u, v)` is also the element's coordinate vector over `F` in both
/// kinds, so code above this module never needs to know which kind it has.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElement<E> {
    pub u: E,
    pub v: E,
}

impl<E> KElement<E> {
    pub fn new(u: E, v: E) -> Self {
        KElement { u, v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EtaleKind<E> {
    /// `K = F[x]/(x² − μ)` with `μ` a non-square.
    Field { mu: E },
    /// `K = F ⊕ F` with the exchange involution.
    Split,
}

/// A quadratic étale extension `K/F` with its non-trivial automorphism σ.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaleExtension<F: Field> {
    base: F,
    kind: EtaleKind<F::Elem>,
}

impl<F: Field> EtaleExtension<F> {
    /// `F[x]/(x² − μ)`; fails unless `μ` is a nonzero non-square.
    pub fn field(base: F, mu: F::Elem) -> Result<Self> {
        if base.is_zero(&mu) || base.is_square(&mu) {
            return Err(Error::SquareParameter(base.emit(&mu).to_string()));
        }
        Ok(EtaleExtension { base, kind: EtaleKind::Field { mu } })
    }

    pub fn split(base: F) -> Self {
        EtaleExtension { base, kind: EtaleKind::Split }
    }

    /// `F[x]/(x² − μ)` for any nonzero `μ`: the split algebra when `μ` is a
    /// square, a field otherwise.
    pub fn quadratic(base: F, mu: F::Elem) -> Result<Self> {
        if base.is_zero(&mu) {
            return Err(Error::precondition("μ must be nonzero"));
        }
        if base.is_square(&mu) {
            Ok(Self::split(base))
        } else {
            Self::field(base, mu)
        }
    }

    pub fn kind(&self) -> &EtaleKind<F::Elem> {
        &self.kind
    }

    pub fn is_split(&self) -> bool {
        matches!(self.kind, EtaleKind::Split)
    }

    /// A root of `x² = μ` in this extension: `x` itself for the field kind,
    /// `(g, −g)` with `g = √μ` canonical for the split kind.
    pub fn root_of(&self, mu: &F::Elem) -> Result<KElement<F::Elem>> {
        let f = &self.base;
        match &self.kind {
            EtaleKind::Field { mu: m } if m == mu => Ok(KElement::new(f.zero(), f.one())),
            EtaleKind::Split => {
                let g = f
                    .sqrt(mu)
                    .filter(|g| !f.is_zero(g))
                    .ok_or_else(|| Error::precondition("μ is not a nonzero square"))?;
                Ok(KElement::new(g.clone(), f.neg(&g)))
            }
            EtaleKind::Field { .. } => Err(Error::precondition("μ does not match the extension")),
        }
    }

    /// `Nr(a) = a·σ(a)`.
    pub fn norm(&self, a: &KElement<F::Elem>) -> F::Elem {
        let f = &self.base;
        match &self.kind {
            EtaleKind::Field { mu } => f.sub(&f.mul(&a.u, &a.u), &f.mul(mu, &f.mul(&a.v, &a.v))),
            EtaleKind::Split => f.mul(&a.u, &a.v),
        }
    }

    /// `Tr(a) = a + σ(a)`.
    pub fn trace(&self, a: &KElement<F::Elem>) -> F::Elem {
        let f = &self.base;
        match &self.kind {
            EtaleKind::Field { .. } => f.add(&a.u, &a.u),
            EtaleKind::Split => f.add(&a.u, &a.v),
        }
    }

    /// The preimage in `F` of a σ-fixed element.
    pub fn to_base(&self, a: &KElement<F::Elem>) -> Option<F::Elem> {
        match &self.kind {
            EtaleKind::Field { .. } => self.base.is_zero(&a.v).then(|| a.u.clone()),
            EtaleKind::Split => (a.u == a.v).then(|| a.u.clone()),
        }
    }

    pub fn is_in_base(&self, a: &KElement<F::Elem>) -> bool {
        self.to_base(a).is_some()
    }

    /// `σ(a)/Nr(a)`.
    pub fn invert(&self, a: &KElement<F::Elem>) -> Result<KElement<F::Elem>> {
        self.inv(a).ok_or(Error::NonInvertible)
    }

    /// Spanning vector of the trace-zero line `K₀`.
    pub fn trace_zero_generator(&self) -> KElement<F::Elem> {
        let f = &self.base;
        match &self.kind {
            EtaleKind::Field { .. } => KElement::new(f.zero(), f.one()),
            EtaleKind::Split => KElement::new(f.one(), f.neg(&f.one())),
        }
    }

    /// `(r, t)` with `x = r + λt`, for `λ ∉ F`.
    pub fn coords_over(&self, lambda: &KElement<F::Elem>, x: &KElement<F::Elem>) -> Option<(F::Elem, F::Elem)> {
        let d = self.inv(&self.sub(lambda, &self.conj(lambda)))?;
        let t = self.to_base(&self.mul(&self.sub(x, &self.conj(x)), &d))?;
        let r = self.to_base(&self.sub(x, &self.mul(lambda, &self.embed(&t))))?;
        Some((r, t))
    }

    pub fn descriptor_value(&self) -> Value {
        match &self.kind {
            EtaleKind::Field { mu } => serde_json::json!({ "mu": self.base.emit(mu) }),
            EtaleKind::Split => Value::String("split".into()),
        }
    }
}

impl<F: Field> Ring for EtaleExtension<F> {
    type Elem = KElement<F::Elem>;
    type Base = F;

    fn base(&self) -> &F {
        &self.base
    }
    fn zero(&self) -> Self::Elem {
        KElement::new(self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        KElement::new(self.base.add(&a.u, &b.u), self.base.add(&a.v, &b.v))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        KElement::new(self.base.sub(&a.u, &b.u), self.base.sub(&a.v, &b.v))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        KElement::new(self.base.neg(&a.u), self.base.neg(&a.v))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        match &self.kind {
            EtaleKind::Field { mu } => KElement::new(
                f.add(&f.mul(&a.u, &b.u), &f.mul(mu, &f.mul(&a.v, &b.v))),
                f.add(&f.mul(&a.u, &b.v), &f.mul(&a.v, &b.u)),
            ),
            EtaleKind::Split => KElement::new(f.mul(&a.u, &b.u), f.mul(&a.v, &b.v)),
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.u) && self.base.is_zero(&a.v)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n_inv = self.base.inv(&self.norm(a))?;
        let c = self.conj(a);
        Some(KElement::new(self.base.mul(&c.u, &n_inv), self.base.mul(&c.v, &n_inv)))
    }
    fn conj(&self, a: &Self::Elem) -> Self::Elem {
        match &self.kind {
            EtaleKind::Field { .. } => KElement::new(a.u.clone(), self.base.neg(&a.v)),
            EtaleKind::Split => KElement::new(a.v.clone(), a.u.clone()),
        }
    }
    fn embed(&self, a: &F::Elem) -> Self::Elem {
        match &self.kind {
            EtaleKind::Field { .. } => KElement::new(a.clone(), self.base.zero()),
            EtaleKind::Split => KElement::new(a.clone(), a.clone()),
        }
    }
    fn degree(&self) -> usize {
        2
    }
    fn to_base_coords(&self, a: &Self::Elem) -> Vec<F::Elem> {
        vec![a.u.clone(), a.v.clone()]
    }
    fn from_base_coords(&self, c: &[F::Elem]) -> Self::Elem {
        KElement::new(c[0].clone(), c[1].clone())
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let u = self.base.sample(rng);
        KElement::new(u, self.base.sample(rng))
    }
    fn cardinality(&self) -> Option<u128> {
        self.base.cardinality().map(|q| q * q)
    }
    fn element_at(&self, idx: u128) -> Self::Elem {
        let q = self.base.cardinality().expect("finite base field");
        KElement::new(self.base.element_at(idx % q), self.base.element_at(idx / q % q))
    }
    fn parse(&self, v: &Value) -> Result<Self::Elem> {
        match v {
            Value::Array(xs) if xs.len() == 2 => {
                Ok(KElement::new(self.base.parse(&xs[0])?, self.base.parse(&xs[1])?))
            }
            _ => Err(Error::schema(format!("extension element must be a pair [u, v], got {v}"))),
        }
    }
    fn emit(&self, a: &Self::Elem) -> Value {
        Value::Array(vec![self.base.emit(&a.u), self.base.emit(&a.v)])
    }
    fn ring_value(&self) -> Value {
        serde_json::json!({ "field": self.base.descriptor().to_value(), "extension": self.descriptor_value() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn gaussian() -> EtaleExtension<Rationals> {
        EtaleExtension::field(Rationals, q(-1)).unwrap()
    }

    #[test]
    fn conjugation_examples() {
        let k = gaussian();
        assert_eq!(k.conj(&KElement::new(q(2), q(3))), KElement::new(q(2), q(-3)));
        let s = EtaleExtension::split(Rationals);
        assert_eq!(s.conj(&KElement::new(q(2), q(3))), KElement::new(q(3), q(2)));
        let fixed = k.embed(&q(5));
        assert_eq!(k.conj(&fixed), fixed);
    }

    #[test]
    fn norm_and_trace_examples() {
        let k = gaussian();
        let a = KElement::new(q(2), q(3));
        assert_eq!(k.norm(&a), q(13));
        assert_eq!(k.trace(&a), q(4));
        let s = EtaleExtension::split(Rationals);
        assert_eq!(s.norm(&a), q(6));
        assert_eq!(s.trace(&a), q(5));
        assert_eq!(k.norm(&k.one()), q(1));
    }

    #[test]
    fn inversion_examples() {
        let k = gaussian();
        let i = KElement::new(q(0), q(1));
        assert_eq!(k.invert(&i).unwrap(), KElement::new(q(0), q(-1)));
        assert_eq!(k.invert(&k.one()).unwrap(), k.one());
        let s = EtaleExtension::split(Rationals);
        assert_eq!(s.invert(&KElement::new(q(2), q(0))), Err(Error::NonInvertible));
    }

    #[test]
    fn rejects_square_parameters() {
        assert!(EtaleExtension::field(Rationals, q(4)).is_err());
        assert!(EtaleExtension::field(Rationals, q(0)).is_err());
        let f5 = PrimeField::new(5).unwrap();
        assert!(EtaleExtension::field(f5, 4).is_err());
        assert!(EtaleExtension::field(f5, 2).is_ok());
    }

    #[test]
    fn exhaustive_invertibility_over_f5() {
        let f5 = PrimeField::new(5).unwrap();
        for k in [EtaleExtension::field(f5, 2).unwrap(), EtaleExtension::split(f5)] {
            let mut fixed = 0;
            let mut trace_zero = 0;
            for idx in 0..25 {
                let a = k.element_at(idx);
                assert_eq!(k.inv(&a).is_some(), k.norm(&a) != 0);
                if let Some(b) = k.inv(&a) {
                    assert_eq!(k.mul(&a, &b), k.one());
                }
                if k.conj(&a) == a {
                    fixed += 1;
                }
                if k.trace(&a) == 0 {
                    trace_zero += 1;
                }
            }
            // F and K₀ are both lines: 5 elements each.
            assert_eq!(fixed, 5);
            assert_eq!(trace_zero, 5);
        }
    }

    #[test]
    fn roots() {
        let s = EtaleExtension::split(Rationals);
        let r = s.root_of(&q(4)).unwrap();
        assert_eq!(r, KElement::new(q(2), q(-2)));
        assert_eq!(s.mul(&r, &r), s.embed(&q(4)));
        let k = EtaleExtension::field(Rationals, q(2)).unwrap();
        let x = k.root_of(&q(2)).unwrap();
        assert_eq!(k.mul(&x, &x), k.embed(&q(2)));
    }
}
