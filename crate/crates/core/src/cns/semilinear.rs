use serde_json::{json, Value};

use crate::cubic::Twist;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::Ring;
use crate::tensor;

/// `a ↦ M·τ(a)` for a matrix `M` and a twist `τ ∈ {id, σ}` applied
/// entrywise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearMap<R: Ring> {
    pub matrix: Matrix<R::Elem>,
    pub twist: Twist,
}

impl<R: Ring> SemilinearMap<R> {
    pub fn new(matrix: Matrix<R::Elem>, twist: Twist) -> Self {
        SemilinearMap { matrix, twist }
    }

    pub fn identity(r: &R, n: usize) -> Self {
        Self::new(linalg::identity(r, n), Twist::Identity)
    }

    /// `t·id` composed with the twist.
    pub fn scalar(r: &R, n: usize, t: &R::Elem, twist: Twist) -> Self {
        let mut m = linalg::identity(r, n);
        for i in 0..n {
            m.set(i, i, t.clone());
        }
        Self::new(m, twist)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn apply(&self, r: &R, a: &[R::Elem]) -> Vector<R::Elem> {
        linalg::mat_apply(r, &self.matrix, &self.twist.apply_vec(r, a))
    }

    pub fn try_apply(&self, r: &R, a: &[R::Elem]) -> Result<Vector<R::Elem>> {
        check_dim(self.dim(), a.len())?;
        Ok(self.apply(r, a))
    }

    /// `self ∘ other`.
    pub fn compose(&self, r: &R, other: &Self) -> Self {
        let right = match self.twist {
            Twist::Identity => other.matrix.clone(),
            Twist::Sigma => linalg::mat_conj(r, &other.matrix),
        };
        Self::new(linalg::mat_mul(r, &self.matrix, &right), self.twist.compose(other.twist))
    }

    pub fn inverse(&self, r: &R) -> Option<Self> {
        let inv = linalg::inverse(r, &self.matrix)?;
        let m = match self.twist {
            Twist::Identity => inv,
            Twist::Sigma => linalg::mat_conj(r, &inv),
        };
        Some(Self::new(m, self.twist))
    }

    pub fn to_value(&self, r: &R) -> Value {
        json!({ "matrix": tensor::matrix_to_value(r, &self.matrix), "twist": self.twist.name() })
    }

    pub fn from_value(r: &R, n: usize, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::schema("map must be an object"))?;
        for key in obj.keys() {
            if key != "matrix" && key != "twist" {
                return Err(Error::schema(format!("unknown field `{key}` in map")));
            }
        }
        let matrix = tensor::matrix_from_value(r, n, obj.get("matrix").ok_or_else(|| Error::schema("map needs `matrix`"))?, "map matrix")?;
        let twist = obj
            .get("twist")
            .and_then(Value::as_str)
            .and_then(Twist::parse)
            .ok_or_else(|| Error::schema("map `twist` must be \"identity\" or \"sigma\""))?;
        Ok(Self::new(matrix, twist))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{EtaleExtension, KElement, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sigma_twist_conjugates_coefficients() {
        let k = EtaleExtension::field(Rationals, q(-1)).unwrap();
        let m = SemilinearMap::identity(&k, 2);
        let sigma = SemilinearMap::new(m.matrix.clone(), Twist::Sigma);
        let i = KElement::new(q(0), q(1));
        assert_eq!(m.apply(&k, &[i.clone(), k.zero()]), vec![i.clone(), k.zero()]);
        assert_eq!(sigma.apply(&k, &[i.clone(), k.zero()]), vec![k.neg(&i), k.zero()]);
    }

    #[test]
    fn composition_and_inverse() {
        let k = EtaleExtension::field(Rationals, q(2)).unwrap();
        let x = |u: i64, v: i64| KElement::new(q(u), q(v));
        let a = SemilinearMap::new(Matrix::from_rows(vec![vec![x(1, 1), x(0, 2)], vec![x(3, 0), x(1, -1)]]), Twist::Sigma);
        let b = SemilinearMap::new(Matrix::from_rows(vec![vec![x(2, 0), x(1, 1)], vec![x(0, 1), x(5, 0)]]), Twist::Identity);
        let v = vec![x(1, 2), x(-3, 1)];
        assert_eq!(a.compose(&k, &b).apply(&k, &v), a.apply(&k, &b.apply(&k, &v)));
        let ai = a.inverse(&k).unwrap();
        assert_eq!(ai.apply(&k, &a.apply(&k, &v)), v);
        assert_eq!(a.apply(&k, &ai.apply(&k, &v)), v);
    }
}
