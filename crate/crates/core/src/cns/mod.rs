//! Cubic norm structures over `F` or `K`, given by a symmetric cross tensor,
//! a symmetric trace form and an optional identity.

mod autotopy;
mod builtins;
mod semilinear;

pub use autotopy::{adjoint_map, is_autotopy, is_self_adjoint, verify_autotopy_identities, Autotopy, AutotopyVerdict};
pub use builtins::{builtin, extend_scalars, split_double, BUILTIN_NAMES};
pub use semilinear::SemilinearMap;

use serde_json::{json, Value};

use crate::cubic::{identity_suite, CubicForm, Halves, Twist};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::Ring;
use crate::tensor::{self, Gram, Tensor3};
use crate::verify::{Report, SamplingPolicy};

#[derive(Debug, Clone)]
pub struct CubicNormStructure<R: Ring> {
    ring: R,
    cross: Tensor3<R::Elem>,
    gram: Gram<R::Elem>,
    identity: Option<Vector<R::Elem>>,
    halves: Halves<R::Elem>,
}

impl<R: Ring> PartialEq for CubicNormStructure<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.cross == other.cross
            && self.gram == other.gram
            && self.identity == other.identity
    }
}

impl<R: Ring> CubicNormStructure<R> {
    /// Validates shapes and symmetry; the axioms are checked by [`Self::verify`].
    pub fn new(
        ring: R,
        cross: Tensor3<R::Elem>,
        gram: Matrix<R::Elem>,
        identity: Option<Vector<R::Elem>>,
    ) -> Result<Self> {
        let n = cross.dim();
        check_dim(n, gram.rows)?;
        check_dim(n, gram.cols)?;
        if let Some((i, j, k)) = cross.is_symmetric() {
            return Err(Error::invalid(format!("cross tensor not symmetric at [{i}][{j}][{k}]")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::invalid(format!("gram matrix not symmetric at [{i}][{j}]")));
                }
            }
        }
        if let Some(one) = &identity {
            check_dim(n, one.len())?;
            if linalg::is_zero(&ring, one) {
                return Err(Error::invalid("identity must be nonzero"));
            }
        }
        let gram = Gram::new(&ring, gram);
        let halves = Halves::new(&ring);
        Ok(CubicNormStructure { ring, cross, gram, identity, halves })
    }

    pub fn cross_tensor(&self) -> &Tensor3<R::Elem> {
        &self.cross
    }

    pub fn gram(&self) -> &Matrix<R::Elem> {
        self.gram.matrix()
    }

    pub fn is_unital(&self) -> bool {
        self.identity.is_some()
    }

    pub fn one(&self) -> Result<&[R::Elem]> {
        self.identity.as_deref().ok_or_else(|| Error::precondition("structure has no identity"))
    }

    pub fn without_identity(&self) -> Self {
        CubicNormStructure { identity: None, ..self.clone() }
    }

    pub fn check_vec(&self, a: &[R::Elem]) -> Result<()> {
        check_dim(self.dim(), a.len())
    }

    /// `N(a)⁻¹·a♯`.
    pub fn inverse(&self, a: &[R::Elem]) -> Result<Vector<R::Elem>> {
        self.check_vec(a)?;
        let ni = self.ring.inv(&self.norm(a)).ok_or(Error::NonInvertible)?;
        Ok(linalg::scale(&self.ring, &ni, &self.sharp(a)))
    }

    /// Matrix of the linear map `U_a`.
    pub fn u_matrix(&self, a: &[R::Elem]) -> Matrix<R::Elem> {
        let n = self.dim();
        let ash = self.sharp(a);
        let cols: Vec<_> = (0..n).map(|j| self.u_op_with(a, &ash, &linalg::unit(&self.ring, n, j))).collect();
        Matrix::from_cols(&cols)
    }

    pub fn u_map(&self, a: &[R::Elem]) -> SemilinearMap<R> {
        SemilinearMap::new(self.u_matrix(a), Twist::Identity)
    }

    /// The `z`-isotope: identity `z`, `a ×_z b = N(z)⁻¹U_z(a×b)`,
    /// `T_z(a,c) = T(a, U_z⁻¹(c))`.
    pub fn isotope(&self, z: &[R::Elem]) -> Result<Self> {
        self.check_vec(z)?;
        let r = &self.ring;
        let n = self.dim();
        let nz_inv = r.inv(&self.norm(z)).ok_or(Error::NonInvertible)?;
        let zsh = self.sharp(z);
        let uz_inv = linalg::inverse(r, &self.u_matrix(z)).ok_or(Error::NonInvertible)?;
        let e = |i| linalg::unit(r, n, i);
        let cross = Tensor3::from_slices(r, n, |i, j| {
            linalg::scale(r, &nz_inv, &self.u_op_with(z, &zsh, &self.cross(&e(i), &e(j))))
        });
        let inv_cols: Vec<_> = (0..n).map(|j| uz_inv.col(j)).collect();
        let gram = Matrix::from_rows((0..n).map(|i| (0..n).map(|j| self.trace(&e(i), &inv_cols[j])).collect()).collect());
        Self::new(r.clone(), cross, gram, Some(z.to_vec()))
    }

    pub fn verify(&self, pol: &SamplingPolicy) -> Report {
        let mut rep = Report::new("cubic norm structure");
        rep.records = identity_suite(self, pol, "cns");
        rep
    }

    pub fn to_value(&self) -> Value {
        let r = &self.ring;
        json!({
            "ring": r.ring_value(),
            "dim": self.dim(),
            "cross": self.cross.to_value(r),
            "gram": tensor::matrix_to_value(r, self.gram.matrix()),
            "identity": self.identity.as_ref().map(|v| tensor::vector_to_value(r, v)),
        })
    }

    /// Parses the `cross`/`gram`/`identity` fields of a structure document
    /// over an already-parsed ring.
    pub fn from_value(ring: R, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::schema("structure must be an object"))?;
        for key in obj.keys() {
            if !["ring", "dim", "cross", "gram", "identity"].contains(&key.as_str()) {
                return Err(Error::schema(format!("unknown field `{key}` in structure")));
            }
        }
        let n = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::schema("structure needs a positive integer `dim`"))? as usize;
        let cross = Tensor3::from_value(&ring, n, obj.get("cross").ok_or_else(|| Error::schema("missing `cross`"))?)?;
        let gram = tensor::matrix_from_value(&ring, n, obj.get("gram").ok_or_else(|| Error::schema("missing `gram`"))?, "gram")?;
        let identity = match obj.get("identity") {
            None | Some(Value::Null) => None,
            Some(x) => Some(tensor::vector_from_value(&ring, n, x, "identity")?),
        };
        Self::new(ring, cross, gram, identity)
    }
}

impl<R: Ring> CubicForm for CubicNormStructure<R> {
    type R = R;

    fn ring(&self) -> &R {
        &self.ring
    }
    fn dim(&self) -> usize {
        self.cross.dim()
    }
    fn twist(&self) -> Twist {
        Twist::Identity
    }
    fn halves(&self) -> &Halves<R::Elem> {
        &self.halves
    }
    fn cross(&self, a: &[R::Elem], b: &[R::Elem]) -> Vector<R::Elem> {
        self.cross.contract(&self.ring, a, b)
    }
    fn trace(&self, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
        self.gram.eval(&self.ring, a, b)
    }
    fn identity(&self) -> Option<&[R::Elem]> {
        self.identity.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use crate::verify::Mode;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qv(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn diagonal_examples() {
        let d = builtin(Rationals, "diagonal3").unwrap();
        assert_eq!(d.cross(&qv(&[1, 0, 0]), &qv(&[0, 1, 0])), qv(&[0, 0, 1]));
        assert_eq!(d.cross(&qv(&[1, 2, 3]), &qv(&[0, 0, 0])), qv(&[0, 0, 0]));
        assert_eq!(d.sharp(&qv(&[1, 2, 3])), qv(&[6, 3, 2]));
        assert_eq!(d.norm(&qv(&[1, 2, 3])), q(6));
        assert_eq!(d.norm(&qv(&[0, 0, 0])), q(0));
        assert_eq!(d.trace(&qv(&[1, 2, 3]), &qv(&[1, 1, 1])), q(6));
        assert_eq!(d.u_op(&qv(&[1, 2, 3]), &qv(&[1, 1, 1])), qv(&[1, 4, 9]));
        assert_eq!(d.inverse(&qv(&[1, 2, 3])).unwrap(), vec![q(1), qr(1, 2), qr(1, 3)]);
        assert_eq!(d.inverse(&qv(&[1, 0, 3])), Err(Error::NonInvertible));
        let one = qv(&[1, 1, 1]);
        assert_eq!(d.inverse(&one).unwrap(), one);
        assert_eq!(d.cross(&one, &one), qv(&[2, 2, 2]));
        assert_eq!(d.norm(&one), q(1));
    }

    #[test]
    fn diagonal_isotope() {
        let d = builtin(Rationals, "diagonal3").unwrap();
        let z = qv(&[1, 1, 2]);
        let iso = d.isotope(&z).unwrap();
        assert_eq!(iso.one().unwrap(), z.as_slice());
        assert_eq!(iso.sharp(&qv(&[1, 1, 1])), vec![qr(1, 2), qr(1, 2), q(2)]);
        assert_eq!(d.isotope(&qv(&[1, 1, 1])).unwrap(), d);
        assert!(d.isotope(&qv(&[1, 0, 1])).is_err());
        assert!(iso.verify(&SamplingPolicy::default()).all_passed());
    }

    #[test]
    fn unit_structure() {
        let u = builtin(Rationals, "unit").unwrap();
        assert_eq!(u.norm(&qv(&[2])), q(8));
        assert_eq!(u.sharp(&qv(&[3])), qv(&[9]));
        assert_eq!(u.trace(&qv(&[2]), &qv(&[5])), q(30));
    }

    /// Adjugate by cofactors, the reference for the matrices3 adjoint.
    fn adjugate(m: &[BigRational]) -> Vec<BigRational> {
        let at = |i: usize, j: usize| &m[3 * i + j];
        let mut out = vec![q(0); 9];
        for i in 0..3 {
            for j in 0..3 {
                // Minor of the transpose position: delete row j and column i.
                let r0: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                let cols: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                let minor = at(r0[0], cols[0]) * at(r0[1], cols[1]) - at(r0[0], cols[1]) * at(r0[1], cols[0]);
                out[3 * i + j] = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        out
    }

    fn mat_product(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        (0..9).map(|ij| (0..3).map(|k| &a[3 * (ij / 3) + k] * &b[3 * k + ij % 3]).sum()).collect()
    }

    #[test]
    fn matrices_sharp_is_adjugate() {
        let m = builtin(Rationals, "matrices3").unwrap();
        let a = qv(&[2, -1, 3, 0, 4, 1, 5, -2, 7]);
        let adj = adjugate(&a);
        let det = m.norm(&a);
        let prod = mat_product(&adj, &a);
        for (k, x) in prod.iter().enumerate() {
            assert_eq!(*x, if k % 4 == 0 { det.clone() } else { q(0) });
        }
        assert_eq!(m.sharp(&a), adj);
        let b = qv(&[1, 0, 2, -3, 1, 1, 0, 6, -1]);
        let ab = mat_product(&a, &b);
        assert_eq!(m.trace(&a, &b), &ab[0] + &ab[4] + &ab[8]);
    }

    #[test]
    fn suites_pass_on_builtins() {
        let pol = SamplingPolicy::default();
        for name in ["unit", "diagonal3", "matrices3", "radical4"] {
            let s = builtin(Rationals, name).unwrap();
            let rep = s.verify(&pol);
            assert!(rep.all_passed(), "{name}: {}", rep.summary());
        }
        let f5 = PrimeField::new(5).unwrap();
        let rep = builtin(f5, "diagonal3").unwrap().verify(&pol);
        assert!(rep.all_passed());
        assert!(rep.records.iter().all(|r| r.mode != Mode::Sampled), "{}", rep.summary());
    }

    #[test]
    fn corrupted_gram_is_caught() {
        let d = builtin(Rationals, "diagonal3").unwrap();
        let mut g = d.gram().clone();
        g.set(0, 0, q(2));
        let bad = CubicNormStructure::new(Rationals, d.cross_tensor().clone(), g, Some(qv(&[1, 1, 1]))).unwrap();
        let rep = bad.verify(&SamplingPolicy::default());
        let rec = rep.get("cns.axiom.identity-cross").unwrap();
        assert!(!rec.passed());
        assert!(rec.witness.is_some());
    }

    #[test]
    fn document_round_trip() {
        let d = builtin(Rationals, "matrices3").unwrap();
        let v = d.to_value();
        assert_eq!(CubicNormStructure::from_value(Rationals, &v).unwrap(), d);
    }
}
