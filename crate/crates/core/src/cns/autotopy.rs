use serde_json::{json, Value};

use crate::cubic::{CubicForm, Twist};
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::scalars::Ring;
use crate::tensor::vector_to_value;
use crate::verify::{Report, SamplingPolicy, Var};

use super::{CubicNormStructure, SemilinearMap};

/// An autotopy `φ` together with `z = φ(1)`, `δ = N(z)` and the adjoint
/// `φ̌ = φ⁻¹U_z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Autotopy<R: Ring> {
    pub map: SemilinearMap<R>,
    pub z: Vector<R::Elem>,
    pub delta: R::Elem,
    pub adjoint: SemilinearMap<R>,
}

impl<R: Ring> Autotopy<R> {
    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint == self.map
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AutotopyVerdict<R: Ring> {
    Autotopy(Autotopy<R>),
    NotAutotopy { reason: String, witness: Option<Value> },
}

impl<R: Ring> AutotopyVerdict<R> {
    pub fn holds(&self) -> bool {
        matches!(self, AutotopyVerdict::Autotopy(_))
    }

    pub fn into_result(self) -> Result<Autotopy<R>> {
        match self {
            AutotopyVerdict::Autotopy(a) => Ok(a),
            AutotopyVerdict::NotAutotopy { reason, .. } => Err(Error::precondition(format!("not an autotopy: {reason}"))),
        }
    }
}

/// Decides whether `φ(a♯) = N(z)⁻¹U_z(φ(a)♯)` for all `a`, with `z = φ(1)`.
///
/// Both sides are quadratic in `a` (with the same twist), so agreement on the
/// basis vectors `e_i` and the sums `e_i + e_j` is equivalent to agreement
/// everywhere.
pub fn is_autotopy<R: Ring>(s: &CubicNormStructure<R>, phi: &SemilinearMap<R>) -> Result<AutotopyVerdict<R>> {
    let r = s.ring();
    let n = s.dim();
    let one = s.one()?;
    if phi.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: phi.dim() });
    }
    let not = |reason: &str, witness: Option<Value>| Ok(AutotopyVerdict::NotAutotopy { reason: reason.into(), witness });
    let Some(phi_inv) = phi.inverse(r) else {
        return not("map is not bijective", None);
    };
    let z = phi.apply(r, one);
    let delta = s.norm(&z);
    let Some(delta_inv) = r.inv(&delta) else {
        return not("φ(1) is not invertible", Some(json!({ "z": vector_to_value(r, &z) })));
    };
    let zsh = s.sharp(&z);
    for i in 0..n {
        for j in i..n {
            let mut a = linalg::unit(r, n, i);
            if j != i {
                a = linalg::add(r, &a, &linalg::unit(r, n, j));
            }
            let lhs = phi.apply(r, &s.sharp(&a));
            let rhs = linalg::scale(r, &delta_inv, &s.u_op_with(&z, &zsh, &s.sharp(&phi.apply(r, &a))));
            if lhs != rhs {
                return not(
                    "φ(a♯) ≠ φ(a)^{♯_z}",
                    Some(json!({ "a": vector_to_value(r, &a), "lhs": vector_to_value(r, &lhs), "rhs": vector_to_value(r, &rhs) })),
                );
            }
        }
    }
    let adjoint = phi_inv.compose(r, &s.u_map(&z));
    Ok(AutotopyVerdict::Autotopy(Autotopy { map: phi.clone(), z, delta, adjoint }))
}

pub fn adjoint_map<R: Ring>(s: &CubicNormStructure<R>, phi: &SemilinearMap<R>) -> Result<SemilinearMap<R>> {
    Ok(is_autotopy(s, phi)?.into_result()?.adjoint)
}

pub fn is_self_adjoint<R: Ring>(s: &CubicNormStructure<R>, phi: &SemilinearMap<R>) -> Result<bool> {
    Ok(is_autotopy(s, phi)?.into_result()?.is_self_adjoint())
}

/// The identities relating an autotopy, its adjoint and `δ = N(φ(1))`.
pub fn verify_autotopy_identities<R: Ring>(
    s: &CubicNormStructure<R>,
    phi: &SemilinearMap<R>,
    pol: &SamplingPolicy,
) -> Result<Report> {
    let at = is_autotopy(s, phi)?.into_result()?;
    let r = s.ring();
    let n = s.dim();
    let tw = phi.twist;
    let (ph, ad) = (&at.map, &at.adjoint);
    let delta = &at.delta;
    let delta_t = tw.apply(r, delta);
    let (tw_n, tw_d) = match tw {
        Twist::Identity => ("N(a)", "δ"),
        Twist::Sigma => ("N(a)^σ", "δ^{σ⁻¹}"),
    };
    use Var::{Additive as L, Vector as V};
    let mut rep = Report::new("autotopy");
    rep.push(pol.check(r, n, "autotopy.norm", &format!("N(φ(a)) = δ·{tw_n}"), &[V], |p| {
        let a = &p.v[0];
        s.norm(&ph.apply(r, a)) == r.mul(delta, &tw.apply(r, &s.norm(a)))
    }));
    let tref = match tw {
        Twist::Identity => "T(φ̌(a),b) = T(a,φ(b))",
        Twist::Sigma => "T(φ̌(a),b)^σ = T(a,φ(b))",
    };
    rep.push(pol.check(r, n, "autotopy.trace-adjoint", tref, &[L, L], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        tw.apply(r, &s.trace(&ad.apply(r, a), b)) == s.trace(a, &ph.apply(r, b))
    }));
    rep.push(pol.check(r, n, "autotopy.adjoint-sharp", &format!("φ̌(φ(a)♯) = {tw_d}·a♯"), &[V], |p| {
        let a = &p.v[0];
        ad.apply(r, &s.sharp(&ph.apply(r, a))) == linalg::scale(r, &delta_t, &s.sharp(a))
    }));
    rep.push(pol.check(r, n, "autotopy.adjoint-cross", &format!("φ̌(φ(a)×φ(b)) = {tw_d}·a×b"), &[L, L], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        ad.apply(r, &s.cross(&ph.apply(r, a), &ph.apply(r, b))) == linalg::scale(r, &delta_t, &s.cross(a, b))
    }));
    rep.push(pol.check(r, n, "autotopy.mixed-cross", "φ(a♯×φ̌(b)) = φ(a)♯×b", &[V, L], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        ph.apply(r, &s.cross(&s.sharp(a), &ad.apply(r, b))) == s.cross(&s.sharp(&ph.apply(r, a)), b)
    }));
    rep.push(pol.check(r, n, "autotopy.u-operator", "U_{φ(a)} = φ U_a φ̌", &[V], |p| {
        let a = &p.v[0];
        let pa = ph.apply(r, a);
        let (ash, pash) = (s.sharp(a), s.sharp(&pa));
        (0..n * r.degree()).all(|k| {
            let e = linalg::base_basis_vector(r, n, k);
            s.u_op_with(&pa, &pash, &e) == ph.apply(r, &s.u_op_with(a, &ash, &ad.apply(r, &e)))
        })
    }));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cns::{builtin, split_double};
    use crate::linalg::Matrix;
    use crate::scalars::{EtaleExtension, KElement, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qv(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn u_operators_are_self_adjoint_autotopies() {
        let d = builtin(Rationals, "diagonal3").unwrap();
        let ub = d.u_map(&qv(&[1, 2, -3]));
        let at = is_autotopy(&d, &ub).unwrap().into_result().unwrap();
        assert!(at.is_self_adjoint());
        assert_eq!(at.z, qv(&[1, 4, 9]));
        let rep = verify_autotopy_identities(&d, &ub, &SamplingPolicy::default()).unwrap();
        assert!(rep.all_passed(), "{}", rep.summary());
        let id = SemilinearMap::identity(&Rationals, 3);
        assert_eq!(adjoint_map(&d, &id).unwrap(), id);
    }

    #[test]
    fn arbitrary_matrix_is_rejected_with_witness() {
        let d = builtin(Rationals, "diagonal3").unwrap();
        let m = Matrix::from_rows(vec![qv(&[1, 1, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])]);
        match is_autotopy(&d, &SemilinearMap::new(m, Twist::Identity)).unwrap() {
            AutotopyVerdict::NotAutotopy { witness, .. } => assert!(witness.is_some()),
            AutotopyVerdict::Autotopy(_) => panic!("shear accepted as autotopy"),
        }
    }

    #[test]
    fn non_commuting_u_product_is_not_self_adjoint() {
        let m = builtin(Rationals, "matrices3").unwrap();
        let b = qv(&[1, 1, 0, 0, 1, 0, 0, 0, 1]);
        let c = qv(&[1, 0, 0, 1, 1, 0, 0, 0, 1]);
        let (ub, uc) = (m.u_map(&b), m.u_map(&c));
        let bc = ub.compose(&Rationals, &uc);
        assert_ne!(bc, uc.compose(&Rationals, &ub));
        let at = is_autotopy(&m, &bc).unwrap().into_result().unwrap();
        assert!(!at.is_self_adjoint());
    }

    #[test]
    fn exchange_map_on_split_double() {
        let j = split_double(&builtin(Rationals, "diagonal3").unwrap());
        let k = EtaleExtension::split(Rationals);
        for eta in [1, 2, -3] {
            let phi = SemilinearMap::scalar(&k, 3, &k.from_i64(eta), Twist::Sigma);
            let e0 = vec![KElement::new(q(1), q(0)), k.zero(), k.zero()];
            assert_eq!(phi.apply(&k, &e0), vec![KElement::new(q(0), q(eta)), k.zero(), k.zero()]);
            let at = is_autotopy(&j, &phi).unwrap().into_result().unwrap();
            assert_eq!(at.delta, k.from_i64(eta.pow(3)));
            assert!(at.is_self_adjoint());
            let rep = verify_autotopy_identities(&j, &phi, &SamplingPolicy::default()).unwrap();
            assert!(rep.all_passed(), "{}", rep.summary());
        }
    }
}
