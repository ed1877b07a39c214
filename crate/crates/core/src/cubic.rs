//! Operations shared by ordinary and hermitian cubic norm structures.
//!
//! Both are given by a cross tensor and a Gram matrix; they differ only in
//! whether the inputs of `×` and the second argument of `T` are conjugated.
//! The identities they satisfy coincide once the right conjugations (the
//! [`Twist`] of the structure) are inserted, so one suite checks both.

use serde_json::{json, Value};

use crate::linalg::{self, Vector};
use crate::scalars::Ring;
use crate::verify::{Record, SamplingPolicy, Var};

/// A ring automorphism from `{id, σ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Twist {
    Identity,
    Sigma,
}

impl Twist {
    pub fn apply<R: Ring>(self, r: &R, t: &R::Elem) -> R::Elem {
        match self {
            Twist::Identity => t.clone(),
            Twist::Sigma => r.conj(t),
        }
    }

    pub fn apply_vec<R: Ring>(self, r: &R, v: &[R::Elem]) -> Vector<R::Elem> {
        match self {
            Twist::Identity => v.to_vec(),
            Twist::Sigma => linalg::conj(r, v),
        }
    }

    pub fn compose(self, other: Twist) -> Twist {
        if self == other {
            Twist::Identity
        } else {
            Twist::Sigma
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Twist::Identity => "identity",
            Twist::Sigma => "sigma",
        }
    }

    pub fn parse(s: &str) -> Option<Twist> {
        match s {
            "identity" => Some(Twist::Identity),
            "sigma" => Some(Twist::Sigma),
            _ => None,
        }
    }
}

/// `1/2` and `1/3` in a ring, computed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halves<E> {
    pub half: E,
    pub third: E,
}

impl<E> Halves<E> {
    pub fn new<R: Ring<Elem = E>>(r: &R) -> Self {
        Halves {
            half: r.inv(&r.from_i64(2)).expect("characteristic is not 2"),
            third: r.inv(&r.from_i64(3)).expect("characteristic is not 3"),
        }
    }
}

/// A free module with a cubic norm, adjoint and trace derived from a cross
/// product and a trace form.
pub trait CubicForm {
    type R: Ring;

    fn ring(&self) -> &Self::R;
    fn dim(&self) -> usize;
    /// `Identity` for ordinary structures, `Sigma` for hermitian ones.
    fn twist(&self) -> Twist;
    fn halves(&self) -> &Halves<<Self::R as Ring>::Elem>;
    fn cross(&self, a: &[Elem<Self>], b: &[Elem<Self>]) -> Vector<Elem<Self>>;
    fn trace(&self, a: &[Elem<Self>], b: &[Elem<Self>]) -> Elem<Self>;
    fn identity(&self) -> Option<&[Elem<Self>]> {
        None
    }

    fn sharp(&self, a: &[Elem<Self>]) -> Vector<Elem<Self>> {
        linalg::scale(self.ring(), &self.halves().half, &self.cross(a, a))
    }

    fn norm(&self, a: &[Elem<Self>]) -> Elem<Self> {
        let r = self.ring();
        r.mul(&self.halves().third, &self.trace(a, &self.sharp(a)))
    }

    /// `U_a(b) = T(a,b)a − a♯×b`.
    fn u_op(&self, a: &[Elem<Self>], b: &[Elem<Self>]) -> Vector<Elem<Self>> {
        self.u_op_with(a, &self.sharp(a), b)
    }

    /// `U_a(b)` given a precomputed `a♯`.
    fn u_op_with(&self, a: &[Elem<Self>], a_sharp: &[Elem<Self>], b: &[Elem<Self>]) -> Vector<Elem<Self>> {
        let r = self.ring();
        let t = self.trace(a, b);
        linalg::sub(r, &linalg::scale(r, &t, a), &self.cross(a_sharp, b))
    }

    fn tw(&self, t: &Elem<Self>) -> Elem<Self> {
        self.twist().apply(self.ring(), t)
    }
}

pub type Elem<C> = <<C as CubicForm>::R as Ring>::Elem;

/// Whether some basis triple has `T(e_a, e_b × e_c) ≠ 0`, i.e. the norm is
/// not the zero map.
pub fn norm_is_nonzero<C: CubicForm + ?Sized>(c: &C) -> bool {
    let r = c.ring();
    let n = c.dim();
    let e = |i| linalg::unit(r, n, i);
    (0..n).any(|a| (0..n).any(|b| (0..n).any(|d| !r.is_zero(&c.trace(&e(a), &c.cross(&e(b), &e(d)))))))
}

fn vec_value<R: Ring>(r: &R, v: &[R::Elem]) -> Value {
    Value::Array(v.iter().map(|x| r.emit(x)).collect())
}

/// Evaluates every identity of a (hermitian) cubic norm structure: the
/// defining axioms, the derived identities, the fundamental identity and
/// (twisted) bilinearity of `×` and `T`. Unital axioms are included when the
/// structure has an identity.
pub fn identity_suite<C: CubicForm + ?Sized>(c: &C, pol: &SamplingPolicy, prefix: &str) -> Vec<Record> {
    let r = c.ring();
    let n = c.dim();
    let id = |s: &str| format!("{prefix}.{s}");
    let tw = c.twist();
    let sq = |t: &Elem<C>| r.mul(t, t);
    let (s2, s3) = match tw {
        Twist::Identity => ("t²", "N(a)"),
        Twist::Sigma => ("(t^σ)²", "N(a)^σ"),
    };
    use Var::{Additive as L, Scalar as S, Vector as V};
    let mut out = Vec::new();

    out.push(pol.check(r, n, &id("sharp-cross"), "(a+b)♯ − a♯ − b♯ = a×b", &[V, V], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        let lhs = linalg::sub(r, &linalg::sub(r, &c.sharp(&linalg::add(r, a, b)), &c.sharp(a)), &c.sharp(b));
        lhs == c.cross(a, b)
    }));
    out.push(pol.check(r, n, &id("cross-symmetric"), "a×b = b×a", &[L, L], |p| {
        c.cross(&p.v[0], &p.v[1]) == c.cross(&p.v[1], &p.v[0])
    }));
    let cross_ref = match tw {
        Twist::Identity => "(ta)×b = t(a×b)",
        Twist::Sigma => "(ta)×b = t^σ(a×b)",
    };
    out.push(pol.check(r, n, &id("cross-scalar"), cross_ref, &[S, L, L], |p| {
        let t = &p.s[0];
        c.cross(&linalg::scale(r, t, &p.v[0]), &p.v[1]) == linalg::scale(r, &c.tw(t), &c.cross(&p.v[0], &p.v[1]))
    }));
    let sym_ref = match tw {
        Twist::Identity => "T(a,b) = T(b,a)",
        Twist::Sigma => "T(a,b)^σ = T(b,a)",
    };
    out.push(pol.check(r, n, &id("trace-symmetry"), sym_ref, &[L, L], |p| {
        c.tw(&c.trace(&p.v[0], &p.v[1])) == c.trace(&p.v[1], &p.v[0])
    }));
    let lin_ref = match tw {
        Twist::Identity => "T(sa,tb) = st·T(a,b)",
        Twist::Sigma => "T(sa,tb) = s·t^σ·T(a,b)",
    };
    out.push(pol.check(r, n, &id("trace-scalar"), lin_ref, &[S, S, L, L], |p| {
        let (s, t) = (&p.s[0], &p.s[1]);
        let lhs = c.trace(&linalg::scale(r, s, &p.v[0]), &linalg::scale(r, t, &p.v[1]));
        lhs == r.mul(s, &r.mul(&c.tw(t), &c.trace(&p.v[0], &p.v[1])))
    }));

    out.push(pol.check(r, n, &id("axiom.sharp-homogeneous"), &format!("(ta)♯ = {s2}·a♯"), &[S, V], |p| {
        let t = &p.s[0];
        c.sharp(&linalg::scale(r, t, &p.v[0])) == linalg::scale(r, &sq(&c.tw(t)), &c.sharp(&p.v[0]))
    }));
    out.push(pol.check(r, n, &id("axiom.norm-homogeneous"), "N(ta) = t³N(a)", &[S, V], |p| {
        let t = &p.s[0];
        c.norm(&linalg::scale(r, t, &p.v[0])) == r.mul(&r.pow(t, 3), &c.norm(&p.v[0]))
    }));
    out.push(pol.check(r, n, &id("axiom.norm-expansion"), "N(a+b) = N(a) + T(b,a♯) + T(a,b♯) + N(b)", &[V, V], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        let rhs = [c.norm(a), c.trace(b, &c.sharp(a)), c.trace(a, &c.sharp(b)), c.norm(b)]
            .iter()
            .fold(r.zero(), |acc, x| r.add(&acc, x));
        c.norm(&linalg::add(r, a, b)) == rhs
    }));
    out.push(pol.check(r, n, &id("axiom.adjoint-identity"), "a♯♯ = N(a)a", &[V], |p| {
        let a = &p.v[0];
        c.sharp(&c.sharp(a)) == linalg::scale(r, &c.norm(a), a)
    }));
    if let Some(one) = c.identity() {
        let one = one.to_vec();
        let s = c.sharp(&one);
        out.push(Record::direct(&id("axiom.identity-sharp"), "1♯ = 1", s == one, || {
            json!({ "sharp_of_identity": vec_value(r, &s) })
        }));
        out.push(pol.check(r, n, &id("axiom.identity-cross"), "b = T(b,1)1 − 1×b", &[L], |p| {
            let b = &p.v[0];
            let rhs = linalg::sub(r, &linalg::scale(r, &c.trace(b, &one), &one), &c.cross(&one, b));
            *b == rhs
        }));
        out.push(Record::direct(&id("identity-norm"), "N(1) = 1", c.norm(&one) == r.one(), || {
            json!({ "norm_of_identity": r.emit(&c.norm(&one)) })
        }));
    }

    out.push(pol.check(r, n, &id("trilinear-symmetry"), "T(a×b,c) = T(a×c,b)", &[L, L, L], |p| {
        let (a, b, d) = (&p.v[0], &p.v[1], &p.v[2]);
        c.trace(&c.cross(a, b), d) == c.trace(&c.cross(a, d), b)
    }));
    out.push(pol.check(r, n, &id("trace-of-adjoint"), "T(a,a♯) = 3N(a)", &[V], |p| {
        let a = &p.v[0];
        c.trace(a, &c.sharp(a)) == r.mul(&r.from_i64(3), &c.norm(a))
    }));
    out.push(pol.check(r, n, &id("cross-adjoint-left"), "a♯×(a×b) = N(a)b + T(b,a♯)a", &[V, L], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        let ash = c.sharp(a);
        let rhs = linalg::add(r, &linalg::scale(r, &c.norm(a), b), &linalg::scale(r, &c.trace(b, &ash), a));
        c.cross(&ash, &c.cross(a, b)) == rhs
    }));
    out.push(pol.check(r, n, &id("cross-adjoint-right"), &format!("a×(a♯×b) = {s3}·b + T(b,a)a♯"), &[V, L], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        let ash = c.sharp(a);
        let rhs = linalg::add(r, &linalg::scale(r, &c.tw(&c.norm(a)), b), &linalg::scale(r, &c.trace(b, a), &ash));
        c.cross(a, &c.cross(&ash, b)) == rhs
    }));
    out.push(pol.check(r, n, &id("norm-of-adjoint"), &format!("N(a♯) = ({s3})²"), &[V], |p| {
        let a = &p.v[0];
        c.norm(&c.sharp(a)) == sq(&c.tw(&c.norm(a)))
    }));
    out.push(pol.check(r, n, &id("adjoint-of-u"), "U_a(b)♯ = U_{a♯}(b♯)", &[V, V], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        c.sharp(&c.u_op(a, b)) == c.u_op(&c.sharp(a), &c.sharp(b))
    }));
    let rhs2 = match tw {
        Twist::Identity => "N(a)²b",
        Twist::Sigma => "N(a)^{2σ}b",
    };
    out.push(pol.check(
        r,
        n,
        &id("u-adjoint-inverse"),
        &format!("U_a U_{{a♯}}(b) = N(a)²b and U_{{a♯}} U_a(b) = {rhs2}"),
        &[V, L],
        |p| {
            let (a, b) = (&p.v[0], &p.v[1]);
            let ash = c.sharp(a);
            let ashsh = c.sharp(&ash);
            let na = c.norm(a);
            let left = c.u_op_with(a, &ash, &c.u_op_with(&ash, &ashsh, b));
            let right = c.u_op_with(&ash, &ashsh, &c.u_op_with(a, &ash, b));
            left == linalg::scale(r, &sq(&na), b) && right == linalg::scale(r, &sq(&c.tw(&na)), b)
        },
    ));
    out.push(pol.check(r, n, &id("u-symmetry"), "T(b,U_a(c)) = T(c,U_a(b))", &[V, L, L], |p| {
        let (a, b, d) = (&p.v[0], &p.v[1], &p.v[2]);
        let ash = c.sharp(a);
        c.trace(b, &c.u_op_with(a, &ash, d)) == c.trace(d, &c.u_op_with(a, &ash, b))
    }));
    let nu_ref = match tw {
        Twist::Identity => "N(U_a(b)) = N(a)²N(b)",
        Twist::Sigma => "N(U_a(b)) = N(a)²N(b)^σ",
    };
    out.push(pol.check(r, n, &id("norm-of-u"), nu_ref, &[V, V], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        c.norm(&c.u_op(a, b)) == r.mul(&sq(&c.norm(a)), &c.tw(&c.norm(b)))
    }));
    out.push(pol.check(r, n, &id("fundamental-identity"), "U_{U_b(a)} = U_b U_a U_b", &[V, V], |p| {
        let (a, b) = (&p.v[0], &p.v[1]);
        let bsh = c.sharp(b);
        let ash = c.sharp(a);
        let uba = c.u_op_with(b, &bsh, a);
        let uba_sh = c.sharp(&uba);
        (0..n * r.degree()).all(|k| {
            let e = linalg::base_basis_vector(r, n, k);
            let lhs = c.u_op_with(&uba, &uba_sh, &e);
            let rhs = c.u_op_with(b, &bsh, &c.u_op_with(a, &ash, &c.u_op_with(b, &bsh, &e)));
            lhs == rhs
        })
    }));
    out
}
