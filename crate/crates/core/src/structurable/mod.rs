//! Structurable algebras of skew-dimension one: `A = K ⊕ J` built from a
//! hermitian cubic norm structure (the canonical form) or from a cubic norm
//! structure with a σ-semilinear self-adjoint autotopy, plus the
//! structure-constant form used for verification and extraction.

mod extract;
mod generic;
mod matrix;
mod scan;

pub use extract::{extract_hcns, Extraction};
pub use generic::{verify_structurable, GenericAlgebra, BASIS_QUADRUPLE_MAX_DIM};
pub use matrix::matrix_algebra;
pub use scan::{division_scan, projective_zeros, SCAN_LIMIT};

use serde_json::{json, Value};

use crate::cns::{is_autotopy, CubicNormStructure, SemilinearMap};
use crate::cubic::{CubicForm, Twist};
use crate::error::{check_dim, Error, Result};
use crate::hcns::{from_autotopy, gamma_condition, HermitianCns};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{EtaleExtension, Field, KElement, Ring};
use crate::tensor;
use crate::verify::{Mode, Record, Report, SamplingPolicy, Status, Var};

/// An element `(s, b)` of `K ⊕ J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KjElement<E> {
    pub s: KElement<E>,
    pub b: Vec<KElement<E>>,
}

impl<E> KjElement<E> {
    pub fn new(s: KElement<E>, b: Vec<KElement<E>>) -> Self {
        KjElement { s, b }
    }
}

/// F-coordinates `[s.u, s.v, b₀.u, b₀.v, …]`.
pub fn to_coords<F: Field>(k: &EtaleExtension<F>, x: &KjElement<F::Elem>) -> Vector<F::Elem> {
    let mut out = k.to_base_coords(&x.s);
    out.extend(linalg::to_base(k, &x.b));
    out
}

pub fn from_coords<F: Field>(k: &EtaleExtension<F>, c: &[F::Elem]) -> KjElement<F::Elem> {
    KjElement::new(k.from_base_coords(&c[..2]), linalg::from_base(k, &c[2..]))
}

fn element_value<F: Field>(k: &EtaleExtension<F>, x: &KjElement<F::Elem>) -> Value {
    json!({ "s": k.emit(&x.s), "b": tensor::vector_to_value(k, &x.b) })
}

/// Parses `{"s": k, "b": [k, …]}`.
pub fn element_from_value<F: Field>(k: &EtaleExtension<F>, n: usize, v: &Value) -> Result<KjElement<F::Elem>> {
    let obj = v.as_object().ok_or_else(|| Error::schema("algebra element must be an object"))?;
    for key in obj.keys() {
        if key != "s" && key != "b" {
            return Err(Error::schema(format!("unknown field `{key}` in algebra element")));
        }
    }
    let s = k.parse(obj.get("s").ok_or_else(|| Error::schema("element needs `s`"))?)?;
    let b = tensor::vector_from_value(k, n, obj.get("b").ok_or_else(|| Error::schema("element needs `b`"))?, "element `b`")?;
    Ok(KjElement::new(s, b))
}

/// `A(H) = K ⊕ J` with `(s,b)(t,c) = (st + T(b,c), sc + t^σ b + b×c)` and
/// `(s,b)‾ = (s^σ, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewDimOneAlgebra<F: Field> {
    hcns: HermitianCns<F>,
}

impl<F: Field> SkewDimOneAlgebra<F> {
    pub fn new(hcns: HermitianCns<F>) -> Self {
        SkewDimOneAlgebra { hcns }
    }

    pub fn hcns(&self) -> &HermitianCns<F> {
        &self.hcns
    }

    pub fn extension(&self) -> &EtaleExtension<F> {
        self.hcns.extension()
    }

    /// `F`-dimension `2 + 2n`.
    pub fn f_dim(&self) -> usize {
        2 + 2 * self.hcns.dim()
    }

    pub fn check(&self, x: &KjElement<F::Elem>) -> Result<()> {
        check_dim(self.hcns.dim(), x.b.len())
    }

    pub fn one(&self) -> KjElement<F::Elem> {
        let k = self.extension();
        KjElement::new(k.one(), linalg::zeros(k, self.hcns.dim()))
    }

    /// The skew element `(s₀, 0)` with `s₀` spanning the trace-zero line.
    pub fn skew_element(&self) -> KjElement<F::Elem> {
        let k = self.extension();
        KjElement::new(k.trace_zero_generator(), linalg::zeros(k, self.hcns.dim()))
    }

    pub fn mul(&self, x: &KjElement<F::Elem>, y: &KjElement<F::Elem>) -> KjElement<F::Elem> {
        let k = self.extension();
        let h = &self.hcns;
        let s = k.add(&k.mul(&x.s, &y.s), &h.trace(&x.b, &y.b));
        let b = linalg::add(
            k,
            &linalg::add(k, &linalg::scale(k, &x.s, &y.b), &linalg::scale(k, &k.conj(&y.s), &x.b)),
            &h.cross(&x.b, &y.b),
        );
        KjElement::new(s, b)
    }

    pub fn try_mul(&self, x: &KjElement<F::Elem>, y: &KjElement<F::Elem>) -> Result<KjElement<F::Elem>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn conj(&self, x: &KjElement<F::Elem>) -> KjElement<F::Elem> {
        KjElement::new(self.extension().conj(&x.s), x.b.clone())
    }

    /// `[x,y] = (T(b,c) − T(c,b), (s − s^σ)c + (t^σ − t)b)`.
    pub fn commutator_closed(&self, x: &KjElement<F::Elem>, y: &KjElement<F::Elem>) -> KjElement<F::Elem> {
        let k = self.extension();
        let h = &self.hcns;
        let s = k.sub(&h.trace(&x.b, &y.b), &h.trace(&y.b, &x.b));
        let b = linalg::add(
            k,
            &linalg::scale(k, &k.sub(&x.s, &k.conj(&x.s)), &y.b),
            &linalg::scale(k, &k.sub(&k.conj(&y.s), &y.s), &x.b),
        );
        KjElement::new(s, b)
    }

    /// `ν(s,b) = (Nr(s) − T(b,b))² − 4T(b♯,b♯) + 4Tr(s·N(b))`.
    pub fn nu(&self, x: &KjElement<F::Elem>) -> Result<F::Elem> {
        self.check(x)?;
        let k = self.extension();
        let f = k.base();
        let h = &self.hcns;
        let not_in_f = |what: &str| Error::VerificationFailed(format!("{what} does not lie in F"));
        let tbb = k.to_base(&h.trace(&x.b, &x.b)).ok_or_else(|| not_in_f("T(b,b)"))?;
        let bsh = h.sharp(&x.b);
        let tss = k.to_base(&h.trace(&bsh, &bsh)).ok_or_else(|| not_in_f("T(b♯,b♯)"))?;
        let a = f.sub(&k.norm(&x.s), &tbb);
        let four = f.from_int(4);
        let tr = k.trace(&k.mul(&x.s, &h.norm(&x.b)));
        Ok(f.add(&f.sub(&f.mul(&a, &a), &f.mul(&four, &tss)), &f.mul(&four, &tr)))
    }

    pub fn to_coords(&self, x: &KjElement<F::Elem>) -> Vector<F::Elem> {
        to_coords(self.extension(), x)
    }

    pub fn from_coords(&self, c: &[F::Elem]) -> KjElement<F::Elem> {
        from_coords(self.extension(), c)
    }

    /// Structure constants in the coordinates of [`to_coords`].
    pub fn to_generic(&self) -> GenericAlgebra<F> {
        let k = self.extension();
        GenericAlgebra::from_product(
            k.base().clone(),
            self.f_dim(),
            |x, y| self.to_coords(&self.mul(&self.from_coords(x), &self.from_coords(y))),
            |x| self.to_coords(&self.conj(&self.from_coords(x))),
            self.to_coords(&self.one()),
        )
        .expect("A(H) has a unit and an involution")
    }

    /// The radical of `T` on `J` as an `F`-space, embedded as `{(0,r)}`, with
    /// the ideal property checked when it is nonzero.
    pub fn radical(&self) -> RadicalReport<F::Elem> {
        let k = self.extension();
        let f = k.base();
        let h = &self.hcns;
        let n = h.dim();
        let units: Vec<_> = (0..n).map(|j| linalg::unit(k, n, j)).collect();
        let real = linalg::realize_map(k, n, |r| units.iter().map(|e| h.trace(e, r)).collect());
        let ideal: Vec<Vector<F::Elem>> = linalg::nullspace(f, &real)
            .into_iter()
            .map(|r| {
                let mut c = vec![f.zero(), f.zero()];
                c.extend(r);
                c
            })
            .collect();
        let nondegenerate = linalg::inverse(k, h.gram()).is_some();
        let mut report = Report::new("radical of T");
        report.push(Record::direct(
            "radical.degeneracy",
            "rad T = 0 iff det G ≠ 0",
            nondegenerate == ideal.is_empty(),
            || json!({ "radical_dim": ideal.len(), "nondegenerate": nondegenerate }),
        ));
        if !ideal.is_empty() {
            let g = self.to_generic();
            let m = g.dim();
            let dim = ideal.len();
            let in_span = |v: &[F::Elem]| linalg::rank(f, &linalg::stack_rows(m, ideal.iter().cloned().chain([v.to_vec()]))) == dim;
            let check = |id: &str, reference: &str, img: &dyn Fn(&[F::Elem], &[F::Elem]) -> Vector<F::Elem>| {
                let mut cases = 0;
                let mut witness = None;
                'outer: for r in &ideal {
                    for a in 0..m {
                        cases += 1;
                        let v = img(r, &g.basis(a));
                        if !in_span(&v) {
                            witness = Some(json!({ "r": tensor::vector_to_value(f, r), "basis": a }));
                            break 'outer;
                        }
                    }
                }
                Record {
                    id: id.into(),
                    reference: reference.into(),
                    status: if witness.is_none() { Status::Pass } else { Status::Fail },
                    mode: Mode::Exhaustive,
                    cases,
                    witness,
                }
            };
            report.push(check("radical.right-ideal", "I·A ⊆ I", &|r, a| g.mul(r, a)));
            report.push(check("radical.left-ideal", "A·I ⊆ I", &|r, a| g.mul(a, r)));
            report.push(check("radical.involution", "Ī = I", &|r, _| g.conj(r)));
            report.push(Record::direct("radical.proper", "0 ≠ I ≠ A", dim < m, || Value::Null));
        }
        RadicalReport { nondegenerate, ideal, report }
    }

    pub fn to_value(&self) -> Value {
        json!({ "presentation": "hermitian", "extension": self.extension().descriptor_value(), "hcns": self.hcns.to_value() })
    }

    pub fn element_value(&self, x: &KjElement<F::Elem>) -> Value {
        element_value(self.extension(), x)
    }
}

#[derive(Debug, Clone)]
pub struct RadicalReport<E> {
    pub nondegenerate: bool,
    /// `F`-basis of `{(0,r) : r ∈ rad T}` in algebra coordinates.
    pub ideal: Vec<Vector<E>>,
    pub report: Report,
}

/// Checks that `ν` is a quartic form with `ν(1) = 1` and `ν(s,0) = Nr(s)²`,
/// that it agrees with `ψ(x, U_x(s₀x))s₀ / 6μ` for a basis of skew `s₀` and
/// its rescalings, that `ψ` lands in the skew part and that commutators
/// match the closed form.
pub fn verify_norm<F: Field>(a: &SkewDimOneAlgebra<F>, pol: &SamplingPolicy) -> Report {
    let k = a.extension();
    let f = k.base();
    let g = a.to_generic();
    let m = g.dim();
    let n = a.hcns().dim();
    let nu = |c: &[F::Elem]| a.nu(&a.from_coords(c)).ok();
    let mut rep = Report::new("norm of a skew-dimension-one algebra");
    rep.push(Record::direct("nu.unit", "ν(1) = 1", nu(g.unit()) == Some(f.one()), || Value::Null));
    rep.push(pol.check(f, m, "nu.quartic", "ν(tx) = t⁴ν(x)", &[Var::Vector, Var::Scalar], |p| {
        let (x, t) = (&p.v[0], &p.s[0]);
        match (nu(&linalg::scale(f, t, x)), nu(x)) {
            (Some(l), Some(r)) => l == f.mul(&f.pow(t, 4), &r),
            _ => false,
        }
    }));
    rep.push(pol.check(k, 1, "nu.scalar", "ν(s,0) = Nr(s)²", &[Var::Vector], |p| {
        let s = &p.v[0][0];
        a.nu(&KjElement::new(s.clone(), linalg::zeros(k, n))).ok() == Some(f.pow(&k.norm(s), 2))
    }));

    let skew = g.skew_basis();
    rep.push(Record::direct("nu.skew-dimension", "dim S = 1", skew.len() == 1, || json!({ "dim": skew.len() })));
    let mut rng = pol.rng_for("nu.psi-agreement");
    let xs: Vec<_> = (0..pol.samples.max(100)).map(|_| g.sample(&mut rng)).collect();
    let mut cases = 0;
    let mut witness = None;
    'outer: for base in &skew {
        for t in [1, 2, -3] {
            let s0 = linalg::scale(f, &f.from_int(t), base);
            for x in std::iter::once(g.unit().to_vec()).chain(xs.iter().cloned()) {
                cases += 1;
                let ok = match (g.nu_via_psi(&x, &s0), nu(&x)) {
                    (Ok(l), Some(r)) => l == r,
                    _ => false,
                };
                if !ok {
                    witness = Some(json!({ "x": tensor::vector_to_value(f, &x), "s0": tensor::vector_to_value(f, &s0) }));
                    break 'outer;
                }
            }
        }
    }
    rep.push(Record {
        id: "nu.psi-agreement".into(),
        reference: "ν(x) = ψ(x, U_x(s₀x))s₀ / 6μ, s₀² = μ".into(),
        status: if witness.is_none() && !skew.is_empty() { Status::Pass } else { Status::Fail },
        mode: Mode::Sampled,
        cases,
        witness,
    });

    rep.push(pol.check(f, m, "nu.psi-skew", "ψ(x,y) ∈ S", &[Var::Additive, Var::Additive], |p| {
        let v = g.psi(&p.v[0], &p.v[1]);
        g.conj(&v) == linalg::neg(f, &v)
    }));
    rep.push(pol.check(
        f,
        m,
        "nu.commutator",
        "[(s,b),(t,c)] = (T(b,c) − T(c,b), (s − s^σ)c + (t^σ − t)b)",
        &[Var::Additive, Var::Additive],
        |p| a.to_coords(&a.commutator_closed(&a.from_coords(&p.v[0]), &a.from_coords(&p.v[1]))) == g.commutator(&p.v[0], &p.v[1]),
    ));
    rep
}

/// The algebra on `K ⊕ J` attached to a cubic norm structure over `K`, a
/// σ-semilinear self-adjoint autotopy `φ` and `γ` with `γ·σ(γ) = N(φ(1))⁻¹`:
/// `(s,b)(t,c) = (st + T(b,φ(c)), sc + t^σ b + γ·φ(b)×φ(c))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutotopyAlgebra<F: Field> {
    cns: CubicNormStructure<EtaleExtension<F>>,
    phi: SemilinearMap<EtaleExtension<F>>,
    gamma: KElement<F::Elem>,
    gamma_inv: KElement<F::Elem>,
}

impl<F: Field> AutotopyAlgebra<F> {
    pub fn new(
        cns: CubicNormStructure<EtaleExtension<F>>,
        phi: SemilinearMap<EtaleExtension<F>>,
        gamma: KElement<F::Elem>,
    ) -> Result<Self> {
        if phi.twist != Twist::Sigma {
            return Err(Error::precondition("the autotopy must be σ-semilinear"));
        }
        let at = is_autotopy(&cns, &phi)?.into_result()?;
        if !at.is_self_adjoint() {
            return Err(Error::precondition("the autotopy is not self-adjoint"));
        }
        let k = cns.ring();
        if !gamma_condition(k, &gamma, &at.delta) {
            return Err(Error::precondition("γ·σ(γ) ≠ δ⁻¹"));
        }
        let gamma_inv = k.inv(&gamma).ok_or(Error::NonInvertible)?;
        Ok(AutotopyAlgebra { cns, phi, gamma, gamma_inv })
    }

    pub fn extension(&self) -> &EtaleExtension<F> {
        self.cns.ring()
    }

    pub fn f_dim(&self) -> usize {
        2 + 2 * self.cns.dim()
    }

    pub fn mul(&self, x: &KjElement<F::Elem>, y: &KjElement<F::Elem>) -> KjElement<F::Elem> {
        let k = self.extension();
        let (pb, pc) = (self.phi.apply(k, &x.b), self.phi.apply(k, &y.b));
        let s = k.add(&k.mul(&x.s, &y.s), &self.cns.trace(&x.b, &pc));
        let b = linalg::add(
            k,
            &linalg::add(k, &linalg::scale(k, &x.s, &y.b), &linalg::scale(k, &k.conj(&y.s), &x.b)),
            &linalg::scale(k, &self.gamma, &self.cns.cross(&pb, &pc)),
        );
        KjElement::new(s, b)
    }

    /// `ν(s,b) = (Nr(s) − T(b,φ(b)))² − 4T(b♯,φ(b)♯) + 4Tr(γ⁻¹·s·N(b))`.
    pub fn nu(&self, x: &KjElement<F::Elem>) -> Result<F::Elem> {
        check_dim(self.cns.dim(), x.b.len())?;
        let k = self.extension();
        let f = k.base();
        let j = &self.cns;
        let pb = self.phi.apply(k, &x.b);
        let not_in_f = |what: &str| Error::VerificationFailed(format!("{what} does not lie in F"));
        let tb = k.to_base(&j.trace(&x.b, &pb)).ok_or_else(|| not_in_f("T(b,φ(b))"))?;
        let ts = k.to_base(&j.trace(&j.sharp(&x.b), &j.sharp(&pb))).ok_or_else(|| not_in_f("T(b♯,φ(b)♯)"))?;
        let a = f.sub(&k.norm(&x.s), &tb);
        let four = f.from_int(4);
        let tr = k.trace(&k.mul(&self.gamma_inv, &k.mul(&x.s, &j.norm(&x.b))));
        Ok(f.add(&f.sub(&f.mul(&a, &a), &f.mul(&four, &ts)), &f.mul(&four, &tr)))
    }

    pub fn to_generic(&self) -> GenericAlgebra<F> {
        let k = self.extension();
        let one = KjElement::new(k.one(), linalg::zeros(k, self.cns.dim()));
        GenericAlgebra::from_product(
            k.base().clone(),
            self.f_dim(),
            |x, y| to_coords(k, &self.mul(&from_coords(k, x), &from_coords(k, y))),
            |x| {
                let e = from_coords(k, x);
                to_coords(k, &KjElement::new(k.conj(&e.s), e.b))
            },
            to_coords(k, &one),
        )
        .expect("the algebra has a unit and an involution")
    }

    pub fn to_value(&self) -> Value {
        let k = self.extension();
        json!({
            "presentation": "autotopy",
            "extension": k.descriptor_value(),
            "cns": self.cns.to_value(),
            "phi": self.phi.to_value(k),
            "gamma": k.emit(&self.gamma),
        })
    }

    /// The hermitian structure with the same algebra.
    pub fn hermitian(&self) -> Result<HermitianCns<F>> {
        from_autotopy(&self.cns, &self.phi, &self.gamma)
    }
}

/// The split-case data: `J = J′ ⊕ J′` over `K = F ⊕ F`, the exchange map
/// scaled by `η` and `γ = (η⁻¹, η⁻²)`.
pub fn exchange_autotopy_algebra<F: Field>(j: &CubicNormStructure<F>, eta: &F::Elem) -> Result<AutotopyAlgebra<F>> {
    let f = j.ring();
    let eta_inv = f.inv(eta).ok_or_else(|| Error::precondition("η must be nonzero"))?;
    let s = crate::cns::split_double(j);
    let k = s.ring().clone();
    let phi = SemilinearMap::scalar(&k, s.dim(), &k.embed(eta), Twist::Sigma);
    let gamma = KElement::new(eta_inv.clone(), f.mul(&eta_inv, &eta_inv));
    AutotopyAlgebra::new(s, phi, gamma)
}

/// Compares both presentations on every pair of basis vectors.
pub fn compare_presentations<F: Field>(t: &AutotopyAlgebra<F>) -> Result<Record> {
    let a = SkewDimOneAlgebra::new(t.hermitian()?);
    let (g1, g2) = (t.to_generic(), a.to_generic());
    let m = g1.dim();
    let f = g1.field();
    let mismatch = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .find(|&(i, j)| g1.table().slice(i, j) != g2.table().slice(i, j));
    Ok(Record {
        id: "presentations.agree".into(),
        reference: "(s,b)(t,c) via (T(b,φc), γφ(b)×φ(c)) equals the product of A(H)".into(),
        status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
        mode: Mode::Exhaustive,
        cases: (m * m) as u64,
        witness: mismatch.map(|(i, j)| {
            json!({
                "basis": [i, j],
                "autotopy": tensor::vector_to_value(f, g1.table().slice(i, j)),
                "hermitian": tensor::vector_to_value(f, g2.table().slice(i, j)),
            })
        }),
    })
}

/// `F`-matrix of `φ` realized on `A`'s coordinates, handy for reports.
pub fn coords_matrix<F: Field>(f: &F, m: usize, map: impl Fn(&[F::Elem]) -> Vector<F::Elem>) -> Matrix<F::Elem> {
    let cols: Vec<_> = (0..m).map(|i| map(&linalg::unit(f, m, i))).collect();
    Matrix::from_cols(&cols)
}

#[cfg(test)]
mod tests;
