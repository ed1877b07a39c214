//! Hermitian cubic norm structures over a quadratic étale extension `K/F`,
//! and their correspondence with cubic norm structures over `K` carrying a
//! σ-semilinear self-adjoint autotopy.

use serde_json::{json, Value};

use crate::cns::{is_autotopy, CubicNormStructure, SemilinearMap};
use crate::cubic::{identity_suite, norm_is_nonzero, CubicForm, Halves, Twist};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{EtaleExtension, Field, KElement, Ring};
use crate::tensor::{self, Gram, Tensor3};
use crate::verify::{Record, Report, SamplingPolicy};

type KVec<F> = Vector<KElement<<F as Ring>::Elem>>;

/// `(a×b)_k = Σ C[i][j][k]·σ(a_i)·σ(b_j)` and `T(a,b) = Σ a_i·G[i][j]·σ(b_j)`,
/// with `♯ = ½(a×a)` and `N = ⅓T(a,a♯)` derived.
#[derive(Debug, Clone)]
pub struct HermitianCns<F: Field> {
    ext: EtaleExtension<F>,
    cross: Tensor3<KElement<F::Elem>>,
    gram: Gram<KElement<F::Elem>>,
    halves: Halves<KElement<F::Elem>>,
}

impl<F: Field> PartialEq for HermitianCns<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ext == other.ext && self.cross == other.cross && self.gram == other.gram
    }
}

impl<F: Field> HermitianCns<F> {
    /// Validates shape, symmetry of `C`, hermitian symmetry of `G` and that the
    /// norm is not identically zero.
    pub fn new(
        ext: EtaleExtension<F>,
        cross: Tensor3<KElement<F::Elem>>,
        gram: Matrix<KElement<F::Elem>>,
    ) -> Result<Self> {
        let n = cross.dim();
        check_dim(n, gram.rows)?;
        check_dim(n, gram.cols)?;
        if let Some((i, j, k)) = cross.is_symmetric() {
            return Err(Error::invalid(format!("cross tensor not symmetric at [{i}][{j}][{k}]")));
        }
        for i in 0..n {
            for j in 0..=i {
                if *gram.get(j, i) != ext.conj(gram.get(i, j)) {
                    return Err(Error::invalid(format!("gram matrix not hermitian at [{i}][{j}]")));
                }
            }
        }
        let gram = Gram::new(&ext, gram);
        let halves = Halves::new(&ext);
        let h = HermitianCns { ext, cross, gram, halves };
        if !norm_is_nonzero(&h) {
            return Err(Error::invalid("the norm is the zero map"));
        }
        Ok(h)
    }

    pub fn extension(&self) -> &EtaleExtension<F> {
        &self.ext
    }

    pub fn cross_tensor(&self) -> &Tensor3<KElement<F::Elem>> {
        &self.cross
    }

    pub fn gram(&self) -> &Matrix<KElement<F::Elem>> {
        self.gram.matrix()
    }

    pub fn check_vec(&self, a: &[KElement<F::Elem>]) -> Result<()> {
        check_dim(self.dim(), a.len())
    }

    /// `U_z` as a σ-semilinear map.
    pub fn u_map(&self, z: &[KElement<F::Elem>]) -> SemilinearMap<EtaleExtension<F>> {
        let n = self.dim();
        let zsh = self.sharp(z);
        let cols: Vec<_> = (0..n).map(|j| self.u_op_with(z, &zsh, &linalg::unit(&self.ext, n, j))).collect();
        SemilinearMap::new(Matrix::from_cols(&cols), Twist::Sigma)
    }

    pub fn verify(&self, pol: &SamplingPolicy) -> Report {
        let mut rep = Report::new("hermitian cubic norm structure");
        rep.records = identity_suite(self, pol, "hcns");
        rep.push(Record::direct("hcns.nonzero-norm", "N ≠ 0", norm_is_nonzero(self), || Value::Null));
        rep
    }

    pub fn to_value(&self) -> Value {
        let k = &self.ext;
        json!({
            "ring": k.ring_value(),
            "dim": self.dim(),
            "cross": self.cross.to_value(k),
            "gram": tensor::matrix_to_value(k, self.gram.matrix()),
        })
    }

    pub fn from_value(ext: EtaleExtension<F>, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::schema("hermitian structure must be an object"))?;
        for key in obj.keys() {
            if !["ring", "dim", "cross", "gram"].contains(&key.as_str()) {
                return Err(Error::schema(format!("unknown field `{key}` in hermitian structure")));
            }
        }
        let n = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::schema("structure needs a positive integer `dim`"))? as usize;
        let cross = Tensor3::from_value(&ext, n, obj.get("cross").ok_or_else(|| Error::schema("missing `cross`"))?)?;
        let gram = tensor::matrix_from_value(&ext, n, obj.get("gram").ok_or_else(|| Error::schema("missing `gram`"))?, "gram")?;
        Self::new(ext, cross, gram)
    }
}

impl<F: Field> CubicForm for HermitianCns<F> {
    type R = EtaleExtension<F>;

    fn ring(&self) -> &EtaleExtension<F> {
        &self.ext
    }
    fn dim(&self) -> usize {
        self.cross.dim()
    }
    fn twist(&self) -> Twist {
        Twist::Sigma
    }
    fn halves(&self) -> &Halves<KElement<F::Elem>> {
        &self.halves
    }
    fn cross(&self, a: &[KElement<F::Elem>], b: &[KElement<F::Elem>]) -> KVec<F> {
        let k = &self.ext;
        self.cross.contract(k, &linalg::conj(k, a), &linalg::conj(k, b))
    }
    fn trace(&self, a: &[KElement<F::Elem>], b: &[KElement<F::Elem>]) -> KElement<F::Elem> {
        self.gram.eval(&self.ext, a, &linalg::conj(&self.ext, b))
    }
}

/// Checks `γ·σ(γ) = δ⁻¹`.
pub fn gamma_condition<F: Field>(k: &EtaleExtension<F>, gamma: &KElement<F::Elem>, delta: &KElement<F::Elem>) -> bool {
    k.inv(delta).is_some_and(|di| k.mul(gamma, &k.conj(gamma)) == di)
}

/// Some `γ` with `γ·σ(γ) = δ⁻¹` for `δ ∈ F^×`: `(1, δ⁻¹)` over split `K`,
/// found by search over a finite field extension, `None` otherwise.
pub fn solve_gamma<F: Field>(k: &EtaleExtension<F>, delta: &KElement<F::Elem>) -> Option<KElement<F::Elem>> {
    let f = k.base();
    let d = k.to_base(delta)?;
    let di = f.inv(&d)?;
    if k.is_split() {
        return Some(KElement::new(f.one(), di));
    }
    let size = k.cardinality().filter(|&s| s <= 1_000_000)?;
    (0..size).map(|i| k.element_at(i)).find(|g| k.norm(g) == di)
}

/// The hermitian structure `â×b̂ = γ·φ(a)×φ(b)`, `T̂(a,b) = T(a,φ(b))`
/// attached to a σ-semilinear self-adjoint autotopy `φ` and `γ` with
/// `γ·σ(γ) = N(φ(1))⁻¹`.
pub fn from_autotopy<F: Field>(
    s: &CubicNormStructure<EtaleExtension<F>>,
    phi: &SemilinearMap<EtaleExtension<F>>,
    gamma: &KElement<F::Elem>,
) -> Result<HermitianCns<F>> {
    if phi.twist != Twist::Sigma {
        return Err(Error::precondition("the autotopy must be σ-semilinear"));
    }
    let at = is_autotopy(s, phi)?.into_result()?;
    if !at.is_self_adjoint() {
        return Err(Error::precondition("the autotopy is not self-adjoint"));
    }
    let k = s.ring();
    if !gamma_condition(k, gamma, &at.delta) {
        return Err(Error::precondition("γ·σ(γ) ≠ δ⁻¹"));
    }
    let n = s.dim();
    let images: Vec<_> = (0..n).map(|i| phi.apply(k, &linalg::unit(k, n, i))).collect();
    let cross = Tensor3::from_slices(k, n, |i, j| linalg::scale(k, gamma, &s.cross(&images[i], &images[j])));
    let gram = Matrix::from_rows(
        (0..n).map(|i| (0..n).map(|j| s.trace(&linalg::unit(k, n, i), &images[j])).collect()).collect(),
    );
    HermitianCns::new(k.clone(), cross, gram)
}

/// The output of [`to_cns_with_autotopy`].
#[derive(Debug, Clone, PartialEq)]
pub struct CnsWithAutotopy<F: Field> {
    pub cns: CubicNormStructure<EtaleExtension<F>>,
    pub phi: SemilinearMap<EtaleExtension<F>>,
    pub gamma: KElement<F::Elem>,
}

/// For `N(z)` invertible, with `γ = N(z)^σ`: the cubic norm structure
/// `a ×̂ b = γ⁻¹·U_z(a)×U_z(b)`, `T̂(a,b) = T(a,U_z(b))`, `1̂ = γ⁻¹z♯`,
/// with `φ = U_z⁻¹`. The autotopy property, self-adjointness and the `γ`
/// condition are checked on the result.
pub fn to_cns_with_autotopy<F: Field>(h: &HermitianCns<F>, z: &[KElement<F::Elem>]) -> Result<CnsWithAutotopy<F>> {
    h.check_vec(z)?;
    let k = h.extension();
    let n = h.dim();
    let gamma = k.conj(&h.norm(z));
    let gamma_inv = k.inv(&gamma).ok_or(Error::NonInvertible)?;
    let uz = h.u_map(z);
    let cols: Vec<_> = (0..n).map(|j| uz.matrix.col(j)).collect();
    let cross = Tensor3::from_slices(k, n, |i, j| linalg::scale(k, &gamma_inv, &h.cross(&cols[i], &cols[j])));
    let gram = Matrix::from_rows(
        (0..n).map(|i| (0..n).map(|j| h.trace(&linalg::unit(k, n, i), &cols[j])).collect()).collect(),
    );
    let one = linalg::scale(k, &gamma_inv, &h.sharp(z));
    let cns = CubicNormStructure::new(k.clone(), cross, gram, Some(one))?;
    let phi = uz.inverse(k).ok_or(Error::NonInvertible)?;
    let at = is_autotopy(&cns, &phi)?
        .into_result()
        .map_err(|e| Error::VerificationFailed(format!("U_z⁻¹ is not an autotopy of the new structure: {e}")))?;
    if !at.is_self_adjoint() {
        return Err(Error::VerificationFailed("U_z⁻¹ is not self-adjoint".into()));
    }
    if !gamma_condition(k, &gamma, &at.delta) {
        return Err(Error::VerificationFailed("γ·σ(γ) ≠ δ⁻¹".into()));
    }
    Ok(CnsWithAutotopy { cns, phi, gamma })
}

/// Extends a (not necessarily unital) cubic norm structure over `F` to
/// `J ⊕ λJ` over `K`: `(a+λb)♯ = a♯ + λ^σ a×b + λ^{2σ} b♯`, with `N` and `T`
/// extended accordingly. In coordinates this keeps the tensors of `J` and
/// reads them σ-semilinearly; `λ` only fixes the identification of
/// `J ⊕ λJ` with `K^n`.
pub fn semilinear_extend<F: Field>(
    j: &CubicNormStructure<F>,
    k: &EtaleExtension<F>,
    lambda: &KElement<F::Elem>,
) -> Result<HermitianCns<F>> {
    if k.is_in_base(lambda) {
        return Err(Error::precondition("λ must lie outside F"));
    }
    if j.ring() != k.base() {
        return Err(Error::precondition("extension is over a different base field"));
    }
    let cross = j.cross_tensor().map(k, |x| k.embed(x));
    let gram = j.gram().map(|x| k.embed(x));
    HermitianCns::new(k.clone(), cross, gram)
}

/// `a + λb` as a vector of `K^n`.
pub fn combine<F: Field>(k: &EtaleExtension<F>, lambda: &KElement<F::Elem>, a: &[F::Elem], b: &[F::Elem]) -> KVec<F> {
    a.iter().zip(b).map(|(x, y)| k.add(&k.embed(x), &k.mul(lambda, &k.embed(y)))).collect()
}
