//! The Cayley–Dickson process `CD(B, μ)` on the degree-4 Jordan algebra
//! `B = F ⊕ J₀` of a non-unital cubic norm structure, the trace-zero
//! structure on `B₀`, and the isomorphism with the algebra of the
//! semilinear extension of `J₀` over `F[x]/(x² − μ)`.

use serde_json::{json, Value};

use crate::cns::CubicNormStructure;
use crate::cubic::CubicForm;
use crate::error::{check_dim, Error, Result};
use crate::hcns::semilinear_extend;
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{EtaleExtension, Field, KElement, Ring};
use crate::structurable::{coords_matrix, GenericAlgebra, KjElement, SkewDimOneAlgebra};
use crate::tensor::{self, Tensor3};
use crate::verify::{Mode, Record, Report, SamplingPolicy, Status, Var};

/// `B = F ⊕ J₀` with `(r+b)(s+c) = (rs + ¼T(b,c)) + (rc + sb + ½b×c)` and
/// `t(r+b) = 4r`. Elements are coordinate vectors `[r, b₀, …, b_{n−1}]`.
///
/// The product is pinned down by `t(1) = 4` (so that `θ` fixes `1`),
/// unitality, and the requirement that the trace-zero formulas for `T` and
/// `×` give back `J₀`; [`Self::verify`] checks those constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeFourJordan<F: Field> {
    core: CubicNormStructure<F>,
    quarter: F::Elem,
    half: F::Elem,
}

impl<F: Field> DegreeFourJordan<F> {
    /// Drops any identity of `core`; its trace form must be nondegenerate.
    pub fn new(core: &CubicNormStructure<F>) -> Result<Self> {
        let f = core.ring().clone();
        if linalg::rank(&f, core.gram()) != core.dim() {
            return Err(Error::precondition("J₀ needs a nondegenerate trace form"));
        }
        let half = f.inv(&f.from_int(2)).expect("characteristic is not 2");
        let quarter = f.mul(&half, &half);
        Ok(DegreeFourJordan { core: core.without_identity(), quarter, half })
    }

    pub fn field(&self) -> &F {
        self.core.ring()
    }

    pub fn core(&self) -> &CubicNormStructure<F> {
        &self.core
    }

    /// `1 + dim J₀`.
    pub fn dim(&self) -> usize {
        1 + self.core.dim()
    }

    pub fn check_vec(&self, x: &[F::Elem]) -> Result<()> {
        check_dim(self.dim(), x.len())
    }

    pub fn one(&self) -> Vector<F::Elem> {
        linalg::unit(self.field(), self.dim(), 0)
    }

    /// `b ↦ 0 + b`.
    pub fn embed(&self, b: &[F::Elem]) -> Vector<F::Elem> {
        let mut out = vec![self.field().zero()];
        out.extend_from_slice(b);
        out
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        let f = self.field();
        let (r, b) = (&x[0], &x[1..]);
        let (s, c) = (&y[0], &y[1..]);
        let scalar = f.add(&f.mul(r, s), &f.mul(&self.quarter, &self.core.trace(b, c)));
        let part = linalg::add(
            f,
            &linalg::add(f, &linalg::scale(f, r, c), &linalg::scale(f, s, b)),
            &linalg::scale(f, &self.half, &self.core.cross(b, c)),
        );
        let mut out = vec![scalar];
        out.extend(part);
        out
    }

    pub fn trace(&self, x: &[F::Elem]) -> F::Elem {
        let f = self.field();
        f.mul(&f.from_int(4), &x[0])
    }

    /// `b^θ = −b + ½t(b)·1`.
    pub fn theta(&self, x: &[F::Elem]) -> Vector<F::Elem> {
        let f = self.field();
        let t = f.mul(&self.half, &self.trace(x));
        linalg::axpy(f, &t, &self.one(), &linalg::neg(f, x))
    }

    /// The structure on `B₀ = ker t` given by `T(b,c) = t(bc)` and
    /// `b×c = 2bc − ½t(bc)`, in the coordinates of `J₀`.
    pub fn trace_zero_cns(&self) -> Result<CubicNormStructure<F>> {
        let f = self.field();
        let n = self.core.dim();
        let e = |i| self.embed(&linalg::unit(f, n, i));
        let mut gram = vec![vec![f.zero(); n]; n];
        let mut slices = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                let (x, z) = self.trace_zero_pair(&e(i), &e(j));
                if !f.is_zero(&z[0]) {
                    return Err(Error::invalid("b×c leaves B₀"));
                }
                gram[i][j] = x;
                slices[i * n + j] = z[1..].to_vec();
            }
        }
        let cross = Tensor3::from_slices(f, n, |i, j| slices[i * n + j].clone());
        CubicNormStructure::new(f.clone(), cross, Matrix::from_rows(gram), None)
    }

    /// `(t(bc), 2bc − ½t(bc)·1)`.
    fn trace_zero_pair(&self, b: &[F::Elem], c: &[F::Elem]) -> (F::Elem, Vector<F::Elem>) {
        let f = self.field();
        let bc = self.mul(b, c);
        let t = self.trace(&bc);
        let cross = linalg::axpy(f, &f.neg(&f.mul(&self.half, &t)), &self.one(), &linalg::scale(f, &f.from_int(2), &bc));
        (t, cross)
    }

    /// `b♯ = b² − ¼t(b²)·1`.
    pub fn trace_zero_sharp(&self, b: &[F::Elem]) -> Vector<F::Elem> {
        let f = self.field();
        let sq = self.mul(b, b);
        let t = f.mul(&self.quarter, &self.trace(&sq));
        linalg::axpy(f, &f.neg(&t), &self.one(), &sq)
    }

    /// `N(b) = ⅓t(b³)`.
    pub fn trace_zero_norm(&self, b: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let cube = self.mul(b, &self.mul(b, b));
        f.mul(&self.core.halves().third, &self.trace(&cube))
    }

    /// The Jordan axioms, the behaviour of `θ`, and the agreement of the
    /// trace-zero formulas with `J₀`. Multilinear identities on `B₀` are
    /// checked through their polarizations on all basis tuples, so a pass
    /// means the identity holds everywhere.
    pub fn verify(&self, pol: &SamplingPolicy) -> Report {
        let f = self.field();
        let n = self.core.dim();
        let m = self.dim();
        let j0 = &self.core;
        let mut rep = Report::new("degree-4 jordan algebra");
        let eb = |i| linalg::unit(f, m, i);
        let e0 = |i| linalg::unit(f, n, i);

        rep.push(basis_check("jordan.unit", "1x = x", m, 1, |ix| {
            let x = eb(ix[0]);
            self.mul(&self.one(), &x) == x && self.mul(&x, &self.one()) == x
        }));
        rep.push(basis_check("jordan.commutative", "xy = yx", m, 2, |ix| {
            self.mul(&eb(ix[0]), &eb(ix[1])) == self.mul(&eb(ix[1]), &eb(ix[0]))
        }));
        rep.push(pol.check(f, m, "jordan.identity", "(x²y)x = x²(yx)", &[Var::Vector, Var::Vector], |p| {
            let (x, y) = (&p.v[0], &p.v[1]);
            let x2 = self.mul(x, x);
            self.mul(&self.mul(&x2, y), x) == self.mul(&x2, &self.mul(y, x))
        }));
        rep.push(Record::direct("jordan.unit-trace", "t(1) = 4", self.trace(&self.one()) == f.from_int(4), || Value::Null));
        rep.push(basis_check("jordan.theta", "θ fixes F1 and inverts B₀", m, 1, |ix| {
            let x = eb(ix[0]);
            let expect = if ix[0] == 0 { x.clone() } else { linalg::neg(f, &x) };
            self.theta(&x) == expect && self.theta(&self.theta(&x)) == x
        }));
        rep.push(basis_check("jordan.trace-form", "t(bc) = T(b,c) on B₀", n, 2, |ix| {
            let (b, c) = (e0(ix[0]), e0(ix[1]));
            self.trace(&self.mul(&self.embed(&b), &self.embed(&c))) == j0.trace(&b, &c)
        }));
        rep.push(basis_check("jordan.cross", "b×c = 2bc − ½t(bc) on B₀", n, 2, |ix| {
            let (b, c) = (e0(ix[0]), e0(ix[1]));
            self.trace_zero_pair(&self.embed(&b), &self.embed(&c)).1 == self.embed(&j0.cross(&b, &c))
        }));
        // Quadratic and cubic forms on B₀ vanish iff their polarizations vanish
        // on basis tuples (characteristic not 2 or 3).
        let sharp_gap = |b: &[F::Elem]| linalg::sub(f, &self.trace_zero_sharp(&self.embed(b)), &self.embed(&j0.sharp(b)));
        rep.push(basis_check("jordan.sharp", "b♯ = b² − ¼t(b²) on B₀", n, 2, |ix| {
            linalg::is_zero(f, &polarize(f, n, &ix, &sharp_gap))
        }));
        let norm_gap = |b: &[F::Elem]| {
            vec![f.sub(&self.trace(&self.mul(&self.embed(b), &self.mul(&self.embed(b), &self.embed(b)))), &f.mul(&f.from_int(3), &j0.norm(b)))]
        };
        rep.push(basis_check("jordan.trace-cube", "t(b³) = 3N(b) on B₀", n, 3, |ix| {
            linalg::is_zero(f, &polarize(f, n, &ix, &norm_gap))
        }));
        rep.push(Record::direct(
            "jordan.trace-zero-structure",
            "B₀ with t(bc), 2bc − ½t(bc) equals J₀",
            self.trace_zero_cns().map(|c| c == *j0).unwrap_or(false),
            || Value::Null,
        ));
        rep
    }

    pub fn to_value(&self) -> Value {
        json!({ "core": self.core.to_value() })
    }
}

/// `Σ_{S ⊆ idx} (−1)^{|idx|−|S|} p(Σ_{i∈S} e_i)`, which is `k!` times the
/// full polarization of a degree-`k` form `p` at the basis tuple `idx`.
fn polarize<F: Field>(f: &F, n: usize, idx: &[usize], p: &impl Fn(&[F::Elem]) -> Vector<F::Elem>) -> Vector<F::Elem> {
    let k = idx.len();
    let mut acc: Option<Vector<F::Elem>> = None;
    for mask in 0u32..(1 << k) {
        let mut x = linalg::zeros(f, n);
        for (bit, &i) in idx.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                x[i] = f.add(&x[i], &f.one());
            }
        }
        let v = p(&x);
        let v = if (k - mask.count_ones() as usize) % 2 == 1 { linalg::neg(f, &v) } else { v };
        acc = Some(match acc {
            None => v,
            Some(a) => linalg::add(f, &a, &v),
        });
    }
    acc.expect("at least one subset")
}

/// Runs `pred` on every nondecreasing `arity`-tuple of indices below `n`.
fn basis_check(id: &str, reference: &str, n: usize, arity: usize, pred: impl Fn(&[usize]) -> bool) -> Record {
    let mut idx = vec![0usize; arity];
    let mut cases = 0u64;
    let mut witness = None;
    if n > 0 {
        loop {
            cases += 1;
            if !pred(&idx) {
                witness = Some(json!({ "basis": idx }));
                break;
            }
            // Next nondecreasing tuple.
            let Some(pos) = (0..arity).rev().find(|&p| idx[p] + 1 < n) else { break };
            let v = idx[pos] + 1;
            for slot in &mut idx[pos..] {
                *slot = v;
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
}

/// `CD(B, μ) = B ⊕ s₀B`, elements `b + s₀c` stored as `[b, c]`, with
/// `(b + s₀c)‾ = b − s₀c^θ` and
/// `(b + s₀c)(d + s₀e) = (bd + μ(ce^θ)^θ) + s₀(b^θe + (c^θd^θ)^θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdAlgebra<F: Field> {
    jordan: DegreeFourJordan<F>,
    mu: F::Elem,
}

impl<F: Field> CdAlgebra<F> {
    pub fn new(jordan: DegreeFourJordan<F>, mu: F::Elem) -> Result<Self> {
        if jordan.field().is_zero(&mu) {
            return Err(Error::precondition("μ must be nonzero"));
        }
        Ok(CdAlgebra { jordan, mu })
    }

    pub fn jordan(&self) -> &DegreeFourJordan<F> {
        &self.jordan
    }

    pub fn mu(&self) -> &F::Elem {
        &self.mu
    }

    pub fn f_dim(&self) -> usize {
        2 * self.jordan.dim()
    }

    pub fn check_vec(&self, x: &[F::Elem]) -> Result<()> {
        check_dim(self.f_dim(), x.len())
    }

    /// `b + s₀c`.
    pub fn pair(&self, b: &[F::Elem], c: &[F::Elem]) -> Vector<F::Elem> {
        let mut out = b.to_vec();
        out.extend_from_slice(c);
        out
    }

    fn halves<'a>(&self, x: &'a [F::Elem]) -> (&'a [F::Elem], &'a [F::Elem]) {
        x.split_at(self.jordan.dim())
    }

    pub fn one(&self) -> Vector<F::Elem> {
        let f = self.jordan.field();
        self.pair(&self.jordan.one(), &linalg::zeros(f, self.jordan.dim()))
    }

    pub fn s0(&self) -> Vector<F::Elem> {
        let f = self.jordan.field();
        self.pair(&linalg::zeros(f, self.jordan.dim()), &self.jordan.one())
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        let (j, f) = (&self.jordan, self.jordan.field());
        let ((b, c), (d, e)) = (self.halves(x), self.halves(y));
        let th = |v: &[F::Elem]| j.theta(v);
        let first = linalg::add(f, &j.mul(b, d), &linalg::scale(f, &self.mu, &th(&j.mul(c, &th(e)))));
        let second = linalg::add(f, &j.mul(&th(b), e), &th(&j.mul(&th(c), &th(d))));
        self.pair(&first, &second)
    }

    pub fn try_mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vector<F::Elem>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.mul(x, y))
    }

    pub fn conj(&self, x: &[F::Elem]) -> Vector<F::Elem> {
        let (b, c) = self.halves(x);
        self.pair(b, &linalg::neg(self.jordan.field(), &self.jordan.theta(c)))
    }

    pub fn to_generic(&self) -> GenericAlgebra<F> {
        GenericAlgebra::from_product(self.jordan.field().clone(), self.f_dim(), |x, y| self.mul(x, y), |x| self.conj(x), self.one())
            .expect("CD(B, μ) has a unit and an involution of order 2")
    }

    pub fn to_value(&self) -> Value {
        json!({
            "presentation": "cayley-dickson",
            "core": self.jordan.core.to_value(),
            "mu": self.jordan.field().emit(&self.mu),
        })
    }
}

/// The verified map `A(K) → CD(B, μ)`,
/// `(r + s₁t, b + s₁c) ↦ (r·1 + 2b) + s₀(t·1 + 2c)`, where `K = F[x]/(x² − μ)`,
/// `s₁` is its canonical square root of `μ` and `A(K)` is built from the
/// semilinear extension of `J₀` with `λ = s₁`.
#[derive(Debug, Clone)]
pub struct CdIsomorphism<F: Field> {
    pub cd: CdAlgebra<F>,
    pub hermitian: SkewDimOneAlgebra<F>,
    pub s1: KElement<F::Elem>,
    /// Images of the `F`-basis of `A(K)` as columns.
    pub matrix: Matrix<F::Elem>,
    pub report: Report,
}

impl<F: Field> CdIsomorphism<F> {
    pub fn passed(&self) -> bool {
        self.report.all_passed()
    }

    pub fn apply(&self, x: &KjElement<F::Elem>) -> Vector<F::Elem> {
        phi(&self.cd, self.hermitian.extension(), &self.s1, x)
    }

    pub fn to_value(&self) -> Value {
        let k = self.hermitian.extension();
        json!({
            "cd": self.cd.to_value(),
            "extension": k.descriptor_value(),
            "s1": k.emit(&self.s1),
            "change_of_basis": tensor::matrix_to_value(k.base(), &self.matrix),
            "report": self.report.to_value(),
        })
    }
}

fn phi<F: Field>(cd: &CdAlgebra<F>, k: &EtaleExtension<F>, s1: &KElement<F::Elem>, x: &KjElement<F::Elem>) -> Vector<F::Elem> {
    let f = k.base();
    let split = |z: &KElement<F::Elem>| k.coords_over(s1, z).expect("s₁ − σ(s₁) is invertible");
    let (r, t) = split(&x.s);
    let two = f.from_int(2);
    let (mut b, mut c) = (vec![r], vec![t]);
    for z in &x.b {
        let (u, w) = split(z);
        b.push(f.mul(&two, &u));
        c.push(f.mul(&two, &w));
    }
    cd.pair(&b, &c)
}

/// Builds both sides for `J₀` and `μ`, and checks on every basis pair that
/// the map is multiplicative, on every basis vector that it commutes with
/// the involutions, and that it is bijective.
pub fn cd_isomorphism<F: Field>(j0: &CubicNormStructure<F>, mu: &F::Elem) -> Result<CdIsomorphism<F>> {
    let f = j0.ring().clone();
    let cd = CdAlgebra::new(DegreeFourJordan::new(j0)?, mu.clone())?;
    let k = EtaleExtension::quadratic(f.clone(), mu.clone())?;
    let s1 = k.root_of(mu)?;
    let a = SkewDimOneAlgebra::new(semilinear_extend(&j0.without_identity(), &k, &s1)?);
    let m = a.f_dim();
    let map = |c: &[F::Elem]| phi(&cd, &k, &s1, &a.from_coords(c));
    let matrix = coords_matrix(&f, m, map);
    let basis: Vec<_> = (0..m).map(|i| a.from_coords(&linalg::unit(&f, m, i))).collect();
    let image: Vec<_> = (0..m).map(|i| matrix.col(i)).collect();

    let mut rep = Report::new("cayley-dickson isomorphism");
    let mut witness = None;
    let mut cases = 0;
    'outer: for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            cases += 1;
            if map(&a.to_coords(&a.mul(x, y))) != cd.mul(&image[i], &image[j]) {
                witness = Some(json!({ "basis": [i, j] }));
                break 'outer;
            }
        }
    }
    rep.push(Record {
        id: "cd.isomorphism.mul".into(),
        reference: "φ(xy) = φ(x)φ(y), φ(r + s₁t, b + s₁c) = (r1 + 2b) + s₀(t1 + 2c)".into(),
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        mode: Mode::Exhaustive,
        cases,
        witness,
    });
    let bad_conj = (0..m).find(|&i| map(&a.to_coords(&a.conj(&basis[i]))) != cd.conj(&image[i]));
    rep.push(Record {
        id: "cd.isomorphism.involution".into(),
        reference: "φ(x̄) = φ(x)‾".into(),
        status: if bad_conj.is_none() { Status::Pass } else { Status::Fail },
        mode: Mode::Exhaustive,
        cases: m as u64,
        witness: bad_conj.map(|i| json!({ "basis": i })),
    });
    rep.push(Record::direct("cd.isomorphism.bijective", "φ is an F-linear bijection", linalg::rank(&f, &matrix) == m, || {
        Value::Null
    }));
    rep.push(Record::direct("cd.isomorphism.unit", "φ(1) = 1", map(&a.to_coords(&a.one())) == cd.one(), || Value::Null));
    Ok(CdIsomorphism { cd, hermitian: a, s1, matrix, report: rep })
}
