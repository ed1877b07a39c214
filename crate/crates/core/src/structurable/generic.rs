use rand::RngCore;
use serde_json::{json, Value};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::Field;
use crate::tensor::{self, Tensor3};
use crate::verify::{Mode, Record, Report, SamplingPolicy, Status};

/// Largest F-dimension for which the operator identity is checked on every
/// basis quadruple; above it, quadruples are sampled.
pub const BASIS_QUADRUPLE_MAX_DIM: usize = 10;

/// An algebra with involution on `F^m`: `e_i e_j = Σ_k table[i][j][k] e_k`,
/// `x̄ = involution·x`.
#[derive(Debug, Clone)]
pub struct GenericAlgebra<F: Field> {
    field: F,
    table: Tensor3<F::Elem>,
    involution: Matrix<F::Elem>,
    unit: Vector<F::Elem>,
}

impl<F: Field> PartialEq for GenericAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.table == other.table && self.involution == other.involution && self.unit == other.unit
    }
}

impl<F: Field> GenericAlgebra<F> {
    /// Checks shapes, that the unit is a two-sided identity on the basis and
    /// that the involution squares to the identity. Anti-automorphism is
    /// left to [`verify_structurable`].
    pub fn new(field: F, table: Tensor3<F::Elem>, involution: Matrix<F::Elem>, unit: Vector<F::Elem>) -> Result<Self> {
        let m = table.dim();
        check_dim(m, involution.rows)?;
        check_dim(m, involution.cols)?;
        check_dim(m, unit.len())?;
        let g = GenericAlgebra { field, table, involution, unit };
        for k in 0..m {
            let e = linalg::unit(&g.field, m, k);
            if g.mul(&g.unit, &e) != e || g.mul(&e, &g.unit) != e {
                return Err(Error::invalid(format!("unit does not act as identity on basis vector {k}")));
            }
        }
        if linalg::mat_mul(&g.field, &g.involution, &g.involution) != linalg::identity(&g.field, m) {
            return Err(Error::invalid("involution does not square to the identity"));
        }
        Ok(g)
    }

    /// Builds the structure constants of a bilinear product given on basis
    /// vectors.
    pub fn from_product(
        field: F,
        m: usize,
        mul: impl Fn(&[F::Elem], &[F::Elem]) -> Vector<F::Elem>,
        conj: impl Fn(&[F::Elem]) -> Vector<F::Elem>,
        unit: Vector<F::Elem>,
    ) -> Result<Self> {
        let basis: Vec<_> = (0..m).map(|i| linalg::unit(&field, m, i)).collect();
        let table = Tensor3::from_slices(&field, m, |i, j| mul(&basis[i], &basis[j]));
        let cols: Vec<_> = basis.iter().map(|e| conj(e)).collect();
        Self::new(field, table, Matrix::from_cols(&cols), unit)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &Tensor3<F::Elem> {
        &self.table
    }

    pub fn involution(&self) -> &Matrix<F::Elem> {
        &self.involution
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vector<F::Elem> {
        linalg::unit(&self.field, self.dim(), i)
    }

    pub fn check_vec(&self, x: &[F::Elem]) -> Result<()> {
        check_dim(self.dim(), x.len())
    }

    /// A copy with one structure constant replaced.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, value: F::Elem) -> Self {
        let m = self.dim();
        let table = Tensor3::from_fn(&self.field, m, |a, b, c| {
            if (a, b, c) == (i, j, k) {
                value.clone()
            } else {
                self.table.get(a, b, c).clone()
            }
        });
        GenericAlgebra { table, ..self.clone() }
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        self.table.contract(&self.field, x, y)
    }

    pub fn conj(&self, x: &[F::Elem]) -> Vector<F::Elem> {
        linalg::mat_apply(&self.field, &self.involution, x)
    }

    fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        linalg::sub(&self.field, x, y)
    }

    fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        linalg::add(&self.field, x, y)
    }

    fn scale(&self, t: &F::Elem, x: &[F::Elem]) -> Vector<F::Elem> {
        linalg::scale(&self.field, t, x)
    }

    /// `[x,y] = xy − yx`.
    pub fn commutator(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// `[x,y,z] = (xy)z − x(yz)`.
    pub fn associator(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vector<F::Elem> {
        self.sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    /// `V_{x,y}(z) = (xȳ)z + (zȳ)x − (zx̄)y`.
    pub fn v_op(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vector<F::Elem> {
        let yb = self.conj(y);
        let xb = self.conj(x);
        let a = self.mul(&self.mul(x, &yb), z);
        let b = self.mul(&self.mul(z, &yb), x);
        let c = self.mul(&self.mul(z, &xb), y);
        self.sub(&self.add(&a, &b), &c)
    }

    /// `V_{x,y}` as a matrix.
    pub fn v_matrix(&self, x: &[F::Elem], y: &[F::Elem]) -> Matrix<F::Elem> {
        let m = self.dim();
        let yb = self.conj(y);
        let xyb = self.mul(x, &yb);
        let xb = self.conj(x);
        let cols: Vec<_> = (0..m)
            .map(|k| {
                let e = self.basis(k);
                let a = self.mul(&xyb, &e);
                let b = self.mul(&self.mul(&e, &yb), x);
                let c = self.mul(&self.mul(&e, &xb), y);
                self.sub(&self.add(&a, &b), &c)
            })
            .collect();
        Matrix::from_cols(&cols)
    }

    /// `U_x(y) = V_{x,y}(x) = 2(xȳ)x − (xx̄)y`.
    pub fn u_op(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        let f = &self.field;
        let a = self.mul(&self.mul(x, &self.conj(y)), x);
        let b = self.mul(&self.mul(x, &self.conj(x)), y);
        self.sub(&self.scale(&f.from_int(2), &a), &b)
    }

    /// `ψ(x,y) = xȳ − yx̄`.
    pub fn psi(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F::Elem> {
        self.sub(&self.mul(x, &self.conj(y)), &self.mul(y, &self.conj(x)))
    }

    /// `D_{x,y}(z) = ⅓[[x,y] + [x̄,ȳ], z] + [z,y,x] − [z,x̄,ȳ]`.
    pub fn d_op(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vector<F::Elem> {
        let f = &self.field;
        let (xb, yb) = (self.conj(x), self.conj(y));
        let third = f.inv(&f.from_int(3)).expect("characteristic is not 3");
        let inner = self.add(&self.commutator(x, y), &self.commutator(&xb, &yb));
        let a = self.scale(&third, &self.commutator(&inner, z));
        self.sub(&self.add(&a, &self.associator(z, y, x)), &self.associator(z, &xb, &yb))
    }

    pub fn skew_basis(&self) -> Vec<Vector<F::Elem>> {
        let f = &self.field;
        let m = self.dim();
        linalg::nullspace(f, &matrix_sum(f, &self.involution, &linalg::identity(f, m), false))
    }

    pub fn hermitian_basis(&self) -> Vec<Vector<F::Elem>> {
        let f = &self.field;
        let m = self.dim();
        linalg::nullspace(f, &matrix_sum(f, &self.involution, &linalg::identity(f, m), true))
    }

    /// `x + x̄` for a random `x`: a random hermitian element.
    pub fn sample_hermitian(&self, rng: &mut dyn RngCore) -> Vector<F::Elem> {
        let x = self.sample(rng);
        self.add(&x, &self.conj(&x))
    }

    pub fn sample(&self, rng: &mut dyn RngCore) -> Vector<F::Elem> {
        (0..self.dim()).map(|_| self.field.sample(rng)).collect()
    }

    /// An F-basis of `{x hermitian : [x,A] = [x,A,A] = [A,x,A] = [A,A,x] = 0}`.
    pub fn center(&self) -> Vec<Vector<F::Elem>> {
        let f = &self.field;
        let m = self.dim();
        let basis: Vec<_> = (0..m).map(|i| self.basis(i)).collect();
        let image = |x: &[F::Elem]| {
            let mut out = self.sub(&self.conj(x), x);
            for a in &basis {
                out.extend(self.commutator(x, a));
                for b in &basis {
                    out.extend(self.associator(x, a, b));
                    out.extend(self.associator(a, x, b));
                    out.extend(self.associator(a, b, x));
                }
            }
            out
        };
        let cols: Vec<_> = basis.iter().map(|e| image(e)).collect();
        linalg::nullspace(f, &Matrix::from_cols(&cols))
    }

    /// `ν(x) = ψ(x, U_x(s₀x))·s₀ / 6μ` with `s₀² = μ·1`.
    pub fn nu_via_psi(&self, x: &[F::Elem], s0: &[F::Elem]) -> Result<F::Elem> {
        self.check_vec(x)?;
        self.check_vec(s0)?;
        let f = &self.field;
        if linalg::is_zero(f, s0) {
            return Err(Error::precondition("s₀ must be nonzero"));
        }
        if self.conj(s0) != linalg::neg(f, s0) {
            return Err(Error::precondition("s₀ must be skew"));
        }
        let mu = self
            .scalar_part(&self.mul(s0, s0))
            .ok_or_else(|| Error::precondition("s₀² is not a multiple of 1"))?;
        if f.is_zero(&mu) {
            return Err(Error::precondition("s₀² = 0"));
        }
        let w = self.mul(&self.psi(x, &self.u_op(x, &self.mul(s0, x))), s0);
        let c = self
            .scalar_part(&w)
            .ok_or_else(|| Error::VerificationFailed("ψ(x, U_x(s₀x))·s₀ is not a multiple of 1".into()))?;
        Ok(f.div(&c, &f.mul(&f.from_int(6), &mu)).expect("6μ ≠ 0"))
    }

    /// `c` if `x = c·1`.
    pub fn scalar_part(&self, x: &[F::Elem]) -> Option<F::Elem> {
        let f = &self.field;
        let k = self.unit.iter().position(|u| !f.is_zero(u))?;
        let c = f.div(&x[k], &self.unit[k])?;
        (self.scale(&c, &self.unit) == x).then_some(c)
    }

    pub fn to_value(&self) -> Value {
        let f = &self.field;
        json!({
            "ring": f.ring_value(),
            "dim": self.dim(),
            "table": self.table.to_value(f),
            "involution": tensor::matrix_to_value(f, &self.involution),
            "unit": tensor::vector_to_value(f, &self.unit),
        })
    }

    pub fn from_value(field: F, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::schema("algebra must be an object"))?;
        for key in obj.keys() {
            if !["ring", "dim", "table", "involution", "unit"].contains(&key.as_str()) {
                return Err(Error::schema(format!("unknown field `{key}` in algebra")));
            }
        }
        let m = obj.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::schema("algebra needs a positive integer `dim`"))? as usize;
        let get = |k: &str| obj.get(k).ok_or_else(|| Error::schema(format!("algebra needs `{k}`")));
        let table = Tensor3::from_value(&field, m, get("table")?)?;
        let involution = tensor::matrix_from_value(&field, m, get("involution")?, "involution")?;
        let unit = tensor::vector_from_value(&field, m, get("unit")?, "unit")?;
        Self::new(field, table, involution, unit)
    }
}

/// `a + b` or `a − b`.
fn matrix_sum<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>, minus: bool) -> Matrix<F::Elem> {
    let rows = (0..a.rows)
        .map(|i| {
            let (x, y) = (a.row(i), b.row(i));
            if minus {
                linalg::sub(f, x, y)
            } else {
                linalg::add(f, x, y)
            }
        })
        .collect();
    Matrix::from_rows(rows)
}

fn vec_value<F: Field>(f: &F, x: &[F::Elem]) -> Value {
    tensor::vector_to_value(f, x)
}

fn record(id: &str, reference: &str, mode: Mode, cases: u64, witness: Option<Value>) -> Record {
    Record {
        id: id.into(),
        reference: reference.into(),
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        mode,
        cases,
        witness,
    }
}

/// Runs `check` on each item until the first failure.
fn run_all<T>(items: impl IntoIterator<Item = T>, mut check: impl FnMut(&T) -> Option<Value>) -> (u64, Option<Value>) {
    let mut cases = 0;
    for it in items {
        cases += 1;
        if let Some(w) = check(&it) {
            return (cases, Some(w));
        }
    }
    (cases, None)
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |a| (0..m).map(move |b| (a, b)))
}

/// The defining identities of a structurable algebra and the skew-alternative
/// characterization.
///
/// Identities that are multilinear are checked on basis tuples, which is
/// complete. The operator identity runs over all basis quadruples up to
/// [`BASIS_QUADRUPLE_MAX_DIM`] and over sampled quadruples above it.
/// `D_{x²,x}(y) = 0` is cubic in `x`, so hermitian `x` is sampled and `y` runs
/// over the basis.
pub fn verify_structurable<F: Field>(g: &GenericAlgebra<F>, pol: &SamplingPolicy) -> Report {
    let f = g.field();
    let m = g.dim();
    let basis: Vec<_> = (0..m).map(|i| g.basis(i)).collect();
    let mut rep = Report::new("structurable algebra");

    let (cases, w) = run_all(0..m, |&k| {
        let e = &basis[k];
        (g.mul(g.unit(), e) != *e || g.mul(e, g.unit()) != *e).then(|| json!({ "basis": k }))
    });
    rep.push(record("struct.unit", "1x = x1 = x", Mode::Exhaustive, cases, w));

    let (cases, w) = run_all(pairs(m), |&(a, b)| {
        let lhs = g.conj(&g.mul(&basis[a], &basis[b]));
        let rhs = g.mul(&g.conj(&basis[b]), &g.conj(&basis[a]));
        (lhs != rhs).then(|| json!({ "basis": [a, b], "lhs": vec_value(f, &lhs), "rhs": vec_value(f, &rhs) }))
    });
    rep.push(record("struct.involution-anti-automorphism", "(xy)‾ = ȳx̄", Mode::Exhaustive, cases, w));
    rep.push(Record::direct(
        "struct.involution-order",
        "x̄̄ = x",
        linalg::mat_mul(f, g.involution(), g.involution()) == linalg::identity(f, m),
        || Value::Null,
    ));

    rep.push(operator_identity(g, pol));

    let skew = g.skew_basis();
    let (cases, w) = run_all(skew.iter().flat_map(|s| pairs(m).map(move |p| (s, p))), |(s, (a, b))| {
        let (x, y) = (&basis[*a], &basis[*b]);
        let lhs = g.associator(s, x, y);
        let rhs = linalg::neg(f, &g.associator(x, s, y));
        (lhs != rhs).then(|| json!({ "s": vec_value(f, s), "basis": [a, b] }))
    });
    rep.push(record("struct.skew-alternative", "[s,x,y] = −[x,s,y] for skew s", Mode::Exhaustive, cases, w));

    let ops = MulOps::new(g, &basis);
    let herm = g.hermitian_basis();
    let h = herm.len();
    let (lh, rh): (Vec<_>, Vec<_>) = herm.iter().map(|x| (ops.left(x), ops.right(x))).unzip();
    let prod: Vec<Vec<_>> = herm.iter().map(|x| herm.iter().map(|y| g.mul(x, y)).collect()).collect();
    // Both sides are alternating in (x, y), so a < b suffices.
    let triples = (0..h).flat_map(|a| (a + 1..h).flat_map(move |b| (0..h).map(move |c| (a, b, c))));
    let (cases, w) = run_all(triples, |&(a, b, c)| {
        let ap = |mat: &Matrix<F::Elem>, v: &[F::Elem]| linalg::mat_apply(f, mat, v);
        let xy = g.sub(&prod[a][b], &prod[b][a]);
        // [x,y]z − x(yz) + y(xz)
        let lhs = g.add(&g.sub(&ap(&rh[c], &xy), &ap(&lh[a], &prod[b][c])), &ap(&lh[b], &prod[a][c]));
        // (zx)y − z[x,y] − (zy)x
        let rhs = g.sub(&g.sub(&ap(&rh[b], &prod[c][a]), &ap(&lh[c], &xy)), &ap(&rh[a], &prod[c][b]));
        (lhs != rhs).then(|| json!({ "x": vec_value(f, &herm[a]), "y": vec_value(f, &herm[b]), "z": vec_value(f, &herm[c]) }))
    });
    rep.push(record(
        "struct.hermitian-associators",
        "[x,y,z] − [y,x,z] = [z,x,y] − [z,y,x] for hermitian x,y,z",
        Mode::Exhaustive,
        cases,
        w,
    ));

    // Both identities are linear in y, so each is compared as an operator
    // and every column counts as one basis case.
    let third = f.inv(&f.from_int(3)).expect("characteristic is not 3");
    let two_thirds = f.add(&third, &third);
    let mut rng = pol.rng_for("struct.derivation-square");
    let xs: Vec<_> = (0..pol.samples).map(|_| g.sample_hermitian(&mut rng)).collect();
    let mut derivation = Vec::with_capacity(xs.len());
    let mut cube = Vec::with_capacity(xs.len());
    for x in &xs {
        let x2 = g.mul(x, x);
        let (xb, x2b) = (g.conj(x), g.conj(&x2));
        let (rx, rx2) = (ops.right(x), ops.right(&x2));
        let mm = |a: &Matrix<F::Elem>, b: &Matrix<F::Elem>| linalg::mat_mul(f, a, b);
        // D_{x²,x}(y) = ⅓[[x²,x] + [x̄²,x̄], y] + [y,x,x²] − [y,x̄²,x̄]
        let inner = g.add(&g.commutator(&x2, x), &g.commutator(&x2b, &xb));
        let d = ops.combine(&[
            (third.clone(), ops.left(&inner)),
            (f.neg(&third), ops.right(&inner)),
            (f.one(), mm(&rx2, &rx)),
            (f.neg(&f.one()), ops.right(&g.mul(x, &x2))),
            (f.neg(&f.one()), mm(&ops.right(&xb), &ops.right(&x2b))),
            (f.one(), ops.right(&g.mul(&x2b, &xb))),
        ]);
        derivation.push((x, d));
        let c = g.commutator(&x2, x);
        let lhs = ops.combine(&[(two_thirds.clone(), ops.left(&c)), (third.clone(), ops.right(&c))]);
        let rhs = matrix_sum(f, &mm(&rx, &rx2), &mm(&rx2, &rx), true);
        cube.push((x, lhs, rhs));
    }
    let (cases, w) = run_all(derivation.iter().flat_map(|(x, d)| (0..m).map(move |k| (x, d, k))), |&(x, d, k)| {
        (!linalg::is_zero(f, &d.col(k))).then(|| json!({ "x": vec_value(f, x), "y": vec_value(f, &basis[k]) }))
    });
    rep.push(record("struct.derivation-square", "D_{x²,x}(y) = 0 for hermitian x", Mode::Sampled, cases, w));

    let (cases, w) = run_all(cube.iter().flat_map(|(x, l, r)| (0..m).map(move |k| (x, l, r, k))), |&(x, l, r, k)| {
        (l.col(k) != r.col(k)).then(|| json!({ "x": vec_value(f, x), "y": vec_value(f, &basis[k]) }))
    });
    rep.push(record(
        "struct.cube-commutator",
        "⅔[x²,x]y + ⅓y[x²,x] = (yx²)x − (yx)x² for hermitian x",
        Mode::Sampled,
        cases,
        w,
    ));
    rep
}

/// Left and right multiplication operators, assembled from those of the
/// basis vectors.
struct MulOps<'a, F: Field> {
    f: &'a F,
    left: Vec<Matrix<F::Elem>>,
    right: Vec<Matrix<F::Elem>>,
}

impl<'a, F: Field> MulOps<'a, F> {
    fn new(g: &'a GenericAlgebra<F>, basis: &[Vector<F::Elem>]) -> Self {
        let of = |op: &dyn Fn(&[F::Elem], &[F::Elem]) -> Vector<F::Elem>| -> Vec<Matrix<F::Elem>> {
            basis.iter().map(|a| Matrix::from_cols(&basis.iter().map(|e| op(a, e)).collect::<Vec<_>>())).collect()
        };
        MulOps { f: g.field(), left: of(&|a, e| g.mul(a, e)), right: of(&|a, e| g.mul(e, a)) }
    }

    fn span(&self, mats: &[Matrix<F::Elem>], a: &[F::Elem]) -> Matrix<F::Elem> {
        self.combine_iter(a.iter().cloned().zip(mats))
    }

    fn left(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        self.span(&self.left, a)
    }

    fn right(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        self.span(&self.right, a)
    }

    fn combine(&self, terms: &[(F::Elem, Matrix<F::Elem>)]) -> Matrix<F::Elem> {
        self.combine_iter(terms.iter().map(|(c, mat)| (c.clone(), mat)))
    }

    fn combine_iter<'m>(&self, terms: impl Iterator<Item = (F::Elem, &'m Matrix<F::Elem>)>) -> Matrix<F::Elem>
    where
        F::Elem: 'm,
    {
        let f = self.f;
        let m = self.left.len();
        let mut acc = vec![f.zero(); m * m];
        for (c, mat) in terms {
            if f.is_zero(&c) {
                continue;
            }
            for i in 0..m {
                for j in 0..m {
                    let v = mat.get(i, j);
                    if !f.is_zero(v) {
                        acc[i * m + j] = f.add(&acc[i * m + j], &f.mul(&c, v));
                    }
                }
            }
        }
        Matrix::from_rows(acc.chunks(m).map(|r| r.to_vec()).collect())
    }
}

/// `[V_{x,y}, V_{z,w}] = V_{V_{x,y}(z),w} − V_{z,V_{y,x}(w)}`, compared as
/// endomorphisms.
fn operator_identity<F: Field>(g: &GenericAlgebra<F>, pol: &SamplingPolicy) -> Record {
    const ID: &str = "struct.operator-identity";
    const REF: &str = "[V_{x,y}, V_{z,w}] = V_{V_{x,y}(z),w} − V_{z,V_{y,x}(w)}";
    let f = g.field();
    let m = g.dim();
    let bracket = |a: &Matrix<F::Elem>, b: &Matrix<F::Elem>| {
        matrix_sum(f, &linalg::mat_mul(f, a, b), &linalg::mat_mul(f, b, a), true)
    };
    if m <= BASIS_QUADRUPLE_MAX_DIM {
        let basis: Vec<_> = (0..m).map(|i| g.basis(i)).collect();
        let vb: Vec<Vec<Matrix<F::Elem>>> =
            (0..m).map(|a| (0..m).map(|b| g.v_matrix(&basis[a], &basis[b])).collect()).collect();
        // V is bilinear, so V_{u,e_d} = Σ u_k V_{e_k,e_d}.
        let combine = |coeffs: &[F::Elem], mats: Vec<&Matrix<F::Elem>>| {
            let mut acc = Matrix::from_rows(vec![vec![f.zero(); m]; m]);
            for (k, c) in coeffs.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let mk = mats[k];
                for i in 0..m {
                    for j in 0..m {
                        let v = f.add(acc.get(i, j), &f.mul(c, mk.get(i, j)));
                        acc.set(i, j, v);
                    }
                }
            }
            acc
        };
        let quads = (0..m).flat_map(|a| (0..m).flat_map(move |b| (0..m).flat_map(move |c| (0..m).map(move |d| (a, b, c, d)))));
        let (cases, w) = run_all(quads, |&(a, b, c, d)| {
            let lhs = bracket(&vb[a][b], &vb[c][d]);
            let u = vb[a][b].col(c);
            let v = vb[b][a].col(d);
            let rhs = matrix_sum(f, &combine(&u, (0..m).map(|k| &vb[k][d]).collect()), &combine(&v, vb[c].iter().collect()), true);
            (lhs != rhs).then(|| json!({ "basis": [a, b, c, d] }))
        });
        record(ID, REF, Mode::Exhaustive, cases, w)
    } else {
        let basis: Vec<_> = (0..m).map(|i| g.basis(i)).collect();
        let ops = MulOps::new(g, &basis);
        // V_{x,y} = L_{xȳ} + R_x R_ȳ − R_y R_x̄
        let v_matrix = |x: &[F::Elem], y: &[F::Elem]| {
            let (xb, yb) = (g.conj(x), g.conj(y));
            let rx = ops.right(x);
            let plus = linalg::mat_mul(f, &rx, &ops.right(&yb));
            let minus = linalg::mat_mul(f, &ops.right(y), &ops.right(&xb));
            ops.combine(&[(f.one(), ops.left(&g.mul(x, &yb))), (f.one(), plus), (f.neg(&f.one()), minus)])
        };
        let mut rng = pol.rng_for(ID);
        let quads: Vec<_> = (0..pol.quadruple_samples).map(|_| [g.sample(&mut rng), g.sample(&mut rng), g.sample(&mut rng), g.sample(&mut rng)]).collect();
        let (cases, w) = run_all(quads.iter(), |[x, y, z, w]| {
            let vxy = v_matrix(x, y);
            let vzw = v_matrix(z, w);
            let u = linalg::mat_apply(f, &vxy, z);
            let v = g.v_op(y, x, w);
            let lhs = bracket(&vxy, &vzw);
            let rhs = matrix_sum(f, &v_matrix(&u, w), &v_matrix(z, &v), true);
            (lhs != rhs).then(|| {
                json!({ "x": vec_value(f, x), "y": vec_value(f, y), "z": vec_value(f, z), "w": vec_value(f, w) })
            })
        });
        record(ID, REF, Mode::Sampled, cases, w)
    }
}
