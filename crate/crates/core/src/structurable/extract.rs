use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hcns::HermitianCns;
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{EtaleExtension, Field, KElement, Ring};
use crate::tensor::{self, Tensor3};
use crate::verify::{Mode, Record, Report, SamplingPolicy, Status};

use super::{GenericAlgebra, KjElement, SkewDimOneAlgebra};

/// A hermitian structure read off from structure constants, with the data
/// identifying `A(H)` with the input.
#[derive(Debug, Clone)]
pub struct Extraction<F: Field> {
    pub extension: EtaleExtension<F>,
    pub hcns: HermitianCns<F>,
    /// The skew element, `s₀² = μ·1`.
    pub s0: Vector<F::Elem>,
    pub mu: F::Elem,
    /// Images of the `F`-basis of `K ⊕ J` in the input coordinates, as the
    /// columns of a matrix.
    pub change_of_basis: Matrix<F::Elem>,
    pub report: Report,
}

impl<F: Field> Extraction<F> {
    pub fn is_split(&self) -> bool {
        self.extension.is_split()
    }

    pub fn to_value(&self) -> Value {
        let f = self.extension.base();
        json!({
            "kind": if self.is_split() { "split" } else { "field" },
            "mu": f.emit(&self.mu),
            "s0": tensor::vector_to_value(f, &self.s0),
            "hcns": self.hcns.to_value(),
            "change_of_basis": tensor::matrix_to_value(f, &self.change_of_basis),
            "report": self.report.to_value(),
        })
    }
}

struct Split<'a, F: Field> {
    g: &'a GenericAlgebra<F>,
    s0: Vector<F::Elem>,
    mu_inv2: F::Elem,
}

impl<F: Field> Split<'_, F> {
    /// `x = t + b` with `t = (xs₀ + s₀x)s₀ / 2μ ∈ K` and `b ∈ J`; returns
    /// `(α, β, b)` with `t = α + βs₀`.
    fn decompose(&self, x: &[F::Elem]) -> Result<(F::Elem, F::Elem, Vector<F::Elem>)> {
        let g = self.g;
        let f = g.field();
        let fail = || Error::invalid("A ≠ K ⊕ J");
        let t = linalg::scale(f, &self.mu_inv2, &g.mul(&linalg::add(f, &g.mul(x, &self.s0), &g.mul(&self.s0, x)), &self.s0));
        let tb = g.conj(&t);
        let half = f.inv(&f.from_int(2)).expect("characteristic is not 2");
        let alpha = g.scalar_part(&linalg::scale(f, &half, &linalg::add(f, &t, &tb))).ok_or_else(fail)?;
        let skew = linalg::scale(f, &half, &linalg::sub(f, &t, &tb));
        let k = self.s0.iter().position(|c| !f.is_zero(c)).expect("s₀ ≠ 0");
        let beta = f.div(&skew[k], &self.s0[k]).expect("nonzero");
        if linalg::scale(f, &beta, &self.s0) != skew {
            return Err(fail());
        }
        let b = linalg::sub(f, x, &t);
        let anti = linalg::add(f, &g.mul(&b, &self.s0), &g.mul(&self.s0, &b));
        if g.conj(&b) != b || !linalg::is_zero(f, &anti) {
            return Err(fail());
        }
        Ok((alpha, beta, b))
    }
}

/// Appends `v` to `span` if it is independent of it.
fn extend_span<F: Field>(f: &F, span: &mut Vec<Vector<F::Elem>>, v: &[F::Elem]) -> bool {
    if linalg::is_zero(f, v) {
        return false;
    }
    let m = v.len();
    let r = linalg::rank(f, &linalg::stack_rows(m, span.iter().cloned().chain([v.to_vec()])));
    if r > span.len() {
        span.push(v.to_vec());
        true
    } else {
        false
    }
}

/// Recovers `K`, `J`, `T` and `×` from an algebra with involution whose skew
/// part is one-dimensional, and checks the result is a hermitian cubic norm
/// structure whose algebra is isomorphic to the input.
///
/// The skew element `s₀` spans the skew line and has leading coordinate 1;
/// `K = F1 + Fs₀`, split exactly when `s₀² = μ` is a square. `J` gets
/// the `K`-basis formed from the `J`-components of the standard basis, in
/// order (through the idempotents of `K` in the split case), so an input of
/// the form `A(H)` in its own coordinates gives back `H` exactly.
pub fn extract_hcns<F: Field>(g: &GenericAlgebra<F>, pol: &SamplingPolicy) -> Result<Extraction<F>> {
    let f = g.field();
    let m = g.dim();
    let skew = g.skew_basis();
    if skew.len() != 1 {
        return Err(Error::precondition(format!("skew part has dimension {}, expected 1", skew.len())));
    }
    let lead = skew[0].iter().find(|c| !f.is_zero(c)).expect("basis vector is nonzero");
    let s0 = linalg::scale(f, &f.inv(lead).expect("nonzero"), &skew[0]);
    let mu = g
        .scalar_part(&g.mul(&s0, &s0))
        .ok_or_else(|| Error::invalid("F1 + Fs₀ is not closed under multiplication"))?;
    if f.is_zero(&mu) {
        return Err(Error::invalid("s₀² = 0, so F1 + Fs₀ is not étale"));
    }
    if (m - 2) % 2 != 0 {
        return Err(Error::invalid("J has odd F-dimension"));
    }
    let n = (m - 2) / 2;
    let ext = EtaleExtension::quadratic(f.clone(), mu.clone())?;
    let root = ext.root_of(&mu)?;
    let two_mu = f.mul(&f.from_int(2), &mu);
    let sp = Split { g, s0: s0.clone(), mu_inv2: f.inv(&two_mu).expect("μ ≠ 0") };

    let parts: Vec<Vector<F::Elem>> = (0..m).map(|k| sp.decompose(&g.basis(k)).map(|(_, _, b)| b)).collect::<Result<_>>()?;

    // `kb[0], kb[1]`: images of the `F`-basis of the encoded `K`;
    // `fb[2i], fb[2i+1]`: images of `(1,0)e_i` and `(0,1)e_i`.
    let (kb, fb) = if ext.is_split() {
        let g_inv = f.inv(&root.u).expect("√μ ≠ 0");
        let half = f.inv(&f.from_int(2)).expect("characteristic is not 2");
        let scaled = linalg::scale(f, &g_inv, &s0);
        let e1 = linalg::scale(f, &half, &linalg::add(f, g.unit(), &scaled));
        let e2 = linalg::scale(f, &half, &linalg::sub(f, g.unit(), &scaled));
        let (mut us, mut ws) = (Vec::new(), Vec::new());
        for b in &parts {
            extend_span(f, &mut us, &g.mul(&e1, b));
            extend_span(f, &mut ws, &g.mul(&e2, b));
        }
        if us.len() != n || ws.len() != n {
            return Err(Error::invalid("J is not a free K-module of rank (dim J)/2"));
        }
        let fb = us.into_iter().zip(ws).flat_map(|(u, w)| [u, w]).collect::<Vec<_>>();
        (vec![e1, e2], fb)
    } else {
        let mut span = Vec::new();
        let mut fb = Vec::new();
        for b in &parts {
            if extend_span(f, &mut span, b) {
                let sb = g.mul(&s0, b);
                if !extend_span(f, &mut span, &sb) {
                    return Err(Error::invalid("s₀J is not complementary"));
                }
                fb.push(b.clone());
                fb.push(sb);
            }
        }
        if fb.len() != 2 * n {
            return Err(Error::invalid("J does not have F-dimension dim A − 2"));
        }
        (vec![g.unit().to_vec(), s0.clone()], fb)
    };
    let fb_matrix = Matrix::from_cols(&fb);
    let k_of = |alpha: F::Elem, beta: F::Elem| ext.add(&ext.embed(&alpha), &ext.mul(&ext.embed(&beta), &root));
    let j_coords = |b: &[F::Elem]| -> Result<Vector<KElement<F::Elem>>> {
        let c = linalg::solve_f(f, &fb_matrix, b).ok_or_else(|| Error::invalid("product leaves J"))?;
        Ok((0..n).map(|i| KElement::new(c[2 * i].clone(), c[2 * i + 1].clone())).collect())
    };
    // `c_i = fb[2i] + fb[2i+1]` in the split case (`(1,1)e_i`), `fb[2i]` otherwise.
    let c: Vec<Vector<F::Elem>> = (0..n)
        .map(|i| if ext.is_split() { linalg::add(f, &fb[2 * i], &fb[2 * i + 1]) } else { fb[2 * i].clone() })
        .collect();
    let mut gram = vec![vec![ext.zero(); n]; n];
    let mut slices = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let (alpha, beta, b) = sp.decompose(&g.mul(&c[i], &c[j]))?;
            gram[i][j] = k_of(alpha, beta);
            slices[i * n + j] = j_coords(&b)?;
        }
    }
    let cross = Tensor3::from_slices(&ext, n, |i, j| slices[i * n + j].clone());
    let hcns = HermitianCns::new(ext.clone(), cross, Matrix::from_rows(gram))?;

    let mut report = hcns.verify(pol);
    // Images of the F-basis of K ⊕ J: [kb0, kb1, fb0, fb1, …].
    let change_of_basis = Matrix::from_cols(&kb.iter().chain(fb.iter()).cloned().collect::<Vec<_>>());
    let a = SkewDimOneAlgebra::new(hcns.clone());
    let phi = |x: &KjElement<F::Elem>| linalg::mat_apply(f, &change_of_basis, &a.to_coords(x));
    let basis: Vec<_> = (0..m).map(|i| a.from_coords(&linalg::unit(f, m, i))).collect();
    let mut witness = None;
    let mut cases = 0;
    'outer: for x in &basis {
        cases += 1;
        if phi(&a.conj(x)) != g.conj(&phi(x)) {
            witness = Some(json!({ "conj": a.element_value(x) }));
            break;
        }
        for y in &basis {
            cases += 1;
            if phi(&a.mul(x, y)) != g.mul(&phi(x), &phi(y)) {
                witness = Some(json!({ "x": a.element_value(x), "y": a.element_value(y) }));
                break 'outer;
            }
        }
    }
    report.push(Record {
        id: "extract.isomorphism".into(),
        reference: "A ≅ A(H) via K ⊕ J, bc = T(b,c) + b×c".into(),
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        mode: Mode::Exhaustive,
        cases,
        witness,
    });
    report.push(Record::direct(
        "extract.bijective",
        "A = K ⊕ J",
        linalg::rank(f, &change_of_basis) == m,
        || Value::Null,
    ));
    if !report.all_passed() {
        let failed: Vec<_> = report.failures().map(|r| r.id.clone()).collect();
        return Err(Error::VerificationFailed(format!("extracted structure fails {}", failed.join(", "))));
    }
    Ok(Extraction { extension: ext, hcns, s0, mu, change_of_basis, report })
}
