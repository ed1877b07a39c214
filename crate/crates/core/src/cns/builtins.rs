use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{EtaleExtension, Field, Ring};
use crate::tensor::Tensor3;

use super::CubicNormStructure;

pub const BUILTIN_NAMES: [&str; 4] = ["unit", "diagonal3", "matrices3", "radical4"];

/// Named instances over any coefficient ring:
///
/// * `unit`: the ring itself, `N(a) = a³`, `a♯ = a²`, `T(a,b) = 3ab`;
/// * `diagonal3`: `R³` with `N` the product of coordinates;
/// * `matrices3`: 3×3 matrices with `N = det`, `♯ = adjugate`,
///   `T(a,b) = tr(ab)`;
/// * `radical4`: `diagonal3 ⊕ R` with `a♯ = (a₂a₃, a₃a₁, a₁a₂, −a₁a₄)`,
///   whose trace form vanishes on the last coordinate.
pub fn builtin<R: Ring>(ring: R, name: &str) -> Result<CubicNormStructure<R>> {
    let r = &ring;
    let c = |k: i64| r.from_i64(k);
    match name {
        "unit" => {
            let cross = Tensor3::from_fn(r, 1, |_, _, _| c(2));
            CubicNormStructure::new(ring.clone(), cross, Matrix::from_rows(vec![vec![c(3)]]), Some(vec![c(1)]))
        }
        "diagonal3" => {
            let cross = Tensor3::from_fn(r, 3, |i, j, k| c(i64::from(i != j && i != k && j != k)));
            CubicNormStructure::new(ring.clone(), cross, linalg::identity(r, 3), Some(vec![c(1); 3]))
        }
        "radical4" => {
            let cross = Tensor3::from_fn(r, 4, |i, j, k| match (i, j, k) {
                (0, 3, 3) | (3, 0, 3) => c(-1),
                _ if i < 3 && j < 3 && k < 3 => c(i64::from(i != j && i != k && j != k)),
                _ => c(0),
            });
            let gram = Matrix::from_rows((0..4).map(|i| (0..4).map(|j| c(i64::from(i == j && i < 3))).collect()).collect());
            CubicNormStructure::new(ring.clone(), cross, gram, Some(vec![c(1), c(1), c(1), c(0)]))
        }
        "matrices3" => {
            let e = |p: usize| linalg::unit(r, 9, p);
            let cross = Tensor3::from_slices(r, 9, |p, q| {
                let s = adjugate(r, &linalg::add(r, &e(p), &e(q)));
                linalg::sub(r, &linalg::sub(r, &s, &adjugate(r, &e(p))), &adjugate(r, &e(q)))
            });
            // tr(ab) = Σ a_ij b_ji.
            let gram = Matrix::from_rows(
                (0..9)
                    .map(|p| (0..9).map(|q| c(i64::from(p / 3 == q % 3 && p % 3 == q / 3))).collect())
                    .collect(),
            );
            let one = (0..9).map(|p| c(i64::from(p % 4 == 0))).collect();
            CubicNormStructure::new(ring.clone(), cross, gram, Some(one))
        }
        _ => Err(Error::UnknownBuiltin(name.into())),
    }
}

/// Adjugate of a row-major 3×3 matrix by cofactors.
fn adjugate<R: Ring>(r: &R, m: &[R::Elem]) -> Vector<R::Elem> {
    let at = |i: usize, j: usize| &m[3 * i + j];
    let mut out = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let minor = r.sub(
                &r.mul(at(rows[0], cols[0]), at(rows[1], cols[1])),
                &r.mul(at(rows[0], cols[1]), at(rows[1], cols[0])),
            );
            out.push(if (i + j) % 2 == 0 { minor } else { r.neg(&minor) });
        }
    }
    out
}

/// The same tensors read over an extension `K ⊇ F`.
pub fn extend_scalars<F: Field>(
    j: &CubicNormStructure<F>,
    k: &EtaleExtension<F>,
) -> CubicNormStructure<EtaleExtension<F>> {
    let cross = j.cross_tensor().map(k, |x| k.embed(x));
    let gram = j.gram().map(|x| k.embed(x));
    let identity = j.identity.as_ref().map(|v| v.iter().map(|x| k.embed(x)).collect());
    CubicNormStructure::new(k.clone(), cross, gram, identity).expect("scalar extension preserves shape")
}

/// `J′ ⊕ J′` over the split extension `F ⊕ F`, with every operation taken
/// componentwise.
pub fn split_double<F: Field>(j: &CubicNormStructure<F>) -> CubicNormStructure<EtaleExtension<F>> {
    extend_scalars(j, &EtaleExtension::split(j.ring.clone()))
}
