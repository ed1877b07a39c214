use crate::cns::CubicNormStructure;
use crate::cubic::CubicForm;
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::scalars::Field;

use super::GenericAlgebra;

struct Entries<E> {
    s1: E,
    s2: E,
    j1: Vector<E>,
    j2: Vector<E>,
}

fn split<E: Clone>(c: &[E]) -> Entries<E> {
    let n = (c.len() - 2) / 2;
    Entries {
        s1: c[0].clone(),
        s2: c[1].clone(),
        j1: (0..n).map(|i| c[2 + 2 * i].clone()).collect(),
        j2: (0..n).map(|i| c[3 + 2 * i].clone()).collect(),
    }
}

fn join<E: Clone>(e: Entries<E>) -> Vector<E> {
    let mut out = vec![e.s1, e.s2];
    for (a, b) in e.j1.into_iter().zip(e.j2) {
        out.push(a);
        out.push(b);
    }
    out
}

/// The algebra of matrices `(s₁ j₁; j₂ s₂)` with `s_i ∈ F`, `j_i ∈ J′`,
/// involution exchanging `s₁` and `s₂`, and product
///
/// ```text
/// (s₁s₁′ + ηT(j₁,j₂′)          s₁j₁′ + s₂′j₁ + ηj₂×j₂′)
/// (s₂j₂′ + s₁′j₂ + j₁×j₁′      s₂s₂′ + ηT(j₂,j₁′)     )
/// ```
///
/// Coordinates are `[s₁, s₂, j₁[0], j₂[0], j₁[1], j₂[1], …]`, which lines up
/// with `K ⊕ J` for split `K` and `J = J′ ⊕ J′`.
pub fn matrix_algebra<F: Field>(j: &CubicNormStructure<F>, eta: &F::Elem) -> Result<GenericAlgebra<F>> {
    let f = j.ring();
    if f.is_zero(eta) {
        return Err(Error::precondition("η must be nonzero"));
    }
    j.one()?;
    let n = j.dim();
    let m = 2 + 2 * n;
    let mul = |x: &[F::Elem], y: &[F::Elem]| {
        let (a, b) = (split(x), split(y));
        let s1 = f.add(&f.mul(&a.s1, &b.s1), &f.mul(eta, &j.trace(&a.j1, &b.j2)));
        let s2 = f.add(&f.mul(&a.s2, &b.s2), &f.mul(eta, &j.trace(&a.j2, &b.j1)));
        let j1 = linalg::add(
            f,
            &linalg::add(f, &linalg::scale(f, &a.s1, &b.j1), &linalg::scale(f, &b.s2, &a.j1)),
            &linalg::scale(f, eta, &j.cross(&a.j2, &b.j2)),
        );
        let j2 = linalg::add(
            f,
            &linalg::add(f, &linalg::scale(f, &a.s2, &b.j2), &linalg::scale(f, &b.s1, &a.j2)),
            &j.cross(&a.j1, &b.j1),
        );
        join(Entries { s1, s2, j1, j2 })
    };
    let conj = |x: &[F::Elem]| {
        let e = split(x);
        join(Entries { s1: e.s2, s2: e.s1, j1: e.j1, j2: e.j2 })
    };
    let unit = join(Entries { s1: f.one(), s2: f.one(), j1: linalg::zeros(f, n), j2: linalg::zeros(f, n) });
    GenericAlgebra::from_product(f.clone(), m, mul, conj, unit)
}
