//! Dense vectors and square matrices over a coefficient ring, with exact
//! elimination over the base field.
//!
//! Matrices over an extension `K` are inverted and solved through their
//! realization as `F`-matrices, which handles zero divisors of split `K`.

use crate::scalars::{Field, Ring};

pub type Vector<E> = Vec<E>;

pub fn zeros<R: Ring>(r: &R, n: usize) -> Vector<R::Elem> {
    vec![r.zero(); n]
}

pub fn unit<R: Ring>(r: &R, n: usize, i: usize) -> Vector<R::Elem> {
    let mut v = zeros(r, n);
    v[i] = r.one();
    v
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vector<R::Elem> {
    a.iter().zip(b).map(|(x, y)| r.add(x, y)).collect()
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vector<R::Elem> {
    a.iter().zip(b).map(|(x, y)| r.sub(x, y)).collect()
}

pub fn neg<R: Ring>(r: &R, a: &[R::Elem]) -> Vector<R::Elem> {
    a.iter().map(|x| r.neg(x)).collect()
}

pub fn scale<R: Ring>(r: &R, t: &R::Elem, a: &[R::Elem]) -> Vector<R::Elem> {
    a.iter().map(|x| r.mul(t, x)).collect()
}

pub fn conj<R: Ring>(r: &R, a: &[R::Elem]) -> Vector<R::Elem> {
    a.iter().map(|x| r.conj(x)).collect()
}

/// `t·a + b`.
pub fn axpy<R: Ring>(r: &R, t: &R::Elem, a: &[R::Elem], b: &[R::Elem]) -> Vector<R::Elem> {
    a.iter().zip(b).map(|(x, y)| r.add(&r.mul(t, x), y)).collect()
}

pub fn is_zero<R: Ring>(r: &R, a: &[R::Elem]) -> bool {
    a.iter().all(|x| r.is_zero(x))
}

/// Coordinates over the base field, `degree` per entry.
pub fn to_base<R: Ring>(r: &R, a: &[R::Elem]) -> Vector<<R::Base as Ring>::Elem> {
    a.iter().flat_map(|x| r.to_base_coords(x)).collect()
}

pub fn from_base<R: Ring>(r: &R, c: &[<R::Base as Ring>::Elem]) -> Vector<R::Elem> {
    c.chunks(r.degree()).map(|ch| r.from_base_coords(ch)).collect()
}

/// The `idx`-th vector of the base-field basis of `R^n`.
pub fn base_basis_vector<R: Ring>(r: &R, n: usize, idx: usize) -> Vector<R::Elem> {
    let f = r.base();
    let d = r.degree();
    let mut c = vec![f.zero(); n * d];
    c[idx] = f.one();
    from_base(r, &c)
}

/// A square matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(cols: &[Vec<E>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_cols(&self.to_rows())
    }

    pub fn map<T>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_cols(&(0..n).map(|j| unit(r, n, j)).collect::<Vec<_>>())
}

pub fn mat_mul<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let mut data = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = r.zero();
            for k in 0..a.cols {
                let x = a.get(i, k);
                if !r.is_zero(x) {
                    acc = r.add(&acc, &r.mul(x, b.get(k, j)));
                }
            }
            data.push(acc);
        }
    }
    Matrix { rows: a.rows, cols: b.cols, data }
}

pub fn mat_apply<R: Ring>(r: &R, m: &Matrix<R::Elem>, v: &[R::Elem]) -> Vector<R::Elem> {
    (0..m.rows)
        .map(|i| {
            let mut acc = r.zero();
            for (x, y) in m.row(i).iter().zip(v) {
                if !r.is_zero(x) && !r.is_zero(y) {
                    acc = r.add(&acc, &r.mul(x, y));
                }
            }
            acc
        })
        .collect()
}

pub fn mat_conj<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    m.map(|x| r.conj(x))
}

/// The `F`-matrix of an additive map `R^n -> R^m` given by its action on
/// the `F`-basis of `R^n`.
pub fn realize_map<R: Ring>(
    r: &R,
    n: usize,
    f: impl Fn(&[R::Elem]) -> Vector<R::Elem>,
) -> Matrix<<R::Base as Ring>::Elem> {
    let cols: Vec<_> = (0..n * r.degree()).map(|k| to_base(r, &f(&base_basis_vector(r, n, k)))).collect();
    Matrix::from_cols(&cols)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else { continue };
        for j in 0..m.cols {
            m.data.swap(row * m.cols + j, p * m.cols + j);
        }
        let inv = f.inv(m.get(row, col)).expect("nonzero pivot");
        for j in 0..m.cols {
            let v = f.mul(m.get(row, j), &inv);
            m.set(row, j, v);
        }
        for i in 0..m.rows {
            if i == row || f.is_zero(m.get(i, col)) {
                continue;
            }
            let factor = m.get(i, col).clone();
            for j in 0..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(row, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, &mut m.clone()).len()
}

/// A basis of `{x : m·x = 0}`, one vector per free column, in RREF normal form.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vector<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); a.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a.get(r, fc));
            }
            v
        })
        .collect()
}

/// Stacks row blocks into one matrix with `cols` columns.
pub fn stack_rows<E: Clone>(cols: usize, rows: impl IntoIterator<Item = Vec<E>>) -> Matrix<E> {
    let data: Vec<E> = rows.into_iter().flatten().collect();
    Matrix { rows: data.len() / cols.max(1), cols, data }
}

pub fn inverse_f<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows;
    if m.cols != n {
        return None;
    }
    let mut aug = Matrix { rows: n, cols: 2 * n, data: Vec::with_capacity(2 * n * n) };
    for i in 0..n {
        aug.data.extend_from_slice(m.row(i));
        aug.data.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_rows((0..n).map(|i| aug.row(i)[n..].to_vec()).collect()))
}

/// Solves `m·x = b` over `F`, returning one solution if any exists.
pub fn solve_f<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vector<F::Elem>> {
    let mut aug = Matrix { rows: m.rows, cols: m.cols + 1, data: Vec::new() };
    for i in 0..m.rows {
        aug.data.extend_from_slice(m.row(i));
        aug.data.push(b[i].clone());
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, m.cols).clone();
    }
    Some(x)
}

/// Inverse of an `R`-linear map given by its matrix, or `None` if singular.
pub fn inverse<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    let n = m.rows;
    let real = realize_map(r, n, |v| mat_apply(r, m, v));
    let inv = inverse_f(r.base(), &real)?;
    let cols: Vec<_> = (0..n)
        .map(|j| from_base(r, &mat_apply(r.base(), &inv, &to_base(r, &unit(r, n, j)))))
        .collect();
    Some(Matrix::from_cols(&cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{EtaleExtension, KElement, PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_inverse() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(7), q(4)]]);
        let inv = inverse(&Rationals, &m).unwrap();
        assert_eq!(inv, Matrix::from_rows(vec![vec![q(4), q(-1)], vec![q(-7), q(2)]]));
        let sing = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(inverse(&Rationals, &sing).is_none());
        assert_eq!(nullspace(&Rationals, &sing), vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn split_zero_divisor_matrix_is_singular() {
        let k = EtaleExtension::split(Rationals);
        let e = KElement::new(q(1), q(0));
        let m = Matrix::from_rows(vec![vec![e.clone(), k.zero()], vec![k.zero(), k.one()]]);
        assert!(inverse(&k, &m).is_none());
        let m2 = Matrix::from_rows(vec![vec![KElement::new(q(2), q(3)), k.zero()], vec![k.zero(), k.one()]]);
        let inv = inverse(&k, &m2).unwrap();
        assert_eq!(mat_mul(&k, &m2, &inv), identity(&k, 2));
    }

    #[test]
    fn solve_and_rank_over_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&f, &m), 2);
        let x = solve_f(&f, &m, &[6, 5, 2]).unwrap();
        assert_eq!(mat_apply(&f, &m, &x), vec![6, 5, 2]);
        assert!(solve_f(&f, &m, &[1, 0, 0]).is_none());
    }
}
