//! Cubic structure tensors `C[i][j][k]` and square Gram matrices, stored
//! densely for equality and serialization and sparsely for contraction.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalars::Ring;

#[derive(Debug, Clone)]
pub struct Tensor3<E> {
    n: usize,
    data: Vec<E>,
    nz: Vec<(usize, usize, usize, E)>,
    // `nz[rows[i]..rows[i + 1]]` holds the entries with first index `i`.
    rows: Vec<usize>,
}

impl<E: PartialEq> PartialEq for Tensor3<E> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.data == other.data
    }
}

impl<E: Eq> Eq for Tensor3<E> {}

impl<E: Clone + PartialEq> Tensor3<E> {
    /// Builds a tensor from `f(i, j, k)`.
    pub fn from_fn<R: Ring<Elem = E>>(r: &R, n: usize, f: impl Fn(usize, usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        Self::from_data(r, n, data)
    }

    pub fn from_data<R: Ring<Elem = E>>(r: &R, n: usize, data: Vec<E>) -> Self {
        let mut nz = Vec::new();
        let mut rows = vec![0];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = &data[(i * n + j) * n + k];
                    if !r.is_zero(v) {
                        nz.push((i, j, k, v.clone()));
                    }
                }
            }
            rows.push(nz.len());
        }
        Tensor3 { n, data, nz, rows }
    }

    /// The tensor whose slice `[i][j]` is the vector `f(i, j)`.
    pub fn from_slices<R: Ring<Elem = E>>(r: &R, n: usize, f: impl Fn(usize, usize) -> Vector<E>) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                data.extend(f(i, j));
            }
        }
        Self::from_data(r, n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &E {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn slice(&self, i: usize, j: usize) -> &[E] {
        let start = (i * self.n + j) * self.n;
        &self.data[start..start + self.n]
    }

    pub fn is_symmetric(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..i {
                for k in 0..n {
                    if self.get(i, j, k) != self.get(j, i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `(x, y) ↦ Σ C[i][j][k] x_i y_j`.
    pub fn contract<R: Ring<Elem = E>>(&self, r: &R, x: &[E], y: &[E]) -> Vector<E> {
        let mut out = vec![r.zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if r.is_zero(xi) {
                continue;
            }
            let mut cur: Option<(usize, Option<E>)> = None;
            for (_, j, k, c) in &self.nz[self.rows[i]..self.rows[i + 1]] {
                if cur.as_ref().map(|(cj, _)| cj != j).unwrap_or(true) {
                    let yj = &y[*j];
                    cur = Some((*j, (!r.is_zero(yj)).then(|| r.mul(xi, yj))));
                }
                if let Some((_, Some(p))) = &cur {
                    out[*k] = r.add(&out[*k], &r.mul(c, p));
                }
            }
        }
        out
    }

    pub fn map<R: Ring>(&self, target: &R, f: impl Fn(&E) -> R::Elem) -> Tensor3<R::Elem> {
        Tensor3::from_data(target, self.n, self.data.iter().map(f).collect())
    }

    pub fn to_value<R: Ring<Elem = E>>(&self, r: &R) -> Value {
        let n = self.n;
        Value::Array(
            (0..n)
                .map(|i| {
                    Value::Array(
                        (0..n)
                            .map(|j| Value::Array(self.slice(i, j).iter().map(|x| r.emit(x)).collect()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_value<R: Ring<Elem = E>>(r: &R, n: usize, v: &Value) -> Result<Self> {
        let outer = as_array(v, n, "cross tensor")?;
        let mut data = Vec::with_capacity(n * n * n);
        for vi in outer {
            for vij in as_array(vi, n, "cross tensor slice")? {
                for x in as_array(vij, n, "cross tensor fibre")? {
                    data.push(r.parse(x)?);
                }
            }
        }
        Ok(Self::from_data(r, n, data))
    }
}

fn as_array<'a>(v: &'a Value, n: usize, what: &str) -> Result<&'a Vec<Value>> {
    match v {
        Value::Array(xs) if xs.len() == n => Ok(xs),
        Value::Array(xs) => Err(Error::schema(format!("{what}: expected {n} entries, got {}", xs.len()))),
        _ => Err(Error::schema(format!("{what}: expected an array"))),
    }
}

pub fn matrix_to_value<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| Value::Array(m.row(i).iter().map(|x| r.emit(x)).collect()))
            .collect(),
    )
}

pub fn matrix_from_value<R: Ring>(r: &R, n: usize, v: &Value, what: &str) -> Result<Matrix<R::Elem>> {
    let rows = as_array(v, n, what)?
        .iter()
        .map(|row| as_array(row, n, what)?.iter().map(|x| r.parse(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

pub fn vector_to_value<R: Ring>(r: &R, v: &[R::Elem]) -> Value {
    Value::Array(v.iter().map(|x| r.emit(x)).collect())
}

pub fn vector_from_value<R: Ring>(r: &R, n: usize, v: &Value, what: &str) -> Result<Vector<R::Elem>> {
    as_array(v, n, what)?.iter().map(|x| r.parse(x)).collect()
}

/// A bilinear (or sesquilinear) form given by its Gram matrix, with the
/// nonzero entries cached.
#[derive(Debug, Clone)]
pub struct Gram<E> {
    matrix: Matrix<E>,
    nz: Vec<(usize, usize, E)>,
}

impl<E: PartialEq> PartialEq for Gram<E> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<E: Eq> Eq for Gram<E> {}

impl<E: Clone> Gram<E> {
    pub fn new<R: Ring<Elem = E>>(r: &R, matrix: Matrix<E>) -> Self {
        let mut nz = Vec::new();
        for i in 0..matrix.rows {
            for j in 0..matrix.cols {
                if !r.is_zero(matrix.get(i, j)) {
                    nz.push((i, j, matrix.get(i, j).clone()));
                }
            }
        }
        Gram { matrix, nz }
    }

    pub fn matrix(&self) -> &Matrix<E> {
        &self.matrix
    }

    /// `Σ x_i G[i][j] y_j`.
    pub fn eval<R: Ring<Elem = E>>(&self, r: &R, x: &[E], y: &[E]) -> E {
        let mut acc = r.zero();
        for (i, j, g) in &self.nz {
            if r.is_zero(&x[*i]) || r.is_zero(&y[*j]) {
                continue;
            }
            acc = r.add(&acc, &r.mul(&x[*i], &r.mul(g, &y[*j])));
        }
        acc
    }
}
