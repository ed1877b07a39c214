use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalars::{Field, Ring};

use super::SkewDimOneAlgebra;

/// Largest `|F|^(2+2n)` [`division_scan`] will enumerate.
pub const SCAN_LIMIT: u128 = 100_000_000;

/// All nonzero `x` with `ν(x) = 0`, one per `F^×`-line: each is normalized
/// so that its first nonzero coordinate is 1, and the list is in
/// enumeration order. An empty result means every nonzero element is
/// invertible.
pub fn division_scan<F: Field>(a: &SkewDimOneAlgebra<F>) -> Result<Vec<Vector<F::Elem>>> {
    projective_zeros(a.extension().base(), a.f_dim(), |x| a.nu(&a.from_coords(x)))
}

/// The enumeration behind [`division_scan`] for any form on `F^m`: every
/// nonzero zero of `nu`, one per `F^×`-line, normalized to a leading 1.
pub fn projective_zeros<F: Field>(
    f: &F,
    m: usize,
    nu: impl Fn(&[F::Elem]) -> Result<F::Elem>,
) -> Result<Vec<Vector<F::Elem>>> {
    let q = f.cardinality().ok_or_else(|| Error::precondition("the scan needs a finite base field"))?;
    q.checked_pow(m as u32)
        .filter(|&t| t <= SCAN_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("|F|^{m} exceeds {SCAN_LIMIT}")))?;
    let mut zeros = Vec::new();
    // Normalized vectors: a leading 1 at position `lead`, zeros before it,
    // arbitrary entries after it.
    for lead in 0..m {
        let count = q.pow((m - lead - 1) as u32);
        for idx in 0..count {
            let mut x = vec![f.zero(); m];
            x[lead] = f.one();
            let mut rest = idx;
            for slot in x.iter_mut().skip(lead + 1) {
                *slot = f.element_at(rest % q);
                rest /= q;
            }
            if f.is_zero(&nu(&x)?) {
                zeros.push(x);
            }
        }
    }
    Ok(zeros)
}
