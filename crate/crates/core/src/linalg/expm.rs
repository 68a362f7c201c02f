//! Matrix exponential by scaling and squaring with a [13/13] Padé approximant.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which the unscaled [13/13] approximant is accurate to
/// double precision.
const THETA13: f64 = 5.371920351148152;

/// `exp(A)` for a square matrix.
pub fn matrix_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square("matrix_exp")?;
    if n == 0 {
        return Ok(a.clone());
    }
    let norm = a.one_norm();
    if !norm.is_finite() {
        return Err(Error::InvalidParameter { name: "matrix_exp".into(), reason: "non-finite input".into() });
    }
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a.scale_real(0.5f64.powi(squarings));

    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| C64::new(PADE13[k], 0.0);

    let mut inner_u = a6.scale(b(13));
    inner_u.add_scaled(b(11), &a4);
    inner_u.add_scaled(b(9), &a2);
    let mut u = &a6 * &inner_u;
    u.add_scaled(b(7), &a6);
    u.add_scaled(b(5), &a4);
    u.add_scaled(b(3), &a2);
    u.add_scaled(b(1), &id);
    let u = &a * &u;

    let mut inner_v = a6.scale(b(12));
    inner_v.add_scaled(b(10), &a4);
    inner_v.add_scaled(b(8), &a2);
    let mut v = &a6 * &inner_v;
    v.add_scaled(b(6), &a6);
    v.add_scaled(b(4), &a4);
    v.add_scaled(b(2), &a2);
    v.add_scaled(b(0), &id);

    let mut r = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

/// Solves `A X = B` by LU decomposition with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square("solve")?;
    if b.rows() != n {
        return Err(Error::DimensionMismatch { context: "solve", expected: n, found: b.rows() });
    }
    let m = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let (piv, best) =
            (k..n).map(|i| (i, lu[(i, k)].norm())).fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best == 0.0 {
            return Err(Error::Singular("solve"));
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            for j in 0..m {
                let t = x[(k, j)];
                x[(k, j)] = x[(piv, j)];
                x[(piv, j)] = t;
            }
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            if f == ZERO {
                continue;
            }
            lu[(i, k)] = f;
            for j in k + 1..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..m {
                let t = x[(k, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for k in (0..n).rev() {
        let pivot = lu[(k, k)];
        for j in 0..m {
            let mut s = x[(k, j)];
            for i in k + 1..n {
                s -= lu[(k, i)] * x[(i, j)];
            }
            x[(k, j)] = s / pivot;
        }
    }
    Ok(x)
}
