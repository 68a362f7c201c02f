//! Hermitian eigensolver.
//!
//! Householder reduction to a Hermitian tridiagonal matrix, a diagonal phase
//! similarity that makes the off-diagonal real, then implicit-shift QL on the
//! real symmetric tridiagonal. Eigenvalues converge to within ~1e-12 relative
//! to the matrix norm.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Relative Hermiticity tolerance accepted by the solver.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_QL_ITERATIONS: usize = 60;

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(f(λ)) V†`
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| C64::new(l, 0.0))
    }
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    h.require_hermitian(HERMITIAN_TOL, "hermitian_eigenvalues")?;
    let (mut d, mut e, _) = tridiagonalize(h, false);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.require_hermitian(HERMITIAN_TOL, "hermitian_eigen")?;
    let (mut d, mut e, q) = tridiagonalize(h, true);
    let q = q.expect("transform requested");
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    ql_implicit(&mut d, &mut e, Some(&mut z))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    // V = Q Z, columns permuted into ascending order
    let vectors = ComplexMatrix::from_fn(n, n, |i, col| {
        let k = order[col];
        (0..n).map(|m| q[(i, m)] * z[m * n + k]).sum()
    });
    Ok(HermitianEigen { values, vectors })
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(h: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(h)?.iter().map(|l| l.abs()).sum())
}

/// Reduces the Hermitian part of `h` to real symmetric tridiagonal form
/// `(diag, offdiag)` with `h = Q T Q†`. `offdiag[k]` couples `k` and `k+1`;
/// the last entry is zero.
fn tridiagonalize(h: &ComplexMatrix, want_q: bool) -> (Vec<f64>, Vec<f64>, Option<ComplexMatrix>) {
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut q = want_q.then(|| ComplexMatrix::identity(n));
    let mut sub = vec![ZERO; n];

    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if tail == 0.0 {
            sub[k] = x[0];
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= vnorm;
        }
        let m = v.len();
        let off = k + 1;
        // trailing block update: A <- A - 2(v w† + w v†), w = p - (v†p) v, p = A v
        let p: Vec<C64> = (0..m).map(|i| (0..m).map(|j| a[(off + i, off + j)] * v[j]).sum()).collect();
        let kappa: C64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - kappa.re * vi).collect();
        for i in 0..m {
            for j in 0..m {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(off + i, off + j)] -= upd * 2.0;
            }
        }
        a[(off, k)] = alpha;
        a[(k, off)] = alpha.conj();
        for i in off + 1..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
        sub[k] = alpha;
        if let Some(q) = q.as_mut() {
            // Q <- Q (I - 2 v v†)
            for r in 0..n {
                let qv: C64 = (0..m).map(|j| q[(r, off + j)] * v[j]).sum();
                for j in 0..m {
                    q[(r, off + j)] -= qv * v[j].conj() * 2.0;
                }
            }
        }
    }
    if n >= 2 {
        sub[n - 2] = a[(n - 1, n - 2)];
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut off = vec![0.0; n];
    // phases D with D† T D real: phi_{k+1} = phi_k * e_k / |e_k|
    let mut phase = ONE;
    let mut phases = vec![ONE; n];
    for k in 0..n.saturating_sub(1) {
        let e = sub[k];
        let mag = e.norm();
        off[k] = mag;
        if mag > 0.0 {
            phase *= e / mag;
        }
        phases[k + 1] = phase;
    }
    if let Some(q) = q.as_mut() {
        for r in 0..n {
            for c in 0..n {
                let val = q[(r, c)] * phases[c];
                q[(r, c)] = val;
            }
        }
    }
    (diag, off, q)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. On return `d` holds
/// the (unsorted) eigenvalues; if `z` is given (row-major n×n, initially the
/// identity) its columns are the eigenvectors.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::EigenNoConvergence(MAX_QL_ITERATIONS));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
