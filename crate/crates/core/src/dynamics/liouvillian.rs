//! Lindblad generator: dense application, dense superoperator and a sparse
//! form restricted to the density-matrix entries reachable from a given
//! initial support.
//!
//! Vectorization is row-stacking, matching the row-major matrix storage:
//! `vec(ρ)[i·D + j] = ρ[i, j]`, so `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)`.

use crate::error::{Error, Result};
use crate::linalg::matrix::{kron, ComplexMatrix, C64, I, ZERO};

fn check_dims(h: &ComplexMatrix, collapse: &[ComplexMatrix], context: &'static str) -> Result<usize> {
    let d = h.require_square(context)?;
    for l in collapse {
        let dl = l.require_square(context)?;
        if dl != d {
            return Err(Error::DimensionMismatch { context, expected: d, found: dl });
        }
    }
    Ok(d)
}

/// H − (i/2) Σ L†L
pub fn effective_hamiltonian(h: &ComplexMatrix, collapse: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    check_dims(h, collapse, "effective_hamiltonian")?;
    let mut heff = h.clone();
    for l in collapse {
        heff.add_scaled(C64::new(0.0, -0.5), &(&l.dagger() * l));
    }
    Ok(heff)
}

/// dρ/dt = −i[H, ρ] + Σ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})
pub fn liouvillian_apply(h: &ComplexMatrix, collapse: &[ComplexMatrix], rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = check_dims(h, collapse, "liouvillian_apply")?;
    let dr = rho.require_square("liouvillian_apply")?;
    if dr != d {
        return Err(Error::DimensionMismatch { context: "liouvillian_apply", expected: d, found: dr });
    }
    let mut out = h.commutator(rho)?.scale(-I);
    for l in collapse {
        let ld = l.dagger();
        let ldl = &ld * l;
        out += &(&(l * rho) * &ld);
        out.add_scaled(C64::new(-0.5, 0.0), &(&ldl * rho));
        out.add_scaled(C64::new(-0.5, 0.0), &(rho * &ldl));
    }
    Ok(out)
}

/// Dense D²×D² generator acting on row-stacked `vec(ρ)`.
pub fn liouvillian_superoperator(h: &ComplexMatrix, collapse: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let d = check_dims(h, collapse, "liouvillian_superoperator")?;
    let id = ComplexMatrix::identity(d);
    let heff = effective_hamiltonian(h, collapse)?;
    // −i H_eff ρ + i ρ H_eff†
    let mut sup = kron(&heff, &id).scale(-I);
    sup.add_scaled(I, &kron(&id, &heff.dagger().transpose()));
    for l in collapse {
        sup += &kron(l, &l.dagger().transpose());
    }
    Ok(sup)
}

/// Column-major sparse view: for each column j, the nonzero `(row, value)`.
fn columns(m: &ComplexMatrix) -> Vec<Vec<(usize, C64)>> {
    let d = m.rows();
    let mut cols = vec![Vec::new(); m.cols()];
    for i in 0..d {
        for (j, col) in cols.iter_mut().enumerate() {
            let v = m[(i, j)];
            if v != ZERO {
                col.push((i, v));
            }
        }
    }
    cols
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<(usize, C64)>> {
    (0..m.rows()).map(|i| (0..m.cols()).filter(|&j| m[(i, j)] != ZERO).map(|j| (j, m[(i, j)])).collect()).collect()
}

/// Lindblad generator in compressed-row form over the closure of an initial
/// support under the generator's sparsity pattern. Entries outside the
/// closure stay exactly zero for all time.
#[derive(Clone, Debug)]
pub struct SparseLiouvillian {
    dim: usize,
    /// Reachable `(i, j)` pairs, in row-major order.
    support: Vec<(usize, usize)>,
    /// Position of `(i, j)` in `support`, or `usize::MAX`.
    lookup: Vec<usize>,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseLiouvillian {
    /// `seed` lists the nonzero entries of the initial density matrix.
    pub fn new(h: &ComplexMatrix, collapse: &[ComplexMatrix], seed: &[(usize, usize)]) -> Result<Self> {
        let d = check_dims(h, collapse, "SparseLiouvillian")?;
        let heff = effective_hamiltonian(h, collapse)?;
        let heff_rows = rows(&heff);
        let heff_cols = columns(&heff);
        let l_rows: Vec<_> = collapse.iter().map(rows).collect();
        let l_cols: Vec<_> = collapse.iter().map(columns).collect();

        let mut reached = vec![false; d * d];
        let mut stack = Vec::new();
        for &(i, j) in seed {
            if i >= d || j >= d {
                return Err(Error::DimensionMismatch {
                    context: "SparseLiouvillian seed",
                    expected: d,
                    found: i.max(j) + 1,
                });
            }
            if !reached[i * d + j] {
                reached[i * d + j] = true;
                stack.push((i, j));
            }
        }
        // ρ[i,j] feeds dρ[k,j] (H_eff[k,i]), dρ[i,l] (H_eff[l,j]) and dρ[k,l] (L[k,i] L[l,j]*)
        while let Some((i, j)) = stack.pop() {
            let mut visit = |k: usize, l: usize| {
                if !reached[k * d + l] {
                    reached[k * d + l] = true;
                    stack.push((k, l));
                }
            };
            for &(k, _) in &heff_cols[i] {
                visit(k, j);
            }
            for &(l, _) in &heff_cols[j] {
                visit(i, l);
            }
            for cols in &l_cols {
                for &(k, _) in &cols[i] {
                    for &(l, _) in &cols[j] {
                        visit(k, l);
                    }
                }
            }
        }

        let mut support = Vec::new();
        let mut lookup = vec![usize::MAX; d * d];
        for (idx, _) in reached.iter().enumerate().filter(|(_, r)| **r) {
            lookup[idx] = support.len();
            support.push((idx / d, idx % d));
        }

        let mut row_ptr = Vec::with_capacity(support.len() + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        let mut acc: Vec<(usize, C64)> = Vec::new();
        row_ptr.push(0);
        for &(k, l) in &support {
            acc.clear();
            for &(i, v) in &heff_rows[k] {
                acc.push((lookup[i * d + l], -I * v));
            }
            for &(j, v) in &heff_rows[l] {
                acc.push((lookup[k * d + j], I * v.conj()));
            }
            for rows in &l_rows {
                for &(i, a) in &rows[k] {
                    for &(j, b) in &rows[l] {
                        acc.push((lookup[i * d + j], a * b.conj()));
                    }
                }
            }
            acc.retain(|(c, _)| *c != usize::MAX);
            acc.sort_by_key(|(c, _)| *c);
            let mut last = usize::MAX;
            for &(c, v) in acc.iter() {
                if c == last {
                    *values.last_mut().unwrap() += v;
                } else {
                    col_idx.push(c);
                    values.push(v);
                    last = c;
                }
            }
            row_ptr.push(col_idx.len());
        }
        Ok(Self { dim: d, support, lookup, row_ptr, col_idx, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of tracked density-matrix entries.
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn support(&self) -> &[(usize, usize)] {
        &self.support
    }

    /// Gathers the tracked entries of `rho`. Fails if `rho` has weight outside
    /// the support.
    pub fn compress(&self, rho: &ComplexMatrix) -> Result<Vec<C64>> {
        let d = self.dim;
        if rho.rows() != d || rho.cols() != d {
            return Err(Error::DimensionMismatch {
                context: "SparseLiouvillian::compress",
                expected: d,
                found: rho.rows(),
            });
        }
        for (idx, v) in rho.as_slice().iter().enumerate() {
            if *v != ZERO && self.lookup[idx] == usize::MAX {
                return Err(Error::InvalidState(format!("entry ({}, {}) outside tracked support", idx / d, idx % d)));
            }
        }
        Ok(self.support.iter().map(|&(i, j)| rho[(i, j)]).collect())
    }

    pub fn expand(&self, v: &[C64]) -> ComplexMatrix {
        let mut rho = ComplexMatrix::zeros(self.dim, self.dim);
        for (&(i, j), x) in self.support.iter().zip(v) {
            rho[(i, j)] = *x;
        }
        rho
    }

    /// Σ_i ρ[i,i] over tracked diagonal entries.
    pub fn trace(&self, v: &[C64]) -> C64 {
        self.support.iter().zip(v).filter(|((i, j), _)| i == j).map(|(_, x)| *x).sum()
    }

    pub fn apply(&self, v: &[C64], out: &mut [C64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let mut s = ZERO;
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                s += self.values[p] * v[self.col_idx[p]];
            }
            *o = s;
        }
    }
}
