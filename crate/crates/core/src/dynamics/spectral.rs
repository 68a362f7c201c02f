//! Decay-free pure-state propagation by diagonalizing H once:
//! ψ(t) = V e^{−iEt} V† ψ(0).

use crate::error::{Error, Result};
use crate::linalg::eigen::hermitian_eigen;
use crate::linalg::matrix::{ComplexMatrix, C64, ZERO};

#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    energies: Vec<f64>,
    vectors: ComplexMatrix,
}

impl SpectralPropagator {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eigen(h)?;
        Ok(Self { energies: eig.values, vectors: eig.vectors })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// States at each requested time.
    pub fn propagate(&self, psi0: &[C64], times: &[f64]) -> Result<Vec<Vec<C64>>> {
        let n = self.dim();
        if psi0.len() != n {
            return Err(Error::DimensionMismatch { context: "SpectralPropagator", expected: n, found: psi0.len() });
        }
        let v = &self.vectors;
        let coeffs: Vec<C64> = (0..n).map(|k| (0..n).map(|i| v[(i, k)].conj() * psi0[i]).sum()).collect();
        Ok(times
            .iter()
            .map(|&t| {
                if t == 0.0 {
                    return psi0.to_vec();
                }
                let mut psi = vec![ZERO; n];
                for (k, (c, e)) in coeffs.iter().zip(&self.energies).enumerate() {
                    let ck = c * C64::from_polar(1.0, -e * t);
                    for (i, p) in psi.iter_mut().enumerate() {
                        *p += v[(i, k)] * ck;
                    }
                }
                psi
            })
            .collect())
    }
}
