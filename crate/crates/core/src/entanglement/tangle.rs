//! Pure-state three-tangle on the qubit projection of spin ⊗ phonon ⊗ magnon.

use crate::error::{Error, Result};
use crate::linalg::matrix::{C64, ZERO};
use crate::linalg::{SpaceLayout, Subsystem};

/// Leaked weight above which a projected three-tangle is flagged.
pub const LEAK_LIMIT: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitProjection {
    /// Index `4·s + 2·p + m` over spin, phonon and magnon levels {0, 1}.
    pub amplitudes: [C64; 8],
    /// 1 − weight on the projected subspace before renormalization.
    pub leaked_weight: f64,
}

impl QubitProjection {
    pub fn reliable(&self) -> bool {
        self.leaked_weight <= LEAK_LIMIT
    }
}

/// Projects a pure state onto phonon and magnon Fock levels {0, 1} and
/// renormalizes. A state with no weight there gives zero amplitudes and
/// leaked weight 1.
pub fn project_to_three_qubits(psi: &[C64], layout: &SpaceLayout) -> Result<QubitProjection> {
    if layout.len() != 3 || layout.dim_of(Subsystem::Spin.slot()) != 2 {
        return Err(Error::InvalidSubsystems(format!("expected spin ⊗ phonon ⊗ magnon, got {:?}", layout.dims())));
    }
    if psi.len() != layout.total_dim() {
        return Err(Error::DimensionMismatch {
            context: "project_to_three_qubits",
            expected: layout.total_dim(),
            found: psi.len(),
        });
    }
    let total: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::Unnormalized(total.sqrt()));
    }
    let mut amplitudes = [ZERO; 8];
    for (k, amp) in amplitudes.iter_mut().enumerate() {
        let (s, p, m) = (k >> 2, (k >> 1) & 1, k & 1);
        *amp = psi[layout.index_of(&[s, p, m])?];
    }
    let kept: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    let leaked_weight = (1.0 - kept).max(0.0);
    if kept > 0.0 {
        let s = 1.0 / kept.sqrt();
        amplitudes.iter_mut().for_each(|a| *a *= s);
    }
    Ok(QubitProjection { amplitudes, leaked_weight })
}

/// τ = 4|Det a| with Det the Cayley hyperdeterminant of the 2×2×2 tensor.
pub fn three_tangle_pure(a: &[C64; 8]) -> Result<f64> {
    let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Unnormalized(norm.sqrt()));
    }
    let [a000, a001, a010, a011, a100, a101, a110, a111] = *a;
    let d1 =
        a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * (a011 * a100 + a101 * a010 + a110 * a001)
        + a011 * a100 * (a101 * a010 + a110 * a001)
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    Ok(4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{ComplexMatrix, I};
    use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, partial_trace};
    use rand::{Rng, SeedableRng};

    fn normalized(v: [C64; 8]) -> [C64; 8] {
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.map(|z| z / n)
    }

    fn real(v: [f64; 8]) -> [C64; 8] {
        normalized(v.map(|x| C64::new(x, 0.0)))
    }

    /// Wootters concurrence squared of a two-qubit density matrix.
    fn concurrence_sq(rho: &ComplexMatrix) -> f64 {
        let yy = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 0.0, -1.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[-1.0, 0.0, 0.0, 0.0],
        ]);
        let tilde = &(&yy * &ComplexMatrix::from_fn(4, 4, |i, j| rho[(i, j)].conj())) * &yy;
        let sqrt_rho = hermitian_eigen(rho).unwrap().map_spectrum(|x| C64::new(x.max(0.0).sqrt(), 0.0));
        let m = (&(&sqrt_rho * &tilde) * &sqrt_rho).hermitian_part();
        let mut l: Vec<f64> = hermitian_eigenvalues(&m).unwrap().iter().map(|x| x.max(0.0).sqrt()).collect();
        l.sort_by(|a, b| b.partial_cmp(a).unwrap());
        (l[0] - l[1] - l[2] - l[3]).max(0.0).powi(2)
    }

    /// τ = C²_{A(BC)} − C²_{AB} − C²_{AC}
    fn ckw_oracle(a: &[C64; 8]) -> f64 {
        let layout = SpaceLayout::from_dims(&[2, 2, 2]).unwrap();
        let rho = ComplexMatrix::outer(a);
        let ra = partial_trace(&rho, &layout, &[0]).unwrap();
        let det = ra[(0, 0)] * ra[(1, 1)] - ra[(0, 1)] * ra[(1, 0)];
        4.0 * det.re
            - concurrence_sq(&partial_trace(&rho, &layout, &[0, 1]).unwrap())
            - concurrence_sq(&partial_trace(&rho, &layout, &[0, 2]).unwrap())
    }

    #[test]
    fn ghz_w_and_product() {
        let ghz = real([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!((three_tangle_pure(&ghz).unwrap() - 1.0).abs() < 1e-12);
        let w = real([0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(three_tangle_pure(&w).unwrap() < 1e-12);
        // (|0⟩+|1⟩) ⊗ |0⟩ ⊗ (|0⟩+2|1⟩)
        let prod = real([1.0, 2.0, 0.0, 0.0, 1.0, 2.0, 0.0, 0.0]);
        assert!(three_tangle_pure(&prod).unwrap() < 1e-12);
    }

    #[test]
    fn matches_ckw_oracle_on_random_states() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..25 {
            let a = normalized(std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
            let tau = three_tangle_pure(&a).unwrap();
            // the oracle takes square roots of rank-deficient spectra, so it
            // carries ~1e-8 noise of its own
            assert!((tau - ckw_oracle(&a)).abs() < 1e-7, "{tau} vs {}", ckw_oracle(&a));
            assert!((0.0..=1.0 + 1e-12).contains(&tau));
        }
    }

    #[test]
    fn invariant_under_basis_phases() {
        let a = normalized(std::array::from_fn(|k| C64::new(0.3 + k as f64 * 0.1, 0.2 * (k as f64).sin())));
        let base = three_tangle_pure(&a).unwrap();
        // rephase |1⟩ of each qubit in turn
        for bit in [4usize, 2, 1] {
            let mut c = a;
            for (k, z) in c.iter_mut().enumerate() {
                if k & bit != 0 {
                    *z *= (I * (0.4 + bit as f64)).exp();
                }
            }
            assert!((three_tangle_pure(&c).unwrap() - base).abs() < 1e-12);
        }
        let global = a.map(|z| z * (I * 2.2).exp());
        assert!((three_tangle_pure(&global).unwrap() - base).abs() < 1e-12);
    }

    #[test]
    fn rejects_unnormalized() {
        let mut a = [ZERO; 8];
        a[0] = C64::new(0.5, 0.0);
        assert!(matches!(three_tangle_pure(&a), Err(Error::Unnormalized(_))));
    }

    #[test]
    fn projection_leak() {
        let layout = SpaceLayout::hybrid(3, 3).unwrap();
        let d = layout.total_dim();
        let mut psi = vec![ZERO; d];
        psi[layout.index_of(&[0, 0, 0]).unwrap()] = C64::new(1.0, 0.0);
        let p = project_to_three_qubits(&psi, &layout).unwrap();
        assert_eq!(p.leaked_weight, 0.0);
        assert!(p.reliable());
        let mut psi = vec![ZERO; d];
        psi[layout.index_of(&[1, 2, 0]).unwrap()] = C64::new(1.0, 0.0);
        let p = project_to_three_qubits(&psi, &layout).unwrap();
        assert_eq!(p.leaked_weight, 1.0);
        assert!(!p.reliable());
        let mut psi = vec![ZERO; d];
        psi[layout.index_of(&[0, 0, 0]).unwrap()] = C64::new(0.8, 0.0);
        psi[layout.index_of(&[1, 1, 1]).unwrap()] = C64::new(0.0, 0.5);
        psi[layout.index_of(&[1, 2, 1]).unwrap()] = C64::new(0.0, (1.0f64 - 0.89).sqrt());
        let p = project_to_three_qubits(&psi, &layout).unwrap();
        assert!((p.leaked_weight - 0.11).abs() < 1e-12);
        assert!(!p.reliable());
        assert!((p.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(project_to_three_qubits(&psi[1..], &layout).is_err());
    }
}
