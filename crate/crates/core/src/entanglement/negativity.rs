//! Logarithmic negativity and residual contangles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, partial_transpose, trace_norm, ComplexMatrix, SpaceLayout, Subsystem};

/// Raw residuals in `[-RESIDUAL_CLAMP, 0)` are reported as 0.
pub const RESIDUAL_CLAMP: f64 = 1e-9;

/// Focus subsystem A and its ordered complement (B, C).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionLabel {
    pub focus: Subsystem,
    pub rest: [Subsystem; 2],
}

impl PartitionLabel {
    pub fn new(focus: Subsystem, b: Subsystem, c: Subsystem) -> Result<Self> {
        let mut slots = [focus.slot(), b.slot(), c.slot()];
        slots.sort_unstable();
        if slots != [0, 1, 2] {
            return Err(Error::InvalidSubsystems(format!("{focus:?}|{b:?}{c:?} is not a permutation")));
        }
        Ok(Self { focus, rest: [b, c] })
    }

    /// One label per choice of focus subsystem.
    pub fn all() -> [Self; 3] {
        let [s, p, m] = Subsystem::ALL;
        [Self { focus: s, rest: [p, m] }, Self { focus: p, rest: [s, m] }, Self { focus: m, rest: [s, p] }]
    }
}

/// E_N = log₂ ‖ρ^{T_part}‖₁, with trace norms within 1e-12 of 1 mapped to 0.
pub fn log_negativity(rho: &ComplexMatrix, layout: &SpaceLayout, part: &[usize]) -> Result<f64> {
    let slots = layout.validate_slots(part, false)?;
    let pt = partial_transpose(rho, layout, &slots)?;
    let norm = trace_norm(&pt)?;
    Ok(if norm <= 1.0 + 1e-12 { 0.0 } else { norm.log2() })
}

/// Squared log-negativity of `focus` against `other` after tracing out the
/// remaining subsystem.
fn pair_contangle(rho: &ComplexMatrix, layout: &SpaceLayout, focus: Subsystem, other: Subsystem) -> Result<f64> {
    let mut keep = [focus.slot(), other.slot()];
    keep.sort_unstable();
    let reduced = partial_trace(rho, layout, &keep)?;
    let sub = layout.sub_layout(&keep)?;
    let pos = keep.iter().position(|&s| s == focus.slot()).unwrap();
    Ok(log_negativity(&reduced, &sub, &[pos])?.powi(2))
}

/// E^{A|BC} − E^{A|B} − E^{A|C} with E the squared log-negativity. Unclamped.
pub fn residual_contangle(rho: &ComplexMatrix, layout: &SpaceLayout, partition: PartitionLabel) -> Result<f64> {
    require_tripartite(layout)?;
    let whole = log_negativity(rho, layout, &[partition.focus.slot()])?.powi(2);
    let ab = pair_contangle(rho, layout, partition.focus, partition.rest[0])?;
    let ac = pair_contangle(rho, layout, partition.focus, partition.rest[1])?;
    Ok(whole - ab - ac)
}

/// Minimum residual contangle over the three focus choices. Tiny negative
/// values are clamped to 0; anything below `-RESIDUAL_CLAMP` is an error.
pub fn min_residual_contangle(rho: &ComplexMatrix, layout: &SpaceLayout) -> Result<f64> {
    let mut best = f64::INFINITY;
    for p in PartitionLabel::all() {
        best = best.min(residual_contangle(rho, layout, p)?);
    }
    if best < -RESIDUAL_CLAMP {
        return Err(Error::NegativeResidual(best));
    }
    Ok(best.max(0.0))
}

fn require_tripartite(layout: &SpaceLayout) -> Result<()> {
    if layout.len() != 3 {
        return Err(Error::InvalidSubsystems(format!("need three subsystems, got {}", layout.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{kron, C64};
    use crate::linalg::{hermitian_eigenvalues, layout::SpaceLayout};

    fn state(amps: &[(usize, f64)], dim: usize) -> ComplexMatrix {
        let mut psi = vec![C64::new(0.0, 0.0); dim];
        let n: f64 = amps.iter().map(|(_, a)| a * a).sum::<f64>().sqrt();
        for &(i, a) in amps {
            psi[i] = C64::new(a / n, 0.0);
        }
        ComplexMatrix::outer(&psi)
    }

    fn qubits(n: usize) -> SpaceLayout {
        SpaceLayout::from_dims(&vec![2; n]).unwrap()
    }

    /// Independent value: log₂ Σ|eigenvalues| of the partial transpose built
    /// by explicit index swapping on two qubits.
    fn two_qubit_oracle(rho: &ComplexMatrix) -> f64 {
        let pt = ComplexMatrix::from_fn(4, 4, |r, c| {
            let (a, b, ap, bp) = (r / 2, r % 2, c / 2, c % 2);
            rho[(ap * 2 + b, a * 2 + bp)]
        });
        hermitian_eigenvalues(&pt).unwrap().iter().map(|x| x.abs()).sum::<f64>().log2()
    }

    #[test]
    fn bell_pair_has_unit_negativity() {
        let rho = state(&[(0, 1.0), (3, 1.0)], 4);
        let v = log_negativity(&rho, &qubits(2), &[0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert!((v - two_qubit_oracle(&rho)).abs() < 1e-12);
    }

    #[test]
    fn partially_entangled_pair_matches_oracle() {
        let rho = state(&[(0, 0.9), (3, 0.3), (1, 0.2)], 4);
        let v = log_negativity(&rho, &qubits(2), &[1]).unwrap();
        assert!((v - two_qubit_oracle(&rho)).abs() < 1e-12);
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn product_states_have_zero_measures() {
        let a = state(&[(0, 0.6), (1, 0.8)], 2);
        let b = state(&[(0, 1.0), (2, 0.5)], 3);
        let c = state(&[(1, 1.0)], 2);
        let rho = kron(&kron(&a, &b), &c);
        let layout = SpaceLayout::from_dims(&[2, 3, 2]).unwrap();
        for part in [[0usize].as_slice(), &[1], &[2], &[0, 2]] {
            assert!(log_negativity(&rho, &layout, part).unwrap().abs() < 1e-10);
        }
        assert_eq!(min_residual_contangle(&rho, &layout).unwrap(), 0.0);
    }

    #[test]
    fn ghz_residual_is_one_for_every_focus() {
        let rho = state(&[(0, 1.0), (7, 1.0)], 8);
        let layout = qubits(3);
        assert!((log_negativity(&rho, &layout, &[0]).unwrap() - 1.0).abs() < 1e-12);
        for p in PartitionLabel::all() {
            assert!((residual_contangle(&rho, &layout, p).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((min_residual_contangle(&rho, &layout).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w_state_fixture() {
        let rho = state(&[(4, 1.0), (2, 1.0), (1, 1.0)], 8);
        let layout = qubits(3);
        let whole = log_negativity(&rho, &layout, &[0]).unwrap();
        // ‖ρ^{T_A}‖₁ = 1 + 2√2/3
        let expected_whole = (1.0 + 2.0 * 2f64.sqrt() / 3.0).log2();
        assert!((whole - expected_whole).abs() < 1e-12);
        let p = PartitionLabel::all()[0];
        let res = residual_contangle(&rho, &layout, p).unwrap();
        // each reduced pair: ‖ρ^T‖₁ = (2 + √5)/3
        let pair = ((2.0 + 5f64.sqrt()) / 3.0).log2();
        assert!((res - (expected_whole.powi(2) - 2.0 * pair.powi(2))).abs() < 1e-12);
        assert!((res - 0.4225036405771921).abs() < 1e-12);
    }

    #[test]
    fn minimum_is_bounded_by_each_partition() {
        let rho = state(&[(0, 0.7), (5, 0.4), (6, 0.5), (3, 0.2), (7, 0.3)], 8);
        let layout = qubits(3);
        let m = min_residual_contangle(&rho, &layout).unwrap();
        for p in PartitionLabel::all() {
            assert!(m <= residual_contangle(&rho, &layout, p).unwrap().max(0.0));
        }
    }

    #[test]
    fn partition_validation() {
        use Subsystem::*;
        assert!(PartitionLabel::new(Spin, Phonon, Magnon).is_ok());
        assert!(PartitionLabel::new(Spin, Spin, Magnon).is_err());
        let rho = state(&[(0, 1.0)], 4);
        assert!(log_negativity(&rho, &qubits(2), &[]).is_err());
        assert!(log_negativity(&rho, &qubits(2), &[2]).is_err());
        assert!(residual_contangle(&rho, &qubits(2), PartitionLabel::all()[0]).is_err());
    }
}
