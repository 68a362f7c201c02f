//! Single-subsystem operators and their embedding into the composite space.
//!
//! The spin basis is ordered `(|e>, |g>)`, so `sigma_z = diag(+1, -1)` and
//! `sigma_plus = |e><g|`.

use super::layout::SpaceLayout;
use super::matrix::{kron, ComplexMatrix, C64, I, ONE, ZERO};
use crate::error::{Error, Result};

/// Truncated bosonic annihilation operator, `a[k-1, k] = sqrt(k)`.
pub fn annihilation(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidCutoff(n));
    }
    let mut a = ComplexMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    Ok(a)
}

pub fn creation(n: usize) -> Result<ComplexMatrix> {
    Ok(annihilation(n)?.dagger())
}

/// `a^dagger a = diag(0, 1, ..., n-1)`.
pub fn number(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidCutoff(n));
    }
    Ok(ComplexMatrix::from_real_diag(&(0..n).map(|k| k as f64).collect::<Vec<_>>()))
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO]).expect("2x2")
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]).expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, -1.0])
}

/// `|e><g|`
pub fn sigma_plus() -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ZERO, ZERO]).expect("2x2")
}

/// `|g><e|`
pub fn sigma_minus() -> ComplexMatrix {
    sigma_plus().dagger()
}

/// `I ⊗ ... ⊗ op ⊗ ... ⊗ I` with `op` at `slot`.
pub fn embed(op: &ComplexMatrix, slot: usize, layout: &SpaceLayout) -> Result<ComplexMatrix> {
    if slot >= layout.len() {
        return Err(Error::InvalidSubsystems(format!("slot {slot} out of range")));
    }
    let d = op.require_square("embed")?;
    if d != layout.dim_of(slot) {
        return Err(Error::DimensionMismatch { context: "embed", expected: layout.dim_of(slot), found: d });
    }
    let left: usize = layout.dims()[..slot].iter().product();
    let right: usize = layout.dims()[slot + 1..].iter().product();
    let mut out = op.clone();
    if right > 1 {
        out = kron(&out, &ComplexMatrix::identity(right));
    }
    if left > 1 {
        out = kron(&ComplexMatrix::identity(left), &out);
    }
    Ok(out)
}

/// Column vector of a product basis state.
pub fn basis_state(layout: &SpaceLayout, levels: &[usize]) -> Result<Vec<C64>> {
    let mut psi = vec![ZERO; layout.total_dim()];
    psi[layout.index_of(levels)?] = ONE;
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annihilation_small_cutoffs() {
        let a2 = annihilation(2).unwrap();
        assert_eq!(a2, ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]));
        let a3 = annihilation(3).unwrap();
        assert_eq!(a3[(0, 1)], ONE);
        assert!((a3[(1, 2)].re - 2f64.sqrt()).abs() < 1e-15);
        let nonzero = a3.as_slice().iter().filter(|z| **z != ZERO).count();
        assert_eq!(nonzero, 2);
        assert_eq!(annihilation(1), Err(Error::InvalidCutoff(1)));
    }

    #[test]
    fn truncated_commutator_defect() {
        for n in 2..8 {
            let a = annihilation(n).unwrap();
            let comm = a.commutator(&a.dagger()).unwrap();
            let mut expected = vec![1.0; n];
            expected[n - 1] = 1.0 - n as f64;
            assert!(comm.max_abs_diff(&ComplexMatrix::from_real_diag(&expected)) < 1e-12);
        }
    }

    #[test]
    fn embed_sigma_z_on_spin() {
        let l = SpaceLayout::from_dims(&[2, 2, 2]).unwrap();
        let e = embed(&sigma_z(), 0, &l).unwrap();
        assert_eq!(e, ComplexMatrix::from_real_diag(&[1., 1., 1., 1., -1., -1., -1., -1.]));
    }

    #[test]
    fn embed_identity_is_identity() {
        let l = SpaceLayout::hybrid(4, 3).unwrap();
        for slot in 0..3 {
            let id = ComplexMatrix::identity(l.dim_of(slot));
            assert_eq!(embed(&id, slot, &l).unwrap(), ComplexMatrix::identity(24));
        }
    }

    #[test]
    fn different_slots_commute() {
        let l = SpaceLayout::hybrid(4, 3).unwrap();
        let b = embed(&annihilation(4).unwrap(), 1, &l).unwrap();
        let sp = embed(&sigma_plus(), 0, &l).unwrap();
        assert!((&b * &sp).max_abs_diff(&(&sp * &b)) < 1e-14);
    }

    #[test]
    fn embed_dimension_mismatch() {
        let l = SpaceLayout::hybrid(4, 3).unwrap();
        assert!(matches!(embed(&sigma_z(), 1, &l), Err(Error::DimensionMismatch { .. })));
        assert!(embed(&sigma_z(), 3, &l).is_err());
    }

    #[test]
    fn pauli_algebra() {
        let xy = &sigma_x() * &sigma_y();
        assert!(xy.max_abs_diff(&sigma_z().scale(I)) < 1e-15);
        let sp_sm = &sigma_plus() * &sigma_minus();
        assert_eq!(sp_sm, ComplexMatrix::from_real_diag(&[1.0, 0.0]));
    }
}
