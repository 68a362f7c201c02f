//! Partial trace and partial transpose over a [`SpaceLayout`].

use super::layout::SpaceLayout;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

fn check_state(rho: &ComplexMatrix, layout: &SpaceLayout, context: &'static str) -> Result<usize> {
    let n = rho.require_square(context)?;
    if n != layout.total_dim() {
        return Err(Error::DimensionMismatch { context, expected: layout.total_dim(), found: n });
    }
    Ok(n)
}

/// Reduced matrix on the `keep` slots (returned in layout order).
pub fn partial_trace(rho: &ComplexMatrix, layout: &SpaceLayout, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = check_state(rho, layout, "partial_trace")?;
    let keep = layout.validate_slots(keep, true)?;
    if keep.len() == layout.len() {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..layout.len()).filter(|s| !keep.contains(s)).collect();
    let kept_dims: Vec<usize> = keep.iter().map(|&s| layout.dim_of(s)).collect();
    let out_dim: usize = kept_dims.iter().product();

    // reduced index and traced-out index of every composite index
    let mut red = vec![0usize; n];
    let mut env = vec![0usize; n];
    for (idx, (r, e)) in red.iter_mut().zip(env.iter_mut()).enumerate() {
        let levels = layout.levels_of(idx);
        *r = keep.iter().fold(0, |acc, &s| acc * layout.dim_of(s) + levels[s]);
        *e = traced.iter().fold(0, |acc, &s| acc * layout.dim_of(s) + levels[s]);
    }

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let data = rho.as_slice();
    for i in 0..n {
        for j in 0..n {
            if env[i] == env[j] {
                out[(red[i], red[j])] += data[i * n + j];
            }
        }
    }
    Ok(out)
}

/// Transpose of the indices belonging to `slots`.
pub fn partial_transpose(rho: &ComplexMatrix, layout: &SpaceLayout, slots: &[usize]) -> Result<ComplexMatrix> {
    let n = check_state(rho, layout, "partial_transpose")?;
    let slots = layout.validate_slots(slots, true)?;
    let strides = layout.strides();
    // component of each composite index that lives in the transposed slots
    let part: Vec<usize> = (0..n)
        .map(|idx| {
            let levels = layout.levels_of(idx);
            slots.iter().map(|&s| levels[s] * strides[s]).sum()
        })
        .collect();

    let mut out = ComplexMatrix::zeros(n, n);
    let src = rho.as_slice();
    let dst = out.as_mut_slice();
    for i in 0..n {
        for j in 0..n {
            let ni = i - part[i] + part[j];
            let nj = j - part[j] + part[i];
            dst[ni * n + nj] = src[i * n + j];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{kron, C64};

    fn ghz() -> ComplexMatrix {
        let mut psi = vec![C64::new(0.0, 0.0); 8];
        psi[0] = C64::new(0.5f64.sqrt(), 0.0);
        psi[7] = C64::new(0.5f64.sqrt(), 0.0);
        ComplexMatrix::outer(&psi)
    }

    fn random_density(n: usize, seed: u64) -> ComplexMatrix {
        // deterministic pseudo-random PSD matrix
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let g = ComplexMatrix::from_fn(n, n, |_, _| C64::new(next(), next()));
        let p = &g * &g.dagger();
        let t = p.trace().re;
        p.scale_real(1.0 / t)
    }

    #[test]
    fn trace_out_product_partner() {
        let ra = random_density(2, 1);
        let rb = random_density(3, 2);
        let l = SpaceLayout::from_dims(&[2, 3]).unwrap();
        let red = partial_trace(&kron(&ra, &rb), &l, &[0]).unwrap();
        assert!(red.max_abs_diff(&ra) < 1e-14);
        let red_b = partial_trace(&kron(&ra, &rb), &l, &[1]).unwrap();
        assert!(red_b.max_abs_diff(&rb) < 1e-14);
    }

    #[test]
    fn ghz_reduced_pair_is_classical_mixture() {
        let l = SpaceLayout::from_dims(&[2, 2, 2]).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]);
        for keep in [[0, 1], [0, 2], [1, 2]] {
            let red = partial_trace(&ghz(), &l, &keep).unwrap();
            assert!(red.max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn keep_all_is_identity_map() {
        let l = SpaceLayout::from_dims(&[2, 3, 2]).unwrap();
        let rho = random_density(12, 7);
        assert_eq!(partial_trace(&rho, &l, &[0, 1, 2]).unwrap(), rho);
    }

    #[test]
    fn middle_slot_trace_is_trace_preserving() {
        let l = SpaceLayout::from_dims(&[2, 3, 2]).unwrap();
        let rho = random_density(12, 9);
        let red = partial_trace(&rho, &l, &[0, 2]).unwrap();
        assert!((red.trace() - rho.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_transpose_involution_and_errors() {
        let l = SpaceLayout::from_dims(&[2, 3, 2]).unwrap();
        let rho = random_density(12, 3);
        for slots in [vec![0], vec![1], vec![2], vec![0, 2]] {
            let twice = partial_transpose(&partial_transpose(&rho, &l, &slots).unwrap(), &l, &slots).unwrap();
            assert!(twice.max_abs_diff(&rho) < 1e-14);
        }
        let full = partial_transpose(&rho, &l, &[0, 1, 2]).unwrap();
        assert!(full.max_abs_diff(&rho.transpose()) < 1e-15);
        assert!(partial_transpose(&rho, &l, &[5]).is_err());
        assert!(partial_trace(&rho, &l, &[]).is_err());
        let bad = SpaceLayout::from_dims(&[2, 2]).unwrap();
        assert!(partial_transpose(&rho, &bad, &[0]).is_err());
    }
}
