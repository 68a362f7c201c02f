//! Oracle and invariant suite behind the `selftest` subcommand.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::dynamics::{evolve, liouvillian_superoperator, uniform_grid, EvolutionSpec, InitialState, Tolerances};
use crate::entanglement::{min_residual_contangle, three_tangle_pure};
use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, matrix_exp, ComplexMatrix, SpaceLayout, C64};
use crate::model::{
    build_hamiltonian_lab, build_hamiltonian_squeezed, collapse_operators, squeeze_unitary, Dissipation, Frame,
    ModelParams, Resonance,
};

use super::figures::excited_vacuum;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, passed: value <= tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn small_model(r: f64) -> ModelParams {
    ModelParams::squeezed_resonant(r, 3.0, 2.0, 0.0, Resonance::Red)
}

/// Largest deviation of the integrator from exp(L t) vec ρ₀ on dims (2, 3, 2).
pub fn liouvillian_exponential_gap() -> Result<f64> {
    let layout = SpaceLayout::hybrid(3, 2)?;
    let h = build_hamiltonian_squeezed(&small_model(0.5), &layout)?;
    let diss = Dissipation { gamma_k: 0.7, gamma_s: 0.2, gamma_m: 0.4, gamma_th: 0.0 };
    let c_ops = collapse_operators(Frame::Squeezed, &diss, &layout)?;
    let rho0 = ComplexMatrix::outer(&excited_vacuum(&layout)?);
    let grid = uniform_grid(2.0, 10);
    let spec = EvolutionSpec {
        layout: layout.clone(),
        hamiltonian: h.clone(),
        collapse_ops: c_ops.clone(),
        initial_state: InitialState::Density(rho0.clone()),
        time_grid: grid.clone(),
        tolerances: Tolerances { rel: 1e-10, abs: 1e-12 },
        store_states: true,
    };
    let states = evolve(&spec)?.states.unwrap_or_default();
    let l = liouvillian_superoperator(&h, &c_ops)?;
    let d = layout.total_dim();
    let mut worst = 0.0f64;
    for (t, rho) in grid.iter().zip(&states) {
        let exact = matrix_exp(&l.scale_real(*t))?.mat_vec(rho0.as_slice())?;
        let exact = ComplexMatrix::from_vec(d, d, exact)?;
        worst = worst.max(rho.max_abs_diff(&exact));
    }
    Ok(worst)
}

/// Relative deviation between U H_lab U† and H_squeezed + E₀ on phonon
/// levels below `block`.
/// Relative Frobenius error of `U H_lab U†` against the squeezed-frame Hamiltonian on
/// the block with phonon number at most `n_phonon / 4`.
pub fn frame_equivalence_gap(r: f64, n_phonon: usize) -> Result<f64> {
    let layout = SpaceLayout::hybrid(n_phonon, 2)?;
    let p = ModelParams::squeezed_resonant(r, 15.0, 30.0, 0.0, Resonance::Red);
    let u = squeeze_unitary(r, &layout)?;
    let mapped = &(&u * &build_hamiltonian_lab(&p, &layout)?) * &u.dagger();
    let mut sq = build_hamiltonian_squeezed(&p, &layout)?;
    let e0 = 0.5 * (p.squeezed_delta_m() - p.delta_m);
    sq.add_scaled(C64::new(e0, 0.0), &ComplexMatrix::identity(layout.total_dim()));
    let low: Vec<usize> = (0..layout.total_dim()).filter(|&i| layout.levels_of(i)[1] <= n_phonon / 4).collect();
    let (mut diff, mut norm) = (0.0f64, 0.0f64);
    for &i in &low {
        for &j in &low {
            diff += (mapped[(i, j)] - sq[(i, j)]).norm_sqr();
            norm += sq[(i, j)].norm_sqr();
        }
    }
    Ok((diff / norm).sqrt())
}

pub fn ghz() -> [C64; 8] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = [C64::new(0.0, 0.0); 8];
    a[0] = C64::new(s, 0.0);
    a[7] = C64::new(s, 0.0);
    a
}

pub fn w_state() -> [C64; 8] {
    let s = 1.0 / 3f64.sqrt();
    let mut a = [C64::new(0.0, 0.0); 8];
    for k in [1, 2, 4] {
        a[k] = C64::new(s, 0.0);
    }
    a
}

/// Worst trace, Hermiticity and positivity defects over all stored states of
/// a dissipative run.
pub fn state_invariant_defects() -> Result<[f64; 3]> {
    let layout = SpaceLayout::hybrid(4, 3)?;
    let h = build_hamiltonian_squeezed(&small_model(1.0), &layout)?;
    let diss = Dissipation { gamma_k: 1.0, gamma_s: 0.05, gamma_m: 0.3, gamma_th: 0.0 };
    let spec = EvolutionSpec {
        layout: layout.clone(),
        hamiltonian: h,
        collapse_ops: collapse_operators(Frame::Squeezed, &diss, &layout)?,
        initial_state: InitialState::Pure(excited_vacuum(&layout)?),
        time_grid: uniform_grid(5.0, 50),
        tolerances: Tolerances::default(),
        store_states: true,
    };
    let mut worst = [0.0f64; 3];
    for rho in evolve(&spec)?.states.unwrap_or_default() {
        worst[0] = worst[0].max((rho.trace() - C64::new(1.0, 0.0)).norm());
        worst[1] = worst[1].max(rho.hermiticity_defect());
        let min = hermitian_eigenvalues(&rho.hermitian_part())?.into_iter().fold(f64::INFINITY, f64::min);
        worst[2] = worst[2].max(-min);
    }
    Ok(worst)
}

fn random_state(rng: &mut impl Rng) -> [C64; 8] {
    let v: [C64; 8] = std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| z / n)
}

/// Applies a random SU(2) to qubit `bit` (4, 2 or 1) of a three-qubit state.
fn local_unitary(a: &[C64; 8], bit: usize, rng: &mut impl Rng) -> [C64; 8] {
    let (th, ph, ch): (f64, f64, f64) = (rng.gen_range(0.0..3.0), rng.gen_range(0.0..6.0), rng.gen_range(0.0..6.0));
    let u = C64::from_polar(th.cos(), ph);
    let v = C64::from_polar(th.sin(), ch);
    let mut out = *a;
    for k in 0..8 {
        if k & bit == 0 {
            let (x, y) = (a[k], a[k | bit]);
            out[k] = u * x - v.conj() * y;
            out[k | bit] = v * x + u.conj() * y;
        }
    }
    out
}

/// Three-tangle range and local-unitary invariance on seeded random states.
pub fn random_tangle_gap(seed: u64, samples: usize) -> Result<f64> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = random_state(&mut rng);
        let tau = three_tangle_pure(&a)?;
        worst = worst.max((-tau).max(tau - 1.0));
        let mut b = a;
        for bit in [4, 2, 1] {
            b = local_unitary(&b, bit, &mut rng);
        }
        worst = worst.max((three_tangle_pure(&b)? - tau).abs());
    }
    Ok(worst)
}

pub fn run_selftest(seed: u64) -> Result<SelfTestReport> {
    let qubits = SpaceLayout::hybrid(2, 2)?;
    let ghz_rho = ComplexMatrix::outer(&ghz());
    let [trace, herm, pos] = state_invariant_defects()?;
    let checks = vec![
        Check::below("evolve_vs_liouvillian_exponential", liouvillian_exponential_gap()?, 1e-6),
        Check::below("frame_equivalence_r0.5_nb120", frame_equivalence_gap(0.5, 120)?, 1e-4),
        Check::below("ghz_min_residual_contangle", (min_residual_contangle(&ghz_rho, &qubits)? - 1.0).abs(), 1e-6),
        Check::below("ghz_three_tangle", (three_tangle_pure(&ghz())? - 1.0).abs(), 1e-9),
        Check::below("w_three_tangle", three_tangle_pure(&w_state())?, 1e-9),
        Check::below("trace_preservation", trace, 1e-8),
        Check::below("hermiticity", herm, 1e-9),
        Check::below("positivity", pos, 1e-7),
        Check::below("random_three_tangle_invariance", random_tangle_gap(seed, 200)?, 1e-10),
    ];
    Ok(SelfTestReport { seed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = run_selftest(7).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{c:?}");
        }
        assert_eq!(report.checks.len(), 9);
    }

    #[test]
    fn local_unitary_is_unitary() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let a = random_state(&mut rng);
        let b = local_unitary(&a, 2, &mut rng);
        let n: f64 = b.iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-14);
    }

    #[test]
    fn frame_gap_grows_at_the_truncation_edge() {
        assert!(frame_equivalence_gap(0.25, 60).unwrap() < 1e-12);
        assert!(frame_equivalence_gap(1.0, 60).unwrap() > 1.0);
    }
}
