//! Density-matrix evolution, observables and Fock-cutoff convergence.

use serde::{Deserialize, Serialize};

use super::dopri::{check_grid, integrate, StepControl};
use super::liouvillian::SparseLiouvillian;
use crate::error::{Error, Result};
use crate::linalg::eigen::{hermitian_eigenvalues, HERMITIAN_TOL};
use crate::linalg::matrix::{ComplexMatrix, C64, ZERO};
use crate::linalg::{SpaceLayout, Subsystem};

pub const TRACE_DRIFT_LIMIT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    Density(ComplexMatrix),
    Pure(Vec<C64>),
}

impl InitialState {
    pub fn density(&self) -> ComplexMatrix {
        match self {
            InitialState::Density(rho) => rho.clone(),
            InitialState::Pure(psi) => ComplexMatrix::outer(psi),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rel: 1e-8, abs: 1e-10 }
    }
}

#[derive(Clone, Debug)]
pub struct EvolutionSpec {
    pub layout: SpaceLayout,
    pub hamiltonian: ComplexMatrix,
    pub collapse_ops: Vec<ComplexMatrix>,
    pub initial_state: InitialState,
    /// Strictly increasing, starting at 0.
    pub time_grid: Vec<f64>,
    pub tolerances: Tolerances,
    pub store_states: bool,
}

/// Uniform grid of `points` intervals over `[0, t_end]`.
pub fn uniform_grid(t_end: f64, points: usize) -> Vec<f64> {
    (0..=points).map(|i| t_end * i as f64 / points as f64).collect()
}

impl EvolutionSpec {
    pub fn validate(&self) -> Result<ComplexMatrix> {
        let d = self.layout.total_dim();
        let n = self.hamiltonian.require_hermitian(HERMITIAN_TOL, "EvolutionSpec hamiltonian")?;
        if n != d {
            return Err(Error::DimensionMismatch { context: "EvolutionSpec hamiltonian", expected: d, found: n });
        }
        for l in &self.collapse_ops {
            if l.rows() != d || l.cols() != d {
                return Err(Error::DimensionMismatch {
                    context: "EvolutionSpec collapse op",
                    expected: d,
                    found: l.rows(),
                });
            }
        }
        check_grid(&self.time_grid)?;
        let rho = self.initial_state.density();
        if rho.rows() != d || rho.cols() != d {
            return Err(Error::DimensionMismatch {
                context: "EvolutionSpec initial state",
                expected: d,
                found: rho.rows(),
            });
        }
        if rho.hermiticity_defect() > 1e-12 {
            return Err(Error::InvalidState("initial state is not Hermitian".into()));
        }
        let tr = rho.trace().re;
        if (tr - 1.0).abs() >= 1e-12 {
            return Err(Error::InvalidState(format!("initial trace {tr} differs from 1")));
        }
        let min_eig = hermitian_eigenvalues(&rho.hermitian_part())?[0];
        if min_eig < -1e-12 {
            return Err(Error::InvalidState(format!("initial state has eigenvalue {min_eig}")));
        }
        Ok(rho)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Times in units of 1/λ.
    pub times: Vec<f64>,
    /// ⟨σ⁺σ⁻⟩
    pub spin: Vec<f64>,
    /// ⟨a†a⟩
    pub magnon: Vec<f64>,
    /// ⟨b†b⟩
    pub phonon: Vec<f64>,
    #[serde(skip)]
    pub states: Option<Vec<ComplexMatrix>>,
    /// Bound on the observable error from the accumulated local error
    /// estimates, using trace-norm contractivity of the Lindblad flow.
    pub error_estimate: f64,
    pub steps: usize,
    pub max_trace_drift: f64,
}

impl Trajectory {
    pub fn observables(&self) -> [&[f64]; 3] {
        [&self.spin, &self.magnon, &self.phonon]
    }

    /// Largest pointwise difference over all three observables.
    pub fn max_difference(&self, other: &Trajectory) -> Result<f64> {
        if self.times != other.times {
            return Err(Error::InvalidTimeGrid("trajectories sampled on different grids".into()));
        }
        Ok(self
            .observables()
            .iter()
            .zip(other.observables())
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max))
    }
}

/// Re tr(ρ·op). The imaginary residue is returned alongside.
pub fn expectation(rho: &ComplexMatrix, op: &ComplexMatrix) -> Result<(f64, f64)> {
    let d = rho.require_square("expectation")?;
    if op.rows() != d || op.cols() != d {
        return Err(Error::DimensionMismatch { context: "expectation", expected: d, found: op.rows() });
    }
    let mut s = ZERO;
    for i in 0..d {
        for j in 0..d {
            s += rho[(i, j)] * op[(j, i)];
        }
    }
    Ok((s.re, s.im))
}

/// Per-basis-state values of σ⁺σ⁻, a†a and b†b on a spin ⊗ phonon ⊗ magnon
/// layout (all three are diagonal in the Fock basis).
fn occupation_tables(layout: &SpaceLayout) -> Result<[Vec<f64>; 3]> {
    if layout.len() != 3 || layout.dim_of(Subsystem::Spin.slot()) != 2 {
        return Err(Error::InvalidSubsystems(format!("expected spin ⊗ phonon ⊗ magnon, got {:?}", layout.dims())));
    }
    let mut t = [Vec::new(), Vec::new(), Vec::new()];
    for idx in 0..layout.total_dim() {
        let lv = layout.levels_of(idx);
        t[0].push(if lv[Subsystem::Spin.slot()] == 0 { 1.0 } else { 0.0 });
        t[1].push(lv[Subsystem::Magnon.slot()] as f64);
        t[2].push(lv[Subsystem::Phonon.slot()] as f64);
    }
    Ok(t)
}

/// Integrates the Lindblad equation on the grid with adaptive Dormand–Prince
/// steps. Only density-matrix entries reachable from the initial support are
/// carried.
pub fn evolve(spec: &EvolutionSpec) -> Result<Trajectory> {
    let rho0 = spec.validate()?;
    let d = rho0.rows();
    let seed: Vec<(usize, usize)> =
        (0..d * d).filter(|&k| rho0.as_slice()[k] != ZERO).map(|k| (k / d, k % d)).collect();
    let gen = SparseLiouvillian::new(&spec.hamiltonian, &spec.collapse_ops, &seed)?;
    let y0 = gen.compress(&rho0)?;
    let tables = occupation_tables(&spec.layout)?;
    let diag_pos: Vec<(usize, usize)> =
        gen.support().iter().enumerate().filter(|(_, (i, j))| i == j).map(|(p, (i, _))| (p, *i)).collect();

    let n = spec.time_grid.len();
    let mut obs = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut states = spec.store_states.then(|| Vec::with_capacity(n));
    let mut max_drift = 0.0f64;
    let ctl = StepControl { rtol: spec.tolerances.rel, atol: spec.tolerances.abs, ..Default::default() };

    let stats = integrate(
        |_, y, dy| gen.apply(y, dy),
        &y0,
        &spec.time_grid,
        ctl,
        |i, y| {
            for (p, basis) in &diag_pos {
                let pop = y[*p].re;
                for (o, table) in obs.iter_mut().zip(&tables) {
                    o[i] += pop * table[*basis];
                }
            }
            if let Some(s) = states.as_mut() {
                s.push(gen.expand(y));
            }
            Ok(())
        },
        |t, y| {
            let drift = (gen.trace(y) - C64::new(1.0, 0.0)).norm();
            max_drift = max_drift.max(drift);
            if drift > TRACE_DRIFT_LIMIT {
                return Err(Error::TraceDrift { t, drift });
            }
            Ok(())
        },
    )?;

    let op_norm = tables.iter().flat_map(|t| t.iter().copied()).fold(1.0, f64::max);
    let [spin, magnon, phonon] = obs;
    Ok(Trajectory {
        times: spec.time_grid.clone(),
        spin,
        magnon,
        phonon,
        states,
        error_estimate: stats.local_error_sum * d as f64 * op_norm,
        steps: stats.accepted,
        max_trace_drift: max_drift,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffPolicy {
    pub n_phonon: usize,
    pub n_magnon: usize,
    /// Phonon cutoff multiplier per refinement.
    pub growth: usize,
    pub max_refinements: usize,
    /// Max absolute observable change accepted as converged.
    pub tolerance: f64,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        Self { n_phonon: 4, n_magnon: 3, growth: 2, max_refinements: 4, tolerance: 1e-3 }
    }
}

#[derive(Clone, Debug)]
pub struct ConvergedTrajectory {
    /// Result at the finest cutoff that was run.
    pub trajectory: Trajectory,
    pub n_phonon: usize,
    pub n_magnon: usize,
    pub converged: bool,
    /// Observable change between the last two cutoffs.
    pub last_change: f64,
}

/// Runs `build` at increasing phonon cutoffs until consecutive trajectories
/// agree within `policy.tolerance`. After `max_refinements` refinements
/// without agreement the finest result is returned with `converged == false`.
pub fn converged_evolve<F>(build: F, policy: &CutoffPolicy) -> Result<ConvergedTrajectory>
where
    F: Fn(&SpaceLayout) -> Result<EvolutionSpec>,
{
    if policy.growth < 2 || policy.n_phonon < 2 || policy.n_magnon < 2 {
        return Err(Error::InvalidParameter {
            name: "cutoff_policy".into(),
            reason: "cutoffs and growth factor must be at least 2".into(),
        });
    }
    let mut n_b = policy.n_phonon;
    let mut prev = evolve(&build(&SpaceLayout::hybrid(n_b, policy.n_magnon)?)?)?;
    let mut change = f64::INFINITY;
    for _ in 0..policy.max_refinements {
        let next_n = n_b * policy.growth;
        let next = evolve(&build(&SpaceLayout::hybrid(next_n, policy.n_magnon)?)?)?;
        change = prev.max_difference(&next)?;
        n_b = next_n;
        prev = next;
        if change < policy.tolerance {
            return Ok(ConvergedTrajectory {
                trajectory: prev,
                n_phonon: n_b,
                n_magnon: policy.n_magnon,
                converged: true,
                last_change: change,
            });
        }
    }
    Ok(ConvergedTrajectory {
        trajectory: prev,
        n_phonon: n_b,
        n_magnon: policy.n_magnon,
        converged: false,
        last_change: change,
    })
}
