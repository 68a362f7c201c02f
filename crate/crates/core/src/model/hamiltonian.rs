//! Lab-frame and squeezed-frame Hamiltonians plus collapse operators.
//!
//! Basis order is spin ⊗ phonon ⊗ magnon with the spin basis (|e⟩, |g⟩).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::linalg::operators::{annihilation, embed, sigma_minus, sigma_plus, sigma_z};
use crate::linalg::{matrix_exp, SpaceLayout, Subsystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    Lab,
    Squeezed,
}

/// Which sideband the magnon is tuned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resonance {
    /// δ_K = δ_NV − Δ_m
    Red,
    /// δ_K = δ_NV + Δ_m
    Blue,
}

impl Resonance {
    pub fn magnon_detuning(self, delta_nv: f64, squeezed_delta_m: f64) -> f64 {
        match self {
            Resonance::Red => delta_nv - squeezed_delta_m,
            Resonance::Blue => delta_nv + squeezed_delta_m,
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "red" => Some(Self::Red),
            "blue" => Some(Self::Blue),
            _ => None,
        }
    }
}

/// Coherent parameters, in any consistent frequency unit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub lambda: f64,
    pub g0: f64,
    /// Ω_p
    pub drive_amplitude: f64,
    pub r: f64,
    /// Lab-frame δ_m.
    pub delta_m: f64,
    pub delta_k: f64,
    pub delta_nv: f64,
}

impl ModelParams {
    /// Parameters in units of λ for a given squeezed detuning Δ_m. The lab
    /// detuning and drive follow from δ_m = Δ_m cosh 2r, Ω_p = Δ_m sinh 2r.
    pub fn squeezed_resonant(r: f64, squeezed_delta_m: f64, g0: f64, delta_nv: f64, resonance: Resonance) -> Self {
        Self {
            lambda: 1.0,
            g0,
            drive_amplitude: squeezed_delta_m * (2.0 * r).sinh(),
            r,
            delta_m: squeezed_delta_m * (2.0 * r).cosh(),
            delta_k: resonance.magnon_detuning(delta_nv, squeezed_delta_m),
            delta_nv,
        }
    }

    pub fn lambda_eff(&self) -> f64 {
        self.lambda * self.r.exp()
    }

    /// Δ_m = δ_m / cosh 2r
    pub fn squeezed_delta_m(&self) -> f64 {
        self.delta_m / (2.0 * self.r).cosh()
    }

    /// Multiplies every frequency by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            lambda: self.lambda * s,
            g0: self.g0 * s,
            drive_amplitude: self.drive_amplitude * s,
            r: self.r,
            delta_m: self.delta_m * s,
            delta_k: self.delta_k * s,
            delta_nv: self.delta_nv * s,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("lambda", self.lambda),
            ("g0", self.g0),
            ("drive_amplitude", self.drive_amplitude),
            ("r", self.r),
            ("delta_m", self.delta_m),
            ("delta_k", self.delta_k),
            ("delta_nv", self.delta_nv),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name: name.into(), reason: format!("non-finite value {v}") });
            }
        }
        if self.r < 0.0 {
            return Err(Error::InvalidParameter { name: "r".into(), reason: "must be nonnegative".into() });
        }
        Ok(())
    }
}

/// Decay rates, same units as the matching [`ModelParams`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dissipation {
    pub gamma_k: f64,
    pub gamma_s: f64,
    /// Squeezed-frame mechanical decay Γ_m.
    pub gamma_m: f64,
    /// Lab-frame mechanical decay γ_th.
    pub gamma_th: f64,
}

impl Dissipation {
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            gamma_k: self.gamma_k * s,
            gamma_s: self.gamma_s * s,
            gamma_m: self.gamma_m * s,
            gamma_th: self.gamma_th * s,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma_k", self.gamma_k),
            ("gamma_s", self.gamma_s),
            ("gamma_m", self.gamma_m),
            ("gamma_th", self.gamma_th),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter {
                    name: name.into(),
                    reason: format!("must be nonnegative, got {v}"),
                });
            }
        }
        Ok(())
    }
}

struct Ops {
    a: ComplexMatrix,
    b: ComplexMatrix,
    sz: ComplexMatrix,
    sp: ComplexMatrix,
    sm: ComplexMatrix,
}

impl Ops {
    fn new(layout: &SpaceLayout) -> Result<Self> {
        if layout.len() != 3 || layout.dim_of(Subsystem::Spin.slot()) != 2 {
            return Err(Error::InvalidSubsystems(format!(
                "expected spin ⊗ phonon ⊗ magnon layout, got dims {:?}",
                layout.dims()
            )));
        }
        Ok(Self {
            a: embed(&annihilation(layout.n_magnon())?, Subsystem::Magnon.slot(), layout)?,
            b: embed(&annihilation(layout.n_phonon())?, Subsystem::Phonon.slot(), layout)?,
            sz: embed(&sigma_z(), Subsystem::Spin.slot(), layout)?,
            sp: embed(&sigma_plus(), Subsystem::Spin.slot(), layout)?,
            sm: embed(&sigma_minus(), Subsystem::Spin.slot(), layout)?,
        })
    }

    /// a†σ⁻ + aσ⁺
    fn exchange(&self) -> ComplexMatrix {
        &(&self.a.dagger() * &self.sm) + &(&self.a * &self.sp)
    }

    fn shared(&self, p: &ModelParams, coupling: f64, phonon_freq: f64) -> ComplexMatrix {
        let one = |x: f64| C64::new(x, 0.0);
        let ad = self.a.dagger();
        let bd = self.b.dagger();
        let exchange = self.exchange();
        let mut h = (&ad * &self.a).scale_real(p.delta_k);
        h.add_scaled(one(phonon_freq), &(&bd * &self.b));
        h.add_scaled(one(0.5 * p.delta_nv), &self.sz);
        h.add_scaled(one(coupling), &(&(&self.b + &bd) * &exchange));
        h.add_scaled(one(p.g0), &exchange);
        h
    }
}

/// Lab-frame Hamiltonian including the parametric drive.
pub fn build_hamiltonian_lab(p: &ModelParams, layout: &SpaceLayout) -> Result<ComplexMatrix> {
    p.validate()?;
    let ops = Ops::new(layout)?;
    let mut h = ops.shared(p, p.lambda, p.delta_m);
    let bd = ops.b.dagger();
    let pair = &(&bd * &bd) + &(&ops.b * &ops.b);
    h.add_scaled(C64::new(-0.5 * p.drive_amplitude, 0.0), &pair);
    Ok(h)
}

/// Squeezed-frame Hamiltonian: Δ_m replaces δ_m, λe^r replaces λ and the drive
/// term is gone. Equals `U H_lab U†` up to the constant (Δ_m − δ_m)/2 when
/// tanh 2r = Ω_p/δ_m.
pub fn build_hamiltonian_squeezed(p: &ModelParams, layout: &SpaceLayout) -> Result<ComplexMatrix> {
    p.validate()?;
    let ops = Ops::new(layout)?;
    Ok(ops.shared(p, p.lambda_eff(), p.squeezed_delta_m()))
}

pub fn build_hamiltonian(frame: Frame, p: &ModelParams, layout: &SpaceLayout) -> Result<ComplexMatrix> {
    match frame {
        Frame::Lab => build_hamiltonian_lab(p, layout),
        Frame::Squeezed => build_hamiltonian_squeezed(p, layout),
    }
}

/// U = exp[r(b² − b†²)/2] on the full space, so that U b U† = b cosh r + b† sinh r.
pub fn squeeze_unitary(r: f64, layout: &SpaceLayout) -> Result<ComplexMatrix> {
    let ops = Ops::new(layout)?;
    let bd = ops.b.dagger();
    let gen = &(&ops.b * &ops.b) - &(&bd * &bd);
    matrix_exp(&gen.scale_real(0.5 * r))
}

/// Collapse operators √γ_K a, √(γ_s/2) σ_z and √Γ b (Γ_m in the squeezed
/// frame, γ_th in the lab frame). Zero rates are left out.
pub fn collapse_operators(frame: Frame, d: &Dissipation, layout: &SpaceLayout) -> Result<Vec<ComplexMatrix>> {
    d.validate()?;
    let ops = Ops::new(layout)?;
    let gamma_b = match frame {
        Frame::Lab => d.gamma_th,
        Frame::Squeezed => d.gamma_m,
    };
    Ok([(d.gamma_k, ops.a), (0.5 * d.gamma_s, ops.sz), (gamma_b, ops.b)]
        .into_iter()
        .filter(|(rate, _)| *rate > 0.0)
        .map(|(rate, op)| op.scale_real(rate.sqrt()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::operators::basis_state;

    fn params() -> ModelParams {
        ModelParams {
            lambda: 1.0,
            g0: 2.5,
            drive_amplitude: 3.0 * (0.6f64).tanh(),
            r: 0.3,
            delta_m: 3.0,
            delta_k: -0.7,
            delta_nv: 0.4,
        }
    }

    fn element(h: &ComplexMatrix, layout: &SpaceLayout, row: [usize; 3], col: [usize; 3]) -> C64 {
        h[(layout.index_of(&row).unwrap(), layout.index_of(&col).unwrap())]
    }

    #[test]
    fn lab_matrix_elements() {
        let layout = SpaceLayout::hybrid(4, 3).unwrap();
        let p = params();
        let h = build_hamiltonian_lab(&p, &layout).unwrap();
        // |e, m=1, k=2⟩ diagonal: 2δ_K + δ_m + δ_NV/2
        let diag = element(&h, &layout, [0, 1, 2], [0, 1, 2]);
        assert!((diag.re - (2.0 * p.delta_k + p.delta_m + 0.5 * p.delta_nv)).abs() < 1e-14);
        // ⟨g, 1, 1| λ b† a† σ⁻ |e, 0, 0⟩ = λ
        assert!((element(&h, &layout, [1, 1, 1], [0, 0, 0]).re - p.lambda).abs() < 1e-14);
        // ⟨g, 0, 1| g₀ a† σ⁻ |e, 0, 0⟩ = g₀
        assert!((element(&h, &layout, [1, 0, 1], [0, 0, 0]).re - p.g0).abs() < 1e-14);
        // ⟨e, 2, 0| -Ω_p/2 b†² |e, 0, 0⟩ = -Ω_p/√2
        let want = -p.drive_amplitude / std::f64::consts::SQRT_2;
        assert!((element(&h, &layout, [0, 2, 0], [0, 0, 0]).re - want).abs() < 1e-14);
        assert!(h.is_hermitian(1e-14));
    }

    #[test]
    fn squeezed_matrix_elements() {
        let layout = SpaceLayout::hybrid(4, 3).unwrap();
        let p = params();
        let h = build_hamiltonian_squeezed(&p, &layout).unwrap();
        assert!((element(&h, &layout, [1, 1, 1], [0, 0, 0]).re - p.lambda_eff()).abs() < 1e-14);
        assert_eq!(element(&h, &layout, [0, 2, 0], [0, 0, 0]), C64::new(0.0, 0.0));
        let diag = element(&h, &layout, [1, 3, 0], [1, 3, 0]).re;
        assert!((diag - (3.0 * p.squeezed_delta_m() - 0.5 * p.delta_nv)).abs() < 1e-13);
        assert!(h.is_hermitian(1e-14));
    }

    #[test]
    fn excitation_number_conserved_in_squeezed_frame_without_phonon_coupling() {
        let layout = SpaceLayout::hybrid(3, 3).unwrap();
        let ops = Ops::new(&layout).unwrap();
        let n_exc = &(&ops.a.dagger() * &ops.a) + &(&ops.sp * &ops.sm);
        let p = ModelParams { lambda: 0.0, ..params() };
        let h = build_hamiltonian_squeezed(&p, &layout).unwrap();
        assert!(h.commutator(&n_exc).unwrap().max_abs() < 1e-13);
        // the tripartite term changes phonon number but conserves magnon + spin excitations
        let h = build_hamiltonian_squeezed(&params(), &layout).unwrap();
        assert!(h.commutator(&n_exc).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn squeeze_transform_maps_lab_to_squeezed_frame() {
        let n_b = 36;
        let layout = SpaceLayout::hybrid(n_b, 2).unwrap();
        let p = params();
        let u = squeeze_unitary(p.r, &layout).unwrap();
        let mapped = &(&u * &build_hamiltonian_lab(&p, &layout).unwrap()) * &u.dagger();
        let mut sq = build_hamiltonian_squeezed(&p, &layout).unwrap();
        let e0 = 0.5 * (p.squeezed_delta_m() - p.delta_m);
        sq.add_scaled(C64::new(e0, 0.0), &ComplexMatrix::identity(layout.total_dim()));
        // compare on low phonon levels, away from the truncation edge
        let mut worst = 0.0f64;
        for i in 0..layout.total_dim() {
            for j in 0..layout.total_dim() {
                if layout.levels_of(i)[1] < 6 && layout.levels_of(j)[1] < 6 {
                    worst = worst.max((mapped[(i, j)] - sq[(i, j)]).norm());
                }
            }
        }
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn squeezed_vacuum_phonon_number() {
        let layout = SpaceLayout::hybrid(40, 2).unwrap();
        let r: f64 = 0.5;
        let u = squeeze_unitary(r, &layout).unwrap();
        let psi = u.dagger().mat_vec(&basis_state(&layout, &[1, 0, 0]).unwrap()).unwrap();
        let nb = embed(&crate::linalg::operators::number(40).unwrap(), 1, &layout).unwrap();
        let n: C64 = psi.iter().zip(nb.mat_vec(&psi).unwrap()).map(|(x, y)| x.conj() * y).sum();
        assert!((n.re - r.sinh().powi(2)).abs() < 1e-10);
    }

    #[test]
    fn squeezed_resonant_consistency() {
        let p = ModelParams::squeezed_resonant(1.2, 15.0, 30.0, 0.0, Resonance::Red);
        assert!((p.squeezed_delta_m() - 15.0).abs() < 1e-12);
        assert!((p.drive_amplitude / p.delta_m - 2.4f64.tanh()).abs() < 1e-15);
        assert_eq!(p.delta_k, -15.0);
        let b = ModelParams::squeezed_resonant(0.0, 15.0, 30.0, 1.0, Resonance::Blue);
        assert_eq!(b.delta_k, 16.0);
        assert_eq!(b.drive_amplitude, 0.0);
    }

    #[test]
    fn collapse_operators_skip_zero_rates() {
        let layout = SpaceLayout::hybrid(3, 2).unwrap();
        let d = Dissipation { gamma_k: 4.0, gamma_s: 0.0, gamma_m: 9.0, gamma_th: 0.0 };
        let sq = collapse_operators(Frame::Squeezed, &d, &layout).unwrap();
        assert_eq!(sq.len(), 2);
        let a = embed(&annihilation(2).unwrap(), 2, &layout).unwrap();
        assert!(sq[0].max_abs_diff(&a.scale_real(2.0)) < 1e-15);
        assert_eq!(collapse_operators(Frame::Lab, &d, &layout).unwrap().len(), 1);
        assert!(collapse_operators(Frame::Lab, &Dissipation::default(), &layout).unwrap().is_empty());
        assert!(collapse_operators(Frame::Lab, &Dissipation { gamma_k: -1.0, ..d }, &layout).is_err());
    }

    #[test]
    fn rejects_wrong_layout() {
        let layout = SpaceLayout::from_dims(&[3, 3, 3]).unwrap();
        assert!(build_hamiltonian_lab(&params(), &layout).is_err());
        let layout = SpaceLayout::from_dims(&[2, 3]).unwrap();
        assert!(build_hamiltonian_squeezed(&params(), &layout).is_err());
    }
}
