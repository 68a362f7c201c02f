//! Physical inputs and the couplings, drive and decay rates derived from them.
//!
//! Everything here is SI with angular frequencies in rad/s.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::constants::Constants;
use super::hamiltonian::{Dissipation, ModelParams, Resonance};
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Charge carried by the trapped particle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Charge {
    /// Charge-to-mass ratio (C/kg).
    PerMass(f64),
    /// Absolute charge (C).
    Absolute(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// YIG sphere radius R (m).
    pub yig_radius: f64,
    /// Diamond particle radius R_s (m).
    pub diamond_radius: f64,
    /// Surface spacing d (m).
    pub spacing: f64,
    pub rho_diamond: f64,
    pub rho_yig: f64,
    /// Saturation magnetization (A/m).
    pub saturation_magnetization: f64,
    /// |γ| (rad/s/T).
    pub gyromagnetic_ratio: f64,
    pub lande_g: f64,
    /// Mechanical frequency ω_m (rad/s).
    pub omega_m: f64,
    /// Drive reference ω_p (rad/s).
    pub omega_p: f64,
    /// Trap voltage amplitude U_T (V). Mutually exclusive with `r_requested`.
    pub trap_voltage: Option<f64>,
    /// Characteristic trap dimension d_T (m).
    pub trap_dimension: f64,
    pub charge: Charge,
    pub quality_factor: f64,
    /// Temperature (K).
    pub temperature: f64,
    /// Kittel-mode decay γ_K (rad/s).
    pub gamma_k: f64,
    /// NV dephasing γ_s (rad/s).
    pub gamma_s: f64,
    pub delta_nv: f64,
    /// Magnon detuning δ_K; replaced by the resonance condition when
    /// `resonance` is set.
    pub delta_k: f64,
    /// Mechanical detuning δ_m (rad/s).
    pub delta_m: f64,
    pub r_requested: Option<f64>,
    /// Effective mass override (kg) for non-trapped-diamond platforms.
    pub mass_override: Option<f64>,
    pub resonance: Option<Resonance>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Platform {
    /// Diamond nanoparticle in a Paul trap next to a YIG sphere.
    TrappedDiamond,
    /// NV center embedded in a diamond cantilever.
    Cantilever,
    /// YIG microsphere levitated in a magnetic trap.
    LevitatedYig,
}

impl Platform {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "trapped_diamond" => Some(Self::TrappedDiamond),
            "cantilever" => Some(Self::Cantilever),
            "levitated_yig" => Some(Self::LevitatedYig),
            _ => None,
        }
    }
}

impl PhysicalParams {
    /// Experimental point: R_s = 10 nm, R = 50 nm, d = 5 nm, ω_m/2π = 1 kHz,
    /// Q = 1e8, T = 10 mK, γ_K/2π = 1 MHz, γ_s/2π = 1 kHz, r = 4.5, red
    /// detuned, Ω_p/2π ≈ δ_m/2π = 200 MHz.
    pub fn trapped_diamond(c: &Constants) -> Self {
        Self {
            yig_radius: 50e-9,
            diamond_radius: 10e-9,
            spacing: 5e-9,
            rho_diamond: c.rho_diamond,
            rho_yig: c.rho_yig,
            saturation_magnetization: c.m_s_yig,
            gyromagnetic_ratio: c.gyromagnetic_ratio,
            lande_g: c.g_e,
            omega_m: TWO_PI * 1e3,
            omega_p: TWO_PI * 200e6,
            trap_voltage: None,
            trap_dimension: 100e-6,
            charge: Charge::PerMass(1e-3),
            quality_factor: 1e8,
            temperature: 10e-3,
            gamma_k: TWO_PI * 1e6,
            gamma_s: TWO_PI * 1e3,
            delta_nv: 0.0,
            delta_k: 0.0,
            delta_m: TWO_PI * 200e6,
            r_requested: Some(4.5),
            mass_override: None,
            resonance: Some(Resonance::Red),
        }
    }

    /// Diamond cantilever: effective mass of a 10 µm × 1 µm × 0.1 µm beam and
    /// ω_m/2π = 1 MHz; all other inputs as the trapped-diamond preset.
    pub fn cantilever(c: &Constants) -> Self {
        Self {
            mass_override: Some(10e-6 * 1e-6 * 0.1e-6 * c.rho_diamond),
            omega_m: TWO_PI * 1e6,
            ..Self::trapped_diamond(c)
        }
    }

    /// Levitated YIG sphere: the moving mass is the magnet itself.
    pub fn levitated_yig(c: &Constants) -> Self {
        let base = Self::trapped_diamond(c);
        Self {
            mass_override: Some(4.0 / 3.0 * PI * base.yig_radius.powi(3) * c.rho_yig),
            omega_m: TWO_PI * 1e3,
            ..base
        }
    }

    pub fn preset(platform: Platform, c: &Constants) -> Self {
        match platform {
            Platform::TrappedDiamond => Self::trapped_diamond(c),
            Platform::Cantilever => Self::cantilever(c),
            Platform::LevitatedYig => Self::levitated_yig(c),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("yig_radius", self.yig_radius),
            ("diamond_radius", self.diamond_radius),
            ("spacing", self.spacing),
            ("rho_diamond", self.rho_diamond),
            ("rho_yig", self.rho_yig),
            ("saturation_magnetization", self.saturation_magnetization),
            ("gyromagnetic_ratio", self.gyromagnetic_ratio),
            ("lande_g", self.lande_g),
            ("omega_m", self.omega_m),
            ("omega_p", self.omega_p),
            ("trap_dimension", self.trap_dimension),
            ("quality_factor", self.quality_factor),
            ("temperature", self.temperature),
            ("gamma_k", self.gamma_k),
            ("gamma_s", self.gamma_s),
            ("delta_m", self.delta_m),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        for (name, v) in [("delta_nv", self.delta_nv), ("delta_k", self.delta_k)] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite".into()));
            }
        }
        match (self.trap_voltage, self.r_requested) {
            (Some(_), Some(_)) => {
                return Err(invalid("r_requested", "set either trap_voltage or r_requested, not both".into()))
            }
            (None, None) => {
                return Err(invalid("r_requested", "one of trap_voltage or r_requested is required".into()))
            }
            (Some(u), None) if !(u.is_finite() && u >= 0.0) => {
                return Err(invalid("trap_voltage", format!("must be nonnegative, got {u}")))
            }
            (None, Some(r)) if !(0.0..=6.0).contains(&r) => {
                return Err(invalid("r_requested", format!("must lie in [0, 6], got {r}")))
            }
            _ => {}
        }
        let q = match self.charge {
            Charge::PerMass(x) | Charge::Absolute(x) => x,
        };
        if !(q.is_finite() && q > 0.0) {
            return Err(invalid("charge", format!("must be positive, got {q}")));
        }
        if let Some(m) = self.mass_override {
            if !(m.is_finite() && m > 0.0) {
                return Err(invalid("mass_override", format!("must be positive, got {m}")));
            }
        }
        Ok(())
    }

    /// Spin-to-magnet-center distance r₀ = d + R + R_s.
    pub fn r0(&self) -> f64 {
        self.spacing + self.yig_radius + self.diamond_radius
    }

    /// Names accepted by [`PhysicalParams::set`].
    pub const NAMES: [&'static str; 23] = [
        "yig_radius",
        "diamond_radius",
        "spacing",
        "rho_diamond",
        "rho_yig",
        "saturation_magnetization",
        "gyromagnetic_ratio",
        "lande_g",
        "omega_m",
        "omega_p",
        "trap_voltage",
        "trap_dimension",
        "charge_per_mass",
        "charge",
        "quality_factor",
        "temperature",
        "gamma_k",
        "gamma_s",
        "delta_nv",
        "delta_k",
        "delta_m",
        "r",
        "mass_override",
    ];

    /// Sets one numeric input by name. `trap_voltage` and `r` replace each
    /// other; setting `delta_k` disables the resonance condition.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "yig_radius" => self.yig_radius = value,
            "diamond_radius" => self.diamond_radius = value,
            "spacing" => self.spacing = value,
            "rho_diamond" => self.rho_diamond = value,
            "rho_yig" => self.rho_yig = value,
            "saturation_magnetization" => self.saturation_magnetization = value,
            "gyromagnetic_ratio" => self.gyromagnetic_ratio = value,
            "lande_g" => self.lande_g = value,
            "omega_m" => self.omega_m = value,
            "omega_p" => self.omega_p = value,
            "trap_voltage" => {
                self.trap_voltage = Some(value);
                self.r_requested = None;
            }
            "trap_dimension" => self.trap_dimension = value,
            "charge_per_mass" => self.charge = Charge::PerMass(value),
            "charge" => self.charge = Charge::Absolute(value),
            "quality_factor" => self.quality_factor = value,
            "temperature" => self.temperature = value,
            "gamma_k" => self.gamma_k = value,
            "gamma_s" => self.gamma_s = value,
            "delta_nv" => self.delta_nv = value,
            "delta_k" => {
                self.delta_k = value;
                self.resonance = None;
            }
            "delta_m" => self.delta_m = value,
            "r" => {
                self.r_requested = Some(value);
                self.trap_voltage = None;
            }
            "mass_override" => self.mass_override = Some(value),
            _ => return Err(invalid(name, format!("unknown parameter; expected one of {}", Self::NAMES.join(", ")))),
        }
        Ok(())
    }
}

fn invalid(name: &str, reason: String) -> Error {
    Error::InvalidParameter { name: name.to_string(), reason }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Effective mass M (kg).
    pub mass: f64,
    /// YIG volume V (m³).
    pub yig_volume: f64,
    pub r0: f64,
    /// Zero-point fluctuation (m).
    pub z_zpf: f64,
    /// Tripartite coupling λ (rad/s).
    pub lambda: f64,
    /// Spin–magnon coupling g₀ (rad/s).
    pub g0: f64,
    /// Parametric drive amplitude Ω_p (rad/s).
    pub drive_amplitude: f64,
    /// Squeezing parameter r.
    pub r: f64,
    /// Squeezed-frame mechanical detuning Δ_m (rad/s).
    pub squeezed_delta_m: f64,
    pub lambda_eff: f64,
    /// Thermal mechanical decay γ_th (rad/s).
    pub gamma_th: f64,
    /// Effective mechanical decay Γ_m (rad/s).
    pub gamma_m: f64,
    /// Tripartite cooperativity C.
    pub cooperativity: f64,
    pub gamma_k: f64,
    pub gamma_s: f64,
    pub delta_nv: f64,
    pub delta_k: f64,
    pub delta_m: f64,
}

/// Computes every derived quantity from `p`, using `c` for the fundamental
/// constants (ħ, k_B, μ₀, μ_B).
pub fn derive_params(p: &PhysicalParams, c: &Constants) -> Result<DerivedParams> {
    p.validate()?;
    let mass = p.mass_override.unwrap_or(4.0 / 3.0 * PI * p.diamond_radius.powi(3) * p.rho_diamond);
    let yig_volume = 4.0 / 3.0 * PI * p.yig_radius.powi(3);
    let r0 = p.r0();
    let z_zpf = (c.hbar / (2.0 * mass * p.omega_m)).sqrt();
    let lambda = 3.0 * p.lande_g * c.mu0 * c.mu_b / (8.0 * PI * r0.powi(4))
        * (p.gyromagnetic_ratio * p.saturation_magnetization * yig_volume / (mass * p.omega_m)).sqrt();
    let g0 = r0 * lambda / (3.0 * z_zpf);

    let (drive_amplitude, r) = match (p.trap_voltage, p.r_requested) {
        (Some(u_t), None) => {
            let q = match p.charge {
                Charge::PerMass(q_over_m) => q_over_m * mass,
                Charge::Absolute(q) => q,
            };
            let omega = 2.0 * q * u_t * z_zpf * z_zpf / (c.hbar * p.trap_dimension * p.trap_dimension);
            if omega >= p.delta_m {
                return Err(Error::NoSqueezingSolution { omega_p: omega, delta_m: p.delta_m });
            }
            (omega, 0.5 * (omega / p.delta_m).atanh())
        }
        (None, Some(r)) => (p.delta_m * (2.0 * r).tanh(), r),
        _ => unreachable!("validated above"),
    };

    let squeezed_delta_m = p.delta_m / (2.0 * r).cosh();
    let lambda_eff = lambda * r.exp();
    let gamma_th = c.k_b * p.temperature / (c.hbar * p.quality_factor);
    let gamma_m = (2.0 * r).exp() * gamma_th;
    let cooperativity = lambda_eff.powi(3) / (gamma_m * p.gamma_k * p.gamma_s);
    let delta_k = match p.resonance {
        Some(res) => res.magnon_detuning(p.delta_nv, squeezed_delta_m),
        None => p.delta_k,
    };

    Ok(DerivedParams {
        mass,
        yig_volume,
        r0,
        z_zpf,
        lambda,
        g0,
        drive_amplitude,
        r,
        squeezed_delta_m,
        lambda_eff,
        gamma_th,
        gamma_m,
        cooperativity,
        gamma_k: p.gamma_k,
        gamma_s: p.gamma_s,
        delta_nv: p.delta_nv,
        delta_k,
        delta_m: p.delta_m,
    })
}

impl DerivedParams {
    /// λ_eff / g₀
    pub fn enhancement_over_g0(&self) -> f64 {
        self.lambda_eff / self.g0
    }

    /// Hamiltonian parameters in SI units.
    pub fn model_params(&self) -> ModelParams {
        ModelParams {
            lambda: self.lambda,
            g0: self.g0,
            drive_amplitude: self.drive_amplitude,
            r: self.r,
            delta_m: self.delta_m,
            delta_k: self.delta_k,
            delta_nv: self.delta_nv,
        }
    }

    pub fn dissipation(&self) -> Dissipation {
        Dissipation { gamma_k: self.gamma_k, gamma_s: self.gamma_s, gamma_m: self.gamma_m, gamma_th: self.gamma_th }
    }

    /// Hamiltonian and decay parameters divided by λ, so time is measured in
    /// units of 1/λ.
    pub fn normalized(&self) -> (ModelParams, Dissipation) {
        let s = 1.0 / self.lambda;
        (self.model_params().scaled(s), self.dissipation().scaled(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn experimental() -> (PhysicalParams, Constants) {
        let c = Constants::default();
        (PhysicalParams::trapped_diamond(&c), c)
    }

    #[test]
    fn zero_squeezing_is_identity_map() {
        let (mut p, c) = experimental();
        p.r_requested = Some(0.0);
        let d = derive_params(&p, &c).unwrap();
        assert_eq!(d.lambda_eff, d.lambda);
        assert_eq!(d.gamma_m, d.gamma_th);
        assert_eq!(d.squeezed_delta_m, d.delta_m);
        assert_eq!(d.drive_amplitude, 0.0);
    }

    #[test]
    fn derived_invariants_hold() {
        let (p, c) = experimental();
        let d = derive_params(&p, &c).unwrap();
        assert_eq!(d.lambda_eff, d.lambda * d.r.exp());
        assert_eq!(d.gamma_m, (2.0 * d.r).exp() * d.gamma_th);
        assert_eq!(d.cooperativity, d.lambda_eff.powi(3) / (d.gamma_m * d.gamma_k * d.gamma_s));
        assert_eq!(d.squeezed_delta_m, d.delta_m / (2.0 * d.r).cosh());
        // red detuning
        assert_eq!(d.delta_k, d.delta_nv - d.squeezed_delta_m);
        let ratio = 3.0 * d.r.exp() * d.z_zpf / (p.spacing + p.yig_radius + p.diamond_radius);
        assert!((d.enhancement_over_g0() - ratio).abs() <= 1e-14 * ratio);
    }

    #[test]
    fn trap_voltage_route_inverts_tanh() {
        let (mut p, c) = experimental();
        p.r_requested = None;
        p.trap_voltage = Some(12.6);
        p.charge = Charge::Absolute(5e-17);
        let d = derive_params(&p, &c).unwrap();
        assert!(((2.0 * d.r).tanh() - d.drive_amplitude / p.delta_m).abs() < 1e-12);
        assert!(d.r > 0.0);
    }

    #[test]
    fn drive_above_detuning_has_no_solution() {
        let (mut p, c) = experimental();
        p.r_requested = None;
        p.trap_voltage = Some(12.6);
        p.charge = Charge::Absolute(1e-12);
        p.delta_m = 1.0;
        assert!(matches!(derive_params(&p, &c), Err(Error::NoSqueezingSolution { .. })));
    }

    #[test]
    fn rejects_invalid_inputs() {
        let (p, c) = experimental();
        for bad in [
            PhysicalParams { yig_radius: 0.0, ..p.clone() },
            PhysicalParams { temperature: -1.0, ..p.clone() },
            PhysicalParams { quality_factor: f64::NAN, ..p.clone() },
            PhysicalParams { r_requested: Some(7.0), ..p.clone() },
            PhysicalParams { trap_voltage: Some(1.0), ..p.clone() },
            PhysicalParams { r_requested: None, ..p.clone() },
            PhysicalParams { mass_override: Some(0.0), ..p.clone() },
        ] {
            assert!(matches!(derive_params(&bad, &c), Err(Error::InvalidParameter { .. })), "{bad:?}");
        }
    }

    #[test]
    fn platform_presets_change_mass_and_frequency_only() {
        let c = Constants::default();
        let base = PhysicalParams::trapped_diamond(&c);
        for platform in [Platform::Cantilever, Platform::LevitatedYig] {
            let p = PhysicalParams::preset(platform, &c);
            let reset = PhysicalParams { mass_override: None, omega_m: base.omega_m, ..p.clone() };
            assert_eq!(reset, base);
            assert!(derive_params(&p, &c).is_ok());
        }
        assert_eq!(Platform::parse("cantilever"), Some(Platform::Cantilever));
        assert_eq!(Platform::parse("nope"), None);
    }

    #[test]
    fn setters_cover_every_name() {
        let (p, c) = experimental();
        for name in PhysicalParams::NAMES {
            let mut q = p.clone();
            q.set(name, 0.123).unwrap();
            assert_ne!(q, p, "{name}");
        }
        let mut q = p.clone();
        q.set("trap_voltage", 1.0).unwrap();
        assert_eq!(q.r_requested, None);
        q.set("r", 2.0).unwrap();
        assert_eq!((q.trap_voltage, q.r_requested), (None, Some(2.0)));
        q.set("delta_k", 5.0).unwrap();
        assert_eq!(derive_params(&q, &c).unwrap().delta_k, 5.0);
        assert!(q.set("bogus", 1.0).is_err());
    }
}
