//! Run configuration: a flat TOML file with one section per pipeline.
//!
//! ```toml
//! workers = 4
//! seed = 7
//! constants_file = "constants.txt"
//!
//! [params]
//! platform = "trapped_diamond"
//! yig_radius = 50e-9
//! r = 4.5
//!
//! [fig3]
//! points = 400
//!
//! [[sweep.axis]]
//! name = "yig_radius"
//! min = 20e-9
//! max = 200e-9
//! count = 10
//! scale = "log"
//! ```
//!
//! Physical inputs are SI with angular frequencies in rad/s. The `fig3` and
//! `fig4` sections are in units of λ.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::grid::GridAxis;
use crate::dynamics::{CutoffPolicy, Tolerances};
use crate::error::{Error, Result};
use crate::model::{Constants, PhysicalParams, Platform, Resonance};

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub workers: Option<usize>,
    pub seed: Option<u64>,
    /// Constants override file, relative to the config file.
    pub constants_file: Option<PathBuf>,
    #[serde(default)]
    pub params: BTreeMap<String, toml::Value>,
    #[serde(default)]
    pub fig2: Fig2Config,
    #[serde(default)]
    pub fig3: Fig3Config,
    #[serde(default)]
    pub fig4: Fig4Config,
    #[serde(default)]
    pub sweep: SweepConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Fig2Config {
    /// Squeezing values for panel (a) and the maps.
    pub r_min: f64,
    pub r_max: f64,
    pub r_count: usize,
    /// YIG radius range (m), log spaced.
    pub radius_min: f64,
    pub radius_max: f64,
    pub radius_count: usize,
    /// Radii for panel (b) (m).
    pub panel_b_radii: Vec<f64>,
    /// Squeezing values for panel (c).
    pub panel_c_r: Vec<f64>,
    /// λ_eff contour level (Hz, divided by 2π).
    pub lambda_eff_level_hz: f64,
    pub cooperativity_level: f64,
}

impl Default for Fig2Config {
    fn default() -> Self {
        Self {
            r_min: 0.0,
            r_max: 5.0,
            r_count: 51,
            radius_min: 20e-9,
            radius_max: 200e-9,
            radius_count: 61,
            panel_b_radii: vec![50e-9, 100e-9, 200e-9],
            panel_c_r: vec![2.0, 3.0, 4.0],
            lambda_eff_level_hz: 1e6,
            cooperativity_level: 1.0,
        }
    }
}

/// Dissipative dynamics, all rates in units of λ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Fig3Config {
    pub t_end: f64,
    pub points: usize,
    /// Δ_m = detuning_scale · e^r
    pub detuning_scale: f64,
    pub g0: f64,
    pub gamma_s: f64,
    pub gamma_m: f64,
    pub delta_nv: f64,
    pub resonance: Resonance,
    pub n_phonon: usize,
    pub n_magnon: usize,
    pub max_refinements: usize,
    pub convergence_tolerance: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for Fig3Config {
    fn default() -> Self {
        let cut = CutoffPolicy::default();
        let tol = Tolerances::default();
        Self {
            t_end: 20.0,
            points: 400,
            detuning_scale: 15.0,
            g0: 30.0,
            gamma_s: 0.05,
            gamma_m: 1.1,
            delta_nv: 0.0,
            resonance: Resonance::Red,
            n_phonon: cut.n_phonon,
            n_magnon: cut.n_magnon,
            max_refinements: cut.max_refinements,
            convergence_tolerance: cut.tolerance,
            rel_tol: tol.rel,
            abs_tol: tol.abs,
        }
    }
}

impl Fig3Config {
    pub fn policy(&self) -> CutoffPolicy {
        CutoffPolicy {
            n_phonon: self.n_phonon,
            n_magnon: self.n_magnon,
            growth: 2,
            max_refinements: self.max_refinements,
            tolerance: self.convergence_tolerance,
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances { rel: self.rel_tol, abs: self.abs_tol }
    }
}

/// Decay-free entanglement dynamics in units of λ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Fig4Config {
    pub t_end: f64,
    pub points: usize,
    pub detuning_scale: f64,
    pub g0: f64,
    pub delta_nv: f64,
    pub resonance: Resonance,
    pub r_values: Vec<f64>,
    /// Squeezing of panel (b).
    pub r_tangle: f64,
    pub n_phonon: usize,
    pub n_magnon: usize,
    pub max_refinements: usize,
    pub convergence_tolerance: f64,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Self {
            t_end: 2.0,
            points: 4000,
            detuning_scale: 40.0,
            g0: 30.0,
            delta_nv: 0.0,
            resonance: Resonance::Red,
            r_values: vec![0.0, 1.5, 3.0, 4.5],
            r_tangle: 4.5,
            n_phonon: 4,
            n_magnon: 3,
            max_refinements: 4,
            convergence_tolerance: 1e-3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub axis: Vec<GridAxis>,
}

fn invalid(reason: String) -> Error {
    Error::Config(reason)
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config and resolves `constants_file` against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let (Some(c), Some(dir)) = (&cfg.constants_file, path.parent()) {
            if c.is_relative() {
                cfg.constants_file = Some(dir.join(c));
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == Some(0) {
            return Err(invalid("workers must be at least 1".into()));
        }
        let f2 = &self.fig2;
        if f2.r_count < 2 || f2.radius_count < 2 {
            return Err(invalid("fig2 grid counts must be at least 2".into()));
        }
        if !(f2.r_min >= 0.0 && f2.r_max > f2.r_min && f2.radius_min > 0.0 && f2.radius_max > f2.radius_min) {
            return Err(invalid("fig2 ranges must be increasing with r ≥ 0 and radius > 0".into()));
        }
        let f3 = &self.fig3;
        if f3.points < 1 || !(f3.t_end.is_finite() && f3.t_end > 0.0) || f3.n_phonon < 2 || f3.n_magnon < 2 {
            return Err(invalid("fig3 needs points ≥ 1, t_end > 0 and cutoffs ≥ 2".into()));
        }
        let f4 = &self.fig4;
        if f4.points < 1
            || !(f4.t_end.is_finite() && f4.t_end > 0.0)
            || f4.n_phonon < 2
            || f4.n_magnon < 2
            || f4.r_values.is_empty()
        {
            return Err(invalid("fig4 needs points ≥ 1, t_end > 0, cutoffs ≥ 2 and some r_values".into()));
        }
        for axis in &self.sweep.axis {
            axis.validate()?;
            if !PhysicalParams::NAMES.contains(&axis.name.as_str()) {
                return Err(invalid(format!("sweep axis `{}` is not a parameter name", axis.name)));
            }
        }
        Ok(())
    }

    pub fn constants(&self) -> Result<Constants> {
        match &self.constants_file {
            Some(p) => Constants::from_override_file(p).map_err(|e| match e {
                Error::Io(msg) => invalid(format!("{}: {msg}", p.display())),
                other => other,
            }),
            None => Ok(Constants::default()),
        }
    }

    /// Platform preset with the `[params]` overrides applied in key order,
    /// `platform` first.
    pub fn physical_params(&self, c: &Constants) -> Result<PhysicalParams> {
        let platform = match self.params.get("platform") {
            None => Platform::TrappedDiamond,
            Some(toml::Value::String(s)) => {
                Platform::parse(s).ok_or_else(|| invalid(format!("unknown platform `{s}`")))?
            }
            Some(v) => return Err(invalid(format!("platform must be a string, got {v}"))),
        };
        let mut p = PhysicalParams::preset(platform, c);
        for (key, value) in &self.params {
            match key.as_str() {
                "platform" => {}
                "resonance" => {
                    p.resonance = match value.as_str() {
                        Some("none") => None,
                        Some(s) => {
                            Some(Resonance::parse(s).ok_or_else(|| invalid(format!("unknown resonance `{s}`")))?)
                        }
                        None => return Err(invalid("resonance must be a string".into())),
                    }
                }
                name => {
                    let x = value
                        .as_float()
                        .or_else(|| value.as_integer().map(|i| i as f64))
                        .ok_or_else(|| invalid(format!("params.{name} must be a number")))?;
                    p.set(name, x).map_err(|e| invalid(e.to_string()))?;
                }
            }
        }
        p.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(p)
    }
}
