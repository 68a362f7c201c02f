//! Physical and material constants, with an optional flat `key = value`
//! override file.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Boltzmann constant (J/K).
    pub k_b: f64,
    /// Vacuum permeability (T m/A).
    pub mu0: f64,
    /// Bohr magneton (J/T).
    pub mu_b: f64,
    /// NV Landé factor.
    pub g_e: f64,
    /// |γ| (rad/s/T).
    pub gyromagnetic_ratio: f64,
    /// YIG saturation magnetization (A/m).
    pub m_s_yig: f64,
    /// kg/m³
    pub rho_diamond: f64,
    /// kg/m³
    pub rho_yig: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            hbar: 1.054_571_817e-34,
            k_b: 1.380_649e-23,
            mu0: 4.0e-7 * std::f64::consts::PI,
            mu_b: 9.274e-24,
            g_e: 2.0028,
            gyromagnetic_ratio: 2.0 * std::f64::consts::PI * 28.0e9,
            m_s_yig: 1.96e5,
            rho_diamond: 3500.0,
            rho_yig: 5170.0,
        }
    }
}

impl Constants {
    const KEYS: [&'static str; 9] =
        ["hbar", "k_b", "mu0", "mu_b", "g_e", "gyromagnetic_ratio", "m_s_yig", "rho_diamond", "rho_yig"];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "hbar" => &mut self.hbar,
            "k_b" => &mut self.k_b,
            "mu0" => &mut self.mu0,
            "mu_b" => &mut self.mu_b,
            "g_e" => &mut self.g_e,
            "gyromagnetic_ratio" => &mut self.gyromagnetic_ratio,
            "m_s_yig" => &mut self.m_s_yig,
            "rho_diamond" => &mut self.rho_diamond,
            "rho_yig" => &mut self.rho_yig,
            _ => return None,
        })
    }

    fn values(&self) -> [f64; 9] {
        [
            self.hbar,
            self.k_b,
            self.mu0,
            self.mu_b,
            self.g_e,
            self.gyromagnetic_ratio,
            self.m_s_yig,
            self.rho_diamond,
            self.rho_yig,
        ]
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and `#`
    /// comments are ignored; unknown keys and non-positive values are errors.
    pub fn apply_overrides(mut self, text: &str) -> Result<Self> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("constants line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("constants line {}: bad number `{}`", lineno + 1, value.trim())))?;
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config(format!("constant `{key}` must be positive and finite")));
            }
            *self.slot(key).ok_or_else(|| Error::Config(format!("unknown constant `{key}`")))? = value;
        }
        Ok(self)
    }

    pub fn from_override_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::default().apply_overrides(&text)
    }

    /// Canonical `key=value` listing; parsing it back yields identical bits.
    pub fn canonical_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in Self::KEYS.iter().zip(self.values()) {
            let _ = writeln!(s, "{k}={v:e}");
        }
        s
    }

    /// SHA-256 of [`Constants::canonical_text`], hex encoded.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}
