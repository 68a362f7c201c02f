//! Tensor-product layout of the composite Hilbert space.
//!
//! Subsystems are ordered (spin, phonon, magnon) and the composite index is
//! lexicographic with the first subsystem most significant, so for dims
//! `[2, Nb, Na]` the basis state `|s, m, k>` has index `(s * Nb + m) * Na + k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slots of the hybrid system in layout order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subsystem {
    Spin = 0,
    Phonon = 1,
    Magnon = 2,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::Spin, Subsystem::Phonon, Subsystem::Magnon];

    pub fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Subsystem::Spin => "spin",
            Subsystem::Phonon => "phonon",
            Subsystem::Magnon => "magnon",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceLayout {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl SpaceLayout {
    pub fn new(dims: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSubsystems("layout has no subsystems".into()));
        }
        if dims.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                context: "SpaceLayout labels",
                expected: dims.len(),
                found: labels.len(),
            });
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidCutoff(d));
        }
        Ok(Self { dims, labels })
    }

    /// Anonymous layout, labels `s0, s1, ...`.
    pub fn from_dims(dims: &[usize]) -> Result<Self> {
        Self::new(dims.to_vec(), (0..dims.len()).map(|i| format!("s{i}")).collect())
    }

    /// Spin ⊗ phonon ⊗ magnon with the given Fock cutoffs.
    pub fn hybrid(n_phonon: usize, n_magnon: usize) -> Result<Self> {
        Self::new(vec![2, n_phonon, n_magnon], Subsystem::ALL.iter().map(|s| s.name().to_string()).collect())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn dim_of(&self, slot: usize) -> usize {
        self.dims[slot]
    }

    /// Position stride of each slot in the composite index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for s in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.dims[s + 1];
        }
        strides
    }

    pub fn index_of(&self, levels: &[usize]) -> Result<usize> {
        if levels.len() != self.dims.len() {
            return Err(Error::DimensionMismatch {
                context: "index_of",
                expected: self.dims.len(),
                found: levels.len(),
            });
        }
        let mut idx = 0;
        for (&l, &d) in levels.iter().zip(&self.dims) {
            if l >= d {
                return Err(Error::InvalidSubsystems(format!("level {l} outside dimension {d}")));
            }
            idx = idx * d + l;
        }
        Ok(idx)
    }

    pub fn levels_of(&self, mut index: usize) -> Vec<usize> {
        let mut levels = vec![0; self.dims.len()];
        for s in (0..self.dims.len()).rev() {
            levels[s] = index % self.dims[s];
            index /= self.dims[s];
        }
        levels
    }

    /// Sorted, deduplicated slot list; rejects out-of-range slots and, when
    /// `allow_all` is false, selections covering every subsystem.
    pub fn validate_slots(&self, slots: &[usize], allow_all: bool) -> Result<Vec<usize>> {
        let mut v = slots.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::InvalidSubsystems("empty subsystem set".into()));
        }
        if let Some(&bad) = v.iter().find(|&&s| s >= self.dims.len()) {
            return Err(Error::InvalidSubsystems(format!(
                "slot {bad} out of range for {} subsystems",
                self.dims.len()
            )));
        }
        if v.len() != slots.len() {
            return Err(Error::InvalidSubsystems(format!("duplicate slots in {slots:?}")));
        }
        if !allow_all && v.len() == self.dims.len() {
            return Err(Error::InvalidSubsystems("selection covers every subsystem".into()));
        }
        Ok(v)
    }

    /// Layout of the kept slots, in layout order.
    pub fn sub_layout(&self, keep: &[usize]) -> Result<Self> {
        let keep = self.validate_slots(keep, true)?;
        Self::new(keep.iter().map(|&s| self.dims[s]).collect(), keep.iter().map(|&s| self.labels[s].clone()).collect())
    }

    pub fn n_phonon(&self) -> usize {
        self.dims[Subsystem::Phonon.slot()]
    }

    pub fn n_magnon(&self) -> usize {
        self.dims[Subsystem::Magnon.slot()]
    }

    /// Same layout with a different phonon cutoff.
    pub fn with_phonon_cutoff(&self, n_phonon: usize) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims[Subsystem::Phonon.slot()] = n_phonon;
        Self::new(dims, self.labels.clone())
    }
}
