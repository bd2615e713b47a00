//! Landau-Zener problem definition.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::su2::{pauli, Axis, Matrix2};

/// Sweep rate `v` (energy/time), coupling `δ` (energy) and `ħ` (action).
///
/// The Hamiltonian is `H(t) = v t σ_z + δ σ_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LZParams<T> {
    pub v: T,
    pub delta: T,
    pub hbar: T,
}

impl<T: Real> Default for LZParams<T> {
    /// `v = π`, `δ = 1`, `ħ = 1`.
    fn default() -> Self {
        Self {
            v: T::PI(),
            delta: T::one(),
            hbar: T::one(),
        }
    }
}

impl<T: Real> LZParams<T> {
    pub fn new(v: T, delta: T, hbar: T) -> Result<Self> {
        let p = Self { v, delta, hbar };
        p.validate()?;
        Ok(p)
    }

    /// Checks `v > 0`, `δ ≥ 0`, `ħ > 0`, all finite.
    pub fn validate(&self) -> Result<()> {
        if !(self.v > T::zero() && self.v.is_finite()) {
            return Err(invalid("v", format!("sweep rate must be positive and finite (got {})", self.v)));
        }
        if !(self.delta >= T::zero() && self.delta.is_finite()) {
            return Err(invalid("delta", format!("coupling must be non-negative and finite (got {})", self.delta)));
        }
        if !(self.hbar > T::zero() && self.hbar.is_finite()) {
            return Err(invalid("hbar", format!("must be positive and finite (got {})", self.hbar)));
        }
        Ok(())
    }

    /// Weaker check used by the propagators: finite entries and `ħ > 0`.
    /// A zero sweep rate (constant Hamiltonian) is allowed there.
    pub(crate) fn check_dynamics(&self) -> Result<()> {
        if !(self.v.is_finite() && self.delta.is_finite()) {
            return Err(invalid("v", "parameters must be finite"));
        }
        if !(self.hbar > T::zero() && self.hbar.is_finite()) {
            return Err(invalid("hbar", format!("must be positive and finite (got {})", self.hbar)));
        }
        Ok(())
    }

    /// `[[vt, δ], [δ, −vt]]`.
    pub fn hamiltonian(&self, t: T) -> Matrix2<T> {
        pauli::<T>(Axis::Z).scale_real(self.v * t) + pauli::<T>(Axis::X).scale_real(self.delta)
    }

    /// `(E₋, E₊) = (−√(v²t² + δ²), +√(v²t² + δ²))`.
    pub fn instantaneous_energies(&self, t: T) -> (T, T) {
        let e = (self.v * t).hypot(self.delta);
        (-e, e)
    }

    /// Closed-form transition probability `exp(−πδ²/v)`.
    pub fn exact_transition_probability(&self) -> T {
        (-T::PI() * self.delta * self.delta / self.v).exp()
    }
}
