//! First-order interaction-picture evolution over the semi-infinite tails
//! `(−∞, −T_max]` and `[T_max, ∞)`.
//!
//! With `H₀ = vtσ_z` and `V = δσ_x`, the evolution between `t₀` and `t` is
//! approximated by `Z(t) [𝕀 − (i/ħ)∫V′_I] Z⁻¹(t₀)` where
//! `Z(t) = e^{−(i/ħ)½vt²σ_z}` and `V′_I(t′)` has off-diagonals
//! `δe^{±ivt′²/ħ}`. Because `V′_I` is even in `t′`, the same integral matrix
//! serves both tails. The phases `Z⁻¹(−∞)` and `Z(+∞)` are dropped, and the
//! state is renormalized after each tail since the truncated operator is not
//! unitary.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::model::LZParams;
use crate::scalar::Real;
use crate::special::{eta, xi};
use crate::su2::{pauli, Axis, Matrix2, State2, Unitary2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailSide {
    /// `U(−T_max, −∞)` with `Z⁻¹(−∞)` dropped.
    Left,
    /// `U(+∞, T_max)` with `Z(+∞)` dropped.
    Right,
}

/// Approximate (non-unitary) tail evolution operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailOperator<T> {
    pub matrix: Matrix2<T>,
    pub side: TailSide,
}

fn check_t_max<T: Real>(t_max: T) -> Result<()> {
    if !(t_max >= T::zero() && t_max.is_finite()) {
        return Err(invalid("t_max", format!("must be finite and non-negative (got {t_max})")));
    }
    Ok(())
}

/// `𝕀 − (i/ħ)∫_{−∞}^{−T_max} V′_I(t′)dt′ = [[1, −(iδ/ħ)ξ], [−(iδ/ħ)η, 1]]`.
pub fn tail_integral_matrix<T: Real>(t_max: T, p: &LZParams<T>) -> Result<Matrix2<T>> {
    check_t_max(t_max)?;
    p.validate()?;
    let k = Complex::new(T::zero(), -p.delta / p.hbar);
    let one = Complex::new(T::one(), T::zero());
    Ok(Matrix2::new(
        one,
        k * xi(t_max, p.v, p.hbar)?,
        k * eta(t_max, p.v, p.hbar)?,
        one,
    ))
}

/// `Z(t) = e^{−(i/ħ)½vt²σ_z} = diag(e^{−ivt²/2ħ}, e^{ivt²/2ħ})`.
pub fn z_operator<T: Real>(t: T, p: &LZParams<T>) -> Unitary2<T> {
    let phase = p.v * t * t / (T::lit(2.0) * p.hbar);
    Unitary2::new_unchecked(Matrix2::diag(
        Complex::from_polar(T::one(), -phase),
        Complex::from_polar(T::one(), phase),
    ))
}

pub fn tail_operator<T: Real>(side: TailSide, t_max: T, p: &LZParams<T>) -> Result<TailOperator<T>> {
    let m = tail_integral_matrix(t_max, p)?;
    let matrix = match side {
        TailSide::Left => *z_operator(-t_max, p).matrix() * m,
        TailSide::Right => m * *z_operator(t_max, p).inverse().matrix(),
    };
    Ok(TailOperator { matrix, side })
}

/// `normalize(Z(−T_max) · M · |ψ₊⟩)`.
pub fn initial_state_perturbed<T: Real>(t_max: T, p: &LZParams<T>) -> Result<State2<T>> {
    let op = tail_operator(TailSide::Left, t_max, p)?;
    op.matrix.apply(&State2::plus_basis()).normalized()
}

/// `normalize(M · Z⁻¹(T_max) · ψ)`, the state at `t = +∞` up to a phase.
pub fn final_state_perturbed<T: Real>(psi: &State2<T>, t_max: T, p: &LZParams<T>) -> Result<State2<T>> {
    let op = tail_operator(TailSide::Right, t_max, p)?;
    op.matrix.apply(psi).normalized()
}

/// `(P₊(∞), P₋(∞))` from the state at `T_max`.
pub fn final_probability_perturbed<T: Real>(psi: &State2<T>, t_max: T, p: &LZParams<T>) -> Result<(T, T)> {
    Ok(final_state_perturbed(psi, t_max, p)?.probabilities())
}

/// `V′_I(t′) = δ [[0, e^{ivt′²/ħ}], [e^{−ivt′²/ħ}, 0]]`.
pub fn rotated_perturbation<T: Real>(t: T, p: &LZParams<T>) -> Matrix2<T> {
    let phase = p.v * t * t / p.hbar;
    let zero = Complex::new(T::zero(), T::zero());
    Matrix2::new(
        zero,
        Complex::from_polar(p.delta, phase),
        Complex::from_polar(p.delta, -phase),
        zero,
    )
}

/// `V_I(t) = δ(σ_x cos φ − σ_y sin φ)`, `φ = v(t² − t₀²)/ħ`.
pub fn interaction_perturbation<T: Real>(t: T, t0: T, p: &LZParams<T>) -> Matrix2<T> {
    let phase = p.v * (t * t - t0 * t0) / p.hbar;
    (pauli::<T>(Axis::X).scale_real(phase.cos()) - pauli::<T>(Axis::Y).scale_real(phase.sin()))
        .scale_real(p.delta)
}
