//! Numerical study of the Landau-Zener two-level problem `H = vtσ_z + δσ_x`.
//!
//! Finite-window Trotter propagation built on the SU(2) Euler identity,
//! first-order perturbative tails that remove the finite-window oscillation,
//! and compression of long Trotter products into a single rotation.

pub mod compression;
pub mod error;
pub mod experiments;
pub mod model;
pub mod propagation;
pub mod scalar;
pub mod special;
pub mod su2;
pub mod tails;

pub use compression::{
    compress_nn, compress_nn_chunked, compress_xzx, xzx_to_zxz, SplitAngle, SplitSequence, VersorSequence, ZxzAngles,
};
pub use error::{Error, Result};
pub use experiments::{
    oscillation_analysis, phase_comparison, run_pipeline, sweep_dt, sweep_tmax, Engine, Method, PipelineSpec,
    RunMetadata, SweepOptions, SweepResult,
};
pub use model::LZParams;
pub use propagation::{
    evolve, propagate, propagate_operator, Diagnostic, Evaluation, FactorForm, PropagationMode, Scheme,
    TimeGrid,
};
pub use scalar::Real;
pub use special::{erf_complex, eta, xi, ErfResult};
pub use su2::{euler_exp, pauli, Axis, Matrix2, RotationVector, State2, Unitary2, Versor};
pub use tails::{final_probability_perturbed, initial_state_perturbed, tail_integral_matrix};

pub type Matrix2f64 = Matrix2<f64>;
pub type Matrix2f32 = Matrix2<f32>;
pub type Unitary2f64 = Unitary2<f64>;
pub type Unitary2f32 = Unitary2<f32>;
pub type State2f64 = State2<f64>;
pub type State2f32 = State2<f32>;
pub type Versor64 = Versor<f64>;
pub type Versor32 = Versor<f32>;
pub type RotationVector64 = RotationVector<f64>;
pub type RotationVector32 = RotationVector<f32>;
pub type LZParams64 = LZParams<f64>;
pub type LZParams32 = LZParams<f32>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type TimeGrid32 = TimeGrid<f32>;
pub type PipelineSpec64 = PipelineSpec<f64>;
pub type PipelineSpec32 = PipelineSpec<f32>;
