//! Trotterized time-ordered propagation over a finite window.
//!
//! Each step uses the Hamiltonian frozen at the step's left endpoint,
//! `U(t + Δt, t) = exp(−(i/ħ) H(t) Δt)`, either exactly (one Pauli
//! exponential) or split into `e^{−(i/ħ)vtΔt σ_z} e^{−(i/ħ)δΔt σ_x}`.
//! Later factors multiply on the left.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::LZParams;
use crate::scalar::Real;
use crate::su2::{euler_exp, RotationVector, State2, Unitary2};

/// Uniform grid `t_k = start + k·Δt`, `k = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid<T> {
    start: T,
    dt: T,
    n_steps: usize,
    t_max: T,
}

impl<T: Real> TimeGrid<T> {
    /// Symmetric window `[−t_max, t_max]` with `n_steps = round(2·t_max/Δt)`.
    ///
    /// When `2·t_max/Δt` is not an integer the grid still starts at `−t_max`
    /// and ends at `−t_max + n_steps·Δt`; see [`TimeGrid::realized_t_max`].
    pub fn symmetric(t_max: T, dt: T) -> Result<Self> {
        check_dt(dt)?;
        if !(t_max > T::zero() && t_max.is_finite()) {
            return Err(invalid("t_max", format!("must be positive and finite (got {t_max})")));
        }
        let n = steps_for(T::lit(2.0) * t_max, dt)?;
        if n == 0 {
            return Err(Error::InvalidGrid(format!(
                "window 2·{t_max} is shorter than half a step {dt}"
            )));
        }
        Ok(Self {
            start: -t_max,
            dt,
            n_steps: n,
            t_max,
        })
    }

    /// Window `[start, ≈end]`; zero steps are allowed when `end == start`.
    pub fn window(start: T, end: T, dt: T) -> Result<Self> {
        check_dt(dt)?;
        if !(start.is_finite() && end.is_finite()) || end < start {
            return Err(Error::InvalidGrid(format!("window [{start}, {end}] is not ordered")));
        }
        let n = steps_for(end - start, dt)?;
        Ok(Self {
            start,
            dt,
            n_steps: n,
            t_max: start.abs().max(end.abs()),
        })
    }

    /// Window of exactly `n_steps` steps starting at `start`.
    pub fn from_steps(start: T, dt: T, n_steps: usize) -> Result<Self> {
        check_dt(dt)?;
        let end = start + T::from_count(n_steps) * dt;
        Ok(Self {
            start,
            dt,
            n_steps,
            t_max: start.abs().max(end.abs()),
        })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn start(&self) -> T {
        self.start
    }

    pub fn end(&self) -> T {
        self.time(self.n_steps)
    }

    /// Requested half-width (largest `|t|` for non-symmetric windows).
    pub fn t_max(&self) -> T {
        self.t_max
    }

    /// Half of the realized window length, `n_steps·Δt/2`.
    pub fn realized_t_max(&self) -> T {
        T::from_count(self.n_steps) * self.dt / T::lit(2.0)
    }

    #[inline]
    pub fn time(&self, k: usize) -> T {
        self.start + T::from_count(k) * self.dt
    }

    /// Largest `|t|` reached on the grid.
    pub fn reach(&self) -> T {
        self.start.abs().max(self.end().abs())
    }
}

fn check_dt<T: Real>(dt: T) -> Result<()> {
    if !(dt > T::zero() && dt.is_finite()) {
        return Err(invalid("dt", format!("time step must be positive and finite (got {dt})")));
    }
    Ok(())
}

fn steps_for<T: Real>(length: T, dt: T) -> Result<usize> {
    let n = (length / dt).round();
    n.to_usize()
        .filter(|&n| n < usize::MAX / 2)
        .ok_or_else(|| Error::InvalidGrid(format!("step count {n} is not representable")))
}

/// Default trace sampling stride: `max(1, n_steps / 10⁴)`.
pub fn default_sample_every(n_steps: usize) -> usize {
    (n_steps / 10_000).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorForm {
    /// One exponential of the full instantaneous Hamiltonian.
    #[default]
    Exact,
    /// `σ_z` and `σ_x` exponentials applied separately.
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropagationMode {
    /// Apply each factor to the state.
    #[default]
    State,
    /// Accumulate the operator product, then apply it.
    Operator,
}

/// Where inside `[t, t + Δt]` the Hamiltonian is frozen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evaluation {
    #[default]
    LeftEndpoint,
    Midpoint,
}

macro_rules! kebab_enum {
    ($ty:ident { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($name => Ok($ty::$variant),)+
                    other => Err(format!(
                        "unknown {} '{}' (expected one of: {})",
                        stringify!($ty),
                        other,
                        [$($name),+].join(", ")
                    )),
                }
            }
        }
    };
}

kebab_enum!(FactorForm { Exact => "exact", Split => "split" });
kebab_enum!(PropagationMode { State => "state", Operator => "operator" });
kebab_enum!(Evaluation { LeftEndpoint => "left-endpoint", Midpoint => "midpoint" });

/// Non-fatal findings attached to a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Diagnostic {
    /// Split-form window exceeds a quarter of the split recurrence period.
    SplitPeriodicity { t_max: f64, period: f64 },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::SplitPeriodicity { t_max, period } => write!(
                f,
                "split form: T_max = {t_max} exceeds T/4 = {} (recurrence period T = {period}); \
                 reduce dt or use the exact form",
                period / 4.0
            ),
        }
    }
}

/// `(θ_z, θ_x) = (v t Δt/ħ, δ Δt/ħ)`; the split factor is `e^{−iθ_zσ_z} e^{−iθ_xσ_x}`.
#[inline]
pub fn split_angles<T: Real>(t: T, dt: T, p: &LZParams<T>) -> (T, T) {
    let k = dt / p.hbar;
    (p.v * t * k, p.delta * k)
}

/// `exp(−(i/ħ)(vtσ_z + δσ_x)Δt)`, i.e. the Pauli exponential with `γ = −(Δt/ħ)(δ, 0, vt)`.
pub fn trotter_factor_exact<T: Real>(t: T, dt: T, p: &LZParams<T>) -> Unitary2<T> {
    euler_exp(&exact_rotation(t, dt, p))
}

pub(crate) fn exact_rotation<T: Real>(t: T, dt: T, p: &LZParams<T>) -> RotationVector<T> {
    let (z, x) = split_angles(t, dt, p);
    RotationVector::new(-x, T::zero(), -z)
}

/// `e^{−(i/ħ)vtΔt σ_z} · e^{−(i/ħ)δΔt σ_x}`.
pub fn trotter_factor_split<T: Real>(t: T, dt: T, p: &LZParams<T>) -> Unitary2<T> {
    let (z, x) = split_angles(t, dt, p);
    z_rotation(z) * x_rotation(x)
}

/// `e^{−iθσ_z}`.
pub fn z_rotation<T: Real>(theta: T) -> Unitary2<T> {
    euler_exp(&RotationVector::new(T::zero(), T::zero(), -theta))
}

/// `e^{−iθσ_x}`.
pub fn x_rotation<T: Real>(theta: T) -> Unitary2<T> {
    euler_exp(&RotationVector::new(-theta, T::zero(), T::zero()))
}

pub fn trotter_factor<T: Real>(form: FactorForm, t: T, dt: T, p: &LZParams<T>) -> Unitary2<T> {
    match form {
        FactorForm::Exact => trotter_factor_exact(t, dt, p),
        FactorForm::Split => trotter_factor_split(t, dt, p),
    }
}

/// Recurrence period of the split-form `σ_z` factors, `T = 2πħ/(vΔt)`.
pub fn split_period<T: Real>(p: &LZParams<T>, dt: T) -> T {
    T::lit(2.0) * T::PI() * p.hbar / (p.v * dt)
}

/// Flags split-form windows reaching beyond a quarter of the recurrence period.
pub fn split_guard<T: Real>(grid: &TimeGrid<T>, p: &LZParams<T>) -> Option<Diagnostic> {
    let period = split_period(p, grid.dt());
    let reach = grid.reach();
    (reach > period / T::lit(4.0)).then(|| Diagnostic::SplitPeriodicity {
        t_max: reach.to_f64().unwrap_or(f64::NAN),
        period: period.to_f64().unwrap_or(f64::NAN),
    })
}

/// How factors are built and accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Scheme {
    pub form: FactorForm,
    pub mode: PropagationMode,
    pub evaluation: Evaluation,
}

impl Scheme {
    pub fn new(form: FactorForm, mode: PropagationMode) -> Self {
        Self {
            form,
            mode,
            evaluation: Evaluation::LeftEndpoint,
        }
    }

    #[inline]
    pub(crate) fn factor_time<T: Real>(&self, grid: &TimeGrid<T>, k: usize) -> T {
        match self.evaluation {
            Evaluation::LeftEndpoint => grid.time(k),
            Evaluation::Midpoint => grid.time(k) + grid.dt() / T::lit(2.0),
        }
    }

    /// The `k`-th Trotter factor on `grid`.
    pub fn factor<T: Real>(&self, grid: &TimeGrid<T>, k: usize, p: &LZParams<T>) -> Unitary2<T> {
        trotter_factor(self.form, self.factor_time(grid, k), grid.dt(), p)
    }
}

/// Outcome of [`evolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution<T> {
    pub final_state: State2<T>,
    /// Accumulated `U(end, start)`; present in operator mode.
    pub operator: Option<Unitary2<T>>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Propagates `psi0` across `grid`, calling `observer(k, t_k, ψ(t_k))` at
/// `k = 0, s, 2s, …` and at the final step.
pub fn evolve<T, F>(
    psi0: State2<T>,
    grid: &TimeGrid<T>,
    scheme: &Scheme,
    p: &LZParams<T>,
    sample_every: usize,
    mut observer: F,
) -> Result<Evolution<T>>
where
    T: Real,
    F: FnMut(usize, T, &State2<T>),
{
    p.check_dynamics()?;
    if sample_every == 0 {
        return Err(invalid("sample_every", "must be at least 1"));
    }
    let mut diagnostics = Vec::new();
    if scheme.form == FactorForm::Split {
        if let Some(d) = split_guard(grid, p) {
            log::warn!("{d}");
            diagnostics.push(d);
        }
    }
    let n = grid.n_steps();
    let mut psi = psi0;
    let mut acc = Unitary2::identity();
    for k in 0..n {
        if k % sample_every == 0 {
            observer(k, grid.time(k), &psi);
        }
        let u = scheme.factor(grid, k, p);
        match scheme.mode {
            PropagationMode::State => psi = u.apply(&psi),
            PropagationMode::Operator => {
                acc = u * acc;
                psi = acc.apply(&psi0);
            }
        }
    }
    observer(n, grid.end(), &psi);
    Ok(Evolution {
        final_state: psi,
        operator: (scheme.mode == PropagationMode::Operator).then_some(acc),
        diagnostics,
    })
}

/// `U(end, start)` as the time-ordered product of all factors on `grid`.
pub fn propagate_operator<T: Real>(grid: &TimeGrid<T>, scheme: &Scheme, p: &LZParams<T>) -> Unitary2<T> {
    (0..grid.n_steps()).fold(Unitary2::identity(), |acc, k| scheme.factor(grid, k, p) * acc)
}

/// Sampled `P±(t)` along a propagation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityTrace<T> {
    pub times: Vec<T>,
    pub p_plus: Vec<T>,
    pub p_minus: Vec<T>,
    pub final_state: State2<T>,
}

impl<T: Real> ProbabilityTrace<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// CSV with header `t,p_plus,p_minus`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,p_plus,p_minus")?;
        for ((t, pp), pm) in self.times.iter().zip(&self.p_plus).zip(&self.p_minus) {
            writeln!(w, "{t},{pp},{pm}")?;
        }
        w.flush()
    }
}

/// Trace plus run-level results of [`propagate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Propagated<T> {
    pub trace: ProbabilityTrace<T>,
    pub operator: Option<Unitary2<T>>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Propagates `psi0` over `grid` and records `P±` every `sample_every` steps
/// plus the final point.
pub fn propagate<T: Real>(
    psi0: State2<T>,
    grid: &TimeGrid<T>,
    scheme: &Scheme,
    p: &LZParams<T>,
    sample_every: usize,
) -> Result<Propagated<T>> {
    let samples = grid.n_steps() / sample_every.max(1) + 2;
    let mut times = Vec::with_capacity(samples);
    let mut p_plus = Vec::with_capacity(samples);
    let mut p_minus = Vec::with_capacity(samples);
    let evo = evolve(psi0, grid, scheme, p, sample_every, |_, t, psi| {
        let (pp, pm) = psi.probabilities();
        times.push(t);
        p_plus.push(pp);
        p_minus.push(pm);
    })?;
    Ok(Propagated {
        trace: ProbabilityTrace {
            times,
            p_plus,
            p_minus,
            final_state: evo.final_state,
        },
        operator: evo.operator,
        diagnostics: evo.diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::Matrix2;
    use num_complex::Complex;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn params(v: f64, delta: f64) -> LZParams<f64> {
        LZParams::new(v, delta, 1.0).unwrap()
    }

    /// Σ Aⁿ/n! for A = −(i/ħ)H dt.
    fn series_exp(h: &Matrix2<f64>, dt: f64) -> Matrix2<f64> {
        let a = h.scale(C::new(0.0, -dt));
        let mut term = Matrix2::identity();
        let mut sum = Matrix2::identity();
        for n in 1..40 {
            term = (term * a).scale_real(1.0 / n as f64);
            sum = sum + term;
        }
        sum
    }

    #[test]
    fn grid_construction() {
        let g = TimeGrid::symmetric(30.0f64, 1e-4).unwrap();
        assert_eq!(g.n_steps(), 600_000);
        assert!((g.end() - 30.0).abs() < 1e-9);
        let g = TimeGrid::symmetric(1.0f64, 0.3).unwrap();
        assert_eq!(g.n_steps(), 7);
        assert!((g.realized_t_max() - 1.05).abs() < 1e-12);
        assert!((2.0 * 1.0 - g.n_steps() as f64 * 0.3).abs() <= 0.15);
        assert!(TimeGrid::symmetric(1.0, -1.0).unwrap_err().to_string().contains("dt"));
        assert!(TimeGrid::symmetric(0.0, 0.1).is_err());
        assert!(TimeGrid::symmetric(1e-3, 1.0).is_err());
        assert_eq!(TimeGrid::window(2.0, 2.0, 0.1).unwrap().n_steps(), 0);
        assert!(TimeGrid::window(2.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn exact_factor_examples() {
        let u = trotter_factor_exact(0.0, 0.7, &params(PI, 0.0));
        assert_eq!(*u.matrix(), Matrix2::identity());

        let u = trotter_factor_exact(0.0, 0.1, &params(PI, 1.0));
        let expected = Matrix2::new(
            C::new(0.1f64.cos(), 0.0),
            C::new(0.0, -(0.1f64.sin())),
            C::new(0.0, -(0.1f64.sin())),
            C::new(0.1f64.cos(), 0.0),
        );
        assert!(u.matrix().max_abs_diff(&expected) < 1e-16);
        assert!(u.defect() <= 1e-14);
    }

    #[test]
    fn exact_factor_matches_series_exponential() {
        let p = params(PI, 1.0);
        for i in 0..100 {
            let t = -30.0 + 0.6 * i as f64;
            let dt = 1e-3 * (1 + i % 7) as f64;
            let oracle = series_exp(&p.hamiltonian(t), dt);
            assert!(trotter_factor_exact(t, dt, &p).matrix().max_abs_diff(&oracle) <= 1e-13);
        }
    }

    #[test]
    fn split_factor_limits() {
        for t in [-2.0, 0.0, 0.5, 3.0] {
            let p = params(PI, 0.0);
            let d = trotter_factor_split(t, 0.01, &p).matrix().max_abs_diff(trotter_factor_exact(t, 0.01, &p).matrix());
            assert!(d <= 1e-15);
            let p = LZParams { v: 0.0f64, delta: 1.0, hbar: 1.0 };
            let d = trotter_factor_split(t, 0.01, &p).matrix().max_abs_diff(trotter_factor_exact(t, 0.01, &p).matrix());
            assert!(d <= 1e-15);
        }
    }

    #[test]
    fn split_factor_error_is_second_order() {
        let p = params(PI, 1.0);
        let defect = |dt: f64| {
            trotter_factor_split(1.0, dt, &p).matrix().max_abs_diff(trotter_factor_exact(1.0, dt, &p).matrix())
        };
        let ratio = defect(1e-2) / defect(5e-3);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn split_period_values() {
        let p = params(PI, 1.0);
        assert!((split_period(&p, 1e-4) - 20000.0).abs() < 1e-9);
        assert!((split_period(&p, 1e-2) - 200.0).abs() < 1e-11);
        assert!(30.0 <= split_period(&p, 1e-4) / 4.0);
        assert!(split_guard(&TimeGrid::symmetric(30.0, 1e-4).unwrap(), &p).is_none());
        // guard arithmetic for T_max = 6000 at Δt = 10⁻⁴: T/4 = 5000
        let g = TimeGrid::from_steps(-6000.0, 1e-4, 1).unwrap();
        assert!(matches!(split_guard(&g, &p), Some(Diagnostic::SplitPeriodicity { .. })));
    }

    #[test]
    fn split_z_factor_recurs_with_period() {
        let p = params(PI, 1.0);
        let dt = 1e-2;
        let period = split_period(&p, dt);
        let shift = (period / dt).round() as usize;
        let g = TimeGrid::from_steps(-100.0, dt, 3 * shift).unwrap();
        for k in (0..shift).step_by(37) {
            let (z0, _) = split_angles(g.time(k), dt, &p);
            let (z1, _) = split_angles(g.time(k + shift), dt, &p);
            let a = z_rotation(z0);
            let b = z_rotation(z1);
            assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-12, "k={k}");
        }
    }

    #[test]
    fn decoupled_state_keeps_probability() {
        let p = params(PI, 0.0);
        let g = TimeGrid::symmetric(5.0, 1e-3).unwrap();
        let out = propagate(State2::plus_basis(), &g, &Scheme::default(), &p, 10).unwrap();
        assert!(out.trace.p_plus.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn constant_coupling_rabi_oscillation() {
        let p = LZParams { v: 0.0f64, delta: 1.0, hbar: 1.0 };
        let g = TimeGrid::window(0.0, 3.0, 1e-4).unwrap();
        let out = propagate(State2::plus_basis(), &g, &Scheme::default(), &p, 100).unwrap();
        for (t, pp) in out.trace.times.iter().zip(&out.trace.p_plus) {
            assert!((pp - t.cos().powi(2)).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn trace_sampling_and_norm() {
        let p = params(PI, 1.0);
        let g = TimeGrid::symmetric(3.0, 1e-3).unwrap();
        let out = propagate(State2::plus_basis(), &g, &Scheme::default(), &p, 7).unwrap();
        assert_eq!(out.trace.len(), 6000 / 7 + 1 + 1);
        assert_eq!(*out.trace.times.last().unwrap(), g.end());
        for (a, b) in out.trace.p_plus.iter().zip(&out.trace.p_minus) {
            assert!((a + b - 1.0).abs() < 1e-10);
            assert!((0.0..=1.0).contains(a));
        }
        assert!((out.trace.final_state.norm() - 1.0).abs() < 1e-10);
        assert!(propagate(State2::plus_basis(), &g, &Scheme::default(), &p, 0).is_err());
    }

    #[test]
    fn operator_and_state_modes_agree() {
        let p = params(PI, 1.0);
        let g = TimeGrid::symmetric(10.0, 1e-3).unwrap();
        for form in [FactorForm::Exact, FactorForm::Split] {
            let s = propagate(State2::plus_basis(), &g, &Scheme::new(form, PropagationMode::State), &p, 1000).unwrap();
            let o = propagate(State2::plus_basis(), &g, &Scheme::new(form, PropagationMode::Operator), &p, 1000).unwrap();
            let (ps, po) = (s.trace.p_plus.last().unwrap(), o.trace.p_plus.last().unwrap());
            assert!((ps - po).abs() < 1e-12);
            let u = o.operator.unwrap();
            assert!(u.defect() < 1e-10);
            let direct = propagate_operator(&g, &Scheme::new(form, PropagationMode::Operator), &p);
            assert_eq!(direct, u);
        }
    }

    #[test]
    fn semigroup_property() {
        let p = params(PI, 1.0);
        let scheme = Scheme::default();
        let whole = TimeGrid::from_steps(-4.0, 1e-3, 8000).unwrap();
        let first = TimeGrid::from_steps(-4.0, 1e-3, 4000).unwrap();
        let second = TimeGrid::from_steps(whole.time(4000), 1e-3, 4000).unwrap();
        let direct = evolve(State2::plus_basis(), &whole, &scheme, &p, usize::MAX, |_, _, _| {}).unwrap();
        let half = evolve(State2::plus_basis(), &first, &scheme, &p, usize::MAX, |_, _, _| {}).unwrap();
        let rest = evolve(half.final_state, &second, &scheme, &p, usize::MAX, |_, _, _| {}).unwrap();
        assert!(direct.final_state.max_abs_diff(&rest.final_state) < 1e-12);
    }

    #[test]
    fn split_guard_is_reported_in_diagnostics() {
        let p = params(PI, 1.0);
        // T = 200 at Δt = 10⁻², T/4 = 50
        let g = TimeGrid::symmetric(60.0, 1e-2).unwrap();
        let out = propagate(State2::plus_basis(), &g, &Scheme::new(FactorForm::Split, PropagationMode::State), &p, 1000).unwrap();
        assert_eq!(out.diagnostics.len(), 1);
        let out = propagate(State2::plus_basis(), &g, &Scheme::default(), &p, 1000).unwrap();
        assert!(out.diagnostics.is_empty());
    }

    #[test]
    fn midpoint_evaluation_shifts_factor_time() {
        let p = params(PI, 1.0);
        let g = TimeGrid::symmetric(1.0, 0.1).unwrap();
        let mid = Scheme { evaluation: Evaluation::Midpoint, ..Scheme::default() };
        let u = mid.factor(&g, 0, &p);
        assert_eq!(u, trotter_factor_exact(g.time(0) + 0.05, 0.1, &p));
    }

    #[test]
    fn csv_header() {
        let p = params(PI, 1.0);
        let g = TimeGrid::symmetric(0.5, 0.25).unwrap();
        let out = propagate(State2::plus_basis(), &g, &Scheme::default(), &p, 1).unwrap();
        let mut buf = Vec::new();
        out.trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,p_plus,p_minus\n-0.5,1,0\n"));
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn enum_parsing() {
        assert_eq!("split".parse::<FactorForm>().unwrap(), FactorForm::Split);
        assert_eq!("Operator".parse::<PropagationMode>().unwrap(), PropagationMode::Operator);
        assert!("sideways".parse::<FactorForm>().is_err());
        assert_eq!(Evaluation::Midpoint.to_string(), "midpoint");
    }
}
