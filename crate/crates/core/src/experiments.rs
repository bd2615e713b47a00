//! End-to-end pipelines and the convergence studies built on them.
//!
//! A pipeline is `[left tail] → finite-window propagation → [right tail]`.
//! Without the left tail the window starts in `|ψ₊⟩`; without the right tail
//! the reported probability is `|⟨ψ₊|ψ(end)⟩|²`.

use std::cmp::Ordering;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compression::{compress_nn_chunked, compress_xzx, versor_factors, SplitSequence};
use crate::error::{invalid, Error, Result};
use crate::model::LZParams;
use crate::propagation::{
    default_sample_every, evolve, split_guard, Diagnostic, Evaluation, FactorForm, ProbabilityTrace,
    PropagationMode, Scheme, TimeGrid,
};
use crate::scalar::Real;
use crate::su2::State2;
use crate::tails::{final_state_perturbed, initial_state_perturbed};

/// Library version recorded in run metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Floor applied before taking `log₁₀` of an error.
pub const LOG_FLOOR: f64 = 1e-16;

/// Chunk used when the nearest-neighbour engine streams factors.
const NN_CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    #[default]
    StepwiseProduct,
    NearestNeighborCompression,
    XzxCompression,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::StepwiseProduct => "stepwise-product",
            Engine::NearestNeighborCompression => "nearest-neighbor-compression",
            Engine::XzxCompression => "xzx-compression",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stepwise-product" | "stepwise" => Ok(Engine::StepwiseProduct),
            "nearest-neighbor-compression" | "nn" => Ok(Engine::NearestNeighborCompression),
            "xzx-compression" | "xzx" => Ok(Engine::XzxCompression),
            _ => Err(format!("unknown engine `{s}` (expected stepwise, nn or xzx)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineSpec<T> {
    pub params: LZParams<T>,
    pub grid: TimeGrid<T>,
    pub form: FactorForm,
    pub mode: PropagationMode,
    pub evaluation: Evaluation,
    pub use_left_tail: bool,
    pub use_right_tail: bool,
    pub engine: Engine,
    /// Trace stride for the stepwise engine; `None` records no trace.
    pub sample_every: Option<usize>,
}

impl<T: Real> PipelineSpec<T> {
    /// Stepwise, state-mode, both tails on, window `[−t_max, t_max]`.
    pub fn new(params: LZParams<T>, t_max: T, dt: T, form: FactorForm) -> Result<Self> {
        Ok(Self {
            params,
            grid: TimeGrid::symmetric(t_max, dt)?,
            form,
            mode: PropagationMode::State,
            evaluation: Evaluation::LeftEndpoint,
            use_left_tail: true,
            use_right_tail: true,
            engine: Engine::StepwiseProduct,
            sample_every: None,
        })
    }

    pub fn with_tails(mut self, on: bool) -> Self {
        self.use_left_tail = on;
        self.use_right_tail = on;
        self
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_mode(mut self, mode: PropagationMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_trace(mut self, sample_every: usize) -> Self {
        self.sample_every = Some(sample_every);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        match (self.engine, self.form) {
            (Engine::XzxCompression, FactorForm::Exact) => {
                return Err(Error::InvalidPipeline("xzx compression needs the split form".into()))
            }
            (Engine::NearestNeighborCompression, FactorForm::Split) => {
                return Err(Error::InvalidPipeline(
                    "nearest-neighbor compression needs the exact form".into(),
                ))
            }
            _ => {}
        }
        if self.use_left_tail && self.grid.start() > T::zero() {
            return Err(Error::InvalidPipeline("left tail needs a window starting at t ≤ 0".into()));
        }
        if self.use_right_tail && self.grid.end() < T::zero() {
            return Err(Error::InvalidPipeline("right tail needs a window ending at t ≥ 0".into()));
        }
        if self.sample_every == Some(0) {
            return Err(invalid("sample_every", "must be at least 1"));
        }
        Ok(())
    }

    pub fn scheme(&self) -> Scheme {
        Scheme {
            form: self.form,
            mode: self.mode,
            evaluation: self.evaluation,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutcome<T> {
    pub p_plus: T,
    pub p_minus: T,
    /// State at `+∞` (right tail on) or at the end of the window, up to phase.
    pub final_state: State2<T>,
    pub trace: Option<ProbabilityTrace<T>>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn run_pipeline<T: Real>(spec: &PipelineSpec<T>) -> Result<PipelineOutcome<T>> {
    spec.validate()?;
    let p = &spec.params;
    let grid = &spec.grid;
    let psi0 = if spec.use_left_tail {
        initial_state_perturbed(-grid.start(), p)?
    } else {
        State2::plus_basis()
    };

    let mut diagnostics = Vec::new();
    let mut trace = None;
    let psi_end = match spec.engine {
        Engine::StepwiseProduct => {
            let every = spec.sample_every.unwrap_or(usize::MAX);
            let mut tr = ProbabilityTrace {
                times: Vec::new(),
                p_plus: Vec::new(),
                p_minus: Vec::new(),
                final_state: psi0,
            };
            let evo = evolve(psi0, grid, &spec.scheme(), p, every, |_, t, psi| {
                if spec.sample_every.is_some() {
                    let (pp, pm) = psi.probabilities();
                    tr.times.push(t);
                    tr.p_plus.push(pp);
                    tr.p_minus.push(pm);
                }
            })?;
            diagnostics = evo.diagnostics;
            if spec.sample_every.is_some() {
                tr.final_state = evo.final_state;
                trace = Some(tr);
            }
            evo.final_state
        }
        Engine::NearestNeighborCompression => {
            if grid.n_steps() == 0 {
                psi0
            } else {
                let r = compress_nn_chunked(versor_factors(grid, p, spec.evaluation), NN_CHUNK)?;
                r.versor.to_unitary().apply(&psi0)
            }
        }
        Engine::XzxCompression => {
            if let Some(d) = split_guard(grid, p) {
                log::warn!("{d}");
                diagnostics.push(d);
            }
            let seq = SplitSequence::from_grid(grid, p, spec.evaluation)?;
            compress_xzx(&seq).unitary().apply(&psi0)
        }
    };

    let final_state = if spec.use_right_tail {
        final_state_perturbed(&psi_end, grid.end(), p)?
    } else {
        psi_end
    };
    let (p_plus, p_minus) = final_state.probabilities();
    Ok(PipelineOutcome {
        p_plus,
        p_minus,
        final_state,
        trace,
        diagnostics,
    })
}

/// One of the four tails × factor-form combinations compared in the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Method {
    pub perturbed: bool,
    pub form: FactorForm,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method { perturbed: true, form: FactorForm::Exact },
        Method { perturbed: true, form: FactorForm::Split },
        Method { perturbed: false, form: FactorForm::Exact },
        Method { perturbed: false, form: FactorForm::Split },
    ];

    pub fn label(&self) -> &'static str {
        match (self.perturbed, self.form) {
            (true, FactorForm::Exact) => "perturbed-exact",
            (true, FactorForm::Split) => "perturbed-split",
            (false, FactorForm::Exact) => "unperturbed-exact",
            (false, FactorForm::Split) => "unperturbed-split",
        }
    }

    fn rank(&self) -> usize {
        Self::ALL.iter().position(|m| m == self).unwrap_or(0)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|m| m.label() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord<T> {
    pub method: Method,
    pub param: T,
    pub p_plus: T,
    /// `P₊ − exp(−πδ²/v)`.
    pub delta_p: T,
    pub abs_delta_p: T,
    pub log10_abs_delta_p: f64,
    pub wall_time_s: f64,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweptParameter {
    Dt,
    TMax,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult<T> {
    pub parameter: SweptParameter,
    pub reference: T,
    /// Sorted by method, then by parameter.
    pub records: Vec<SweepRecord<T>>,
}

impl<T: Real> SweepResult<T> {
    pub fn for_method(&self, m: Method) -> impl Iterator<Item = &SweepRecord<T>> + '_ {
        self.records.iter().filter(move |r| r.method == m)
    }

    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out: Vec<Diagnostic> = Vec::new();
        for d in self.records.iter().flat_map(|r| &r.diagnostics) {
            if !out.contains(d) {
                out.push(d.clone());
            }
        }
        out
    }

    /// Long format: `method,param,p_plus,delta_p,abs_delta_p,wall_time_s`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "method,param,p_plus,delta_p,abs_delta_p,wall_time_s")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.method, r.param, r.p_plus, r.delta_p, r.abs_delta_p, r.wall_time_s
            )?;
        }
        w.flush()
    }

    /// One method: `param,p_plus,delta_p,abs_delta_p,wall_time_s`.
    pub fn write_method_csv<W: Write>(&self, m: Method, mut w: W) -> io::Result<()> {
        writeln!(w, "param,p_plus,delta_p,abs_delta_p,wall_time_s")?;
        for r in self.for_method(m) {
            writeln!(w, "{},{},{},{},{}", r.param, r.p_plus, r.delta_p, r.abs_delta_p, r.wall_time_s)?;
        }
        w.flush()
    }
}

/// `log₁₀(max(x, 10⁻¹⁶))`.
pub fn floored_log10(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    x.max(LOG_FLOOR).log10()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub methods: Vec<Method>,
    pub mode: PropagationMode,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    /// When false every `wall_time_s` is written as 0 so reruns are byte-identical.
    pub record_timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            methods: Method::ALL.to_vec(),
            mode: PropagationMode::State,
            workers: None,
            record_timing: true,
        }
    }
}

fn check_positive<T: Real>(field: &'static str, values: &[T]) -> Result<()> {
    if values.is_empty() {
        return Err(invalid(field, "list is empty"));
    }
    if let Some(v) = values.iter().find(|v| !(**v > T::zero() && v.is_finite())) {
        return Err(invalid(field, format!("values must be positive and finite (got {v})")));
    }
    Ok(())
}

fn run_sweep<T, F>(
    parameter: SweptParameter,
    values: &[T],
    p: &LZParams<T>,
    opts: &SweepOptions,
    make: F,
) -> Result<SweepResult<T>>
where
    T: Real,
    F: Fn(T, Method) -> Result<PipelineSpec<T>> + Sync,
{
    p.validate()?;
    if opts.methods.is_empty() {
        return Err(invalid("methods", "at least one method is required"));
    }
    let reference = p.exact_transition_probability();
    let jobs: Vec<(Method, T)> = opts
        .methods
        .iter()
        .flat_map(|&m| values.iter().map(move |&v| (m, v)))
        .collect();
    // specs are built up front so invalid input fails before any compute
    let specs = jobs
        .iter()
        .map(|&(m, v)| make(v, m).map(|s| s.with_mode(opts.mode)))
        .collect::<Result<Vec<_>>>()?;

    let work = || {
        jobs.par_iter()
            .zip(specs.par_iter())
            .map(|(&(method, param), spec)| {
                let start = Instant::now();
                let out = run_pipeline(spec)?;
                let wall = if opts.record_timing {
                    start.elapsed().as_secs_f64()
                } else {
                    0.0
                };
                let delta_p = out.p_plus - reference;
                Ok(SweepRecord {
                    method,
                    param,
                    p_plus: out.p_plus,
                    delta_p,
                    abs_delta_p: delta_p.abs(),
                    log10_abs_delta_p: floored_log10(delta_p.abs().to_f64().unwrap_or(f64::NAN)),
                    wall_time_s: wall,
                    diagnostics: out.diagnostics,
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let mut records = match opts.workers {
        Some(0) => return Err(invalid("workers", "must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::WorkerPool(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    records.sort_by(|a, b| {
        a.method
            .rank()
            .cmp(&b.method.rank())
            .then(a.param.partial_cmp(&b.param).unwrap_or(Ordering::Equal))
    });
    Ok(SweepResult {
        parameter,
        reference,
        records,
    })
}

/// `ΔP` against the time step at a fixed window `[−t_max, t_max]`.
pub fn sweep_dt<T: Real>(dts: &[T], t_max: T, p: &LZParams<T>, opts: &SweepOptions) -> Result<SweepResult<T>> {
    check_positive("dts", dts)?;
    run_sweep(SweptParameter::Dt, dts, p, opts, |dt, m| {
        Ok(PipelineSpec::new(*p, t_max, dt, m.form)?.with_tails(m.perturbed))
    })
}

/// `ΔP` against the window half-width at a fixed time step.
pub fn sweep_tmax<T: Real>(t_maxs: &[T], dt: T, p: &LZParams<T>, opts: &SweepOptions) -> Result<SweepResult<T>> {
    check_positive("t_maxs", t_maxs)?;
    run_sweep(SweptParameter::TMax, t_maxs, p, opts, |t_max, m| {
        Ok(PipelineSpec::new(*p, t_max, dt, m.form)?.with_tails(m.perturbed))
    })
}

/// `⟨ψ₋|ψ(t)⟩` for `t ∈ [−t_far, −t_near]` from two starting conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseComparison<T> {
    pub times: Vec<T>,
    /// Tail state generated directly at each `t`.
    pub perturbed: Vec<Complex<T>>,
    /// `|ψ₊⟩` at `−t_far` propagated with exact factors.
    pub unperturbed: Vec<Complex<T>>,
}

impl<T: Real> PhaseComparison<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `max_t | |a_pert| − |a_unpert| |`.
    pub fn max_modulus_gap(&self) -> T {
        self.perturbed
            .iter()
            .zip(&self.unperturbed)
            .fold(T::zero(), |m, (a, b)| m.max((a.norm() - b.norm()).abs()))
    }

    /// `max_t |Re a_pert − Re a_unpert|`.
    pub fn max_real_gap(&self) -> T {
        self.perturbed
            .iter()
            .zip(&self.unperturbed)
            .fold(T::zero(), |m, (a, b)| m.max((a.re - b.re).abs()))
    }

    /// CSV with header `t,re_proj_pert,re_proj_unpert,abs_proj_pert,abs_proj_unpert`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,re_proj_pert,re_proj_unpert,abs_proj_pert,abs_proj_unpert")?;
        for ((t, a), b) in self.times.iter().zip(&self.perturbed).zip(&self.unperturbed) {
            writeln!(w, "{t},{},{},{},{}", a.re, b.re, a.norm(), b.norm())?;
        }
        w.flush()
    }
}

pub fn phase_comparison<T: Real>(
    t_far: T,
    t_near: T,
    dt: T,
    p: &LZParams<T>,
    sample_every: Option<usize>,
) -> Result<PhaseComparison<T>> {
    p.validate()?;
    if !(t_near >= T::zero() && t_near.is_finite()) {
        return Err(invalid("t_near", format!("must be finite and non-negative (got {t_near})")));
    }
    if !(t_far >= t_near && t_far.is_finite()) {
        return Err(invalid("t_far", format!("must be at least t_near = {t_near} (got {t_far})")));
    }
    let grid = TimeGrid::window(-t_far, -t_near, dt)?;
    let every = sample_every.unwrap_or_else(|| default_sample_every(grid.n_steps()));
    let mut times = Vec::new();
    let mut unperturbed = Vec::new();
    evolve(
        State2::plus_basis(),
        &grid,
        &Scheme::default(),
        p,
        every,
        |_, t, psi| {
            times.push(t);
            unperturbed.push(psi.proj_minus());
        },
    )?;
    // the grid end may overshoot −t_near by rounding; the tail needs t ≤ 0
    let perturbed = times
        .iter()
        .map(|&t| Ok(initial_state_perturbed((-t).max(T::zero()), p)?.proj_minus()))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseComparison {
        times,
        perturbed,
        unperturbed,
    })
}

/// A refined local maximum of `P₊(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Maximum<T> {
    pub t: T,
    /// `v·t²`.
    pub phase: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationReport<T> {
    pub maxima: Vec<Maximum<T>>,
    /// Consecutive differences of `v·t_k²`.
    pub spacings: Vec<T>,
}

impl<T: Real> OscillationReport<T> {
    pub fn mean_spacing(&self) -> T {
        self.spacings.iter().fold(T::zero(), |s, &x| s + x) / T::from_count(self.spacings.len())
    }
}

/// Only maxima at `t` above this are reported.
pub const OSCILLATION_T_MIN: f64 = 5.0;

/// Strict local maxima of the sampled `P₊` for `t > 5`, each refined by a
/// parabola through the sample and its two neighbours.
pub fn oscillation_analysis<T: Real>(trace: &ProbabilityTrace<T>, p: &LZParams<T>) -> Result<OscillationReport<T>> {
    let (t, y) = (&trace.times, &trace.p_plus);
    let t_min = T::lit(OSCILLATION_T_MIN);
    let mut maxima = Vec::new();
    for i in 1..t.len().saturating_sub(1) {
        if t[i] <= t_min || !(y[i] > y[i - 1] && y[i] > y[i + 1]) {
            continue;
        }
        let (h0, h1) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        let denom = y[i - 1] - T::lit(2.0) * y[i] + y[i + 1];
        let shift = if h0 == h1 && denom != T::zero() {
            T::lit(0.5) * h0 * (y[i - 1] - y[i + 1]) / denom
        } else {
            T::zero()
        };
        let tk = t[i] + shift;
        maxima.push(Maximum {
            t: tk,
            phase: p.v * tk * tk,
        });
    }
    if maxima.len() < 3 {
        return Err(Error::TooFewExtrema { found: maxima.len() });
    }
    let spacings = maxima.windows(2).map(|w| w[1].phase - w[0].phase).collect();
    Ok(OscillationReport { maxima, spacings })
}

/// JSON sidecar written next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub library_version: String,
    pub command: String,
    /// Effective configuration after all overrides.
    pub config: serde_json::Value,
    /// Headline numbers of the run.
    pub results: serde_json::Value,
    pub diagnostics: Vec<Diagnostic>,
    pub notes: Vec<String>,
}

impl RunMetadata {
    pub fn new(command: impl Into<String>, config: serde_json::Value) -> Self {
        Self {
            library_version: VERSION.to_string(),
            command: command.into(),
            config,
            results: serde_json::Value::Null,
            diagnostics: Vec::new(),
            notes: Vec::new(),
        }
    }
}
