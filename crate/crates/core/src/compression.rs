//! Collapsing a Trotter product into one or three exponential factors.
//!
//! Two routes are provided. The split form `… e^{−iθ_zσ_z} e^{−iθ_xσ_x} …`
//! is swept with the identity `X(α)Z(β)X(γ) = ±Z(a)X(b)Z(c)`, which always
//! leaves three factors. The exact form is reduced by composing neighbouring
//! versors pairwise in a balanced tree, which leaves a single exponential and
//! needs no inverse trigonometric functions.
//!
//! Throughout, `X(θ) = e^{−iθσ_x}` and `Z(θ) = e^{−iθσ_z}`.

use std::time::Instant;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::LZParams;
use crate::propagation::{
    exact_rotation, split_angles, trotter_factor_exact, trotter_factor_split, x_rotation, z_rotation, Evaluation,
    FactorForm, PropagationMode, Scheme, TimeGrid,
};
use crate::scalar::Real;
use crate::su2::{Matrix2, Unitary2, Versor};

const DEGENERATE: f64 = 1e-12;
/// Rounds with at least this many pairs are composed on the rayon pool.
const PARALLEL_PAIRS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axis", content = "angle")]
pub enum SplitAngle<T> {
    X(T),
    Z(T),
}

impl<T: Real> SplitAngle<T> {
    pub fn angle(&self) -> T {
        match *self {
            SplitAngle::X(a) | SplitAngle::Z(a) => a,
        }
    }

    pub fn is_x(&self) -> bool {
        matches!(self, SplitAngle::X(_))
    }

    pub fn unitary(&self) -> Unitary2<T> {
        match *self {
            SplitAngle::X(a) => x_rotation(a),
            SplitAngle::Z(a) => z_rotation(a),
        }
    }
}

/// Time-ordered split factors, earliest first: `X, Z, X, …, Z, X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSequence<T> {
    angles: Vec<SplitAngle<T>>,
}

impl<T: Real> SplitSequence<T> {
    /// Checks strict alternation, odd length and `X` at both ends.
    pub fn new(angles: Vec<SplitAngle<T>>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::EmptySequence);
        }
        if angles.len() % 2 == 0 || !angles[0].is_x() {
            return Err(Error::NonAlternating(0));
        }
        if let Some(i) = angles.windows(2).position(|w| w[0].is_x() == w[1].is_x()) {
            return Err(Error::NonAlternating(i + 1));
        }
        Ok(Self { angles })
    }

    /// Adds `X(0)` at either end that starts or finishes with a `Z`.
    pub fn padded(mut angles: Vec<SplitAngle<T>>) -> Result<Self> {
        if angles.first().is_some_and(|a| !a.is_x()) {
            angles.insert(0, SplitAngle::X(T::zero()));
        }
        if angles.last().is_some_and(|a| !a.is_x()) {
            angles.push(SplitAngle::X(T::zero()));
        }
        Self::new(angles)
    }

    /// Split factors of every step on `grid`, padded with a trailing `X(0)`.
    pub fn from_grid(grid: &TimeGrid<T>, p: &LZParams<T>, evaluation: Evaluation) -> Result<Self> {
        p.check_dynamics()?;
        let scheme = Scheme {
            form: FactorForm::Split,
            mode: PropagationMode::Operator,
            evaluation,
        };
        let mut angles = Vec::with_capacity(2 * grid.n_steps() + 1);
        for k in 0..grid.n_steps() {
            let (z, x) = split_angles(scheme.factor_time(grid, k), grid.dt(), p);
            angles.push(SplitAngle::X(x));
            angles.push(SplitAngle::Z(z));
        }
        Self::padded(angles)
    }

    pub fn angles(&self) -> &[SplitAngle<T>] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Direct product, later factors on the left.
    pub fn product(&self) -> Unitary2<T> {
        self.angles.iter().fold(Unitary2::identity(), |acc, a| a.unitary() * acc)
    }
}

/// `Z(a) X(b) Z(c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZxzAngles<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> ZxzAngles<T> {
    pub fn unitary(&self) -> Unitary2<T> {
        z_rotation(self.a) * x_rotation(self.b) * z_rotation(self.c)
    }
}

fn xzx_product<T: Real>(alpha: T, beta: T, gamma: T) -> Matrix2<T> {
    (x_rotation(alpha) * z_rotation(beta) * x_rotation(gamma)).into_matrix()
}

/// Reads `(a, b, c)` off `M = ±Z(a)X(b)Z(c)` using
/// `M₀₀ = e^{−i(a+c)} cos b` and `M₀₁ = −i e^{−i(a−c)} sin b`.
pub fn zxz_from_matrix<T: Real>(m: &Matrix2<T>) -> ZxzAngles<T> {
    let (m00, m01) = (m.get(0, 0), m.get(0, 1));
    let b = m01.norm().atan2(m00.norm());
    let sum = -m00.arg();
    let diff = -(Complex::new(T::zero(), T::one()) * m01).arg();
    let half = T::lit(0.5);
    ZxzAngles {
        a: (sum + diff) * half,
        b,
        c: (sum - diff) * half,
    }
}

/// `X(α)Z(β)X(γ) = ±Z(a)X(b)Z(c)` with `b ∈ [0, π/2]`.
pub fn xzx_to_zxz<T: Real>(alpha: T, beta: T, gamma: T) -> ZxzAngles<T> {
    let zero = T::zero();
    if alpha == zero {
        return ZxzAngles { a: beta, b: gamma, c: zero };
    }
    if gamma == zero {
        return ZxzAngles { a: zero, b: alpha, c: beta };
    }
    if beta == zero {
        return ZxzAngles { a: zero, b: alpha + gamma, c: zero };
    }
    let lhs = xzx_product(alpha, beta, gamma);
    let eps = T::lit(DEGENERATE);
    let (sum, diff) = (alpha + gamma, alpha - gamma);
    let (cs, ss, cd, sd) = (sum.cos(), sum.sin(), diff.cos(), diff.sin());
    if cs.abs() < eps || ss.abs() < eps || beta.cos().abs() < eps {
        return zxz_from_matrix(&lhs);
    }
    let tb = beta.tan();
    let p = (tb * cd / cs).atan();
    let q = (tb * sd / ss).atan();
    let num = ss * ss + tb * tb * sd * sd;
    let den = cs * cs + tb * tb * cd * cd;
    let half = T::lit(0.5);
    let mut out = ZxzAngles {
        a: (p - q) * half,
        b: (num / den).sqrt().atan(),
        c: (p + q) * half,
    };
    // The principal arctan fixes a ± c only modulo π; pick the branch whose
    // diagonal and off-diagonal agree with the product on a common sign.
    let r = out.unitary().into_matrix();
    let on = (lhs.get(0, 0) * r.get(0, 0).conj()).re;
    let off = (lhs.get(0, 1) * r.get(0, 1).conj()).re;
    if (on < zero) != (off < zero) {
        out.a += T::FRAC_PI_2();
        out.c += T::FRAC_PI_2();
    }
    out
}

/// Sweeps `XZX → ZXZ` from the earliest end, merging each new leading `Z`
/// into the next window and accumulating the trailing `Z` angles.
pub fn compress_xzx<T: Real>(seq: &SplitSequence<T>) -> ZxzAngles<T> {
    let angles = seq.angles();
    let mut acc = ZxzAngles {
        a: T::zero(),
        b: angles[0].angle(),
        c: T::zero(),
    };
    for pair in angles[1..].chunks_exact(2) {
        let (z, x) = (pair[0].angle(), pair[1].angle());
        let step = xzx_to_zxz(x, z + acc.a, acc.b);
        acc = ZxzAngles {
            a: step.a,
            b: step.b,
            c: step.c + acc.c,
        };
    }
    acc
}

/// Time-ordered exact Trotter factors as versors, earliest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VersorSequence<T> {
    pub versors: Vec<Versor<T>>,
}

/// Lazily generated exact factors of every step on `grid`.
pub fn versor_factors<'a, T: Real>(
    grid: &'a TimeGrid<T>,
    p: &'a LZParams<T>,
    evaluation: Evaluation,
) -> impl Iterator<Item = Versor<T>> + 'a {
    let scheme = Scheme {
        form: FactorForm::Exact,
        mode: PropagationMode::Operator,
        evaluation,
    };
    (0..grid.n_steps()).map(move |k| Versor::from_rotation(&exact_rotation(scheme.factor_time(grid, k), grid.dt(), p)))
}

impl<T: Real> VersorSequence<T> {
    pub fn from_grid(grid: &TimeGrid<T>, p: &LZParams<T>, evaluation: Evaluation) -> Result<Self> {
        p.check_dynamics()?;
        Ok(Self {
            versors: versor_factors(grid, p, evaluation).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.versors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.versors.is_empty()
    }

    /// Left fold of matrices, later factors on the left.
    pub fn product(&self) -> Unitary2<T> {
        self.versors.iter().fold(Unitary2::identity(), |acc, v| v.to_unitary() * acc)
    }
}

/// Balanced pairwise reduction in place; the product ends up in `buf[0]`.
/// Blocks `[i, i+s)` and `[i+s, i+2s)` merge at stride `s`, so the pairing
/// depends only on the length.
fn reduce_in_place<T: Real>(buf: &mut [Versor<T>]) {
    let n = buf.len();
    let mut stride = 1;
    while stride < n {
        let width = 2 * stride;
        let merge = |block: &mut [Versor<T>]| {
            if block.len() > stride {
                block[0] = block[stride].compose(&block[0]);
            }
        };
        if n / width >= PARALLEL_PAIRS {
            buf.par_chunks_mut(width).for_each(merge);
        } else {
            buf.chunks_mut(width).for_each(merge);
        }
        stride = width;
    }
}

/// Single versor equal to the time-ordered product of `seq`.
pub fn compress_nn<T: Real>(seq: &VersorSequence<T>) -> Result<Versor<T>> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut buf = seq.versors.clone();
    reduce_in_place(&mut buf);
    Ok(buf[0])
}

/// Result of [`compress_nn_chunked`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChunkedCompression<T> {
    pub versor: Versor<T>,
    pub n_factors: usize,
    /// Largest number of versors held at once.
    pub peak_resident: usize,
}

/// Streams factors through a buffer of `chunk_size` versors. Each full chunk
/// is reduced in place and pushed onto a binary-counter stack, where equal
/// levels merge, so at most `⌈log₂(n/chunk_size)⌉` partial products wait.
pub fn compress_nn_chunked<T, I>(factors: I, chunk_size: usize) -> Result<ChunkedCompression<T>>
where
    T: Real,
    I: IntoIterator<Item = Versor<T>>,
{
    if chunk_size < 2 {
        return Err(invalid("chunk_size", format!("must be at least 2 (got {chunk_size})")));
    }
    let mut buf: Vec<Versor<T>> = Vec::with_capacity(chunk_size);
    let mut stack: Vec<(u32, Versor<T>)> = Vec::new();
    let mut n_factors = 0;
    let mut peak = 0;

    let flush = |buf: &mut Vec<Versor<T>>, stack: &mut Vec<(u32, Versor<T>)>| {
        reduce_in_place(buf);
        let mut level = 0;
        let mut v = buf[0];
        buf.clear();
        while let Some(&(l, earlier)) = stack.last() {
            if l != level {
                break;
            }
            stack.pop();
            v = v.compose(&earlier);
            level += 1;
        }
        stack.push((level, v));
    };

    for v in factors {
        buf.push(v);
        n_factors += 1;
        peak = peak.max(buf.len() + stack.len());
        if buf.len() == chunk_size {
            flush(&mut buf, &mut stack);
        }
    }
    if !buf.is_empty() {
        flush(&mut buf, &mut stack);
    }
    let mut it = stack.into_iter().rev();
    let latest = it.next().ok_or(Error::EmptySequence)?.1;
    let versor = it.fold(latest, |acc, (_, earlier)| acc.compose(&earlier));
    Ok(ChunkedCompression {
        versor,
        n_factors,
        peak_resident: peak,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompressionMethod {
    NearestNeighbor,
    NearestNeighborChunked,
    Xzx,
}

/// One row of a compression benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionBenchmark {
    pub n_factors: usize,
    pub method: CompressionMethod,
    pub wall_time_s: f64,
    /// Versors (or split angles, for XZX) held at once.
    pub peak_versor_count: usize,
    /// Elementwise deviation from the direct matrix product; projective for XZX.
    pub max_deviation: f64,
}

/// Compresses the `n_steps` factors of the window `[−t_max, t_max]` with each
/// method and compares against the direct matrix product.
pub fn benchmark_compression<T: Real>(
    n_steps: usize,
    t_max: T,
    p: &LZParams<T>,
    chunk_size: Option<usize>,
) -> Result<Vec<CompressionBenchmark>> {
    if n_steps == 0 {
        return Err(invalid("n_factors", "must be at least 1"));
    }
    p.validate()?;
    let grid = TimeGrid::from_steps(-t_max, T::lit(2.0) * t_max / T::from_count(n_steps), n_steps)?;
    let dev = |x: T| x.to_f64().unwrap_or(f64::NAN);
    let mut out = Vec::new();

    let exact_oracle = (0..n_steps).fold(Unitary2::identity(), |acc, k| {
        trotter_factor_exact(grid.time(k), grid.dt(), p) * acc
    });
    let seq = VersorSequence::from_grid(&grid, p, Evaluation::LeftEndpoint)?;
    let start = Instant::now();
    let v = compress_nn(&seq)?;
    let elapsed = start.elapsed().as_secs_f64();
    out.push(CompressionBenchmark {
        n_factors: n_steps,
        method: CompressionMethod::NearestNeighbor,
        wall_time_s: elapsed,
        peak_versor_count: seq.len(),
        max_deviation: dev(v.to_matrix().max_abs_diff(exact_oracle.matrix())),
    });
    drop(seq);

    if let Some(chunk) = chunk_size {
        let start = Instant::now();
        let r = compress_nn_chunked(versor_factors(&grid, p, Evaluation::LeftEndpoint), chunk)?;
        let elapsed = start.elapsed().as_secs_f64();
        out.push(CompressionBenchmark {
            n_factors: n_steps,
            method: CompressionMethod::NearestNeighborChunked,
            wall_time_s: elapsed,
            peak_versor_count: r.peak_resident,
            max_deviation: dev(r.versor.to_matrix().max_abs_diff(exact_oracle.matrix())),
        });
    }

    let split_oracle = (0..n_steps).fold(Unitary2::identity(), |acc, k| {
        trotter_factor_split(grid.time(k), grid.dt(), p) * acc
    });
    let seq = SplitSequence::from_grid(&grid, p, Evaluation::LeftEndpoint)?;
    let start = Instant::now();
    let zxz = compress_xzx(&seq);
    let elapsed = start.elapsed().as_secs_f64();
    out.push(CompressionBenchmark {
        n_factors: n_steps,
        method: CompressionMethod::Xzx,
        wall_time_s: elapsed,
        peak_versor_count: seq.len(),
        max_deviation: dev(zxz.unitary().matrix().projective_diff(split_oracle.matrix())),
    });
    Ok(out)
}
