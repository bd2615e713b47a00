//! Complex error function and the Fresnel-type tail integrals `η(t)`, `ξ(t)`.
//!
//! `erf` is evaluated by its Maclaurin series where the series is well
//! conditioned (small `|z|`, or `Re z` small enough that the alternating terms
//! do not cancel badly) and by the Laplace continued fraction for `erfc`
//! elsewhere in the right half plane. The left half plane follows from
//! oddness.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Above this modulus only the leading asymptotic term of `erfc` is used.
pub const ASYMPTOTIC_MODULUS: f64 = 1e4;

const SERIES_MODULUS: f64 = 2.0;
const SERIES_MAX_RE: f64 = 1.5;
const MAX_ITER: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErfResult<T> {
    pub value: Complex<T>,
    pub est_abs_error: T,
}

/// `erf(z) = 2/√π ∫₀ᶻ e^{−t²} dt` for complex `z`.
///
/// Fails with [`Error::Overflow`] when `e^{−z²}` is not representable.
pub fn erf_complex<T: Real>(z: Complex<T>) -> Result<ErfResult<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(invalid("z", "erf argument must be finite"));
    }
    if z.re < T::zero() {
        let r = erf_right_half(-z)?;
        return Ok(ErfResult {
            value: -r.value,
            est_abs_error: r.est_abs_error,
        });
    }
    erf_right_half(z)
}

/// `erfc(z) = 1 − erf(z)`, computed without cancellation for `Re z ≥ 0`.
pub(crate) fn erfc_complex<T: Real>(z: Complex<T>) -> Result<ErfResult<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(invalid("z", "erfc argument must be finite"));
    }
    if z.re < T::zero() || use_series(z) {
        let e = erf_complex(z)?;
        return Ok(ErfResult {
            value: Complex::new(T::one(), T::zero()) - e.value,
            est_abs_error: e.est_abs_error + T::epsilon(),
        });
    }
    erfc_fraction(z)
}

fn use_series<T: Real>(z: Complex<T>) -> bool {
    z.norm() <= T::lit(SERIES_MODULUS) || z.re.abs() < T::lit(SERIES_MAX_RE)
}

fn erf_right_half<T: Real>(z: Complex<T>) -> Result<ErfResult<T>> {
    if z.re == T::zero() && z.im == T::zero() {
        return Ok(ErfResult {
            value: z,
            est_abs_error: T::zero(),
        });
    }
    if use_series(z) {
        return erf_series(z);
    }
    let c = erfc_fraction(z)?;
    Ok(ErfResult {
        value: Complex::new(T::one(), T::zero()) - c.value,
        est_abs_error: c.est_abs_error + T::epsilon(),
    })
}

fn check_exponent<T: Real>(z: Complex<T>) -> Result<()> {
    // |e^{−z²}| = e^{y² − x²}
    let growth = z.im * z.im - z.re * z.re;
    if growth > T::max_value().ln() - T::lit(2.0) {
        return Err(Error::Overflow {
            re: z.re.to_f64().unwrap_or(f64::NAN),
            im: z.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

fn erf_series<T: Real>(z: Complex<T>) -> Result<ErfResult<T>> {
    check_exponent(z)?;
    let mz2 = -(z * z);
    let r2 = z.norm_sqr();
    let mut power = z;
    let mut sum = z;
    let mut largest = z.norm();
    let mut last = largest;
    for n in 1..MAX_ITER {
        power = power * mz2 / T::from_count(n);
        let term = power / T::from_count(2 * n + 1);
        sum += term;
        last = term.norm();
        largest = largest.max(last);
        if !largest.is_finite() {
            return Err(Error::Overflow {
                re: z.re.to_f64().unwrap_or(f64::NAN),
                im: z.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        if T::from_count(n) > r2 && last <= T::epsilon() * sum.norm() {
            break;
        }
    }
    let k = T::lit(2.0) / T::PI().sqrt();
    Ok(ErfResult {
        value: sum * k,
        est_abs_error: k * (last + T::epsilon() * largest * T::lit(4.0)),
    })
}

/// `erfc(z) = e^{−z²}/√π · 1/(z + ½/(z + 1/(z + 3/2/(z + …))))`, `Re z > 0`.
fn erfc_fraction<T: Real>(z: Complex<T>) -> Result<ErfResult<T>> {
    check_exponent(z)?;
    let prefactor = (-(z * z)).exp() / T::PI().sqrt();
    if z.norm() > T::lit(ASYMPTOTIC_MODULUS) {
        let value = prefactor / z;
        let est = value.norm() / (T::lit(2.0) * z.norm_sqr());
        return Ok(ErfResult {
            value,
            est_abs_error: est,
        });
    }
    // Modified Lentz evaluation of b0 + a1/(b1 + a2/(b2 + …)), b_j = z, a_j = j/2.
    let tiny = T::min_positive_value().sqrt();
    let zero = Complex::new(T::zero(), T::zero());
    let mut f = z;
    let mut c = f;
    let mut d = zero;
    let mut last = T::one();
    for j in 1..MAX_ITER {
        let a = T::from_count(j) / T::lit(2.0);
        d = z + d * a;
        if d.norm() < tiny {
            d = Complex::new(tiny, T::zero());
        }
        d = d.inv();
        c = z + c.inv() * a;
        if c.norm() < tiny {
            c = Complex::new(tiny, T::zero());
        }
        let delta = c * d;
        f *= delta;
        last = (delta - Complex::new(T::one(), T::zero())).norm();
        if last <= T::epsilon() {
            break;
        }
    }
    let value = prefactor / f;
    Ok(ErfResult {
        value,
        est_abs_error: value.norm() * (last + T::epsilon() * T::lit(8.0)),
    })
}

fn check_tail_args<T: Real>(t: T, v: T, hbar: T) -> Result<()> {
    if !(t >= T::zero()) || !t.is_finite() {
        return Err(invalid("t", format!("must be finite and non-negative (got {t})")));
    }
    if !(v > T::zero()) || !v.is_finite() {
        return Err(invalid("v", format!("must be positive (got {v})")));
    }
    if !(hbar > T::zero()) || !hbar.is_finite() {
        return Err(invalid("hbar", format!("must be positive (got {hbar})")));
    }
    Ok(())
}

/// `w = √(v/2ħ)(1 + i)t`, so that `w² = i v t²/ħ`.
fn fresnel_argument<T: Real>(t: T, v_eff: T) -> Complex<T> {
    let k = (v_eff / T::lit(2.0)).sqrt() * t;
    Complex::new(k, k)
}

/// `η(t) = ∫_{−∞}^{−t} e^{−i v t′²/ħ} dt′
///       = √(πħ/2v) (1 − i)/2 [1 − erf(√(v/2ħ)(1 + i)t)]`.
pub fn eta<T: Real>(t: T, v: T, hbar: T) -> Result<Complex<T>> {
    check_tail_args(t, v, hbar)?;
    let v_eff = v / hbar;
    let pre = (T::PI() / (T::lit(2.0) * v_eff)).sqrt() / T::lit(2.0);
    let bracket = erfc_complex(fresnel_argument(t, v_eff))?.value;
    Ok(Complex::new(pre, -pre) * bracket)
}

/// `ξ(t) = ∫_{−∞}^{−t} e^{+i v t′²/ħ} dt′
///       = √(πħ/2v) (1 + i)/2 [1 + erf(√(v/2ħ)(i − 1)t)]`.
pub fn xi<T: Real>(t: T, v: T, hbar: T) -> Result<Complex<T>> {
    check_tail_args(t, v, hbar)?;
    let v_eff = v / hbar;
    let pre = (T::PI() / (T::lit(2.0) * v_eff)).sqrt() / T::lit(2.0);
    // 1 + erf(−w̄) = erfc(w̄)
    let bracket = erfc_complex(fresnel_argument(t, v_eff).conj())?.value;
    Ok(Complex::new(pre, pre) * bracket)
}
