//! Reference computations that share no code with the library.

#![allow(dead_code)]

use num_complex::Complex64 as C;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// 15-point Kronrod estimate, its distance from the embedded 7-point Gauss
/// rule, and the Kronrod estimate of `∫|f|`.
fn gk15<F: Fn(f64) -> C>(f: &F, a: f64, b: f64) -> (C, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = h * XGK[j];
        let (l, r) = (f(c - x), f(c + x));
        k += (l + r) * WGK[j];
        abs += (l.norm() + r.norm()) * WGK[j];
        if j % 2 == 1 {
            g += (l + r) * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm(), abs * h.abs())
}

/// Adaptive bisection of a Gauss-Kronrod 7/15 rule to absolute tolerance
/// `tol`, or until the local error reaches roundoff relative to `∫|f|`.
pub fn integrate<F: Fn(f64) -> C>(f: &F, a: f64, b: f64, tol: f64) -> C {
    fn rec<F: Fn(f64) -> C>(f: &F, a: f64, b: f64, tol: f64, est: (C, f64, f64), depth: u32) -> C {
        let (whole, err, abs) = est;
        if err <= tol || err <= 1e-14 * abs || depth == 0 {
            return whole;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, tol / 2.0, gk15(f, a, m), depth - 1) + rec(f, m, b, tol / 2.0, gk15(f, m, b), depth - 1)
    }
    rec(f, a, b, tol, gk15(f, a, b), 30)
}

/// `erf(z) = (2/√π) ∫₀¹ z e^{−(sz)²} ds`.
pub fn erf_quadrature(z: C) -> C {
    let scale = (-(z * z)).re.max(0.0).exp();
    let f = |s: f64| z * (-(z * s) * (z * s)).exp();
    integrate(&f, 0.0, 1.0, 1e-15 * scale) * (2.0 / std::f64::consts::PI.sqrt())
}

/// Maclaurin series `erf(z) = (2/√π) Σ (−1)ⁿ z^{2n+1} / (n!(2n+1))`.
pub fn erf_series(z: C) -> C {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..400 {
        term = -term * z2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum * (2.0 / std::f64::consts::PI.sqrt())
}

/// `∫_t^∞ e^{−i·sign·a·s²} ds` for `t ≥ 0`.
///
/// `[t, L]` is integrated in `u = s²` over panels one period wide; beyond
/// `L = 200` two terms of the integration-by-parts expansion are added.
pub fn fresnel_tail(t: f64, a: f64, sign: f64) -> C {
    let big_l = 200.0_f64;
    let i = C::new(0.0, 1.0);
    let phase = |u: f64| (-i * sign * a * u).exp();
    let mut acc = C::new(0.0, 0.0);
    if t == 0.0 {
        // ∫₀^1 directly in s to avoid the u^{-1/2} endpoint
        let f = |s: f64| phase(s * s);
        acc += integrate(&f, 0.0, 1.0, 1e-16);
    }
    let lo = if t == 0.0 { 1.0 } else { t * t };
    let hi = big_l * big_l;
    let period = 2.0 * std::f64::consts::PI / a;
    // u = lo + k·period + w has the exact phase e^{−ia(lo + w)}
    let base = phase(lo);
    let mut k = 0.0;
    loop {
        let u0 = lo + k * period;
        if u0 >= hi {
            break;
        }
        let width = period.min(hi - u0);
        let g = |w: f64| base * phase(w) / (2.0 * (u0 + w).sqrt());
        acc += integrate(&g, 0.0, width, 1e-18);
        k += 1.0;
    }
    let end = phase(hi);
    let ia = i * sign * a;
    acc + end / (2.0 * ia * big_l) + end / (4.0 * a * a * big_l.powi(3))
}
