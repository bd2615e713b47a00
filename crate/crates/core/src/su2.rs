//! 2×2 complex linear algebra and SU(2) rotation calculus.
//!
//! Matrices are row-major in the basis `(|ψ₊⟩, |ψ₋⟩)`, so `σ_z = diag(1, -1)`
//! and `|ψ₊⟩ = (1, 0)`. Rotations are written `e^{iγ·σ}` for a real
//! three-vector `γ`; [`Versor`] holds the same element as
//! `(cos|γ|, sin|γ| γ̂)` and composes without extracting angles.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this rotation angle `cos` and `sin(x)/x` are evaluated by series.
pub const SMALL_ANGLE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// General complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Matrix2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn from_real(a: T, b: T, c: T, d: T) -> Self {
        Self::new(re(a), re(b), re(c), re(d))
    }

    pub fn identity() -> Self {
        Self::from_real(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn diag(a: Complex<T>, d: Complex<T>) -> Self {
        Self::new(a, Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::zero()), d)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.m[row][col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let m = &self.m;
        Self::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    pub fn scale_real(&self, k: T) -> Self {
        self.scale(re(k))
    }

    pub fn apply(&self, psi: &State2<T>) -> State2<T> {
        let m = &self.m;
        State2 {
            plus: m[0][0] * psi.plus + m[0][1] * psi.minus,
            minus: m[1][0] * psi.plus + m[1][1] * psi.minus,
        }
    }

    pub fn entries(&self) -> [Complex<T>; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.entries().iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// Elementwise distance modulo an overall sign, `min(‖A − B‖, ‖A + B‖)`.
    pub fn projective_diff(&self, other: &Self) -> T {
        self.max_abs_diff(other).min((*self + *other).max_abs())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }
}

impl<T: Real> Mul for Matrix2<T> {
    type Output = Matrix2<T>;

    fn mul(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Add for Matrix2<T> {
    type Output = Matrix2<T>;

    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl<T: Real> Sub for Matrix2<T> {
    type Output = Matrix2<T>;

    fn sub(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }
}

impl<T: Real> Neg for Matrix2<T> {
    type Output = Matrix2<T>;

    fn neg(self) -> Self {
        self.scale_real(-T::one())
    }
}

/// Pauli matrix for the given axis.
pub fn pauli<T: Real>(axis: Axis) -> Matrix2<T> {
    let o = T::zero();
    let l = T::one();
    match axis {
        Axis::X => Matrix2::from_real(o, l, l, o),
        Axis::Y => Matrix2::new(
            Complex::new(o, o),
            Complex::new(o, -l),
            Complex::new(o, l),
            Complex::new(o, o),
        ),
        Axis::Z => Matrix2::from_real(l, o, o, -l),
    }
}

/// Max elementwise modulus of `U†U − 𝕀`.
pub fn unitarity_defect<T: Real>(u: &Matrix2<T>) -> T {
    (u.adjoint() * *u - Matrix2::identity()).max_abs()
}

/// A 2×2 matrix known to be unitary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Unitary2<T>(Matrix2<T>);

impl<T: Real> Unitary2<T> {
    /// Wraps `m` after checking `U†U = 𝕀` to [`Real::invariant_tol`].
    pub fn new(m: Matrix2<T>) -> Result<Self> {
        let defect = unitarity_defect(&m);
        if !(defect <= T::invariant_tol()) {
            return Err(Error::InvalidParameter {
                field: "unitary",
                reason: format!("unitarity defect {defect:e}"),
            });
        }
        Ok(Self(m))
    }

    /// Wraps `m` without checking. The caller guarantees unitarity.
    pub fn new_unchecked(m: Matrix2<T>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn matrix(&self) -> &Matrix2<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix2<T> {
        self.0
    }

    /// Inverse, which for a unitary matrix is the adjoint.
    pub fn inverse(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn apply(&self, psi: &State2<T>) -> State2<T> {
        self.0.apply(psi)
    }

    pub fn defect(&self) -> T {
        unitarity_defect(&self.0)
    }
}

impl<T: Real> Mul for Unitary2<T> {
    type Output = Unitary2<T>;

    fn mul(self, rhs: Self) -> Self {
        Unitary2(self.0 * rhs.0)
    }
}

/// Real 3-vector `γ` parameterizing `e^{iγ·σ}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RotationVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> RotationVector<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn along(axis: Axis, angle: T) -> Self {
        let mut v = Self::zero();
        match axis {
            Axis::X => v.x = angle,
            Axis::Y => v.y = angle,
            Axis::Z => v.z = angle,
        }
        v
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    /// `γ·σ` as a matrix.
    pub fn dot_sigma(&self) -> Matrix2<T> {
        Matrix2::new(
            re(self.z),
            Complex::new(self.x, -self.y),
            Complex::new(self.x, self.y),
            re(-self.z),
        )
    }

    pub fn exp(&self) -> Unitary2<T> {
        euler_exp(self)
    }
}

impl<T: Real> Neg for RotationVector<T> {
    type Output = RotationVector<T>;

    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// `(cos x, sin(x)/x)`, by series below [`SMALL_ANGLE`].
pub(crate) fn cos_sinc<T: Real>(x: T) -> (T, T) {
    if x < T::lit(SMALL_ANGLE) {
        let x2 = x * x;
        let c = T::one() - x2 / T::lit(2.0) + x2 * x2 / T::lit(24.0) - x2 * x2 * x2 / T::lit(720.0);
        let s = T::one() - x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0)
            - x2 * x2 * x2 / T::lit(5040.0);
        (c, s)
    } else {
        (x.cos(), x.sin() / x)
    }
}

/// `e^{iγ·σ} = cos|γ| 𝕀 + i sin|γ| (γ·σ)/|γ|`.
pub fn euler_exp<T: Real>(gamma: &RotationVector<T>) -> Unitary2<T> {
    Versor::from_rotation(gamma).to_unitary()
}

/// SU(2) element as `(cos|γ|, sin|γ| γ̂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Versor<T> {
    pub c: T,
    pub s: [T; 3],
}

impl<T: Real> Versor<T> {
    pub fn identity() -> Self {
        Self {
            c: T::one(),
            s: [T::zero(); 3],
        }
    }

    pub fn from_rotation(gamma: &RotationVector<T>) -> Self {
        let (c, sinc) = cos_sinc(gamma.norm());
        Self {
            c,
            s: [sinc * gamma.x, sinc * gamma.y, sinc * gamma.z],
        }
    }

    /// `c 𝕀 + i s·σ`.
    pub fn to_matrix(&self) -> Matrix2<T> {
        let [sx, sy, sz] = self.s;
        Matrix2::new(
            Complex::new(self.c, sz),
            Complex::new(sy, sx),
            Complex::new(-sy, sx),
            Complex::new(self.c, -sz),
        )
    }

    pub fn to_unitary(&self) -> Unitary2<T> {
        Unitary2::new_unchecked(self.to_matrix())
    }

    /// Recovers one rotation vector `γ` with `|γ| ∈ [0, π]`.
    pub fn rotation_vector(&self) -> RotationVector<T> {
        let [sx, sy, sz] = self.s;
        let sn = (sx * sx + sy * sy + sz * sz).sqrt();
        if sn == T::zero() {
            return RotationVector::zero();
        }
        let angle = sn.atan2(self.c);
        RotationVector::new(sx, sy, sz).scale(angle / sn)
    }

    pub fn norm_sqr(&self) -> T {
        let [sx, sy, sz] = self.s;
        self.c * self.c + sx * sx + sy * sy + sz * sz
    }

    /// `|c² + |s|² − 1|`.
    pub fn norm_defect(&self) -> T {
        (self.norm_sqr() - T::one()).abs()
    }

    pub fn normalized(&self) -> Self {
        let k = T::one() / self.norm_sqr().sqrt();
        Self {
            c: self.c * k,
            s: [self.s[0] * k, self.s[1] * k, self.s[2] * k],
        }
    }

    /// Versor of `e^{iγ·σ} e^{iγ′·σ}` where `self` is `γ` (the left factor).
    pub fn compose(&self, right: &Self) -> Self {
        let (c1, s1) = (self.c, self.s);
        let (c2, s2) = (right.c, right.s);
        let dot = s1[0] * s2[0] + s1[1] * s2[1] + s1[2] * s2[2];
        let cross = [
            s1[1] * s2[2] - s1[2] * s2[1],
            s1[2] * s2[0] - s1[0] * s2[2],
            s1[0] * s2[1] - s1[1] * s2[0],
        ];
        let mut s = [T::zero(); 3];
        for k in 0..3 {
            s[k] = c1 * s2[k] + c2 * s1[k] - cross[k];
        }
        Self {
            c: c1 * c2 - dot,
            s,
        }
        .normalized()
    }
}

impl<T: Real> Mul for Versor<T> {
    type Output = Versor<T>;

    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

/// Two-component state on the `(|ψ₊⟩, |ψ₋⟩)` basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State2<T> {
    pub plus: Complex<T>,
    pub minus: Complex<T>,
}

impl<T: Real> State2<T> {
    pub fn new(plus: Complex<T>, minus: Complex<T>) -> Self {
        Self { plus, minus }
    }

    /// `|ψ₊⟩ = (1, 0)`.
    pub fn plus_basis() -> Self {
        Self::new(re(T::one()), re(T::zero()))
    }

    /// `|ψ₋⟩ = (0, 1)`.
    pub fn minus_basis() -> Self {
        Self::new(re(T::zero()), re(T::one()))
    }

    pub fn norm_sqr(&self) -> T {
        self.plus.norm_sqr() + self.minus.norm_sqr()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Euclidean normalization. Vectors already of unit norm to within a
    /// few ulps are returned unchanged, so normalizing is idempotent.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if !(n2 > T::zero()) || !n2.is_finite() {
            return Err(Error::InvalidParameter {
                field: "state",
                reason: format!("cannot normalize a vector of squared norm {n2:e}"),
            });
        }
        if (n2 - T::one()).abs() <= T::epsilon() * T::lit(4.0) {
            return Ok(*self);
        }
        let k = T::one() / n2.sqrt();
        Ok(Self::new(self.plus * k, self.minus * k))
    }

    /// `(P₊, P₋)` normalized by the state norm so that both lie in `[0, 1]`.
    pub fn probabilities(&self) -> (T, T) {
        let pp = self.plus.norm_sqr();
        let pm = self.minus.norm_sqr();
        let n = pp + pm;
        (pp / n, pm / n)
    }

    /// `⟨ψ₊|ψ⟩`.
    pub fn proj_plus(&self) -> Complex<T> {
        self.plus
    }

    /// `⟨ψ₋|ψ⟩`.
    pub fn proj_minus(&self) -> Complex<T> {
        self.minus
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.plus - other.plus)
            .norm()
            .max((self.minus - other.minus).norm())
    }
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}
