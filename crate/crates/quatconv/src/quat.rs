//! Quaternion arithmetic under both multiplication conventions.
//!
//! Two quaternion products are in live use: Hamilton's original one, with
//! `i ⊙ j = k`, and the flipped one `p ⊗ q := q ⊙ p` (Shuster's, the
//! JPL-style choice), with `i ⊗ j = −k`. Mixing them silently is the classic
//! source of sign bugs, so every product in this crate takes the convention
//! as an explicit [`Multiplication`] argument — there is deliberately no `*`
//! operator for quaternion × quaternion.
//!
//! Components are stored scalar-first: `(w, x, y, z)` with imaginary part
//! `(x, y, z)`.

use core::ops::{Add, Deref, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{cross, dot, vnorm, vscale, Vec3};
use crate::scalar::Scalar;

// ── Tolerances ───────────────────────────────────────────────────────

/// Accepted deviation of `‖q‖` from 1 when constructing a [`UnitQuaternion`]
/// in `f64` (integrator drift is well below this; anything worse is a bug in
/// the caller). For `f32` the bound is widened to a few dozen ulps, since
/// single-precision arithmetic cannot hold 1e-9.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// Below this imaginary-part magnitude, `exp`/`log` switch from the closed
/// form to a short series to avoid 0/0; the truncation error is O(θ⁶) ≈ 1e-36.
pub const SMALL_ANGLE: f64 = 1e-6;

/// Norms below this are treated as zero by [`Quaternion::inverse`].
pub const ZERO_NORM: f64 = 1e-300;

/// How close to `(−1, 0, 0, 0)` a unit quaternion may get before its
/// logarithm is rejected as singular (the rotation angle reaches π and the
/// axis becomes undefined).
pub const ANTIPODE_MARGIN: f64 = 1e-12;

/// Components with absolute value below this count as zero when fixing the
/// sign of a double-cover representative.
pub const SIGN_EPS: f64 = 1e-12;

#[inline]
fn unit_tolerance<T: Scalar>() -> T {
    T::c(UNIT_TOLERANCE).max(T::epsilon() * T::c(64.0))
}

// ── Types ────────────────────────────────────────────────────────────

/// Which quaternion product is meant. Serialized in dataset headers as
/// `"hamilton"` / `"shuster"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplication {
    /// Hamilton's product: `i ⊙ j = k`.
    Hamilton,
    /// The flipped product `p ⊗ q := q ⊙ p`, so `i ⊗ j = −k`.
    Shuster,
}

impl Multiplication {
    /// The other product.
    #[inline]
    pub fn flipped(self) -> Self {
        match self {
            Multiplication::Hamilton => Multiplication::Shuster,
            Multiplication::Shuster => Multiplication::Hamilton,
        }
    }
}

impl core::fmt::Display for Multiplication {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Multiplication::Hamilton => write!(f, "hamilton"),
            Multiplication::Shuster => write!(f, "shuster"),
        }
    }
}

/// A quaternion `w + x·i + y·j + z·k`, stored scalar-first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuatError {
    /// The norm is numerically zero, so the quaternion cannot be inverted.
    #[error("quaternion norm is numerically zero; cannot invert")]
    ZeroQuaternion,
    /// `log` was asked for a quaternion within [`ANTIPODE_MARGIN`] of
    /// `(−1,0,0,0)`, where the principal logarithm is not defined.
    #[error("quaternion is too close to (-1,0,0,0); its logarithm is singular")]
    AntipodalSingularity,
    /// A unit quaternion was requested from components too far from unit norm.
    #[error("norm {norm} deviates from 1 beyond the unit tolerance")]
    NotUnit { norm: f64 },
}

// ── Construction and component access ────────────────────────────────

impl<T: Scalar> Quaternion<T> {
    #[inline]
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Builds from a scalar part and an imaginary 3-vector.
    #[inline]
    pub fn from_parts(w: T, v: Vec3<T>) -> Self {
        Quaternion::new(w, v[0], v[1], v[2])
    }

    #[inline]
    pub fn zero() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    /// The multiplicative identity `1 = (1,0,0,0)`.
    #[inline]
    pub fn one() -> Self {
        Quaternion::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn i() -> Self {
        Quaternion::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    #[inline]
    pub fn j() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    #[inline]
    pub fn k() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Components as `[w, x, y, z]`.
    #[inline]
    pub fn to_array(self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [T; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

// ── Elementary operations ────────────────────────────────────────────

impl<T: Scalar> Quaternion<T> {
    /// The imaginary part as a 3-vector (the `ℐ` embedding).
    #[inline]
    pub fn imag(self) -> Vec3<T> {
        [self.x, self.y, self.z]
    }

    /// `(w, −x, −y, −z)`.
    #[inline]
    pub fn conjugate(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    /// All four components scaled by `s`.
    #[inline]
    pub fn scaled(self, s: T) -> Self {
        Quaternion::new(s * self.w, s * self.x, s * self.y, s * self.z)
    }

    /// `q⁻¹ = q̄ / ‖q‖²`; multiplying by it from either side under either
    /// product yields 1.
    pub fn inverse(self) -> Result<Self, QuatError> {
        let n = self.norm();
        if n < T::c(ZERO_NORM).max(T::min_positive_value()) {
            return Err(QuatError::ZeroQuaternion);
        }
        let inv_nsq = T::one() / (n * n);
        Ok(self.conjugate().scaled(inv_nsq))
    }
}

/// Embeds a 3-vector as a pure quaternion (the `ℐ*` embedding): zero scalar
/// part, imaginary part `x`.
#[inline]
pub fn pure<T: Scalar>(x: Vec3<T>) -> Quaternion<T> {
    Quaternion::from_parts(T::zero(), x)
}

/// The imaginary part of `q`; inverse of [`pure`] on pure quaternions.
#[inline]
pub fn imag<T: Scalar>(q: Quaternion<T>) -> Vec3<T> {
    q.imag()
}

/// The quaternion product `p ⋆ q` under the chosen convention.
///
/// The scalar part `p_w q_w − p⃗·q⃗` is the same for both products; the
/// imaginary part is `p_w q⃗ + q_w p⃗ ± p⃗ × q⃗` with `+` for Hamilton and `−`
/// for Shuster. The flipped product is evaluated literally as
/// `mul(Hamilton, q, p)`, which makes `mul(Shuster, p, q)` bit-identical to
/// it — the defining identity holds exactly, not just within rounding.
#[inline]
pub fn mul<T: Scalar>(star: Multiplication, p: Quaternion<T>, q: Quaternion<T>) -> Quaternion<T> {
    match star {
        Multiplication::Hamilton => hamilton(p, q),
        Multiplication::Shuster => hamilton(q, p),
    }
}

#[inline]
fn hamilton<T: Scalar>(p: Quaternion<T>, q: Quaternion<T>) -> Quaternion<T> {
    let pv = p.imag();
    let qv = q.imag();
    let w = p.w * q.w - dot(pv, qv);
    let c = cross(pv, qv);
    Quaternion::new(
        w,
        p.w * q.x + q.w * p.x + c[0],
        p.w * q.y + q.w * p.y + c[1],
        p.w * q.z + q.w * p.z + c[2],
    )
}

/// The free operation `conjugate(q)` (same as the method; exported to mirror
/// the rest of the operation set).
#[inline]
pub fn conjugate<T: Scalar>(q: Quaternion<T>) -> Quaternion<T> {
    q.conjugate()
}

// ── Exponential and logarithm ────────────────────────────────────────

/// Quaternion exponential. For a pure `v` with `θ = ‖v⃗‖` this is
/// `(cos θ, sin θ · v⃗/θ)`; a nonzero scalar part multiplies the result by
/// `e^w`. The map is the same under both multiplications.
pub fn exp_quat<T: Scalar>(q: Quaternion<T>) -> Quaternion<T> {
    let v = q.imag();
    let theta = vnorm(v);
    let sinc = if theta < T::c(SMALL_ANGLE) {
        // sin θ / θ = 1 − θ²/6 + θ⁴/120 − θ⁶/5040 + …
        let t2 = theta * theta;
        T::one() - t2 / T::c(6.0) + t2 * t2 / T::c(120.0)
    } else {
        theta.sin() / theta
    };
    let scale = q.w.exp();
    Quaternion::from_parts(theta.cos(), vscale(sinc, v)).scaled(scale)
}

/// Principal logarithm of a unit quaternion: the pure quaternion `v` with
/// `‖v⃗‖ ≤ π` and `exp_quat(v) = q`. Fails within [`ANTIPODE_MARGIN`] of
/// `(−1,0,0,0)`, where the axis is undefined.
pub fn log_quat<T: Scalar>(q: &UnitQuaternion<T>) -> Result<Quaternion<T>, QuatError> {
    let u = q.as_quaternion();
    if u.w <= T::c(-1.0) + T::c(ANTIPODE_MARGIN) {
        return Err(QuatError::AntipodalSingularity);
    }
    let v = u.imag();
    let vn = vnorm(v);
    let factor = if vn < T::c(SMALL_ANGLE) {
        // Here ‖q⃗‖ < 1e-6 on a unit quaternion forces |w| ≈ 1, and the
        // antipode guard above has excluded w ≈ −1, so w > 0.
        // atan(t)/‖q⃗‖ with t = ‖q⃗‖/w, expanded to O(t⁴).
        let t = vn / u.w;
        let t2 = t * t;
        (T::one() - t2 / T::c(3.0) + t2 * t2 / T::c(5.0)) / u.w
    } else {
        vn.atan2(u.w) / vn
    };
    Ok(pure(vscale(factor, v)))
}

// ── Unit quaternions ─────────────────────────────────────────────────

/// A quaternion constrained to unit norm.
///
/// Construction accepts inputs within [`UNIT_TOLERANCE`] of unit norm and
/// renormalizes them exactly, which absorbs integrator drift without letting
/// genuinely non-unit data through.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion<T>(Quaternion<T>);

impl<T: Scalar> UnitQuaternion<T> {
    pub fn new(q: Quaternion<T>) -> Result<Self, QuatError> {
        let n = q.norm();
        if (n - T::one()).abs() > unit_tolerance::<T>() {
            return Err(QuatError::NotUnit { norm: n.as_f64() });
        }
        Ok(UnitQuaternion(q.scaled(T::one() / n)))
    }

    /// Normalizes an arbitrary nonzero quaternion onto the unit sphere.
    pub fn normalize(q: Quaternion<T>) -> Result<Self, QuatError> {
        let n = q.norm();
        if n < T::c(ZERO_NORM).max(T::min_positive_value()) {
            return Err(QuatError::ZeroQuaternion);
        }
        Ok(UnitQuaternion(q.scaled(T::one() / n)))
    }

    #[inline]
    pub fn identity() -> Self {
        UnitQuaternion(Quaternion::one())
    }

    #[inline]
    pub fn as_quaternion(&self) -> &Quaternion<T> {
        &self.0
    }

    #[inline]
    pub fn into_inner(self) -> Quaternion<T> {
        self.0
    }

    /// Conjugation preserves unit norm exactly.
    #[inline]
    pub fn conjugate(&self) -> Self {
        UnitQuaternion(self.0.conjugate())
    }

    /// The antipodal representative `−q` of the same rotation.
    #[inline]
    pub fn negated(&self) -> Self {
        UnitQuaternion(self.0.scaled(-T::one()))
    }

    /// Product of two unit quaternions, renormalized to absorb rounding.
    pub fn mul_unit(star: Multiplication, p: &Self, q: &Self) -> Self {
        let r = mul(star, p.0, q.0);
        UnitQuaternion(r.scaled(T::one() / r.norm()))
    }

    /// Inverse of a unit quaternion is its conjugate.
    #[inline]
    pub fn inverse(&self) -> Self {
        self.conjugate()
    }

    /// Picks the canonical double-cover representative: `w ≥ 0`, and when
    /// `|w| <` [`SIGN_EPS`], the first imaginary component that is not
    /// numerically zero is made positive.
    pub fn sign_normalized(&self) -> Self {
        let q = self.0;
        let eps = T::c(SIGN_EPS);
        let lead = if q.w.abs() >= eps {
            q.w
        } else if q.x.abs() >= eps {
            q.x
        } else if q.y.abs() >= eps {
            q.y
        } else {
            q.z
        };
        if lead < T::zero() {
            self.negated()
        } else {
            *self
        }
    }
}

impl<T: Scalar> Deref for UnitQuaternion<T> {
    type Target = Quaternion<T>;

    fn deref(&self) -> &Quaternion<T> {
        &self.0
    }
}

// ── Additive structure (used by the integrators) ─────────────────────

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Quaternion<T>;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        Quaternion::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Quaternion<T>;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Quaternion::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Quaternion<T>;

    #[inline]
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Scalar> core::fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

// ── Tests ────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-15;

    fn qt() -> Quaternion<f64> {
        let s = 0.5f64.sqrt();
        Quaternion::new(s, 0.0, 0.0, s)
    }

    fn assert_quat_close(a: Quaternion<f64>, b: Quaternion<f64>, tol: f64) {
        for (ca, cb) in a.to_array().iter().zip(b.to_array()) {
            assert!(
                (ca - cb).abs() <= tol,
                "quaternions differ beyond {tol}: {a} vs {b}"
            );
        }
    }

    /// Independent product oracle: the 4×4 left-multiplication matrix of `p`
    /// applied to `q` as a column, for the Hamilton product.
    fn hamilton_via_matrix(p: Quaternion<f64>, q: Quaternion<f64>) -> Quaternion<f64> {
        let l = [
            [p.w, -p.x, -p.y, -p.z],
            [p.x, p.w, -p.z, p.y],
            [p.y, p.z, p.w, -p.x],
            [p.z, -p.y, p.x, p.w],
        ];
        let qa = q.to_array();
        let mut out = [0.0; 4];
        for (r, row) in l.iter().enumerate() {
            out[r] = row[0] * qa[0] + row[1] * qa[1] + row[2] * qa[2] + row[3] * qa[3];
        }
        Quaternion::from_array(out)
    }

    #[test]
    fn basis_products_hamilton() {
        use Multiplication::Hamilton as H;
        let (i, j, k) = (
            Quaternion::<f64>::i(),
            Quaternion::<f64>::j(),
            Quaternion::<f64>::k(),
        );
        assert_eq!(mul(H, i, j), k);
        assert_eq!(mul(H, j, k), i);
        assert_eq!(mul(H, k, i), j);
        assert_eq!(mul(H, i, i), -Quaternion::one());
        assert_eq!(mul(H, j, j), -Quaternion::one());
        assert_eq!(mul(H, k, k), -Quaternion::one());
    }

    #[test]
    fn basis_products_shuster_are_flipped() {
        use Multiplication::Shuster as S;
        let (i, j, k) = (
            Quaternion::<f64>::i(),
            Quaternion::<f64>::j(),
            Quaternion::<f64>::k(),
        );
        assert_eq!(mul(S, i, j), -k);
        assert_eq!(mul(S, j, k), -i);
        assert_eq!(mul(S, k, i), -j);
        assert_eq!(mul(S, i, i), -Quaternion::one());
    }

    #[test]
    fn identity_is_neutral_for_both_products() {
        let q = Quaternion::new(0.1f64, 0.2, 0.3, 0.4);
        for star in [Multiplication::Hamilton, Multiplication::Shuster] {
            assert_eq!(mul(star, q, Quaternion::one()), q);
            assert_eq!(mul(star, Quaternion::one(), q), q);
        }
    }

    #[test]
    fn flipped_product_is_bit_identical_to_swapped_arguments() {
        let p = Quaternion::new(0.3f64, -1.2, 0.7, 2.1);
        let q = Quaternion::new(-0.4f64, 0.9, 1.3, -0.2);
        let s = mul(Multiplication::Shuster, p, q);
        let h = mul(Multiplication::Hamilton, q, p);
        assert_eq!(s.to_array().map(f64::to_bits), h.to_array().map(f64::to_bits));
    }

    #[test]
    fn shuster_imaginary_part_matches_component_formula() {
        // p_w q⃗ + q_w p⃗ − p⃗ × q⃗, written out independently of `hamilton`.
        let p = Quaternion::new(0.3f64, -1.2, 0.7, 2.1);
        let q = Quaternion::new(-0.4f64, 0.9, 1.3, -0.2);
        let r = mul(Multiplication::Shuster, p, q);
        let pv = p.imag();
        let qv = q.imag();
        let expect = [
            p.w * qv[0] + q.w * pv[0] - (pv[1] * qv[2] - pv[2] * qv[1]),
            p.w * qv[1] + q.w * pv[1] - (pv[2] * qv[0] - pv[0] * qv[2]),
            p.w * qv[2] + q.w * pv[2] - (pv[0] * qv[1] - pv[1] * qv[0]),
        ];
        for (got, want) in r.imag().iter().zip(expect) {
            assert!((got - want).abs() < EPS);
        }
    }

    #[test]
    fn product_agrees_with_left_matrix_oracle() {
        let p = Quaternion::new(1.7, -0.3, 0.45, 0.9);
        let q = Quaternion::new(-0.2, 1.1, -2.3, 0.05);
        assert_quat_close(
            mul(Multiplication::Hamilton, p, q),
            hamilton_via_matrix(p, q),
            1e-14,
        );
        assert_quat_close(
            mul(Multiplication::Shuster, p, q),
            hamilton_via_matrix(q, p),
            1e-14,
        );
    }

    #[test]
    fn test_quaternion_squares_to_k_under_hamilton() {
        let r = mul(Multiplication::Hamilton, qt(), qt());
        assert_quat_close(r, Quaternion::k(), EPS);
    }

    #[test]
    fn product_norm_is_multiplicative() {
        let p = Quaternion::new(0.6f64, -1.9, 0.2, 0.8);
        let q = Quaternion::new(2.0f64, 0.3, -0.7, 1.4);
        for star in [Multiplication::Hamilton, Multiplication::Shuster] {
            let lhs = mul(star, p, q).norm();
            let rhs = p.norm() * q.norm();
            assert!((lhs - rhs).abs() / rhs < 1e-12);
        }
    }

    #[test]
    fn conjugation_definition_and_involution() {
        let q = Quaternion::new(1.0f64, 2.0, 3.0, 4.0);
        assert_eq!(q.conjugate(), Quaternion::new(1.0, -2.0, -3.0, -4.0));
        assert_eq!(q.conjugate().conjugate(), q);
    }

    #[test]
    fn conjugation_reverses_hamilton_products() {
        let p = Quaternion::new(0.5f64, 1.0, -2.0, 0.25);
        let q = Quaternion::new(-1.5f64, 0.5, 0.75, 2.0);
        let lhs = mul(Multiplication::Hamilton, p, q).conjugate();
        let rhs = mul(Multiplication::Hamilton, q.conjugate(), p.conjugate());
        assert_quat_close(lhs, rhs, EPS);
    }

    #[test]
    fn conjugation_carries_flipped_products_to_hamilton_ones() {
        // conj(p ⊗ q) = conj(p) ⊙ conj(q): conjugation is an isomorphism
        // between the two products, not just an antiautomorphism of one.
        let p = Quaternion::new(0.5f64, 1.0, -2.0, 0.25);
        let q = Quaternion::new(-1.5f64, 0.5, 0.75, 2.0);
        let lhs = mul(Multiplication::Shuster, p, q).conjugate();
        let rhs = mul(Multiplication::Hamilton, p.conjugate(), q.conjugate());
        assert_quat_close(lhs, rhs, EPS);
    }

    #[test]
    fn inverse_of_identity_and_scalars() {
        assert_eq!(
            Quaternion::<f64>::one().inverse().unwrap(),
            Quaternion::one()
        );
        assert_quat_close(
            Quaternion::new(2.0f64, 0.0, 0.0, 0.0).inverse().unwrap(),
            Quaternion::new(0.5, 0.0, 0.0, 0.0),
            EPS,
        );
    }

    #[test]
    fn inverse_of_unit_is_conjugate() {
        assert_quat_close(qt().inverse().unwrap(), qt().conjugate(), EPS);
    }

    #[test]
    fn inverse_is_two_sided_under_both_products() {
        let q = Quaternion::new(0.4f64, -1.1, 2.2, 0.6);
        let qi = q.inverse().unwrap();
        for star in [Multiplication::Hamilton, Multiplication::Shuster] {
            assert_quat_close(mul(star, q, qi), Quaternion::one(), 1e-12);
            assert_quat_close(mul(star, qi, q), Quaternion::one(), 1e-12);
        }
    }

    #[test]
    fn inverse_rejects_zero() {
        assert_eq!(
            Quaternion::<f64>::zero().inverse(),
            Err(QuatError::ZeroQuaternion)
        );
    }

    #[test]
    fn imag_pure_embeddings() {
        assert_eq!(
            imag(Quaternion::new(1.0f64, 2.0, 3.0, 4.0)),
            [2.0, 3.0, 4.0]
        );
        assert_eq!(pure([0.0, 0.0, 0.0]), Quaternion::<f64>::zero());
        assert_eq!(imag(pure([5.0f64, -6.0, 7.0])), [5.0, -6.0, 7.0]);
        let q = Quaternion::new(5.0f64, 1.0, 2.0, 3.0);
        assert_eq!(imag(q.conjugate()), [-1.0, -2.0, -3.0]);
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(exp_quat(Quaternion::<f64>::zero()), Quaternion::one());
    }

    #[test]
    fn exp_of_quarter_turn_axis_is_k() {
        let r = exp_quat(pure([0.0f64, 0.0, core::f64::consts::FRAC_PI_2]));
        assert_quat_close(r, Quaternion::k(), EPS);
    }

    #[test]
    fn exp_of_eighth_turn_axis_is_test_quaternion() {
        let r = exp_quat(pure([0.0f64, 0.0, core::f64::consts::FRAC_PI_4]));
        assert_quat_close(r, qt(), EPS);
    }

    #[test]
    fn exp_handles_tiny_angles_smoothly() {
        let v = [1e-9f64, -2e-9, 0.5e-9];
        let r = exp_quat(pure(v));
        // First-order: exp(v) ≈ (1, v).
        assert!((r.w - 1.0).abs() < 1e-17);
        for (got, want) in r.imag().iter().zip(v) {
            assert!((got - want).abs() < 1e-24);
        }
    }

    #[test]
    fn log_of_identity_is_zero() {
        let one = UnitQuaternion::<f64>::identity();
        assert_eq!(log_quat(&one).unwrap(), Quaternion::zero());
    }

    #[test]
    fn log_of_test_quaternion_is_eighth_turn() {
        let u = UnitQuaternion::new(qt()).unwrap();
        let l = log_quat(&u).unwrap();
        assert_quat_close(l, pure([0.0, 0.0, core::f64::consts::FRAC_PI_4]), EPS);
    }

    #[test]
    fn log_rejects_antipode() {
        let anti = UnitQuaternion::new(Quaternion::new(-1.0f64, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(log_quat(&anti), Err(QuatError::AntipodalSingularity));
    }

    #[test]
    fn log_handles_negative_scalar_part_away_from_antipode() {
        // 170° rotation: w < 0 but well clear of the antipode.
        let half = 170.0f64.to_radians() / 2.0;
        let q = Quaternion::new(half.cos(), half.sin(), 0.0, 0.0);
        let u = UnitQuaternion::new(q).unwrap();
        let l = log_quat(&u).unwrap();
        assert!((l.x - half).abs() < 1e-14);
        assert!(vnorm(l.imag()) <= core::f64::consts::PI);
    }

    #[test]
    fn exp_log_roundtrip() {
        let cases = [
            Quaternion::new(0.9f64, 0.1, -0.4, 0.1),
            Quaternion::new(0.2f64, 0.7, 0.5, -0.3),
            Quaternion::new(0.999_999_9f64, 1e-7, 0.0, 0.0),
        ];
        for q in cases {
            let u = UnitQuaternion::normalize(q).unwrap();
            let back = exp_quat(log_quat(&u).unwrap());
            assert_quat_close(back, *u.as_quaternion(), 1e-10);
        }
    }

    #[test]
    fn unit_construction_renormalizes_within_tolerance() {
        let q = qt().scaled(1.0 + 0.5e-9);
        let u = UnitQuaternion::new(q).unwrap();
        assert!((u.as_quaternion().norm() - 1.0).abs() < EPS);
    }

    #[test]
    fn unit_construction_rejects_far_from_unit() {
        let err = UnitQuaternion::new(Quaternion::new(1.1f64, 0.0, 0.0, 0.0)).unwrap_err();
        assert!(matches!(err, QuatError::NotUnit { .. }));
    }

    #[test]
    fn sign_normalization_rules() {
        let neg = UnitQuaternion::new(-qt()).unwrap();
        assert_eq!(*neg.sign_normalized().as_quaternion(), qt());

        // w numerically zero: the first nonzero imaginary component decides.
        let q = UnitQuaternion::new(Quaternion::new(0.0f64, 0.0, -1.0, 0.0)).unwrap();
        let fixed = q.sign_normalized();
        assert_eq!(*fixed.as_quaternion(), Quaternion::new(0.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn works_in_f32_too() {
        let s = 0.5f32.sqrt();
        let q = Quaternion::new(s, 0.0f32, 0.0, s);
        let r = mul(Multiplication::Hamilton, q, q);
        assert!((r.z - 1.0).abs() < 1e-6);
        let u = UnitQuaternion::new(q).unwrap();
        let l = log_quat(&u).unwrap();
        assert!((l.z - core::f32::consts::FRAC_PI_4).abs() < 1e-6);
    }
}
