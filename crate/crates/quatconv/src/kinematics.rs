//! Attitude kinematics: how the convention choices propagate into ODEs.
//!
//! The matrix and quaternion attitude equations pick up signs from three
//! sources: the matrix-usage factor `α_C`, the homomorphy sign `γ` of the
//! (map, multiplication) pairing, and the frame — whether the angular
//! velocity is expressed in the inertial frame (`A`) or the body frame
//! (`B`). All three are explicit here:
//!
//! ```text
//! α_C · Ċ = C · ω_A^×            α_C · q̇ = γ · ½ · q ⋆ ℐ*(ω_A)
//! α_C · Ċ = ω_B^× · C            α_C · q̇ = γ · ½ · ℐ*(ω_B) ⋆ q
//! ```
//!
//! The integrator propagates *both* representations independently and lets
//! tests confirm they stay glued together through `C = C(q)` — which only
//! works when every sign above is consistent, making it a sensitive
//! whole-pipeline check.

use thiserror::Error;

use crate::linalg::{mat_add, mat_identity, mat_mul, mat_scale, transpose, vscale, Mat3, Vec3};
use crate::quat::{imag, mul, pure, Quaternion, UnitQuaternion};
use crate::rotvec::{ConventionFactors, Sign};
use crate::scalar::Scalar;
use crate::so3::{quat_to_matrix, skew, vee, QmConvention, RotationMatrix};

// ── Tolerances ───────────────────────────────────────────────────────

/// Iteration target for the polar re-orthonormalization of integrated
/// matrices: `‖MᵀM − 1‖_F` is driven below this each step.
pub const POLAR_TOLERANCE: f64 = 1e-12;

/// Upper bound on polar-projection sweeps per step; convergence is
/// quadratic, so a handful suffice for any matrix an RK4 step can produce.
const POLAR_MAX_SWEEPS: usize = 30;

// ── Types ────────────────────────────────────────────────────────────

/// Which frame an angular velocity is expressed in. The same physical
/// motion has different coordinates in the two; Table rows for `ω_A` and
/// `ω_B` differ by which side of the attitude the rate multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// The fixed/reference frame.
    A,
    /// The rotating/body frame.
    B,
}

impl core::fmt::Display for Frame {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Frame::A => write!(f, "A"),
            Frame::B => write!(f, "B"),
        }
    }
}

/// An angular velocity together with the frame its coordinates live in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularVelocity<T> {
    pub omega: Vec3<T>,
    pub frame: Frame,
}

impl<T: Scalar> AngularVelocity<T> {
    #[inline]
    pub fn new(omega: Vec3<T>, frame: Frame) -> Self {
        AngularVelocity { omega, frame }
    }
}

/// The sign `β` relating an observed matrix rate to the angular velocity
/// (`ω^× = β · CᵀĊ` or `β · ĊCᵀ` depending on frame). The companion sign
/// `γ` is *not* a field: it is always derived from the (map, multiplication)
/// pairing, never chosen independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KinematicFactors {
    pub beta: Sign,
}

impl KinematicFactors {
    #[inline]
    pub fn new(beta: Sign) -> Self {
        KinematicFactors { beta }
    }

    /// The homomorphy sign of the pairing; `None` for antihomomorphic
    /// pairings, which have no quaternion rate formula.
    #[inline]
    pub fn gamma<T: Scalar>(self, conv: QmConvention) -> Option<T> {
        conv.gamma()
    }
}

/// One sample of an integrated trajectory: both attitude representations at
/// time `t`, propagated independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint<T> {
    pub t: T,
    pub q: UnitQuaternion<T>,
    pub c: RotationMatrix<T>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    /// Quaternion rate formulas exist only for the homomorphic pairings.
    #[error("convention {convention} is antihomomorphic; quaternion kinematics are only defined for (CH, hamilton) and (CS, shuster)")]
    NotHomomorphic { convention: QmConvention },
    /// A non-positive step or negative end time was requested.
    #[error("invalid integration step: dt = {dt}, t_end = {t_end} (need dt > 0 and t_end ≥ 0)")]
    InvalidStep { dt: f64, t_end: f64 },
}

// ── Attitude rates ───────────────────────────────────────────────────

/// Raw matrix rate without the SO(3) wrapper; RK4 stages drift off the
/// manifold, so the integrator needs the formula on plain matrices.
#[inline]
fn matrix_rate<T: Scalar>(f: ConventionFactors, c: Mat3<T>, w: &AngularVelocity<T>) -> Mat3<T> {
    let k = skew(w.omega);
    let rate = match w.frame {
        Frame::A => mat_mul(c, k),
        Frame::B => mat_mul(k, c),
    };
    // α_C ∈ {−1, +1} is its own inverse, so dividing by it is multiplying.
    mat_scale(f.alpha_c.value::<T>(), rate)
}

/// The matrix attitude ODE: `Ċ = α_C⁻¹ · C · ω_A^×` for frame-A rates,
/// `Ċ = α_C⁻¹ · ω_B^× · C` for frame-B ones. Defined for every `α_C`
/// regardless of the quaternion convention.
#[inline]
pub fn matrix_derivative<T: Scalar>(
    f: ConventionFactors,
    c: &RotationMatrix<T>,
    w: &AngularVelocity<T>,
) -> Mat3<T> {
    matrix_rate(f, *c.as_mat3(), w)
}

/// Raw quaternion rate; `gamma` is the pairing's homomorphy sign, already
/// extracted so that stage evaluations skip the convention check.
#[inline]
fn quat_rate<T: Scalar>(
    star: crate::quat::Multiplication,
    gamma: T,
    f: ConventionFactors,
    q: Quaternion<T>,
    w: &AngularVelocity<T>,
) -> Quaternion<T> {
    let coeff = f.alpha_c.value::<T>() * gamma * T::c(0.5);
    let rate = match w.frame {
        Frame::A => mul(star, q, pure(w.omega)),
        Frame::B => mul(star, pure(w.omega), q),
    };
    rate.scaled(coeff)
}

/// The quaternion attitude ODE: `q̇ = α_C⁻¹ · γ · ½ · q ⋆ ℐ*(ω_A)` for
/// frame-A rates, with the operands swapped for frame-B ones. Rejects
/// antihomomorphic pairings, for which no such formula exists.
pub fn quat_derivative<T: Scalar>(
    conv: QmConvention,
    f: ConventionFactors,
    q: &UnitQuaternion<T>,
    w: &AngularVelocity<T>,
) -> Result<Quaternion<T>, KinematicsError> {
    let gamma: T = conv
        .gamma()
        .ok_or(KinematicsError::NotHomomorphic { convention: conv })?;
    Ok(quat_rate(conv.mult, gamma, f, *q.as_quaternion(), w))
}

// ── Angular-velocity recovery ────────────────────────────────────────

/// Reads the angular velocity off a matrix trajectory: `ω = (β · CᵀĊ)∨` for
/// frame A, `ω = (β · ĊCᵀ)∨` for frame B. With rates produced by
/// [`matrix_derivative`], choosing `β = α_C` recovers the input.
pub fn omega_from_matrix_rate<T: Scalar>(
    k: KinematicFactors,
    frame: Frame,
    c: &RotationMatrix<T>,
    cdot: Mat3<T>,
) -> Vec3<T> {
    let ct = transpose(*c.as_mat3());
    let product = match frame {
        Frame::A => mat_mul(ct, cdot),
        Frame::B => mat_mul(cdot, ct),
    };
    vee(mat_scale(k.beta.value::<T>(), product))
}

/// Reads the angular velocity off a quaternion trajectory:
/// `ω = 2 · γ · β · ℐ(q⁻¹ ⋆ q̇)` for frame A and `2 · γ · β · ℐ(q̇ ⋆ q⁻¹)`
/// for frame B, where `γ` is the pairing's homomorphy sign. With rates from
/// [`quat_derivative`], choosing `β = α_C` recovers the input.
pub fn omega_from_quat_rate<T: Scalar>(
    conv: QmConvention,
    k: KinematicFactors,
    frame: Frame,
    q: &UnitQuaternion<T>,
    qdot: Quaternion<T>,
) -> Result<Vec3<T>, KinematicsError> {
    let gamma: T = conv
        .gamma()
        .ok_or(KinematicsError::NotHomomorphic { convention: conv })?;
    let q_inv = q.conjugate();
    let product = match frame {
        Frame::A => mul(conv.mult, *q_inv.as_quaternion(), qdot),
        Frame::B => mul(conv.mult, qdot, *q_inv.as_quaternion()),
    };
    let coeff = T::c(2.0) * gamma * k.beta.value::<T>();
    Ok(vscale(coeff, imag(product)))
}

// ── Integration ──────────────────────────────────────────────────────

/// Projects a near-rotation matrix onto SO(3) by the symmetric Newton sweep
/// `M ← ½ (M + M⁻ᵀ)`, iterated until the Gram defect drops below
/// [`POLAR_TOLERANCE`].
fn polar_orthonormalize<T: Scalar>(mut m: Mat3<T>) -> Mat3<T> {
    let tol = T::c(POLAR_TOLERANCE);
    for _ in 0..POLAR_MAX_SWEEPS {
        let defect = crate::linalg::frobenius_diff(mat_mul(transpose(m), m), mat_identity());
        if defect <= tol {
            break;
        }
        let Some(inv) = crate::linalg::inverse(m) else {
            // RK4 steps of a rotation cannot reach a singular matrix; if one
            // shows up anyway, returning the un-projected value is the least
            // surprising failure.
            break;
        };
        m = mat_scale(T::c(0.5), mat_add(m, transpose(inv)));
    }
    m
}

/// Integrates both attitude ODEs with fixed-step RK4 from `q0` (and
/// `C0 = C(q0)` under `conv.map`) to `t_end`, sampling `omega_fn` at the
/// stage times. The quaternion is renormalized and the matrix polar-projected
/// after every step, so both representations stay on their manifolds
/// regardless of trajectory length. The two are never synchronized from one
/// another — their continued agreement is a property of the convention
/// bookkeeping, not of the integrator.
///
/// The returned trajectory contains the initial state, one sample per full
/// step, and a final partial step if `t_end` is not a multiple of `dt`.
pub fn integrate<T, F>(
    conv: QmConvention,
    f: ConventionFactors,
    q0: &UnitQuaternion<T>,
    omega_fn: F,
    t_end: T,
    dt: T,
) -> Result<Vec<TrajectoryPoint<T>>, KinematicsError>
where
    T: Scalar,
    F: Fn(T) -> AngularVelocity<T>,
{
    if dt <= T::zero() || t_end < T::zero() {
        return Err(KinematicsError::InvalidStep {
            dt: dt.as_f64(),
            t_end: t_end.as_f64(),
        });
    }
    let gamma: T = conv
        .gamma()
        .ok_or(KinematicsError::NotHomomorphic { convention: conv })?;

    let mut q = *q0.as_quaternion();
    let mut m = *quat_to_matrix(conv.map, q0).as_mat3();
    let mut t = T::zero();

    let mut out = Vec::new();
    out.push(TrajectoryPoint {
        t,
        q: *q0,
        c: quat_to_matrix(conv.map, q0),
    });

    // Treat a remainder below one part in 10⁹ of a step as roundoff rather
    // than scheduling a degenerate final step.
    let tiny = dt * T::c(1e-9);
    while t_end - t > tiny {
        let h = (t_end - t).min(dt);
        let h2 = h * T::c(0.5);

        // RK4 stages for the quaternion.
        let k1 = quat_rate(conv.mult, gamma, f, q, &omega_fn(t));
        let k2 = quat_rate(conv.mult, gamma, f, q + k1.scaled(h2), &omega_fn(t + h2));
        let k3 = quat_rate(conv.mult, gamma, f, q + k2.scaled(h2), &omega_fn(t + h2));
        let k4 = quat_rate(conv.mult, gamma, f, q + k3.scaled(h), &omega_fn(t + h));
        let incr = (k1 + k2.scaled(T::c(2.0)) + k3.scaled(T::c(2.0)) + k4).scaled(h / T::c(6.0));
        q = q + incr;
        q = q.scaled(T::one() / q.norm());

        // RK4 stages for the matrix, independently.
        let m1 = matrix_rate(f, m, &omega_fn(t));
        let m2 = matrix_rate(f, mat_add(m, mat_scale(h2, m1)), &omega_fn(t + h2));
        let m3 = matrix_rate(f, mat_add(m, mat_scale(h2, m2)), &omega_fn(t + h2));
        let m4 = matrix_rate(f, mat_add(m, mat_scale(h, m3)), &omega_fn(t + h));
        let mut step = mat_scale(h / T::c(6.0), m1);
        step = mat_add(step, mat_scale(h / T::c(3.0), m2));
        step = mat_add(step, mat_scale(h / T::c(3.0), m3));
        step = mat_add(step, mat_scale(h / T::c(6.0), m4));
        m = polar_orthonormalize(mat_add(m, step));

        t = t + h;
        out.push(TrajectoryPoint {
            t,
            q: UnitQuaternion::normalize(q).expect("renormalized each step"),
            c: RotationMatrix::from_parts_unchecked(m),
        });
    }
    Ok(out)
}

// ── Tests ────────────────────────────────────────────────────────────
