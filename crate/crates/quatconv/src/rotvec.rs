//! Rotation vectors and their convention-dependent images.
//!
//! A rotation vector `φ` (angle times unit axis) fixes a rotation only once
//! two more sign choices are made: `α_C ∈ {−1,+1}` selects between the two
//! transposed matrix interpretations (active rotation vs. change of basis)
//! and `α_φ ∈ {−1,+1}` selects the sign convention of the vector itself.
//! With both explicit, the matrix is `C(φ) = exp(α_C α_φ φ^×)` and the
//! quaternion is `q(φ) = exp(γ α_C α_φ φ/2)`, where `γ` is `+1` for the
//! `(C_H, ⊙)` pairing and `−1` for `(C_S, ⊗)` — and is *only defined* for
//! those two homomorphic pairings, which is why [`rotvec_to_quat`] rejects
//! the other two instead of guessing.

use thiserror::Error;

use crate::linalg::{mat_add, mat_identity, mat_mul, mat_scale, vnorm, vscale, Vec3};
use crate::quat::{exp_quat, pure, Multiplication, UnitQuaternion, SMALL_ANGLE};
use crate::scalar::Scalar;
use crate::so3::{skew, QmConvention, RotationMatrix};

// ── Sign factors ─────────────────────────────────────────────────────

/// A value restricted to `{−1, +1}`, enforced by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The factor as a scalar, `+1` or `−1`.
    #[inline]
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    #[inline]
    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl core::str::FromStr for Sign {
    type Err = RotvecError;

    /// Accepts `+1`, `1`, and `-1` (how the factors appear on a command
    /// line).
    fn from_str(s: &str) -> Result<Self, RotvecError> {
        match s.trim() {
            "+1" | "1" => Ok(Sign::Plus),
            "-1" => Ok(Sign::Minus),
            other => Err(RotvecError::InvalidFactor {
                value: other.to_string(),
            }),
        }
    }
}

impl core::fmt::Display for Sign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// The `(α_C, α_φ)` pair a codebase works in. `α_C = +1` is the "active
/// rotation" reading of matrices, `−1` the "change of basis" one; `α_φ`
/// flips the sign of the rotation vector itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConventionFactors {
    pub alpha_c: Sign,
    pub alpha_phi: Sign,
}

impl ConventionFactors {
    #[inline]
    pub fn new(alpha_c: Sign, alpha_phi: Sign) -> Self {
        ConventionFactors { alpha_c, alpha_phi }
    }

    /// The product `α_C · α_φ` as a scalar — the only combination the
    /// matrix map depends on.
    #[inline]
    pub fn product<T: Scalar>(self) -> T {
        self.alpha_c.value::<T>() * self.alpha_phi.value::<T>()
    }
}

impl Default for ConventionFactors {
    /// `(+1, +1)`: active rotations with the common vector sign.
    fn default() -> Self {
        ConventionFactors::new(Sign::Plus, Sign::Plus)
    }
}

// ── Types ────────────────────────────────────────────────────────────

/// A rotation vector: rotation angle in radians times the unit rotation
/// axis. The zero vector is the identity rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationVector<T> {
    pub phi: Vec3<T>,
}

impl<T: Scalar> RotationVector<T> {
    #[inline]
    pub fn new(phi: Vec3<T>) -> Self {
        RotationVector { phi }
    }

    #[inline]
    pub fn zero() -> Self {
        RotationVector::new([T::zero(); 3])
    }

    /// The rotation angle `‖φ‖`.
    #[inline]
    pub fn angle(self) -> T {
        vnorm(self.phi)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RotvecError {
    /// Quaternion formulas for rotation vectors exist only for the two
    /// homomorphic (map, multiplication) pairings.
    #[error("convention {convention} is antihomomorphic; q(φ) is only defined for (CH, hamilton) and (CS, shuster)")]
    NotHomomorphic { convention: QmConvention },
    /// A convention factor outside `{−1, +1}` was supplied.
    #[error("convention factor must be +1 or -1, got {value:?}")]
    InvalidFactor { value: String },
}

// ── Rotation vector → matrix ─────────────────────────────────────────

/// `C(φ) = exp(α_C α_φ φ^×)`, evaluated in closed Rodrigues form
///
/// `exp(v^×) = 1 + (sin θ / θ)·v^× + ((1 − cos θ)/θ²)·(v^×)²`, `θ = ‖v‖`,
///
/// with both θ-coefficients switched to short series below `θ = 1e-6` to
/// avoid 0/0.
pub fn rotvec_to_matrix<T: Scalar>(
    f: ConventionFactors,
    phi: RotationVector<T>,
) -> RotationMatrix<T> {
    let v = vscale(f.product::<T>(), phi.phi);
    let theta = vnorm(v);
    let (a, b) = if theta < T::c(SMALL_ANGLE) {
        let t2 = theta * theta;
        (
            // sin θ / θ = 1 − θ²/6 + θ⁴/120 − …
            T::one() - t2 / T::c(6.0) + t2 * t2 / T::c(120.0),
            // (1 − cos θ) / θ² = ½ − θ²/24 + θ⁴/720 − …
            T::c(0.5) - t2 / T::c(24.0) + t2 * t2 / T::c(720.0),
        )
    } else {
        (theta.sin() / theta, (T::one() - theta.cos()) / (theta * theta))
    };
    let k = skew(v);
    let mut m = mat_identity();
    m = mat_add(m, mat_scale(a, k));
    m = mat_add(m, mat_scale(b, mat_mul(k, k)));
    RotationMatrix::from_parts_unchecked(m)
}

// ── Rotation vector → quaternion ─────────────────────────────────────

/// The unit quaternion whose image under `conv.map` is `rotvec_to_matrix(f,
/// phi)`: `q(φ) = exp(γ α_C α_φ φ/2)` with `γ = conv.gamma()`. Returned with
/// the canonical double-cover sign (non-negative scalar part).
///
/// Only the homomorphic pairings admit such a formula — for the other two
/// there is no quaternion consistent with both the map and the product, so
/// they are rejected.
pub fn rotvec_to_quat<T: Scalar>(
    conv: QmConvention,
    f: ConventionFactors,
    phi: RotationVector<T>,
) -> Result<UnitQuaternion<T>, RotvecError> {
    let gamma: T = conv
        .gamma()
        .ok_or(RotvecError::NotHomomorphic { convention: conv })?;
    let half_v = vscale(gamma * f.product::<T>() * T::c(0.5), phi.phi);
    let q = exp_quat(pure(half_v));
    // exp of a pure quaternion is unit by construction; normalize only to
    // absorb the last-ulp rounding of sin/cos.
    Ok(UnitQuaternion::normalize(q)
        .expect("exponential of a pure quaternion has unit norm")
        .sign_normalized())
}

// ── Active vs. passive usage table ───────────────────────────────────

/// The three commonly seen quaternion dialects for rotation vectors. The
/// names describe which product the dialect composes with; "mixed" uses the
/// Hamilton-sign exponential for *both* usages but composes with the flipped
/// product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table2Option {
    /// `q = exp(+α_φ φ/2)` for active use, `exp(−α_φ φ/2)` for passive;
    /// composition with `⊙`.
    HamiltonOnly,
    /// `q = exp(+α_φ φ/2)` for both usages; active composes with `⊙`,
    /// passive with `⊗`.
    Mixed,
    /// `q = exp(−α_φ φ/2)` for active use, `exp(+α_φ φ/2)` for passive;
    /// composition with `⊗`.
    ShusterOnly,
}

/// Whether a rotation is used actively (rotating vectors within one frame)
/// or passively (changing coordinates between frames).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Usage {
    Active,
    Passive,
}

/// The quaternion a given dialect writes down for rotation vector `phi` in
/// the given usage, together with the product that dialect composes with.
///
/// Active-usage quaternions represent `exp(+α_φ φ^×)` through the dialect's
/// own map; passive ones represent `exp(−α_φ φ^×)`.
pub fn table2_row<T: Scalar>(
    option: Table2Option,
    usage: Usage,
    alpha_phi: Sign,
    phi: RotationVector<T>,
) -> (UnitQuaternion<T>, Multiplication) {
    let s: T = match (option, usage) {
        (Table2Option::HamiltonOnly, Usage::Active) => T::one(),
        (Table2Option::HamiltonOnly, Usage::Passive) => -T::one(),
        (Table2Option::Mixed, _) => T::one(),
        (Table2Option::ShusterOnly, Usage::Active) => -T::one(),
        (Table2Option::ShusterOnly, Usage::Passive) => T::one(),
    };
    let mult = match (option, usage) {
        (Table2Option::HamiltonOnly, _) => Multiplication::Hamilton,
        (Table2Option::ShusterOnly, _) => Multiplication::Shuster,
        (Table2Option::Mixed, Usage::Active) => Multiplication::Hamilton,
        (Table2Option::Mixed, Usage::Passive) => Multiplication::Shuster,
    };
    let half_v = vscale(s * alpha_phi.value::<T>() * T::c(0.5), phi.phi);
    let q = UnitQuaternion::normalize(exp_quat(pure(half_v)))
        .expect("exponential of a pure quaternion has unit norm");
    (q, mult)
}

// ── Tests ────────────────────────────────────────────────────────────
