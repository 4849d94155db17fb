//! Rotation matrices and the two quaternion→matrix maps.
//!
//! A unit quaternion can be sent to SO(3) by either of two maps, `C_H` and
//! `C_S`, which are transposes of one another (equivalently,
//! `C_S(q) = C_H(q̄)`). Pairing a map with a multiplication gives a
//! [`QmConvention`]; exactly two of the four pairings are homomorphic, i.e.
//! satisfy `C(p ⋆ q) = C(p) · C(q)`:
//!
//! * `(C_H, ⊙)` — the Hamilton pairing, and
//! * `(C_S, ⊗)` — the flipped pairing.
//!
//! The other two pairings reverse the order of matrix products
//! (`C(p ⋆ q) = C(q) · C(p)`); code mixing such a pair works only while every
//! composition site remembers to swap, which is precisely the failure mode
//! this crate exists to flush out.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    frobenius_diff, mat_add, mat_identity, mat_mul, mat_scale, outer, transpose, Mat3, Vec3,
};
use crate::quat::{conjugate, imag, mul, pure, Multiplication, Quaternion, UnitQuaternion};
use crate::scalar::Scalar;

// ── Tolerances ───────────────────────────────────────────────────────

/// Accepted Frobenius-norm deviation of `CᵀC` from the identity (and of
/// `det C` from 1) when validating a [`RotationMatrix`]. Loose enough to
/// admit matrices propagated through an integrator, tight enough to reject
/// reflections and shears.
pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-6;

// ── Types ────────────────────────────────────────────────────────────

/// Which unit-quaternion → SO(3) map is meant. The two maps are transposes
/// of each other: `C_S(q) = C_H(q)ᵀ = C_H(q̄)`. Serialized in dataset
/// headers as `"CH"` / `"CS"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixMap {
    /// The map homomorphic with the Hamilton product.
    CH,
    /// The transposed map, homomorphic with the flipped product.
    CS,
}

impl MatrixMap {
    /// The other map.
    #[inline]
    pub fn flipped(self) -> Self {
        match self {
            MatrixMap::CH => MatrixMap::CS,
            MatrixMap::CS => MatrixMap::CH,
        }
    }
}

impl core::fmt::Display for MatrixMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MatrixMap::CH => write!(f, "CH"),
            MatrixMap::CS => write!(f, "CS"),
        }
    }
}

/// A (map, multiplication) pairing — the full convention choice a codebase
/// makes, usually implicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QmConvention {
    pub map: MatrixMap,
    pub mult: Multiplication,
}

impl QmConvention {
    pub const HAMILTON_CH: QmConvention = QmConvention {
        map: MatrixMap::CH,
        mult: Multiplication::Hamilton,
    };
    pub const SHUSTER_CS: QmConvention = QmConvention {
        map: MatrixMap::CS,
        mult: Multiplication::Shuster,
    };

    #[inline]
    pub fn new(map: MatrixMap, mult: Multiplication) -> Self {
        QmConvention { map, mult }
    }

    /// Whether `C(p ⋆ q) = C(p) C(q)` holds for this pairing. The
    /// homomorphic pairings are `(CH, ⊙)` and `(CS, ⊗)`; the other two
    /// reverse the matrix order.
    #[inline]
    pub fn is_homomorphic(self) -> bool {
        matches!(
            (self.map, self.mult),
            (MatrixMap::CH, Multiplication::Hamilton) | (MatrixMap::CS, Multiplication::Shuster)
        )
    }

    /// The sign `γ` relating this pairing's quaternion formulas to the
    /// Hamilton ones: `+1` for `(CH, ⊙)`, `−1` for `(CS, ⊗)`. Only defined
    /// for the homomorphic pairings.
    #[inline]
    pub fn gamma<T: Scalar>(self) -> Option<T> {
        match (self.map, self.mult) {
            (MatrixMap::CH, Multiplication::Hamilton) => Some(T::one()),
            (MatrixMap::CS, Multiplication::Shuster) => Some(-T::one()),
            _ => None,
        }
    }
}

impl core::fmt::Display for QmConvention {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {})", self.map, self.mult)
    }
}

/// A validated member of SO(3): orthonormal with determinant +1 within
/// [`ORTHONORMALITY_TOLERANCE`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix<T>(Mat3<T>);

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum So3Error {
    /// The candidate matrix is not orthonormal with determinant +1.
    #[error("matrix is not a rotation: ‖CᵀC − 1‖ = {orthonormality_defect}, det − 1 = {det_defect}")]
    NotRotation {
        orthonormality_defect: f64,
        det_defect: f64,
    },
}

impl<T: Scalar> RotationMatrix<T> {
    /// Validates and wraps a candidate rotation matrix.
    pub fn new(m: Mat3<T>) -> Result<Self, So3Error> {
        let gram_defect = frobenius_diff(mat_mul(transpose(m), m), mat_identity());
        let det_defect = crate::linalg::det(m) - T::one();
        let tol = T::c(ORTHONORMALITY_TOLERANCE);
        if gram_defect > tol || det_defect.abs() > tol {
            return Err(So3Error::NotRotation {
                orthonormality_defect: gram_defect.as_f64(),
                det_defect: det_defect.as_f64(),
            });
        }
        Ok(RotationMatrix(m))
    }

    /// Wraps a matrix known by construction to be a rotation (e.g. the image
    /// of a unit quaternion under `C_H`). Not exported: callers outside this
    /// crate go through [`RotationMatrix::new`].
    #[inline]
    pub(crate) fn from_parts_unchecked(m: Mat3<T>) -> Self {
        RotationMatrix(m)
    }

    #[inline]
    pub fn identity() -> Self {
        RotationMatrix(mat_identity())
    }

    #[inline]
    pub fn as_mat3(&self) -> &Mat3<T> {
        &self.0
    }

    #[inline]
    pub fn into_inner(self) -> Mat3<T> {
        self.0
    }

    /// The inverse rotation; for rotation matrices this is the transpose.
    #[inline]
    pub fn transposed(&self) -> Self {
        RotationMatrix(transpose(self.0))
    }

    /// Matrix composition `self · rhs`. Closed on SO(3) up to rounding, so no
    /// revalidation is performed.
    #[inline]
    pub fn compose(&self, rhs: &Self) -> Self {
        RotationMatrix(mat_mul(self.0, rhs.0))
    }

    /// Applies the rotation to a column vector.
    #[inline]
    pub fn apply(&self, v: Vec3<T>) -> Vec3<T> {
        crate::linalg::mat_vec(self.0, v)
    }
}

// ── Skew-symmetric embeddings ────────────────────────────────────────

/// The cross-product matrix `a^×` with `a^× b = a × b`:
///
/// ```text
///        ⎡  0   −a₃   a₂ ⎤
/// a^× =  ⎢  a₃    0  −a₁ ⎥
///        ⎣ −a₂   a₁    0 ⎦
/// ```
#[inline]
pub fn skew<T: Scalar>(a: Vec3<T>) -> Mat3<T> {
    let o = T::zero();
    [
        [o, -a[2], a[1]],
        [a[2], o, -a[0]],
        [-a[1], a[0], o],
    ]
}

/// The opposite-sign embedding `[[a]] = −a^×`, preferred in texts that use
/// the flipped quaternion product.
#[inline]
pub fn skew_flipped<T: Scalar>(a: Vec3<T>) -> Mat3<T> {
    skew([-a[0], -a[1], -a[2]])
}

/// Extracts `a` from `a^×` (the inverse of [`skew`] on skew-symmetric
/// matrices; applied to a general matrix it reads the same entries).
#[inline]
pub fn vee<T: Scalar>(m: Mat3<T>) -> Vec3<T> {
    [m[2][1], m[0][2], m[1][0]]
}

// ── Quaternion → matrix ──────────────────────────────────────────────

/// The image of a unit quaternion under the chosen map:
///
/// `C(q) = q_w²·1 ± 2 q_w q⃗^× + (q⃗^×)² + q⃗ q⃗ᵀ`
///
/// with `+` for `C_H` and `−` for `C_S` (the two images are transposes).
pub fn quat_to_matrix<T: Scalar>(map: MatrixMap, q: &UnitQuaternion<T>) -> RotationMatrix<T> {
    let u = q.as_quaternion();
    let v = u.imag();
    let k = skew(v);
    let sign = match map {
        MatrixMap::CH => T::one(),
        MatrixMap::CS => -T::one(),
    };
    let mut m = mat_scale(u.w * u.w, mat_identity());
    m = mat_add(m, mat_scale(sign * T::c(2.0) * u.w, k));
    m = mat_add(m, mat_mul(k, k));
    m = mat_add(m, outer(v, v));
    RotationMatrix::from_parts_unchecked(m)
}

/// Rotates a vector by the quaternion sandwich `q ⋆ ℐ*(x) ⋆ q̄` and extracts
/// the imaginary part. For the homomorphic pairings this equals
/// `C(q) · x`; for the antihomomorphic ones it equals `C(q)ᵀ · x`, which is
/// exactly the transposition bug the pairing check exists to catch.
pub fn rotate<T: Scalar>(star: Multiplication, q: &UnitQuaternion<T>, x: Vec3<T>) -> Vec3<T> {
    let u = *q.as_quaternion();
    imag(mul(star, mul(star, u, pure(x)), conjugate(u)))
}

// ── Matrix → quaternion ──────────────────────────────────────────────

/// Recovers the unit quaternion mapping to `c` under the chosen map, using
/// the largest-pivot (Shepperd) branch selection for numerical stability.
/// The sign ambiguity of the double cover is resolved canonically
/// (non-negative scalar part; see [`UnitQuaternion::sign_normalized`]).
///
/// Infallible: non-rotations are rejected earlier, at [`RotationMatrix::new`].
pub fn matrix_to_quat<T: Scalar>(map: MatrixMap, c: &RotationMatrix<T>) -> UnitQuaternion<T> {
    let q = shepperd_ch(c.as_mat3());
    let q = match map {
        MatrixMap::CH => q,
        // C_S(q) = C_H(q̄): recover the C_H preimage, then conjugate.
        MatrixMap::CS => q.conjugate(),
    };
    // The pivot choice guarantees the dominant component is at least ½, so
    // the norm is bounded away from zero.
    UnitQuaternion::normalize(q)
        .expect("largest-pivot recovery keeps the norm positive")
        .sign_normalized()
}

/// Largest-pivot recovery of the `C_H` preimage. Four algebraically
/// equivalent branches exist (one per diagonal dominance pattern); choosing
/// the one with the largest pivot keeps every division well-conditioned for
/// all rotation angles, including the 180° worst case for the trace branch.
fn shepperd_ch<T: Scalar>(m: &Mat3<T>) -> Quaternion<T> {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let half = T::c(0.5);
    let quarter = T::c(0.25);

    // Pivot candidates: 4w², 4x², 4y², 4z², each up to the same additive 1.
    let pw = tr;
    let px = T::c(2.0) * m[0][0] - tr;
    let py = T::c(2.0) * m[1][1] - tr;
    let pz = T::c(2.0) * m[2][2] - tr;

    if pw >= px && pw >= py && pw >= pz {
        let w = half * (T::one() + tr).sqrt();
        let s = quarter / w;
        Quaternion::new(
            w,
            (m[2][1] - m[1][2]) * s,
            (m[0][2] - m[2][0]) * s,
            (m[1][0] - m[0][1]) * s,
        )
    } else if px >= py && px >= pz {
        let x = half * (T::one() + px).sqrt();
        let s = quarter / x;
        Quaternion::new(
            (m[2][1] - m[1][2]) * s,
            x,
            (m[0][1] + m[1][0]) * s,
            (m[0][2] + m[2][0]) * s,
        )
    } else if py >= pz {
        let y = half * (T::one() + py).sqrt();
        let s = quarter / y;
        Quaternion::new(
            (m[0][2] - m[2][0]) * s,
            (m[0][1] + m[1][0]) * s,
            y,
            (m[1][2] + m[2][1]) * s,
        )
    } else {
        let z = half * (T::one() + pz).sqrt();
        let s = quarter / z;
        Quaternion::new(
            (m[1][0] - m[0][1]) * s,
            (m[0][2] + m[2][0]) * s,
            (m[1][2] + m[2][1]) * s,
            z,
        )
    }
}

// ── Composition diagnostics ──────────────────────────────────────────

/// Both sides of the homomorphy equation for a pairing: the matrix of the
/// product, `C(p ⋆ q)`, and the product of the matrices, `C(p) · C(q)`.
/// They agree iff the pairing is homomorphic; for the antihomomorphic
/// pairings the first equals `C(q) · C(p)` instead.
pub fn compose_check<T: Scalar>(
    conv: QmConvention,
    p: &UnitQuaternion<T>,
    q: &UnitQuaternion<T>,
) -> (RotationMatrix<T>, RotationMatrix<T>) {
    let product = UnitQuaternion::mul_unit(conv.mult, p, q);
    let lhs = quat_to_matrix(conv.map, &product);
    let rhs = quat_to_matrix(conv.map, p).compose(&quat_to_matrix(conv.map, q));
    (lhs, rhs)
}

// ── Equivalent expansions of the quaternion → matrix formula ─────────

/// Three algebraically equal ways to expand `C_H(q)` for a **unit**
/// quaternion. They are kept side by side because mismatched expansions in
/// different codebases are a common source of "almost the same matrix" bugs:
/// all three agree on unit quaternions but the first two diverge off the
/// unit sphere.
pub mod euler_rodrigues {
    use super::*;

    /// `C_H(q) = q_w²·1 + 2 q_w q⃗^× + (q⃗^×)² + q⃗ q⃗ᵀ` — valid whether or
    /// not `‖q‖ = 1` (it computes `‖q‖² C` in general).
    pub fn operator_form<T: Scalar>(q: Quaternion<T>) -> Mat3<T> {
        let v = q.imag();
        let k = skew(v);
        let mut m = mat_scale(q.w * q.w, mat_identity());
        m = mat_add(m, mat_scale(T::c(2.0) * q.w, k));
        m = mat_add(m, mat_mul(k, k));
        m = mat_add(m, outer(v, v));
        m
    }

    /// `C_H(q) = (2 q_w² − 1)·1 + 2 q_w q⃗^× + 2 q⃗ q⃗ᵀ` — uses
    /// `(q⃗^×)² = q⃗ q⃗ᵀ − ‖q⃗‖²·1` and unit norm, so valid only on the unit
    /// sphere.
    pub fn unit_form<T: Scalar>(q: Quaternion<T>) -> Mat3<T> {
        let v = q.imag();
        let two = T::c(2.0);
        let mut m = mat_scale(two * q.w * q.w - T::one(), mat_identity());
        m = mat_add(m, mat_scale(two * q.w, skew(v)));
        m = mat_add(m, mat_scale(two, outer(v, v)));
        m
    }

    /// The fully expanded entries in terms of `(w, x, y, z)`:
    ///
    /// ```text
    /// ⎡ 1−2y²−2z²   2(xy−zw)   2(xz+yw) ⎤
    /// ⎢ 2(xy+zw)   1−2x²−2z²   2(yz−xw) ⎥
    /// ⎣ 2(xz−yw)    2(yz+xw)  1−2x²−2y² ⎦
    /// ```
    pub fn entry_form<T: Scalar>(q: Quaternion<T>) -> Mat3<T> {
        let (w, x, y, z) = (q.w, q.x, q.y, q.z);
        let two = T::c(2.0);
        let one = T::one();
        [
            [
                one - two * (y * y + z * z),
                two * (x * y - z * w),
                two * (x * z + y * w),
            ],
            [
                two * (x * y + z * w),
                one - two * (x * x + z * z),
                two * (y * z - x * w),
            ],
            [
                two * (x * z - y * w),
                two * (y * z + x * w),
                one - two * (x * x + y * y),
            ],
        ]
    }
}

// ── Tests ────────────────────────────────────────────────────────────
