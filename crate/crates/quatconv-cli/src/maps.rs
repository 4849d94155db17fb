//! Inverse representation maps composed from library primitives: recovering
//! the principal rotation vector from a quaternion or a rotation matrix.
//! These complete the conversion table `convert` offers and give `check` a
//! round-trip to exercise.

use quatconv::linalg::{vscale, Vec3};
use quatconv::quat::log_quat;
use quatconv::rotvec::{ConventionFactors, RotvecError};
use quatconv::so3::matrix_to_quat;
use quatconv::{MatrixMap, QmConvention, RotationMatrix, UnitQuaternion};

/// Principal rotation vector (angle ≤ π) encoded by a unit quaternion under
/// the given convention: the exponent carries γ·α_C·α_φ·φ/2, so the inverse
/// rescales the quaternion logarithm by the same sign product.
pub fn quat_to_rotvec(
    conv: QmConvention,
    f: ConventionFactors,
    q: &UnitQuaternion<f64>,
) -> Result<Vec3<f64>, RotvecError> {
    let gamma: f64 = conv
        .gamma()
        .ok_or(RotvecError::NotHomomorphic { convention: conv })?;
    // Sign-normalizing first keeps the recovered angle in [0, π] and steers
    // clear of the logarithm's antipodal singularity.
    let half = log_quat(&q.sign_normalized())
        .expect("sign-normalized unit quaternion has a principal logarithm")
        .imag();
    Ok(vscale(2.0 * gamma * f.product::<f64>(), half))
}

/// Principal rotation vector realized by a rotation matrix: the matrix
/// equals `exp(α_C α_φ φ^×)`, so the matrix logarithm — taken through the
/// Hamilton-pairing quaternion, which is exact on SO(3) — is rescaled by
/// α_C·α_φ.
pub fn matrix_to_rotvec(f: ConventionFactors, c: &RotationMatrix<f64>) -> Vec3<f64> {
    let principal = matrix_to_quat(MatrixMap::CH, c).sign_normalized();
    let half = log_quat(&principal)
        .expect("sign-normalized unit quaternion has a principal logarithm")
        .imag();
    vscale(2.0 * f.product::<f64>(), half)
}

// ── Tests ────────────────────────────────────────────────────────────
