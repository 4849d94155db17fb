//! Minimal fixed-size 3-vector and 3×3-matrix helpers.
//!
//! Deliberately bare arrays plus free functions: every formula in this crate
//! is a small closed-form expression over three components or nine entries,
//! and keeping them as plain arrays keeps those formulas readable without
//! pulling in a linear-algebra dependency.

use crate::scalar::Scalar;

pub type Vec3<T> = [T; 3];
pub type Mat3<T> = [[T; 3]; 3];

// ── Vectors ──────────────────────────────────────────────────────────

#[inline]
pub fn vzero<T: Scalar>() -> Vec3<T> {
    [T::zero(); 3]
}

#[inline]
pub fn vadd<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn vsub<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn vneg<T: Scalar>(a: Vec3<T>) -> Vec3<T> {
    [-a[0], -a[1], -a[2]]
}

#[inline]
pub fn vscale<T: Scalar>(s: T, a: Vec3<T>) -> Vec3<T> {
    [s * a[0], s * a[1], s * a[2]]
}

#[inline]
pub fn dot<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn vnorm<T: Scalar>(a: Vec3<T>) -> T {
    dot(a, a).sqrt()
}

/// Largest absolute component difference, the comparison used by the
/// detectors and tests.
#[inline]
pub fn vmax_abs_diff<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> T {
    let mut m = T::zero();
    for i in 0..3 {
        m = m.max((a[i] - b[i]).abs());
    }
    m
}

// ── Matrices ─────────────────────────────────────────────────────────

#[inline]
pub fn mat_zero<T: Scalar>() -> Mat3<T> {
    [[T::zero(); 3]; 3]
}

#[inline]
pub fn mat_identity<T: Scalar>() -> Mat3<T> {
    let mut m = mat_zero();
    m[0][0] = T::one();
    m[1][1] = T::one();
    m[2][2] = T::one();
    m
}

#[inline]
pub fn mat_add<T: Scalar>(a: Mat3<T>, b: Mat3<T>) -> Mat3<T> {
    let mut m = mat_zero();
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = a[r][c] + b[r][c];
        }
    }
    m
}

#[inline]
pub fn mat_sub<T: Scalar>(a: Mat3<T>, b: Mat3<T>) -> Mat3<T> {
    let mut m = mat_zero();
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = a[r][c] - b[r][c];
        }
    }
    m
}

#[inline]
pub fn mat_scale<T: Scalar>(s: T, a: Mat3<T>) -> Mat3<T> {
    let mut m = mat_zero();
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = s * a[r][c];
        }
    }
    m
}

pub fn mat_mul<T: Scalar>(a: Mat3<T>, b: Mat3<T>) -> Mat3<T> {
    let mut m = mat_zero();
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c];
        }
    }
    m
}

#[inline]
pub fn mat_vec<T: Scalar>(a: Mat3<T>, v: Vec3<T>) -> Vec3<T> {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

#[inline]
pub fn transpose<T: Scalar>(a: Mat3<T>) -> Mat3<T> {
    let mut m = mat_zero();
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = a[c][r];
        }
    }
    m
}

/// Outer product `a bᵀ`.
#[inline]
pub fn outer<T: Scalar>(a: Vec3<T>, b: Vec3<T>) -> Mat3<T> {
    let mut m = mat_zero();
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = a[r] * b[c];
        }
    }
    m
}

pub fn det<T: Scalar>(a: Mat3<T>) -> T {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Inverse via the adjugate; returns `None` when the determinant is
/// numerically zero. Only used on (near-)orthogonal matrices where the
/// determinant is near ±1.
pub fn inverse<T: Scalar>(a: Mat3<T>) -> Option<Mat3<T>> {
    let d = det(a);
    if d.abs() < T::min_positive_value().sqrt() {
        return None;
    }
    let inv_d = T::one() / d;
    let mut m = mat_zero();
    m[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) * inv_d;
    m[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) * inv_d;
    m[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) * inv_d;
    m[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) * inv_d;
    m[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) * inv_d;
    m[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) * inv_d;
    m[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) * inv_d;
    m[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) * inv_d;
    m[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) * inv_d;
    Some(m)
}

/// Frobenius norm of `a − b`.
pub fn frobenius_diff<T: Scalar>(a: Mat3<T>, b: Mat3<T>) -> T {
    let mut s = T::zero();
    for r in 0..3 {
        for c in 0..3 {
            let d = a[r][c] - b[r][c];
            s = s + d * d;
        }
    }
    s.sqrt()
}

/// Largest absolute entry difference.
pub fn mat_max_abs_diff<T: Scalar>(a: Mat3<T>, b: Mat3<T>) -> T {
    let mut m = T::zero();
    for r in 0..3 {
        for c in 0..3 {
            m = m.max((a[r][c] - b[r][c]).abs());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-15;

    #[test]
    fn cross_follows_right_hand_rule() {
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        assert_eq!(cross(e1, e2), [0.0, 0.0, 1.0]);
        assert_eq!(cross(e2, e1), [0.0, 0.0, -1.0]);
    }

    #[test]
    fn cross_is_perpendicular_to_both_arguments() {
        let a = [0.3f64, -1.2, 2.0];
        let b = [1.7f64, 0.4, -0.9];
        let c = cross(a, b);
        assert!(dot(a, c).abs() < EPS);
        assert!(dot(b, c).abs() < EPS);
    }

    #[test]
    fn matrix_product_against_hand_computed_entries() {
        let a = [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]];
        let b = [[9.0, 8.0, 7.0], [6.0, 5.0, 4.0], [3.0, 2.0, 1.0]];
        let ab = mat_mul(a, b);
        assert_eq!(ab[0], [30.0, 24.0, 18.0]);
        assert_eq!(ab[1], [84.0, 69.0, 54.0]);
        assert_eq!(ab[2], [138.0, 114.0, 90.0]);
    }

    #[test]
    fn inverse_times_original_is_identity() {
        let a = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        let inv = inverse(a).unwrap();
        assert!(frobenius_diff(mat_mul(inv, a), mat_identity()) < EPS);
    }

    #[test]
    fn inverse_rejects_singular_matrix() {
        let a = [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]];
        assert!(inverse(a).is_none());
    }

    #[test]
    fn determinant_of_rotation_is_one() {
        let a = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(det(a), 1.0);
    }

    #[test]
    fn outer_product_entries() {
        let m = outer([1.0, 2.0, 3.0], [4.0, 5.0, 6.0]);
        assert_eq!(m[1][2], 12.0);
        assert_eq!(m[2][0], 12.0);
        assert_eq!(m[0][1], 5.0);
    }
}
