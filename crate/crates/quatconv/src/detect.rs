//! Detecting which convention produced observed numeric data.
//!
//! Given samples of a foreign library's behavior — quaternion products
//! `(p, q, r)` with `r = p ⋆ q`, matrix conversions `(q, C(q))`, or inverse
//! conversions `(C, q(C))` — the convention behind them can be identified by
//! comparison against both candidates. A single well-chosen probe suffices
//! in exact arithmetic (`i ⋆ j` is `k` or `−k`; the test quaternion
//! `q_T = √½·(1,0,0,1)` maps to `C_T` under `C_H` and to `C_Tᵀ` under
//! `C_S`), but real data is floating-point and may mix sources, so every
//! sample is checked and *any* contradiction is reported rather than
//! out-voted.

use crate::linalg::frobenius_diff;
use crate::quat::{mul, Multiplication, Quaternion, UnitQuaternion};
use crate::scalar::Scalar;
use crate::so3::{matrix_to_quat, quat_to_matrix, MatrixMap, RotationMatrix};

// ── Tolerances ───────────────────────────────────────────────────────

/// Default match tolerance. Foreign libraries often compute in single
/// precision, so this sits well above f32 rounding while staying far below
/// the Θ(1) separation between the two conventions' predictions.
pub const DETECTION_TOLERANCE: f64 = 1e-6;

// ── Types ────────────────────────────────────────────────────────────

/// One observed product: the claim is `r = p ⋆ q` for an unknown `⋆`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSample<T> {
    pub p: Quaternion<T>,
    pub q: Quaternion<T>,
    pub r: Quaternion<T>,
}

/// One observed quaternion → matrix conversion: the claim is `c = C(q)` for
/// an unknown map `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuatToMatrixSample<T> {
    pub q: UnitQuaternion<T>,
    pub c: RotationMatrix<T>,
}

/// One observed matrix → quaternion conversion: the claim is `q = ±C⁻¹(c)`
/// for an unknown map (the double cover makes the sign meaningless, so
/// matching is sign-tolerant).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixToQuatSample<T> {
    pub c: RotationMatrix<T>,
    pub q: UnitQuaternion<T>,
}

/// Samples of a foreign library's behavior, grouped by kind. Any list may
/// be empty; that kind is then reported as [`Verdict::Unknown`].
#[derive(Debug, Clone, Default)]
pub struct ProbeTable<T> {
    pub product_samples: Vec<ProductSample<T>>,
    pub q2m_samples: Vec<QuatToMatrixSample<T>>,
    pub m2q_samples: Vec<MatrixToQuatSample<T>>,
}

impl<T> ProbeTable<T> {
    pub fn is_empty(&self) -> bool {
        self.product_samples.is_empty()
            && self.q2m_samples.is_empty()
            && self.m2q_samples.is_empty()
    }
}

/// What the evidence for one convention choice amounts to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict<V> {
    /// All discriminating samples agree on this value.
    Found(V),
    /// No samples of this kind were provided.
    Unknown,
    /// Samples exist but every one is consistent with both candidates
    /// (identities, commuting pairs, symmetric matrices, …).
    Indeterminate,
    /// Discriminating samples point at *different* candidates — the data is
    /// mixed-convention, the failure mode detection exists to catch.
    Inconsistent,
    /// Some sample matches neither candidate; the data was not produced by
    /// either convention of the operation under test.
    NotRecognized,
}

impl<V: Copy> Verdict<V> {
    #[inline]
    pub fn found(self) -> Option<V> {
        match self {
            Verdict::Found(v) => Some(v),
            _ => None,
        }
    }
}

/// The combined classification of a probe table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionResult {
    pub multiplication: Verdict<Multiplication>,
    pub map: Verdict<MatrixMap>,
    /// `Some` exactly when both choices were found: whether the detected
    /// pairing satisfies `C(p ⋆ q) = C(p) C(q)`.
    pub homomorphic: Option<bool>,
}

// ── Per-kind detectors ───────────────────────────────────────────────

#[inline]
fn quat_close<T: Scalar>(a: Quaternion<T>, b: Quaternion<T>, tol: T) -> bool {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .all(|(x, y)| (*x - y).abs() <= tol)
}

/// Sign-tolerant closeness for double-cover representatives.
#[inline]
fn quat_close_up_to_sign<T: Scalar>(a: Quaternion<T>, b: Quaternion<T>, tol: T) -> bool {
    quat_close(a, b, tol) || quat_close(a, b.scaled(-T::one()), tol)
}

/// Tallies per-sample two-way match outcomes into a verdict. `matches` maps
/// each sample to (matches candidate 1, matches candidate 2).
fn tally<V: Copy>(outcomes: impl Iterator<Item = (bool, bool)>, c1: V, c2: V) -> Verdict<V> {
    let mut saw_any = false;
    let mut votes1 = false;
    let mut votes2 = false;
    for (m1, m2) in outcomes {
        saw_any = true;
        match (m1, m2) {
            (true, true) => {} // non-discriminating; consistent with both
            (true, false) => votes1 = true,
            (false, true) => votes2 = true,
            (false, false) => return Verdict::NotRecognized,
        }
    }
    match (saw_any, votes1, votes2) {
        (false, _, _) => Verdict::Unknown,
        (true, false, false) => Verdict::Indeterminate,
        (true, true, true) => Verdict::Inconsistent,
        (true, true, false) => Verdict::Found(c1),
        (true, false, true) => Verdict::Found(c2),
    }
}

/// Which multiplication reproduces every product sample within `tol`
/// componentwise. Samples where both products agree (commuting arguments)
/// carry no information and are skipped.
pub fn detect_multiplication<T: Scalar>(
    samples: &[ProductSample<T>],
    tol: T,
) -> Verdict<Multiplication> {
    tally(
        samples.iter().map(|s| {
            let rh = mul(Multiplication::Hamilton, s.p, s.q);
            let rs = mul(Multiplication::Shuster, s.p, s.q);
            (quat_close(s.r, rh, tol), quat_close(s.r, rs, tol))
        }),
        Multiplication::Hamilton,
        Multiplication::Shuster,
    )
}

/// Which map reproduces every `(q, C)` sample within `tol` in Frobenius
/// norm. Samples with symmetric matrices (real or pure `q`) match both maps
/// and are skipped.
pub fn detect_quat_to_matrix<T: Scalar>(
    samples: &[QuatToMatrixSample<T>],
    tol: T,
) -> Verdict<MatrixMap> {
    tally(
        samples.iter().map(|s| {
            let ch = quat_to_matrix(MatrixMap::CH, &s.q);
            let cs = quat_to_matrix(MatrixMap::CS, &s.q);
            (
                frobenius_diff(*s.c.as_mat3(), *ch.as_mat3()) <= tol,
                frobenius_diff(*s.c.as_mat3(), *cs.as_mat3()) <= tol,
            )
        }),
        MatrixMap::CH,
        MatrixMap::CS,
    )
}

/// Which map's inverse reproduces every `(C, q)` sample within `tol`,
/// comparing up to global sign (foreign libraries are free to return either
/// double-cover representative).
pub fn detect_matrix_to_quat<T: Scalar>(
    samples: &[MatrixToQuatSample<T>],
    tol: T,
) -> Verdict<MatrixMap> {
    tally(
        samples.iter().map(|s| {
            let rh = matrix_to_quat(MatrixMap::CH, &s.c);
            let rs = matrix_to_quat(MatrixMap::CS, &s.c);
            let observed = *s.q.as_quaternion();
            (
                quat_close_up_to_sign(observed, *rh.as_quaternion(), tol),
                quat_close_up_to_sign(observed, *rs.as_quaternion(), tol),
            )
        }),
        MatrixMap::CH,
        MatrixMap::CS,
    )
}

// ── Combined classification ──────────────────────────────────────────

/// Merges the verdicts of the two map-direction detectors. Agreement (or
/// one side lacking evidence) yields the informative verdict; disagreement
/// between two `Found`s is itself an inconsistency; otherwise the more
/// severe diagnosis wins.
fn merge_map_verdicts(a: Verdict<MatrixMap>, b: Verdict<MatrixMap>) -> Verdict<MatrixMap> {
    use Verdict::*;
    match (a, b) {
        (Found(x), Found(y)) if x == y => Found(x),
        (Found(_), Found(_)) => Inconsistent,
        // Unknown and Indeterminate both mean "no discriminating evidence";
        // a Found on the other side stands.
        (Found(x), Unknown | Indeterminate) | (Unknown | Indeterminate, Found(x)) => Found(x),
        (NotRecognized, _) | (_, NotRecognized) => NotRecognized,
        (Inconsistent, _) | (_, Inconsistent) => Inconsistent,
        (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
        (Unknown, Unknown) => Unknown,
    }
}

/// Classifies a probe table: detects the multiplication from product
/// samples and the map from both conversion directions, then derives the
/// homomorphy verdict when both succeeded. Failures in one field never
/// abort the others.
pub fn classify<T: Scalar>(table: &ProbeTable<T>, tol: T) -> DetectionResult {
    let multiplication = detect_multiplication(&table.product_samples, tol);
    let q2m = detect_quat_to_matrix(&table.q2m_samples, tol);
    let m2q = detect_matrix_to_quat(&table.m2q_samples, tol);
    let map = merge_map_verdicts(q2m, m2q);
    let homomorphic = match (multiplication.found(), map.found()) {
        (Some(mult), Some(map)) => {
            Some(crate::so3::QmConvention::new(map, mult).is_homomorphic())
        }
        _ => None,
    };
    DetectionResult {
        multiplication,
        map,
        homomorphic,
    }
}

// ── Tests ────────────────────────────────────────────────────────────
