//! Quaternions and rotations under both multiplication conventions.
//!
//! Rotation code in the wild disagrees on two independent choices:
//!
//! * **which quaternion product** is in use — Hamilton's (`i ⊙ j = k`) or the
//!   flipped product (`i ⊗ j = −k`) common in the aerospace literature — and
//! * **which map** takes a unit quaternion to a rotation matrix: `C_H` or its
//!   transpose `C_S`.
//!
//! Either choice alone is harmless; mixing conventions between libraries is
//! how signs get silently flipped and rotations end up transposed. This crate
//! makes both choices explicit values ([`quat::Multiplication`],
//! [`so3::MatrixMap`], bundled as [`so3::QmConvention`]) and keeps every
//! formula — rotation-vector maps, kinematics, integrators — parameterized by
//! them. On top of the math sit tools for working with *other people's*
//! conventions: detecting them from numeric probes ([`detect`]), migrating
//! serialized quaternion datasets ([`dataset`]), and rewriting code fragments
//! in a small expression language ([`dsl`]).
//!
//! All core types are generic over the scalar (`f32` or `f64`) through the
//! [`scalar::Scalar`] trait; `f64` aliases such as [`Quaternion64`] are
//! re-exported at the crate root.

pub mod dataset;
pub mod detect;
pub mod dsl;
pub mod kinematics;
pub mod linalg;
pub mod probes;
pub mod quat;
pub mod rotvec;
pub mod scalar;
pub mod so3;

pub use dataset::{ComponentOrder, DatasetError, DatasetHeader, QuatDataset};
pub use detect::{DetectionResult, ProbeTable, Verdict};
pub use kinematics::{AngularVelocity, Frame, KinematicFactors, KinematicsError};
pub use quat::{Multiplication, QuatError, Quaternion, UnitQuaternion};
pub use rotvec::{ConventionFactors, RotationVector, RotvecError, Sign};
pub use so3::{MatrixMap, QmConvention, RotationMatrix, So3Error};

/// Double-precision quaternion.
pub type Quaternion64 = Quaternion<f64>;
/// Single-precision quaternion.
pub type Quaternion32 = Quaternion<f32>;
/// Double-precision unit quaternion.
pub type UnitQuaternion64 = UnitQuaternion<f64>;
/// Single-precision unit quaternion.
pub type UnitQuaternion32 = UnitQuaternion<f32>;
/// Double-precision rotation matrix.
pub type RotationMatrix64 = RotationMatrix<f64>;
/// Single-precision rotation matrix.
pub type RotationMatrix32 = RotationMatrix<f32>;
/// Double-precision rotation vector.
pub type RotationVector64 = RotationVector<f64>;
/// Single-precision rotation vector.
pub type RotationVector32 = RotationVector<f32>;
