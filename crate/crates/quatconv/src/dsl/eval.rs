//! Strict evaluation of formula trees against concrete bindings.

use super::ast::{Expr, Tool, Type};
use crate::linalg::{vadd, vneg, vnorm, vscale, Vec3};
use crate::quat::{self, QuatError, Quaternion};
use std::collections::HashMap;
use thiserror::Error;

/// Absolute componentwise tolerance used by the `==` operator.
///
/// Formula comparisons exist to state identities such as "these two
/// products describe the same rotation", and those identities hold to
/// roundoff, not to the last bit.
pub const EQ_TOLERANCE: f64 = 1e-12;

// ── Values ──────────────────────────────────────────────────────────────────

/// A concrete runtime value: the input to, or result of, a tool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Quat(Quaternion<f64>),
    Real(f64),
    Vec3(Vec3<f64>),
    Bool(bool),
}

impl Value {
    pub fn type_of(&self) -> Type {
        match self {
            Value::Quat(_) => Type::Quat,
            Value::Real(_) => Type::Real,
            Value::Vec3(_) => Type::Vec3,
            Value::Bool(_) => Type::Bool,
        }
    }
}

// ── Errors ──────────────────────────────────────────────────────────────────

/// Why evaluation failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no binding supplied for input `{name}`")]
    MissingBinding { name: String },
    #[error("input `{name}` expects {expected}, got {got}")]
    TypeMismatch {
        name: String,
        expected: Type,
        got: Type,
    },
    /// The tree violates the typing rules the parser enforces; only
    /// hand-built expressions can reach this.
    #[error("ill-typed expression: {message}")]
    IllTyped { message: String },
    #[error("arithmetic failed: {0}")]
    Numeric(#[from] QuatError),
}

fn ill_typed(message: impl Into<String>) -> EvalError {
    EvalError::IllTyped {
        message: message.into(),
    }
}

// ── Evaluation ──────────────────────────────────────────────────────────────

/// Evaluate a tool against bindings for its declared inputs.
///
/// Every declared input must be bound with the declared type, whether or not
/// the expression mentions it; extra bindings are ignored.
pub fn evaluate(tool: &Tool, bindings: &HashMap<String, Value>) -> Result<Value, EvalError> {
    for (name, expected) in &tool.inputs {
        match bindings.get(name) {
            None => {
                return Err(EvalError::MissingBinding { name: name.clone() });
            }
            Some(value) if value.type_of() != *expected => {
                return Err(EvalError::TypeMismatch {
                    name: name.clone(),
                    expected: *expected,
                    got: value.type_of(),
                });
            }
            Some(_) => {}
        }
    }
    eval_expr(&tool.expr, bindings)
}

fn as_quat(value: Value, what: &str) -> Result<Quaternion<f64>, EvalError> {
    match value {
        Value::Quat(q) => Ok(q),
        other => Err(ill_typed(format!("{what} needs a quat, got {}", other.type_of()))),
    }
}

fn eval_expr(expr: &Expr, bindings: &HashMap<String, Value>) -> Result<Value, EvalError> {
    match expr {
        Expr::ConstQuat(q) => Ok(Value::Quat(*q)),
        Expr::ConstReal(r) => Ok(Value::Real(*r)),
        Expr::ConstVec3(v) => Ok(Value::Vec3(*v)),
        Expr::Var(name, _) => bindings
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::MissingBinding { name: name.clone() }),
        Expr::Mul(star, a, b) => {
            let p = as_quat(eval_expr(a, bindings)?, "product")?;
            let q = as_quat(eval_expr(b, bindings)?, "product")?;
            Ok(Value::Quat(quat::mul(*star, p, q)))
        }
        Expr::Add(a, b) => {
            let lhs = eval_expr(a, bindings)?;
            let rhs = eval_expr(b, bindings)?;
            match (lhs, rhs) {
                (Value::Quat(p), Value::Quat(q)) => Ok(Value::Quat(p + q)),
                (Value::Real(x), Value::Real(y)) => Ok(Value::Real(x + y)),
                (Value::Vec3(u), Value::Vec3(v)) => Ok(Value::Vec3(vadd(u, v))),
                (l, r) => Err(ill_typed(format!(
                    "cannot add {} and {}",
                    l.type_of(),
                    r.type_of()
                ))),
            }
        }
        Expr::Neg(a) => match eval_expr(a, bindings)? {
            Value::Quat(q) => Ok(Value::Quat(-q)),
            Value::Real(x) => Ok(Value::Real(-x)),
            Value::Vec3(v) => Ok(Value::Vec3(vneg(v))),
            Value::Bool(_) => Err(ill_typed("cannot negate a comparison")),
        },
        Expr::Scale(coefficient, operand) => {
            let s = match eval_expr(coefficient, bindings)? {
                Value::Real(s) => s,
                other => {
                    return Err(ill_typed(format!(
                        "scale coefficient must be real, got {}",
                        other.type_of()
                    )));
                }
            };
            match eval_expr(operand, bindings)? {
                Value::Quat(q) => Ok(Value::Quat(q.scaled(s))),
                Value::Real(x) => Ok(Value::Real(s * x)),
                Value::Vec3(v) => Ok(Value::Vec3(vscale(s, v))),
                Value::Bool(_) => Err(ill_typed("cannot scale a comparison")),
            }
        }
        Expr::Conj(a) => {
            let q = as_quat(eval_expr(a, bindings)?, "conj")?;
            Ok(Value::Quat(q.conjugate()))
        }
        Expr::Inv(a) => {
            let q = as_quat(eval_expr(a, bindings)?, "inv")?;
            Ok(Value::Quat(q.inverse()?))
        }
        Expr::Imag(a) => {
            let q = as_quat(eval_expr(a, bindings)?, "imag")?;
            Ok(Value::Vec3(q.imag()))
        }
        Expr::Pure(a) => match eval_expr(a, bindings)? {
            Value::Vec3(v) => Ok(Value::Quat(quat::pure(v))),
            other => Err(ill_typed(format!(
                "pure needs a vec3, got {}",
                other.type_of()
            ))),
        },
        Expr::Norm(a) => match eval_expr(a, bindings)? {
            Value::Quat(q) => Ok(Value::Real(q.norm())),
            Value::Vec3(v) => Ok(Value::Real(vnorm(v))),
            other => Err(ill_typed(format!(
                "norm needs a quat or vec3, got {}",
                other.type_of()
            ))),
        },
        Expr::ExpQ(a) => {
            let q = as_quat(eval_expr(a, bindings)?, "expq")?;
            Ok(Value::Quat(quat::exp_quat(q)))
        }
        Expr::Eq(a, b) => {
            let lhs = eval_expr(a, bindings)?;
            let rhs = eval_expr(b, bindings)?;
            values_close(lhs, rhs).map(Value::Bool)
        }
    }
}

/// Componentwise comparison within [`EQ_TOLERANCE`].
fn values_close(lhs: Value, rhs: Value) -> Result<bool, EvalError> {
    let near = |a: f64, b: f64| (a - b).abs() <= EQ_TOLERANCE;
    match (lhs, rhs) {
        (Value::Quat(p), Value::Quat(q)) => {
            let (p, q) = (p.to_array(), q.to_array());
            Ok((0..4).all(|i| near(p[i], q[i])))
        }
        (Value::Real(x), Value::Real(y)) => Ok(near(x, y)),
        (Value::Vec3(u), Value::Vec3(v)) => Ok((0..3).all(|i| near(u[i], v[i]))),
        (l, r) => Err(ill_typed(format!(
            "cannot compare {} with {}",
            l.type_of(),
            r.type_of()
        ))),
    }
}

// ── Tests ───────────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse::parse;
    use crate::quat::Multiplication;
    use crate::so3::rotate;
    use crate::UnitQuaternion;

    fn eval_str(text: &str, bindings: &[(&str, Value)]) -> Result<Value, EvalError> {
        let tool = parse(text).expect("formula should parse");
        let map: HashMap<String, Value> = bindings
            .iter()
            .map(|(name, value)| (name.to_string(), *value))
            .collect();
        evaluate(&tool, &map)
    }

    #[test]
    fn basis_identities_evaluate_true_under_their_own_product() {
        let hamilton = eval_str("(0,1,0,0) *h (0,0,1,0) == (0,0,0,1)", &[]).unwrap();
        let shuster = eval_str("(0,1,0,0) *s (0,0,1,0) == -(0,0,0,1)", &[]).unwrap();
        assert_eq!(hamilton, Value::Bool(true));
        assert_eq!(shuster, Value::Bool(true));

        let crossed = eval_str("(0,1,0,0) *s (0,0,1,0) == (0,0,0,1)", &[]).unwrap();
        assert_eq!(crossed, Value::Bool(false));
    }

    #[test]
    fn sandwich_formula_matches_the_rotation_action() {
        let q = UnitQuaternion::normalize(Quaternion::new(0.9f64, -0.3, 0.2, 0.1)).unwrap();
        let x = [0.4, -1.1, 0.7];
        let out = eval_str(
            "in q: quat; in x: vec3; imag(q *h pure(x) *h inv(q))",
            &[
                ("q", Value::Quat(*q.as_quaternion())),
                ("x", Value::Vec3(x)),
            ],
        )
        .unwrap();
        let expected = rotate(Multiplication::Hamilton, &q, x);
        match out {
            Value::Vec3(v) => {
                for i in 0..3 {
                    assert!((v[i] - expected[i]).abs() < 1e-15);
                }
            }
            other => panic!("expected a vec3, got {other:?}"),
        }
    }

    #[test]
    fn scaling_norm_and_vector_arithmetic_compose() {
        let out = eval_str("2.0 * norm([3, 0, 4]) + 1.0", &[]).unwrap();
        assert_eq!(out, Value::Real(11.0));

        let out = eval_str("in u: vec3; u - [1, 1, 1]", &[("u", Value::Vec3([3.0, 2.0, 1.0]))])
            .unwrap();
        assert_eq!(out, Value::Vec3([2.0, 1.0, 0.0]));
    }

    #[test]
    fn expq_of_a_half_rotation_vector_builds_the_expected_unit() {
        use std::f64::consts::FRAC_PI_4;
        let out = eval_str(
            "in h: vec3; expq(pure(h))",
            &[("h", Value::Vec3([0.0, 0.0, FRAC_PI_4]))],
        )
        .unwrap();
        match out {
            Value::Quat(q) => {
                assert!((q.w - FRAC_PI_4.cos()).abs() < 1e-15);
                assert!((q.z - FRAC_PI_4.sin()).abs() < 1e-15);
            }
            other => panic!("expected a quat, got {other:?}"),
        }
    }

    #[test]
    fn missing_and_mistyped_bindings_are_reported_by_name() {
        let err = eval_str("in q: quat; conj(q)", &[]).unwrap_err();
        assert_eq!(
            err,
            EvalError::MissingBinding {
                name: "q".to_string()
            }
        );

        let err = eval_str("in q: quat; conj(q)", &[("q", Value::Real(1.0))]).unwrap_err();
        assert_eq!(
            err,
            EvalError::TypeMismatch {
                name: "q".to_string(),
                expected: Type::Quat,
                got: Type::Real,
            }
        );
    }

    #[test]
    fn unused_inputs_are_still_checked() {
        let err = eval_str("in q: quat; 1.0", &[]).unwrap_err();
        assert!(matches!(err, EvalError::MissingBinding { .. }));
    }

    #[test]
    fn inverting_zero_is_a_numeric_error() {
        let err = eval_str("inv((0,0,0,0))", &[]).unwrap_err();
        assert!(matches!(err, EvalError::Numeric(_)), "{err:?}");
    }

    #[test]
    fn comparison_tolerance_is_absolute_and_componentwise() {
        let tool = parse("in x: real; x == 1.0").unwrap();
        let run = |x: f64| {
            let mut bindings = HashMap::new();
            bindings.insert("x".to_string(), Value::Real(x));
            evaluate(&tool, &bindings).unwrap()
        };
        assert_eq!(run(1.0 + 0.5 * EQ_TOLERANCE), Value::Bool(true));
        assert_eq!(run(1.0 + 10.0 * EQ_TOLERANCE), Value::Bool(false));
    }
}
