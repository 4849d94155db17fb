//! Expression trees for quaternion formulas.
//!
//! A [`Tool`] is a small typed formula — a parsed expression together with
//! its declared inputs and result type. Tools exist so that a formula
//! written against one multiplication convention can be rewritten for the
//! other (see [`super::rewrite`]) without touching the call sites that
//! evaluate it.
//!
//! Every multiplication node carries its own [`Multiplication`] tag; there
//! is deliberately no ambient "current convention" that nodes inherit.

use crate::quat::{Multiplication, Quaternion};
use std::fmt;

// ── Types ───────────────────────────────────────────────────────────────────

/// Value type of an expression or input.
///
/// `Bool` arises only as the result of a top-level comparison; it can never
/// be declared as an input or nested inside another expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Type {
    Quat,
    Real,
    Vec3,
    Bool,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Type::Quat => "quat",
            Type::Real => "real",
            Type::Vec3 => "vec3",
            Type::Bool => "bool",
        };
        write!(f, "{name}")
    }
}

// ── Expressions ─────────────────────────────────────────────────────────────

/// A node in a formula tree.
///
/// Scalars are `f64`: formulas describe published interfaces and data files,
/// which are double precision throughout.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Quaternion literal `(w, x, y, z)`, scalar part first.
    ConstQuat(Quaternion<f64>),
    /// Real literal such as `0.5`.
    ConstReal(f64),
    /// Vector literal `[x, y, z]`.
    ConstVec3([f64; 3]),
    /// Reference to a declared input. The type is recorded on the node so
    /// rewrites can decide, locally, whether a variable carries a quaternion.
    Var(String, Type),
    /// Quaternion product under the tagged convention.
    Mul(Multiplication, Box<Expr>, Box<Expr>),
    /// Componentwise sum of two operands of the same type.
    Add(Box<Expr>, Box<Expr>),
    /// Componentwise negation.
    Neg(Box<Expr>),
    /// Real coefficient times a quat, vec3, or real operand.
    Scale(Box<Expr>, Box<Expr>),
    /// Quaternion conjugate.
    Conj(Box<Expr>),
    /// Quaternion inverse.
    Inv(Box<Expr>),
    /// Imaginary (vector) part of a quaternion.
    Imag(Box<Expr>),
    /// Embed a vector as a quaternion with zero scalar part.
    Pure(Box<Expr>),
    /// Euclidean norm of a quaternion or vector.
    Norm(Box<Expr>),
    /// Quaternion exponential.
    ExpQ(Box<Expr>),
    /// Tolerance comparison; allowed only at the root.
    Eq(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn mul(star: Multiplication, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Mul(star, Box::new(lhs), Box::new(rhs))
    }

    pub fn add(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Add(Box::new(lhs), Box::new(rhs))
    }

    pub fn neg(operand: Expr) -> Expr {
        Expr::Neg(Box::new(operand))
    }

    pub fn scale(coefficient: Expr, operand: Expr) -> Expr {
        Expr::Scale(Box::new(coefficient), Box::new(operand))
    }

    pub fn conj(operand: Expr) -> Expr {
        Expr::Conj(Box::new(operand))
    }

    pub fn inv(operand: Expr) -> Expr {
        Expr::Inv(Box::new(operand))
    }

    pub fn imag(operand: Expr) -> Expr {
        Expr::Imag(Box::new(operand))
    }

    pub fn pure(operand: Expr) -> Expr {
        Expr::Pure(Box::new(operand))
    }

    pub fn norm(operand: Expr) -> Expr {
        Expr::Norm(Box::new(operand))
    }

    pub fn expq(operand: Expr) -> Expr {
        Expr::ExpQ(Box::new(operand))
    }

    pub fn eq(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Eq(Box::new(lhs), Box::new(rhs))
    }

    /// Number of nodes in the tree. Rewrite rules that are only sound when
    /// they shrink the expression use this as their measure.
    pub fn node_count(&self) -> usize {
        1 + match self {
            Expr::ConstQuat(_) | Expr::ConstReal(_) | Expr::ConstVec3(_) | Expr::Var(..) => 0,
            Expr::Neg(a)
            | Expr::Conj(a)
            | Expr::Inv(a)
            | Expr::Imag(a)
            | Expr::Pure(a)
            | Expr::Norm(a)
            | Expr::ExpQ(a) => a.node_count(),
            Expr::Mul(_, a, b) | Expr::Add(a, b) | Expr::Scale(a, b) | Expr::Eq(a, b) => {
                a.node_count() + b.node_count()
            }
        }
    }

    /// Which multiplication tags occur anywhere in the tree, as
    /// `(hamilton_present, shuster_present)`.
    pub fn multiplications_used(&self) -> (bool, bool) {
        match self {
            Expr::ConstQuat(_) | Expr::ConstReal(_) | Expr::ConstVec3(_) | Expr::Var(..) => {
                (false, false)
            }
            Expr::Neg(a)
            | Expr::Conj(a)
            | Expr::Inv(a)
            | Expr::Imag(a)
            | Expr::Pure(a)
            | Expr::Norm(a)
            | Expr::ExpQ(a) => a.multiplications_used(),
            Expr::Add(a, b) | Expr::Scale(a, b) | Expr::Eq(a, b) => {
                let (lh, ls) = a.multiplications_used();
                let (rh, rs) = b.multiplications_used();
                (lh || rh, ls || rs)
            }
            Expr::Mul(star, a, b) => {
                let (lh, ls) = a.multiplications_used();
                let (rh, rs) = b.multiplications_used();
                match star {
                    Multiplication::Hamilton => (true, ls || rs),
                    Multiplication::Shuster => (lh || rh, true),
                }
            }
        }
    }
}

// ── Tools ───────────────────────────────────────────────────────────────────

/// A parsed formula with its interface: declared inputs and result type.
///
/// Invariants maintained by the parser and preserved by every rewrite:
/// every `Var` in `expr` appears in `inputs` with the same type, at most one
/// multiplication tag occurs in the tree, and `Eq` appears only at the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Tool {
    pub expr: Expr,
    /// Declared inputs, in declaration order.
    pub inputs: Vec<(String, Type)>,
    /// Type of the root expression.
    pub output_type: Type,
}

impl Tool {
    /// The single multiplication tag used by the formula, or `None` when no
    /// product occurs (such tools read the same under either convention).
    pub fn multiplication(&self) -> Option<Multiplication> {
        match self.expr.multiplications_used() {
            (true, false) => Some(Multiplication::Hamilton),
            (false, true) => Some(Multiplication::Shuster),
            _ => None,
        }
    }
}

// ── Tests ───────────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_count_sums_over_the_tree() {
        let e = Expr::eq(
            Expr::mul(
                Multiplication::Hamilton,
                Expr::ConstQuat(Quaternion::i()),
                Expr::ConstQuat(Quaternion::j()),
            ),
            Expr::ConstQuat(Quaternion::k()),
        );
        // Eq + Mul + three constants.
        assert_eq!(e.node_count(), 5);
    }

    #[test]
    fn multiplication_tags_are_collected_through_all_node_kinds() {
        let q = Expr::Var("q".into(), Type::Quat);
        let shuster = Expr::mul(Multiplication::Shuster, q.clone(), q.clone());
        let wrapped = Expr::norm(Expr::conj(Expr::add(shuster.clone(), q.clone())));
        assert_eq!(wrapped.multiplications_used(), (false, true));

        let mixed = Expr::mul(Multiplication::Hamilton, shuster, q);
        assert_eq!(mixed.multiplications_used(), (true, true));
    }

    #[test]
    fn tool_reports_its_single_tag_or_none() {
        let q = Expr::Var("q".into(), Type::Quat);
        let tool = Tool {
            expr: Expr::mul(Multiplication::Shuster, q.clone(), q.clone()),
            inputs: vec![("q".into(), Type::Quat)],
            output_type: Type::Quat,
        };
        assert_eq!(tool.multiplication(), Some(Multiplication::Shuster));

        let untagged = Tool {
            expr: Expr::imag(q),
            inputs: vec![("q".into(), Type::Quat)],
            output_type: Type::Vec3,
        };
        assert_eq!(untagged.multiplication(), None);
    }
}
