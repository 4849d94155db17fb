//! Convention rewrites for formula trees.
//!
//! Conjugation carries one quaternion product onto the other: writing q̄ for
//! the conjugate, `conj(p ⊗ q) = conj(p) ⊙ conj(q)` and vice versa. A
//! formula written against one product can therefore be rewritten for the
//! other so that callers who keep conjugated quaternions — the same
//! rotations, stored under the other convention — read the results they
//! expect. Two rewrites implement that contract:
//!
//! * [`translate`] rebuilds the interior: product tags flip, quaternion
//!   constants are conjugated, and the vector/quaternion boundary crossings
//!   `imag` and `pure` pick up a sign.
//! * [`interface`] keeps the interior untouched and instead shims the
//!   boundary: quaternion inputs are conjugated on the way in and a
//!   quaternion result is conjugated on the way out.
//!
//! Both satisfy the same law. For a tool `T` and bindings `b`, let `b'`
//! conjugate every quaternion binding of `b`. Then evaluating the rewritten
//! tool on `b'` gives the conjugate of `T(b)` when the output is a
//! quaternion, and exactly `T(b)` otherwise.
//!
//! [`canonicalize`] is the cheap cousin for retagging alone: `p ⋆ q` equals
//! `q` times `p` under the flipped product *by definition*, so flipping a
//! tag while swapping its operands changes notation and nothing else.
//!
//! [`simplify`] cleans up after the rewrites with a small terminating rule
//! set: double negations and double conjugations cancel, negations float
//! toward the root, conjugation folds into constants, and fully constant
//! subtrees are evaluated in place.

use super::ast::{Expr, Tool};
use crate::linalg::{vadd, vneg, vnorm, vscale};
use crate::quat::{self, Multiplication};

/// Hard ceiling on simplification passes. Every rule either removes nodes,
/// removes a conjugation, or moves a negation strictly toward the root, so a
/// fixpoint is reached long before this; the cap is a backstop, not a tuning
/// knob.
const MAX_SIMPLIFY_PASSES: usize = 10_000;

// ── Translate ───────────────────────────────────────────────────────────────

/// Rewrite a formula for the opposite multiplication convention.
///
/// Product tags flip, quaternion constants are conjugated, and `imag`/`pure`
/// gain a negation — conjugation fixes the scalar part and negates the
/// vector part, so the two places where vectors cross into or out of
/// quaternion space must compensate. Inputs and output type are unchanged:
/// callers bind the conjugates of the quaternions they would have passed to
/// the original.
pub fn translate(tool: &Tool) -> Tool {
    Tool {
        expr: translate_expr(&tool.expr),
        inputs: tool.inputs.clone(),
        output_type: tool.output_type,
    }
}

fn translate_expr(expr: &Expr) -> Expr {
    match expr {
        Expr::ConstQuat(q) => Expr::ConstQuat(q.conjugate()),
        Expr::ConstReal(r) => Expr::ConstReal(*r),
        Expr::ConstVec3(v) => Expr::ConstVec3(*v),
        Expr::Var(name, ty) => Expr::Var(name.clone(), *ty),
        Expr::Mul(star, a, b) => {
            Expr::mul(star.flipped(), translate_expr(a), translate_expr(b))
        }
        Expr::Add(a, b) => Expr::add(translate_expr(a), translate_expr(b)),
        Expr::Neg(a) => Expr::neg(translate_expr(a)),
        Expr::Scale(c, x) => Expr::scale(translate_expr(c), translate_expr(x)),
        Expr::Conj(a) => Expr::conj(translate_expr(a)),
        Expr::Inv(a) => Expr::inv(translate_expr(a)),
        Expr::Imag(a) => Expr::neg(Expr::imag(translate_expr(a))),
        Expr::Pure(a) => Expr::neg(Expr::pure(translate_expr(a))),
        Expr::Norm(a) => Expr::norm(translate_expr(a)),
        Expr::ExpQ(a) => Expr::expq(translate_expr(a)),
        Expr::Eq(a, b) => Expr::eq(translate_expr(a), translate_expr(b)),
    }
}

// ── Interface ───────────────────────────────────────────────────────────────

/// Shim a formula's boundary for the opposite convention without touching
/// its interior.
///
/// Every quaternion-typed input is conjugated where it is read, and a
/// quaternion result is conjugated at the root. The products inside keep
/// their tags — the interior still computes in its native convention — but
/// the tool now speaks the other convention at its edges, under the same
/// law as [`translate`]. Applying it twice yields double conjugations that
/// [`simplify`] removes.
pub fn interface(tool: &Tool) -> Tool {
    let wrapped = interface_expr(&tool.expr);
    let expr = match tool.output_type {
        super::ast::Type::Quat => Expr::conj(wrapped),
        _ => wrapped,
    };
    Tool {
        expr,
        inputs: tool.inputs.clone(),
        output_type: tool.output_type,
    }
}

fn interface_expr(expr: &Expr) -> Expr {
    match expr {
        Expr::Var(name, ty @ super::ast::Type::Quat) => {
            Expr::conj(Expr::Var(name.clone(), *ty))
        }
        Expr::ConstQuat(_) | Expr::ConstReal(_) | Expr::ConstVec3(_) | Expr::Var(..) => {
            expr.clone()
        }
        Expr::Mul(star, a, b) => Expr::mul(*star, interface_expr(a), interface_expr(b)),
        Expr::Add(a, b) => Expr::add(interface_expr(a), interface_expr(b)),
        Expr::Neg(a) => Expr::neg(interface_expr(a)),
        Expr::Scale(c, x) => Expr::scale(interface_expr(c), interface_expr(x)),
        Expr::Conj(a) => Expr::conj(interface_expr(a)),
        Expr::Inv(a) => Expr::inv(interface_expr(a)),
        Expr::Imag(a) => Expr::imag(interface_expr(a)),
        Expr::Pure(a) => Expr::pure(interface_expr(a)),
        Expr::Norm(a) => Expr::norm(interface_expr(a)),
        Expr::ExpQ(a) => Expr::expq(interface_expr(a)),
        Expr::Eq(a, b) => Expr::eq(interface_expr(a), interface_expr(b)),
    }
}

// ── Canonicalize ────────────────────────────────────────────────────────────

/// Retag every product to `target`, swapping its operands to compensate.
///
/// This changes notation only: `p ⋆ q` and the flipped product of `q` and
/// `p` are the same quaternion by definition, so the result evaluates
/// bit-for-bit identically. Useful for normalizing a formula onto one tag
/// before comparing or storing it.
pub fn canonicalize(tool: &Tool, target: Multiplication) -> Tool {
    Tool {
        expr: canonicalize_expr(&tool.expr, target),
        inputs: tool.inputs.clone(),
        output_type: tool.output_type,
    }
}

fn canonicalize_expr(expr: &Expr, target: Multiplication) -> Expr {
    match expr {
        Expr::Mul(star, a, b) => {
            let lhs = canonicalize_expr(a, target);
            let rhs = canonicalize_expr(b, target);
            if *star == target {
                Expr::mul(target, lhs, rhs)
            } else {
                Expr::mul(target, rhs, lhs)
            }
        }
        Expr::ConstQuat(_) | Expr::ConstReal(_) | Expr::ConstVec3(_) | Expr::Var(..) => {
            expr.clone()
        }
        Expr::Add(a, b) => Expr::add(
            canonicalize_expr(a, target),
            canonicalize_expr(b, target),
        ),
        Expr::Neg(a) => Expr::neg(canonicalize_expr(a, target)),
        Expr::Scale(c, x) => Expr::scale(
            canonicalize_expr(c, target),
            canonicalize_expr(x, target),
        ),
        Expr::Conj(a) => Expr::conj(canonicalize_expr(a, target)),
        Expr::Inv(a) => Expr::inv(canonicalize_expr(a, target)),
        Expr::Imag(a) => Expr::imag(canonicalize_expr(a, target)),
        Expr::Pure(a) => Expr::pure(canonicalize_expr(a, target)),
        Expr::Norm(a) => Expr::norm(canonicalize_expr(a, target)),
        Expr::ExpQ(a) => Expr::expq(canonicalize_expr(a, target)),
        Expr::Eq(a, b) => Expr::eq(
            canonicalize_expr(a, target),
            canonicalize_expr(b, target),
        ),
    }
}

// ── Simplify ────────────────────────────────────────────────────────────────

/// Simplify a tool's formula to a fixpoint of the rewrite rules.
pub fn simplify(tool: &Tool) -> Tool {
    Tool {
        expr: simplify_expr(tool.expr.clone()),
        inputs: tool.inputs.clone(),
        output_type: tool.output_type,
    }
}

/// Simplify an expression to a fixpoint.
///
/// The rules preserve the exact evaluated value — negation and conjugation
/// are sign flips, which round-off cannot see — and terminate because each
/// application removes a node, removes a conjugation, or carries a negation
/// strictly toward the root. Comparisons are never folded: a tool whose
/// point is to assert an identity keeps its `==` even when both sides are
/// constant.
pub fn simplify_expr(expr: Expr) -> Expr {
    let mut current = expr;
    for _ in 0..MAX_SIMPLIFY_PASSES {
        let next = simplify_pass(current.clone());
        if next == current {
            return next;
        }
        current = next;
    }
    current
}

/// One bottom-up pass: children first, then the rules at each node.
fn simplify_pass(expr: Expr) -> Expr {
    let expr = match expr {
        Expr::ConstQuat(_) | Expr::ConstReal(_) | Expr::ConstVec3(_) | Expr::Var(..) => {
            return expr;
        }
        Expr::Mul(s, a, b) => Expr::mul(s, simplify_pass(*a), simplify_pass(*b)),
        Expr::Add(a, b) => Expr::add(simplify_pass(*a), simplify_pass(*b)),
        Expr::Neg(a) => Expr::neg(simplify_pass(*a)),
        Expr::Scale(c, x) => Expr::scale(simplify_pass(*c), simplify_pass(*x)),
        Expr::Conj(a) => Expr::conj(simplify_pass(*a)),
        Expr::Inv(a) => Expr::inv(simplify_pass(*a)),
        Expr::Imag(a) => Expr::imag(simplify_pass(*a)),
        Expr::Pure(a) => Expr::pure(simplify_pass(*a)),
        Expr::Norm(a) => Expr::norm(simplify_pass(*a)),
        Expr::ExpQ(a) => Expr::expq(simplify_pass(*a)),
        Expr::Eq(a, b) => Expr::eq(simplify_pass(*a), simplify_pass(*b)),
    };
    apply_rules(expr)
}

/// Whether conjugation folds into this node without leaving a `Conj` behind.
fn conj_reducible(expr: &Expr) -> bool {
    matches!(expr, Expr::ConstQuat(_) | Expr::Conj(_))
}

/// Fold a conjugation into a node [`conj_reducible`] accepted.
fn conj_fold(expr: Expr) -> Expr {
    match expr {
        Expr::ConstQuat(q) => Expr::ConstQuat(q.conjugate()),
        Expr::Conj(inner) => *inner,
        other => Expr::conj(other),
    }
}

fn apply_rules(expr: Expr) -> Expr {
    match expr {
        Expr::Neg(inner) => match *inner {
            Expr::Neg(x) => *x,
            Expr::ConstReal(r) => Expr::ConstReal(-r),
            Expr::ConstQuat(q) => Expr::ConstQuat(-q),
            Expr::ConstVec3(v) => Expr::ConstVec3(vneg(v)),
            Expr::Scale(c, x) => match *c {
                Expr::ConstReal(r) => Expr::scale(Expr::ConstReal(-r), *x),
                other => Expr::neg(Expr::scale(other, *x)),
            },
            other => Expr::neg(other),
        },
        Expr::Conj(inner) => match *inner {
            Expr::Conj(x) => *x,
            Expr::ConstQuat(q) => Expr::ConstQuat(q.conjugate()),
            Expr::Neg(x) => Expr::neg(Expr::conj(*x)),
            Expr::Pure(x) => Expr::neg(Expr::pure(*x)),
            // Reversing a product under conjugation is only a win when both
            // new conjugations disappear on the spot; otherwise one Conj
            // becomes two and the tree grows.
            Expr::Mul(s, a, b) if conj_reducible(&a) && conj_reducible(&b) => {
                Expr::mul(s, conj_fold(*b), conj_fold(*a))
            }
            other => Expr::conj(other),
        },
        Expr::Imag(inner) => match *inner {
            Expr::Conj(x) => Expr::neg(Expr::imag(*x)),
            Expr::Neg(x) => Expr::neg(Expr::imag(*x)),
            Expr::Pure(x) => *x,
            Expr::ConstQuat(q) => Expr::ConstVec3(q.imag()),
            other => Expr::imag(other),
        },
        Expr::Pure(inner) => match *inner {
            Expr::Neg(x) => Expr::neg(Expr::pure(*x)),
            Expr::ConstVec3(v) => Expr::ConstQuat(quat::pure(v)),
            other => Expr::pure(other),
        },
        Expr::Mul(s, a, b) => match (*a, *b) {
            (Expr::Neg(x), Expr::Neg(y)) => Expr::mul(s, *x, *y),
            (Expr::Neg(x), y) => Expr::neg(Expr::mul(s, *x, y)),
            (x, Expr::Neg(y)) => Expr::neg(Expr::mul(s, x, *y)),
            (Expr::ConstQuat(p), Expr::ConstQuat(q)) => Expr::ConstQuat(quat::mul(s, p, q)),
            (x, y) => Expr::mul(s, x, y),
        },
        Expr::Add(a, b) => match (*a, *b) {
            (Expr::Neg(x), Expr::Neg(y)) => Expr::neg(Expr::add(*x, *y)),
            (Expr::ConstReal(x), Expr::ConstReal(y)) => Expr::ConstReal(x + y),
            (Expr::ConstQuat(p), Expr::ConstQuat(q)) => Expr::ConstQuat(p + q),
            (Expr::ConstVec3(u), Expr::ConstVec3(v)) => Expr::ConstVec3(vadd(u, v)),
            (x, y) => Expr::add(x, y),
        },
        Expr::Scale(c, x) => match (*c, *x) {
            (Expr::Neg(inner), operand) => Expr::neg(Expr::scale(*inner, operand)),
            (coefficient, Expr::Neg(inner)) => Expr::neg(Expr::scale(coefficient, *inner)),
            (Expr::ConstReal(s), Expr::ConstReal(v)) => Expr::ConstReal(s * v),
            (Expr::ConstReal(s), Expr::ConstQuat(q)) => Expr::ConstQuat(q.scaled(s)),
            (Expr::ConstReal(s), Expr::ConstVec3(v)) => Expr::ConstVec3(vscale(s, v)),
            (coefficient, operand) => Expr::scale(coefficient, operand),
        },
        Expr::Inv(inner) => match *inner {
            Expr::Neg(x) => Expr::neg(Expr::inv(*x)),
            Expr::ConstQuat(q) => match q.inverse() {
                Ok(r) => Expr::ConstQuat(r),
                Err(_) => Expr::inv(Expr::ConstQuat(q)),
            },
            other => Expr::inv(other),
        },
        Expr::Norm(inner) => match *inner {
            Expr::Neg(x) => Expr::norm(*x),
            Expr::Conj(x) => Expr::norm(*x),
            Expr::ConstQuat(q) => Expr::ConstReal(q.norm()),
            Expr::ConstVec3(v) => Expr::ConstReal(vnorm(v)),
            other => Expr::norm(other),
        },
        Expr::ExpQ(inner) => match *inner {
            Expr::ConstQuat(q) => Expr::ConstQuat(quat::exp_quat(q)),
            other => Expr::expq(other),
        },
        other => other,
    }
}

// ── Tests ───────────────────────────────────────────────────────────────────
