//! A small formula language for quaternion expressions, with rewrites that
//! carry a formula from one multiplication convention to the other.
//!
//! Code that handles quaternions from several sources eventually meets a
//! formula written for the "wrong" product: a feedback law derived with ⊙
//! pasted into a codebase that multiplies with ⊗, or the reverse. Fixing
//! such a formula by hand means flipping products, conjugating constants,
//! and chasing signs through `imag` and `pure` — exactly the mechanical,
//! error-prone work a rewriter should do.
//!
//! The pipeline: [`parse`] text into a typed [`Tool`], rewrite it with
//! [`translate`] (rebuild the interior for the other product) or
//! [`interface`] (conjugate at the boundary, keep the interior), tidy with
//! [`simplify`], and run it with [`evaluate`].
//!
//! ```
//! use quatconv::dsl::{evaluate, parse, simplify, translate, Value};
//! use std::collections::HashMap;
//!
//! let tool = parse("(0,1,0,0) *s (0,0,1,0) == -(0,0,0,1)").unwrap();
//! let moved = simplify(&translate(&tool));
//! // The same identity, now stated for the Hamilton product.
//! let result = evaluate(&moved, &HashMap::new()).unwrap();
//! assert_eq!(result, Value::Bool(true));
//! ```

pub mod ast;
pub mod eval;
pub mod parse;
pub mod rewrite;

pub use ast::{Expr, Tool, Type};
pub use eval::{evaluate, EvalError, Value, EQ_TOLERANCE};
pub use parse::{parse, ParseError};
pub use rewrite::{canonicalize, interface, simplify, simplify_expr, translate};
