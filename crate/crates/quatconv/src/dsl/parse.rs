//! Lexer and parser for formula text.
//!
//! The surface syntax is small: declarations `in name: type;` followed by
//! one expression. Expressions use `*h` (Hamilton product), `*s` (Shuster
//! product), `*` (real scaling), `+`, binary and unary `-`, the calls
//! `conj`, `inv`, `imag`, `pure`, `norm`, `expq`, quaternion literals
//! `(w, x, y, z)`, vector literals `[x, y, z]`, and one optional `==` at the
//! top level. Products bind tighter than sums; unary minus tighter still.
//!
//! Typing happens during the descent, so type errors carry the position of
//! the operator or call that failed. A formula may use `*h` or `*s` but not
//! both; mixing them is rejected outright rather than given a meaning.

use super::ast::{Expr, Tool, Type};
use crate::quat::{Multiplication, Quaternion};
use std::collections::HashMap;
use thiserror::Error;

// ── Errors ──────────────────────────────────────────────────────────────────

/// Why a formula failed to parse. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    SyntaxError {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("type error at {line}:{col}: {message}")]
    TypeError {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("formula mixes `*h` and `*s`; a tool must commit to one product")]
    MixedMultiplication,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::SyntaxError {
        line,
        col,
        message: message.into(),
    }
}

fn typing(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::TypeError {
        line,
        col,
        message: message.into(),
    }
}

// ── Tokens ──────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Star,
    StarH,
    StarS,
    Plus,
    Minus,
    EqEq,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("`{name}`"),
            Tok::Number(value) => format!("number `{value}`"),
            Tok::Star => "`*`".into(),
            Tok::StarH => "`*h`".into(),
            Tok::StarS => "`*s`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

/// Words that cannot name an input: the declaration keyword, the type
/// names, and the built-in calls.
const RESERVED: &[&str] = &[
    "in", "quat", "real", "vec3", "conj", "inv", "imag", "pure", "norm", "expq",
];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    let is_ident_char = |ch: char| ch.is_ascii_alphanumeric() || ch == '_';

    while i < chars.len() {
        let ch = chars[i];
        let (tok_line, tok_col) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };

        match ch {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '(' | ')' | '[' | ']' | ',' | ':' | ';' | '+' | '-' => {
                let tok = match ch {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    '+' => Tok::Plus,
                    _ => Tok::Minus,
                };
                tokens.push(Token {
                    tok,
                    line: tok_line,
                    col: tok_col,
                });
                advance(1, &mut i, &mut col);
            }
            '*' => {
                // `*h` and `*s` are single tokens, but only when the letter
                // is not the start of an identifier: `q *h p` is a Hamilton
                // product, `2 * half` is a scaling.
                let suffix = chars.get(i + 1).copied();
                let next_next = chars.get(i + 2).copied();
                let glued = |letter| {
                    suffix == Some(letter) && !next_next.map(is_ident_char).unwrap_or(false)
                };
                let (tok, width) = if glued('h') {
                    (Tok::StarH, 2)
                } else if glued('s') {
                    (Tok::StarS, 2)
                } else {
                    (Tok::Star, 1)
                };
                tokens.push(Token {
                    tok,
                    line: tok_line,
                    col: tok_col,
                });
                advance(width, &mut i, &mut col);
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    tokens.push(Token {
                        tok: Tok::EqEq,
                        line: tok_line,
                        col: tok_col,
                    });
                    advance(2, &mut i, &mut col);
                } else {
                    return Err(syntax(tok_line, tok_col, "expected `==`, found a single `=`"));
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(1, &mut i, &mut col);
                }
                if i < chars.len() && chars[i] == '.' {
                    advance(1, &mut i, &mut col);
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        advance(1, &mut i, &mut col);
                    }
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        let width = j - i;
                        advance(width, &mut i, &mut col);
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            advance(1, &mut i, &mut col);
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| syntax(tok_line, tok_col, format!("bad number `{text}`")))?;
                tokens.push(Token {
                    tok: Tok::Number(value),
                    line: tok_line,
                    col: tok_col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    advance(1, &mut i, &mut col);
                }
                let name: String = chars[start..i].iter().collect();
                tokens.push(Token {
                    tok: Tok::Ident(name),
                    line: tok_line,
                    col: tok_col,
                });
            }
            other => {
                return Err(syntax(
                    tok_line,
                    tok_col,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }

    tokens.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(tokens)
}

// ── Parser ──────────────────────────────────────────────────────────────────

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    inputs: Vec<(String, Type)>,
    env: HashMap<String, Type>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, ParseError> {
        let token = self.next();
        if token.tok == want {
            Ok(token)
        } else {
            Err(syntax(
                token.line,
                token.col,
                format!("expected {what}, found {}", token.tok.describe()),
            ))
        }
    }

    // ── Declarations ──

    fn parse_declarations(&mut self) -> Result<(), ParseError> {
        while let Tok::Ident(word) = &self.peek().tok {
            if word != "in" {
                break;
            }
            self.next();
            let name_token = self.next();
            let name = match name_token.tok {
                Tok::Ident(name) => name,
                other => {
                    return Err(syntax(
                        name_token.line,
                        name_token.col,
                        format!("expected input name, found {}", other.describe()),
                    ));
                }
            };
            if RESERVED.contains(&name.as_str()) {
                return Err(syntax(
                    name_token.line,
                    name_token.col,
                    format!("`{name}` is a reserved word and cannot name an input"),
                ));
            }
            if self.env.contains_key(&name) {
                return Err(typing(
                    name_token.line,
                    name_token.col,
                    format!("input `{name}` is declared twice"),
                ));
            }
            self.expect(Tok::Colon, "`:`")?;
            let type_token = self.next();
            let ty = match &type_token.tok {
                Tok::Ident(word) if word == "quat" => Type::Quat,
                Tok::Ident(word) if word == "real" => Type::Real,
                Tok::Ident(word) if word == "vec3" => Type::Vec3,
                other => {
                    return Err(syntax(
                        type_token.line,
                        type_token.col,
                        format!("expected `quat`, `real`, or `vec3`, found {}", other.describe()),
                    ));
                }
            };
            self.expect(Tok::Semi, "`;`")?;
            self.env.insert(name.clone(), ty);
            self.inputs.push((name, ty));
        }
        Ok(())
    }

    // ── Expressions ──

    fn parse_equality(&mut self) -> Result<(Expr, Type), ParseError> {
        let (lhs, lhs_ty) = self.parse_additive()?;
        if self.peek().tok != Tok::EqEq {
            return Ok((lhs, lhs_ty));
        }
        let op = self.next();
        let (rhs, rhs_ty) = self.parse_additive()?;
        if lhs_ty != rhs_ty {
            return Err(typing(
                op.line,
                op.col,
                format!("cannot compare {lhs_ty} with {rhs_ty}"),
            ));
        }
        Ok((Expr::eq(lhs, rhs), Type::Bool))
    }

    fn parse_additive(&mut self) -> Result<(Expr, Type), ParseError> {
        let (mut acc, acc_ty) = self.parse_term()?;
        loop {
            let negate = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok((acc, acc_ty)),
            };
            let op = self.next();
            let (rhs, rhs_ty) = self.parse_term()?;
            if rhs_ty != acc_ty {
                return Err(typing(
                    op.line,
                    op.col,
                    format!("cannot add {acc_ty} and {rhs_ty}"),
                ));
            }
            let rhs = if negate { Expr::neg(rhs) } else { rhs };
            acc = Expr::add(acc, rhs);
        }
    }

    fn parse_term(&mut self) -> Result<(Expr, Type), ParseError> {
        let (mut acc, mut acc_ty) = self.parse_unary()?;
        loop {
            let star = match self.peek().tok {
                Tok::StarH => Some(Multiplication::Hamilton),
                Tok::StarS => Some(Multiplication::Shuster),
                Tok::Star => None,
                _ => return Ok((acc, acc_ty)),
            };
            let op = self.next();
            let (rhs, rhs_ty) = self.parse_unary()?;
            match star {
                Some(star) => {
                    if acc_ty != Type::Quat || rhs_ty != Type::Quat {
                        return Err(typing(
                            op.line,
                            op.col,
                            format!(
                                "operands of {} must be quaternions, found {acc_ty} and {rhs_ty}",
                                op.tok.describe()
                            ),
                        ));
                    }
                    acc = Expr::mul(star, acc, rhs);
                }
                None => {
                    if acc_ty != Type::Real {
                        return Err(typing(
                            op.line,
                            op.col,
                            format!(
                                "left operand of `*` must be real, found {acc_ty} \
                                 (quaternion products are `*h` or `*s`)"
                            ),
                        ));
                    }
                    if rhs_ty == Type::Bool {
                        return Err(typing(op.line, op.col, "cannot scale a comparison"));
                    }
                    acc = Expr::scale(acc, rhs);
                    acc_ty = rhs_ty;
                }
            }
        }
    }

    fn parse_unary(&mut self) -> Result<(Expr, Type), ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            let (operand, ty) = self.parse_unary()?;
            return Ok((Expr::neg(operand), ty));
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<(Expr, Type), ParseError> {
        let token = self.next();
        match token.tok {
            Tok::Number(value) => Ok((Expr::ConstReal(value), Type::Real)),
            Tok::LParen => {
                // A parenthesis opens either a quaternion literal or a
                // grouped expression; try the literal shape first and rewind
                // if it does not fit.
                let saved = self.pos;
                if let Some(components) = self.try_number_list::<4>(Tok::RParen) {
                    let expr = Expr::ConstQuat(Quaternion::from_array(components));
                    return Ok((expr, Type::Quat));
                }
                self.pos = saved;
                let (inner, ty) = self.parse_additive()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((inner, ty))
            }
            Tok::LBracket => match self.try_number_list::<3>(Tok::RBracket) {
                Some(components) => Ok((Expr::ConstVec3(components), Type::Vec3)),
                None => {
                    let at = self.peek().clone();
                    Err(syntax(
                        at.line,
                        at.col,
                        "expected a vector literal `[x, y, z]` of plain numbers",
                    ))
                }
            },
            Tok::Ident(name) => self.parse_ident(name, token.line, token.col),
            other => Err(syntax(
                token.line,
                token.col,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }

    fn parse_ident(&mut self, name: String, line: usize, col: usize) -> Result<(Expr, Type), ParseError> {
        let call = |arg_ty: Type, out_ty: Type, build: fn(Expr) -> Expr| (arg_ty, out_ty, build);
        let builtin = match name.as_str() {
            "conj" => Some(call(Type::Quat, Type::Quat, Expr::conj)),
            "inv" => Some(call(Type::Quat, Type::Quat, Expr::inv)),
            "imag" => Some(call(Type::Quat, Type::Vec3, Expr::imag)),
            "pure" => Some(call(Type::Vec3, Type::Quat, Expr::pure)),
            "expq" => Some(call(Type::Quat, Type::Quat, Expr::expq)),
            "norm" => None, // handled below: two admissible operand types
            _ if RESERVED.contains(&name.as_str()) => {
                return Err(syntax(line, col, format!("unexpected keyword `{name}`")));
            }
            _ => {
                return match self.env.get(&name) {
                    Some(&ty) => Ok((Expr::Var(name, ty), ty)),
                    None => Err(typing(line, col, format!("undeclared variable `{name}`"))),
                };
            }
        };

        self.expect(Tok::LParen, "`(`")?;
        let (arg, arg_ty) = self.parse_additive()?;
        self.expect(Tok::RParen, "`)`")?;

        match builtin {
            Some((want, out_ty, build)) => {
                if arg_ty != want {
                    return Err(typing(
                        line,
                        col,
                        format!("`{name}` takes a {want} argument, found {arg_ty}"),
                    ));
                }
                Ok((build(arg), out_ty))
            }
            None => {
                if arg_ty != Type::Quat && arg_ty != Type::Vec3 {
                    return Err(typing(
                        line,
                        col,
                        format!("`norm` takes a quat or vec3 argument, found {arg_ty}"),
                    ));
                }
                Ok((Expr::norm(arg), Type::Real))
            }
        }
    }

    /// Consume `N` comma-separated signed numbers plus the closing token,
    /// starting just after the opening bracket. Returns `None` without
    /// consuming a definite amount on failure; callers rewind.
    fn try_number_list<const N: usize>(&mut self, close: Tok) -> Option<[f64; N]> {
        let mut out = [0.0; N];
        for (index, slot) in out.iter_mut().enumerate() {
            if index > 0 && self.next().tok != Tok::Comma {
                return None;
            }
            let mut negate = false;
            if self.peek().tok == Tok::Minus {
                self.next();
                negate = true;
            }
            match self.next().tok {
                Tok::Number(value) => *slot = if negate { -value } else { value },
                _ => return None,
            }
        }
        if self.next().tok != close {
            return None;
        }
        Some(out)
    }
}

/// Parse formula text into a checked [`Tool`].
///
/// Inputs must be declared before use, every operator must receive operands
/// of the right type, `==` may appear once at the top level, and the formula
/// may use at most one of `*h` and `*s`.
pub fn parse(text: &str) -> Result<Tool, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        inputs: Vec::new(),
        env: HashMap::new(),
    };
    parser.parse_declarations()?;
    let (expr, output_type) = parser.parse_equality()?;
    let end = parser.next();
    if end.tok != Tok::End {
        return Err(syntax(
            end.line,
            end.col,
            format!("expected end of formula, found {}", end.tok.describe()),
        ));
    }
    if expr.multiplications_used() == (true, true) {
        return Err(ParseError::MixedMultiplication);
    }
    Ok(Tool {
        expr,
        inputs: parser.inputs,
        output_type,
    })
}

// ── Tests ───────────────────────────────────────────────────────────────────
