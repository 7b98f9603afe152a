//! Line-oriented text format for Sullivan and Quillen models (`.rhm`).
//!
//! ```text
//! # complex projective plane
//! model CP2 : sullivan
//! gen x : 2
//! gen y : 5
//! d y = x^3
//! ```
//!
//! Quillen differentials use brackets: `d w3 = 1/2*[w1,w1]`. Generators
//! without a `d` line have zero differential. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::commutative::{multiply, Element, Generator, Monomial};
use crate::lie::{bracket, LieElement, LieGenerator};
use crate::linalg::Rational;
use crate::quillen::DGLModel;
use crate::sullivan::SullivanModel;
use crate::validation::{Check, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("line {line}, column {col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}, column {col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("line {line}: {message}")]
    Degree { line: usize, message: String },
    #[error("line {line}, column {col}: odd generator `{name}` repeated in a product")]
    OddSquare { line: usize, col: usize, name: String },
    #[error("line {line}: model failed validation:\n{report}")]
    Validation { line: usize, report: ValidationReport },
}

impl DslError {
    pub fn line(&self) -> usize {
        match self {
            DslError::Syntax { line, .. }
            | DslError::UnknownGenerator { line, .. }
            | DslError::Degree { line, .. }
            | DslError::OddSquare { line, .. }
            | DslError::Validation { line, .. } => *line,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DslError::Syntax { .. } => "syntax-error",
            DslError::UnknownGenerator { .. } => "unknown-generator",
            DslError::Degree { .. } => "degree-error",
            DslError::OddSquare { .. } => "odd-square-error",
            DslError::Validation { .. } => "validation-error",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Sullivan,
    Quillen,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Sullivan => "sullivan",
            ModelKind::Quillen => "quillen",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Sullivan(SullivanModel),
    Quillen(DGLModel),
}

impl Model {
    pub fn name(&self) -> &str {
        match self {
            Model::Sullivan(m) => m.name(),
            Model::Quillen(m) => m.name(),
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Sullivan(_) => ModelKind::Sullivan,
            Model::Quillen(_) => ModelKind::Quillen,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(DslError::Syntax {
                    line,
                    col: i + 1,
                    message: "only integer and p/q literals are accepted".into(),
                });
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                col,
            });
        } else if "+-*/^[],:=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(DslError::Syntax {
                line,
                col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    /// Column just past the end of the line, for end-of-input errors.
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn col(&self) -> usize {
        self.peek().map_or(self.end_col, |t| t.col)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Syntax {
            line: self.line,
            col: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize), DslError> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s),
                col,
            }) => {
                self.pos += 1;
                Ok((s.clone(), *col))
            }
            _ => self.error("expected a name"),
        }
    }

    fn int(&mut self) -> Result<BigInt, DslError> {
        match self.peek() {
            Some(Token { tok: Tok::Int(n), .. }) => {
                self.pos += 1;
                Ok(n.clone())
            }
            _ => self.error("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<u32, DslError> {
        let col = self.col();
        let n = self.int()?;
        u32::try_from(n).map_err(|_| DslError::Syntax {
            line: self.line,
            col,
            message: "integer out of range".into(),
        })
    }

    fn at_number(&self) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Int(_), .. }))
    }

    /// `p` or `p/q`.
    fn rational(&mut self) -> Result<Rational, DslError> {
        let p = self.int()?;
        if self.eat('/') {
            let col = self.col();
            let q = self.int()?;
            if q.is_zero() {
                return Err(DslError::Syntax {
                    line: self.line,
                    col,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(p))
        }
    }

    fn finish(&self) -> Result<(), DslError> {
        if self.pos < self.tokens.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    /// `[+|-] term {(+|-) term}` with `term` supplied by the caller.
    fn sum<T>(
        &mut self,
        mut term: impl FnMut(&mut Self) -> Result<T, DslError>,
        mut accumulate: impl FnMut(T, Rational),
    ) -> Result<(), DslError> {
        let mut sign = if self.eat('-') {
            -Rational::one()
        } else {
            self.eat('+');
            Rational::one()
        };
        loop {
            let t = term(self)?;
            accumulate(t, sign);
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = -Rational::one();
            } else {
                return Ok(());
            }
        }
    }
}

fn sullivan_term(cur: &mut Cursor<'_>, gens: &[Generator], index: &HashMap<String, usize>) -> Result<Element, DslError> {
    let mut coeff = Rational::one();
    let mut product = Element::one();
    let mut odd_seen: Vec<usize> = Vec::new();
    loop {
        if cur.at_number() {
            coeff *= cur.rational()?;
        } else {
            let (name, col) = cur.ident()?;
            let &g = index.get(&name).ok_or(DslError::UnknownGenerator {
                line: cur.line,
                col,
                name: name.clone(),
            })?;
            let exponent = if cur.eat('^') { cur.small_int()? } else { 1 };
            if gens[g].is_odd() && exponent > 0 {
                if exponent > 1 || odd_seen.contains(&g) {
                    return Err(DslError::OddSquare {
                        line: cur.line,
                        col,
                        name,
                    });
                }
                odd_seen.push(g);
            }
            let factor = Element::monomial(Monomial::from_exponents([(g, exponent)]), Rational::one());
            product = multiply(gens, &product, &factor);
        }
        if !cur.eat('*') {
            return Ok(product.scaled(&coeff));
        }
    }
}

fn lie_sum(cur: &mut Cursor<'_>, gens: &[LieGenerator], index: &HashMap<String, usize>) -> Result<LieElement, DslError> {
    let mut total = LieElement::zero();
    cur.sum(|c| lie_term(c, gens, index), |t, s| total.add_assign_scaled(&t, &s))?;
    Ok(total)
}

/// Numbers times at most one Lie atom.
fn lie_term(cur: &mut Cursor<'_>, gens: &[LieGenerator], index: &HashMap<String, usize>) -> Result<LieElement, DslError> {
    let mut coeff = Rational::one();
    let mut atom: Option<LieElement> = None;
    loop {
        if cur.at_number() {
            coeff *= cur.rational()?;
        } else {
            if atom.is_some() {
                return cur.error("products of Lie elements are not allowed; use brackets");
            }
            atom = Some(if cur.eat('[') {
                let a = lie_sum(cur, gens, index)?;
                cur.expect(',')?;
                let b = lie_sum(cur, gens, index)?;
                cur.expect(']')?;
                bracket(gens, &a, &b)
            } else {
                let (name, col) = cur.ident()?;
                let &g = index.get(&name).ok_or(DslError::UnknownGenerator {
                    line: cur.line,
                    col,
                    name,
                })?;
                LieElement::generator(g)
            });
        }
        if !cur.eat('*') {
            break;
        }
    }
    match atom {
        Some(a) => Ok(a.scaled(&coeff)),
        None if coeff.is_zero() => Ok(LieElement::zero()),
        None => Err(DslError::Degree {
            line: cur.line,
            message: "a nonzero constant is not a Lie element".into(),
        }),
    }
}

struct Line {
    number: usize,
    tokens: Vec<Token>,
    end_col: usize,
}

impl Line {
    fn cursor(&self) -> Cursor<'_> {
        Cursor {
            tokens: &self.tokens,
            pos: 1,
            line: self.number,
            end_col: self.end_col,
        }
    }

    fn keyword(&self) -> Option<&str> {
        match self.tokens.first() {
            Some(Token { tok: Tok::Ident(s), .. }) => Some(s.as_str()),
            _ => None,
        }
    }
}

/// Parses and validates a model.
pub fn parse(text: &str) -> Result<Model, DslError> {
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content, k + 1)?;
        if !tokens.is_empty() {
            lines.push(Line {
                number: k + 1,
                tokens,
                end_col: content.chars().count() + 1,
            });
        }
    }
    let Some(header) = lines.first() else {
        return Err(DslError::Syntax {
            line: 1,
            col: 1,
            message: "empty model; expected `model <name> : sullivan|quillen`".into(),
        });
    };
    if header.keyword() != Some("model") {
        return Err(DslError::Syntax {
            line: header.number,
            col: 1,
            message: "expected `model <name> : sullivan|quillen`".into(),
        });
    }
    let mut cur = header.cursor();
    let (name, _) = cur.ident()?;
    cur.expect(':')?;
    let kind_col = cur.col();
    let kind = match cur.ident()?.0.as_str() {
        "sullivan" => ModelKind::Sullivan,
        "quillen" => ModelKind::Quillen,
        other => {
            return Err(DslError::Syntax {
                line: header.number,
                col: kind_col,
                message: format!("unknown model kind `{other}`"),
            })
        }
    };
    cur.finish()?;

    let mut gens: Vec<Generator> = Vec::new();
    let mut gen_lines: Vec<usize> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut d_lines: Vec<&Line> = Vec::new();
    for line in &lines[1..] {
        match line.keyword() {
            Some("gen") => {
                let mut cur = line.cursor();
                let (gname, _) = cur.ident()?;
                cur.expect(':')?;
                let degree = cur.small_int()?;
                cur.finish()?;
                if index.contains_key(&gname) {
                    let mut report = ValidationReport::default();
                    report.fail(&gname, Check::DuplicateName, "name declared twice");
                    return Err(DslError::Validation {
                        line: line.number,
                        report,
                    });
                }
                index.insert(gname.clone(), gens.len());
                gens.push(Generator::new(gname, degree));
                gen_lines.push(line.number);
            }
            Some("d") => d_lines.push(line),
            Some("model") => {
                return Err(DslError::Syntax {
                    line: line.number,
                    col: 1,
                    message: "only one model per file".into(),
                })
            }
            _ => {
                return Err(DslError::Syntax {
                    line: line.number,
                    col: line.tokens[0].col,
                    message: "expected `gen` or `d`".into(),
                })
            }
        }
    }

    let mut seen_d: Vec<Option<usize>> = vec![None; gens.len()];
    let mut sullivan_d = vec![Element::zero(); gens.len()];
    let mut lie_d = vec![LieElement::zero(); gens.len()];
    for line in d_lines {
        let mut cur = line.cursor();
        let (gname, col) = cur.ident()?;
        let &g = index.get(&gname).ok_or(DslError::UnknownGenerator {
            line: line.number,
            col,
            name: gname.clone(),
        })?;
        if seen_d[g].is_some() {
            return Err(DslError::Syntax {
                line: line.number,
                col,
                message: format!("differential of `{gname}` given twice"),
            });
        }
        seen_d[g] = Some(line.number);
        cur.expect('=')?;
        let degree_error = |message: String| DslError::Degree {
            line: line.number,
            message,
        };
        match kind {
            ModelKind::Sullivan => {
                let mut e = Element::zero();
                cur.sum(|c| sullivan_term(c, &gens, &index), |t, s| e.add_assign_scaled(&t, &s))?;
                cur.finish()?;
                let expected = gens[g].degree + 1;
                match e.degree(&gens) {
                    Err(_) => return Err(degree_error(format!("d {gname} is not homogeneous"))),
                    Ok(Some(d)) if d != expected => {
                        return Err(degree_error(format!("d {gname} has degree {d}, expected {expected}")))
                    }
                    _ => {}
                }
                sullivan_d[g] = e;
            }
            ModelKind::Quillen => {
                let e = lie_sum(&mut cur, &gens, &index)?;
                cur.finish()?;
                let expected = gens[g].degree as i64 - 1;
                match e.degree(&gens) {
                    Err(_) => return Err(degree_error(format!("d {gname} is not homogeneous"))),
                    Ok(Some(d)) if d as i64 != expected => {
                        return Err(degree_error(format!("d {gname} has degree {d}, expected {expected}")))
                    }
                    _ => {}
                }
                lie_d[g] = e;
            }
        }
    }

    let (model, report) = match kind {
        ModelKind::Sullivan => {
            let m = SullivanModel::new(name, gens.clone(), sullivan_d);
            let r = m.validate();
            (Model::Sullivan(m), r)
        }
        ModelKind::Quillen => {
            let m = DGLModel::new(name, gens.clone(), lie_d);
            let r = m.validate();
            (Model::Quillen(m), r)
        }
    };
    if let Some(first) = report.failures.first() {
        let g = index[&first.generator];
        let line = match first.check {
            Check::DegreeBound | Check::DuplicateName => gen_lines[g],
            _ => seen_d[g].unwrap_or(gen_lines[g]),
        };
        return Err(DslError::Validation { line, report });
    }
    Ok(model)
}

/// Canonical text: header, generators in declaration order, then one `d`
/// line per generator with nonzero differential.
pub fn serialize(model: &Model) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {} : {}", model.name(), model.kind().as_str());
    match model {
        Model::Sullivan(m) => {
            for g in m.generators() {
                let _ = writeln!(out, "gen {} : {}", g.name, g.degree);
            }
            for (g, dg) in m.generators().iter().zip(m.differential()) {
                if !dg.is_zero() {
                    let _ = writeln!(out, "d {} = {}", g.name, dg.display(m.generators()));
                }
            }
        }
        Model::Quillen(m) => {
            for g in m.generators() {
                let _ = writeln!(out, "gen {} : {}", g.name, g.degree);
            }
            for (k, g) in m.generators().iter().enumerate() {
                if !m.differential()[k].is_zero() {
                    let _ = writeln!(out, "d {} = {}", g.name, m.display_differential(k));
                }
            }
        }
    }
    out
}
