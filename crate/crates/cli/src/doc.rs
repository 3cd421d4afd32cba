//! Plain-text input documents.
//!
//! One statement per line; `#` starts a comment.
//!
//! ```text
//! base Q | Qx          m 3          r 4          prec 5
//! let NAME = EXPR
//! triple WSUM                      lift POINT = EXPR          choices canonical | random SEED
//! cycle EXPR ; EXPR ; EXPR         orientation RATIONAL
//! chart I removes POINT, ...       gamma I = WSUM             eps I at POINT = B2SUM
//! beta I J = B2SUM                 basechart I                pick first | random SEED
//! ```
//!
//! A `POINT` is `inf` or a polynomial in `s`.

use infchow::algebra::Q;

use crate::expr::{self, parse_b2_sum, parse_expr, parse_wedge_sum, Expr, Span, SyntaxError};
use crate::InputError;

/// Where a piece of source text came from.
#[derive(Clone, Debug)]
pub struct Src {
    pub origin: String,
    pub line: String,
    /// Byte offset of the parsed fragment within `line`.
    pub offset: usize,
}

impl Src {
    pub fn arg(k: usize, text: &str) -> Self {
        Src { origin: format!("argument {}", k), line: text.to_string(), offset: 0 }
    }

    pub fn error(&self, e: SyntaxError) -> InputError {
        let shifted = SyntaxError::new(Span { start: e.span.start + self.offset, end: e.span.end + self.offset }, e.msg);
        InputError(format!("{}, {}", self.origin, shifted.render(&self.line)))
    }

    pub fn whole(&self, msg: impl Into<String>) -> InputError {
        let len = self.line.len().max(self.offset + 1);
        self.error(SyntaxError::new(Span { start: 0, end: len - self.offset }, msg))
    }

    fn sub(&self, offset: usize) -> Src {
        Src { offset: self.offset + offset, ..self.clone() }
    }
}

#[derive(Clone, Debug)]
pub enum PointAst {
    Inf,
    At(Expr),
}

/// Randomized choices: `None` is the canonical (zero) one.
pub type Seeded = Option<u64>;

#[derive(Clone, Debug)]
pub enum Stmt {
    Base(String),
    M(usize),
    R(usize),
    Prec(usize),
    Let(String, Expr),
    Triple(expr::WedgeSum),
    Lift(PointAst, Expr),
    Choices(Seeded),
    Cycle(Vec<Expr>),
    Orientation(Q),
    Chart(usize, Vec<(PointAst, Src)>),
    Gamma(usize, expr::WedgeSum),
    Eps(usize, PointAst, expr::B2Sum),
    Beta(usize, usize, expr::B2Sum),
    BaseChart(usize),
    Pick(Seeded),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub stmts: Vec<(Stmt, Src)>,
}

impl Document {
    pub fn header_usize(&self, f: impl Fn(&Stmt) -> Option<usize>) -> Option<usize> {
        self.stmts.iter().filter_map(|(s, _)| f(s)).next_back()
    }

    pub fn m(&self) -> Option<usize> {
        self.header_usize(|s| if let Stmt::M(v) = s { Some(*v) } else { None })
    }

    pub fn r(&self) -> Option<usize> {
        self.header_usize(|s| if let Stmt::R(v) = s { Some(*v) } else { None })
    }

    pub fn prec(&self) -> Option<usize> {
        self.header_usize(|s| if let Stmt::Prec(v) = s { Some(*v) } else { None })
    }

    pub fn base(&self) -> Option<&str> {
        self.stmts.iter().filter_map(|(s, _)| if let Stmt::Base(b) = s { Some(b.as_str()) } else { None }).next_back()
    }
}

fn split_word(s: &str) -> (&str, &str, usize) {
    let t = s.trim_start();
    let lead = s.len() - t.len();
    let end = t.find(char::is_whitespace).unwrap_or(t.len());
    let rest = &t[end..];
    let rest_t = rest.trim_start();
    (&t[..end], rest_t, lead + end + (rest.len() - rest_t.len()))
}

fn parse_index(src: &Src, w: &str) -> Result<usize, InputError> {
    w.parse::<usize>().map_err(|_| src.whole(format!("expected an index, found '{}'", w)))
}

fn parse_seeded(src: &Src, rest: &str) -> Result<Seeded, InputError> {
    let (w, tail, _) = split_word(rest);
    match (w, tail) {
        ("canonical", "") | ("first", "") => Ok(None),
        ("random", seed) => seed.trim().parse::<u64>().map(Some).map_err(|_| src.whole("expected 'random SEED'")),
        _ => Err(src.whole("expected 'canonical', 'first' or 'random SEED'")),
    }
}

fn point(src: &Src, text: &str) -> Result<PointAst, InputError> {
    if text.trim() == "inf" {
        return Ok(PointAst::Inf);
    }
    parse_expr(text).map(PointAst::At).map_err(|e| src.error(e))
}

/// `LHS = RHS`, with the offset of `RHS`.
fn split_eq<'a>(src: &Src, s: &'a str) -> Result<(&'a str, &'a str, usize), InputError> {
    match s.find('=') {
        Some(k) => Ok((s[..k].trim(), &s[k + 1..], k + 1)),
        None => Err(src.whole("expected '='")),
    }
}

fn statement(src: &Src, body: &str) -> Result<Stmt, InputError> {
    let (kw, rest, off) = split_word(body);
    let at = src.sub(off);
    let one_usize = || -> Result<usize, InputError> { parse_index(src, rest.trim()) };
    Ok(match kw {
        "base" => match rest.trim() {
            b @ ("Q" | "Qx") => Stmt::Base(b.to_string()),
            _ => return Err(src.whole("base is Q or Qx")),
        },
        "m" => Stmt::M(one_usize()?),
        "r" => Stmt::R(one_usize()?),
        "prec" => Stmt::Prec(one_usize()?),
        "let" => {
            let (name, rhs, k) = split_eq(&at, rest)?;
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || ["s", "x", "t", "u", "exp"].contains(&name) || name.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(at.whole(format!("'{}' cannot be bound", name)));
            }
            Stmt::Let(name.to_string(), parse_expr(rhs).map_err(|e| at.sub(k).error(e))?)
        }
        "triple" => Stmt::Triple(parse_wedge_sum(rest).map_err(|e| at.error(e))?),
        "lift" => {
            let (p, rhs, k) = split_eq(&at, rest)?;
            Stmt::Lift(point(&at, p)?, parse_expr(rhs).map_err(|e| at.sub(k).error(e))?)
        }
        "choices" => Stmt::Choices(parse_seeded(src, rest)?),
        "pick" => Stmt::Pick(parse_seeded(src, rest)?),
        "cycle" => {
            let mut out = Vec::new();
            let mut k = 0;
            for part in rest.split(';') {
                out.push(parse_expr(part).map_err(|e| at.sub(k).error(e))?);
                k += part.len() + 1;
            }
            if out.len() != 3 {
                return Err(src.whole(format!("a cycle has 3 coordinates, found {}", out.len())));
            }
            Stmt::Cycle(out)
        }
        "orientation" => Stmt::Orientation(Q::parse(rest.trim()).ok_or_else(|| src.whole("expected a rational"))?),
        "chart" => {
            let (i, tail, k) = split_word(rest);
            let (kw2, pts, k2) = split_word(tail);
            if kw2 != "removes" {
                return Err(src.whole("expected 'chart I removes POINT, ...'"));
            }
            let psrc = at.sub(k + k2);
            let mut out = Vec::new();
            let mut k3 = 0;
            if !pts.trim().is_empty() {
                for part in pts.split(',') {
                    let s = psrc.sub(k3);
                    out.push((point(&s, part)?, s));
                    k3 += part.len() + 1;
                }
            }
            Stmt::Chart(parse_index(src, i)?, out)
        }
        "gamma" => {
            let (i, rhs, k) = split_eq(&at, rest)?;
            Stmt::Gamma(parse_index(src, i)?, parse_wedge_sum(rhs).map_err(|e| at.sub(k).error(e))?)
        }
        "eps" => {
            let (lhs, rhs, k) = split_eq(&at, rest)?;
            let (i, tail, k1) = split_word(lhs);
            let (kw2, p, k2) = split_word(tail);
            if kw2 != "at" {
                return Err(src.whole("expected 'eps I at POINT = B2SUM'"));
            }
            Stmt::Eps(parse_index(src, i)?, point(&at.sub(k1 + k2), p)?, parse_b2_sum(rhs).map_err(|e| at.sub(k).error(e))?)
        }
        "beta" => {
            let (lhs, rhs, k) = split_eq(&at, rest)?;
            let (i, j, _) = split_word(lhs);
            Stmt::Beta(parse_index(src, i)?, parse_index(src, j.trim())?, parse_b2_sum(rhs).map_err(|e| at.sub(k).error(e))?)
        }
        "basechart" => Stmt::BaseChart(one_usize()?),
        _ => return Err(src.whole(format!("unknown statement '{}'", kw))),
    })
}

pub fn parse_document(origin: &str, text: &str) -> Result<Document, InputError> {
    let mut stmts = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(c) => &raw[..c],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let src = Src { origin: format!("{}:{}", origin, k + 1), line: line.trim_end().to_string(), offset: 0 };
        let st = statement(&src, &src.line.clone())?;
        stmts.push((st, src));
    }
    Ok(Document { stmts })
}
