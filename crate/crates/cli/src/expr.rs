//! Expressions, wedges and B₂ combinations: lexer, parser and printer.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := rational | 's' | 'x' | 't' | 'u' | name | 'exp' '(' expr ')' | '(' expr ')'
//! wedge  := expr ('/\' expr){1,2}
//! wsum   := wedge | wterm (('+'|'-') wterm)*      wterm := [rational '*'?] '{' wedge '}'
//! b2sum  := b2 (('+'|'-') b2)*                   b2    := [rational '*'?] '[' expr ']' ('(x)' expr)?
//! ```

use std::fmt;

use infchow::algebra::{Field, Q};

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(self, o: Span) -> Span {
        Span { start: self.start.min(o.start), end: self.end.max(o.end) }
    }
}

/// An error at a position of some source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub span: Span,
    pub msg: String,
}

impl SyntaxError {
    pub fn new(span: Span, msg: impl Into<String>) -> Self {
        SyntaxError { span, msg: msg.into() }
    }

    /// `column N: msg` followed by the source line and a caret.
    pub fn render(&self, src: &str) -> String {
        let col = src[..self.span.start.min(src.len())].chars().count();
        let width = src[self.span.start.min(src.len())..self.span.end.min(src.len())].chars().count().max(1);
        format!("column {}: {}\n  {}\n  {}{}", col + 1, self.msg, src, " ".repeat(col), "^".repeat(width))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Num(Q),
    Var(char),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Exp(Box<Expr>),
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: Kind,
    pub span: Span,
}

/// Structural equality, ignoring spans.
impl PartialEq for Expr {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind
    }
}

#[derive(Clone, Debug)]
pub struct Wedge {
    pub factors: Vec<Expr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WedgeSum {
    pub terms: Vec<(Q, Wedge)>,
}

#[derive(Clone, Debug)]
pub struct B2Term {
    pub coef: Q,
    pub x: Expr,
    pub y: Option<Expr>,
    pub span: Span,
}

impl PartialEq for Wedge {
    fn eq(&self, o: &Self) -> bool {
        self.factors == o.factors
    }
}

impl PartialEq for B2Term {
    fn eq(&self, o: &Self) -> bool {
        self.coef == o.coef && self.x == o.x && self.y == o.y
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct B2Sum {
    pub terms: Vec<B2Term>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Op(char),
    Wedge,
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let mut out = Vec::new();
    let b: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < b.len() {
        let (pos, c) = b[i];
        let end_of = |j: usize| if j < b.len() { b[j].0 } else { src.len() };
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < b.len() && b[j].1.is_ascii_digit() {
                j += 1;
            }
            out.push((Tok::Int(src[pos..end_of(j)].to_string()), Span { start: pos, end: end_of(j) }));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < b.len() && (b[j].1.is_ascii_alphanumeric() || b[j].1 == '_') {
                j += 1;
            }
            out.push((Tok::Ident(src[pos..end_of(j)].to_string()), Span { start: pos, end: end_of(j) }));
            i = j;
        } else if c == '/' && i + 1 < b.len() && b[i + 1].1 == '\\' {
            out.push((Tok::Wedge, Span { start: pos, end: end_of(i + 2) }));
            i += 2;
        } else if "+-*/^()[]{}".contains(c) {
            out.push((Tok::Op(c), Span { start: pos, end: end_of(i + 1) }));
            i += 1;
        } else {
            return Err(SyntaxError::new(Span { start: pos, end: end_of(i + 1) }, format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    src: &'a str,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) | Tok::Ident(s) => format!("'{}'", s),
        Tok::Op(c) => format!("'{}'", c),
        Tok::Wedge => "'/\\'".into(),
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, SyntaxError> {
        Ok(Parser { toks: lex(src)?, pos: 0, src })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn span_here(&self) -> Span {
        match self.toks.get(self.pos) {
            Some((_, s)) => *s,
            None => Span { start: self.src.len(), end: self.src.len() + 1 },
        }
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn is_op(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Op(c))
    }

    fn expect_op(&mut self, c: char) -> Result<Span, SyntaxError> {
        if self.is_op(c) {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&format!("'{}'", c)))
        }
    }

    fn unexpected(&self, want: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => SyntaxError::new(self.span_here(), format!("expected {}, found {}", want, describe(t))),
            None => SyntaxError::new(self.span_here(), format!("expected {}, found end of input", want)),
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(SyntaxError::new(self.span_here(), format!("unexpected {}", describe(t)))),
        }
    }

    fn integer(&mut self) -> Result<(i64, Span), SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                let sp = self.bump().1;
                s.parse::<i64>().map(|v| (v, sp)).map_err(|_| SyntaxError::new(sp, "integer too large"))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    /// `p` or `p/q`.
    fn rational(&mut self) -> Result<(Q, Span), SyntaxError> {
        let (p, sp) = self.integer()?;
        if self.is_op('/') && matches!(self.peek_at(1), Some(Tok::Int(_))) {
            self.bump();
            let (q, sq) = self.integer()?;
            if q == 0 {
                return Err(SyntaxError::new(sq, "zero denominator"));
            }
            return Ok((Q::new(p, q), sp.join(sq)));
        }
        Ok((Q::int(p), sp))
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut a = self.term()?;
        loop {
            let op = if self.is_op('+') {
                '+'
            } else if self.is_op('-') {
                '-'
            } else {
                return Ok(a);
            };
            self.bump();
            let b = self.term()?;
            let span = a.span.join(b.span);
            let kind = if op == '+' { Kind::Add(Box::new(a), Box::new(b)) } else { Kind::Sub(Box::new(a), Box::new(b)) };
            a = Expr { kind, span };
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut a = self.factor()?;
        loop {
            let op = if self.is_op('*') {
                '*'
            } else if self.is_op('/') {
                '/'
            } else {
                return Ok(a);
            };
            self.bump();
            let b = self.factor()?;
            let span = a.span.join(b.span);
            let kind = if op == '*' { Kind::Mul(Box::new(a), Box::new(b)) } else { Kind::Div(Box::new(a), Box::new(b)) };
            a = Expr { kind, span };
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        if self.is_op('-') {
            let sp = self.bump().1;
            let a = self.factor()?;
            let span = sp.join(a.span);
            return Ok(Expr { kind: Kind::Neg(Box::new(a)), span });
        }
        let a = self.atom()?;
        if self.is_op('^') {
            self.bump();
            let neg = if self.is_op('-') {
                self.bump();
                true
            } else {
                false
            };
            let (e, se) = self.integer()?;
            let span = a.span.join(se);
            return Ok(Expr { kind: Kind::Pow(Box::new(a), if neg { -e } else { e }), span });
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let (q, span) = self.rational()?;
                Ok(Expr { kind: Kind::Num(q), span })
            }
            Some(Tok::Ident(name)) => {
                let sp = self.bump().1;
                match name.as_str() {
                    "s" | "x" | "t" | "u" => Ok(Expr { kind: Kind::Var(name.chars().next().unwrap()), span: sp }),
                    "exp" => {
                        self.expect_op('(')?;
                        let a = self.expr()?;
                        let close = self.expect_op(')')?;
                        Ok(Expr { kind: Kind::Exp(Box::new(a)), span: sp.join(close) })
                    }
                    _ => Ok(Expr { kind: Kind::Name(name), span: sp }),
                }
            }
            Some(Tok::Op('(')) => {
                let open = self.bump().1;
                let mut a = self.expr()?;
                let close = self.expect_op(')')?;
                a.span = open.join(close);
                Ok(a)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn wedge(&mut self) -> Result<Wedge, SyntaxError> {
        let first = self.expr()?;
        let mut span = first.span;
        let mut factors = vec![first];
        while self.peek() == Some(&Tok::Wedge) {
            self.bump();
            let e = self.expr()?;
            span = span.join(e.span);
            factors.push(e);
        }
        if factors.len() < 2 || factors.len() > 3 {
            return Err(SyntaxError::new(span, format!("a wedge has 2 or 3 factors, found {}", factors.len())));
        }
        Ok(Wedge { factors, span })
    }

    /// Optional sign and rational coefficient in front of a bracketed term.
    fn coefficient(&mut self, first: bool, open: char) -> Result<Option<Q>, SyntaxError> {
        let mut sign = Q::one();
        if self.is_op('+') && !first {
            self.bump();
        } else if self.is_op('-') {
            self.bump();
            sign = Q::int(-1);
        } else if !first {
            return Ok(None);
        }
        let mut c = Q::one();
        if matches!(self.peek(), Some(Tok::Int(_))) {
            c = self.rational()?.0;
            if self.is_op('*') {
                self.bump();
            }
        }
        if !self.is_op(open) {
            return Err(self.unexpected(&format!("'{}'", open)));
        }
        Ok(Some(sign.mul(&c)))
    }

    fn wedge_sum(&mut self) -> Result<WedgeSum, SyntaxError> {
        if !self.braced_term_ahead() {
            let w = self.wedge()?;
            return Ok(WedgeSum { terms: vec![(Q::one(), w)] });
        }
        let mut terms = Vec::new();
        let mut first = true;
        while let Some(c) = self.coefficient(first, '{')? {
            first = false;
            self.expect_op('{')?;
            let w = self.wedge()?;
            self.expect_op('}')?;
            terms.push((c, w));
            if self.peek().is_none() {
                break;
            }
        }
        Ok(WedgeSum { terms })
    }

    /// `[-][p[/q]][*]{` ahead.
    fn braced_term_ahead(&self) -> bool {
        let mut k = 0;
        if self.peek_at(k) == Some(&Tok::Op('-')) {
            k += 1;
        }
        if matches!(self.peek_at(k), Some(Tok::Int(_))) {
            k += 1;
            if self.peek_at(k) == Some(&Tok::Op('/')) && matches!(self.peek_at(k + 1), Some(Tok::Int(_))) {
                k += 2;
            }
            if self.peek_at(k) == Some(&Tok::Op('*')) {
                k += 1;
            }
        }
        self.peek_at(k) == Some(&Tok::Op('{'))
    }

    fn b2_sum(&mut self) -> Result<B2Sum, SyntaxError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let start = self.span_here();
            let c = match self.coefficient(first, '[')? {
                Some(c) => c,
                None => break,
            };
            first = false;
            self.expect_op('[')?;
            let x = self.expr()?;
            let mut span = start.join(self.expect_op(']')?);
            let tensor = self.is_op('(') && self.peek_at(1) == Some(&Tok::Ident("x".into())) && self.peek_at(2) == Some(&Tok::Op(')'));
            let y = if tensor {
                self.bump();
                self.bump();
                self.bump();
                // a term, so that `+`/`-` start the next B₂ term
                let y = self.term()?;
                span = span.join(y.span);
                Some(y)
            } else {
                None
            };
            terms.push(B2Term { coef: c, x, y, span });
            if self.peek().is_none() {
                break;
            }
        }
        Ok(B2Sum { terms })
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_wedge_sum(src: &str) -> Result<WedgeSum, SyntaxError> {
    let mut p = Parser::new(src)?;
    let w = p.wedge_sum()?;
    p.finish()?;
    Ok(w)
}

pub fn parse_b2_sum(src: &str) -> Result<B2Sum, SyntaxError> {
    let mut p = Parser::new(src)?;
    let b = p.b2_sum()?;
    p.finish()?;
    if b.terms.is_empty() {
        return Err(SyntaxError::new(Span { start: 0, end: src.len().max(1) }, "expected '['"));
    }
    Ok(b)
}

fn prec(k: &Kind) -> u8 {
    match k {
        Kind::Add(..) | Kind::Sub(..) => 1,
        Kind::Mul(..) | Kind::Div(..) => 2,
        Kind::Neg(..) => 3,
        Kind::Pow(..) => 4,
        Kind::Num(q) if !q.is_integer() => 4,
        _ => 5,
    }
}

fn starts_with_integer(e: &Expr) -> bool {
    match &e.kind {
        Kind::Num(_) => true,
        Kind::Pow(b, _) => matches!(&b.kind, Kind::Num(q) if q.is_integer()),
        _ => false,
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(&e.kind) < min {
        write!(f, "({})", e)
    } else {
        write!(f, "{}", e)
    }
}

/// Canonical form: single spaces around `+`/`-`, none around `*`, `/`, `^`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Num(q) => write!(f, "{}", q),
            Kind::Var(c) => write!(f, "{}", c),
            Kind::Name(n) => write!(f, "{}", n),
            Kind::Neg(a) => {
                write!(f, "-")?;
                child(f, a, 3)
            }
            Kind::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            Kind::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, " - ")?;
                child(f, b, 2)
            }
            Kind::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Kind::Div(a, b) => {
                child(f, a, 2)?;
                write!(f, "/")?;
                // `p/q` would read back as one rational literal
                if starts_with_integer(b) {
                    write!(f, "({})", b)
                } else {
                    child(f, b, 3)
                }
            }
            Kind::Pow(a, e) => {
                child(f, a, 5)?;
                write!(f, "^{}", e)
            }
            Kind::Exp(a) => write!(f, "exp({})", a),
        }
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" /\\ "))
    }
}

fn coef_prefix(f: &mut fmt::Formatter<'_>, k: usize, c: &Q) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    match (k, neg) {
        (0, true) => write!(f, "-")?,
        (0, false) => {}
        (_, true) => write!(f, " - ")?,
        (_, false) => write!(f, " + ")?,
    }
    if a != Q::one() {
        write!(f, "{}*", a)?;
    }
    Ok(())
}

impl fmt::Display for WedgeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.len() == 1 && self.terms[0].0 == Q::one() {
            return write!(f, "{}", self.terms[0].1);
        }
        for (k, (c, w)) in self.terms.iter().enumerate() {
            coef_prefix(f, k, c)?;
            write!(f, "{{{}}}", w)?;
        }
        Ok(())
    }
}

impl fmt::Display for B2Sum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            coef_prefix(f, k, &t.coef)?;
            write!(f, "[{}]", t.x)?;
            if let Some(y) = &t.y {
                write!(f, "(x)")?;
                child(f, y, 2)?;
            }
        }
        Ok(())
    }
}
