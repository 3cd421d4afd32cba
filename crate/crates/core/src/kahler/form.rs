use std::fmt;

use crate::algebra::field::paren_factor;
use crate::algebra::{Field, Q};

/// A Kähler 1-form `f ds + g dx`. Over fields without `x` the `dx` part is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Form1<F: Field> {
    pub ds: F,
    pub dx: F,
}

/// A 2-form `h ds∧dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form2<F: Field> {
    pub dsdx: F,
}

impl<F: Field> Form1<F> {
    pub fn zero(ctx: &F) -> Self {
        Form1 { ds: ctx.zero_like(), dx: ctx.zero_like() }
    }

    pub fn ds(f: F) -> Self {
        let z = f.zero_like();
        Form1 { ds: f, dx: z }
    }

    pub fn is_zero(&self) -> bool {
        self.ds.is_zero() && self.dx.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Form1 { ds: self.ds.add(&o.ds), dx: self.dx.add(&o.dx) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Form1 { ds: self.ds.sub(&o.ds), dx: self.dx.sub(&o.dx) }
    }

    pub fn neg(&self) -> Self {
        Form1 { ds: self.ds.neg(), dx: self.dx.neg() }
    }

    pub fn mul(&self, f: &F) -> Self {
        Form1 { ds: self.ds.mul(f), dx: self.dx.mul(f) }
    }

    pub fn scale(&self, q: &Q) -> Self {
        Form1 { ds: self.ds.scale(q), dx: self.dx.scale(q) }
    }

    /// Projection to relative differentials (drops `dx`).
    pub fn relative(&self) -> Self {
        Form1 { ds: self.ds.clone(), dx: self.dx.zero_like() }
    }

    pub fn wedge(&self, o: &Self) -> Form2<F> {
        Form2 { dsdx: self.ds.mul(&o.dx).sub(&self.dx.mul(&o.ds)) }
    }
}

impl<F: Field> Form2<F> {
    pub fn zero(ctx: &F) -> Self {
        Form2 { dsdx: ctx.zero_like() }
    }
    pub fn add(&self, o: &Self) -> Self {
        Form2 { dsdx: self.dsdx.add(&o.dsdx) }
    }
    pub fn sub(&self, o: &Self) -> Self {
        Form2 { dsdx: self.dsdx.sub(&o.dsdx) }
    }
    pub fn mul(&self, f: &F) -> Self {
        Form2 { dsdx: self.dsdx.mul(f) }
    }
    pub fn scale(&self, q: &Q) -> Self {
        Form2 { dsdx: self.dsdx.scale(q) }
    }
    pub fn is_zero(&self) -> bool {
        self.dsdx.is_zero()
    }
}

/// Exterior derivative of a function.
pub fn d<F: Field>(f: &F) -> Form1<F> {
    let dx = if f.has_x() { f.partial_x() } else { f.zero_like() };
    Form1 { ds: f.partial_s(), dx }
}

/// `df/f`.
pub fn dlog<F: Field>(f: &F) -> Option<Form1<F>> {
    let i = f.inv()?;
    Some(d(f).mul(&i))
}

fn render_term(s: String, name: &str) -> (bool, String) {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) if !b.contains(" + ") && !b.contains(" - ") => (true, b.to_string()),
        _ => (false, s),
    };
    let piece = if body == "1" {
        name.to_string()
    } else {
        format!("{} {}", paren_factor(&body), name)
    };
    (neg, piece)
}

fn join(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, p)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&p);
    }
    out
}

impl<F: Field> fmt::Display for Form1<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.ds.is_zero() {
            parts.push(render_term(self.ds.to_string(), "ds"));
        }
        if !self.dx.is_zero() {
            parts.push(render_term(self.dx.to_string(), "dx"));
        }
        write!(f, "{}", join(parts))
    }
}

impl<F: Field> fmt::Display for Form2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.dsdx.is_zero() {
            parts.push(render_term(self.dsdx.to_string(), "ds^dx"));
        }
        write!(f, "{}", join(parts))
    }
}
