use std::fmt;

use super::rational::Q;

/// Exact coefficient field with the two derivations used throughout: `∂/∂s`
/// (the curve variable, or the local coordinate of a Laurent field) and
/// `∂/∂x` (only non-trivial over the base `ℚ(x)`).
///
/// Elements carry their own context (number field modulus, Laurent window),
/// so constants are produced from an existing element via `zero_like` etc.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero (or, for Laurent values, an unknown leading term).
    fn inv(&self) -> Option<Self>;
    fn from_q_like(&self, q: &Q) -> Self;
    fn partial_s(&self) -> Self;
    fn partial_x(&self) -> Self;

    /// Whether `dx` is a meaningful differential for this field.
    fn has_x(&self) -> bool {
        false
    }

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn scale(&self, q: &Q) -> Self {
        self.mul(&self.from_q_like(q))
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_q_like(&Q::int(n))
    }

    fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.one_like();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    /// Canonical serialization used for deterministic ordering.
    fn key(&self) -> String {
        self.to_string()
    }
}

/// Parenthesize a rendered value if it is a sum.
pub(crate) fn paren(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.contains(" + ") || body.contains(" - ") {
        format!("({})", s)
    } else {
        s.to_string()
    }
}

/// Parenthesize for use as a multiplicative factor (sums and negatives).
pub(crate) fn paren_factor(s: &str) -> String {
    if s.starts_with('-') || s.contains(" + ") || s.contains(" - ") || s.contains('/') {
        format!("({})", s)
    } else {
        s.to_string()
    }
}

/// Join `(coefficient rendering, monomial rendering)` pairs into a sum.
/// An empty monomial means the constant term.
pub(crate) fn render_sum(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let (neg, body) = match c.strip_prefix('-') {
            Some(b) if !b.contains(" + ") && !b.contains(" - ") => (true, b.to_string()),
            _ => (false, c.clone()),
        };
        let piece = if mono.is_empty() {
            paren(&body)
        } else if body == "1" {
            mono.clone()
        } else {
            format!("{}*{}", paren_factor(&body), mono)
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
            out.push_str(&piece);
        } else if neg {
            out.push_str(" - ");
            out.push_str(&piece);
        } else {
            out.push_str(" + ");
            out.push_str(&piece);
        }
    }
    out
}
