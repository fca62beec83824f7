use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use thiserror::Error;

use crate::field::Field;
use crate::monomial::{Monomial, Order, MAX_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("too many variables: {0} (at most {MAX_VARS})")]
    TooManyVariables(usize),
    #[error("variable weights must be positive")]
    NonPositiveWeight,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Polynomial ring `F[x_0, ..., x_{n-1}]` with a monomial order and a positive grading.
#[derive(Clone, Debug)]
pub struct Ring<F: Field> {
    field: F,
    names: Vec<String>,
    order: Order,
    weights: Vec<u32>,
}

/// Sparse polynomial: terms sorted strictly decreasing in the owning ring's order,
/// no zero coefficients.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    pub(crate) terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    /// Leading monomial; panics on zero.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F::Elem {
        &self.terms[0].1
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    /// Largest standard degree of a term.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg).max().unwrap_or(0)
    }

    pub fn weighted_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.wdeg).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, names: &[&str], order: Order) -> Result<Arc<Self>, RingError> {
        let weights = vec![1; names.len()];
        Self::with_weights(field, names, order, &weights)
    }

    pub fn with_weights(field: F, names: &[&str], order: Order, weights: &[u32]) -> Result<Arc<Self>, RingError> {
        Self::from_owned(field, names.iter().map(|s| s.to_string()).collect(), order, weights.to_vec())
    }

    pub fn from_owned(field: F, names: Vec<String>, order: Order, weights: Vec<u32>) -> Result<Arc<Self>, RingError> {
        if names.len() > MAX_VARS {
            return Err(RingError::TooManyVariables(names.len()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(RingError::NonPositiveWeight);
        }
        assert_eq!(names.len(), weights.len());
        Ok(Arc::new(Ring { field, names, order, weights }))
    }

    /// Same variables and grading, different order.
    pub fn with_order(&self, order: Order) -> Arc<Self> {
        Arc::new(Ring { field: self.field.clone(), names: self.names.clone(), order, weights: self.weights.clone() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.names.len())
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        assert!(exps.len() <= self.nvars());
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        let w = exps.iter().zip(&self.weights).map(|(&a, &b)| a as u32 * b).sum();
        Monomial::from_parts(e, w)
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0u16; self.nvars()];
        e[i] = 1;
        self.monomial(&e)
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for i in 0..self.nvars() {
            e[i] = a.exps[i].max(b.exps[i]);
        }
        let w = (0..self.nvars()).map(|i| e[i] as u32 * self.weights[i]).sum();
        Monomial::from_parts(e, w)
    }

    pub fn gcd_monomial(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for i in 0..self.nvars() {
            e[i] = a.exps[i].min(b.exps[i]);
        }
        let w = (0..self.nvars()).map(|i| e[i] as u32 * self.weights[i]).sum();
        Monomial::from_parts(e, w)
    }

    pub fn zero(&self) -> Poly<F> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        if self.field.is_zero(&c) {
            return Poly::zero();
        }
        Poly { terms: vec![(Monomial::one(), c)] }
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly { terms: vec![(self.var_monomial(i), self.field.one())] }
    }

    pub fn var_named(&self, name: &str) -> Poly<F> {
        self.var(self.var_index(name).unwrap_or_else(|| panic!("unknown variable {name}")))
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        if self.field.is_zero(&c) {
            return Poly::zero();
        }
        Poly { terms: vec![(m, c)] }
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        Poly { terms: out }
    }

    pub fn from_exponents(&self, terms: &[(Vec<u16>, F::Elem)]) -> Poly<F> {
        self.from_terms(terms.iter().map(|(e, c)| (self.monomial(e), c.clone())).collect())
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.lin_comb(a, &self.field.one(), b, &self.field.one())
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.lin_comb(a, &self.field.one(), b, &self.field.neg(&self.field.one()))
    }

    pub fn neg(&self, a: &Poly<F>) -> Poly<F> {
        Poly { terms: a.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect() }
    }

    pub fn scale(&self, a: &Poly<F>, c: &F::Elem) -> Poly<F> {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (*m, self.field.mul(x, c))).collect() }
    }

    /// `ca * a + cb * b`
    pub fn lin_comb(&self, a: &Poly<F>, ca: &F::Elem, b: &Poly<F>, cb: &F::Elem) -> Poly<F> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push((a.terms[i].0, f.mul(&a.terms[i].1, ca)));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.terms[j].0, f.mul(&b.terms[j].1, cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&f.mul(&a.terms[i].1, ca), &f.mul(&b.terms[j].1, cb));
                    if !f.is_zero(&c) {
                        out.push((a.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().map(|(m, c)| (*m, f.mul(c, ca))));
        out.extend(b.terms[j..].iter().map(|(m, c)| (*m, f.mul(c, cb))));
        out.retain(|(_, c)| !f.is_zero(c));
        Poly { terms: out }
    }

    /// `a - c * m * b`, the basic reduction step.
    pub fn sub_mul_term(&self, a: &Poly<F>, c: &F::Elem, m: &Monomial, b: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let negc = f.neg(c);
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let bm = b.terms[j].0.mul(m);
            match self.cmp(&a.terms[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, f.mul(&b.terms[j].1, &negc)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(&a.terms[i].1, &f.mul(&b.terms[j].1, &negc));
                    if !f.is_zero(&v) {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend(b.terms[j..].iter().map(|(bm, x)| (bm.mul(m), f.mul(x, &negc))));
        Poly { terms: out }
    }

    pub fn mul_term(&self, a: &Poly<F>, m: &Monomial, c: &F::Elem) -> Poly<F> {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(x, y)| (x.mul(m), self.field.mul(y, c))).collect() }
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            let t = self.mul_term(big, m, c);
            acc = self.add(&acc, &t);
        }
        acc
    }

    pub fn pow(&self, a: &Poly<F>, e: u32) -> Poly<F> {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn make_monic(&self, a: &Poly<F>) -> Poly<F> {
        if a.is_zero() || self.field.is_one(a.lc()) {
            return a.clone();
        }
        let inv = self.field.inv(a.lc());
        self.scale(a, &inv)
    }

    /// Re-sort terms after the order changed (same variables and grading).
    pub fn resort(&self, a: &Poly<F>) -> Poly<F> {
        let mut terms = a.terms.clone();
        terms.sort_by(|x, y| self.cmp(&y.0, &x.0));
        Poly { terms }
    }

    /// Homogeneous with respect to the ring grading.
    pub fn is_homogeneous(&self, a: &Poly<F>) -> bool {
        a.terms.windows(2).all(|w| w[0].0.wdeg == w[1].0.wdeg)
    }

    pub fn is_standard_homogeneous(&self, a: &Poly<F>) -> bool {
        a.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }

    pub fn diff(&self, a: &Poly<F>, i: usize) -> Poly<F> {
        let mut terms = Vec::new();
        let e1 = self.var_monomial(i);
        for (m, c) in &a.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let coef = self.field.mul(c, &self.field.from_i64(e as i64));
            if self.field.is_zero(&coef) {
                continue;
            }
            terms.push((m.div(&e1), coef));
        }
        // derivative preserves relative order of the surviving terms only for
        // degree-compatible orders, so sort defensively
        self.from_terms(terms)
    }

    /// Ring homomorphism into `target` sending variable `i` to `images[i]`.
    pub fn substitute(&self, a: &Poly<F>, target: &Ring<F>, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars());
        let mut cache: HashMap<(usize, u16), Poly<F>> = HashMap::new();
        let mut acc: Vec<(Monomial, F::Elem)> = Vec::new();
        for (m, c) in &a.terms {
            let mut t = target.constant(c.clone());
            for i in 0..self.nvars() {
                let e = m.exps[i];
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| target.pow(&images[i], e as u32)).clone();
                t = target.mul(&t, &p);
                if t.is_zero() {
                    break;
                }
            }
            acc.extend(t.terms);
        }
        target.from_terms(acc)
    }

    /// Set variable `i` to the constant `c`.
    pub fn specialize(&self, a: &Poly<F>, i: usize, c: &F::Elem) -> Poly<F> {
        let f = &self.field;
        let mut terms = Vec::with_capacity(a.len());
        for (m, x) in &a.terms {
            let e = m.exps[i];
            let mut coef = x.clone();
            for _ in 0..e {
                coef = f.mul(&coef, c);
            }
            let mut ex = m.exps;
            ex[i] = 0;
            let w = (0..self.nvars()).map(|k| ex[k] as u32 * self.weights[k]).sum();
            terms.push((Monomial::from_parts(ex, w), coef));
        }
        self.from_terms(terms)
    }

    pub fn eval(&self, a: &Poly<F>, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut s = f.zero();
        for (m, c) in &a.terms {
            let mut t = c.clone();
            for i in 0..self.nvars() {
                for _ in 0..m.exps[i] {
                    t = f.mul(&t, &point[i]);
                }
            }
            s = f.add(&s, &t);
        }
        s
    }

    /// Move polynomial into another ring whose variable `perm[i]` corresponds to
    /// variable `i` here.
    pub fn map_vars(&self, a: &Poly<F>, target: &Ring<F>, perm: &[usize]) -> Poly<F> {
        let terms = a
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; target.nvars()];
                for i in 0..self.nvars() {
                    if m.exps[i] != 0 {
                        e[perm[i]] = m.exps[i];
                    }
                }
                (target.monomial(&e), c.clone())
            })
            .collect();
        target.from_terms(terms)
    }

    /// Polynomial with every listed monomial and independent random nonzero coefficients.
    pub fn random_with_support<R: Rng>(&self, support: &[Monomial], rng: &mut R) -> Poly<F> {
        self.from_terms(support.iter().map(|m| (*m, self.field.random_nonzero(rng))).collect())
    }

    /// All monomials of the given ring-grading degree.
    pub fn monomials_of_weighted_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u16; n];
        fn rec<F: Field>(r: &Ring<F>, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i == r.nvars() {
                if left == 0 {
                    out.push(r.monomial(cur));
                }
                return;
            }
            let w = r.weights[i];
            let mut e = 0u32;
            while e * w <= left {
                cur[i] = e as u16;
                rec(r, i + 1, left - e * w, cur, out);
                e += 1;
            }
            cur[i] = 0;
        }
        if n > 0 {
            rec(self, 0, d, &mut cur, &mut out);
        } else if d == 0 {
            out.push(Monomial::one());
        }
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for i in 0..self.nvars() {
            match m.exps[i] {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format(&self, a: &Poly<F>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut s = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let neg = f.is_negative_display(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if m.is_one() {
                s.push_str(&f.format(&abs));
            } else if f.is_one(&abs) {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", f.format(&abs), mono));
            }
        }
        s
    }

    /// Parse `3*t1^2*x3 - 5/7*x4^2` style input (sums of products of
    /// variables, rational constants and powers).
    pub fn parse(&self, s: &str) -> Result<Poly<F>, RingError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, ring: self };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Display for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}] ({:?})", self.field.characteristic(), self.names.join(","), self.order)
    }
}

struct Parser<'a, F: Field> {
    s: &'a [u8],
    pos: usize,
    ring: &'a Ring<F>,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, msg: &str) -> RingError {
        RingError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly<F>, RingError> {
        let r = self.ring;
        let mut acc = Poly::zero();
        let mut sign_neg = false;
        match self.peek() {
            Some(b'-') => {
                sign_neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.product()?;
            acc = if sign_neg { r.sub(&acc, &t) } else { r.add(&acc, &t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign_neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign_neg = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly<F>, RingError> {
        let r = self.ring;
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.power()?;
            acc = r.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly<F>, RingError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<F>, RingError> {
        let r = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let q: BigRational = txt.parse().map_err(|_| self.err("bad number"))?;
                let c = r.field().from_rational(&q).ok_or_else(|| self.err("denominator vanishes in field"))?;
                Ok(r.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let i = r.var_index(name).ok_or(RingError::Parse { pos: start, msg: format!("unknown variable `{name}`") })?;
                Ok(r.var(i))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn parse_and_format() {
        let r = Ring::new(Rationals, &["t1", "x3", "x4"], Order::DegRevLex).unwrap();
        let p = r.parse("3*t1^2*x3 - 5/7*x4^2").unwrap();
        assert_eq!(r.format(&p), "3*t1^2*x3 - 5/7*x4^2");
        let q = r.parse("(t1 + x3)^2 - t1^2 - 2*t1*x3").unwrap();
        assert_eq!(r.format(&q), "x3^2");
        assert!(r.parse("t1 + y").is_err());
    }

    #[test]
    fn arithmetic_mod_p() {
        let r = Ring::new(PrimeField::default(), &["x", "y"], Order::Lex).unwrap();
        let a = r.parse("x + y").unwrap();
        let b = r.parse("x - y").unwrap();
        assert_eq!(r.mul(&a, &b), r.parse("x^2 - y^2").unwrap());
        assert_eq!(r.diff(&r.parse("x^3*y + y^2").unwrap(), 0), r.parse("3*x^2*y").unwrap());
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let src = Ring::new(Rationals, &["z0", "z1", "z2"], Order::DegRevLex).unwrap();
        let dst = Ring::new(Rationals, &["s", "t"], Order::DegRevLex).unwrap();
        let imgs = vec![dst.parse("s^2").unwrap(), dst.parse("s*t").unwrap(), dst.parse("t^2").unwrap()];
        let conic = src.parse("z0*z2 - z1^2").unwrap();
        assert!(src.substitute(&conic, &dst, &imgs).is_zero());
    }

    #[test]
    fn weighted_monomials() {
        let r = Ring::with_weights(Rationals, &["x", "y"], Order::WeightedRevLex, &[1, 2]).unwrap();
        assert_eq!(r.monomials_of_weighted_degree(4).len(), 3);
        assert!(r.is_homogeneous(&r.parse("x^2 + y").unwrap()));
    }
}
