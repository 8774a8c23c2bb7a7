use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Mono, Rat, MAX_VARS};
use crate::error::{Error, Result};

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered by graded-lex monomial order with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, Mono::one(), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The coordinate function `x_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(nvars, Mono::var(i), Rat::one())
    }

    pub fn monomial(nvars: usize, mono: Mono, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        debug_assert!(mono.support_len() <= nvars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Mono::degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch");
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Poly, s: &Rat) {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch");
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, &(c * s));
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * s)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to `x_{i+1}`. Panics when
    /// `i >= nvars`; see [`Poly::checked_partial`].
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "partial: index out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                out.terms.insert(m.dec(i).unwrap(), c * Rat::int(e as i64));
            }
        }
        out
    }

    pub fn checked_partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.nvars,
            });
        }
        Ok(self.partial(i))
    }

    /// Iterated partial derivative `d^I` for the exponent vector `I`.
    pub fn partial_multi(&self, index: &Mono) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(rest) = m.div(index) {
                let mut k = c.clone();
                for i in 0..self.nvars {
                    let (e, d) = (m.exp(i) as u64, index.exp(i) as u64);
                    for t in 0..d {
                        k *= &Rat::int((e - t) as i64);
                    }
                }
                out.add_term(rest, &k);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= &x.pow(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                point
                    .iter()
                    .enumerate()
                    .fold(c.to_f64(), |t, (i, x)| t * x.powi(m.exp(i) as i32))
            })
            .sum())
    }

    /// Substitute `x_i -> subs[i]`; the result lives in the variables of
    /// the substituted polynomials.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: subs.len(),
            });
        }
        let target = subs.first().map_or(0, Poly::nvars);
        if let Some(bad) = subs.iter().find(|s| s.nvars != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(s.nvars), s.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &subs[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            out.add_assign_ref(&t);
        }
        Ok(out)
    }

    /// Reinterpret in a larger variable set, keeping the first variables.
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            nvars,
            terms: self.terms.clone(),
        }
    }
}

/// Termwise sum.
pub fn poly_add(p: &Poly, q: &Poly) -> Result<Poly> {
    p.checked_add(q)
}

/// Distributed product.
pub fn poly_mul(p: &Poly, q: &Poly) -> Result<Poly> {
    p.checked_mul(q)
}

/// Partial derivative in `x_i` using the 1-based variable numbering of the
/// text format.
pub fn poly_partial(p: &Poly, i: usize) -> Result<Poly> {
    if i == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            dim: p.nvars(),
        });
    }
    p.checked_partial(i - 1)
}

/// Exact evaluation at a rational point.
pub fn poly_eval(p: &Poly, point: &[Rat]) -> Result<Rat> {
    p.eval(point)
}

/// Round-to-nearest evaluation at a float point.
pub fn poly_eval_f64(p: &Poly, point: &[f64]) -> Result<f64> {
    p.eval_f64(point)
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self.add_scaled(&rhs, &-Rat::one());
        self
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Human-readable monomial sum, highest graded-lex term first, e.g.
    /// `3/2*x1^2*x2 - x3`. This is the scenario text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(a.to_string());
            }
            for i in 0..self.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    e => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
