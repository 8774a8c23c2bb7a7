use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::exactpoly::{Mono, Poly, Rat};

/// Polynomial in `fdim` fiber variables whose coefficients are polynomials
/// in `bdim` base coordinates.
///
/// Zero coefficients are never stored, so `==` is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiberPoly {
    fdim: usize,
    bdim: usize,
    terms: BTreeMap<Mono, Poly>,
}

impl FiberPoly {
    pub fn zero(fdim: usize, bdim: usize) -> Self {
        FiberPoly {
            fdim,
            bdim,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(fdim: usize, mono: Mono, coeff: Poly) -> Self {
        let mut p = Self::zero(fdim, coeff.nvars());
        p.add_term(mono, &coeff);
        p
    }

    /// Degree-zero element with the given base coefficient.
    pub fn constant(fdim: usize, coeff: Poly) -> Self {
        Self::monomial(fdim, Mono::one(), coeff)
    }

    /// The fiber variable `i` (0-based) with coefficient 1.
    pub fn var(fdim: usize, bdim: usize, i: usize) -> Self {
        assert!(i < fdim);
        Self::monomial(fdim, Mono::var(i), Poly::one(bdim))
    }

    pub fn fdim(&self) -> usize {
        self.fdim
    }

    pub fn bdim(&self) -> usize {
        self.bdim
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(|| Poly::zero(self.bdim))
    }

    pub fn add_term(&mut self, m: Mono, c: &Poly) {
        debug_assert!(m.support_len() <= self.fdim);
        assert_eq!(c.nvars(), self.bdim, "base dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &FiberPoly, s: &Rat) {
        self.check(other);
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, &c.scale(s));
        }
    }

    pub fn add_assign_ref(&mut self, other: &FiberPoly) {
        self.add_scaled(other, &Rat::one());
    }

    fn check(&self, other: &FiberPoly) {
        assert_eq!(self.fdim, other.fdim, "fiber dimension mismatch");
        assert_eq!(self.bdim, other.bdim, "base dimension mismatch");
    }

    pub fn add(&self, other: &FiberPoly) -> FiberPoly {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &FiberPoly) -> FiberPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    pub fn scale(&self, s: &Rat) -> FiberPoly {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn mul(&self, other: &FiberPoly) -> FiberPoly {
        self.check(other);
        let mut out = FiberPoly::zero(self.fdim, self.bdim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    /// Multiply every coefficient by a base polynomial.
    pub fn mul_base(&self, f: &Poly) -> FiberPoly {
        self.map_coeffs(|c| c * f)
    }

    /// Multiply by the fiber monomial `mono`.
    pub fn mul_mono(&self, mono: &Mono) -> FiberPoly {
        FiberPoly {
            fdim: self.fdim,
            bdim: self.bdim,
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> FiberPoly {
        self.mul_mono(&Mono::var(i))
    }

    /// Apply `f` to every coefficient, dropping zeros. `f` must preserve the
    /// base dimension.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> FiberPoly {
        let mut out = FiberPoly::zero(self.fdim, self.bdim);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out
    }

    /// Substitute base coordinates in every coefficient.
    pub fn compose_base(&self, subs: &[Poly]) -> FiberPoly {
        let bdim = subs.first().map_or(0, Poly::nvars);
        let mut out = FiberPoly::zero(self.fdim, bdim);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.compose(subs).expect("substitution arity"));
        }
        out
    }

    /// Derivative with respect to the fiber variable `i`.
    pub fn fiber_partial(&self, i: usize) -> FiberPoly {
        let mut out = FiberPoly::zero(self.fdim, self.bdim);
        for (m, c) in &self.terms {
            if let Some(d) = m.dec(i) {
                out.terms.insert(d, c.scale(&Rat::int(m.exp(i) as i64)));
            }
        }
        out
    }

    /// Iterated fiber derivative for the exponent vector `index`.
    pub fn fiber_partial_multi(&self, index: &Mono) -> FiberPoly {
        let mut out = FiberPoly::zero(self.fdim, self.bdim);
        for (m, c) in &self.terms {
            if let Some(rest) = m.div(index) {
                let mut k = Rat::one();
                for i in 0..self.fdim {
                    let (e, d) = (m.exp(i) as i64, index.exp(i) as i64);
                    for t in 0..d {
                        k *= &Rat::int(e - t);
                    }
                }
                out.add_term(rest, &c.scale(&k));
            }
        }
        out
    }

    /// Base partial derivative `d/dx_i` of every coefficient.
    pub fn base_partial(&self, i: usize) -> FiberPoly {
        self.map_coeffs(|c| c.partial(i))
    }

    /// `Some(k)` if every term has fiber degree `k`; zero is homogeneous of
    /// every degree and reports `None`.
    pub fn fiber_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Mono::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    /// Reinterpret in `fdim` fiber variables, keeping the existing ones first.
    pub fn extend_fiber(&self, fdim: usize) -> FiberPoly {
        assert!(fdim >= self.fdim);
        FiberPoly {
            fdim,
            bdim: self.bdim,
            terms: self.terms.clone(),
        }
    }

    /// Split by the exponent of the last fiber variable: entry `l` collects
    /// the coefficient of `v^l`, as a polynomial in the remaining variables.
    pub fn split_last(&self) -> Vec<FiberPoly> {
        let last = self.fdim - 1;
        let mut out: Vec<FiberPoly> = Vec::new();
        for (m, c) in &self.terms {
            let l = m.exp(last) as usize;
            while out.len() <= l {
                out.push(FiberPoly::zero(last, self.bdim));
            }
            let mut e = [0u16; crate::exactpoly::MAX_VARS];
            e[..last].copy_from_slice(m.exponents(last));
            out[l].add_term(Mono::from_exponents(&e), c);
        }
        out
    }

    /// Substitute fiber variable `i` by `subs[i]`.
    pub fn substitute(&self, subs: &[FiberPoly]) -> FiberPoly {
        assert_eq!(subs.len(), self.fdim);
        let target = subs.first().map_or(self.fdim, FiberPoly::fdim);
        let mut out = FiberPoly::zero(target, self.bdim);
        let mut powers: Vec<Vec<FiberPoly>> = subs
            .iter()
            .map(|s| vec![FiberPoly::constant(target, Poly::one(self.bdim)), s.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = FiberPoly::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&subs[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// `sum_I a_I c_I I!` over common fiber monomials.
    pub fn pair(&self, other: &FiberPoly) -> Poly {
        self.check(other);
        let mut acc = Poly::zero(self.bdim);
        for (m, a) in &self.terms {
            if let Some(c) = other.terms.get(m) {
                acc.add_assign_ref(&(a * c).scale(&m.factorial()));
            }
        }
        acc
    }
}

impl fmt::Debug for FiberPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FiberPoly {
    /// Terms as `(coeff)*v1^2*v3`, highest fiber monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for i in 0..self.fdim {
                match m.exp(i) {
                    0 => {}
                    1 => write!(f, "*v{}", i + 1)?,
                    e => write!(f, "*v{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_rebuild() {
        let x = Poly::var(2, 0);
        let mut p = FiberPoly::zero(3, 2);
        p.add_term(Mono::from_exponents(&[1, 0, 2]), &x);
        p.add_term(Mono::from_exponents(&[0, 2, 0]), &Poly::one(2));
        let parts = p.split_last();
        assert_eq!(parts.len(), 3);
        assert!(parts[1].is_zero());
        let mut back = FiberPoly::zero(3, 2);
        for (l, q) in parts.iter().enumerate() {
            back.add_assign_ref(&q.extend_fiber(3).mul_mono(&Mono::from_exponents(&[0, 0, l as u16])));
        }
        assert_eq!(back, p);
    }

    #[test]
    fn substitution_is_linear_change() {
        // v1^2 with v1 -> v1 + v2
        let p = FiberPoly::var(2, 1, 0).mul(&FiberPoly::var(2, 1, 0));
        let s = FiberPoly::var(2, 1, 0).add(&FiberPoly::var(2, 1, 1));
        let q = p.substitute(&[s, FiberPoly::var(2, 1, 1)]);
        assert_eq!(q.len(), 3);
        assert_eq!(q.coeff(&Mono::from_exponents(&[1, 1])), Poly::constant(1, Rat::int(2)));
    }
}
