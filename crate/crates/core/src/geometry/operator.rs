use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactpoly::{Mono, Poly, Rat};
use crate::symalg::{FiberPoly, SymField, Variance};

use super::calculus::rho_standard;
use super::Connection;

/// Linear differential operator `phi -> sum_I c_I(x) d^I phi` with polynomial
/// coefficients, mapping weight `source` densities to weight `target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOperator {
    m: usize,
    source: Rat,
    target: Rat,
    coeffs: BTreeMap<Mono, Poly>,
}

impl DiffOperator {
    pub fn zero(m: usize, source: Rat, target: Rat) -> Self {
        DiffOperator {
            m,
            source,
            target,
            coeffs: BTreeMap::new(),
        }
    }

    /// Recover the coefficient table of an operator of order at most `order`
    /// from its action on the monomials `x^J`, `|J| <= order`.
    ///
    /// `apply(x^J) = sum_{I <= J} c_I J!/(J-I)! x^{J-I}` is triangular in `J`.
    pub fn from_action(
        m: usize,
        order: u32,
        source: Rat,
        target: Rat,
        mut apply: impl FnMut(&Poly) -> Result<Poly>,
    ) -> Result<Self> {
        let mut op = DiffOperator::zero(m, source, target);
        for d in 0..=order {
            for j in Mono::all_of_degree(m, d).into_iter().rev() {
                let xj = Poly::monomial(m, j, Rat::one());
                let mut rest = apply(&xj)?;
                for (i, c) in &op.coeffs {
                    let di = xj.partial_multi(i);
                    if !di.is_zero() {
                        rest.add_scaled(&(c * &di), &-Rat::one());
                    }
                }
                let cj = rest.scale(&j.factorial().recip());
                if !cj.is_zero() {
                    op.coeffs.insert(j, cj);
                }
            }
        }
        Ok(op)
    }

    /// Coefficient table of `rho_s(A)`.
    pub fn of_standard(conn: &Connection, a: &SymField, source: &Rat) -> Result<Self> {
        let m = conn.dim();
        DiffOperator::from_action(m, a.degree(), source.clone(), source + a.weight(), |phi| {
            Ok(rho_standard(conn, a, &SymField::scalar(phi.clone(), source.clone()))?.scalar_value())
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn source(&self) -> &Rat {
        &self.source
    }

    pub fn target(&self) -> &Rat {
        &self.target
    }

    pub fn coeffs(&self) -> &BTreeMap<Mono, Poly> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(Mono::degree).max()
    }

    pub fn apply(&self, phi: &Poly) -> Poly {
        let mut out = Poly::zero(self.m);
        for (i, c) in &self.coeffs {
            out.add_assign_ref(&(c * &phi.partial_multi(i)));
        }
        out
    }

    fn check(&self, other: &DiffOperator) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        if self.source != other.source || self.target != other.target {
            return Err(Error::WeightMismatch {
                left: Box::new(self.target.clone()),
                right: Box::new(other.target.clone()),
            });
        }
        Ok(())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &DiffOperator, s: &Rat) -> Result<DiffOperator> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            let e = out.coeffs.entry(*i).or_insert_with(|| Poly::zero(self.m));
            e.add_scaled(c, s);
            if e.is_zero() {
                out.coeffs.remove(i);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffOperator) -> Result<DiffOperator> {
        self.add_scaled(other, &-Rat::one())
    }
}

/// Invert the standard ordering: find symbols `A_k, ..., A_0` with
/// `sum_j rho_s(A_j) = op`, by top-down elimination. The order-`j`
/// coefficients of `rho_s(A_j)` are `j! a_I`.
///
/// Returns the nonzero symbols in decreasing degree; the zero operator gives
/// an empty list.
pub fn rho_standard_inverse(conn: &Connection, op: &DiffOperator) -> Result<Vec<SymField>> {
    let m = conn.dim();
    if op.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: op.dim(),
        });
    }
    let weight = op.target() - op.source();
    let mut rest = op.clone();
    let mut out = Vec::new();
    let top = match op.order() {
        Some(k) => k,
        None => return Ok(out),
    };
    for j in (0..=top).rev() {
        let mut rep = FiberPoly::zero(m, m);
        let inv = Rat::factorial(j as u64).recip();
        for (i, c) in rest.coeffs() {
            if i.degree() > j {
                return Err(Error::InconsistentOperator(format!(
                    "order {} term left after eliminating degree {}",
                    i.degree(),
                    j + 1
                )));
            }
            if i.degree() == j {
                rep.add_term(*i, &c.scale(&inv));
            }
        }
        if rep.is_zero() {
            continue;
        }
        let a = SymField::new(Variance::Contra, j, weight.clone(), rep)?;
        let done = DiffOperator::of_standard(conn, &a, op.source())?;
        rest = rest.sub(&done)?;
        out.push(a);
    }
    if !rest.is_zero() {
        return Err(Error::InconsistentOperator("nonzero remainder".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::symalg::vee;

    #[test]
    fn round_trip_example() {
        let conn = Connection::flat(2).unwrap();
        let a2 = vee(&SymField::coord_vector(2, 0), &SymField::coord_vector(2, 0)).unwrap();
        let a1 = SymField::monomial(Variance::Contra, Rat::zero(), &[0, 1], parse_poly("x1", 2).unwrap());
        let op = DiffOperator::of_standard(&conn, &a2, &Rat::zero())
            .unwrap()
            .add_scaled(
                &DiffOperator::of_standard(&conn, &a1, &Rat::zero()).unwrap(),
                &Rat::one(),
            )
            .unwrap();
        assert_eq!(rho_standard_inverse(&conn, &op).unwrap(), vec![a2, a1]);
    }

    #[test]
    fn trivial_operators() {
        let conn = Connection::flat(2).unwrap();
        let zero = DiffOperator::zero(2, Rat::zero(), Rat::zero());
        assert!(rho_standard_inverse(&conn, &zero).unwrap().is_empty());
        let f = parse_poly("x1*x2 + 3", 2).unwrap();
        let mul = DiffOperator::from_action(2, 0, Rat::zero(), Rat::zero(), |phi| Ok(&f * phi)).unwrap();
        let syms = rho_standard_inverse(&conn, &mul).unwrap();
        assert_eq!(syms.len(), 1);
        assert_eq!(syms[0].scalar_value(), f);
    }
}
