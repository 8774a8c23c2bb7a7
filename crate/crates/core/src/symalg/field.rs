use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly, Mono, Poly, Rat};

use super::FiberPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    /// Symmetric powers of the tangent bundle; fiber variables `xi`.
    Contra,
    /// Symmetric powers of the cotangent bundle; fiber variables `eta`.
    Co,
}

/// Density-valued symmetric tensor field of weight `w` in polynomial
/// representation.
///
/// A degree-`k` field `A` is stored as `P_A(xi) = A(xi, ..., xi) / k!`, a
/// homogeneous fiber polynomial with base polynomial coefficients. With this
/// normalization the symmetric product is multiplication of representations.
/// Components are relative to the coordinate density `|dx|^w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymField {
    variance: Variance,
    degree: u32,
    weight: Rat,
    rep: FiberPoly,
}

impl SymField {
    pub fn new(variance: Variance, degree: u32, weight: Rat, rep: FiberPoly) -> Result<Self> {
        if rep.fdim() != rep.bdim() {
            return Err(Error::DimensionMismatch {
                expected: rep.bdim(),
                found: rep.fdim(),
            });
        }
        if !rep.is_homogeneous(degree) {
            return Err(Error::DegreeMismatch(format!(
                "representation is not homogeneous of degree {degree}"
            )));
        }
        Ok(SymField {
            variance,
            degree,
            weight,
            rep,
        })
    }

    pub fn zero(m: usize, variance: Variance, degree: u32, weight: Rat) -> Self {
        SymField {
            variance,
            degree,
            weight,
            rep: FiberPoly::zero(m, m),
        }
    }

    /// Weighted scalar `f |dx|^w`, stored as a degree-0 covariant field.
    pub fn scalar(f: Poly, weight: Rat) -> Self {
        let m = f.nvars();
        SymField {
            variance: Variance::Co,
            degree: 0,
            weight,
            rep: FiberPoly::constant(m, f),
        }
    }

    /// Single-term field `coeff * v^index`.
    pub fn monomial(variance: Variance, weight: Rat, index: &[u16], coeff: Poly) -> Self {
        let m = coeff.nvars();
        assert_eq!(index.len(), m, "multi-index length");
        let mono = Mono::from_exponents(index);
        SymField {
            variance,
            degree: mono.degree(),
            weight,
            rep: FiberPoly::monomial(m, mono, coeff),
        }
    }

    /// The coordinate vector field `d_i` (0-based).
    pub fn coord_vector(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        Self::monomial(Variance::Contra, Rat::zero(), &e, Poly::one(m))
    }

    /// The coordinate covector `dx^i` (0-based).
    pub fn coord_covector(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        Self::monomial(Variance::Co, Rat::zero(), &e, Poly::one(m))
    }

    pub fn dim(&self) -> usize {
        self.rep.bdim()
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn weight(&self) -> &Rat {
        &self.weight
    }

    pub fn rep(&self) -> &FiberPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Coefficient of the fiber monomial `v^index`.
    pub fn coeff(&self, index: &[u16]) -> Poly {
        self.rep.coeff(&Mono::from_exponents(index))
    }

    /// Value of a degree-0 field.
    pub fn scalar_value(&self) -> Poly {
        self.rep.coeff(&Mono::one())
    }

    pub fn with_weight(&self, weight: Rat) -> SymField {
        SymField { weight, ..self.clone() }
    }

    pub fn with_variance(&self, variance: Variance) -> SymField {
        SymField {
            variance,
            ..self.clone()
        }
    }

    /// Same variance, degree and weight with a new representation.
    pub fn with_rep(&self, rep: FiberPoly) -> SymField {
        debug_assert!(rep.is_homogeneous(self.degree));
        SymField { rep, ..self.clone() }
    }

    fn compatible(&self, other: &SymField) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    fn same_kind(&self, other: &SymField) -> Result<()> {
        self.compatible(other)?;
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!("{} vs {}", self.degree, other.degree)));
        }
        if self.weight != other.weight {
            return Err(Error::WeightMismatch {
                left: Box::new(self.weight.clone()),
                right: Box::new(other.weight.clone()),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SymField) -> Result<SymField> {
        self.same_kind(other)?;
        Ok(self.with_rep(self.rep.add(&other.rep)))
    }

    pub fn sub(&self, other: &SymField) -> Result<SymField> {
        self.same_kind(other)?;
        Ok(self.with_rep(self.rep.sub(&other.rep)))
    }

    pub fn scale(&self, s: &Rat) -> SymField {
        self.with_rep(self.rep.scale(s))
    }

    pub fn mul_base(&self, f: &Poly) -> SymField {
        self.with_rep(self.rep.mul_base(f))
    }

    /// Records `(multi-index, polynomial text)`, highest monomial first.
    pub fn to_records(&self) -> Vec<(Vec<u16>, String)> {
        let m = self.dim();
        self.rep
            .terms()
            .rev()
            .map(|(mono, c)| (mono.exponents(m).to_vec(), c.to_string()))
            .collect()
    }

    /// Inverse of [`SymField::to_records`]. Repeated indices are summed.
    pub fn from_records(
        m: usize,
        variance: Variance,
        degree: u32,
        weight: Rat,
        records: &[(Vec<u16>, String)],
    ) -> Result<SymField> {
        let mut rep = FiberPoly::zero(m, m);
        for (index, text) in records {
            if index.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: index.len(),
                });
            }
            let c = parse_poly(text, m).map_err(|e| Error::Parse {
                line: 0,
                column: e.column,
                message: e.message,
            })?;
            rep.add_term(Mono::from_exponents(index), &c);
        }
        SymField::new(variance, degree, weight, rep)
    }
}

impl fmt::Debug for SymField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SymField({:?}, k={}, w={}, {})",
            self.variance, self.degree, self.weight, self.rep
        )
    }
}

/// Symmetric product `A v B`: representations multiply, degrees and weights
/// add.
///
/// Degree-0 fields are scalars and combine with either variance.
pub fn vee(a: &SymField, b: &SymField) -> Result<SymField> {
    a.compatible(b)?;
    let variance = match (a.degree, b.degree) {
        (0, _) => b.variance,
        (_, 0) => a.variance,
        _ if a.variance == b.variance => a.variance,
        _ => return Err(Error::VarianceMismatch),
    };
    Ok(SymField {
        variance,
        degree: a.degree + b.degree,
        weight: &a.weight + &b.weight,
        rep: a.rep.mul(&b.rep),
    })
}

/// Interior product `i(A) gamma` of a contravariant field in a covariant
/// one: each `xi_i` of `A` acts as `d/d eta_i`.
pub fn interior(a: &SymField, gamma: &SymField) -> Result<SymField> {
    a.compatible(gamma)?;
    if (a.degree > 0 && a.variance != Variance::Contra) || (gamma.degree > 0 && gamma.variance != Variance::Co) {
        return Err(Error::VarianceMismatch);
    }
    if a.degree > gamma.degree {
        return Err(Error::DegreeMismatch(format!(
            "interior of degree {} in degree {}",
            a.degree, gamma.degree
        )));
    }
    let mut rep = FiberPoly::zero(a.dim(), a.dim());
    for (mono, c) in a.rep.terms() {
        rep.add_assign_ref(&gamma.rep.fiber_partial_multi(mono).mul_base(c));
    }
    Ok(SymField {
        variance: Variance::Co,
        degree: gamma.degree - a.degree,
        weight: &a.weight + &gamma.weight,
        rep,
    })
}

/// Dual interior product `i(gamma) A`: each `eta_i` acts as `d/d xi_i`.
pub fn interior_dual(gamma: &SymField, a: &SymField) -> Result<SymField> {
    let swapped = interior(&gamma.with_variance(Variance::Contra), &a.with_variance(Variance::Co))?;
    Ok(swapped.with_variance(Variance::Contra))
}

/// Full contraction `sum_I a_I c_I I!` of fields of equal degree, as a
/// weighted scalar.
pub fn full_pair(a: &SymField, gamma: &SymField) -> Result<SymField> {
    a.compatible(gamma)?;
    if a.degree != gamma.degree {
        return Err(Error::DegreeMismatch(format!(
            "pairing degree {} with degree {}",
            a.degree, gamma.degree
        )));
    }
    Ok(SymField::scalar(a.rep.pair(&gamma.rep), &a.weight + &gamma.weight))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(i: usize) -> SymField {
        SymField::coord_vector(2, i)
    }

    fn dx(i: usize) -> SymField {
        SymField::coord_covector(2, i)
    }

    #[test]
    fn vee_examples() {
        let p = vee(&d(0), &d(1)).unwrap();
        assert_eq!(p.coeff(&[1, 1]), Poly::one(2));
        let q = vee(&d(0), &d(0)).unwrap();
        assert_eq!(q.coeff(&[2, 0]), Poly::one(2));
        let one = SymField::scalar(Poly::one(2), Rat::zero()).with_variance(Variance::Contra);
        assert_eq!(vee(&p, &one).unwrap(), p);
        assert_eq!(vee(&d(0), &dx(0)), Err(Error::VarianceMismatch));
    }

    #[test]
    fn interior_examples() {
        let g = vee(&dx(0), &dx(0)).unwrap();
        let r = interior(&d(0), &g).unwrap();
        assert_eq!(r, dx(0).scale(&Rat::int(2)));
        let r2 = interior(&vee(&d(0), &d(0)).unwrap(), &g).unwrap();
        assert_eq!(r2.scalar_value(), Poly::constant(2, Rat::int(2)));
        assert!(interior(&d(1), &dx(0)).unwrap().is_zero());
        assert!(interior(&g.with_variance(Variance::Contra), &dx(0)).is_err());
    }

    #[test]
    fn pairing_examples() {
        let a = vee(&d(0), &d(0)).unwrap();
        let g = vee(&dx(0), &dx(0)).unwrap().scale(&Rat::int(2));
        assert_eq!(
            full_pair(&a, &g).unwrap().scalar_value(),
            Poly::constant(2, Rat::int(4))
        );
        assert_eq!(full_pair(&d(0), &dx(0)).unwrap().scalar_value(), Poly::one(2));
        let a = vee(&d(0), &d(1)).unwrap();
        let g = vee(&dx(0), &dx(1)).unwrap();
        assert_eq!(full_pair(&a, &g).unwrap().scalar_value(), Poly::one(2));
        assert!(full_pair(&d(0), &g).is_err());
    }

    #[test]
    fn records_round_trip() {
        let a = vee(&d(0), &d(1)).unwrap().mul_base(&Poly::var(2, 0));
        let rec = a.to_records();
        assert_eq!(rec, vec![(vec![1, 1], "x1".to_string())]);
        let b = SymField::from_records(2, Variance::Contra, 2, Rat::zero(), &rec).unwrap();
        assert_eq!(a, b);
    }
}
