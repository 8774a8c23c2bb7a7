use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::{Mono, Poly, Rat};
use crate::geometry::{pullback_field, AffineMap, OneForm};
use crate::symalg::{FiberPoly, SymField, Variance};

macro_rules! graded_type {
    ($(#[$doc:meta])* $name:ident, $variance:expr) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq)]
        pub struct $name {
            m: usize,
            degree: u32,
            weight: Rat,
            parts: Vec<SymField>,
        }

        impl $name {
            pub const VARIANCE: Variance = $variance;

            /// `parts[l]` must have degree `k - l`; missing trailing parts are
            /// zero.
            pub fn new(m: usize, degree: u32, weight: Rat, mut parts: Vec<SymField>) -> Result<Self> {
                if parts.len() > degree as usize + 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "{} parts for total degree {degree}",
                        parts.len()
                    )));
                }
                for (l, p) in parts.iter().enumerate() {
                    if p.dim() != m {
                        return Err(Error::DimensionMismatch { expected: m, found: p.dim() });
                    }
                    if p.degree() != degree - l as u32 {
                        return Err(Error::DegreeMismatch(format!(
                            "part {l} has degree {}, expected {}",
                            p.degree(),
                            degree - l as u32
                        )));
                    }
                    if p.weight() != &weight {
                        return Err(Error::WeightMismatch { left: Box::new(weight.clone()), right: Box::new(p.weight().clone()) });
                    }
                    if p.degree() > 0 && p.variance() != $variance {
                        return Err(Error::VarianceMismatch);
                    }
                }
                for l in parts.len()..=degree as usize {
                    parts.push(Self::zero_part(m, degree - l as u32, &weight));
                }
                for p in parts.iter_mut() {
                    *p = p.with_variance($variance);
                }
                Ok($name { m, degree, weight, parts })
            }

            fn zero_part(m: usize, degree: u32, weight: &Rat) -> SymField {
                SymField::zero(m, $variance, degree, weight.clone())
            }

            pub fn zero(m: usize, degree: u32, weight: Rat) -> Self {
                Self::new(m, degree, weight, Vec::new()).unwrap()
            }

            /// The purely horizontal element with top part `a`.
            pub fn horizontal(a: &SymField) -> Self {
                Self::new(a.dim(), a.degree(), a.weight().clone(), vec![a.clone()]).unwrap()
            }

            pub fn dim(&self) -> usize {
                self.m
            }

            pub fn degree(&self) -> u32 {
                self.degree
            }

            pub fn weight(&self) -> &Rat {
                &self.weight
            }

            pub fn parts(&self) -> &[SymField] {
                &self.parts
            }

            pub fn part(&self, l: usize) -> &SymField {
                &self.parts[l]
            }

            pub fn is_zero(&self) -> bool {
                self.parts.iter().all(SymField::is_zero)
            }

            /// Representation in the `m + 1` frame variables, the last one
            /// standing for the vertical generator.
            pub fn total(&self) -> FiberPoly {
                let n = self.m + 1;
                let mut out = FiberPoly::zero(n, self.m);
                for (l, p) in self.parts.iter().enumerate() {
                    let mut e = [0u16; crate::exactpoly::MAX_VARS];
                    e[self.m] = l as u16;
                    out.add_assign_ref(&p.rep().extend_fiber(n).mul_mono(&Mono::from_exponents(&e)));
                }
                out
            }

            pub fn from_total(m: usize, degree: u32, weight: Rat, total: &FiberPoly) -> Result<Self> {
                if total.fdim() != m + 1 || total.bdim() != m {
                    return Err(Error::DimensionMismatch { expected: m + 1, found: total.fdim() });
                }
                let mut parts = Vec::new();
                for (l, rep) in total.split_last().into_iter().enumerate() {
                    if l > degree as usize {
                        return Err(Error::DegreeMismatch(format!("vertical power {l} exceeds {degree}")));
                    }
                    parts.push(SymField::new($variance, degree - l as u32, weight.clone(), rep)?);
                }
                Self::new(m, degree, weight, parts)
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                if self.degree != other.degree || self.m != other.m {
                    return Err(Error::DegreeMismatch(format!("{} vs {}", self.degree, other.degree)));
                }
                let parts = self
                    .parts
                    .iter()
                    .zip(&other.parts)
                    .map(|(a, b)| a.add(b))
                    .collect::<Result<Vec<_>>>()?;
                Self::new(self.m, self.degree, self.weight.clone(), parts)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.scale(&-Rat::one()))
            }

            pub fn scale(&self, s: &Rat) -> Self {
                $name {
                    parts: self.parts.iter().map(|p| p.scale(s)).collect(),
                    ..self.clone()
                }
            }

            /// Pull back every part along an affine chart change; the vertical
            /// generator is natural and stays fixed.
            pub fn pullback(&self, phi: &AffineMap) -> Result<Self> {
                let parts = self
                    .parts
                    .iter()
                    .map(|p| pullback_field(p, phi))
                    .collect::<Result<Vec<_>>>()?;
                Self::new(self.m, self.degree, self.weight.clone(), parts)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}(k={}, w={}, [", stringify!($name), self.degree, self.weight)?;
                for (l, p) in self.parts.iter().enumerate() {
                    if l > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{}", p.rep())?;
                }
                write!(f, "])")
            }
        }
    };
}

graded_type!(
    /// `sum_l A_{k-l}^h v E^l`: total-space symmetric contravariant field in
    /// the frame `(e_1^h, ..., e_m^h, E)`. `parts[l]` is `A_{k-l}`.
    GradedSymbol,
    Variance::Contra
);

graded_type!(
    /// `sum_l omega^l v gamma_{k-l}^h`: total-space symmetric covariant field
    /// in the coframe `((dx^1)^h, ..., (dx^m)^h, omega)`. `parts[l]` is
    /// `gamma_{k-l}`.
    GradedCoform,
    Variance::Co
);

impl GradedSymbol {
    /// `E^l` with weight `c`.
    pub fn euler_power(m: usize, l: u32, weight: Rat) -> GradedSymbol {
        let mut parts: Vec<SymField> = (0..l)
            .map(|j| SymField::zero(m, Variance::Contra, l - j, weight.clone()))
            .collect();
        parts.push(SymField::scalar(Poly::one(m), weight.clone()).with_variance(Variance::Contra));
        GradedSymbol::new(m, l, weight, parts).unwrap()
    }

    /// Rewrite a field given in the frame of the shifted connection
    /// `nabla + alpha` in the frame of `nabla`.
    ///
    /// The horizontal lifts are related by `e_i^h' = e_i^h + a_bar alpha_i E`,
    /// so `xi'_i -> xi_i + a_bar alpha_i xi_E`.
    pub fn reframe_from_shift(&self, alpha: &OneForm, a_bar: &Rat) -> Result<GradedSymbol> {
        let n = self.m + 1;
        let subs: Vec<FiberPoly> = (0..n)
            .map(|i| {
                let mut s = FiberPoly::var(n, self.m, i);
                if i < self.m {
                    s.add_assign_ref(&FiberPoly::monomial(n, Mono::var(self.m), alpha.comp(i).scale(a_bar)));
                }
                s
            })
            .collect();
        GradedSymbol::from_total(
            self.m,
            self.degree,
            self.weight.clone(),
            &self.total().substitute(&subs),
        )
    }
}

impl GradedCoform {
    /// `omega^l` with weight `b`.
    pub fn omega_power(m: usize, l: u32, weight: Rat) -> GradedCoform {
        let mut parts: Vec<SymField> = (0..l)
            .map(|j| SymField::zero(m, Variance::Co, l - j, weight.clone()))
            .collect();
        parts.push(SymField::scalar(Poly::one(m), weight.clone()));
        GradedCoform::new(m, l, weight, parts).unwrap()
    }

    /// Counterpart of [`GradedSymbol::reframe_from_shift`]:
    /// `omega' = omega - a_bar alpha`, so `eta'_E -> eta_E - a_bar sum alpha_i eta_i`.
    pub fn reframe_from_shift(&self, alpha: &OneForm, a_bar: &Rat) -> Result<GradedCoform> {
        let n = self.m + 1;
        let subs: Vec<FiberPoly> = (0..n)
            .map(|i| {
                let mut s = FiberPoly::var(n, self.m, i);
                if i == self.m {
                    for j in 0..self.m {
                        s.add_scaled(&FiberPoly::monomial(n, Mono::var(j), alpha.comp(j).clone()), &-a_bar);
                    }
                }
                s
            })
            .collect();
        GradedCoform::from_total(
            self.m,
            self.degree,
            self.weight.clone(),
            &self.total().substitute(&subs),
        )
    }
}
