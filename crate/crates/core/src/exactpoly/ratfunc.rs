use super::{Poly, Rat};

/// Quotient of two polynomials, kept unsimplified.
///
/// Only used where Christoffel symbols of a metric have non-polynomial
/// entries. Equality is decided by cross multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc::new(p, Poly::one(n))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn combine(&self, other: &RatFunc, sign: &Rat) -> RatFunc {
        if self.den == other.den {
            let mut num = self.num.clone();
            num.add_scaled(&other.num, sign);
            return RatFunc::new(num, self.den.clone());
        }
        let mut num = &self.num * &other.den;
        num.add_scaled(&(&other.num * &self.den), sign);
        RatFunc::new(num, &self.den * &other.den)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        self.combine(other, &Rat::one())
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.combine(other, &-Rat::one())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn scale(&self, s: &Rat) -> RatFunc {
        RatFunc::new(self.num.scale(s), self.den.clone())
    }

    pub fn partial(&self, i: usize) -> RatFunc {
        let num = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        RatFunc::new(num, self.den.pow(2))
    }

    pub fn equals(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let x = Poly::var(1, 0);
        let f = RatFunc::new(Poly::one(1), x.clone());
        let expect = RatFunc::new(Poly::constant(1, -Rat::one()), x.pow(2));
        assert!(f.partial(0).equals(&expect));
        assert!(f.sub(&f).is_zero());
        assert!(f.mul(&RatFunc::from_poly(x)).equals(&RatFunc::from_poly(Poly::one(1))));
    }
}
