//! The natural projectively invariant ordering prescription `rho_L` and its
//! Ricci-flat closed form.

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rat};
use crate::geometry::{divergence_pow, rho_standard, Connection, DiffOperator};
use crate::liftcalc::{
    b_bar, check_resonance, graded_pair, graded_symdiff_pow, lift_density, lift_symbol, lift_symbol_generic, m_bar,
    projective_lift_params, LiftParams,
};
use crate::symalg::SymField;

/// Data of the prescription between `b`-densities and `(b + c)`-densities.
#[derive(Clone, Debug)]
pub struct QuantizeConfig {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub conn: Connection,
}

impl QuantizeConfig {
    pub fn new(conn: Connection, a: Rat, b: Rat, c: Rat) -> Result<QuantizeConfig> {
        if a.is_zero() {
            return Err(Error::ZeroLiftParameter);
        }
        Ok(QuantizeConfig { a, b, c, conn })
    }

    pub fn dim(&self) -> usize {
        self.conn.dim()
    }

    pub fn with_conn(&self, conn: Connection) -> QuantizeConfig {
        QuantizeConfig { conn, ..self.clone() }
    }

    pub fn with_a(&self, a: Rat) -> QuantizeConfig {
        QuantizeConfig { a, ..self.clone() }
    }

    /// Resonance guard for every degree up to `k`.
    pub fn check_degree(&self, k: u32) -> Result<()> {
        (0..=k).try_for_each(|j| check_resonance(self.dim(), j, &self.c))
    }

    fn inputs(&self, sym: &SymField, phi: &SymField) -> Result<(SymField, SymField)> {
        if phi.degree() != 0 {
            return Err(Error::DegreeMismatch(format!("density of degree {}", phi.degree())));
        }
        for (name, w, want) in [("symbol", sym.weight(), &self.c), ("density", phi.weight(), &self.b)] {
            if w != want {
                return Err(Error::Scenario(format!(
                    "{name} weight {w} differs from configured {want}"
                )));
            }
        }
        Ok((sym.clone(), phi.clone()))
    }
}

/// `rho_L(A)(phi) = i(A~)(D~^k phi~)` for the projectively invariant lifted
/// connection.
pub fn rho_l(cfg: &QuantizeConfig, sym: &SymField, phi: &SymField) -> Result<SymField> {
    let (sym, phi) = cfg.inputs(sym, phi)?;
    let params = projective_lift_params(&cfg.a, cfg.dim())?;
    let lift = lift_symbol(&cfg.conn, &cfg.a, &sym)?;
    let dk = graded_symdiff_pow(&cfg.conn, &params, &lift_density(&phi)?, sym.degree())?;
    graded_pair(&lift, &dk)
}

/// The same construction for an arbitrary natural lifted connection.
pub fn rho_l_with_params(
    cfg: &QuantizeConfig,
    params: &LiftParams,
    sym: &SymField,
    phi: &SymField,
) -> Result<SymField> {
    let (sym, phi) = cfg.inputs(sym, phi)?;
    let lift = lift_symbol_generic(&cfg.conn, params, &sym)?;
    let dk = graded_symdiff_pow(&cfg.conn, params, &lift_density(&phi)?, sym.degree())?;
    graded_pair(&lift, &dk)
}

/// Coefficient table of the operator `rho_L(A)`.
pub fn rho_l_operator(cfg: &QuantizeConfig, sym: &SymField) -> Result<DiffOperator> {
    DiffOperator::from_action(cfg.dim(), sym.degree(), cfg.b.clone(), &cfg.b + &cfg.c, |phi| {
        Ok(rho_l(cfg, sym, &SymField::scalar(phi.clone(), cfg.b.clone()))?.scalar_value())
    })
}

/// `u^(k)_l = C(k, l) (k-1+b_bar)(k-2+b_bar)...(k-l+b_bar)` for `l = 0..=k`.
pub fn u_coefficients(k: u32, b: &Rat, m: usize) -> Vec<Rat> {
    let bb = b_bar(m, b);
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut prod = Rat::one();
    for l in 0..=k {
        if l > 0 {
            prod *= &(Rat::from(k as usize) - Rat::from(l as usize) + &bb);
        }
        out.push(Rat::binomial(k as u64, l as u64) * &prod);
    }
    out
}

/// Closed form on connections with vanishing symmetric Ricci part:
///
/// ```text
/// rho_L(A)(phi) = sum_l C(k,l) (k-1+b_bar)...(k-l+b_bar) / ((2k-1+m_bar)...(2k-l+m_bar)) rho_s(Div^l A)(phi)
/// ```
pub fn rho_l_ricci_flat(cfg: &QuantizeConfig, sym: &SymField, phi: &SymField) -> Result<SymField> {
    let (sym, phi) = cfg.inputs(sym, phi)?;
    if !cfg.conn.is_ricci_flat() {
        return Err(Error::NotRicciFlat);
    }
    let m = cfg.dim();
    let k = sym.degree();
    check_resonance(m, k, &cfg.c)?;
    let mb = m_bar(m, &cfg.c);
    let u = u_coefficients(k, &cfg.b, m);
    let mut acc = Poly::zero(m);
    let mut den = Rat::one();
    for l in 0..=k {
        if l > 0 {
            den *= &(Rat::from(2 * k as usize - l as usize) + &mb);
        }
        let coef = &u[l as usize] / &den;
        if coef.is_zero() {
            continue;
        }
        let dl = divergence_pow(&cfg.conn, &sym, l)?;
        acc.add_scaled(&rho_standard(&cfg.conn, &dl, &phi)?.scalar_value(), &coef);
    }
    Ok(SymField::scalar(acc, &cfg.b + &cfg.c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::symalg::Variance;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn cfg(b: Rat, c: Rat) -> QuantizeConfig {
        QuantizeConfig::new(Connection::flat(2).unwrap(), Rat::one(), b, c).unwrap()
    }

    #[test]
    fn half_density_lie_derivative() {
        let x = SymField::monomial(Variance::Contra, Rat::zero(), &[1, 0], p("x1"));
        let one = SymField::scalar(p("1"), Rat::new(1, 2));
        let v = rho_l(&cfg(Rat::new(1, 2), Rat::zero()), &x, &one).unwrap();
        assert_eq!(v.scalar_value(), p("1/2"));
    }

    #[test]
    fn weight_zero_first_order_is_standard() {
        let x = SymField::monomial(Variance::Contra, Rat::zero(), &[0, 1], p("x1^2 + x2"));
        let phi = SymField::scalar(p("x1*x2^2"), Rat::zero());
        let c = cfg(Rat::zero(), Rat::zero());
        assert_eq!(rho_l(&c, &x, &phi).unwrap(), rho_standard(&c.conn, &x, &phi).unwrap());
    }

    #[test]
    fn order_zero_is_multiplication() {
        let f = SymField::scalar(p("x1 + 2"), Rat::zero()).with_variance(Variance::Contra);
        let phi = SymField::scalar(p("x2"), Rat::zero());
        assert_eq!(
            rho_l(&cfg(Rat::zero(), Rat::zero()), &f, &phi).unwrap().scalar_value(),
            p("x1*x2 + 2*x2")
        );
    }

    #[test]
    fn u_examples() {
        for k in 0..5 {
            assert_eq!(u_coefficients(k, &Rat::new(1, 3), 2)[0], Rat::one());
            assert!(u_coefficients(k + 1, &Rat::zero(), 2)[k as usize + 1].is_zero());
        }
        assert_eq!(u_coefficients(1, &Rat::new(1, 2), 2)[1], Rat::new(3, 2));
    }

    #[test]
    fn ricci_flat_requires_flatness() {
        let conn = Connection::from_entries(2, &[(0, 1, 1, p("x1"))]).unwrap();
        let c = QuantizeConfig::new(conn, Rat::one(), Rat::zero(), Rat::zero()).unwrap();
        let x = SymField::coord_vector(2, 0);
        let phi = SymField::scalar(p("x1"), Rat::zero());
        assert_eq!(rho_l_ricci_flat(&c, &x, &phi), Err(Error::NotRicciFlat));
    }
}
