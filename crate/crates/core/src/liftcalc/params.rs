use crate::error::{Error, Result};
use crate::exactpoly::Rat;
use crate::geometry::Connection;

/// Parameters `(a; mu, nu, rho)` of a natural lifted connection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftParams {
    a: Rat,
    pub mu: Rat,
    pub nu: Rat,
    pub rho: Rat,
}

impl LiftParams {
    pub fn new(a: Rat, mu: Rat, nu: Rat, rho: Rat) -> Result<LiftParams> {
        if a.is_zero() {
            return Err(Error::ZeroLiftParameter);
        }
        Ok(LiftParams { a, mu, nu, rho })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    /// `a (m + 1)`.
    pub fn a_bar(&self, m: usize) -> Rat {
        &self.a * Rat::from(m + 1)
    }
}

/// The projectively invariant member:
/// `mu = -(a/2)(m+1)/(m-1)`, `nu = rho = 1/(a(m+1))`.
pub fn projective_lift_params(a: &Rat, m: usize) -> Result<LiftParams> {
    if a.is_zero() {
        return Err(Error::ZeroLiftParameter);
    }
    if m < 2 {
        return Err(Error::InvalidDimension(m));
    }
    let mp1 = Rat::from(m + 1);
    let mu = -(a * &mp1) / Rat::from(2 * (m - 1));
    let nu = (a * &mp1).recip();
    LiftParams::new(a.clone(), mu, nu.clone(), nu)
}

/// `m - (m + 1) c`.
pub fn m_bar(m: usize, c: &Rat) -> Rat {
    Rat::from(m) - Rat::from(m + 1) * c
}

/// `(m + 1) b`.
pub fn b_bar(m: usize, b: &Rat) -> Rat {
    Rat::from(m + 1) * b
}

pub(crate) fn check_conn(conn: &Connection, m: usize) -> Result<()> {
    if conn.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: conn.dim(),
            found: m,
        });
    }
    Ok(())
}
