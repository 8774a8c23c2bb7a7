use crate::error::{Error, Result};
use crate::exactpoly::Rat;
use crate::symalg::{full_pair, SymField, Variance};

use super::frame::{frame_cov, frame_div, frame_symdiff};
use super::Connection;

fn check(conn: &Connection, a: &SymField) -> Result<()> {
    if conn.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: conn.dim(),
            found: a.dim(),
        });
    }
    Ok(())
}

/// `nabla_{d_i} A`, including the density term `-w Gamma^l_{li}`.
pub fn cov_derivative(conn: &Connection, a: &SymField, i: usize) -> Result<SymField> {
    check(conn, a)?;
    if i >= conn.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: conn.dim(),
        });
    }
    let rep = frame_cov(conn, a.variance(), a.weight(), a.rep(), i);
    Ok(a.with_rep(rep))
}

/// `D gamma = sum_j dx^j v nabla_j gamma`.
pub fn sym_diff_d(conn: &Connection, gamma: &SymField) -> Result<SymField> {
    check(conn, gamma)?;
    if gamma.degree() > 0 && gamma.variance() != Variance::Co {
        return Err(Error::VarianceMismatch);
    }
    let rep = frame_symdiff(conn, gamma.weight(), gamma.rep());
    SymField::new(Variance::Co, gamma.degree() + 1, gamma.weight().clone(), rep)
}

/// `D^n gamma`.
pub fn sym_diff_pow(conn: &Connection, gamma: &SymField, n: u32) -> Result<SymField> {
    let mut g = gamma.clone();
    for _ in 0..n {
        g = sym_diff_d(conn, &g)?;
    }
    Ok(g)
}

/// `Div A = sum_j i(dx^j) nabla_j A`; zero for scalars.
pub fn divergence(conn: &Connection, a: &SymField) -> Result<SymField> {
    check(conn, a)?;
    if a.degree() == 0 {
        return Ok(SymField::zero(a.dim(), Variance::Contra, 0, a.weight().clone()));
    }
    if a.variance() != Variance::Contra {
        return Err(Error::VarianceMismatch);
    }
    let rep = frame_div(conn, a.weight(), a.rep());
    SymField::new(Variance::Contra, a.degree() - 1, a.weight().clone(), rep)
}

pub fn divergence_pow(conn: &Connection, a: &SymField, n: u32) -> Result<SymField> {
    let mut b = a.clone();
    for _ in 0..n {
        b = divergence(conn, &b)?;
    }
    Ok(b)
}

fn check_scalar(psi: &SymField) -> Result<()> {
    if psi.degree() != 0 {
        return Err(Error::DegreeMismatch(format!(
            "expected a scalar density, found degree {}",
            psi.degree()
        )));
    }
    Ok(())
}

/// Standard ordering `rho_s(A)(psi) = i(A)(D^k psi)`.
pub fn rho_standard(conn: &Connection, a: &SymField, psi: &SymField) -> Result<SymField> {
    check(conn, a)?;
    check_scalar(psi)?;
    let dk = sym_diff_pow(conn, psi, a.degree())?;
    full_pair(&a.with_variance(Variance::Contra), &dk)
}

/// `sum_j rho_s(A_j)(psi)` over a list of symbols of common weight.
pub fn rho_standard_sum(conn: &Connection, symbols: &[SymField], psi: &SymField) -> Result<SymField> {
    let mut acc: Option<SymField> = None;
    for a in symbols {
        let v = rho_standard(conn, a, psi)?;
        acc = Some(match acc {
            None => v,
            Some(s) => s.add(&v)?,
        });
    }
    Ok(acc.unwrap_or_else(|| {
        let w = symbols.first().map_or(Rat::zero(), |a| a.weight().clone());
        SymField::scalar(crate::exactpoly::Poly::zero(conn.dim()), psi.weight() + &w)
    }))
}

/// Neumaier operator `N = exp(Div / 2)`: the list
/// `(A, Div A / 2, Div^2 A / 8, ...)` of degrees `k, k - 1, ..., 0`.
pub fn neumaier(conn: &Connection, a: &SymField) -> Result<Vec<SymField>> {
    let mut out = vec![a.clone()];
    let mut cur = a.clone();
    for j in 1..=a.degree() {
        cur = divergence(conn, &cur)?.scale(&Rat::new(1, 2 * j as i64));
        out.push(cur.clone());
    }
    Ok(out)
}

/// Weyl-type ordering `rho_s(N(A))`.
pub fn rho_weyl(conn: &Connection, a: &SymField, psi: &SymField) -> Result<SymField> {
    rho_standard_sum(conn, &neumaier(conn, a)?, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Poly};
    use crate::symalg::vee;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn flat() -> Connection {
        Connection::flat(2).unwrap()
    }

    fn contra(index: &[u16], c: &str) -> SymField {
        SymField::monomial(Variance::Contra, Rat::zero(), index, p(c))
    }

    #[test]
    fn cov_derivative_example() {
        let conn = Connection::from_entries(2, &[(0, 1, 1, p("x1"))]).unwrap();
        let a = SymField::coord_vector(2, 1);
        assert_eq!(cov_derivative(&conn, &a, 1).unwrap(), contra(&[1, 0], "x1"));
        let b = contra(&[1, 1], "x1^2*x2");
        assert_eq!(cov_derivative(&flat(), &b, 0).unwrap(), contra(&[1, 1], "2*x1*x2"));
    }

    #[test]
    fn symdiff_examples() {
        let psi = SymField::scalar(p("x1^2"), Rat::zero());
        let d1 = sym_diff_d(&flat(), &psi).unwrap();
        assert_eq!(d1, SymField::monomial(Variance::Co, Rat::zero(), &[1, 0], p("2*x1")));
        let d2 = sym_diff_d(&flat(), &d1).unwrap();
        assert_eq!(d2, SymField::monomial(Variance::Co, Rat::zero(), &[2, 0], p("2")));
    }

    #[test]
    fn divergence_examples() {
        let div = divergence(&flat(), &contra(&[1, 0], "x1")).unwrap();
        assert_eq!(div.scalar_value(), p("1"));
        let div = divergence(&flat(), &contra(&[2, 0], "x1")).unwrap();
        assert_eq!(div, contra(&[1, 0], "2"));
        assert!(divergence(&flat(), &contra(&[1, 1], "3")).unwrap().is_zero());
    }

    #[test]
    fn standard_ordering_examples() {
        let psi = SymField::scalar(p("x1^2"), Rat::zero());
        let a = vee(&SymField::coord_vector(2, 0), &SymField::coord_vector(2, 0)).unwrap();
        assert_eq!(rho_standard(&flat(), &a, &psi).unwrap().scalar_value(), p("4"));
        let f = SymField::scalar(p("x1 + x2"), Rat::zero()).with_variance(Variance::Contra);
        assert_eq!(
            rho_standard(&flat(), &f, &psi).unwrap().scalar_value(),
            p("x1^3 + x1^2*x2")
        );
        let psi2 = SymField::scalar(p("x2"), Rat::zero());
        assert!(rho_standard(&flat(), &SymField::coord_vector(2, 0), &psi2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn neumaier_and_weyl() {
        let a = contra(&[1, 0], "x1");
        let n = neumaier(&flat(), &a).unwrap();
        assert_eq!(n.len(), 2);
        assert_eq!(n[1].scalar_value(), p("1/2"));
        let one = SymField::scalar(p("1"), Rat::zero());
        assert_eq!(rho_weyl(&flat(), &a, &one).unwrap().scalar_value(), p("1/2"));
        let c = contra(&[1, 1], "2");
        assert_eq!(
            rho_weyl(&flat(), &c, &one).unwrap(),
            rho_standard(&flat(), &c, &one).unwrap()
        );
    }
}
