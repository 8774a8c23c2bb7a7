//! Infinitesimal `sl(m+1)` action on densities and symbols over `R^m`, and
//! the equivariance residual of an ordering prescription.

use crate::error::{Error, Result};
use crate::exactpoly::{Mono, Poly, Rat};
use crate::geometry::{rho_standard, Connection};
use crate::quantize::{rho_l, QuantizeConfig};
use crate::symalg::SymField;

/// Infinitesimal homography `X = A x + b - x (c.x + d)` of `R^m`, kept with
/// the traceless `(m+1) x (m+1)` matrix `[[A, b], [c, d]]` it comes from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectiveField {
    comps: Vec<Poly>,
    matrix: Vec<Vec<Rat>>,
}

impl ProjectiveField {
    pub fn from_matrix(matrix: Vec<Vec<Rat>>) -> Result<ProjectiveField> {
        let n = matrix.len();
        if n < 3 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::NotProjective(format!(
                "matrix must be square of size >= 3, got {n}"
            )));
        }
        let trace: Rat = (0..n).map(|i| matrix[i][i].clone()).sum();
        if !trace.is_zero() {
            return Err(Error::NotProjective(format!("trace {trace} is not zero")));
        }
        let m = n - 1;
        let x = |i: usize| Poly::var(m, i);
        let mut cx = Poly::constant(m, matrix[m][m].clone());
        for j in 0..m {
            cx.add_scaled(&x(j), &matrix[m][j]);
        }
        let comps = (0..m)
            .map(|i| {
                let mut p = Poly::constant(m, matrix[i][m].clone());
                for j in 0..m {
                    p.add_scaled(&x(j), &matrix[i][j]);
                }
                p - &x(i) * &cx
            })
            .collect();
        Ok(ProjectiveField { comps, matrix })
    }

    /// Recognize a polynomial vector field of the form
    /// `constant + linear + x (l.x)`.
    pub fn from_components(comps: Vec<Poly>) -> Result<ProjectiveField> {
        let m = comps.len();
        let part = |p: &Poly, d: u32| {
            Poly::from_terms(
                m,
                p.terms()
                    .filter(|(mo, _)| mo.degree() == d)
                    .map(|(mo, c)| (*mo, c.clone())),
            )
        };
        if comps.iter().any(|p| p.nvars() != m || p.degree().unwrap_or(0) > 2) {
            return Err(Error::NotProjective(
                "components must have degree <= 2 in m variables".into(),
            ));
        }
        let ell: Vec<Rat> = (0..m)
            .map(|j| comps[j].coeff(&Mono::var(j).mul(&Mono::var(j))))
            .collect();
        let mut lin = Poly::zero(m);
        for (j, l) in ell.iter().enumerate() {
            lin.add_scaled(&Poly::var(m, j), l);
        }
        for (i, p) in comps.iter().enumerate() {
            if part(p, 2) != &Poly::var(m, i) * &lin {
                return Err(Error::NotProjective(format!(
                    "quadratic part of component {} is not x{} (l.x)",
                    i + 1,
                    i + 1
                )));
            }
        }
        // A' = A - d I is the linear part; choose d so the matrix is traceless
        let lin_coeff = |i: usize, j: usize| comps[i].coeff(&Mono::var(j));
        let tr: Rat = (0..m).map(|i| lin_coeff(i, i)).sum();
        let d = -tr / Rat::from(m + 1);
        let mut matrix = vec![vec![Rat::zero(); m + 1]; m + 1];
        for i in 0..m {
            for j in 0..m {
                matrix[i][j] = lin_coeff(i, j);
            }
            matrix[i][i] += &d;
            matrix[i][m] = comps[i].coeff(&Mono::one());
            matrix[m][i] = -&ell[i];
        }
        matrix[m][m] = d;
        let f = ProjectiveField::from_matrix(matrix)?;
        debug_assert_eq!(f.comps, comps);
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    /// `X(f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.dim());
        for (i, x) in self.comps.iter().enumerate() {
            out.add_assign_ref(&(x * &f.partial(i)));
        }
        out
    }

    /// Flat divergence `sum_i d_i X^i`.
    pub fn div(&self) -> Poly {
        let mut out = Poly::zero(self.dim());
        for (i, x) in self.comps.iter().enumerate() {
            out.add_assign_ref(&x.partial(i));
        }
        out
    }

    /// Lie bracket of vector fields, `[X, Y]^i = X(Y^i) - Y(X^i)`.
    pub fn bracket_components(&self, other: &ProjectiveField) -> Vec<Poly> {
        (0..self.dim())
            .map(|i| self.apply(&other.comps[i]) - other.apply(&self.comps[i]))
            .collect()
    }
}

/// Matrix commutator `MN - NM`.
pub fn matrix_bracket(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mul = |x: &[Vec<Rat>], y: &[Vec<Rat>], i: usize, j: usize| -> Rat { (0..n).map(|k| &x[i][k] * &y[k][j]).sum() };
    (0..n)
        .map(|i| (0..n).map(|j| mul(a, b, i, j) - mul(b, a, i, j)).collect())
        .collect()
}

/// `m` translations `d_i`, `m^2` linear fields `x^j d_i` and `m` quadratic
/// fields `x^j E_x` with `E_x = sum_i x^i d_i`.
pub fn sl_generators(m: usize) -> Result<Vec<ProjectiveField>> {
    if m < 2 {
        return Err(Error::InvalidDimension(m));
    }
    let n = m + 1;
    let unit = |i: usize, j: usize| -> Vec<Vec<Rat>> {
        let mut e = vec![vec![Rat::zero(); n]; n];
        e[i][j] = Rat::one();
        e
    };
    let mut out = Vec::with_capacity(m * m + 2 * m);
    for i in 0..m {
        out.push(ProjectiveField::from_matrix(unit(i, m))?);
    }
    for i in 0..m {
        for j in 0..m {
            let mut e = unit(i, j);
            if i == j {
                let s = Rat::new(1, n as i64);
                for (k, row) in e.iter_mut().enumerate() {
                    row[k] -= &s;
                }
            }
            out.push(ProjectiveField::from_matrix(e)?);
        }
    }
    for j in 0..m {
        let mut e = unit(m, j);
        e[m][j] = -Rat::one();
        out.push(ProjectiveField::from_matrix(e)?);
    }
    Ok(out)
}

/// Lie derivative of a `b`-density: `X(phi) + b div(X) phi`.
pub fn density_action(x: &ProjectiveField, b: &Rat, phi: &Poly) -> Poly {
    let mut out = x.apply(phi);
    out.add_scaled(&(&x.div() * phi), b);
    out
}

/// Lie derivative of a weight-`c` contravariant symmetric field:
/// `X(coeffs) - sum (d_p X^i) xi_i dP/dxi_p + c div(X) P`.
pub fn symbol_action(x: &ProjectiveField, a: &SymField) -> Result<SymField> {
    let m = x.dim();
    if a.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: a.dim(),
        });
    }
    let rep = a.rep();
    let mut out = rep.map_coeffs(|f| x.apply(f));
    for p in 0..m {
        let dp = rep.fiber_partial(p);
        if dp.is_zero() {
            continue;
        }
        for i in 0..m {
            let jac = x.comps()[i].partial(p);
            if !jac.is_zero() {
                out.add_scaled(&dp.mul_var(i).mul_base(&jac), &-Rat::one());
            }
        }
    }
    out.add_scaled(&rep.mul_base(&x.div()), a.weight());
    Ok(a.with_rep(out))
}

/// An ordering prescription on flat `R^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prescription {
    Standard,
    /// `rho_L` with lift parameter `a`.
    Lifted(Rat),
}

impl Prescription {
    pub fn apply(&self, m: usize, b: &Rat, a: &SymField, phi: &Poly) -> Result<Poly> {
        let flat = Connection::flat(m)?;
        let psi = SymField::scalar(phi.clone(), b.clone());
        let v = match self {
            Prescription::Standard => rho_standard(&flat, a, &psi)?,
            Prescription::Lifted(lift) => {
                let cfg = QuantizeConfig::new(flat, lift.clone(), b.clone(), a.weight().clone())?;
                rho_l(&cfg, a, &psi)?
            }
        };
        Ok(v.scalar_value())
    }
}

/// `L_X(rho(A) phi) - rho(L_X A) phi - rho(A)(L_X phi)` on flat `R^m`, with
/// densities of weights `b` and `b + c`.
pub fn equivariance_residual(
    pres: &Prescription,
    x: &ProjectiveField,
    b: &Rat,
    a: &SymField,
    phi: &Poly,
) -> Result<Poly> {
    let m = x.dim();
    let c = a.weight();
    let lhs = density_action(x, &(b + c), &pres.apply(m, b, a, phi)?);
    let t1 = pres.apply(m, b, &symbol_action(x, a)?, phi)?;
    let t2 = pres.apply(m, b, a, &density_action(x, b, phi))?;
    Ok(lhs - t1 - t2)
}

/// Residual as an operator: evaluated on every monomial `x^J` with
/// `|J| <= deg A`, which determines an operator of that order. Returns the
/// first nonzero value.
pub fn equivariance_residual_operator(
    pres: &Prescription,
    x: &ProjectiveField,
    b: &Rat,
    a: &SymField,
) -> Result<Option<Poly>> {
    let m = x.dim();
    for d in 0..=a.degree() {
        for j in Mono::all_of_degree(m, d) {
            let r = equivariance_residual(pres, x, b, a, &Poly::monomial(m, j, Rat::one()))?;
            if !r.is_zero() {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::symalg::Variance;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn generator_count_and_shape() {
        let g = sl_generators(2).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g[0].comps(), &[p("1"), p("0")]);
        assert_eq!(g[3].comps(), &[p("x2"), p("0")]);
        assert_eq!(g[6].comps(), &[p("x1^2"), p("x1*x2")]);
        assert_eq!(sl_generators(3).unwrap().len(), 15);
    }

    #[test]
    fn recognizes_fields() {
        for g in sl_generators(3).unwrap() {
            assert_eq!(ProjectiveField::from_components(g.comps().to_vec()).unwrap(), g);
        }
        assert!(ProjectiveField::from_components(vec![p("x2^2"), p("0")]).is_err());
    }

    #[test]
    fn actions() {
        let g = sl_generators(2).unwrap();
        assert_eq!(density_action(&g[0], &Rat::new(5, 3), &p("x1")), p("1"));
        let x1d1 = ProjectiveField::from_components(vec![p("x1"), p("0")]).unwrap();
        assert_eq!(density_action(&x1d1, &Rat::new(1, 2), &p("1")), p("1/2"));
        let x2d1 = ProjectiveField::from_components(vec![p("x2"), p("0")]).unwrap();
        let d2 = SymField::coord_vector(2, 1);
        assert_eq!(
            symbol_action(&x2d1, &d2).unwrap(),
            SymField::coord_vector(2, 0).scale(&-Rat::one())
        );
        let c = Rat::new(2, 5);
        let d1 = SymField::coord_vector(2, 0).with_weight(c.clone());
        assert_eq!(symbol_action(&x1d1, &d1).unwrap(), d1.scale(&(c - Rat::one())));
        let k = SymField::monomial(Variance::Contra, Rat::zero(), &[1, 1], p("3"));
        assert!(symbol_action(&g[1], &k).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_antihomomorphism() {
        let g = sl_generators(2).unwrap();
        for x in &g {
            for y in &g {
                let z = ProjectiveField::from_matrix(matrix_bracket(x.matrix(), y.matrix())).unwrap();
                let lie: Vec<Poly> = x.bracket_components(y).into_iter().map(|p| -p).collect();
                assert_eq!(z.comps(), &lie[..]);
            }
        }
    }
}
