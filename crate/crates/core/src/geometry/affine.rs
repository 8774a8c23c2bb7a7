use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rat};
use crate::symalg::{FiberPoly, SymField, Variance};

use super::Connection;

/// Affine change of chart `Phi(x) = L x + t` with rational invertible `L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineMap {
    l: Vec<Vec<Rat>>,
    t: Vec<Rat>,
    inv: Vec<Vec<Rat>>,
    det: Rat,
}

/// Gauss-Jordan inverse and determinant; `None` when singular.
fn invert(a: &[Vec<Rat>]) -> Option<(Vec<Vec<Rat>>, Rat)> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let mut det = Rat::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let inv_p = p.recip();
        for v in m[col].iter_mut() {
            *v *= &inv_p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(&pivot_row) {
                    *v -= &(&f * pv);
                }
            }
        }
    }
    Some((m.into_iter().map(|r| r[n..].to_vec()).collect(), det))
}

impl AffineMap {
    pub fn new(l: Vec<Vec<Rat>>, t: Vec<Rat>) -> Result<AffineMap> {
        let n = l.len();
        if t.len() != n || l.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.len(),
            });
        }
        let (inv, det) = invert(&l).ok_or(Error::Singular)?;
        Ok(AffineMap { l, t, inv, det })
    }

    pub fn identity(m: usize) -> AffineMap {
        let l = (0..m)
            .map(|i| (0..m).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        AffineMap::new(l, vec![Rat::zero(); m]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn linear(&self) -> &[Vec<Rat>] {
        &self.l
    }

    pub fn inverse_linear(&self) -> &[Vec<Rat>] {
        &self.inv
    }

    pub fn det(&self) -> &Rat {
        &self.det
    }

    /// The components of `Phi` as polynomials in `x`.
    pub fn components(&self) -> Vec<Poly> {
        let m = self.dim();
        (0..m)
            .map(|a| {
                let mut p = Poly::constant(m, self.t[a].clone());
                for i in 0..m {
                    p.add_scaled(&Poly::var(m, i), &self.l[a][i]);
                }
                p
            })
            .collect()
    }

    /// `|det L|^w`, which must be rational.
    pub fn density_factor(&self, weight: &Rat) -> Result<Rat> {
        self.det
            .abs()
            .rational_power(weight)
            .ok_or_else(|| Error::IrrationalDensityFactor {
                det: Box::new(self.det.clone()),
                weight: Box::new(weight.clone()),
            })
    }

    /// Linear substitution of fiber variables for a pulled-back field:
    /// `xi'_a -> sum_i (L^-1)^i_a xi_i`, `eta'_a -> sum_i L^a_i eta_i`.
    pub fn fiber_substitution(&self, variance: Variance) -> Vec<FiberPoly> {
        let m = self.dim();
        (0..m)
            .map(|a| {
                let mut s = FiberPoly::zero(m, m);
                for i in 0..m {
                    let c = match variance {
                        Variance::Contra => &self.inv[i][a],
                        Variance::Co => &self.l[a][i],
                    };
                    s.add_scaled(&FiberPoly::var(m, m, i), c);
                }
                s
            })
            .collect()
    }

    fn check(&self, m: usize) -> Result<()> {
        if m != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m,
            });
        }
        Ok(())
    }
}

/// `Phi^* nabla'`: `Gamma^k_{ij}(x) = (L^-1)^k_c Gamma'^c_{ab}(Phi x) L^a_i L^b_j`.
pub fn pullback_affine(conn: &Connection, phi: &AffineMap) -> Result<Connection> {
    let m = conn.dim();
    phi.check(m)?;
    let comps = phi.components();
    let moved: Vec<Poly> = conn
        .gamma_table()
        .iter()
        .map(|p| p.compose(&comps))
        .collect::<Result<_>>()?;
    let (l, inv) = (phi.linear(), phi.inverse_linear());
    Connection::from_fn(m, |k, i, j| {
        let mut acc = Poly::zero(m);
        for c in 0..m {
            if inv[k][c].is_zero() {
                continue;
            }
            for a in 0..m {
                for b in 0..m {
                    let s = &(&inv[k][c] * &l[a][i]) * &l[b][j];
                    acc.add_scaled(&moved[(c * m + a) * m + b], &s);
                }
            }
        }
        acc
    })
}

/// Pull back a weighted symmetric field along `Phi`.
pub fn pullback_field(a: &SymField, phi: &AffineMap) -> Result<SymField> {
    phi.check(a.dim())?;
    let factor = phi.density_factor(a.weight())?;
    let rep = a
        .rep()
        .compose_base(&phi.components())
        .substitute(&phi.fiber_substitution(a.variance()))
        .scale(&factor);
    Ok(a.with_rep(rep))
}
