use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rat, RatFunc};

use super::connection::check_dim;

/// Diagonal polynomial metric `g = diag(g_1, ..., g_m)` on a chart.
///
/// Its Levi-Civita Christoffel symbols are rational functions, so they live
/// here rather than in a [`super::Connection`]. Only used for checks.
#[derive(Clone, Debug)]
pub struct MetricChart {
    m: usize,
    diag: Vec<Poly>,
    gamma: Vec<RatFunc>,
}

impl MetricChart {
    pub fn diagonal(diag: Vec<Poly>) -> Result<MetricChart> {
        let m = diag.len();
        check_dim(m)?;
        if let Some(p) = diag.iter().find(|p| p.nvars() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: p.nvars(),
            });
        }
        if diag.iter().any(Poly::is_zero) {
            return Err(Error::Singular);
        }
        let half = Rat::new(1, 2);
        let mut gamma = Vec::with_capacity(m * m * m);
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    // 1/2 g^{kk} (d_i g_kj + d_j g_ki - d_k g_ij)
                    let mut num = Poly::zero(m);
                    if k == j {
                        num.add_assign_ref(&diag[k].partial(i));
                    }
                    if k == i {
                        num.add_assign_ref(&diag[k].partial(j));
                    }
                    if i == j {
                        num.add_scaled(&diag[i].partial(k), &-Rat::one());
                    }
                    gamma.push(RatFunc::new(num.scale(&half), diag[k].clone()));
                }
            }
        }
        Ok(MetricChart { m, diag, gamma })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &RatFunc {
        &self.gamma[(k * self.m + i) * self.m + j]
    }

    /// `|g| = prod g_k`.
    pub fn det(&self) -> Poly {
        self.diag.iter().fold(Poly::one(self.m), |acc, g| &acc * g)
    }

    /// `R^l_{kij}` as a rational function.
    pub fn riemann(&self, l: usize, k: usize, i: usize, j: usize) -> RatFunc {
        let mut p = self.gamma(l, j, k).partial(i).sub(&self.gamma(l, i, k).partial(j));
        for q in 0..self.m {
            p = p
                .add(&self.gamma(l, i, q).mul(self.gamma(q, j, k)))
                .sub(&self.gamma(l, j, q).mul(self.gamma(q, i, k)));
        }
        p
    }

    /// `trR_{ij} = sum_l R^l_{lij}`.
    pub fn tr_r(&self, i: usize, j: usize) -> RatFunc {
        (0..self.m).fold(RatFunc::zero(self.m), |acc, l| acc.add(&self.riemann(l, l, i, j)))
    }

    /// `nabla_i f = d_i f - w Gamma^l_{li} f` for a weight-`w` density
    /// component `f`.
    pub fn density_derivative(&self, f: &RatFunc, weight: &Rat, i: usize) -> RatFunc {
        let trace = (0..self.m).fold(RatFunc::zero(self.m), |acc, l| acc.add(self.gamma(l, l, i)));
        f.partial(i).sub(&trace.mul(f).scale(weight))
    }

    /// `|g|^{w/2}` when it is a polynomial: `w` even, or `|g| = root^2`.
    pub fn metric_density(&self, weight: &Rat, root: Option<&Poly>) -> Option<RatFunc> {
        let (base, e) = match root {
            Some(r) if (r * r) == self.det() => (r.clone(), weight.clone()),
            Some(_) => return None,
            None => (self.det(), weight * Rat::new(1, 2)),
        };
        let e = e.to_i64()?;
        let p = base.pow(e.unsigned_abs() as u32);
        Some(if e >= 0 {
            RatFunc::from_poly(p)
        } else {
            RatFunc::new(Poly::one(self.m), p)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn levi_civita_is_trace_free() {
        let g = MetricChart::diagonal(vec![Poly::one(2), parse_poly("x1^2 + 1", 2).unwrap()]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(g.tr_r(i, j).is_zero());
            }
        }
    }

    #[test]
    fn metric_density_is_parallel() {
        let g = MetricChart::diagonal(vec![Poly::one(2), parse_poly("x1^2 + 1", 2).unwrap()]).unwrap();
        for w in [2, -2, 4] {
            let f = g.metric_density(&Rat::int(w), None).unwrap();
            for i in 0..2 {
                assert!(g.density_derivative(&f, &Rat::int(w), i).is_zero());
            }
        }
        let sq = parse_poly("x1^2 + 1", 2).unwrap();
        let h = MetricChart::diagonal(vec![sq.clone(), sq.clone()]).unwrap();
        let f = h.metric_density(&Rat::int(1), Some(&sq)).unwrap();
        assert!(h.density_derivative(&f, &Rat::int(1), 0).is_zero());
    }
}
