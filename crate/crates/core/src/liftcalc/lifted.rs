use crate::error::Result;
use crate::exactpoly::{Poly, Rat};
use crate::geometry::{frame_cov, frame_div, frame_symdiff, Connection, FrameCalculus};
use crate::symalg::Variance;

use super::params::{check_conn, LiftParams};
use super::{GradedCoform, GradedSymbol};

/// Natural lifted connection on the density bundle, written in the frame
/// `(e_1^h, ..., e_m^h, E)` with `E` at index `m`:
///
/// ```text
/// nabla_{e_i} e_j = Gamma^k_{ij} e_k + ((a/2) trR_{ij} + mu (Ric_{ij} + Ric_{ji})) E
/// nabla_{e_i} E   = nabla_E e_i = nu e_i
/// nabla_E E       = rho E
/// ```
///
/// Component functions of a weight-`w` field satisfy `E f = -(w/a) f` and
/// `e_i f = d_i f - w Gamma^l_{li} f`.
pub struct LiftedConnection<'a> {
    conn: &'a Connection,
    params: LiftParams,
    table: Vec<Poly>,
}

impl<'a> LiftedConnection<'a> {
    pub fn new(conn: &'a Connection, params: &LiftParams) -> Self {
        let m = conn.dim();
        let n = m + 1;
        let mut table = vec![Poly::zero(m); n * n * n];
        let idx = |g: usize, a: usize, b: usize| (g * n + a) * n + b;
        let half_a = params.a() * Rat::new(1, 2);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    table[idx(k, i, j)] = conn.gamma(k, i, j).clone();
                }
                let mut e = conn.tr_r(i, j).scale(&half_a);
                e.add_scaled(&(conn.ric(i, j) + conn.ric(j, i)), &params.mu);
                table[idx(m, i, j)] = e;
            }
            table[idx(i, i, m)] = Poly::constant(m, params.nu.clone());
            table[idx(i, m, i)] = Poly::constant(m, params.nu.clone());
        }
        table[idx(m, m, m)] = Poly::constant(m, params.rho.clone());
        LiftedConnection {
            conn,
            params: params.clone(),
            table,
        }
    }

    pub fn params(&self) -> &LiftParams {
        &self.params
    }
}

impl FrameCalculus for LiftedConnection<'_> {
    fn base_dim(&self) -> usize {
        self.conn.dim()
    }

    fn frame_dim(&self) -> usize {
        self.conn.dim() + 1
    }

    fn coeff(&self, g: usize, a: usize, b: usize) -> &Poly {
        let n = self.frame_dim();
        &self.table[(g * n + a) * n + b]
    }

    fn act(&self, a: usize, f: &Poly, weight: &Rat) -> Poly {
        if a < self.conn.dim() {
            self.conn.act(a, f, weight)
        } else {
            f.scale(&-(weight / self.params.a()))
        }
    }
}

/// Total-space divergence computed from the frame connection.
pub fn graded_div(conn: &Connection, params: &LiftParams, b: &GradedSymbol) -> Result<GradedSymbol> {
    check_conn(conn, b.dim())?;
    if b.degree() == 0 {
        return Ok(GradedSymbol::zero(b.dim(), 0, b.weight().clone()));
    }
    let lc = LiftedConnection::new(conn, params);
    let rep = frame_div(&lc, b.weight(), &b.total());
    GradedSymbol::from_total(b.dim(), b.degree() - 1, b.weight().clone(), &rep)
}

/// Total-space symmetric differential computed from the frame connection.
pub fn graded_symdiff(conn: &Connection, params: &LiftParams, z: &GradedCoform) -> Result<GradedCoform> {
    check_conn(conn, z.dim())?;
    let lc = LiftedConnection::new(conn, params);
    let rep = frame_symdiff(&lc, z.weight(), &z.total());
    GradedCoform::from_total(z.dim(), z.degree() + 1, z.weight().clone(), &rep)
}

/// `n`-fold [`graded_symdiff`].
pub fn graded_symdiff_pow(conn: &Connection, params: &LiftParams, z: &GradedCoform, n: u32) -> Result<GradedCoform> {
    let mut cur = z.clone();
    for _ in 0..n {
        cur = graded_symdiff(conn, params, &cur)?;
    }
    Ok(cur)
}

/// `nabla~_{Z} zeta` along a frame direction (`m` means `E`).
pub fn graded_cov_coform(conn: &Connection, params: &LiftParams, z: &GradedCoform, dir: usize) -> Result<GradedCoform> {
    check_conn(conn, z.dim())?;
    let lc = LiftedConnection::new(conn, params);
    let rep = frame_cov(&lc, Variance::Co, z.weight(), &z.total(), dir);
    GradedCoform::from_total(z.dim(), z.degree(), z.weight().clone(), &rep)
}

/// `nabla~_{Z} B` along a frame direction (`m` means `E`).
pub fn graded_cov_symbol(conn: &Connection, params: &LiftParams, b: &GradedSymbol, dir: usize) -> Result<GradedSymbol> {
    check_conn(conn, b.dim())?;
    let lc = LiftedConnection::new(conn, params);
    let rep = frame_cov(&lc, Variance::Contra, b.weight(), &b.total(), dir);
    GradedSymbol::from_total(b.dim(), b.degree(), b.weight().clone(), &rep)
}
