use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rat, MAX_VARS};

/// Torsion-free connection on a chart of dimension `m`, with curvature data
/// computed at construction.
///
/// Index conventions (all 0-based):
/// - `gamma(k, i, j)` is `Gamma^k_{ij}`, so `nabla_i d_j = sum_k Gamma^k_{ij} d_k`;
/// - `riemann(l, k, i, j)` is `R^l_{kij}`, the `d_l` component of `R(d_i, d_j) d_k`;
/// - `ric(k, j) = sum_i R^i_{kij}`, `tr_r(i, j) = sum_l R^l_{lij}`;
/// - `r = (Ric + Ric^T) / (2(m - 1))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    m: usize,
    gamma: Vec<Poly>,
    riemann: Vec<Poly>,
    ric: Vec<Poly>,
    tr_r: Vec<Poly>,
    r: Vec<Poly>,
    trace: Vec<Poly>,
}

pub(crate) fn check_dim(m: usize) -> Result<()> {
    if !(2..MAX_VARS).contains(&m) {
        return Err(Error::InvalidDimension(m));
    }
    Ok(())
}

impl Connection {
    /// Build from the full table `gamma[(k * m + i) * m + j]`.
    pub fn new(m: usize, gamma: Vec<Poly>) -> Result<Connection> {
        check_dim(m)?;
        if gamma.len() != m * m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m * m,
                found: gamma.len(),
            });
        }
        if let Some(p) = gamma.iter().find(|p| p.nvars() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: p.nvars(),
            });
        }
        for k in 0..m {
            for i in 0..m {
                for j in i + 1..m {
                    if gamma[(k * m + i) * m + j] != gamma[(k * m + j) * m + i] {
                        return Err(Error::Torsion { upper: k, i, j });
                    }
                }
            }
        }
        let mut c = Connection {
            m,
            gamma,
            riemann: Vec::new(),
            ric: Vec::new(),
            tr_r: Vec::new(),
            r: Vec::new(),
            trace: Vec::new(),
        };
        c.fill_curvature();
        Ok(c)
    }

    pub fn from_fn(m: usize, f: impl Fn(usize, usize, usize) -> Poly) -> Result<Connection> {
        let mut g = Vec::with_capacity(m * m * m);
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    g.push(f(k, i, j));
                }
            }
        }
        Connection::new(m, g)
    }

    pub fn flat(m: usize) -> Result<Connection> {
        Connection::from_fn(m, |_, _, _| Poly::zero(m))
    }

    /// Entries `(k, i, j, Gamma^k_{ij})`; each is mirrored to `(k, j, i)` and
    /// unlisted entries are zero. Repeated entries overwrite.
    pub fn from_entries(m: usize, entries: &[(usize, usize, usize, Poly)]) -> Result<Connection> {
        check_dim(m)?;
        let mut g = vec![Poly::zero(m); m * m * m];
        for (k, i, j, p) in entries {
            for idx in [*k, *i, *j] {
                if idx >= m {
                    return Err(Error::IndexOutOfRange { index: idx, dim: m });
                }
            }
            g[(k * m + i) * m + j] = p.clone();
            g[(k * m + j) * m + i] = p.clone();
        }
        Connection::new(m, g)
    }

    fn fill_curvature(&mut self) {
        let m = self.m;
        let mut riemann = Vec::with_capacity(m.pow(4));
        for l in 0..m {
            for k in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        let mut p = self.gamma(l, j, k).partial(i) - self.gamma(l, i, k).partial(j);
                        for q in 0..m {
                            p.add_assign_ref(&(self.gamma(l, i, q) * self.gamma(q, j, k)));
                            p.add_scaled(&(self.gamma(l, j, q) * self.gamma(q, i, k)), &-Rat::one());
                        }
                        riemann.push(p);
                    }
                }
            }
        }
        self.riemann = riemann;
        let table = |f: &dyn Fn(usize, usize) -> Poly| -> Vec<Poly> { (0..m * m).map(|n| f(n / m, n % m)).collect() };
        let ric = table(&|k, j| (0..m).fold(Poly::zero(m), |acc, i| acc + self.riemann(i, k, i, j).clone()));
        let tr_r = table(&|i, j| (0..m).fold(Poly::zero(m), |acc, l| acc + self.riemann(l, l, i, j).clone()));
        let s = Rat::new(1, 2 * (m as i64 - 1));
        let r = table(&|i, j| (&ric[i * m + j] + &ric[j * m + i]).scale(&s));
        self.ric = ric;
        self.tr_r = tr_r;
        self.r = r;
        self.trace = (0..m)
            .map(|i| (0..m).fold(Poly::zero(m), |acc, l| acc + self.gamma(l, l, i).clone()))
            .collect();
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Poly {
        &self.gamma[(k * self.m + i) * self.m + j]
    }

    pub fn riemann(&self, l: usize, k: usize, i: usize, j: usize) -> &Poly {
        let m = self.m;
        &self.riemann[((l * m + k) * m + i) * m + j]
    }

    pub fn ric(&self, i: usize, j: usize) -> &Poly {
        &self.ric[i * self.m + j]
    }

    pub fn tr_r(&self, i: usize, j: usize) -> &Poly {
        &self.tr_r[i * self.m + j]
    }

    /// Symmetrized Ricci tensor divided by `2(m - 1)`.
    pub fn r(&self, i: usize, j: usize) -> &Poly {
        &self.r[i * self.m + j]
    }

    /// `sum_l Gamma^l_{li}`, the coefficient of the density rule.
    pub fn trace_gamma(&self, i: usize) -> &Poly {
        &self.trace[i]
    }

    pub fn gamma_table(&self) -> &[Poly] {
        &self.gamma
    }

    pub fn is_flat(&self) -> bool {
        self.riemann.iter().all(Poly::is_zero)
    }

    /// The symmetric part of the Ricci tensor vanishes.
    pub fn is_ricci_flat(&self) -> bool {
        self.r.iter().all(Poly::is_zero)
    }

    /// Largest total degree among the Christoffel entries.
    pub fn max_degree(&self) -> Option<u32> {
        self.gamma.iter().filter_map(Poly::degree).max()
    }
}

/// Polynomial one-form `alpha = sum_i alpha_i dx^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneForm {
    comps: Vec<Poly>,
}

impl OneForm {
    pub fn new(comps: Vec<Poly>) -> Result<OneForm> {
        let m = comps.len();
        if let Some(p) = comps.iter().find(|p| p.nvars() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: p.nvars(),
            });
        }
        Ok(OneForm { comps })
    }

    pub fn zero(m: usize) -> OneForm {
        OneForm {
            comps: vec![Poly::zero(m); m],
        }
    }

    /// `dx^i` (0-based).
    pub fn coord(m: usize, i: usize) -> OneForm {
        let mut f = OneForm::zero(m);
        f.comps[i] = Poly::one(m);
        f
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn scale(&self, s: &Rat) -> OneForm {
        OneForm {
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// `(nabla_i alpha)_j = d_i alpha_j - Gamma^k_{ij} alpha_k`.
    pub fn covariant(&self, conn: &Connection, i: usize, j: usize) -> Poly {
        let mut p = self.comps[j].partial(i);
        for k in 0..self.dim() {
            p.add_scaled(&(conn.gamma(k, i, j) * &self.comps[k]), &-Rat::one());
        }
        p
    }
}

fn same_dim(conn: &Connection, alpha: &OneForm) -> Result<()> {
    if conn.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: conn.dim(),
            found: alpha.dim(),
        });
    }
    Ok(())
}

/// Projectively equivalent connection
/// `Gamma'^k_{ij} = Gamma^k_{ij} + alpha_i delta^k_j + alpha_j delta^k_i`.
pub fn projective_shift(conn: &Connection, alpha: &OneForm) -> Result<Connection> {
    same_dim(conn, alpha)?;
    Connection::from_fn(conn.dim(), |k, i, j| {
        let mut p = conn.gamma(k, i, j).clone();
        if k == j {
            p.add_assign_ref(alpha.comp(i));
        }
        if k == i {
            p.add_assign_ref(alpha.comp(j));
        }
        p
    })
}

/// Curvature data of a shifted connection predicted from the unshifted one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftPrediction {
    m: usize,
    pub riemann: Vec<Poly>,
    pub tr_r: Vec<Poly>,
    pub ric: Vec<Poly>,
}

impl ShiftPrediction {
    /// Compare with the curvature caches of `conn`, returning the first
    /// mismatching entry as `(table, flat index, predicted - actual)`.
    pub fn mismatch(&self, conn: &Connection) -> Option<(&'static str, usize, Poly)> {
        let m = self.m;
        let tables: [(&'static str, &Vec<Poly>, &Vec<Poly>); 3] = [
            ("riemann", &self.riemann, &conn.riemann),
            ("trR", &self.tr_r, &conn.tr_r),
            ("ric", &self.ric, &conn.ric),
        ];
        debug_assert_eq!(m, conn.dim());
        for (name, pred, actual) in tables {
            for (n, (p, a)) in pred.iter().zip(actual.iter()).enumerate() {
                if p != a {
                    return Some((name, n, p - a));
                }
            }
        }
        None
    }
}

/// Right-hand sides of the projective shift formulas for `R`, `trR` and
/// `Ric`, with `N(X, Y) = (nabla_X alpha)(Y)`:
///
/// ```text
/// R'(X,Y)Z = R(X,Y)Z + a(Y)a(Z)X - a(X)a(Z)Y + (N(X,Y) - N(Y,X))Z + N(X,Z)Y - N(Y,Z)X
/// trR'     = trR + (m+1)(N(X,Y) - N(Y,X))
/// Ric'     = Ric + (m-1)a(X)a(Y) + N(X,Y) - m N(Y,X)
/// ```
pub fn curvature_shift_predict(conn: &Connection, alpha: &OneForm) -> Result<ShiftPrediction> {
    same_dim(conn, alpha)?;
    let m = conn.dim();
    let mut nab = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            nab.push(alpha.covariant(conn, i, j));
        }
    }
    let n = |i: usize, j: usize| &nab[i * m + j];
    let a = |i: usize| alpha.comp(i);
    let minus = -Rat::one();
    let mut riemann = Vec::with_capacity(m.pow(4));
    for l in 0..m {
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut p = conn.riemann(l, k, i, j).clone();
                    if l == i {
                        p.add_assign_ref(&(a(j) * a(k)));
                        p.add_scaled(n(j, k), &minus);
                    }
                    if l == j {
                        p.add_scaled(&(a(i) * a(k)), &minus);
                        p.add_assign_ref(n(i, k));
                    }
                    if l == k {
                        p.add_assign_ref(n(i, j));
                        p.add_scaled(n(j, i), &minus);
                    }
                    riemann.push(p);
                }
            }
        }
    }
    let mp1 = Rat::from(m + 1);
    let mm1 = Rat::from(m - 1);
    let mut tr_r = Vec::with_capacity(m * m);
    let mut ric = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut t = conn.tr_r(i, j).clone();
            t.add_scaled(&(n(i, j) - n(j, i)), &mp1);
            tr_r.push(t);
            let mut r = conn.ric(i, j).clone();
            r.add_scaled(&(a(i) * a(j)), &mm1);
            r.add_assign_ref(n(i, j));
            r.add_scaled(n(j, i), &-Rat::from(m));
            ric.push(r);
        }
    }
    Ok(ShiftPrediction { m, riemann, tr_r, ric })
}
