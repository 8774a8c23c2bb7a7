//! Closed formulas for the projectively invariant lifted connection. They
//! are independent of the frame engine and serve as cross-checks for it.

use crate::error::{Error, Result};
use crate::exactpoly::{Mono, Rat};
use crate::geometry::{cov_derivative, divergence, sym_diff_d, Connection};
use crate::symalg::{interior, interior_dual, vee, FiberPoly, SymField, Variance};

use super::params::{b_bar, check_conn, m_bar};
use super::{GradedCoform, GradedSymbol};

/// The symmetric form `r` as a weight-0 covariant field, `rep = 1/2 sum r_ij eta_i eta_j`.
pub fn r_field(conn: &Connection) -> SymField {
    let m = conn.dim();
    let mut rep = FiberPoly::zero(m, m);
    let half = Rat::new(1, 2);
    for i in 0..m {
        for j in 0..m {
            rep.add_term(Mono::var(i).mul(&Mono::var(j)), &conn.r(i, j).scale(&half));
        }
    }
    SymField::new(Variance::Co, 2, Rat::zero(), rep).unwrap()
}

/// `i(r) A`, lowering the degree by two (zero below degree 2).
pub fn contract_r(conn: &Connection, a: &SymField) -> Result<SymField> {
    if a.degree() < 2 {
        return Ok(SymField::zero(a.dim(), Variance::Contra, 0, a.weight().clone()));
    }
    interior_dual(&r_field(conn), a)
}

/// `r v gamma`.
pub fn vee_r(conn: &Connection, gamma: &SymField) -> Result<SymField> {
    vee(&r_field(conn), gamma)
}

fn add_part(parts: &mut [SymField], l: usize, f: &SymField) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    parts[l] = parts[l].add(&f.with_variance(parts[l].variance()))?;
    Ok(())
}

/// Divergence of `sum_l A_{k-l}^h v E^l` term by term:
///
/// ```text
/// Div~(A^h v E^l) = (Div A)^h v E^l - 2 a_bar (i(r) A)^h v E^(l+1)
///                   + l (2j + l + m_bar) / a_bar  A^h v E^(l-1),   j = deg A
/// ```
pub fn graded_div_closed(conn: &Connection, a: &Rat, b: &GradedSymbol) -> Result<GradedSymbol> {
    let m = b.dim();
    check_conn(conn, m)?;
    let k = b.degree();
    if k == 0 {
        return Ok(GradedSymbol::zero(m, 0, b.weight().clone()));
    }
    let ab = a * Rat::from(m + 1);
    let mb = m_bar(m, b.weight());
    let mut out = GradedSymbol::zero(m, k - 1, b.weight().clone()).parts().to_vec();
    for (l, part) in b.parts().iter().enumerate() {
        let j = k as usize - l;
        if j >= 1 {
            add_part(&mut out, l, &divergence(conn, part)?)?;
        }
        if j >= 2 {
            add_part(&mut out, l + 1, &contract_r(conn, part)?.scale(&(Rat::int(-2) * &ab)))?;
        }
        if l >= 1 {
            let c = Rat::from(l) * (Rat::from(2 * j + l) + &mb) / &ab;
            add_part(&mut out, l - 1, &part.scale(&c))?;
        }
    }
    GradedSymbol::new(m, k - 1, b.weight().clone(), out)
}

/// Symmetric differential of `sum_l omega^l v gamma_{k-l}^h` term by term:
///
/// ```text
/// D~(omega^l v gamma^h) = omega^l v (D gamma)^h + 2 a_bar l omega^(l-1) v (r v gamma)^h
///                         - (2j + l + b_bar) / a_bar  omega^(l+1) v gamma^h,   j = deg gamma
/// ```
///
/// The sign of the `r` term follows from `nabla~_{X^h} omega = a_bar r(X, .)^h + ...`.
pub fn graded_symdiff_closed(conn: &Connection, a: &Rat, z: &GradedCoform) -> Result<GradedCoform> {
    let m = z.dim();
    check_conn(conn, m)?;
    let k = z.degree();
    let ab = a * Rat::from(m + 1);
    let bb = b_bar(m, z.weight());
    let mut out = GradedCoform::zero(m, k + 1, z.weight().clone()).parts().to_vec();
    for (l, part) in z.parts().iter().enumerate() {
        let j = k as usize - l;
        add_part(&mut out, l, &sym_diff_d(conn, part)?)?;
        if l >= 1 {
            let c = Rat::int(2) * &ab * Rat::from(l);
            add_part(&mut out, l - 1, &vee_r(conn, part)?.scale(&c))?;
        }
        let c = -(Rat::from(2 * j + l) + &bb) / &ab;
        add_part(&mut out, l + 1, &part.scale(&c))?;
    }
    GradedCoform::new(m, k + 1, z.weight().clone(), out)
}

fn check_dir(m: usize, dir: usize) -> Result<()> {
    if dir > m {
        return Err(Error::IndexOutOfRange { index: dir, dim: m + 1 });
    }
    Ok(())
}

/// `nabla~ gamma^h` along `e_i^h` (`dir = i < m`) or `E` (`dir = m`):
///
/// ```text
/// nabla~_{X^h} gamma^h = (nabla_X gamma)^h - (1/a_bar) omega v (i(X) gamma)^h
/// nabla~_E gamma^h     = -((b_bar + j)/a_bar) gamma^h
/// ```
pub fn dual_frame_horizontal(conn: &Connection, a: &Rat, gamma: &SymField, dir: usize) -> Result<GradedCoform> {
    let m = gamma.dim();
    check_conn(conn, m)?;
    check_dir(m, dir)?;
    let ab = a * Rat::from(m + 1);
    let j = gamma.degree();
    let w = gamma.weight().clone();
    if dir == m {
        let c = -(b_bar(m, &w) + Rat::from(j as usize)) / &ab;
        return GradedCoform::new(m, j, w, vec![gamma.scale(&c)]);
    }
    let top = cov_derivative(conn, gamma, dir)?;
    let mut parts = vec![top];
    if j >= 1 {
        let ix = interior(&SymField::coord_vector(m, dir), gamma)?.with_weight(w.clone());
        parts.push(ix.scale(&-ab.recip()));
    }
    GradedCoform::new(m, j, w, parts)
}

/// `nabla~ omega` along `e_i^h` or `E`:
///
/// ```text
/// nabla~_{X^h} omega = -(a/2) trR(X, .)^h + a_bar r(X, .)^h
/// nabla~_E omega     = -(1/a_bar) omega
/// ```
pub fn dual_frame_omega(conn: &Connection, a: &Rat, dir: usize) -> Result<GradedCoform> {
    let m = conn.dim();
    check_dir(m, dir)?;
    let ab = a * Rat::from(m + 1);
    if dir == m {
        return Ok(GradedCoform::omega_power(m, 1, Rat::zero()).scale(&-ab.recip()));
    }
    let mut rep = FiberPoly::zero(m, m);
    let half_a = a * Rat::new(-1, 2);
    for j in 0..m {
        let mut c = conn.tr_r(dir, j).scale(&half_a);
        c.add_scaled(conn.r(dir, j), &ab);
        rep.add_term(Mono::var(j), &c);
    }
    let top = SymField::new(Variance::Co, 1, Rat::zero(), rep)?;
    GradedCoform::new(m, 1, Rat::zero(), vec![top])
}
