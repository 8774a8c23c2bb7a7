use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rat};
use crate::geometry::{divergence, Connection};
use crate::symalg::{full_pair, SymField, Variance};

use super::lifted::graded_div;
use super::oracle::contract_r;
use super::params::{check_conn, m_bar, LiftParams};
use super::{GradedCoform, GradedSymbol};

/// Reject weights where the lift recursion divides by zero:
/// `c = (j + k + m)/(m + 1)` for some `0 <= j <= k - 1`.
pub fn check_resonance(m: usize, k: u32, c: &Rat) -> Result<()> {
    let mb = m_bar(m, c);
    for l in 0..k as usize {
        let den = Rat::from(2 * k as usize - l - 1) + &mb;
        if den.is_zero() {
            return Err(Error::ResonantWeight {
                j: k as usize - 1 - l,
                c: c.clone(),
            });
        }
    }
    Ok(())
}

fn check_symbol(conn: &Connection, a: &SymField) -> Result<()> {
    check_conn(conn, a.dim())?;
    if a.degree() > 0 && a.variance() != Variance::Contra {
        return Err(Error::VarianceMismatch);
    }
    Ok(())
}

/// A weight-`b` density as a degree-0 graded coform.
pub fn lift_density(phi: &SymField) -> Result<GradedCoform> {
    if phi.degree() != 0 {
        return Err(Error::DegreeMismatch(format!(
            "density must be scalar, found degree {}",
            phi.degree()
        )));
    }
    GradedCoform::new(phi.dim(), 0, phi.weight().clone(), vec![phi.clone()])
}

/// Divergence-free projectively invariant lift of `A`, by the recursion
///
/// ```text
/// A_{k-(l+1)} = -a_bar / ((l+1)(2k-l-1+m_bar)) (Div A_{k-l} - 2 a_bar i(r) A_{k-l+1}),  A_{k+1} = 0
/// ```
pub fn lift_symbol(conn: &Connection, a: &Rat, sym: &SymField) -> Result<GradedSymbol> {
    check_symbol(conn, sym)?;
    if a.is_zero() {
        return Err(Error::ZeroLiftParameter);
    }
    let m = conn.dim();
    let k = sym.degree();
    let c = sym.weight();
    check_resonance(m, k, c)?;
    let ab = a * Rat::from(m + 1);
    let mb = m_bar(m, c);
    let mut parts = vec![sym.with_variance(Variance::Contra)];
    for l in 0..k as usize {
        let mut next = divergence(conn, &parts[l])?;
        if l >= 1 {
            let ir = contract_r(conn, &parts[l - 1])?;
            next = next.sub(&ir.scale(&(Rat::int(2) * &ab)).with_variance(next.variance()))?;
        }
        let den = Rat::from(l + 1) * (Rat::from(2 * k as usize - l - 1) + &mb);
        parts.push(next.scale(&(-&ab / den)));
    }
    GradedSymbol::new(m, k, c.clone(), parts)
}

/// Closed form of the lift:
///
/// ```text
/// A_{k-l} = (-a_bar)^l / (l! (2k+m_bar-1)...(2k+m_bar-l)) * sum of words of weight l in {Div, r_k} applied to A
/// ```
///
/// `Div` lowers the degree by one and `r_k C_j = (m_bar+k+j-1)(k-j+1) 2 i(r) C_j`
/// by two, `j` being the degree of the argument.
pub fn lift_symbol_closed(conn: &Connection, a: &Rat, sym: &SymField) -> Result<GradedSymbol> {
    check_symbol(conn, sym)?;
    if a.is_zero() {
        return Err(Error::ZeroLiftParameter);
    }
    let m = conn.dim();
    let k = sym.degree();
    let c = sym.weight();
    check_resonance(m, k, c)?;
    let ab = a * Rat::from(m + 1);
    let mb = m_bar(m, c);
    let kk = Rat::from(k as usize);
    let rk = |f: &SymField| -> Result<SymField> {
        let j = Rat::from(f.degree() as usize);
        let s = (&mb + &kk + &j - Rat::one()) * (&kk - &j + Rat::one()) * Rat::int(2);
        Ok(contract_r(conn, f)?.scale(&s))
    };
    // words[l] = sum over words of weight l applied to A
    let mut words: Vec<SymField> = vec![sym.with_variance(Variance::Contra)];
    for l in 1..=k as usize {
        let mut w = divergence(conn, &words[l - 1])?;
        if l >= 2 {
            let r = rk(&words[l - 2])?.with_variance(w.variance());
            w = w.add(&r)?;
        }
        words.push(w);
    }
    let mut parts = Vec::with_capacity(k as usize + 1);
    let mut coef = Rat::one();
    for (l, w) in words.iter().enumerate() {
        if l > 0 {
            coef = coef * -&ab / (Rat::from(l) * (Rat::from(2 * k as usize - l) + &mb));
        }
        parts.push(w.scale(&coef));
    }
    GradedSymbol::new(m, k, c.clone(), parts)
}

/// Divergence-free lift for an arbitrary natural lifted connection, solved
/// level by level. The vertical power `l` of `Div~ B` receives
/// `kappa_l A_{k-l-1}` from the new part, with
/// `kappa_l = (l+1)((m + 2(k-l-1)) nu + (l+1) rho - c/a)`.
pub fn lift_symbol_generic(conn: &Connection, params: &LiftParams, sym: &SymField) -> Result<GradedSymbol> {
    check_symbol(conn, sym)?;
    let m = conn.dim();
    let k = sym.degree() as usize;
    let c = sym.weight().clone();
    let ca = &c / params.a();
    let mut b = GradedSymbol::horizontal(sym);
    for l in 0..k {
        let j = Rat::from(m + 2 * (k - l - 1));
        let kappa = Rat::from(l + 1) * (j * &params.nu + Rat::from(l + 1) * &params.rho - &ca);
        if kappa.is_zero() {
            return Err(Error::ResonantWeight { j: k - 1 - l, c });
        }
        let d = graded_div(conn, params, &b)?;
        let mut parts = b.parts().to_vec();
        parts[l + 1] = d.part(l).scale(&-kappa.recip()).with_variance(Variance::Contra);
        b = GradedSymbol::new(m, k as u32, c.clone(), parts)?;
    }
    Ok(b)
}

/// `i(B)(zeta) = sum_l l! full_pair(A_{k-l}, gamma_{k-l})`, using
/// `omega(E) = 1` and `omega(X^h) = 0`.
pub fn graded_pair(b: &GradedSymbol, z: &GradedCoform) -> Result<SymField> {
    if b.degree() != z.degree() {
        return Err(Error::DegreeMismatch(format!(
            "pairing degree {} with degree {}",
            b.degree(),
            z.degree()
        )));
    }
    if b.dim() != z.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: z.dim(),
        });
    }
    let mut acc = Poly::zero(b.dim());
    for (l, (x, y)) in b.parts().iter().zip(z.parts()).enumerate() {
        let v = full_pair(x, y)?.scalar_value();
        acc.add_scaled(&v, &Rat::factorial(l as u64));
    }
    Ok(SymField::scalar(acc, b.weight() + z.weight()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn resonance_examples() {
        assert_eq!(
            check_resonance(2, 1, &Rat::one()),
            Err(Error::ResonantWeight { j: 0, c: Rat::one() })
        );
        assert!(check_resonance(2, 1, &Rat::zero()).is_ok());
        assert!(check_resonance(2, 0, &Rat::one()).is_ok());
    }

    #[test]
    fn vector_field_lift() {
        // X^h - a (Div X) E
        let conn = Connection::flat(2).unwrap();
        let x = SymField::monomial(Variance::Contra, Rat::zero(), &[1, 0], p("x1"));
        let a = Rat::new(2, 7);
        let lift = lift_symbol(&conn, &a, &x).unwrap();
        assert_eq!(lift.part(0), &x);
        assert_eq!(lift.part(1).scalar_value(), p("-2/7"));
    }

    #[test]
    fn closed_form_example() {
        let conn = Connection::flat(2).unwrap();
        let a = Rat::one();
        let sym = SymField::monomial(Variance::Contra, Rat::zero(), &[2, 0], p("x1^2"));
        let lift = lift_symbol(&conn, &a, &sym).unwrap();
        assert_eq!(lift, lift_symbol_closed(&conn, &a, &sym).unwrap());
        let ab = Rat::int(3);
        let d1 = divergence(&conn, &sym).unwrap();
        let d2 = divergence(&conn, &d1).unwrap();
        assert_eq!(lift.part(1), &d1.scale(&(-&ab / Rat::int(5))));
        assert_eq!(lift.part(2), &d2.scale(&(&ab * &ab / Rat::int(40))));
    }

    #[test]
    fn pairing_examples() {
        let e = GradedSymbol::euler_power(2, 1, Rat::zero());
        let w = GradedCoform::omega_power(2, 1, Rat::zero());
        assert_eq!(graded_pair(&e, &w).unwrap().scalar_value(), p("1"));
        let e2 = GradedSymbol::euler_power(2, 2, Rat::zero());
        let w2 = GradedCoform::omega_power(2, 2, Rat::zero());
        assert_eq!(graded_pair(&e2, &w2).unwrap().scalar_value(), p("2"));
        assert_eq!(
            graded_pair(&e2, &w2).unwrap().scalar_value(),
            e2.total().pair(&w2.total())
        );
    }
}
