//! The lifted quantization and its invariance under a projective change of connection.

use projquant::exactpoly::{parse_poly, Rat};
use projquant::geometry::{projective_shift, Connection, OneForm};
use projquant::quantize::{rho_l, QuantizeConfig};
use projquant::symalg::{SymField, Variance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let conn = Connection::from_entries(2, &[(0, 1, 1, parse_poly("x1", 2)?), (0, 0, 0, parse_poly("2*x2", 2)?)])?;
    let (b, c) = (Rat::new(1, 2), Rat::zero());
    let cfg = QuantizeConfig::new(conn.clone(), Rat::one(), b.clone(), c.clone())?;
    let sym = SymField::monomial(Variance::Contra, c, &[1, 1], parse_poly("x2", 2)?);
    let phi = SymField::scalar(parse_poly("x1^2 + x2", 2)?, b);
    let out = rho_l(&cfg, &sym, &phi)?;
    println!("rho_L(A) phi = {}", out.scalar_value());

    let alpha = OneForm::new(vec![parse_poly("x2 + 1", 2)?, parse_poly("x1", 2)?])?;
    let shifted = cfg.with_conn(projective_shift(&conn, &alpha)?);
    println!("unchanged after shift: {}", rho_l(&shifted, &sym, &phi)? == out);
    println!(
        "unchanged for a = 1/3: {}",
        rho_l(&cfg.with_a(Rat::new(1, 3)), &sym, &phi)? == out
    );
    Ok(())
}
