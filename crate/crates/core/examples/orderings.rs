//! Standard, Weyl-type and divergence-corrected orderings of a second-order symbol.

use projquant::exactpoly::{parse_poly, Rat};
use projquant::geometry::{neumaier, rho_standard, rho_weyl, Connection};
use projquant::symalg::{SymField, Variance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let conn = Connection::from_entries(2, &[(0, 0, 1, parse_poly("x2", 2)?)])?;
    let sym = SymField::monomial(Variance::Contra, Rat::zero(), &[1, 1], parse_poly("x1", 2)?);
    let psi = SymField::scalar(parse_poly("x1^2*x2", 2)?, Rat::zero());
    println!("rho_s(A) psi = {}", rho_standard(&conn, &sym, &psi)?.scalar_value());
    println!("rho_w(A) psi = {}", rho_weyl(&conn, &sym, &psi)?.scalar_value());
    for (l, part) in neumaier(&conn, &sym)?.iter().enumerate() {
        println!("corrected symbol part {l}: {}", part.rep());
    }
    Ok(())
}
