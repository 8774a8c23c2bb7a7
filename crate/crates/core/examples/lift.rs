//! Lifting a symbol to the density bundle and checking that the lift is divergence free.

use projquant::exactpoly::{parse_poly, Rat};
use projquant::geometry::Connection;
use projquant::liftcalc::{graded_div, lift_symbol, lift_symbol_closed, projective_lift_params};
use projquant::symalg::{SymField, Variance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let conn = Connection::from_entries(2, &[(0, 1, 1, parse_poly("x1", 2)?), (1, 0, 0, parse_poly("2*x2", 2)?)])?;
    let a = Rat::one();
    let sym = SymField::monomial(Variance::Contra, Rat::new(1, 3), &[2, 0], parse_poly("x2", 2)?);
    let lift = lift_symbol(&conn, &a, &sym)?;
    for (l, part) in lift.parts().iter().enumerate() {
        println!("E^{l} part: {}", part.rep());
    }
    let params = projective_lift_params(&a, 2)?;
    println!(
        "divergence of the lift is zero: {}",
        graded_div(&conn, &params, &lift)?.is_zero()
    );
    println!("closed form agrees: {}", lift_symbol_closed(&conn, &a, &sym)? == lift);
    Ok(())
}
