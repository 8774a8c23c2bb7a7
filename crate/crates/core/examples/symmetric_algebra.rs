//! Symmetric products and contractions of symmetric tensor fields.

use projquant::exactpoly::{parse_poly, Rat};
use projquant::symalg::{full_pair, interior, vee, SymField, Variance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = SymField::monomial(Variance::Contra, Rat::zero(), &[1, 0], parse_poly("x2", 2)?);
    let y = SymField::monomial(Variance::Contra, Rat::zero(), &[0, 1], parse_poly("1", 2)?);
    let xy = vee(&x, &y)?;
    println!("X v Y       = {}", xy.rep());

    let dx1 = SymField::coord_covector(2, 0);
    let dx2 = SymField::coord_covector(2, 1);
    let g = vee(&vee(&dx1, &dx1)?, &dx2)?;
    println!("dx1 dx1 dx2 = {}", g.rep());
    println!("i(X) g      = {}", interior(&x, &g)?.rep());
    println!("i(X v Y) g  = {}", interior(&xy, &g)?.rep());
    println!(
        "<X v Y, dx1 v dx2> = {}",
        full_pair(&xy, &vee(&dx1, &dx2)?)?.scalar_value()
    );
    Ok(())
}
