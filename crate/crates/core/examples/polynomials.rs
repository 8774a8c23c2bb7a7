//! Exact polynomial arithmetic: parsing, products, partials and evaluation.

use projquant::exactpoly::{parse_poly, Rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse_poly("x1^2*x2 - 3/2*x2 + 1", 2)?;
    let q = parse_poly("x1 - x2", 2)?;
    println!("p        = {p}");
    println!("q        = {q}");
    println!("p * q    = {}", &p * &q);
    println!("d1(p q)  = {}", (&p * &q).partial(0));
    println!("p(1, 2)  = {}", p.eval(&[Rat::int(1), Rat::int(2)])?);
    println!("p(1/3, -1/2) = {}", p.eval(&[Rat::new(1, 3), Rat::new(-1, 2)])?);
    Ok(())
}
