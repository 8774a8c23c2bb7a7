//! Projectively related connections share unparametrized geodesics.

use projquant::exactpoly::parse_poly;
use projquant::geometry::{geodesic_trace, image_distance, projective_shift, Connection, OneForm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let conn = Connection::from_entries(2, &[(0, 1, 1, parse_poly("x1", 2)?)])?;
    let alpha = OneForm::coord(2, 0);
    let shifted = projective_shift(&conn, &alpha)?;
    let (x0, v0) = ([0.0, 0.0], [0.5, 0.25]);
    let a = geodesic_trace(&conn, &x0, &v0, 1e-3, 500)?;
    let b = geodesic_trace(&shifted, &x0, &v0, 1e-3, 500)?;
    println!("endpoint (original): {:?}", a.last().unwrap());
    println!("endpoint (shifted):  {:?}", b.last().unwrap());
    println!("distance between images: {:.3e}", image_distance(&a, &b, 400));
    Ok(())
}
