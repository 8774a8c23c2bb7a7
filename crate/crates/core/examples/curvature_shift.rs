//! Curvature of a torsion-free connection and its change under a projective shift.

use projquant::exactpoly::parse_poly;
use projquant::geometry::{curvature_shift_predict, projective_shift, Connection, OneForm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let conn = Connection::from_entries(2, &[(0, 1, 1, parse_poly("x1", 2)?), (1, 0, 1, parse_poly("x2^2", 2)?)])?;
    for i in 0..2 {
        for j in 0..2 {
            println!(
                "Ric_{}{} = {:<12} trR_{}{} = {}",
                i + 1,
                j + 1,
                conn.ric(i, j).to_string(),
                i + 1,
                j + 1,
                conn.tr_r(i, j)
            );
        }
    }
    let alpha = OneForm::new(vec![parse_poly("x2", 2)?, parse_poly("1", 2)?])?;
    let shifted = projective_shift(&conn, &alpha)?;
    let predicted = curvature_shift_predict(&conn, &alpha)?;
    println!("shifted Gamma^1_12 = {}", shifted.gamma(0, 0, 1));
    println!("prediction matches: {}", predicted.mismatch(&shifted).is_none());
    Ok(())
}
