//! Equivariance of the lifted quantization under the projective algebra of flat space.

use projquant::equivariance::{equivariance_residual_operator, sl_generators, Prescription};
use projquant::exactpoly::{parse_poly, Rat};
use projquant::symalg::{SymField, Variance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = Rat::new(1, 2);
    let sym = SymField::monomial(Variance::Contra, Rat::zero(), &[2, 0], parse_poly("x2", 2)?);
    for (n, x) in sl_generators(2)?.iter().enumerate() {
        let comps: Vec<String> = x.comps().iter().map(|p| p.to_string()).collect();
        let lifted = equivariance_residual_operator(&Prescription::Lifted(Rat::one()), x, &b, &sym)?;
        let standard = equivariance_residual_operator(&Prescription::Standard, x, &b, &sym)?;
        println!(
            "X{n} = ({:<16}) lifted: {:<9} standard: {}",
            comps.join(", "),
            if lifted.is_none() { "exact" } else { "residual" },
            standard.map_or("exact".to_string(), |r| format!("residual {r}"))
        );
    }
    Ok(())
}
