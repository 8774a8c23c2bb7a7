//! One PASS/FAIL line per acceptance criterion. Exact criteria have
//! tolerance zero; the geodesic criterion uses 1e-6.

use std::process::ExitCode;
use std::time::Instant;

use projquant::cli::{alternate_a, geodesic_gap, perturbed_params, shift_residual, RandomGen, GEODESIC_TOLERANCE};
use projquant::equivariance::{equivariance_residual_operator, sl_generators, Prescription};
use projquant::exactpoly::{parse_poly, Poly, Rat};
use projquant::geometry::{curvature_shift_predict, divergence, projective_shift, rho_standard, Connection, OneForm};
use projquant::liftcalc::oracle::{dual_frame_horizontal, dual_frame_omega, graded_div_closed, graded_symdiff_closed};
use projquant::liftcalc::{
    graded_cov_coform, graded_div, graded_symdiff, lift_density, lift_symbol, lift_symbol_closed,
    projective_lift_params, GradedCoform, GradedSymbol,
};
use projquant::quantize::{rho_l, rho_l_ricci_flat, u_coefficients, QuantizeConfig};
use projquant::symalg::{SymField, Variance};
use projquant::Error;

const SCENARIOS_PER_CELL: u64 = 20;

fn weights() -> [(Rat, Rat); 3] {
    [
        (Rat::zero(), Rat::zero()),
        (Rat::new(1, 2), Rat::zero()),
        (Rat::zero(), Rat::new(1, 3)),
    ]
}

/// One random instance of the `(m, k, b, c)` grid.
struct Case {
    m: usize,
    k: u32,
    b: Rat,
    c: Rat,
    conn: Connection,
    alpha: OneForm,
    sym: SymField,
    phi: SymField,
}

impl Case {
    fn label(&self) -> String {
        format!("m={} k={} b={} c={}", self.m, self.k, self.b, self.c)
    }

    fn cfg(&self, conn: &Connection, a: Rat) -> QuantizeConfig {
        QuantizeConfig::new(conn.clone(), a, self.b.clone(), self.c.clone()).unwrap()
    }
}

fn grid() -> Vec<Case> {
    let mut out = Vec::new();
    for m in [2usize, 3] {
        for k in 1..=3u32 {
            for (w, (b, c)) in weights().into_iter().enumerate() {
                for i in 0..SCENARIOS_PER_CELL {
                    let mut g = RandomGen::new(10_000 * w as u64 + 1000 * m as u64 + 100 * k as u64 + i);
                    let (b, c) = (b.clone(), c.clone());
                    out.push(Case {
                        m,
                        k,
                        conn: g.connection(m, 2).unwrap(),
                        alpha: g.one_form(m, 1).unwrap(),
                        sym: g.symbol(m, k, 2, &c).unwrap(),
                        phi: g.density(m, 2, &b),
                        b,
                        c,
                    })
                }
            }
        }
    }
    out
}

type Outcome = Result<String, String>;

fn all(cases: &[Case], f: impl Fn(&Case) -> Result<bool, Error>) -> Outcome {
    for (i, case) in cases.iter().enumerate() {
        match f(case) {
            Ok(true) => {}
            Ok(false) => return Err(format!("case {i} ({}) has a nonzero residual", case.label())),
            Err(e) => return Err(format!("case {i} ({}): {e}", case.label())),
        }
    }
    Ok(format!("{} cases", cases.len()))
}

fn criterion_1(cases: &[Case]) -> Outcome {
    all(cases, |c| {
        let shifted = projective_shift(&c.conn, &c.alpha)?;
        let x = rho_l(&c.cfg(&c.conn, Rat::one()), &c.sym, &c.phi)?;
        let y = rho_l(&c.cfg(&shifted, Rat::one()), &c.sym, &c.phi)?;
        Ok(x == y)
    })
}

fn criterion_2(cases: &[Case]) -> Outcome {
    all(cases, |c| {
        let x = rho_l(&c.cfg(&c.conn, Rat::one()), &c.sym, &c.phi)?;
        let y = rho_l(&c.cfg(&c.conn, alternate_a(&Rat::one(), c.m)), &c.sym, &c.phi)?;
        Ok(x == y)
    })
}

fn criterion_3(cases: &[Case]) -> Outcome {
    all(cases, |c| {
        let a = Rat::one();
        let params = projective_lift_params(&a, c.m)?;
        let lift = lift_symbol(&c.conn, &a, &c.sym)?;
        Ok(graded_div(&c.conn, &params, &lift)?.is_zero() && lift == lift_symbol_closed(&c.conn, &a, &c.sym)?)
    })
}

fn p2(s: &str) -> Poly {
    parse_poly(s, 2).unwrap()
}

fn criterion_4() -> Outcome {
    let mut n = 0;
    for m in [2usize, 3] {
        let flat = Connection::flat(m).unwrap();
        for k in 0..=4u32 {
            for (i, (b, c)) in weights().into_iter().enumerate() {
                let mut g = RandomGen::new(50 + 10 * k as u64 + i as u64 + 100 * m as u64);
                let sym = g.symbol(m, k, 2, &c).unwrap();
                let phi = g.density(m, 4, &b);
                let cfg = QuantizeConfig::new(flat.clone(), Rat::one(), b, c).unwrap();
                let x = rho_l(&cfg, &sym, &phi).map_err(|e| e.to_string())?;
                let y = rho_l_ricci_flat(&cfg, &sym, &phi).map_err(|e| e.to_string())?;
                if x != y {
                    return Err(format!("closed form differs at m={m} k={k}"));
                }
                n += 1;
            }
        }
    }
    // (m, k, b, c) = (2, 2, 0, 0): rho_L = rho_s + (2/5) rho_s(Div .)
    let flat = Connection::flat(2).unwrap();
    let cfg = QuantizeConfig::new(flat.clone(), Rat::one(), Rat::zero(), Rat::zero()).unwrap();
    let sym = SymField::monomial(Variance::Contra, Rat::zero(), &[2, 0], p2("x1^2*x2"))
        .add(&SymField::monomial(
            Variance::Contra,
            Rat::zero(),
            &[1, 1],
            p2("x2^2 - x1"),
        ))
        .unwrap();
    let phi = SymField::scalar(p2("x1^3*x2 + x2^2"), Rat::zero());
    let lhs = rho_l(&cfg, &sym, &phi).unwrap().scalar_value();
    let div = divergence(&flat, &sym).unwrap();
    let rhs = rho_standard(&flat, &sym, &phi).unwrap().scalar_value()
        + rho_standard(&flat, &div, &phi)
            .unwrap()
            .scalar_value()
            .scale(&Rat::new(2, 5));
    if lhs != rhs {
        return Err(format!("rho_L - rho_s - (2/5) rho_s(Div) = {}", lhs - rhs));
    }
    // k = 1, b = 1/2, c = 0: the Lie derivative X(phi) + div(X) phi / 2
    let half = Rat::new(1, 2);
    let cfg = QuantizeConfig::new(flat, Rat::one(), half.clone(), Rat::zero()).unwrap();
    let x = [p2("x1*x2^2 + 1"), p2("x1^3 - x2")];
    let sym = SymField::monomial(Variance::Contra, Rat::zero(), &[1, 0], x[0].clone())
        .add(&SymField::monomial(
            Variance::Contra,
            Rat::zero(),
            &[0, 1],
            x[1].clone(),
        ))
        .unwrap();
    let f = p2("x1^2*x2 - 3*x2 + 2");
    let lie = &x[0] * &f.partial(0) + &x[1] * &f.partial(1) + &(x[0].partial(0) + x[1].partial(1)).scale(&half) * &f;
    let got = rho_l(&cfg, &sym, &SymField::scalar(f, half)).unwrap().scalar_value();
    if got != lie {
        return Err(format!("half-density Lie derivative differs by {}", got - lie));
    }
    Ok(format!("{n} flat cases and both worked values"))
}

fn criterion_5(cases: &[Case]) -> Outcome {
    let a = Rat::one();
    let checked = all(cases, |c| {
        let params = projective_lift_params(&a, c.m)?;
        let horizontal = GradedSymbol::horizontal(&c.sym);
        for b in [horizontal, lift_symbol(&c.conn, &a, &c.sym)?] {
            if graded_div(&c.conn, &params, &b)? != graded_div_closed(&c.conn, &a, &b)? {
                return Ok(false);
            }
        }
        let mut z = lift_density(&c.phi)?;
        for _ in 0..c.k.max(2) {
            let next = graded_symdiff(&c.conn, &params, &z)?;
            if next != graded_symdiff_closed(&c.conn, &a, &z)? {
                return Ok(false);
            }
            z = next;
        }
        let gamma = projquant::geometry::sym_diff_d(&c.conn, &c.phi)?;
        let omega = GradedCoform::omega_power(c.m, 1, Rat::zero());
        for dir in 0..=c.m {
            let h = GradedCoform::horizontal(&gamma);
            if graded_cov_coform(&c.conn, &params, &h, dir)? != dual_frame_horizontal(&c.conn, &a, &gamma, dir)?
                || graded_cov_coform(&c.conn, &params, &omega, dir)? != dual_frame_omega(&c.conn, &a, dir)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    // u^(k+1)_l = u^(k)_l + (2k - l + 1 + b_bar) u^(k)_(l-1), k <= 5
    for b in [Rat::zero(), Rat::new(1, 2), Rat::new(-2, 3)] {
        for m in [2usize, 3] {
            let bb = Rat::from(m + 1) * &b;
            for k in 0..5u32 {
                let (u, v) = (u_coefficients(k, &b, m), u_coefficients(k + 1, &b, m));
                for l in 0..=(k as usize + 1) {
                    let mut want = u.get(l).cloned().unwrap_or_else(Rat::zero);
                    if l > 0 {
                        want += &((Rat::from(2 * k as usize + 1) - Rat::from(l) + &bb) * &u[l - 1]);
                    }
                    if v[l] != want {
                        return Err(format!("u recursion fails at k={k} l={l} b={b} m={m}"));
                    }
                }
            }
        }
    }
    Ok(format!("{checked}, u recursion for k <= 5"))
}

fn criterion_6() -> Outcome {
    let conn = Connection::from_entries(
        2,
        &[(0, 1, 1, p2("x1")), (1, 0, 1, p2("x2^2 - 1")), (0, 0, 0, p2("2*x2"))],
    )
    .unwrap();
    let alpha = OneForm::new(vec![p2("x2 + 1"), p2("x1")]).unwrap();
    let (b, c) = (Rat::new(1, 2), Rat::zero());
    let sym = SymField::monomial(Variance::Contra, c.clone(), &[2, 0], p2("x2"))
        .add(&SymField::monomial(Variance::Contra, c.clone(), &[1, 1], p2("1")))
        .unwrap();
    let phi = SymField::scalar(p2("x1^2 + x2"), b.clone());
    let a = Rat::one();
    let cfg = QuantizeConfig::new(conn.clone(), a.clone(), b, c).unwrap();
    let base = shift_residual(&conn, &alpha, &cfg, &projective_lift_params(&a, 2).unwrap(), &sym, &phi).unwrap();
    if !base.is_zero() {
        return Err(format!("unperturbed residual is {base}"));
    }
    for (name, params) in perturbed_params(&a, 2).unwrap() {
        if shift_residual(&conn, &alpha, &cfg, &params, &sym, &phi)
            .map_err(|e| e.to_string())?
            .is_zero()
        {
            return Err(format!("perturbing {name} keeps the residual zero"));
        }
    }
    Ok("mu, nu and rho each break invariance".into())
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for m in [2usize, 3] {
        let gens = sl_generators(m).unwrap();
        if gens.len() != (m + 1) * (m + 1) - 1 {
            return Err(format!("{} generators for m={m}", gens.len()));
        }
        for k in 0..=3u32 {
            for (i, (b, c)) in weights().into_iter().enumerate() {
                let mut g = RandomGen::new(7000 + 100 * m as u64 + 10 * k as u64 + i as u64);
                let sym = g.symbol(m, k, 2, &c).unwrap();
                for (j, x) in gens.iter().enumerate() {
                    let r = equivariance_residual_operator(&Prescription::Lifted(Rat::one()), x, &b, &sym)
                        .map_err(|e| e.to_string())?;
                    if let Some(r) = r {
                        return Err(format!("m={m} k={k} generator {j}: residual {r}"));
                    }
                    n += 1;
                }
            }
        }
    }
    let gens = sl_generators(2).unwrap();
    let sym = SymField::monomial(Variance::Contra, Rat::zero(), &[2, 0], p2("1"))
        .add(&SymField::monomial(Variance::Contra, Rat::zero(), &[1, 1], p2("x2")))
        .unwrap();
    let control = gens[gens.len() - 2..].iter().any(|x| {
        matches!(
            equivariance_residual_operator(&Prescription::Standard, x, &Rat::zero(), &sym),
            Ok(Some(_))
        )
    });
    if !control {
        return Err("rho_s is equivariant under the quadratic generators at k = 2".into());
    }
    Ok(format!("{n} generator checks, rho_s control nonzero"))
}

fn criterion_8() -> Outcome {
    let mut hits = 0;
    for m in [2usize, 3] {
        let conn = Connection::flat(m).unwrap();
        for k in 1..=3u32 {
            let resonant: Vec<i64> = (0..k as i64).map(|j| j + k as i64 + m as i64).collect();
            for n in -(m as i64 + 1)..=(4 * (m as i64 + 1)) {
                let c = Rat::new(n, m as i64 + 1);
                let sym = SymField::monomial(
                    Variance::Contra,
                    c.clone(),
                    &{
                        let mut idx = vec![0u16; m];
                        idx[0] = k as u16;
                        idx
                    },
                    Poly::one(m),
                );
                let raised = matches!(lift_symbol(&conn, &Rat::one(), &sym), Err(Error::ResonantWeight { .. }));
                if raised != resonant.contains(&n) {
                    return Err(format!("m={m} k={k} c={c}: raised={raised}"));
                }
                hits += raised as usize;
            }
        }
    }
    Ok(format!("{hits} resonant weights raised, none elsewhere"))
}

fn criterion_9() -> Outcome {
    let mut n = 0;
    for m in [2usize, 3] {
        for i in 0..20 {
            let mut g = RandomGen::new(9000 + 100 * m as u64 + i);
            let conn = g.connection(m, 2).unwrap();
            let alpha = g.one_form(m, 1).unwrap();
            for x in 0..m {
                for y in 0..m {
                    if *conn.tr_r(x, y) != conn.ric(x, y) - conn.ric(y, x) {
                        return Err(format!("trR != Ric - Ric^T at m={m} seed {i}"));
                    }
                }
            }
            let shifted = projective_shift(&conn, &alpha).unwrap();
            if let Some((name, idx, d)) = curvature_shift_predict(&conn, &alpha).unwrap().mismatch(&shifted) {
                return Err(format!("{name}[{idx}] differs by {d} at m={m} seed {i}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} connections"))
}

fn criterion_10() -> Outcome {
    let conn = Connection::from_entries(2, &[(0, 1, 1, p2("x1"))]).unwrap();
    let alpha = OneForm::coord(2, 0);
    let gap = geodesic_gap(&conn, &alpha).map_err(|e| e.to_string())?;
    if gap <= GEODESIC_TOLERANCE {
        Ok(format!("image distance {gap:.2e}"))
    } else {
        Err(format!("image distance {gap:.2e} exceeds {GEODESIC_TOLERANCE:e}"))
    }
}

fn main() -> ExitCode {
    let cases = grid();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("projective invariance of rho_L", Box::new(|| criterion_1(&cases))),
        ("independence of a", Box::new(|| criterion_2(&cases))),
        ("divergence-free lift", Box::new(|| criterion_3(&cases))),
        ("Ricci-flat closed form", Box::new(criterion_4)),
        ("oracle cross-checks", Box::new(|| criterion_5(&cases))),
        ("uniqueness falsification", Box::new(criterion_6)),
        ("sl(m+1) equivariance", Box::new(criterion_7)),
        ("resonance guard", Box::new(criterion_8)),
        ("curvature identities", Box::new(criterion_9)),
        ("geodesic reparametrization", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2}: PASS {name} [{detail}] ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL {name} [{detail}] ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
