//! The verification suites run on a scenario instance.

use crate::equivariance::{equivariance_residual, equivariance_residual_operator, sl_generators, Prescription};
use crate::error::{Error, Result};
use crate::exactpoly::{Mono, Poly, Rat};
use crate::geometry::{
    curvature_shift_predict, geodesic_trace, image_distance, projective_shift, pullback_affine, pullback_field,
    AffineMap, Connection,
};
use crate::geometry::{divergence_pow, sym_diff_pow};
use crate::liftcalc::oracle::{dual_frame_horizontal, dual_frame_omega, graded_div_closed, graded_symdiff_closed};
use crate::liftcalc::{
    graded_cov_coform, graded_div, graded_symdiff, lift_density, lift_symbol, lift_symbol_closed, lift_symbol_generic,
    projective_lift_params, GradedCoform, GradedSymbol, LiftParams,
};
use crate::quantize::{rho_l, rho_l_ricci_flat, rho_l_with_params, QuantizeConfig};
use crate::symalg::{vee, FiberPoly, SymField};

use super::scenario::Instance;

/// Every suite, in report order.
pub const SUITE_NAMES: [&str; 10] = [
    "a-independence",
    "affine-naturality",
    "divergence-free-lift",
    "geodesics",
    "oracle-crosschecks",
    "projective-invariance",
    "resonance-guard",
    "ricci-flat-closed-form",
    "sl-equivariance",
    "uniqueness-falsification",
];

/// Geodesic comparison: tolerance, step, number of steps and samples.
pub const GEODESIC_TOLERANCE: f64 = 1e-6;
const GEODESIC_STEP: f64 = 1e-3;
const GEODESIC_STEPS: usize = 500;
const GEODESIC_SAMPLES: usize = 400;

/// Result of one suite.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    /// A nonzero exact residual, with a label saying what was compared.
    Residual {
        what: String,
        residual: String,
        polys: Vec<Poly>,
    },
    /// A failure without a polynomial residual.
    Failure(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// A named comparison whose residual should vanish.
struct Residual {
    what: String,
    text: String,
    polys: Vec<Poly>,
}

fn poly_residual(what: impl Into<String>, p: Poly) -> Option<Residual> {
    (!p.is_zero()).then(|| Residual {
        what: what.into(),
        text: p.to_string(),
        polys: vec![p],
    })
}

fn fiber_residual(what: impl Into<String>, p: FiberPoly) -> Option<Residual> {
    (!p.is_zero()).then(|| Residual {
        what: what.into(),
        text: p.to_string(),
        polys: p.terms().map(|(_, c)| c.clone()).collect(),
    })
}

fn symbol_diff(what: &str, x: &GradedSymbol, y: &GradedSymbol) -> Result<Option<Residual>> {
    Ok(fiber_residual(what, x.sub(y)?.total()))
}

fn coform_diff(what: &str, x: &GradedCoform, y: &GradedCoform) -> Result<Option<Residual>> {
    Ok(fiber_residual(what, x.sub(y)?.total()))
}

/// Runs comparisons in order and stops at the first nonzero residual.
fn first(checks: Vec<Box<dyn FnOnce() -> Result<Option<Residual>> + '_>>) -> Result<Verdict> {
    for check in checks {
        if let Some(r) = check()? {
            return Ok(Verdict::Residual {
                what: r.what,
                residual: r.text,
                polys: r.polys,
            });
        }
    }
    Ok(Verdict::Pass)
}

fn cfg(inst: &Instance, conn: &Connection) -> Result<QuantizeConfig> {
    QuantizeConfig::new(conn.clone(), inst.a.clone(), inst.b.clone(), inst.c.clone())
}

fn rho(inst: &Instance, conn: &Connection, a: &Rat) -> Result<Poly> {
    Ok(rho_l(&cfg(inst, conn)?.with_a(a.clone()), &inst.symbol, &inst.density)?.scalar_value())
}

/// Runs one suite. Errors other than the expected resonance become failures
/// with an explanation.
pub fn run_suite(name: &str, inst: &Instance) -> Verdict {
    let out = match name {
        "projective-invariance" => projective_invariance(inst),
        "a-independence" => a_independence(inst),
        "ricci-flat-closed-form" => ricci_flat(inst),
        "divergence-free-lift" => divergence_free_lift(inst),
        "oracle-crosschecks" => oracle_crosschecks(inst),
        "uniqueness-falsification" => uniqueness(inst),
        "sl-equivariance" => sl_equivariance(inst),
        "resonance-guard" => resonance_guard(inst),
        "geodesics" => geodesics(inst),
        "affine-naturality" => affine_naturality(inst),
        other => Err(Error::UnknownSuite(other.to_string())),
    };
    out.unwrap_or_else(|e| match e {
        Error::ResonantWeight { .. } => Verdict::Failure(format!("{e}; the lift is undefined at this weight")),
        e => Verdict::Failure(e.to_string()),
    })
}

fn projective_invariance(inst: &Instance) -> Result<Verdict> {
    let shifted = projective_shift(&inst.conn, &inst.alpha)?;
    first(vec![
        Box::new(|| {
            let pred = curvature_shift_predict(&inst.conn, &inst.alpha)?;
            Ok(pred
                .mismatch(&shifted)
                .and_then(|(name, idx, d)| poly_residual(format!("{name} shift formula at {idx}"), d)))
        }),
        Box::new(|| {
            let d = rho(inst, &inst.conn, &inst.a)? - rho(inst, &shifted, &inst.a)?;
            Ok(poly_residual("rho_L under projective shift", d))
        }),
    ])
}

/// The other of `a = 1` and `a = 1/(m+1)`.
pub fn alternate_a(a: &Rat, m: usize) -> Rat {
    let small = Rat::new(1, m as i64 + 1);
    if *a == small {
        Rat::one()
    } else {
        small
    }
}

fn a_independence(inst: &Instance) -> Result<Verdict> {
    let other = alternate_a(&inst.a, inst.conn.dim());
    let d = rho(inst, &inst.conn, &inst.a)? - rho(inst, &inst.conn, &other)?;
    first(vec![Box::new(move || {
        Ok(poly_residual(format!("rho_L at a = {} and a = {other}", inst.a), d))
    })])
}

/// Uses the scenario connection when its symmetric Ricci part vanishes and
/// flat `R^m` otherwise.
fn ricci_flat(inst: &Instance) -> Result<Verdict> {
    let conn = if inst.conn.is_ricci_flat() {
        inst.conn.clone()
    } else {
        Connection::flat(inst.conn.dim())?
    };
    let c = cfg(inst, &conn)?;
    let d = rho_l(&c, &inst.symbol, &inst.density)?.scalar_value()
        - rho_l_ricci_flat(&c, &inst.symbol, &inst.density)?.scalar_value();
    first(vec![Box::new(move || {
        Ok(poly_residual("rho_L against the Ricci-flat closed form", d))
    })])
}

fn divergence_free_lift(inst: &Instance) -> Result<Verdict> {
    let m = inst.conn.dim();
    let params = projective_lift_params(&inst.a, m)?;
    let lift = lift_symbol(&inst.conn, &inst.a, &inst.symbol)?;
    first(vec![
        Box::new(|| {
            Ok(fiber_residual(
                "divergence of the lift",
                graded_div(&inst.conn, &params, &lift)?.total(),
            ))
        }),
        Box::new(|| {
            symbol_diff(
                "recursive and closed lifts",
                &lift,
                &lift_symbol_closed(&inst.conn, &inst.a, &inst.symbol)?,
            )
        }),
        Box::new(|| {
            symbol_diff(
                "recursive and generic lifts",
                &lift,
                &lift_symbol_generic(&inst.conn, &params, &inst.symbol)?,
            )
        }),
    ])
}

/// Graded symbols built from the scenario symbol: its horizontal lift, its
/// lift, and `sum_l (Div^l A)^h v E^l`.
fn test_symbols(inst: &Instance) -> Result<Vec<GradedSymbol>> {
    let m = inst.conn.dim();
    let k = inst.symbol.degree();
    let parts = (0..=k)
        .map(|l| divergence_pow(&inst.conn, &inst.symbol, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        GradedSymbol::horizontal(&inst.symbol),
        lift_symbol(&inst.conn, &inst.a, &inst.symbol)?,
        GradedSymbol::new(m, k, inst.c.clone(), parts)?,
    ])
}

fn oracle_crosschecks(inst: &Instance) -> Result<Verdict> {
    let m = inst.conn.dim();
    let conn = &inst.conn;
    let a = &inst.a;
    let params = projective_lift_params(a, m)?;
    let order = inst.symbol.degree().max(2);
    first(vec![
        Box::new(|| {
            for b in test_symbols(inst)? {
                if let Some(r) = symbol_diff(
                    "graded divergence against its closed form",
                    &graded_div(conn, &params, &b)?,
                    &graded_div_closed(conn, a, &b)?,
                )? {
                    return Ok(Some(r));
                }
            }
            Ok(None)
        }),
        Box::new(|| {
            let mut z = lift_density(&inst.density)?;
            for _ in 0..order {
                let next = graded_symdiff(conn, &params, &z)?;
                if let Some(r) = coform_diff(
                    "graded symmetric differential against its recursion",
                    &next,
                    &graded_symdiff_closed(conn, a, &z)?,
                )? {
                    return Ok(Some(r));
                }
                z = next;
            }
            Ok(None)
        }),
        Box::new(|| {
            for j in 0..=order {
                let gamma = sym_diff_pow(conn, &inst.density, j)?;
                let h = GradedCoform::horizontal(&gamma);
                for dir in 0..=m {
                    let e = graded_cov_coform(conn, &params, &h, dir)?;
                    if let Some(r) = coform_diff(
                        "dual-frame derivative of a horizontal coform",
                        &e,
                        &dual_frame_horizontal(conn, a, &gamma, dir)?,
                    )? {
                        return Ok(Some(r));
                    }
                }
            }
            let omega = GradedCoform::omega_power(m, 1, Rat::zero());
            for dir in 0..=m {
                let e = graded_cov_coform(conn, &params, &omega, dir)?;
                if let Some(r) = coform_diff("dual-frame derivative of omega", &e, &dual_frame_omega(conn, a, dir)?)? {
                    return Ok(Some(r));
                }
            }
            Ok(None)
        }),
    ])
}

/// `(name, params)` with one projective parameter moved by 1.
pub fn perturbed_params(a: &Rat, m: usize) -> Result<Vec<(&'static str, LiftParams)>> {
    let p = projective_lift_params(a, m)?;
    let one = Rat::one();
    Ok(vec![
        (
            "mu",
            LiftParams::new(a.clone(), &p.mu + &one, p.nu.clone(), p.rho.clone())?,
        ),
        (
            "nu",
            LiftParams::new(a.clone(), p.mu.clone(), &p.nu + &one, p.rho.clone())?,
        ),
        (
            "rho",
            LiftParams::new(a.clone(), p.mu.clone(), p.nu.clone(), &p.rho + &one)?,
        ),
    ])
}

/// Shift residual of the prescription built from `params`.
pub fn shift_residual(
    conn: &Connection,
    alpha: &crate::geometry::OneForm,
    cfg: &QuantizeConfig,
    params: &LiftParams,
    sym: &SymField,
    phi: &SymField,
) -> Result<Poly> {
    let shifted = projective_shift(conn, alpha)?;
    let x = rho_l_with_params(&cfg.with_conn(conn.clone()), params, sym, phi)?.scalar_value();
    let y = rho_l_with_params(&cfg.with_conn(shifted), params, sym, phi)?.scalar_value();
    Ok(x - y)
}

/// The `mu` coefficient reaches `rho_L` only through the vertical parts of
/// `D~^k phi~`, which vanish up to `k = 2` when `b = 0`; symbols are first
/// multiplied by powers of `d_1` up to degree 3. The shift residual is an
/// operator, so after the scenario density it is also applied to every
/// monomial of degree at most the symbol degree.
fn uniqueness(inst: &Instance) -> Result<Verdict> {
    let m = inst.conn.dim();
    let c = cfg(inst, &inst.conn)?;
    let mut sym = inst.symbol.clone();
    while sym.degree() < 3 {
        sym = vee(&sym, &SymField::coord_vector(m, 0))?;
    }
    let mut densities = vec![inst.density.clone()];
    for d in 0..=sym.degree() {
        for j in Mono::all_of_degree(m, d) {
            densities.push(SymField::scalar(Poly::monomial(m, j, Rat::one()), inst.b.clone()));
        }
    }
    'params: for (name, params) in perturbed_params(&inst.a, m)? {
        for phi in &densities {
            if !shift_residual(&inst.conn, &inst.alpha, &c, &params, &sym, phi)?.is_zero() {
                continue 'params;
            }
        }
        return Ok(Verdict::Failure(format!(
            "perturbing {name} leaves the projective shift residual zero"
        )));
    }
    Ok(Verdict::Pass)
}

/// On flat `R^m`, for every generator: the residual as an operator and on
/// the scenario density.
fn sl_equivariance(inst: &Instance) -> Result<Verdict> {
    let m = inst.conn.dim();
    let pres = Prescription::Lifted(inst.a.clone());
    let phi = inst.density.scalar_value();
    for (i, x) in sl_generators(m)?.iter().enumerate() {
        let r = match equivariance_residual_operator(&pres, x, &inst.b, &inst.symbol)? {
            Some(r) => Some(r),
            None => Some(equivariance_residual(&pres, x, &inst.b, &inst.symbol, &phi)?).filter(|r| !r.is_zero()),
        };
        if let Some(r) = r {
            return Ok(Verdict::Residual {
                what: format!("generator {}", i + 1),
                residual: r.to_string(),
                polys: vec![r],
            });
        }
    }
    Ok(Verdict::Pass)
}

/// Weights `(j + k + m)/(m + 1)`, `0 <= j < k`, at which the lift of a
/// degree-`k` symbol is undefined.
pub fn resonant_weights(m: usize, k: u32) -> Vec<Rat> {
    (0..k as usize)
        .map(|j| Rat::new((j + k as usize + m) as i64, m as i64 + 1))
        .collect()
}

fn resonance_guard(inst: &Instance) -> Result<Verdict> {
    let m = inst.conn.dim();
    let expected = resonant_weights(m, inst.symbol.degree()).contains(&inst.c);
    let raised = match lift_symbol(&inst.conn, &inst.a, &inst.symbol) {
        Ok(_) => false,
        Err(Error::ResonantWeight { .. }) => true,
        Err(e) => return Err(e),
    };
    Ok(match (expected, raised) {
        (true, true) | (false, false) => Verdict::Pass,
        (true, false) => Verdict::Failure(format!("c = {} is resonant but the lift succeeded", inst.c)),
        (false, true) => Verdict::Failure(format!("c = {} is not resonant but the lift was refused", inst.c)),
    })
}

/// Traces from the origin with initial velocity `(1, 1/2, 1/3, ...) / 2`
/// for both connections. If either trace leaves the finite range, the speed
/// is halved, which shortens the image without changing it.
pub fn geodesic_gap(conn: &Connection, alpha: &crate::geometry::OneForm) -> Result<f64> {
    let m = conn.dim();
    let x0 = vec![0.0; m];
    let shifted = projective_shift(conn, alpha)?;
    let mut speed = 0.5;
    let mut last = None;
    for _ in 0..4 {
        let v0: Vec<f64> = (0..m).map(|i| speed / (i + 1) as f64).collect();
        let traced = geodesic_trace(conn, &x0, &v0, GEODESIC_STEP, GEODESIC_STEPS)
            .and_then(|a| Ok((a, geodesic_trace(&shifted, &x0, &v0, GEODESIC_STEP, GEODESIC_STEPS)?)));
        match traced {
            Ok((a, b)) => return Ok(image_distance(&a, &b, GEODESIC_SAMPLES)),
            Err(e @ Error::NonFinite(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
        speed /= 2.0;
    }
    Err(last.unwrap_or(Error::NonFinite(0)))
}

fn geodesics(inst: &Instance) -> Result<Verdict> {
    let gap = geodesic_gap(&inst.conn, &inst.alpha)?;
    Ok(if gap <= GEODESIC_TOLERANCE {
        Verdict::Pass
    } else {
        Verdict::Failure(format!("image distance {gap:.3e} exceeds {GEODESIC_TOLERANCE:e}"))
    })
}

/// Unimodular map with a shear, a scaling and a translation.
pub fn reference_affine_map(m: usize) -> Result<AffineMap> {
    let mut l = vec![vec![Rat::zero(); m]; m];
    for i in 0..m {
        l[i][i] = Rat::one();
        if i + 1 < m {
            l[i][i + 1] = Rat::one();
        }
    }
    l[0][0] = Rat::int(2);
    l[1][1] = Rat::new(1, 2);
    let t = (0..m)
        .map(|i| Rat::new(if i % 2 == 0 { 1 } else { -1 }, 2 + i as i64))
        .collect();
    AffineMap::new(l, t)
}

fn affine_naturality(inst: &Instance) -> Result<Verdict> {
    let m = inst.conn.dim();
    let phi = reference_affine_map(m)?;
    let pulled = pullback_affine(&inst.conn, &phi)?;
    let sym = pullback_field(&inst.symbol, &phi)?;
    let dens = pullback_field(&inst.density, &phi)?;
    first(vec![
        Box::new(|| {
            let x = lift_symbol(&pulled, &inst.a, &sym)?;
            let y = lift_symbol(&inst.conn, &inst.a, &inst.symbol)?.pullback(&phi)?;
            symbol_diff("lift of the pulled-back symbol", &x, &y)
        }),
        Box::new(|| {
            let x = rho_l(&cfg(inst, &pulled)?, &sym, &dens)?;
            let y = pullback_field(&rho_l(&cfg(inst, &inst.conn)?, &inst.symbol, &inst.density)?, &phi)?;
            Ok(poly_residual(
                "rho_L after pullback",
                x.scalar_value() - y.scalar_value(),
            ))
        }),
    ])
}
