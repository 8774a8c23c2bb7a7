use std::collections::HashMap;

use proptest::prelude::*;
use proptest::sample::select;

use projquant::cli::RandomGen;
use projquant::equivariance::{density_action, sl_generators, symbol_action};
use projquant::exactpoly::{parse_poly, Mono, Poly, Rat};
use projquant::geometry::{
    cov_derivative, divergence, projective_shift, pullback_affine, pullback_field, rho_standard, rho_standard_inverse,
    sym_diff_d, AffineMap, Connection, DiffOperator,
};
use projquant::liftcalc::{lift_symbol, projective_lift_params};
use projquant::quantize::{rho_l, rho_l_operator, QuantizeConfig};
use projquant::symalg::{full_pair, interior, vee, FiberPoly, SymField, Variance};

fn rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

fn poly(m: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let monos: Vec<Mono> = (0..=deg).flat_map(|d| Mono::all_of_degree(m, d)).collect();
    prop::collection::vec((select(monos), rat()), 0..5).prop_map(move |t| Poly::from_terms(m, t))
}

fn field(m: usize, k: u32, variance: Variance, deg: u32, weight: Rat) -> impl Strategy<Value = SymField> {
    prop::collection::vec((select(Mono::all_of_degree(m, k)), poly(m, deg)), 0..4).prop_map(move |terms| {
        let mut rep = FiberPoly::zero(m, m);
        for (mo, c) in terms {
            rep.add_term(mo, &c);
        }
        SymField::new(variance, k, weight.clone(), rep).unwrap()
    })
}

fn point(m: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rat(), m)
}

/// Dense components `T_{i1..ik}` of a symmetric field: `I!` times the
/// coefficient of `xi^I`.
fn dense(a: &SymField) -> HashMap<Vec<usize>, Poly> {
    let m = a.dim();
    tuples(m, a.degree() as usize)
        .into_iter()
        .map(|t| {
            let mut idx = vec![0u16; m];
            for &i in &t {
                idx[i] += 1;
            }
            let f = Mono::from_exponents(&idx).factorial();
            let c = a.coeff(&idx).scale(&f);
            (t, c)
        })
        .collect()
}

fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn factorial(n: usize) -> Rat {
    Rat::factorial(n as u64)
}

/// Symmetric product of dense tensors with the `1/(k! l!)` sum over all
/// permutations.
fn dense_vee(
    a: &HashMap<Vec<usize>, Poly>,
    k: usize,
    b: &HashMap<Vec<usize>, Poly>,
    l: usize,
    m: usize,
) -> HashMap<Vec<usize>, Poly> {
    let perms = permutations(k + l);
    let norm = (factorial(k) * factorial(l)).recip();
    tuples(m, k + l)
        .into_iter()
        .map(|t| {
            let mut acc = Poly::zero(m);
            for s in &perms {
                let ta: Vec<usize> = s[..k].iter().map(|&i| t[i]).collect();
                let tb: Vec<usize> = s[k..].iter().map(|&i| t[i]).collect();
                acc.add_assign_ref(&(&a[&ta] * &b[&tb]));
            }
            (t, acc.scale(&norm))
        })
        .collect()
}

/// `i(A) gamma` on dense tensors: `(1/k!) sum_I A^I gamma_{I, rest}`.
fn dense_interior(
    a: &HashMap<Vec<usize>, Poly>,
    k: usize,
    g: &HashMap<Vec<usize>, Poly>,
    l: usize,
    m: usize,
) -> HashMap<Vec<usize>, Poly> {
    let norm = factorial(k).recip();
    tuples(m, l - k)
        .into_iter()
        .map(|rest| {
            let mut acc = Poly::zero(m);
            for t in tuples(m, k) {
                let mut full = t.clone();
                full.extend(&rest);
                acc.add_assign_ref(&(&a[&t] * &g[&full]));
            }
            (rest, acc.scale(&norm))
        })
        .collect()
}

fn random_conn(seed: u64, m: usize) -> Connection {
    RandomGen::new(seed).connection(m, 2).unwrap()
}

/// Affine map with determinant +-1 so that every density factor is rational.
fn affine(m: usize) -> impl Strategy<Value = AffineMap> {
    (
        prop::collection::vec(rat(), m * m),
        prop::collection::vec(rat(), m),
        prop::collection::vec(any::<bool>(), m),
        any::<bool>(),
    )
        .prop_map(move |(entries, t, signs, upper)| {
            let mut l = vec![vec![Rat::zero(); m]; m];
            for i in 0..m {
                for j in 0..m {
                    if i == j {
                        l[i][j] = if signs[i] { Rat::one() } else { -Rat::one() };
                    } else if (j > i) == upper {
                        l[i][j] = entries[i * m + j].clone();
                    }
                }
            }
            AffineMap::new(l, t).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(p in poly(3, 3), q in poly(3, 3), r in poly(3, 3)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &Poly::one(3), p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn partials_commute_and_obey_leibniz(p in poly(3, 4), q in poly(3, 3), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
        prop_assert_eq!((&p * &q).partial(i), &(&p.partial(i) * &q) + &(&p * &q.partial(i)));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(3, 3), q in poly(3, 3), x in point(3)) {
        let (pe, qe) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &pe * &qe);
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), &pe + &qe);
    }

    #[test]
    fn display_parses_back(p in poly(3, 4)) {
        prop_assert_eq!(parse_poly(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn vee_matches_dense_product(
        (m, k, l) in (2usize..=3, 0u32..=2, 0u32..=2),
        seed in any::<u64>(),
    ) {
        let mut g = RandomGen::new(seed);
        let a = g.symbol(m, k, 1, &Rat::zero()).unwrap();
        let b = g.symbol(m, l, 1, &Rat::zero()).unwrap();
        let prod = vee(&a, &b).unwrap();
        let want = dense_vee(&dense(&a), k as usize, &dense(&b), l as usize, m);
        prop_assert_eq!(dense(&prod), want);
        prop_assert_eq!(vee(&b, &a).unwrap(), prod);
    }

    #[test]
    fn interior_matches_dense_contraction(
        (m, k, extra) in (2usize..=3, 0u32..=2, 0u32..=2),
        seed in any::<u64>(),
    ) {
        let mut g = RandomGen::new(seed);
        let a = g.symbol(m, k, 1, &Rat::zero()).unwrap();
        let gamma = g.symbol(m, k + extra, 1, &Rat::zero()).unwrap().with_variance(Variance::Co);
        let got = interior(&a, &gamma).unwrap();
        let want = dense_interior(&dense(&a), k as usize, &dense(&gamma), (k + extra) as usize, m);
        prop_assert_eq!(dense(&got), want);
        if extra == 0 {
            prop_assert_eq!(full_pair(&a, &gamma).unwrap().scalar_value(), got.scalar_value());
        }
    }

    #[test]
    fn interior_module_and_derivation(
        x in field(2, 1, Variance::Contra, 1, Rat::zero()),
        a in field(2, 1, Variance::Contra, 1, Rat::zero()),
        b in field(2, 1, Variance::Contra, 1, Rat::zero()),
        beta in field(2, 1, Variance::Co, 1, Rat::zero()),
        gamma in field(2, 2, Variance::Co, 1, Rat::zero()),
    ) {
        let ab = vee(&a, &b).unwrap();
        let big = vee(&beta, &gamma).unwrap();
        prop_assert_eq!(interior(&ab, &big).unwrap(), interior(&a, &interior(&b, &big).unwrap()).unwrap());
        let lhs = interior(&x, &big).unwrap();
        let rhs = vee(&interior(&x, &beta).unwrap(), &gamma).unwrap().add(&vee(&beta, &interior(&x, &gamma).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetric_differential_is_a_derivation(
        seed in any::<u64>(),
        beta in field(2, 1, Variance::Co, 2, Rat::new(1, 2)),
        gamma in field(2, 1, Variance::Co, 2, Rat::new(-1, 3)),
    ) {
        let conn = random_conn(seed, 2);
        let lhs = sym_diff_d(&conn, &vee(&beta, &gamma).unwrap()).unwrap();
        let rhs = vee(&sym_diff_d(&conn, &beta).unwrap(), &gamma).unwrap()
            .add(&vee(&beta, &sym_diff_d(&conn, &gamma).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divergence_is_contracted_covariant_derivative(seed in any::<u64>(), a in field(3, 2, Variance::Contra, 2, Rat::new(2, 3))) {
        let conn = random_conn(seed, 3);
        let mut rep = FiberPoly::zero(3, 3);
        for j in 0..3 {
            rep.add_assign_ref(&cov_derivative(&conn, &a, j).unwrap().rep().fiber_partial(j));
        }
        let div = divergence(&conn, &a).unwrap();
        prop_assert_eq!(div.rep(), &rep);
    }

    #[test]
    fn standard_ordering_inverts(seed in any::<u64>(), k in 0u32..=3) {
        let mut g = RandomGen::new(seed);
        let conn = g.connection(2, 1).unwrap();
        let c = Rat::new(1, 3);
        let b = Rat::new(1, 2);
        let syms: Vec<SymField> = (0..=k).rev().map(|d| g.symbol(2, d, 1, &c).unwrap()).collect();
        let mut op = DiffOperator::zero(2, b.clone(), &b + &c);
        for s in &syms {
            op = op.add_scaled(&DiffOperator::of_standard(&conn, s, &b).unwrap(), &Rat::one()).unwrap();
        }
        prop_assert_eq!(rho_standard_inverse(&conn, &op).unwrap(), syms);
    }

    #[test]
    fn affine_pullback_commutes_with_div_and_rho_s(
        seed in any::<u64>(),
        phi in affine(2),
        a in field(2, 2, Variance::Contra, 2, Rat::new(1, 3)),
        f in poly(2, 2),
    ) {
        let conn = random_conn(seed, 2);
        let pulled = pullback_affine(&conn, &phi).unwrap();
        let pa = pullback_field(&a, &phi).unwrap();
        prop_assert_eq!(divergence(&pulled, &pa).unwrap(), pullback_field(&divergence(&conn, &a).unwrap(), &phi).unwrap());
        let psi = SymField::scalar(f, Rat::new(1, 2));
        let lhs = rho_standard(&pulled, &pa, &pullback_field(&psi, &phi).unwrap()).unwrap();
        let rhs = pullback_field(&rho_standard(&conn, &a, &psi).unwrap(), &phi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lift_top_part_invariance_and_naturality(seed in any::<u64>(), m in 2usize..=3, k in 1u32..=3, phi in affine(2)) {
        let mut g = RandomGen::new(seed);
        let conn = g.connection(m, 2).unwrap();
        let alpha = g.one_form(m, 1).unwrap();
        let c = Rat::new(1, 3);
        let sym = g.symbol(m, k, 2, &c).unwrap();
        let a = Rat::new(2, 3);
        let lift = lift_symbol(&conn, &a, &sym).unwrap();
        prop_assert_eq!(lift.part(0), &sym);
        let abar = projective_lift_params(&a, m).unwrap().a_bar(m);
        let shifted = lift_symbol(&projective_shift(&conn, &alpha).unwrap(), &a, &sym).unwrap();
        prop_assert_eq!(shifted.reframe_from_shift(&alpha, &abar).unwrap(), lift.clone());
        if m == 2 {
            let pulled = lift_symbol(&pullback_affine(&conn, &phi).unwrap(), &a, &pullback_field(&sym, &phi).unwrap()).unwrap();
            prop_assert_eq!(pulled, lift.pullback(&phi).unwrap());
        }
    }

    #[test]
    fn rho_l_principal_symbol_and_naturality(seed in any::<u64>(), k in 0u32..=2, phi in affine(2)) {
        let mut g = RandomGen::new(seed);
        let conn = g.connection(2, 1).unwrap();
        let (b, c) = (Rat::new(1, 2), Rat::new(1, 3));
        let sym = g.symbol(2, k, 1, &c).unwrap();
        let dens = g.density(2, 2, &b);
        let cfg = QuantizeConfig::new(conn.clone(), Rat::one(), b, c).unwrap();
        let top = rho_standard_inverse(&conn, &rho_l_operator(&cfg, &sym).unwrap()).unwrap();
        prop_assert_eq!(&top[0], &sym);
        let pulled = cfg.with_conn(pullback_affine(&conn, &phi).unwrap());
        let lhs = rho_l(&pulled, &pullback_field(&sym, &phi).unwrap(), &pullback_field(&dens, &phi).unwrap()).unwrap();
        let rhs = pullback_field(&rho_l(&cfg, &sym, &dens).unwrap(), &phi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_actions_are_derivations(
        gen in 0usize..15,
        f in poly(3, 2),
        h in poly(3, 2),
        a in field(3, 1, Variance::Contra, 1, Rat::new(1, 4)),
        b in field(3, 2, Variance::Contra, 1, Rat::new(-1, 2)),
    ) {
        let x = &sl_generators(3).unwrap()[gen];
        let (b1, b2) = (Rat::new(1, 3), Rat::new(-2, 5));
        let lhs = density_action(x, &(&b1 + &b2), &(&f * &h));
        let rhs = &density_action(x, &b1, &f) * &h + &f * &density_action(x, &b2, &h);
        prop_assert_eq!(lhs, rhs);
        let lhs = symbol_action(x, &vee(&a, &b).unwrap()).unwrap();
        let rhs = vee(&symbol_action(x, &a).unwrap(), &b).unwrap().add(&vee(&a, &symbol_action(x, &b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
