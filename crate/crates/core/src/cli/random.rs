//! Seeded generators of polynomial data.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactpoly::{Mono, Poly, Rat};
use crate::geometry::{Connection, OneForm};
use crate::symalg::{FiberPoly, SymField, Variance};

/// Deterministic source of sparse rational polynomials with coefficients in
/// `[-2, 2]`.
pub struct RandomGen {
    rng: ChaCha8Rng,
}

impl RandomGen {
    pub fn new(seed: u64) -> RandomGen {
        RandomGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coefficient(&mut self) -> Rat {
        loop {
            let n = self.rng.gen_range(-4i64..=4);
            let d = if self.rng.gen_bool(0.5) { 1 } else { 2 };
            if n != 0 {
                return Rat::new(n, d);
            }
        }
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// At most `max_terms` terms of degree at most `max_degree`.
    pub fn poly(&mut self, m: usize, max_degree: u32, max_terms: usize) -> Poly {
        let mut monos: Vec<Mono> = (0..=max_degree).flat_map(|d| Mono::all_of_degree(m, d)).collect();
        monos.shuffle(&mut self.rng);
        let n = self.rng.gen_range(1..=max_terms.max(1)).min(monos.len());
        let terms: Vec<(Mono, Rat)> = monos.into_iter().take(n).map(|mo| (mo, self.coefficient())).collect();
        Poly::from_terms(m, terms)
    }

    pub fn nonzero_poly(&mut self, m: usize, max_degree: u32, max_terms: usize) -> Poly {
        loop {
            let p = self.poly(m, max_degree, max_terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Torsion-free connection: each `Gamma^k_{ij}`, `i <= j`, is nonzero with
    /// probability one half.
    pub fn connection(&mut self, m: usize, max_degree: u32) -> Result<Connection> {
        let mut entries = Vec::new();
        for k in 0..m {
            for i in 0..m {
                for j in i..m {
                    if self.chance(0.5) {
                        entries.push((k, i, j, self.nonzero_poly(m, max_degree, 2)));
                    }
                }
            }
        }
        Connection::from_entries(m, &entries)
    }

    pub fn one_form(&mut self, m: usize, max_degree: u32) -> Result<OneForm> {
        OneForm::new((0..m).map(|_| self.poly(m, max_degree, 2)).collect())
    }

    /// Nonzero contravariant symbol of degree `k` and weight `c`.
    pub fn symbol(&mut self, m: usize, k: u32, max_degree: u32, c: &Rat) -> Result<SymField> {
        let mut monos = Mono::all_of_degree(m, k);
        monos.shuffle(&mut self.rng);
        let n = self.rng.gen_range(1..=monos.len().min(3));
        let mut rep = FiberPoly::zero(m, m);
        for mo in monos.into_iter().take(n) {
            rep.add_term(mo, &self.nonzero_poly(m, max_degree, 2));
        }
        SymField::new(Variance::Contra, k, c.clone(), rep)
    }

    pub fn density(&mut self, m: usize, max_degree: u32, b: &Rat) -> SymField {
        SymField::scalar(self.nonzero_poly(m, max_degree, 3), b.clone())
    }
}
