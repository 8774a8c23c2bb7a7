use std::cmp::Ordering;

use super::Rat;

/// Upper bound on the number of variables of any polynomial.
///
/// Base charts use `m` variables and the lifted frame uses `m + 1` fiber
/// variables, so base dimensions up to `MAX_VARS - 1` are supported.
pub const MAX_VARS: usize = 8;

/// Exponent vector of a monomial. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono([u16; MAX_VARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Mono(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Mono(e)
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn exponents(&self, n: usize) -> &[u16] {
        &self.0[..n]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Mono(e)
    }

    /// Multiply by `x_i`.
    pub fn inc(&self, i: usize) -> Mono {
        let mut e = self.0;
        e[i] += 1;
        Mono(e)
    }

    /// Divide by `x_i`; `None` when the exponent is zero.
    pub fn dec(&self, i: usize) -> Option<Mono> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0;
        e[i] -= 1;
        Some(Mono(e))
    }

    /// `other` divides `self`.
    pub fn divisible_by(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if !self.divisible_by(other) {
            return None;
        }
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= *b;
        }
        Some(Mono(e))
    }

    /// Multi-index factorial `I! = prod_i I_i!`.
    pub fn factorial(&self) -> Rat {
        self.0.iter().map(|&e| Rat::factorial(e as u64)).product()
    }

    /// Number of trailing slots in use, i.e. the smallest `n` with all
    /// exponents beyond `n` equal to zero.
    pub fn support_len(&self) -> usize {
        self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1)
    }

    /// All exponent vectors in `n` variables of total degree `d`, in
    /// descending graded-lex order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Mono> {
        fn rec(n: usize, i: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Mono>) {
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(Mono(*cur));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(n, i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Mono::one());
            }
            return out;
        }
        rec(n, 0, d, &mut [0; MAX_VARS], &mut out);
        out
    }
}

impl Ord for Mono {
    /// Graded lexicographic: total degree first, then `x1 > x2 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.support_len();
        write!(f, "{:?}", &self.0[..n])
    }
}
