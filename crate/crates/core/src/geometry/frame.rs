use crate::exactpoly::{Poly, Rat};
use crate::symalg::{FiberPoly, Variance};

use super::Connection;

/// A connection written in a local frame `Z_0, ..., Z_{n-1}` over a chart.
///
/// Tensor fields are fiber polynomials in `n = frame_dim()` variables, one
/// per frame vector (or dual coframe element), with coefficients that are
/// polynomials in the `base_dim()` chart coordinates.
pub trait FrameCalculus {
    fn base_dim(&self) -> usize;

    fn frame_dim(&self) -> usize;

    /// `C^g_{ab}` with `nabla_{Z_a} Z_b = sum_g C^g_{ab} Z_g`.
    fn coeff(&self, g: usize, a: usize, b: usize) -> &Poly;

    /// `Z_a` applied to a component function of a weight-`w` field.
    fn act(&self, a: usize, f: &Poly, weight: &Rat) -> Poly;
}

/// `nabla_{Z_a}` of a field with representation `rep`.
///
/// Contravariant: `Z_a(P) + sum C^g_{ab} xi_g dP/dxi_b`.
/// Covariant: `Z_a(Q) - sum C^b_{ag} eta_g dQ/deta_b`.
pub fn frame_cov<F: FrameCalculus + ?Sized>(
    fc: &F,
    variance: Variance,
    weight: &Rat,
    rep: &FiberPoly,
    a: usize,
) -> FiberPoly {
    let n = fc.frame_dim();
    let mut out = rep.map_coeffs(|c| fc.act(a, c, weight));
    for b in 0..n {
        let d = rep.fiber_partial(b);
        if d.is_zero() {
            continue;
        }
        for g in 0..n {
            match variance {
                Variance::Contra => {
                    let c = fc.coeff(g, a, b);
                    if !c.is_zero() {
                        out.add_assign_ref(&d.mul_var(g).mul_base(c));
                    }
                }
                Variance::Co => {
                    let c = fc.coeff(b, a, g);
                    if !c.is_zero() {
                        out.add_scaled(&d.mul_var(g).mul_base(c), &-Rat::one());
                    }
                }
            }
        }
    }
    out
}

/// Divergence `sum_a d/dxi_a nabla_{Z_a}` of a contravariant field.
pub fn frame_div<F: FrameCalculus + ?Sized>(fc: &F, weight: &Rat, rep: &FiberPoly) -> FiberPoly {
    let mut out = FiberPoly::zero(rep.fdim(), rep.bdim());
    for a in 0..fc.frame_dim() {
        out.add_assign_ref(&frame_cov(fc, Variance::Contra, weight, rep, a).fiber_partial(a));
    }
    out
}

/// Symmetric differential `sum_a eta_a nabla_{Z_a}` of a covariant field.
pub fn frame_symdiff<F: FrameCalculus + ?Sized>(fc: &F, weight: &Rat, rep: &FiberPoly) -> FiberPoly {
    let mut out = FiberPoly::zero(rep.fdim(), rep.bdim());
    for a in 0..fc.frame_dim() {
        out.add_assign_ref(&frame_cov(fc, Variance::Co, weight, rep, a).mul_var(a));
    }
    out
}

/// The coordinate frame: `C = Gamma` and the density rule
/// `Z_i f = d_i f - w Gamma^l_{li} f`.
impl FrameCalculus for Connection {
    fn base_dim(&self) -> usize {
        self.dim()
    }

    fn frame_dim(&self) -> usize {
        self.dim()
    }

    fn coeff(&self, g: usize, a: usize, b: usize) -> &Poly {
        self.gamma(g, a, b)
    }

    fn act(&self, a: usize, f: &Poly, weight: &Rat) -> Poly {
        let mut out = f.partial(a);
        if !weight.is_zero() {
            out.add_scaled(&(self.trace_gamma(a) * f), &-weight);
        }
        out
    }
}
