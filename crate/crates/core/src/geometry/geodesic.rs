use crate::error::{Error, Result};

use super::Connection;

/// Integrate `x'' + Gamma^k_{ij} x'^i x'^j = 0` with classical RK4.
///
/// Returns the `n + 1` positions at `t = 0, h, ..., n h`.
pub fn geodesic_trace(conn: &Connection, x0: &[f64], v0: &[f64], h: f64, n: usize) -> Result<Vec<Vec<f64>>> {
    let m = conn.dim();
    for len in [x0.len(), v0.len()] {
        if len != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: len,
            });
        }
    }
    let gamma = conn.gamma_table();
    // state = (x, v)
    let rhs = |s: &[f64]| -> Result<Vec<f64>> {
        let (x, v) = s.split_at(m);
        let mut out = vec![0.0; 2 * m];
        out[..m].copy_from_slice(v);
        let mut g = vec![0.0; m * m * m];
        for (slot, p) in g.iter_mut().zip(gamma) {
            if !p.is_zero() {
                *slot = p.eval_f64(x)?;
            }
        }
        for k in 0..m {
            let mut acc = 0.0;
            for i in 0..m {
                for j in 0..m {
                    acc += g[(k * m + i) * m + j] * v[i] * v[j];
                }
            }
            out[m + k] = -acc;
        }
        Ok(out)
    };
    let axpy = |s: &[f64], k: &[f64], c: f64| -> Vec<f64> { s.iter().zip(k).map(|(a, b)| a + c * b).collect() };
    let mut state: Vec<f64> = x0.iter().chain(v0).copied().collect();
    let mut out = Vec::with_capacity(n + 1);
    out.push(x0.to_vec());
    for step in 1..=n {
        let k1 = rhs(&state)?;
        let k2 = rhs(&axpy(&state, &k1, h / 2.0))?;
        let k3 = rhs(&axpy(&state, &k2, h / 2.0))?;
        let k4 = rhs(&axpy(&state, &k3, h))?;
        for i in 0..2 * m {
            state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if state.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(step));
        }
        out.push(state[..m].to_vec());
    }
    Ok(out)
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Cumulative chord length along a polyline, starting at 0.
pub fn chord_lengths(curve: &[Vec<f64>]) -> Vec<f64> {
    let mut s = Vec::with_capacity(curve.len());
    let mut acc = 0.0;
    for (i, p) in curve.iter().enumerate() {
        if i > 0 {
            acc += dist(&curve[i - 1], p);
        }
        s.push(acc);
    }
    s
}

/// Point at chord length `s`, by linear interpolation.
fn at_length(curve: &[Vec<f64>], lens: &[f64], s: f64) -> Vec<f64> {
    let idx = lens.partition_point(|&l| l < s);
    if idx == 0 {
        return curve[0].clone();
    }
    if idx >= curve.len() {
        return curve[curve.len() - 1].clone();
    }
    let (l0, l1) = (lens[idx - 1], lens[idx]);
    let t = if l1 > l0 { (s - l0) / (l1 - l0) } else { 0.0 };
    curve[idx - 1]
        .iter()
        .zip(&curve[idx])
        .map(|(a, b)| a + t * (b - a))
        .collect()
}

/// Largest pointwise distance between two image curves after resampling
/// both at `samples` equally spaced chord lengths over their common length.
pub fn image_distance(a: &[Vec<f64>], b: &[Vec<f64>], samples: usize) -> f64 {
    let (la, lb) = (chord_lengths(a), chord_lengths(b));
    let total = la.last().copied().unwrap_or(0.0).min(lb.last().copied().unwrap_or(0.0));
    let n = samples.max(1);
    (0..=n)
        .map(|i| {
            let s = total * i as f64 / n as f64;
            dist(&at_length(a, &la, s), &at_length(b, &lb, s))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_lines() {
        let conn = Connection::flat(2).unwrap();
        let pts = geodesic_trace(&conn, &[0.0, 0.0], &[1.0, 0.0], 0.1, 10).unwrap();
        assert!((pts[10][0] - 1.0).abs() < 1e-12);
        assert_eq!(pts[10][1], 0.0);
        let still = geodesic_trace(&conn, &[0.5, 0.5], &[0.0, 0.0], 0.1, 5).unwrap();
        assert!(still.iter().all(|p| p == &vec![0.5, 0.5]));
    }

    #[test]
    fn resampling_ignores_speed() {
        let a: Vec<Vec<f64>> = (0..=10).map(|i| vec![i as f64 * 0.1, 0.0]).collect();
        let b: Vec<Vec<f64>> = (0..=20).map(|i| vec![(i as f64 * 0.05).powi(2), 0.0]).collect();
        assert!(image_distance(&a, &b, 50) < 1e-12);
    }
}
