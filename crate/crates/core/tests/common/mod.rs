#![allow(dead_code)]

use ghz_distill::sample::random_state;
use ghz_distill::{classify, decompose, EntanglementClass, ProductDecomposition, State3Q};
use rand::Rng;

/// The one-variable objective written out term by term, without any of the
/// library's rearrangements.
pub fn naive_objective(d: &ProductDecomposition, x: f64) -> f64 {
    let (m1, m2, sa, sb, sc) = (d.mu1, d.mu2, d.sa, d.sb, d.sc);
    let f1 = (x * x + 1.0) / x;
    let f2 = (m2 * m2 * x * x + 2.0 * m1 * m2 * sb * sc * x + m1 * m1) / x;
    let t1 = 1.0 - (1.0 - 4.0 * (1.0 - sa * sa) / (f1 * f1)).max(0.0).sqrt();
    let k = m1 * m1 * m2 * m2 * (1.0 - sb * sb) * (1.0 - sc * sc);
    let t2 = 1.0 - (1.0 - 4.0 * k / (f2 * f2)).max(0.0).sqrt();
    f1 * f2 / 2.0 * t1 * t2
}

/// Brute-force maximum of [`naive_objective`] on `n` log-spaced points of
/// `[1e-6, 1e6]`, followed by a fine local grid around the best point.
pub fn grid_oracle(d: &ProductDecomposition, n: usize) -> (f64, f64) {
    let at = |i: usize| 10f64.powf(-6.0 + 12.0 * i as f64 / (n - 1) as f64);
    let mut best = (1.0, f64::NEG_INFINITY);
    for i in 0..n {
        let x = at(i);
        let v = naive_objective(d, x);
        if v > best.1 {
            best = (x, v);
        }
    }
    let step = 12.0 / (n - 1) as f64;
    let c = best.0.log10();
    for j in 0..=2000 {
        let x = 10f64.powf(c - step + 2.0 * step * j as f64 / 2000.0);
        let v = naive_objective(d, x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Haar-random states, keeping only those that decompose into well separated
/// product vectors.
pub fn random_ghz_states<R: Rng>(rng: &mut R, n: usize) -> Vec<(State3Q, ProductDecomposition)> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = random_state(rng);
        if classify(&s, 1e-10) != Ok(EntanglementClass::GhzClass) {
            continue;
        }
        if let Ok(d) = decompose(&s) {
            out.push((s, d));
        }
    }
    out
}

/// Smallest eigenvalue of a 2×2 Hermitian matrix from its trace and determinant.
pub fn smallest_eigenvalue_2x2(m: &ghz_distill::tensor::DensityMatrix) -> f64 {
    let (a, d) = (m.entry(0, 0).re, m.entry(1, 1).re);
    let b = m.entry(0, 1);
    let tr = a + d;
    let det = a * d - b.norm_sqr();
    tr / 2.0 - ((tr * tr / 4.0 - det).max(0.0)).sqrt()
}
