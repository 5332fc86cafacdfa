//! Best GHZ fidelity reachable with local unitaries.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::Rng;

use crate::optimize::bfgs_minimize;
use crate::par::{map_indexed, Exec};
use crate::sample::trial_rng;
use crate::tensor::{apply_party_raw, LocalOp, Party, RawAmps, State3Q, C64};

pub const DEFAULT_RESTARTS: usize = 32;

/// `|⟨GHZ|ψ⟩|²`.
pub fn ghz_fidelity(state: &State3Q) -> f64 {
    ghz_amplitude(state.amps()).norm_sqr()
}

fn ghz_amplitude(raw: &RawAmps) -> C64 {
    (raw[0] + raw[7]) * FRAC_1_SQRT_2
}

/// ```text
/// U(θ, φ, λ) = [ cos(θ/2)         −e^{iλ} sin(θ/2)      ]
///              [ e^{iφ} sin(θ/2)   e^{i(φ+λ)} cos(θ/2)  ]
/// ```
pub fn su2(theta: f64, phi: f64, lambda: f64) -> LocalOp {
    let (s, c) = (theta / 2.0).sin_cos();
    LocalOp::from_rows([
        [C64::new(c, 0.0), -C64::from_polar(s, lambda)],
        [C64::from_polar(s, phi), C64::from_polar(c, phi + lambda)],
    ])
}

/// Derivatives of [`su2`] with respect to `θ`, `φ` and `λ`.
fn su2_derivatives(theta: f64, phi: f64, lambda: f64) -> [LocalOp; 3] {
    let (s, c) = (theta / 2.0).sin_cos();
    let i = C64::i();
    let z = C64::new(0.0, 0.0);
    let d_theta = LocalOp::from_rows([
        [C64::new(-s / 2.0, 0.0), -C64::from_polar(c / 2.0, lambda)],
        [C64::from_polar(c / 2.0, phi), C64::from_polar(-s / 2.0, phi + lambda)],
    ]);
    let d_phi = LocalOp::from_rows([[z, z], [i * C64::from_polar(s, phi), i * C64::from_polar(c, phi + lambda)]]);
    let d_lambda = LocalOp::from_rows([[z, -i * C64::from_polar(s, lambda)], [z, i * C64::from_polar(c, phi + lambda)]]);
    [d_theta, d_phi, d_lambda]
}

/// Three local unitaries, three angles `(θ, φ, λ)` each, parties in order A, B, C.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitaryTriple {
    pub angles: [f64; 9],
}

impl LocalUnitaryTriple {
    pub fn identity() -> Self {
        LocalUnitaryTriple { angles: [0.0; 9] }
    }

    pub fn unitary(&self, party: Party) -> LocalOp {
        let k = 3 * party.index();
        su2(self.angles[k], self.angles[k + 1], self.angles[k + 2])
    }

    pub fn unitaries(&self) -> [LocalOp; 3] {
        Party::ALL.map(|p| self.unitary(p))
    }

    pub fn apply(&self, state: &State3Q) -> RawAmps {
        apply_all(state.amps(), &self.unitaries())
    }
}

fn apply_all(raw: &RawAmps, ops: &[LocalOp; 3]) -> RawAmps {
    let mut out = *raw;
    for p in Party::ALL {
        out = apply_party_raw(&out, p, &ops[p.index()]);
    }
    out
}

/// `|⟨GHZ|(U_A⊗U_B⊗U_C)|ψ⟩|²` for the given angles.
pub fn lu_fidelity(state: &State3Q, angles: &[f64; 9]) -> f64 {
    ghz_amplitude(&LocalUnitaryTriple { angles: *angles }.apply(state)).norm_sqr()
}

/// Analytic gradient of [`lu_fidelity`].
pub fn lu_fidelity_gradient(state: &State3Q, angles: &[f64; 9]) -> [f64; 9] {
    let t = LocalUnitaryTriple { angles: *angles };
    let ops = t.unitaries();
    let g = ghz_amplitude(&apply_all(state.amps(), &ops));
    let mut grad = [0.0; 9];
    for p in Party::ALL {
        let k = 3 * p.index();
        let ds = su2_derivatives(angles[k], angles[k + 1], angles[k + 2]);
        for (j, d) in ds.iter().enumerate() {
            let mut varied = ops;
            varied[p.index()] = *d;
            let dg = ghz_amplitude(&apply_all(state.amps(), &varied));
            grad[k + j] = 2.0 * (g.conj() * dg).re;
        }
    }
    grad
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityOptimum {
    pub fidelity: f64,
    pub triple: LocalUnitaryTriple,
}

fn climb(state: &State3Q, start: [f64; 9]) -> FidelityOptimum {
    let f = |a: &[f64; 9]| -lu_fidelity(state, a);
    let g = |a: &[f64; 9]| lu_fidelity_gradient(state, a).map(|v| -v);
    let r = bfgs_minimize(&f, &g, start, 1e-12, 2000);
    // Every angle is 4π-periodic in the unitary, so wrapping changes nothing.
    let angles = r.x.map(|a| a.rem_euclid(2.0 * TAU));
    FidelityOptimum {
        fidelity: lu_fidelity(state, &angles),
        triple: LocalUnitaryTriple { angles },
    }
}

/// Maximum of [`lu_fidelity`] from the identity start and `restarts` random starts.
pub fn optimal_lu_fidelity(state: &State3Q, restarts: usize, seed: u64) -> FidelityOptimum {
    optimal_lu_fidelity_with(Exec::default(), state, restarts, seed)
}

pub fn optimal_lu_fidelity_with(exec: Exec, state: &State3Q, restarts: usize, seed: u64) -> FidelityOptimum {
    let runs = map_indexed(exec, restarts + 1, |i| {
        let start = if i == 0 {
            [0.0; 9]
        } else {
            let mut rng = trial_rng(seed, i as u64);
            std::array::from_fn(|_| rng.random_range(0.0..TAU))
        };
        climb(state, start)
    });
    let mut best = runs[0];
    for r in &runs[1..] {
        if r.fidelity > best.fidelity {
            best = *r;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_local_unitaries, random_state, rotate_locally};

    #[test]
    fn fixed_fidelities() {
        assert!((ghz_fidelity(&State3Q::ghz()) - 1.0).abs() < 1e-15);
        assert_eq!(ghz_fidelity(&State3Q::w()), 0.0);
        assert!((ghz_fidelity(&State3Q::basis(0)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn su2_is_unitary() {
        let mut rng = trial_rng(0, 0);
        for _ in 0..50 {
            let u = su2(rng.random_range(0.0..TAU), rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
            assert!((u.adjoint() * u).max_abs_diff(&LocalOp::identity()) < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = trial_rng(4, 0);
        let state = random_state(&mut rng);
        for _ in 0..20 {
            let a: [f64; 9] = std::array::from_fn(|_| rng.random_range(0.0..TAU));
            let g = lu_fidelity_gradient(&state, &a);
            for k in 0..9 {
                let (mut ap, mut am) = (a, a);
                ap[k] += 1e-6;
                am[k] -= 1e-6;
                let fd = (lu_fidelity(&state, &ap) - lu_fidelity(&state, &am)) / 2e-6;
                assert!((fd - g[k]).abs() <= 1e-5 * g[k].abs().max(1e-3), "{k}: {fd} vs {}", g[k]);
            }
        }
    }

    #[test]
    fn ghz_and_product_optima() {
        let r = optimal_lu_fidelity(&State3Q::ghz(), 4, 0);
        assert!((r.fidelity - 1.0).abs() < 1e-12);
        let r = optimal_lu_fidelity(&State3Q::basis(0), 8, 0);
        assert!((r.fidelity - 0.5).abs() < 1e-10);
        let reached = ghz_amplitude(&r.triple.apply(&State3Q::basis(0))).norm_sqr();
        assert!((reached - r.fidelity).abs() < 1e-10);
    }

    #[test]
    fn invariant_under_local_unitaries() {
        let mut rng = trial_rng(8, 0);
        let s = random_state(&mut rng);
        let t = rotate_locally(&s, &random_local_unitaries(&mut rng));
        let a = optimal_lu_fidelity(&s, 16, 1).fidelity;
        let b = optimal_lu_fidelity(&t, 16, 2).fidelity;
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        assert!(a >= ghz_fidelity(&s) - 1e-12);
    }
}
