//! Random states, local unitaries and structured two-term states.
//!
//! Everything here takes an explicit generator so callers control seeding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::tensor::{normalize, LocalOp, LocalVec, Party, RawAmps, State3Q, C64};

/// The generator used by stream `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state on three qubits. Generic draws are GHZ class.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> State3Q {
    loop {
        let raw: RawAmps = std::array::from_fn(|_| gaussian_c64(rng));
        if let Ok(s) = normalize(&raw) {
            return s;
        }
    }
}

pub fn random_unit_vec<R: Rng + ?Sized>(rng: &mut R) -> LocalVec {
    loop {
        let v = LocalVec::new(gaussian_c64(rng), gaussian_c64(rng));
        if let Ok(u) = v.normalized() {
            return u;
        }
    }
}

/// Haar-random element of SU(2), built from a uniformly random unit quaternion.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> LocalOp {
    let u = random_unit_vec(rng);
    let (a, b) = (u.component(0), u.component(1));
    LocalOp::from_rows([[a, -b.conj()], [b, a.conj()]])
}

pub fn random_local_unitaries<R: Rng + ?Sized>(rng: &mut R) -> [LocalOp; 3] {
    [haar_su2(rng), haar_su2(rng), haar_su2(rng)]
}

/// `(U_A⊗U_B⊗U_C)|ψ⟩`.
pub fn rotate_locally(state: &State3Q, u: &[LocalOp; 3]) -> State3Q {
    let mut raw = *state.amps();
    for p in Party::ALL {
        raw = crate::tensor::apply_party_raw(&raw, p, &u[p.index()]);
    }
    normalize(&raw).expect("unitaries preserve the norm")
}

/// Unit vector `s|0⟩ + √(1−s²)|1⟩`, whose overlap with `|0⟩` is `s`.
pub fn vec_with_overlap(s: f64) -> LocalVec {
    LocalVec::real(s, (1.0 - s * s).max(0.0).sqrt())
}

/// Normalized `z₁|a₁b₁c₁⟩ + z₂|a₂b₂c₂⟩`.
pub fn two_term_state(z1: C64, first: [&LocalVec; 3], z2: C64, second: [&LocalVec; 3]) -> Result<State3Q> {
    let t1 = State3Q::product_amps(first[0], first[1], first[2]);
    let t2 = State3Q::product_amps(second[0], second[1], second[2]);
    let raw: RawAmps = std::array::from_fn(|i| z1 * t1[i] + z2 * t2[i]);
    normalize(&raw)
}

/// A two-term state with `|κ₁⟩ = |0⟩`, `|κ₂⟩ = sκ|0⟩ + √(1−sκ²)|1⟩` at every
/// site, before normalization.
pub fn canonical_state(mu1: f64, mu2: f64, phi: f64, s: [f64; 3]) -> Result<State3Q> {
    let zero = LocalVec::zero();
    let v: Vec<LocalVec> = s.iter().map(|&x| vec_with_overlap(x)).collect();
    two_term_state(
        C64::new(mu1, 0.0),
        [&zero, &zero, &zero],
        C64::from_polar(mu2, phi),
        [&v[0], &v[1], &v[2]],
    )
}

/// A random two-term state with the given overlaps, random weights and
/// relative phase, rotated by random local unitaries.
pub fn random_with_overlaps<R: Rng + ?Sized>(rng: &mut R, s: [f64; 3]) -> State3Q {
    let theta: f64 = rng.random_range(0.15..std::f64::consts::FRAC_PI_4);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let base = canonical_state(theta.cos(), theta.sin(), phi, s).expect("independent product terms");
    let u = random_local_unitaries(rng);
    rotate_locally(&base, &u)
}

/// Random state with orthogonal local vectors at A and B (`sa = sb = 0`).
pub fn random_phi1_state<R: Rng + ?Sized>(rng: &mut R) -> State3Q {
    let sc = rng.random_range(0.0..0.95);
    random_with_overlaps(rng, [0.0, 0.0, sc])
}

/// Random state with orthogonal local vectors at A (`sa = 0`).
pub fn random_phi2_state<R: Rng + ?Sized>(rng: &mut R) -> State3Q {
    let sb = rng.random_range(0.02..0.95);
    let sc = rng.random_range(0.02..0.95);
    random_with_overlaps(rng, [0.0, sb, sc])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_su2_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let u = haar_su2(&mut rng);
            assert!((u.adjoint() * u).max_abs_diff(&LocalOp::identity()) < 1e-14);
        }
    }

    #[test]
    fn canonical_state_overlaps() {
        let v = vec_with_overlap(0.6);
        assert!((v.inner(&LocalVec::zero()).re - 0.6).abs() < 1e-15);
        let s = canonical_state(1.0, 1.0, 0.0, [0.0, 0.0, 0.0]).unwrap();
        assert!((crate::tensor::overlap(&s, &State3Q::ghz()).norm() - 1.0).abs() < 1e-15);
    }
}
