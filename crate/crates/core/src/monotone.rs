//! Numerical audits of `P(ψ) ≥ Σᵢ pᵢ P(ψᵢ)` for the optimal OSBP probability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{classify, decompose, EntanglementClass};
use crate::error::{Error, Result};
use crate::osbp::maximize_objective;
use crate::par::{map_indexed, Exec};
use crate::protocol::MIN_BRANCH_PROB;
use crate::sample::{gaussian_c64, random_state, trial_rng};
use crate::tensor::{norm_sqr, normalize, LocalOp, LocalVec, Party, PovmPair, State3Q, RANK_TOL};

/// Slack allowed on the boundary of the diagonal family's `x` range.
const X_SLACK: f64 = 1e-12;

/// Random two-outcome POVM whose first element is a random contraction.
pub fn random_povm_pair(seed: u64) -> PovmPair {
    random_povm_pair_from(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_povm_pair_from<R: Rng + ?Sized>(rng: &mut R) -> PovmPair {
    loop {
        let g = LocalOp::from_rows([
            [gaussian_c64(rng), gaussian_c64(rng)],
            [gaussian_c64(rng), gaussian_c64(rng)],
        ]);
        let smax = g.singular_values()[0];
        if smax < 1e-12 {
            continue;
        }
        let r: f64 = rng.random_range(0.05..=1.0);
        return PovmPair::completing(g.scale(r / smax));
    }
}

/// `P(ψ)` with the class used to decide it; non-GHZ states give 0.
pub fn distillation_value(state: &State3Q) -> Result<(EntanglementClass, f64)> {
    let class = classify(state, RANK_TOL)?;
    if class != EntanglementClass::GhzClass {
        return Ok((class, 0.0));
    }
    let d = decompose(state)?;
    Ok((class, maximize_objective(&d)?.p))
}

/// One outcome of an audited POVM.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchDetail {
    pub probability: f64,
    /// `None` when the outcome has vanishing probability.
    pub class: Option<EntanglementClass>,
    pub p_opt: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneReport {
    pub p_before: f64,
    pub weighted_after: f64,
    /// `p_before − weighted_after`, unclamped.
    pub slack: f64,
    pub branches: Vec<BranchDetail>,
}

impl MonotoneReport {
    pub fn total_probability(&self) -> f64 {
        self.branches.iter().map(|b| b.probability).sum()
    }
}

/// Applies each element of `pair` to `party` and compares `P` before and after.
pub fn audit_povm(state: &State3Q, pair: &PovmPair, party: Party) -> Result<MonotoneReport> {
    let (class, p_before) = distillation_value(state)?;
    if class != EntanglementClass::GhzClass {
        return Err(Error::NotGhzClass(class));
    }
    let mut branches = Vec::with_capacity(2);
    for op in &pair.ops {
        let raw = state.apply_party(party, op);
        let probability = norm_sqr(&raw);
        if probability < MIN_BRANCH_PROB {
            branches.push(BranchDetail {
                probability,
                class: None,
                p_opt: 0.0,
            });
            continue;
        }
        let (class, p_opt) = distillation_value(&normalize(&raw)?)?;
        branches.push(BranchDetail {
            probability,
            class: Some(class),
            p_opt,
        });
    }
    let weighted_after = branches.iter().map(|b| b.probability * b.p_opt).sum();
    Ok(MonotoneReport {
        p_before,
        weighted_after,
        slack: p_before - weighted_after,
        branches,
    })
}

/// Allowed `x` for the diagonal family of a state whose Alice vectors are
/// orthogonal: `[max(0, 2μ₁²−1), min(1, 2μ₁²)]`.
pub fn diagonal_range(mu1: f64) -> (f64, f64) {
    let m = 2.0 * mu1 * mu1;
    ((m - 1.0).max(0.0), m.min(1.0))
}

/// The balanced pair `{D₁, D₂}` on Alice, diagonal in her orthonormal basis
/// `{a₁, a₂}`, with `D₁` squares `x/(2μ₁²)` and `(1−x)/(2μ₂²)`.
pub fn diagonal_pair(a: &[LocalVec; 2], mu: [f64; 2], x: f64) -> Result<PovmPair> {
    let (lo, hi) = diagonal_range(mu[0]);
    if !(x >= lo - X_SLACK && x <= hi + X_SLACK) {
        return Err(Error::InfeasibleX { x, lo, hi });
    }
    let sq = [x / (2.0 * mu[0] * mu[0]), (1.0 - x) / (2.0 * mu[1] * mu[1])].map(|v| v.clamp(0.0, 1.0));
    let op = |d: [f64; 2]| {
        LocalOp::outer(&a[0], &a[0]).scale(d[0].sqrt()) + LocalOp::outer(&a[1], &a[1]).scale(d[1].sqrt())
    };
    Ok(PovmPair::new(op(sq), op(sq.map(|v| 1.0 - v))))
}

fn phi2_parts(state: &State3Q) -> Result<([LocalVec; 2], [f64; 2])> {
    let d = decompose(state)?;
    if d.sa > 1e-10 {
        return Err(Error::PreconditionViolated(format!(
            "diagonal family needs orthogonal vectors at A, got overlap {}",
            d.sa
        )));
    }
    Ok((d.a, [d.mu1, d.mu2]))
}

/// Audit of one member of the diagonal balanced family applied by Alice.
pub fn diagonal_family_audit(state: &State3Q, x: f64) -> Result<MonotoneReport> {
    let (a, mu) = phi2_parts(state)?;
    let pair = diagonal_pair(&a, mu, x)?;
    audit_povm(state, &pair, Party::A)
}

/// `(x, slack)` over a uniform sweep of the feasible `x` range.
pub fn scan_diagonal_family(state: &State3Q, steps: usize) -> Result<Vec<(f64, f64)>> {
    if steps < 3 {
        return Err(Error::PreconditionViolated(format!("need at least 3 steps, got {steps}")));
    }
    let (a, mu) = phi2_parts(state)?;
    let (lo, hi) = diagonal_range(mu[0]);
    (0..steps)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
            let pair = diagonal_pair(&a, mu, x)?;
            Ok((x, audit_povm(state, &pair, Party::A)?.slack))
        })
        .collect()
}

/// A randomly drawn audit case.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditCase {
    pub state: State3Q,
    pub pair: PovmPair,
    pub party: Party,
}

/// Case `index` of a seeded batch: Haar-random state, random pair, random party.
pub fn random_case(seed: u64, index: u64) -> AuditCase {
    let mut rng = trial_rng(seed, index);
    let state = random_state(&mut rng);
    let pair = random_povm_pair_from(&mut rng);
    let party = Party::from_index(rng.random_range(0..3));
    AuditCase { state, pair, party }
}

/// Audits `n` random cases, in case order.
pub fn audit_random_batch(exec: Exec, n: usize, seed: u64) -> Vec<(AuditCase, Result<MonotoneReport>)> {
    map_indexed(exec, n, |i| {
        let case = random_case(seed, i as u64);
        let report = audit_povm(&case.state, &case.pair, case.party);
        (case, report)
    })
}
