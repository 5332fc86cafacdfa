//! Monte Carlo simulation of the one-successful-branch protocol.
//!
//! Alice, Bob and Claire measure in that order; a failure outcome ends the
//! trial. Each trial draws from its own ChaCha stream so the report does not
//! depend on how trials are spread over threads.

use rand::Rng;

use crate::error::{Error, Result};
use crate::osbp::PovmTriple;
use crate::par::{map_indexed, Exec};
use crate::sample::trial_rng;
use crate::tensor::{apply_local, norm_sqr, normalize, overlap, Party, PovmPair, State3Q};

/// Outcomes less likely than this are never reported.
pub const MIN_BRANCH_PROB: f64 = 1e-14;

/// One measured outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub outcome: usize,
    pub state: State3Q,
    pub probability: f64,
}

/// Measures `party` with `pair` and returns the sampled outcome with its
/// normalized post-measurement state.
///
/// An outcome drawn with probability below [`MIN_BRANCH_PROB`] is replaced by
/// the other one; if both are that small the state was not normalized.
pub fn sample_branch<R: Rng + ?Sized>(state: &State3Q, pair: &PovmPair, party: Party, rng: &mut R) -> Result<Branch> {
    let raws = pair.ops.map(|op| state.apply_party(party, &op));
    let probs = raws.each_ref().map(norm_sqr);
    let total = probs[0] + probs[1];
    let u: f64 = rng.random();
    let mut outcome = if u * total < probs[0] { 0 } else { 1 };
    if probs[outcome] < MIN_BRANCH_PROB {
        outcome = 1 - outcome;
        if probs[outcome] < MIN_BRANCH_PROB {
            return Err(Error::NumericalUnderflow);
        }
    }
    Ok(Branch {
        outcome,
        state: normalize(&raws[outcome])?,
        probability: probs[outcome],
    })
}

/// Aggregate of a simulation run.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationReport {
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    /// Mean GHZ fidelity of the successful outputs; 0 when nothing succeeded.
    pub mean_success_fidelity: f64,
    pub seed: u64,
}

impl SimulationReport {
    /// One binomial standard deviation of the rate for success probability `p`.
    pub fn sigma(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).max(0.0).sqrt()
    }
}

/// Runs one trial; `Some(fidelity)` on success.
fn run_trial(state: &State3Q, povms: &PovmTriple, seed: u64, index: u64) -> Result<Option<f64>> {
    let mut rng = trial_rng(seed, index);
    let mut current = *state;
    for party in Party::ALL {
        let branch = sample_branch(&current, povms.pair(party), party, &mut rng)?;
        if branch.outcome != 0 {
            return Ok(None);
        }
        current = branch.state;
    }
    Ok(Some(overlap(&State3Q::ghz(), &current).norm_sqr()))
}

pub fn run_protocol(state: &State3Q, povms: &PovmTriple, trials: u64, seed: u64) -> Result<SimulationReport> {
    run_protocol_with(Exec::default(), state, povms, trials, seed)
}

pub fn run_protocol_with(
    exec: Exec,
    state: &State3Q,
    povms: &PovmTriple,
    trials: u64,
    seed: u64,
) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(Error::PreconditionViolated("trials must be at least 1".into()));
    }
    let outcomes = map_indexed(exec, trials as usize, |i| run_trial(state, povms, seed, i as u64));
    let mut successes = 0u64;
    let mut fid_sum = 0.0;
    for o in outcomes {
        if let Some(f) = o? {
            successes += 1;
            fid_sum += f;
        }
    }
    Ok(SimulationReport {
        trials,
        successes,
        success_rate: successes as f64 / trials as f64,
        mean_success_fidelity: if successes == 0 { 0.0 } else { fid_sum / successes as f64 },
        seed,
    })
}

/// `⟨ψ|A†A ⊗ B†B ⊗ C†C|ψ⟩` for the success operators.
pub fn exact_branch_probability(state: &State3Q, povms: &PovmTriple) -> f64 {
    let [a, b, c] = povms.success_ops();
    apply_local(state, &a, &b, &c).1
}
