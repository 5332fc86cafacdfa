//! One function per subcommand, each returning the `result` object of the
//! envelope.

use serde_json::{json, Map, Value};

use ghz_distill::decomposition::{classify_with_evidence, DOUBLE_ROOT_TOL};
use ghz_distill::fidelity::{ghz_fidelity, optimal_lu_fidelity};
use ghz_distill::monotone::{audit_povm, diagonal_range, random_povm_pair_from, scan_diagonal_family};
use ghz_distill::osbp::{build_povms, optimal_probability, OsbpSolution, PovmTriple};
use ghz_distill::par::map_indexed;
use ghz_distill::protocol::{exact_branch_probability, run_protocol};
use ghz_distill::sample::trial_rng;
use ghz_distill::{decompose, EntanglementClass, Exec, Party, ProductDecomposition, State3Q};

use crate::json::{complex, matrix, real, reals, vector};
use crate::CliError;

fn require_ghz(state: &State3Q, tol: f64) -> Result<(), CliError> {
    let (class, _) = classify_with_evidence(state, tol)?;
    if class != EntanglementClass::GhzClass {
        return Err(CliError::NotDistillable(class));
    }
    Ok(())
}

fn decomposition_json(d: &ProductDecomposition) -> Value {
    json!({
        "mu1": real(d.mu1),
        "mu2": real(d.mu2),
        "phi": real(d.phi),
        "sa": real(d.sa),
        "sb": real(d.sb),
        "sc": real(d.sc),
        "a": [vector(&d.a[0]), vector(&d.a[1])],
        "b": [vector(&d.b[0]), vector(&d.b[1])],
        "c": [vector(&d.c[0]), vector(&d.c[1])],
    })
}

fn povms_json(t: &PovmTriple) -> Value {
    let mut m = Map::new();
    for p in Party::ALL {
        let pair = t.pair(p);
        m.insert(
            p.to_string(),
            json!({ "success": matrix(&pair.ops[0]), "failure": matrix(&pair.ops[1]) }),
        );
    }
    Value::Object(m)
}

pub fn classify(state: &State3Q, tol: f64) -> Result<Value, CliError> {
    let (class, ev) = classify_with_evidence(state, tol)?;
    let mut out = json!({
        "class": class.to_string(),
        "ranks": ev.ranks,
        "spectra": ev.spectra.iter().map(|s| reals(s)).collect::<Vec<_>>(),
        "quadratic": ev.quadratic.map(|q| q.iter().map(|&z| complex(z)).collect::<Vec<_>>()),
        "root_separation": ev.root_separation.map(real),
    });
    if class == EntanglementClass::GhzClass {
        out["decomposition"] = decomposition_json(&decompose(state)?);
    }
    Ok(out)
}

/// Decomposition, optimal solution and checked POVMs of a GHZ-class state.
pub fn solve(state: &State3Q, tol: f64) -> Result<(ProductDecomposition, OsbpSolution, PovmTriple), CliError> {
    require_ghz(state, tol)?;
    let d = decompose(state)?;
    let sol = optimal_probability(&d)?;
    let povms = build_povms(&d, &sol)?;
    Ok((d, sol, povms))
}

pub fn distill(state: &State3Q, tol: f64) -> Result<Value, CliError> {
    let (d, sol, povms) = solve(state, tol)?;
    Ok(json!({
        "decomposition": decomposition_json(&d),
        "p_opt": real(sol.p_opt),
        "x_star": real(sol.x_star),
        "alpha": reals(&sol.alpha()),
        "beta": reals(&sol.beta()),
        "gamma": reals(&sol.gamma()),
        "phases": reals(&sol.phases),
        "exact_branch_probability": real(exact_branch_probability(state, &povms)),
        "povms": povms_json(&povms),
    }))
}

pub fn simulate(state: &State3Q, tol: f64, trials: u64, seed: u64) -> Result<Value, CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let (_, sol, povms) = solve(state, tol)?;
    let r = run_protocol(state, &povms, trials, seed)?;
    Ok(json!({
        "trials": r.trials,
        "successes": r.successes,
        "success_rate": real(r.success_rate),
        "mean_success_fidelity": real(r.mean_success_fidelity),
        "seed": r.seed,
        "p_opt": real(sol.p_opt),
        "sigma": real(r.sigma(sol.p_opt)),
    }))
}

pub fn audit_random(state: &State3Q, tol: f64, per_party: usize, seed: u64) -> Result<Value, CliError> {
    if per_party == 0 {
        return Err(CliError::Usage("--povms must be at least 1".into()));
    }
    require_ghz(state, tol)?;
    let reports = map_indexed(Exec::default(), 3 * per_party, |i| {
        let party = Party::from_index(i / per_party);
        let pair = random_povm_pair_from(&mut trial_rng(seed, i as u64));
        audit_povm(state, &pair, party)
    });
    let mut parties = Map::new();
    let (mut min_all, mut sum_all, mut prob_err_all) = (f64::INFINITY, 0.0, 0.0f64);
    for (k, chunk) in reports.chunks(per_party).enumerate() {
        let (mut min, mut sum, mut prob_err) = (f64::INFINITY, 0.0, 0.0f64);
        for r in chunk {
            let r = r.as_ref().map_err(|e| CliError::from(e.clone()))?;
            min = min.min(r.slack);
            sum += r.slack;
            prob_err = prob_err.max((r.total_probability() - 1.0).abs());
        }
        min_all = min_all.min(min);
        sum_all += sum;
        prob_err_all = prob_err_all.max(prob_err);
        parties.insert(
            Party::from_index(k).to_string(),
            json!({
                "min_slack": real(min),
                "mean_slack": real(sum / per_party as f64),
                "max_probability_error": real(prob_err),
            }),
        );
    }
    Ok(json!({
        "mode": "random",
        "povms_per_party": per_party,
        "p_before": real(reports[0].as_ref().map(|r| r.p_before).unwrap_or(f64::NAN)),
        "min_slack": real(min_all),
        "mean_slack": real(sum_all / (3 * per_party) as f64),
        "max_probability_error": real(prob_err_all),
        "parties": Value::Object(parties),
    }))
}

pub fn audit_diagonal(state: &State3Q, tol: f64, steps: usize) -> Result<Value, CliError> {
    require_ghz(state, tol)?;
    let d = decompose(state)?;
    let scan = scan_diagonal_family(state, steps)?;
    let (x_min, slack_min) = scan
        .iter()
        .copied()
        .fold((f64::NAN, f64::INFINITY), |b, p| if p.1 < b.1 { p } else { b });
    let (lo, hi) = diagonal_range(d.mu1);
    Ok(json!({
        "mode": "diagonal",
        "steps": steps,
        "x_range": reals(&[lo, hi]),
        "mu1_squared": real(d.mu1 * d.mu1),
        "argmin_x": real(x_min),
        "min_slack": real(slack_min),
        "table": scan.iter().map(|&(x, s)| reals(&[x, s])).collect::<Vec<_>>(),
    }))
}

pub fn fidelity(state: &State3Q, restarts: usize, seed: u64) -> Result<Value, CliError> {
    if restarts == 0 {
        return Err(CliError::Usage("--restarts must be at least 1".into()));
    }
    let opt = optimal_lu_fidelity(state, restarts, seed);
    Ok(json!({
        "fidelity": real(opt.fidelity),
        "initial_fidelity": real(ghz_fidelity(state)),
        "angles": reals(&opt.triple.angles),
        "restarts": restarts,
    }))
}

/// Tolerances reported in the diagnostics block.
pub fn tolerances(rank_tol: f64) -> Value {
    json!({
        "rank": real(rank_tol),
        "double_root": real(DOUBLE_ROOT_TOL),
        "renormalize_warning": real(crate::state_file::NORM_WARN_TOL),
    })
}
