//! The optimal one-successful-branch protocol (OSBP).
//!
//! Each party applies one two-outcome POVM `{M, M̄}` whose success operator
//! maps its pair of local vectors onto `|0⟩, |1⟩`:
//!
//! ```text
//! A = α₁|0⟩⟨ã₁| + α₂e^{iφ_a}|1⟩⟨ã₂|
//! ```
//!
//! with `⟨ãᵢ|aⱼ⟩ = δᵢⱼ`. Requiring `M̄` to have rank one gives
//! `(1−α₁²)(1−α₂²) = sa²` (and likewise for B, C); the branch yields GHZ when
//! `α₁β₁γ₁μ₁ = α₂β₂γ₂μ₂`, with probability `2(α₁β₁γ₁μ₁)²`.
//!
//! Two independent routes compute the maximum:
//!
//! - [`maximize_objective`] reduces the problem to one variable `x > 0`
//!   (`x = α₂/α₁`) and maximizes the closed objective [`objective`];
//! - [`solve_coefficients`] searches the filter ratios of Bob and Claire
//!   directly, with Alice's ratio fixed by the balance condition.

use std::f64::consts::TAU;

use crate::decomposition::{dual_basis, reconstruct, ProductDecomposition};
use crate::error::{Error, Result};
use crate::optimize::{bisect, multistart_max, ScanOptions};
use crate::tensor::{apply_local, overlap, LocalOp, LocalVec, Party, PovmPair, State3Q, C64};

/// Search interval for `ln x`.
pub const LOG_X_MIN: f64 = -13.815510557964274; // ln 1e-6
pub const LOG_X_MAX: f64 = 13.815510557964274;

/// Tolerance used to decide that an overlap vanishes.
const ZERO_OVERLAP: f64 = 1e-10;

/// Smaller root of `w² − f·w + k = 0` given the discriminant root
/// `r = √(f² − 4k)`, written as `2k/(f + r)` to avoid cancellation.
fn lower_root(f: f64, k: f64, r: f64) -> f64 {
    2.0 * k / (f + r)
}

/// The product `κ₁κ₂` of a rank-one-completable filter with ratio `t = κ₁/κ₂`
/// on a pair with overlap `s`. Equals `min(t, 1/t)` when `s = 0`.
fn filter_product(t: f64, s: f64) -> f64 {
    let d = t - 1.0 / t;
    let r = (d * d + 4.0 * s * s).sqrt();
    lower_root(t + 1.0 / t, 1.0 - s * s, r)
}

/// `(κ₁, κ₂)` for ratio `t = κ₁/κ₂`.
fn filter_pair(t: f64, s: f64) -> [f64; 2] {
    let w = filter_product(t, s);
    [(w * t).sqrt().min(1.0), (w / t).sqrt().min(1.0)]
}

/// The one-variable objective
///
/// ```text
/// f₁f₂/2 · (1 − √(1 − 4(1−sa²)/f₁²)) · (1 − √(1 − 4μ₁²μ₂²(1−sb²)(1−sc²)/f₂²))
/// ```
///
/// with `f₁ = (x²+1)/x` and `f₂ = (μ₂²x² + 2μ₁μ₂·sb·sc·x + μ₁²)/x`.
pub fn objective(d: &ProductDecomposition, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::NonPositiveX(x));
    }
    Ok(objective_parts(d, x).0)
}

/// Objective value plus `r₁ = √(f₁² − 4(1−sa²))` and `r₂ = √(f₂² − 4K)`.
///
/// Both discriminants are expanded into sums of non-negative terms, so they
/// never go negative through rounding and stay accurate near `r = 0`.
fn objective_parts(d: &ProductDecomposition, x: f64) -> (f64, f64, f64) {
    let (m1, m2) = (d.mu1, d.mu2);
    let (p, q) = (m2 * m2 * x, m1 * m1 / x);
    let cross = 2.0 * m1 * m2 * d.sb * d.sc;
    let f1 = x + 1.0 / x;
    let f2 = p + cross + q;
    let k1 = 1.0 - d.sa * d.sa;
    let k2 = m1 * m1 * m2 * m2 * (1.0 - d.sb * d.sb) * (1.0 - d.sc * d.sc);
    let dx = x - 1.0 / x;
    let r1 = (dx * dx + 4.0 * d.sa * d.sa).sqrt();
    let r2 = ((p - q) * (p - q) + 2.0 * cross * (p + q) + 4.0 * p * q * (d.sb * d.sb + d.sc * d.sc)).sqrt();
    (2.0 * lower_root(f1, k1, r1) * lower_root(f2, k2, r2), r1, r2)
}

/// `d objective / d ln x`, or `None` where the objective has a kink.
fn objective_log_slope(d: &ProductDecomposition, u: f64) -> Option<f64> {
    let x = u.exp();
    let (v, r1, r2) = objective_parts(d, x);
    if r1 < 1e-9 || r2 < 1e-9 {
        return None;
    }
    let df1 = x - 1.0 / x;
    let df2 = d.mu2 * d.mu2 * x - d.mu1 * d.mu1 / x;
    Some(-v * (df1 / r1 + df2 / r2))
}

/// Maximum of [`objective`] over `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObjectiveMax {
    pub p: f64,
    pub x_star: f64,
    /// Slope in `ln x` at the optimum; `None` when the optimum sits on a kink.
    pub slope: Option<f64>,
}

/// Multistart maximization of [`objective`] over `ln x ∈ [ln 1e-6, ln 1e6]`.
pub fn maximize_objective(d: &ProductDecomposition) -> Result<ObjectiveMax> {
    d.validate()?;
    let f = |u: f64| objective_parts(d, u.exp()).0;
    let (mut u, mut p) = multistart_max(&f, LOG_X_MIN, LOG_X_MAX, ScanOptions::default());
    if !p.is_finite() {
        return Err(Error::InvariantViolation(format!("objective maximum is {p}")));
    }

    // Golden section leaves |∇| ~ 1e-8 on smooth peaks; finish on the slope.
    let delta = 1e-6;
    let slope = |u: f64| objective_log_slope(d, u);
    if let (Some(gl), Some(gr)) = (slope(u - delta), slope(u + delta)) {
        if gl > 0.0 && gr < 0.0 {
            let g = |u: f64| slope(u).unwrap_or(0.0);
            let (un, _) = bisect(&g, u - delta, u + delta, 1e-12);
            let pn = f(un);
            if pn >= p {
                u = un;
                p = pn;
            }
        }
    }
    Ok(ObjectiveMax {
        p,
        x_star: u.exp(),
        slope: slope(u),
    })
}

/// Filter magnitudes of the three success operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub gamma: [f64; 2],
    /// `2(α₁β₁γ₁μ₁)²`.
    pub p: f64,
}

impl Coefficients {
    pub fn for_party(&self, party: Party) -> [f64; 2] {
        match party {
            Party::A => self.alpha,
            Party::B => self.beta,
            Party::C => self.gamma,
        }
    }
}

/// Direct maximization of `2(α₁β₁γ₁μ₁)²` over the filter ratios of Bob and
/// Claire; Alice's ratio follows from `α₁β₁γ₁μ₁ = α₂β₂γ₂μ₂` and every
/// magnitude pair lies on its rank-one curve `(1−κ₁²)(1−κ₂²) = sκ²`.
pub fn solve_coefficients(d: &ProductDecomposition) -> Result<Coefficients> {
    d.validate()?;
    let (m1, m2) = (d.mu1, d.mu2);
    let p_of = |u: f64, v: f64| {
        let (tb, tc) = (u.exp(), v.exp());
        let ta = m2 / (m1 * tb * tc);
        2.0 * m1 * m2 * filter_product(ta, d.sa) * filter_product(tb, d.sb) * filter_product(tc, d.sc)
    };
    let opts = ScanOptions {
        grid: 65,
        starts: 3,
        tol: 1e-11,
    };
    let inner = |u: f64| multistart_max(&|v| p_of(u, v), LOG_X_MIN, LOG_X_MAX, opts);
    let (u, _) = multistart_max(&|u| inner(u).1, LOG_X_MIN, LOG_X_MAX, opts);
    let (v, _) = inner(u);
    let (u, v) = polish_log_ratios(d, u, v);

    let (tb, tc) = (u.exp(), v.exp());
    let ta = m2 / (m1 * tb * tc);
    let alpha = filter_pair(ta, d.sa);
    let beta = filter_pair(tb, d.sb);
    let gamma = filter_pair(tc, d.sc);
    if [alpha, beta, gamma].iter().flatten().any(|&k| !(k > 0.0 && k <= 1.0)) {
        return Err(Error::InfeasibleBalance);
    }
    let amp = alpha[0] * beta[0] * gamma[0] * m1;
    Ok(Coefficients {
        alpha,
        beta,
        gamma,
        p: 2.0 * amp * amp,
    })
}

/// `d ln(κ₁κ₂) / d ln t`.
fn log_slope(y: f64, s: f64) -> f64 {
    let sh = y.sinh();
    let r = (sh * sh + s * s).sqrt();
    if r == 0.0 {
        0.0
    } else {
        -sh / r
    }
}

/// `d² ln(κ₁κ₂) / d(ln t)²`.
fn log_curvature(y: f64, s: f64) -> f64 {
    let sh = y.sinh();
    let r2 = sh * sh + s * s;
    if s == 0.0 {
        0.0
    } else {
        -y.cosh() * s * s / (r2 * r2.sqrt())
    }
}

/// Newton refinement of the nested search.
///
/// In `z = (ln t_b, ln t_b + ln t_c)` each party's log ratio is affine,
/// `y_κ = o_κ + a_κ·z`, and `ln p` is a sum of concave functions of the
/// `y_κ`. A party with orthogonal vectors has a kink at `y_κ = 0`; if the
/// search ended there, that party is held on the kink and Newton runs along
/// the remaining direction.
fn polish_log_ratios(d: &ProductDecomposition, u: f64, v: f64) -> (f64, f64) {
    let s = [d.sa, d.sb, d.sc];
    let dirs = [[0.0, -1.0], [1.0, 0.0], [-1.0, 1.0]];
    let offs = [(d.mu2 / d.mu1).ln(), 0.0, 0.0];
    let ys = |z: [f64; 2]| -> [f64; 3] { std::array::from_fn(|k| offs[k] + dirs[k][0] * z[0] + dirs[k][1] * z[1]) };
    let value = |z: [f64; 2]| -> f64 {
        let y = ys(z);
        (0..3).map(|k| filter_product(y[k].exp(), s[k]).ln()).sum()
    };
    let start = [u, u + v];
    let mut z = start;
    let pinned: Vec<usize> = (0..3).filter(|&k| s[k] <= 1e-12 && ys(z)[k].abs() <= 1e-6).collect();
    let basis: Vec<[f64; 2]> = match pinned.as_slice() {
        [] => vec![[1.0, 0.0], [0.0, 1.0]],
        &[k] => {
            let a = dirs[k];
            let shift = ys(z)[k] / (a[0] * a[0] + a[1] * a[1]);
            z = [z[0] - shift * a[0], z[1] - shift * a[1]];
            vec![[-a[1], a[0]]]
        }
        _ => return (u, v),
    };
    let base = value(start);
    for _ in 0..50 {
        let y = ys(z);
        let mut g = [0.0; 2];
        let mut h = [[0.0; 2]; 2];
        for k in (0..3).filter(|k| !pinned.contains(k)) {
            let (gk, hk) = (log_slope(y[k], s[k]), log_curvature(y[k], s[k]));
            for i in 0..2 {
                g[i] += gk * dirs[k][i];
                for j in 0..2 {
                    h[i][j] += hk * dirs[k][i] * dirs[k][j];
                }
            }
        }
        let n = basis.len();
        let gr: Vec<f64> = basis.iter().map(|e| e[0] * g[0] + e[1] * g[1]).collect();
        let hr = |p: usize, q: usize| {
            let (e, f) = (basis[p], basis[q]);
            (0..2).map(|i| (0..2).map(|j| e[i] * h[i][j] * f[j]).sum::<f64>()).sum::<f64>()
        };
        let step: Vec<f64> = if n == 1 {
            let c = hr(0, 0);
            if !(c < 0.0) {
                break;
            }
            vec![-gr[0] / c]
        } else {
            let (a, b, c) = (hr(0, 0), hr(0, 1), hr(1, 1));
            let det = a * c - b * b;
            if !(a < 0.0 && det > 0.0) {
                break;
            }
            vec![-(c * gr[0] - b * gr[1]) / det, -(a * gr[1] - b * gr[0]) / det]
        };
        let f0 = value(z);
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-12 {
            let dz: [f64; 2] = std::array::from_fn(|i| t * (0..n).map(|p| step[p] * basis[p][i]).sum::<f64>());
            let zn = [z[0] + dz[0], z[1] + dz[1]];
            if value(zn) >= f0 {
                moved = zn != z;
                z = zn;
                break;
            }
            t *= 0.5;
        }
        if !moved || gr.iter().map(|x| x.abs()).fold(0.0, f64::max) < 1e-14 {
            break;
        }
    }
    if value(z) >= base {
        (z[0], z[1] - z[0])
    } else {
        (u, v)
    }
}

/// The optimal OSBP for one decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OsbpSolution {
    /// Maximum of the one-variable objective.
    pub p_opt: f64,
    pub x_star: f64,
    pub slope: Option<f64>,
    pub coefficients: Coefficients,
    /// Phases `φ_a, φ_b, φ_c` with `φ_a + φ_b + φ_c ≡ −φ`.
    pub phases: [f64; 3],
}

impl OsbpSolution {
    pub fn alpha(&self) -> [f64; 2] {
        self.coefficients.alpha
    }

    pub fn beta(&self) -> [f64; 2] {
        self.coefficients.beta
    }

    pub fn gamma(&self) -> [f64; 2] {
        self.coefficients.gamma
    }
}

pub fn optimal_probability(d: &ProductDecomposition) -> Result<OsbpSolution> {
    let max = maximize_objective(d)?;
    let coefficients = solve_coefficients(d)?;
    Ok(OsbpSolution {
        p_opt: max.p,
        x_star: max.x_star,
        slope: max.slope,
        coefficients,
        // Adding zero turns a negated zero phase into +0.
        phases: [(-d.phi).rem_euclid(TAU) + 0.0, 0.0, 0.0],
    })
}

/// `1 − √(1 − 4μ₁²μ₂²(1 − sc²))`, valid when `sa = sb = 0`.
pub fn closed_form_phi1(d: &ProductDecomposition) -> Result<f64> {
    if d.sa > ZERO_OVERLAP || d.sb > ZERO_OVERLAP {
        return Err(Error::PreconditionViolated(format!(
            "closed form needs sa = sb = 0, got sa = {}, sb = {}",
            d.sa, d.sb
        )));
    }
    let (m1s, m2s) = (d.mu1 * d.mu1, d.mu2 * d.mu2);
    let y = 4.0 * m1s * m2s * (1.0 - d.sc * d.sc);
    // 1 − y with μ₁² + μ₂² = 1 substituted, free of cancellation.
    let disc = (m1s - m2s).powi(2) + 4.0 * m1s * m2s * d.sc * d.sc;
    Ok(y / (1.0 + disc.sqrt()))
}

/// Closed-form optimum when Alice's vectors are orthogonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Phi2Closed {
    pub p: f64,
    /// `β₂²/β₁²` at the optimum.
    pub beta_ratio: f64,
    /// `γ₂²/γ₁²` at the optimum.
    pub gamma_ratio: f64,
    /// Set when `sb = sc = 0`; the ratios are then the `0/0` limit `μ₁/μ₂`.
    pub ratios_by_continuity: bool,
}

/// `p = F·(1 − √(1 − 4μ₁²μ₂²(1−sb²)(1−sc²)/F²))` with `F = 1 + 2μ₁μ₂·sb·sc`,
/// plus the optimal filter ratios
/// `β₂²/β₁² = (μ₁/μ₂)(μ₁sb + μ₂sc)/(μ₂sb + μ₁sc)` and
/// `γ₂²/γ₁² = (β₁²/β₂²)(μ₁²/μ₂²)`. Valid when `sa = 0`.
pub fn closed_form_phi2(d: &ProductDecomposition) -> Result<Phi2Closed> {
    if d.sa > ZERO_OVERLAP {
        return Err(Error::PreconditionViolated(format!("closed form needs sa = 0, got {}", d.sa)));
    }
    let (m1, m2, sb, sc) = (d.mu1, d.mu2, d.sb, d.sc);
    let f = 1.0 + 2.0 * m1 * m2 * sb * sc;
    let k4 = 4.0 * m1 * m1 * m2 * m2 * (1.0 - sb * sb) * (1.0 - sc * sc);
    // F² − k4 with μ₁² + μ₂² = 1 substituted, as a sum of non-negative terms.
    let cross = 2.0 * m1 * m2 * sb * sc;
    let disc = (m1 * m1 - m2 * m2).powi(2) + 2.0 * cross + 4.0 * m1 * m1 * m2 * m2 * (sb * sb + sc * sc);
    let p = k4 / (f + disc.sqrt());
    let continuity = sb <= ZERO_OVERLAP && sc <= ZERO_OVERLAP;
    let (beta_ratio, gamma_ratio) = if continuity {
        (m1 / m2, m1 / m2)
    } else {
        let br = (m1 / m2) * (m1 * sb + m2 * sc) / (m2 * sb + m1 * sc);
        (br, (m1 * m1) / (m2 * m2) / br)
    };
    Ok(Phi2Closed {
        p,
        beta_ratio,
        gamma_ratio,
        ratios_by_continuity: continuity,
    })
}

/// Success and failure operators for the three parties; outcome 0 is success.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PovmTriple {
    pub pairs: [PovmPair; 3],
}

impl PovmTriple {
    pub fn new(a: PovmPair, b: PovmPair, c: PovmPair) -> Self {
        PovmTriple { pairs: [a, b, c] }
    }

    pub fn pair(&self, party: Party) -> &PovmPair {
        &self.pairs[party.index()]
    }

    pub fn success_ops(&self) -> [LocalOp; 3] {
        self.pairs.map(|p| p.ops[0])
    }

    /// Completeness and rank-one failure checks for every party.
    pub fn check(&self) -> Result<()> {
        for party in Party::ALL {
            let pair = self.pair(party);
            let err = pair.completeness_error();
            if err > 1e-10 {
                return Err(Error::InvariantViolation(format!("party {party}: completeness error {err:e}")));
            }
            let [hi, lo] = pair.ops[1].singular_values();
            if hi > 1e-12 && lo > 1e-8 * hi {
                return Err(Error::InvariantViolation(format!(
                    "party {party}: failure operator has rank 2 (singular values {hi:e}, {lo:e})"
                )));
            }
        }
        Ok(())
    }
}

/// `κ₁|0⟩⟨κ̃₁| + κ₂e^{iθ}|1⟩⟨κ̃₂|` for one party.
pub fn success_operator(pair: &[LocalVec; 2], coeffs: [f64; 2], phase: f64) -> Result<LocalOp> {
    let (t1, t2) = dual_basis(&pair[0], &pair[1])?;
    let first = LocalOp::outer(&LocalVec::zero(), &t1).scale(coeffs[0]);
    let second = LocalOp::outer(&LocalVec::one(), &t2);
    let second = LocalOp(second.0 * C64::from_polar(coeffs[1], phase));
    Ok(first + second)
}

/// Builds the explicit local POVMs of an OSBP solution and checks that the
/// success branch of `reconstruct(d)` is exactly GHZ with probability `p_opt`.
pub fn build_povms(d: &ProductDecomposition, sol: &OsbpSolution) -> Result<PovmTriple> {
    let mut pairs = [PovmPair::new(LocalOp::identity(), LocalOp::zero()); 3];
    for party in Party::ALL {
        let m = success_operator(d.local(party), sol.coefficients.for_party(party), sol.phases[party.index()])?;
        pairs[party.index()] = PovmPair::completing(m);
    }
    let triple = PovmTriple { pairs };
    triple.check()?;

    let [a, b, c] = triple.success_ops();
    let (raw, p) = apply_local(&reconstruct(d), &a, &b, &c);
    let out = State3Q::new(raw)?;
    let fid = overlap(&State3Q::ghz(), &out).norm_sqr();
    if fid < 1.0 - 1e-10 {
        return Err(Error::InvariantViolation(format!("success branch has GHZ fidelity {fid}")));
    }
    if (p - sol.p_opt).abs() > 1e-8 {
        return Err(Error::InvariantViolation(format!(
            "success branch probability {p} differs from p_opt {}",
            sol.p_opt
        )));
    }
    Ok(triple)
}
