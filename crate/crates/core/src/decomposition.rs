//! Entanglement classes of three-qubit pure states and the two-term product
//! decomposition of GHZ-class states.
//!
//! A state whose three single-party reductions all have rank 2 is either GHZ
//! class or W class. Writing `|ψ⟩ = |0⟩|r₀⟩ + |1⟩|r₁⟩`, the range of `ρ_BC` is
//! spanned by `r₀, r₁`, and a vector `s·r₀ + t·r₁` is a product vector exactly
//! when the 2×2 reshaping has zero determinant. That determinant is a binary
//! quadratic form in `(s:t)`: two distinct projective roots mean GHZ class, a
//! double root means W class.
//!
//! For GHZ-class states the two product vectors `λₖ|bₖcₖ⟩` determine
//! `|ψ⟩ = μ₁|a₁b₁c₁⟩ + μ₂e^{iφ}|a₂b₂c₂⟩` uniquely once phases are fixed:
//!
//! - the first component of each `|κ₁⟩` with modulus above 1e-12 is real positive;
//! - `⟨κ₁|κ₂⟩ = sκ` is real and nonnegative (if it vanishes, `|κ₂⟩` follows the
//!   same first-component rule);
//! - `μ₁ ≥ μ₂ > 0` are real and `φ ∈ [0, 2π)` carries the remaining phase.

use std::f64::consts::TAU;
use std::fmt;

use crate::error::{Error, Result};
use crate::tensor::{
    normalize, numeric_rank, overlap, reduced_density, LocalVec, Party, State3Q, C64, RANK_TOL, ZERO, ZERO_NORM,
};

/// Projective distance below which the two roots count as one (W class).
pub const DOUBLE_ROOT_TOL: f64 = 1e-8;

/// Minimum sine of the angle between the two product vectors in `decompose`.
pub const ILL_CONDITIONED_TOL: f64 = 1e-8;

/// Coefficient scale below which the range quadratic is treated as identically zero.
const QUADRATIC_ZERO: f64 = 1e-14;

/// Looser rank tolerance used to re-examine a vanishing range quadratic.
const RELAXED_RANK_TOL: f64 = 1e-6;

/// Relative weight difference treated as a tie between the two terms.
const WEIGHT_TIE: f64 = 1e-12;

/// Overlap modulus below which `⟨κ₁|κ₂⟩` has no usable phase.
const OVERLAP_ZERO: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntanglementClass {
    FullyProduct,
    /// The given party factors out: `Biseparable(A)` is `A|BC`.
    Biseparable(Party),
    WClass,
    GhzClass,
}

impl fmt::Display for EntanglementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntanglementClass::FullyProduct => f.write_str("FullyProduct"),
            EntanglementClass::Biseparable(Party::A) => f.write_str("Biseparable(A|BC)"),
            EntanglementClass::Biseparable(Party::B) => f.write_str("Biseparable(B|AC)"),
            EntanglementClass::Biseparable(Party::C) => f.write_str("Biseparable(C|AB)"),
            EntanglementClass::WClass => f.write_str("WClass"),
            EntanglementClass::GhzClass => f.write_str("GHZClass"),
        }
    }
}

/// What `classify` looked at.
#[derive(Clone, Debug, PartialEq)]
pub struct Evidence {
    /// Numerical ranks of `ρ_A`, `ρ_B`, `ρ_C`.
    pub ranks: [usize; 3],
    /// Ascending eigenvalues of `ρ_A`, `ρ_B`, `ρ_C`.
    pub spectra: [[f64; 2]; 3],
    /// Coefficients `(a, b, c)` of `a·s² + b·st + c·t²`, when computed.
    pub quadratic: Option<[C64; 3]>,
    /// Projective distance between the two roots, when computed.
    pub root_separation: Option<f64>,
}

pub fn classify(state: &State3Q, tol: f64) -> Result<EntanglementClass> {
    classify_with_evidence(state, tol).map(|(c, _)| c)
}

pub fn classify_with_evidence(state: &State3Q, tol: f64) -> Result<(EntanglementClass, Evidence)> {
    let (ranks, spectra) = local_ranks(state, tol);
    let mut evidence = Evidence {
        ranks,
        spectra,
        quadratic: None,
        root_separation: None,
    };
    if let Some(class) = class_from_ranks(&ranks) {
        return Ok((class, evidence));
    }

    let quad = range_quadratic(state);
    evidence.quadratic = Some(quad);
    let scale = quad.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale <= QUADRATIC_ZERO {
        if tol < RELAXED_RANK_TOL {
            let (relaxed, _) = local_ranks(state, RELAXED_RANK_TOL);
            if let Some(class) = class_from_ranks(&relaxed) {
                evidence.ranks = relaxed;
                return Ok((class, evidence));
            }
        }
        return Err(Error::DegenerateQuadratic);
    }
    let roots = projective_roots(quad);
    let sep = projective_distance(roots[0], roots[1]);
    evidence.root_separation = Some(sep);
    let class = if sep < DOUBLE_ROOT_TOL {
        EntanglementClass::WClass
    } else {
        EntanglementClass::GhzClass
    };
    Ok((class, evidence))
}

fn local_ranks(state: &State3Q, tol: f64) -> ([usize; 3], [[f64; 2]; 3]) {
    let mut ranks = [0; 3];
    let mut spectra = [[0.0; 2]; 3];
    for p in Party::ALL {
        let rho = reduced_density(state, &[p]).expect("single party is a proper subset");
        let ev = rho.eigenvalues();
        spectra[p.index()] = [ev[0], ev[1]];
        ranks[p.index()] = numeric_rank(&rho, tol);
    }
    (ranks, spectra)
}

fn class_from_ranks(ranks: &[usize; 3]) -> Option<EntanglementClass> {
    let pure: Vec<Party> = Party::ALL.into_iter().filter(|p| ranks[p.index()] <= 1).collect();
    match pure.len() {
        0 => None,
        1 => Some(EntanglementClass::Biseparable(pure[0])),
        _ => Some(EntanglementClass::FullyProduct),
    }
}

/// `det(s·R₀ + t·R₁) = a·s² + b·st + c·t²`, with `Rₖ` the BC amplitudes at A = k
/// reshaped as 2×2 matrices.
fn range_quadratic(state: &State3Q) -> [C64; 3] {
    let [r0, r1] = state.split_a();
    let a = r0[0] * r0[3] - r0[1] * r0[2];
    let c = r1[0] * r1[3] - r1[1] * r1[2];
    let b = r0[0] * r1[3] + r1[0] * r0[3] - r0[1] * r1[2] - r1[1] * r0[2];
    [a, b, c]
}

/// Roots of `lead·r² + mid·r + tail`, computed without cancellation.
fn quadratic_roots(lead: C64, mid: C64, tail: C64) -> [C64; 2] {
    let mut sq = (mid * mid - 4.0 * lead * tail).sqrt();
    if (mid.conj() * sq).re < 0.0 {
        sq = -sq;
    }
    let q = -(mid + sq) / 2.0;
    if q == ZERO {
        return [ZERO, ZERO];
    }
    [q / lead, tail / q]
}

/// Both roots of the binary form as unit vectors `(s, t)` in C².
fn projective_roots([a, b, c]: [C64; 3]) -> [(C64, C64); 2] {
    let one = C64::new(1.0, 0.0);
    let unit = |s: C64, t: C64| {
        let n = (s.norm_sqr() + t.norm_sqr()).sqrt();
        (s / n, t / n)
    };
    if a.norm() == 0.0 && c.norm() == 0.0 {
        return [(one, ZERO), (ZERO, one)];
    }
    if a.norm() >= c.norm() {
        quadratic_roots(a, b, c).map(|r| unit(r, one))
    } else {
        quadratic_roots(c, b, a).map(|u| unit(one, u))
    }
}

fn projective_distance(p: (C64, C64), q: (C64, C64)) -> f64 {
    (p.0 * q.1 - p.1 * q.0).norm()
}

/// The unique two-term product form of a GHZ-class state.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductDecomposition {
    pub mu1: f64,
    pub mu2: f64,
    /// Relative phase in `[0, 2π)`.
    pub phi: f64,
    pub a: [LocalVec; 2],
    pub b: [LocalVec; 2],
    pub c: [LocalVec; 2],
    pub sa: f64,
    pub sb: f64,
    pub sc: f64,
}

impl ProductDecomposition {
    /// Decomposition with `|κ₁⟩ = |0⟩` and `|κ₂⟩ = sκ|0⟩ + √(1−sκ²)|1⟩`.
    /// The weights are rescaled by a common factor so the state is normalized.
    pub fn canonical(mu1: f64, mu2: f64, phi: f64, s: [f64; 3]) -> Result<Self> {
        if !(mu1 >= mu2 && mu2 > 0.0) {
            return Err(Error::PreconditionViolated(format!("need mu1 >= mu2 > 0, got {mu1}, {mu2}")));
        }
        if s.iter().any(|&x| !(0.0..1.0).contains(&x)) {
            return Err(Error::PreconditionViolated(format!("overlaps must lie in [0, 1), got {s:?}")));
        }
        let phi = phi.rem_euclid(TAU);
        let norm2 = mu1 * mu1 + mu2 * mu2 + 2.0 * mu1 * mu2 * phi.cos() * s[0] * s[1] * s[2];
        let k = norm2.sqrt();
        let pair = |x: f64| [LocalVec::zero(), crate::sample::vec_with_overlap(x)];
        let d = ProductDecomposition {
            mu1: mu1 / k,
            mu2: mu2 / k,
            phi,
            a: pair(s[0]),
            b: pair(s[1]),
            c: pair(s[2]),
            sa: s[0],
            sb: s[1],
            sc: s[2],
        };
        d.validate()?;
        Ok(d)
    }

    pub fn overlaps(&self) -> [f64; 3] {
        [self.sa, self.sb, self.sc]
    }

    pub fn local(&self, party: Party) -> &[LocalVec; 2] {
        match party {
            Party::A => &self.a,
            Party::B => &self.b,
            Party::C => &self.c,
        }
    }

    /// `μ₁² + μ₂² + 2μ₁μ₂cos(φ)·sa·sb·sc − 1`.
    pub fn normalization_residual(&self) -> f64 {
        self.mu1 * self.mu1 + self.mu2 * self.mu2 + 2.0 * self.mu1 * self.mu2 * self.phi.cos() * self.sa * self.sb * self.sc
            - 1.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu1 >= self.mu2 && self.mu2 > 0.0) {
            return Err(Error::InvariantViolation(format!(
                "weights out of order: mu1 = {}, mu2 = {}",
                self.mu1, self.mu2
            )));
        }
        for (name, s) in [("sa", self.sa), ("sb", self.sb), ("sc", self.sc)] {
            if !(0.0..1.0).contains(&s) {
                return Err(Error::InvariantViolation(format!("{name} = {s} outside [0, 1)")));
            }
        }
        let res = self.normalization_residual();
        if res.abs() > 1e-10 {
            return Err(Error::InvariantViolation(format!("normalization residual {res:e}")));
        }
        Ok(())
    }
}

/// `|ψ⟩ = μ₁|a₁b₁c₁⟩ + μ₂e^{iφ}|a₂b₂c₂⟩`, normalized.
pub fn reconstruct(d: &ProductDecomposition) -> State3Q {
    let t1 = State3Q::product_amps(&d.a[0], &d.b[0], &d.c[0]);
    let t2 = State3Q::product_amps(&d.a[1], &d.b[1], &d.c[1]);
    let z2 = C64::from_polar(d.mu2, d.phi);
    let raw = std::array::from_fn(|i| d.mu1 * t1[i] + z2 * t2[i]);
    normalize(&raw).expect("two-term decomposition has nonzero norm")
}

/// Two-term product decomposition of a GHZ-class state.
pub fn decompose(state: &State3Q) -> Result<ProductDecomposition> {
    let (class, evidence) = classify_with_evidence(state, RANK_TOL)?;
    if class != EntanglementClass::GhzClass {
        return Err(Error::NotGhzClass(class));
    }
    let roots = projective_roots(evidence.quadratic.expect("GHZ class computes the quadratic"));
    let [r0, r1] = state.split_a();

    let prod: [[C64; 4]; 2] = roots.map(|(s, t)| std::array::from_fn(|j| s * r0[j] + t * r1[j]));
    let n0: f64 = prod[0].iter().map(|z| z.norm_sqr()).sum();
    let n1: f64 = prod[1].iter().map(|z| z.norm_sqr()).sum();
    let cross: C64 = prod[0].iter().zip(&prod[1]).map(|(x, y)| x.conj() * y).sum();
    let sin2 = 1.0 - cross.norm_sqr() / (n0 * n1);
    let sin = sin2.max(0.0).sqrt();
    if sin < ILL_CONDITIONED_TOL {
        return Err(Error::IllConditioned(sin));
    }

    // ψ = Σ_k (column k of T⁻¹) ⊗ Pₖ where Pₖ = sₖ r₀ + tₖ r₁.
    let [(s1, t1), (s2, t2)] = roots;
    let det = s1 * t2 - t1 * s2;
    let tinv = [[t2 / det, -t1 / det], [-s2 / det, s1 / det]];

    let mut terms: Vec<Term> = Vec::with_capacity(2);
    for (k, p) in prod.iter().enumerate() {
        let (lambda, b, c) = factor_rank_one(p)?;
        let a_raw = LocalVec::new(tinv[0][k], tinv[1][k]);
        let an = a_raw.norm();
        terms.push(Term {
            z: C64::new(an * lambda, 0.0),
            a: a_raw.normalized()?,
            b,
            c,
        });
    }

    let (w0, w1) = (terms[0].z.norm(), terms[1].z.norm());
    let tied = (w0 - w1).abs() <= WEIGHT_TIE * w0.max(w1);
    let swap = if tied {
        lex_magnitudes(&terms[1].a) > lex_magnitudes(&terms[0].a)
    } else {
        w1 > w0
    };
    if swap {
        terms.swap(0, 1);
    }
    let [mut first, mut second] = [terms[0], terms[1]];

    let mut overlaps = [0.0; 3];
    for (idx, (k1, k2)) in [
        (&mut first.a, &mut second.a),
        (&mut first.b, &mut second.b),
        (&mut first.c, &mut second.c),
    ]
    .into_iter()
    .enumerate()
    {
        let ph = leading_phase(k1);
        *k1 = k1.scale(ph.conj());
        first.z *= ph;

        let ov = k1.inner(k2);
        let ph2 = if ov.norm() > OVERLAP_ZERO {
            ov / ov.norm()
        } else {
            leading_phase(k2)
        };
        *k2 = k2.scale(ph2.conj());
        second.z *= ph2;
        overlaps[idx] = k1.inner(k2).norm();
    }

    let mut phi = (second.z.arg() - first.z.arg()).rem_euclid(TAU);
    if TAU - phi < 1e-13 {
        phi = 0.0;
    }
    let (mut mu1, mut mu2) = (first.z.norm(), second.z.norm());
    if tied {
        mu1 = 0.5 * (mu1 + mu2);
        mu2 = mu1;
    }
    let d = ProductDecomposition {
        mu1,
        mu2,
        phi,
        a: [first.a, second.a],
        b: [first.b, second.b],
        c: [first.c, second.c],
        sa: overlaps[0],
        sb: overlaps[1],
        sc: overlaps[2],
    };
    d.validate()?;
    let fid = overlap(&reconstruct(&d), state).norm();
    if fid < 1.0 - 1e-10 {
        return Err(Error::InvariantViolation(format!("reconstruction overlap {fid}")));
    }
    Ok(d)
}

#[derive(Clone, Copy)]
struct Term {
    z: C64,
    a: LocalVec,
    b: LocalVec,
    c: LocalVec,
}

fn lex_magnitudes(v: &LocalVec) -> (f64, f64) {
    (v.component(0).norm(), v.component(1).norm())
}

/// Unit phase of the first component with modulus above 1e-12.
fn leading_phase(v: &LocalVec) -> C64 {
    for i in 0..2 {
        let z = v.component(i);
        if z.norm() > ZERO_NORM {
            return z / z.norm();
        }
    }
    C64::new(1.0, 0.0)
}

/// Writes a (numerically) rank-one BC vector as `λ·|b⟩⊗|c⟩` with `λ > 0`.
fn factor_rank_one(p: &[C64; 4]) -> Result<(f64, LocalVec, LocalVec)> {
    let row = |i: usize| LocalVec::new(p[2 * i], p[2 * i + 1]);
    let (r0, r1) = (row(0), row(1));
    let c = if r0.norm() >= r1.norm() { r0 } else { r1 }.normalized()?;
    // b̂_β = Σ_γ M[β][γ]·conj(c_γ) is the best rank-one fit given c.
    let b_hat = LocalVec::new(c.inner(&r0), c.inner(&r1));
    let lambda = b_hat.norm();
    Ok((lambda, b_hat.normalized()?, c))
}

/// Biorthonormal partners `(ṽ₁, ṽ₂)` with `⟨ṽᵢ|vⱼ⟩ = δᵢⱼ`.
pub fn dual_basis(v1: &LocalVec, v2: &LocalVec) -> Result<(LocalVec, LocalVec)> {
    let cos = v1.inner(v2).norm() / (v1.norm() * v2.norm());
    if !(cos < 1.0 - 1e-10) {
        return Err(Error::ParallelVectors(cos));
    }
    // V has columns v1, v2; the rows of V⁻¹ are the conjugated duals.
    let (a, b, c, d) = (v1.component(0), v2.component(0), v1.component(1), v2.component(1));
    let det = a * d - b * c;
    let row0 = [d / det, -b / det];
    let row1 = [-c / det, a / det];
    Ok((
        LocalVec::new(row0[0].conj(), row0[1].conj()),
        LocalVec::new(row1[0].conj(), row1[1].conj()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn psi_b() -> State3Q {
        State3Q::from_real([FRAC_1_SQRT_2, 0., 0., 0., 0., 0., 0.6 * FRAC_1_SQRT_2, 0.8 * FRAC_1_SQRT_2]).unwrap()
    }

    fn vec_close(v: &LocalVec, w: &LocalVec, tol: f64) -> bool {
        (v.0 - w.0).norm() <= tol
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&State3Q::ghz(), RANK_TOL).unwrap(), EntanglementClass::GhzClass);
        assert_eq!(classify(&State3Q::w(), RANK_TOL).unwrap(), EntanglementClass::WClass);
        let bisep = State3Q::from_real([1., 0., 0., 1., 0., 0., 0., 0.]).unwrap();
        assert_eq!(
            classify(&bisep, RANK_TOL).unwrap(),
            EntanglementClass::Biseparable(Party::A)
        );
        assert_eq!(
            classify(&State3Q::basis(5), RANK_TOL).unwrap(),
            EntanglementClass::FullyProduct
        );
    }

    #[test]
    fn classify_biseparable_each_party() {
        // |0⟩_B ⊗ (|00⟩+|11⟩)_AC
        let s = State3Q::from_real([1., 0., 0., 0., 0., 1., 0., 0.]).unwrap();
        assert_eq!(classify(&s, RANK_TOL).unwrap(), EntanglementClass::Biseparable(Party::B));
        // (|00⟩+|11⟩)_AB ⊗ |0⟩_C
        let s = State3Q::from_real([1., 0., 0., 0., 0., 0., 1., 0.]).unwrap();
        assert_eq!(classify(&s, RANK_TOL).unwrap(), EntanglementClass::Biseparable(Party::C));
    }

    #[test]
    fn w_class_has_double_root_with_root_at_infinity() {
        let (_, ev) = classify_with_evidence(&State3Q::w(), RANK_TOL).unwrap();
        let [_, _, c] = ev.quadratic.unwrap();
        assert_eq!(c, ZERO);
        assert_eq!(ev.root_separation, Some(0.0));
    }

    #[test]
    fn decompose_ghz() {
        let d = decompose(&State3Q::ghz()).unwrap();
        assert!((d.mu1 - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((d.mu2 - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!(d.phi.abs() < 1e-14);
        assert!(d.overlaps().iter().all(|s| s.abs() < 1e-14));
        for p in Party::ALL {
            let [k1, k2] = d.local(p);
            assert!(vec_close(k1, &LocalVec::zero(), 1e-14));
            assert!(vec_close(k2, &LocalVec::one(), 1e-14));
        }
    }

    #[test]
    fn decompose_inverts_psi_b_construction() {
        let d = decompose(&psi_b()).unwrap();
        assert!((d.mu1 - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((d.mu2 - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(d.sa.abs() < 1e-12 && d.sb.abs() < 1e-12);
        assert!((d.sc - 0.6).abs() < 1e-12);
        assert!(d.phi.abs() < 1e-12);
        assert!(vec_close(&d.c[0], &LocalVec::zero(), 1e-12));
        assert!(vec_close(&d.c[1], &LocalVec::real(0.6, 0.8), 1e-12));
        let back = reconstruct(&d);
        assert!(overlap(&back, &psi_b()).norm() >= 1.0 - 1e-10);
    }

    #[test]
    fn decompose_orthogonal_unequal_weights() {
        let s = State3Q::from_real([(2f64 / 3.).sqrt(), 0., 0., 0., 0., 0., 0., (1f64 / 3.).sqrt()]).unwrap();
        let d = decompose(&s).unwrap();
        assert!((d.mu1 - (2f64 / 3.).sqrt()).abs() < 1e-12);
        assert!((d.mu2 - (1f64 / 3.).sqrt()).abs() < 1e-12);
        assert!(d.overlaps().iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn decompose_rejects_non_ghz() {
        assert_eq!(
            decompose(&State3Q::w()),
            Err(Error::NotGhzClass(EntanglementClass::WClass))
        );
        assert!(matches!(decompose(&State3Q::basis(0)), Err(Error::NotGhzClass(_))));
    }

    #[test]
    fn reconstruct_ghz_data() {
        let d = ProductDecomposition::canonical(1.0, 1.0, 0.0, [0.0; 3]).unwrap();
        assert!((overlap(&reconstruct(&d), &State3Q::ghz()).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dual_basis_examples() {
        let (t1, t2) = dual_basis(&LocalVec::zero(), &LocalVec::one()).unwrap();
        assert!(vec_close(&t1, &LocalVec::zero(), 1e-15));
        assert!(vec_close(&t2, &LocalVec::one(), 1e-15));

        let plus = LocalVec::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let (t1, t2) = dual_basis(&LocalVec::zero(), &plus).unwrap();
        assert!(vec_close(&t1, &LocalVec::real(1.0, -1.0), 1e-14));
        assert!(vec_close(&t2, &LocalVec::real(0.0, 2f64.sqrt()), 1e-14));

        assert!(matches!(dual_basis(&plus, &plus), Err(Error::ParallelVectors(_))));
    }

    #[test]
    fn dual_basis_is_biorthonormal_for_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let v = [sample::random_unit_vec(&mut rng), sample::random_unit_vec(&mut rng)];
            let (t1, t2) = dual_basis(&v[0], &v[1]).unwrap();
            for (i, t) in [t1, t2].iter().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((t.inner(vj) - C64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn decompose_random_structured_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let s = sample::random_phi2_state(&mut rng);
            let d = decompose(&s).unwrap();
            assert!(d.sa < 1e-10, "sa = {}", d.sa);
            assert!(overlap(&reconstruct(&d), &s).norm() >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn canonical_rejects_bad_input() {
        assert!(ProductDecomposition::canonical(0.5, 0.7, 0.0, [0.0; 3]).is_err());
        assert!(ProductDecomposition::canonical(0.7, 0.5, 0.0, [1.0, 0.0, 0.0]).is_err());
    }
}
