//! Dense three-qubit pure states and single-qubit operators.
//!
//! Amplitudes are indexed `i = 4a + 2b + c` for the basis ket `|abc⟩`, so
//! party A is the slowest index.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Matrix2, SymmetricEigen, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default relative tolerance for numerical ranks.
pub const RANK_TOL: f64 = 1e-10;

/// Norms at or below this are treated as zero.
pub const ZERO_NORM: f64 = 1e-12;

/// Eigenvalues of `1 - M†M` below this are rounding noise when taking square roots.
const SQRT_CLAMP: f64 = 1e-14;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Bit position of this party's qubit in the amplitude index.
    pub fn shift(self) -> usize {
        match self {
            Party::A => 2,
            Party::B => 1,
            Party::C => 0,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Party {
        Party::ALL[i % 3]
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Party::A => "A",
            Party::B => "B",
            Party::C => "C",
        };
        f.write_str(s)
    }
}

/// A single-qubit vector. Stored local states are unit norm; dual-basis
/// vectors are not.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalVec(pub Vector2<C64>);

impl LocalVec {
    pub fn new(c0: C64, c1: C64) -> Self {
        LocalVec(Vector2::new(c0, c1))
    }

    pub fn real(c0: f64, c1: f64) -> Self {
        Self::new(C64::new(c0, 0.0), C64::new(c1, 0.0))
    }

    pub fn zero() -> Self {
        Self::real(1.0, 0.0)
    }

    pub fn one() -> Self {
        Self::real(0.0, 1.0)
    }

    pub fn component(&self, i: usize) -> C64 {
        self.0[i]
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= ZERO_NORM {
            return Err(Error::ZeroVector(n));
        }
        Ok(LocalVec(self.0.unscale(n)))
    }

    pub fn scale(&self, z: C64) -> Self {
        LocalVec(self.0 * z)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &LocalVec) -> C64 {
        self.0.dotc(&other.0)
    }
}

/// A 2×2 complex operator acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalOp(pub Matrix2<C64>);

impl LocalOp {
    pub fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        LocalOp(Matrix2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1]))
    }

    pub fn identity() -> Self {
        LocalOp(Matrix2::identity())
    }

    pub fn zero() -> Self {
        LocalOp(Matrix2::zeros())
    }

    pub fn diag(d0: f64, d1: f64) -> Self {
        Self::from_rows([[C64::new(d0, 0.0), ZERO], [ZERO, C64::new(d1, 0.0)]])
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: &LocalVec, bra: &LocalVec) -> Self {
        LocalOp(ket.0 * bra.0.adjoint())
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn scale(&self, s: f64) -> Self {
        LocalOp(self.0.scale(s))
    }

    pub fn adjoint(&self) -> Self {
        LocalOp(self.0.adjoint())
    }

    /// `M†M`.
    pub fn gram(&self) -> Self {
        LocalOp(self.0.adjoint() * self.0)
    }

    pub fn apply(&self, v: &LocalVec) -> LocalVec {
        LocalVec(self.0 * v.0)
    }

    /// Max-absolute-entry distance.
    pub fn max_abs_diff(&self, other: &LocalOp) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> [f64; 2] {
        let sv = self.0.singular_values();
        let (a, b) = (sv[0], sv[1]);
        if a >= b {
            [a, b]
        } else {
            [b, a]
        }
    }

    /// True when `M†M ⪯ 1` up to `tol` on the largest singular value.
    pub fn is_contraction(&self, tol: f64) -> bool {
        self.singular_values()[0] <= 1.0 + tol
    }

    /// Square root of a Hermitian positive semidefinite operator. Eigenvalues
    /// below 1e-14 in magnitude are set to zero before the root is taken.
    pub fn psd_sqrt(&self) -> Self {
        let herm = (self.0 + self.0.adjoint()).scale(0.5);
        let eig = SymmetricEigen::new(herm);
        let mut out = Matrix2::<C64>::zeros();
        for k in 0..2 {
            let lam = eig.eigenvalues[k];
            let lam = if lam.abs() < SQRT_CLAMP { 0.0 } else { lam.max(0.0) };
            let v = eig.eigenvectors.column(k);
            out += (v * v.adjoint()).scale(lam.sqrt());
        }
        LocalOp(out)
    }

    /// The positive operator `sqrt(1 - M†M)` completing `{M, ·}` to a POVM.
    pub fn completion(&self) -> Self {
        (LocalOp::identity() - self.gram()).psd_sqrt()
    }
}

impl Mul for LocalOp {
    type Output = LocalOp;
    fn mul(self, rhs: LocalOp) -> LocalOp {
        LocalOp(self.0 * rhs.0)
    }
}

impl Add for LocalOp {
    type Output = LocalOp;
    fn add(self, rhs: LocalOp) -> LocalOp {
        LocalOp(self.0 + rhs.0)
    }
}

impl Sub for LocalOp {
    type Output = LocalOp;
    fn sub(self, rhs: LocalOp) -> LocalOp {
        LocalOp(self.0 - rhs.0)
    }
}

/// A two-outcome local measurement `{M₀, M₁}` with `M₀†M₀ + M₁†M₁ = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PovmPair {
    pub ops: [LocalOp; 2],
}

impl PovmPair {
    pub fn new(first: LocalOp, second: LocalOp) -> Self {
        PovmPair { ops: [first, second] }
    }

    /// `{M, sqrt(1 - M†M)}`.
    pub fn completing(first: LocalOp) -> Self {
        Self::new(first, first.completion())
    }

    /// Max-entry distance of `M₀†M₀ + M₁†M₁` from the identity.
    pub fn completeness_error(&self) -> f64 {
        (self.ops[0].gram() + self.ops[1].gram()).max_abs_diff(&LocalOp::identity())
    }
}

/// Unnormalized three-qubit amplitudes.
pub type RawAmps = [C64; 8];

/// A normalized three-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct State3Q {
    amps: RawAmps,
}

impl State3Q {
    /// Normalizes `raw`; fails with [`Error::ZeroVector`] if its norm is at most 1e-12.
    pub fn new(raw: RawAmps) -> Result<Self> {
        normalize(&raw)
    }

    pub fn from_real(raw: [f64; 8]) -> Result<Self> {
        Self::new(raw.map(|x| C64::new(x, 0.0)))
    }

    pub fn amps(&self) -> &RawAmps {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.amps[i]
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 8];
        amps[index] = ONE;
        State3Q { amps }
    }

    /// `(|000⟩ + |111⟩)/√2`.
    pub fn ghz() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = [ZERO; 8];
        amps[0] = C64::new(h, 0.0);
        amps[7] = C64::new(h, 0.0);
        State3Q { amps }
    }

    /// `(|001⟩ + |010⟩ + |100⟩)/√3`.
    pub fn w() -> Self {
        let t = 1.0 / 3f64.sqrt();
        let mut amps = [ZERO; 8];
        for i in [1, 2, 4] {
            amps[i] = C64::new(t, 0.0);
        }
        State3Q { amps }
    }

    /// Unnormalized product amplitudes `|a⟩⊗|b⟩⊗|c⟩`.
    pub fn product_amps(a: &LocalVec, b: &LocalVec, c: &LocalVec) -> RawAmps {
        let mut amps = [ZERO; 8];
        for (i, amp) in amps.iter_mut().enumerate() {
            *amp = a.0[(i >> 2) & 1] * b.0[(i >> 1) & 1] * c.0[i & 1];
        }
        amps
    }

    pub fn product(a: &LocalVec, b: &LocalVec, c: &LocalVec) -> Result<Self> {
        normalize(&Self::product_amps(a, b, c))
    }

    /// `op` applied to one party, unnormalized.
    pub fn apply_party(&self, party: Party, op: &LocalOp) -> RawAmps {
        apply_party_raw(&self.amps, party, op)
    }

    /// The amplitudes as a 2×4 matrix: row `k` holds the BC amplitudes with A = k.
    pub(crate) fn split_a(&self) -> [[C64; 4]; 2] {
        let mut rows = [[ZERO; 4]; 2];
        for i in 0..8 {
            rows[i >> 2][i & 3] = self.amps[i];
        }
        rows
    }
}

pub fn norm_sqr(raw: &RawAmps) -> f64 {
    raw.iter().map(|z| z.norm_sqr()).sum()
}

/// Scales raw amplitudes to unit norm.
pub fn normalize(raw: &RawAmps) -> Result<State3Q> {
    let n = norm_sqr(raw).sqrt();
    if !(n > ZERO_NORM) {
        return Err(Error::ZeroVector(n));
    }
    Ok(State3Q {
        amps: raw.map(|z| z / n),
    })
}

pub fn apply_party_raw(raw: &RawAmps, party: Party, op: &LocalOp) -> RawAmps {
    let shift = party.shift();
    let mask = 1usize << shift;
    let mut out = [ZERO; 8];
    for (i, z) in out.iter_mut().enumerate() {
        let row = (i >> shift) & 1;
        let i0 = i & !mask;
        let i1 = i | mask;
        *z = op.0[(row, 0)] * raw[i0] + op.0[(row, 1)] * raw[i1];
    }
    out
}

/// `(A⊗B⊗C)|ψ⟩` and its squared norm `⟨ψ|A†A⊗B†B⊗C†C|ψ⟩`.
pub fn apply_local(state: &State3Q, a: &LocalOp, b: &LocalOp, c: &LocalOp) -> (RawAmps, f64) {
    let mut raw = apply_party_raw(state.amps(), Party::A, a);
    raw = apply_party_raw(&raw, Party::B, b);
    raw = apply_party_raw(&raw, Party::C, c);
    let p = norm_sqr(&raw);
    (raw, p)
}

/// `⟨s1|s2⟩`.
pub fn overlap(s1: &State3Q, s2: &State3Q) -> C64 {
    s1.amps.iter().zip(s2.amps.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Reduced density matrix on a 2- or 4-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn from_matrix(m: DMatrix<C64>) -> Self {
        DensityMatrix { m }
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(*v, 0.0);
        }
        DensityMatrix { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.m - self.m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.m + self.m.adjoint()).scale(0.5);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        (&self.m - &other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Partial trace of `|ψ⟩⟨ψ|` keeping `parties` (in A, B, C order).
pub fn reduced_density(state: &State3Q, parties: &[Party]) -> Result<DensityMatrix> {
    let mut kept: Vec<Party> = parties.to_vec();
    kept.sort();
    kept.dedup();
    if kept.is_empty() || kept.len() == 3 {
        return Err(Error::InvalidParties(format!("{parties:?}")));
    }
    let traced: Vec<Party> = Party::ALL.iter().copied().filter(|p| !kept.contains(p)).collect();
    let dim = 1usize << kept.len();
    let compose = |k: usize, t: usize| -> usize {
        let mut idx = 0;
        for (j, p) in kept.iter().enumerate() {
            let bit = (k >> (kept.len() - 1 - j)) & 1;
            idx |= bit << p.shift();
        }
        for (j, p) in traced.iter().enumerate() {
            let bit = (t >> (traced.len() - 1 - j)) & 1;
            idx |= bit << p.shift();
        }
        idx
    };
    let amps = state.amps();
    let m = DMatrix::from_fn(dim, dim, |i, j| {
        (0..(1usize << traced.len()))
            .map(|t| amps[compose(i, t)] * amps[compose(j, t)].conj())
            .sum()
    });
    Ok(DensityMatrix { m })
}

/// Number of eigenvalues above `tol` times the largest one.
pub fn numeric_rank(m: &DensityMatrix, tol: f64) -> usize {
    let ev = m.eigenvalues();
    let largest = ev.iter().copied().fold(0.0, f64::max);
    if largest <= 0.0 {
        return 0;
    }
    ev.iter().filter(|&&l| l > tol * largest).count()
}
