//! Optimal single-copy distillation of a GHZ state from a pure three-qubit state.
//!
//! The crate is organised bottom-up:
//!
//! - [`tensor`]: dense three-qubit amplitudes, local 2×2 operators, partial traces.
//! - [`decomposition`]: entanglement-class detection and the two-term product
//!   decomposition `μ₁|a₁b₁c₁⟩ + μ₂e^{iφ}|a₂b₂c₂⟩` of GHZ-class states.
//! - [`osbp`]: the optimal one-successful-branch protocol (maximal success
//!   probability, closed forms, explicit local POVMs).
//! - [`protocol`]: Monte Carlo execution of the protocol.
//! - [`monotone`]: empirical checks that the optimal probability does not
//!   increase on average under local two-outcome measurements.
//! - [`fidelity`]: best GHZ fidelity reachable with local unitaries.
//!
//! Batch workloads take an [`Exec`] policy. With the default `parallel`
//! feature, [`Exec::Parallel`] runs on rayon; results are identical to
//! [`Exec::Sequential`] bit for bit.

#![forbid(unsafe_code)]

pub mod decomposition;
pub mod error;
pub mod fidelity;
pub mod monotone;
pub mod optimize;
pub mod osbp;
pub mod par;
pub mod protocol;
pub mod sample;
pub mod tensor;

pub use decomposition::{classify, decompose, reconstruct, EntanglementClass, ProductDecomposition};
pub use error::{Error, Result};
pub use par::Exec;
pub use tensor::{LocalOp, LocalVec, Party, PovmPair, State3Q, C64};
