//! Numerical laboratory for fine-grained entanglement loss in
//! (1+1)-dimensional quantum systems.
//!
//! The library builds reduced-density-matrix spectra three ways and checks
//! majorization order relations along block-size and coupling flows:
//!
//! * [`chain`] — closed-form free-fermion spectra for the critical XX chain,
//!   the gapped Heisenberg chain, and the XY chain outside the `λ²+γ²=1`
//!   circle;
//! * [`cft`] — generic conformal towers `q^{α_i}/Z̃(q)` with the block-size
//!   and coupling-flow majorization theorems as numeric checks;
//! * [`ed`] — an independent exact-diagonalization oracle for small open
//!   chains.
//!
//! [`dist`] holds the majorization machinery itself (canonical probability
//! vectors, cumulants, doubly stochastic mixing, the direct-product lemma)
//! and [`flow`] grades sampled flows at three levels: entropy endpoints,
//! entropy monotonicity, and full fine-grained majorization.
//!
//! Start with the runnable examples (`cargo run --example heisenberg_anisotropy_flow`)
//! or the `majolab` binary (`majolab flow --model xx --L-grid 8,16,32`).

pub mod cft;
pub mod chain;
pub mod cli;
pub mod dist;
pub mod ed;
pub mod error;
pub mod flow;
pub mod io;
pub mod special;

pub use dist::{
    apply_doubly_stochastic, majorizes, random_majorized_pair, Distribution, MajorizationReport,
    Verdict, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use flow::{flow_report, FlowDirection, FlowReport, LossLevels};
