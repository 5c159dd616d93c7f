//! Polynomial kernels and the lifts that carry solutions back.

pub mod pce;
pub mod rlc;
pub mod save;
pub mod trace;

pub use pce::{kernelize_pce, lift_pce, project_matching_trim, PceOutcome, PceState};
pub use rlc::{compress_rlc, kernelize_rlc, lift_rlc, lift_rlc_kernel, RlcKernel, RlcOutcome, RlcState, XReading};
pub use save::{kernelize_save, lift_save, replay_saturation, saturate_edges, SaveOutcome};
pub use trace::{KernelTrace, Step};
