//! Simulation and optimization of quantum partial search over a blocked
//! database.
//!
//! A database of `N` items is split into `K` blocks of size `b = N/K`; the
//! goal of partial search is to find the block containing the single
//! target item using fewer oracle queries than a full search. Two query
//! operators are available: the global iteration (reflection about the
//! target, then about the uniform state of the whole database) and the
//! local iteration (the same reflection pair applied inside every block in
//! parallel).
//!
//! The crate provides:
//!
//! * [`model`] — exact 3x3 reduced-space dynamics of both iterations and
//!   the large-block asymptotic matrices;
//! * [`fullsim`] — a brute-force `N`-dimensional simulator used as the
//!   independent reference for the reduced model;
//! * [`grk`] — the closed-form optimized global-local-global schedule and
//!   its speedup coefficient;
//! * [`optimize`] — numerical optimization of the local-global,
//!   global-local-global and local-global-local sequence families in
//!   scaled coordinates, plus curve generation for figure reproduction.

pub mod error;
pub mod fullsim;
pub mod grk;
pub mod model;
pub mod optimize;
mod roots;

pub use error::Error;
pub use fullsim::FullState;
pub use grk::{grk_integer_schedule, grk_r_curve, grk_scaled, GrkScaled, GrkSchedule};
pub use model::{
    apply_sequence, asymptotic_global, DatabaseGeometry, IterationKind, IterationSequence,
    Parity, ReducedMatrix, ReducedState, Segment,
};
pub use optimize::{
    appendix_cancellation_check, curve, glg_large_k_eta, glg_optimal, glg_residual,
    lg_asymptotic, lg_optimal, lg_residual, lg_solve_eta, lg_stationarity,
    lgl_flat_direction_check, lgl_optimal, lgl_residual, AppendixCheck, Curve, CurvePoint,
    Family, ScaledSchedule,
};
