//! Subset selection from large non-dominated candidate sets.
//!
//! Three indicators are supported: hypervolume (maximized), IGD and IGD+
//! (minimized). Each has a standard greedy inclusion engine and a lazy engine
//! that keeps stale marginal gains in a max-heap as upper bounds; the
//! hypervolume indicator additionally has an update-based engine that keeps
//! every candidate's exact contribution current. All engines on the same input
//! return the same index sequence.
//!
//! The crate is `no_std` and only needs `alloc`. The default `std` feature
//! switches float math to the platform implementation and enables wall-clock
//! timing of selection runs.
//!
//! ```
//! use lazysel_core::{sanitize, select_lazy, select_standard, Indicator};
//!
//! let points = vec![vec![0.2, 0.8], vec![0.5, 0.5], vec![0.8, 0.2], vec![0.6, 0.6]];
//! let set = sanitize(&points, &[1.1, 1.1]).unwrap();
//! assert_eq!(set.len(), 3);
//!
//! let lazy = select_lazy(&set, 2, &Indicator::hypervolume()).unwrap();
//! let standard = select_standard(&set, 2, &Indicator::hypervolume()).unwrap();
//! assert_eq!(lazy.selected, standard.selected);
//! ```
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod frontgen;
pub mod geometry;
pub mod greedy;
pub mod hypervolume;
pub mod indicators;
mod math;

pub use error::Error;
pub use frontgen::{gen_front, Family, FrontSpec};
pub use geometry::{
    dominates, sanitize, weakly_dominates, CandidateSet, Point, PointSet, SanitizeReport,
};
pub use greedy::{
    select, select_lazy, select_standard, select_update, Engine, Indicator, IndicatorKind,
    SelectionResult, TIE_REL,
};
pub use hypervolume::{hv, hvc, joint_hvc_update, limit, HvContext};
pub use indicators::{commit, euclid, igd, igd_plus_dist, improvement, DistanceCache, Metric};
