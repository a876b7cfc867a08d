//! Reachability toolkit for vector addition systems with states (VASS) in
//! low dimension.
//!
//! The crate provides the full pipeline for deciding reachability in
//! 3-dimensional VASS at desk scale: exact integer/rational arithmetic,
//! Hilbert bases of linear Diophantine systems, linear path schemes with
//! their characteristic systems, the machinery for effectively 2-dimensional
//! 3-VASS, KLM sequences with standardization / decomposition / reduction,
//! and a backtracking decision procedure that emits checkable witnesses.
//! An independent brute-force oracle is included for validation.
//!
//! See the `book/` directory for a guided tour; its code snippets are
//! compiled and run as doctests of this crate.

pub mod coverability;
pub mod cycles;
pub mod diophantine;
pub mod eff2d;
pub mod simplex;
pub mod linalg;
pub mod lps;
pub mod vass;

pub use vass::{
    canonical_zone, displacement, in_zone, int, parikh, parikh_displacement, run_path, step,
    vec_from_i64, zone_of, Configuration, Domain, ExtNat, ExtVector, Int, ModelError, Path,
    RankVector, Sign, StateId, TransId, Transition, VassGraph, ZoneSig,
};

pub use cycles::{cycle_space, rank, scc_condense, CycleSpace, SccDecomposition};
