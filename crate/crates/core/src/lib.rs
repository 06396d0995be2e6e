//! Rate regions of the K-user cyclic Gaussian interference channel.
//!
//! The crate builds the Han-Kobayashi achievable region, the weak-regime
//! outer bound, the three-user time-sharing region and the strong-regime
//! capacity region as explicit linear inequality systems, cross-checks the
//! achievable region against a Fourier-Motzkin projection of the underlying
//! polymatroid constraints, and certifies constant gaps with a small dense
//! simplex solver.
//!
//! Library indices are 0-based with cyclic arithmetic; every label that
//! leaves the crate (row params, JSON, CSV) is 1-based.

pub mod channel;
pub mod cli;
pub mod error;
pub mod fourier_motzkin;
pub mod gdof;
pub mod polyhedra;
pub mod regions;
pub mod sampling;
pub mod system;

pub use channel::{
    classify_regime, etw_split, hk_params, make_channel, outer_params, useful_inequalities,
    ChannelInstance, HkParams, OuterParams, PowerSplit, RegimeLabel,
};
pub use error::{Error, Result};
pub use polyhedra::{
    certified_gap, contains_point, lp_max, region_includes, regions_equal, slice_2d, symmetric_max,
    LpResult, LpStatus,
};
pub use regions::{
    achievable_region, family_gaps, mac_intersection, marginalize_split, outer_region,
    strong_region, ts_region_3, GapReport,
};
pub use system::{Family, InequalitySystem, Row, RowParams};
