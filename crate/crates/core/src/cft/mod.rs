//! Virasoro representation theory and conformal blocks.

pub mod blocks;
pub mod bpz;
pub mod dict;
pub mod field;
pub mod tau;
pub mod verma;

pub use blocks::{sphere4_block, torus1_block, vacuum_propagation, BlockSeries};
pub use bpz::{bpz_residual, default_setup, DegenerateSetup};
pub use dict::Dictionary;
pub use field::{Field, Mpc, Ring};
pub use tau::{numeric_tau, numeric_tau_wound, random_inputs, TauInput, sigma_pvi_residual, tau_series, TauParams, TauSeries, Weighting};
pub use verma::{central_charge, degenerate_weight, kac_determinant, Verma};
