//! Exact q-series, partitions and Hall-Littlewood polynomials, with
//! mechanical checks of Kawanaka-type and Rogers-Ramanujan type identities.

pub mod cli;
pub mod hl;
pub mod partitions;
pub mod qcomb;
pub mod series;
pub mod verify;
