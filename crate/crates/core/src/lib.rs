//! Value-of-information (VoI) scoring for vehicular data and a slotted
//! dissemination simulator that schedules messages by their decayed value.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, CSV output and the
//! command-line tool live in the `voi-cli` crate.
//!
//! - [`ahp`]: pairwise comparison matrices, principal eigenvector weights,
//!   consistency ratio and hierarchical synthesis.
//! - [`model`]: applications, information sources, attributes, message
//!   metadata, the three-step assessment and value decay.
//! - [`sim`]: message generation, value-ordered scheduling over a per-slot bit
//!   budget, and delivery metrics.
//! - [`sweep`]: score sweeps over the attribute-matrix parameter and the
//!   consistent region of a sweep.

#![no_std]

extern crate alloc;

pub mod ahp;
mod error;
pub mod model;
pub mod sim;
pub mod sweep;

pub use error::{Error, Violation, ViolationKind};

pub type Result<T, E = Error> = core::result::Result<T, E>;
