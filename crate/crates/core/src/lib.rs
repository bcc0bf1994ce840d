//! Spin squeezing of superposed GHZ and W states under local decoherence.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`] — dense complex matrices, pure states and density matrices.
//! * [`spin`] — collective spin operators and the Kitagawa–Ueda parameter.
//! * [`channels`] — single-qubit Kraus channels behind a name-keyed registry.
//! * [`sweep`] — parameter sweeps, no-squeezing detection and reports.
//! * [`checks`] — the self-check suite run by the `check` subcommand.

pub mod channels;
pub mod checks;
pub mod error;
pub mod qstate;
pub mod spin;
pub mod sweep;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
