//! File formats, reports and the command-line pipeline on top of
//! `yokota-core`.
//!
//! [`fixture`] reads and writes triangulations as TOML, [`report`] turns a
//! computed [`yokota_core::VolumeReport`] into JSON or a text table, and
//! [`run`] strings the pieces together the way the `yokota` binary does.

pub mod fixture;
pub mod report;
pub mod run;
