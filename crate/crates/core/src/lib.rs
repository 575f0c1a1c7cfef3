//! Fusion systems, orbit categories and higher limits over F_p.

pub mod amalgam;
pub mod catalog;
pub mod error;
pub mod fixtures;
pub mod fpla;
pub mod funmod;
pub mod fusion;
pub mod groups;
pub mod harness;
pub mod holim;
pub mod oracle;
pub mod orbitcat;
mod par;

pub use error::{Error, Result};
