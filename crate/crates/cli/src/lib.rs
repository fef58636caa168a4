//! Command-line companion to `reflectwist-core`: JSON file formats, the
//! command surface, and the full verification battery.

pub mod commands;
pub mod formats;
pub mod verify;
