//! JSON documents, SVG rendering and the verification runner.

pub mod json;
pub mod serde_helpers;
pub mod svg;
pub mod verify;
