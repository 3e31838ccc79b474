//! Random program generation and the differential property harness.

pub mod gen;
pub mod property;
pub mod shrink;

pub use gen::{gen_com, GenConfig, GenConfigError, Generator};
pub use property::{
    check, replay, run_property, Case, Failure, PropertyId, PropertyReport, UnknownProperty,
    Verdict,
};
